#include "filn/invariants.hpp"

#include <algorithm>
#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "filn/error.hpp"

namespace filn {

Mat right_mult(const NAry& mu, const std::vector<Vec>& X) {
    int n = mu.arity(), k = mu.dim();
    if (static_cast<int>(X.size()) != n - 1)
        raise(ErrorKind::DimensionMismatch, "fundamental object needs n-1 components");
    Mat R(static_cast<size_t>(k), static_cast<size_t>(k));
    std::vector<Vec> args(static_cast<size_t>(n));
    for (int b = 0; b < k; ++b) {
        Vec e(static_cast<size_t>(k));
        e[static_cast<size_t>(b)] = Scalar(Rational(1));
        args[0] = e;
        for (int m = 0; m < n - 1; ++m) args[static_cast<size_t>(m + 1)] = X[static_cast<size_t>(m)];
        Vec img = mu.eval_product(args);
        for (int l = 0; l < k; ++l)
            R.at(static_cast<size_t>(l), static_cast<size_t>(b)) = img[static_cast<size_t>(l)];
    }
    return R;
}

int derived_dim(const NAry& mu) {
    std::vector<std::vector<Scalar>> rows;
    for (const auto& [tuple, vec] : mu.products()) rows.push_back(vec);
    if (rows.empty()) return 0;
    Mat m(rows.size(), static_cast<size_t>(mu.dim()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return static_cast<int>(rank(std::move(m)));
}

namespace {

// Multi-index enumeration over {1..k}^t, lexicographic; encodes to a flat
// 0-based column index.
size_t encode_multi(const IndexTuple& u, int k) {
    size_t code = 0;
    for (int v : u) code = code * static_cast<size_t>(k) + static_cast<size_t>(v - 1);
    return code;
}

std::vector<IndexTuple> all_tuples(int k, int len) {
    std::vector<IndexTuple> out;
    IndexTuple cur(static_cast<size_t>(len), 1);
    size_t total = 1;
    for (int i = 0; i < len; ++i) total *= static_cast<size_t>(k);
    out.reserve(total);
    for (;;) {
        out.push_back(cur);
        int i = len - 1;
        while (i >= 0 && cur[static_cast<size_t>(i)] == k) {
            cur[static_cast<size_t>(i)] = 1;
            --i;
        }
        if (i < 0) break;
        ++cur[static_cast<size_t>(i)];
    }
    if (len == 0) out = {IndexTuple{}};
    return out;
}

// Constraint rows "mu(...) = 0" for tensors placed in the I-slots, basis
// fillings elsewhere. Used by both the I-annihilator and the annihilator.
void append_annihilator_rows(const NAry& mu, const std::vector<int>& I,
                             std::vector<std::vector<Scalar>>& rows) {
    int n = mu.arity(), k = mu.dim();
    int t = static_cast<int>(I.size());
    std::vector<int> comp;
    for (int p = 1; p <= n; ++p)
        if (std::find(I.begin(), I.end(), p) == I.end()) comp.push_back(p);
    auto us = all_tuples(k, t);
    size_t cols = us.size();
    IndexTuple arg(static_cast<size_t>(n));
    for (const auto& J : increasing_tuples(k, n - t)) {
        std::vector<Vec> images(cols);
        for (size_t ui = 0; ui < cols; ++ui) {
            for (int a = 0; a < t; ++a)
                arg[static_cast<size_t>(I[static_cast<size_t>(a)] - 1)] = us[ui][static_cast<size_t>(a)];
            for (size_t b = 0; b < comp.size(); ++b)
                arg[static_cast<size_t>(comp[b] - 1)] = J[b];
            images[ui] = mu.full_constant(arg);
        }
        for (int l = 0; l < k; ++l) {
            std::vector<Scalar> row(cols);
            bool nonzero = false;
            for (size_t ui = 0; ui < cols; ++ui) {
                row[ui] = images[ui][static_cast<size_t>(l)];
                if (!row[ui].is_zero()) nonzero = true;
            }
            if (nonzero) rows.push_back(std::move(row));
        }
    }
}

Subspace kernel_subspace(std::vector<std::vector<Scalar>> rows, size_t ambient) {
    if (rows.empty()) return Subspace::full(ambient);
    Mat m(rows.size(), ambient);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < ambient; ++j) m.at(i, j) = rows[i][j];
    Subspace s;
    s.ambient = ambient;
    s.basis = nullspace(m);
    return s;
}

} // namespace

Subspace annihilator_I(const NAry& mu, const std::vector<int>& I) {
    int n = mu.arity();
    int t = static_cast<int>(I.size());
    if (t < 1 || t > n) raise(ErrorKind::BadInput, "I must have between 1 and n slots");
    for (size_t a = 0; a < I.size(); ++a) {
        if (I[a] < 1 || I[a] > n) raise(ErrorKind::IndexOutOfRange, "slot out of range");
        if (a > 0 && I[a] <= I[a - 1]) raise(ErrorKind::BadInput, "I must be strictly increasing");
    }
    size_t ambient = 1;
    for (int i = 0; i < t; ++i) ambient *= static_cast<size_t>(mu.dim());
    std::vector<std::vector<Scalar>> rows;
    append_annihilator_rows(mu, I, rows);
    return kernel_subspace(std::move(rows), ambient);
}

Subspace annihilator(const NAry& mu) {
    std::vector<std::vector<Scalar>> rows;
    for (int i = 1; i <= mu.arity(); ++i) append_annihilator_rows(mu, {i}, rows);
    return kernel_subspace(std::move(rows), static_cast<size_t>(mu.dim()));
}

Subspace t_center(const NAry& mu, int t) {
    int n = mu.arity(), k = mu.dim();
    if (t < 1 || t >= n) raise(ErrorKind::InvalidT, "t-center needs 1 <= t <= n-1");
    auto us = all_tuples(k, t);
    size_t ambient = us.size();
    std::vector<std::vector<Scalar>> rows;
    // A (t, n-t) shuffle is fixed by the image of {1..t}.
    auto shuffles = increasing_tuples(n, t);
    IndexTuple plain(static_cast<size_t>(n)), shuffled(static_cast<size_t>(n));
    for (const auto& J : increasing_tuples(k, n - t)) {
        for (const auto& T : shuffles) {
            // identity shuffle contributes no constraint
            bool is_id = true;
            for (int a = 0; a < t; ++a)
                if (T[static_cast<size_t>(a)] != a + 1) { is_id = false; break; }
            if (is_id) continue;
            // sigma(i) = i-th element of T for i <= t, of the complement after
            std::vector<int> sigma(static_cast<size_t>(n));
            std::vector<bool> in_T(static_cast<size_t>(n) + 1, false);
            for (int a = 0; a < t; ++a) {
                sigma[static_cast<size_t>(a)] = T[static_cast<size_t>(a)];
                in_T[static_cast<size_t>(T[static_cast<size_t>(a)])] = true;
            }
            {
                int b = t;
                for (int p = 1; p <= n; ++p)
                    if (!in_T[static_cast<size_t>(p)]) sigma[static_cast<size_t>(b++)] = p;
            }
            std::vector<Vec> diffs(us.size());
            for (size_t ui = 0; ui < us.size(); ++ui) {
                for (int a = 0; a < t; ++a) plain[static_cast<size_t>(a)] = us[ui][static_cast<size_t>(a)];
                for (size_t b = 0; b < J.size(); ++b) plain[static_cast<size_t>(t) + b] = J[b];
                // position i of sigma(T) carries factor sigma(i)
                for (int i = 0; i < n; ++i)
                    shuffled[static_cast<size_t>(i)] = plain[static_cast<size_t>(sigma[static_cast<size_t>(i)] - 1)];
                Vec a = mu.full_constant(shuffled);
                Vec b = mu.full_constant(plain);
                Vec d(static_cast<size_t>(k));
                for (int l = 0; l < k; ++l)
                    d[static_cast<size_t>(l)] = a[static_cast<size_t>(l)] - b[static_cast<size_t>(l)];
                diffs[ui] = std::move(d);
            }
            for (int l = 0; l < k; ++l) {
                std::vector<Scalar> row(us.size());
                bool nonzero = false;
                for (size_t ui = 0; ui < us.size(); ++ui) {
                    row[ui] = diffs[ui][static_cast<size_t>(l)];
                    if (!row[ui].is_zero()) nonzero = true;
                }
                if (nonzero) rows.push_back(std::move(row));
            }
        }
    }
    return kernel_subspace(std::move(rows), ambient);
}

Subspace alpha_derivations(const NAry& mu, const std::vector<Rational>& weights) {
    int n = mu.arity(), k = mu.dim();
    if (static_cast<int>(weights.size()) != n + 1)
        raise(ErrorKind::DimensionMismatch, "weight vector must have n+1 entries");
    size_t cols = static_cast<size_t>(k) * static_cast<size_t>(k);
    auto dcol = [k](int u, int v) { // D e_v = sum_u d_{uv} e_u
        return static_cast<size_t>(u) * static_cast<size_t>(k) + static_cast<size_t>(v);
    };
    std::vector<std::vector<Scalar>> rows;
    IndexTuple replaced;
    for (const auto& I : increasing_tuples(k, n)) {
        std::vector<std::vector<Scalar>> block(static_cast<size_t>(k),
                                               std::vector<Scalar>(cols));
        Vec c = mu.full_constant(I);
        // alpha_0 * (D applied to the product): component l picks d_{l v}
        for (int v = 0; v < k; ++v) {
            if (c[static_cast<size_t>(v)].is_zero()) continue;
            Scalar w = Scalar(weights[0]) * c[static_cast<size_t>(v)];
            for (int l = 0; l < k; ++l) block[static_cast<size_t>(l)][dcol(l, v)] += w;
        }
        // - sum_m alpha_m [.. D(e_{i_m}) ..]
        replaced = I;
        for (int m = 0; m < n; ++m) {
            const Rational& am = weights[static_cast<size_t>(m + 1)];
            if (am.is_zero()) continue;
            int orig = I[static_cast<size_t>(m)];
            for (int u = 1; u <= k; ++u) {
                replaced[static_cast<size_t>(m)] = u;
                Vec fc = mu.full_constant(replaced);
                for (int l = 0; l < k; ++l) {
                    const Scalar& f = fc[static_cast<size_t>(l)];
                    if (f.is_zero()) continue;
                    block[static_cast<size_t>(l)][dcol(u - 1, orig - 1)] -= Scalar(am) * f;
                }
            }
            replaced[static_cast<size_t>(m)] = orig;
        }
        for (auto& row : block) {
            bool nonzero = false;
            for (const auto& s : row)
                if (!s.is_zero()) { nonzero = true; break; }
            if (nonzero) rows.push_back(std::move(row));
        }
    }
    return kernel_subspace(std::move(rows), cols);
}

long aut_dim(const NAry& mu) {
    std::vector<Rational> ones(static_cast<size_t>(mu.arity()) + 1, Rational(1));
    return static_cast<long>(alpha_derivations(mu, ones).dim());
}

ProfileConfig ProfileConfig::defaults(int n) {
    ProfileConfig cfg;
    cfg.ann_I = {{1}, {1, 2}};
    cfg.center_t = {1};
    if (n >= 3) cfg.center_t.push_back(2);
    std::vector<Rational> ones(static_cast<size_t>(n) + 1, Rational(1));
    std::vector<Rational> inner = ones;
    inner[0] = Rational(0);
    std::vector<Rational> outer(static_cast<size_t>(n) + 1, Rational(0));
    outer[0] = Rational(1);
    std::vector<Rational> two = ones;
    two[0] = Rational(2);
    cfg.der_weights = {ones, inner, outer, two};
    cfg.trace_ij = {{1, 1}, {1, 2}, {2, 2}};
    return cfg;
}

bool operator==(const Profile& a, const Profile& b) {
    if (a.dim_derived != b.dim_derived || a.dim_ann != b.dim_ann || a.aut != b.aut) return false;
    if (a.dim_ann_I != b.dim_ann_I || a.dim_center_t != b.dim_center_t) return false;
    if (a.dim_der_alpha.size() != b.dim_der_alpha.size()) return false;
    for (size_t i = 0; i < a.dim_der_alpha.size(); ++i)
        if (a.dim_der_alpha[i] != b.dim_der_alpha[i]) return false;
    if (a.c.size() != b.c.size()) return false;
    for (auto ia = a.c.begin(), ib = b.c.begin(); ia != a.c.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        const TraceValue &x = ia->second, &y = ib->second;
        if (x.tag != y.tag || x.exact != y.exact) return false;
        if (x.tag == TraceValue::Tag::Value && x.value != y.value) return false;
    }
    if (a.socle.available != b.socle.available) return false;
    if (a.socle.available && a.socle.dim != b.socle.dim) return false;
    return true;
}

Profile profile(const NAry& mu, const ProfileConfig& cfg) {
    Profile p;
    p.dim_derived = derived_dim(mu);
    p.dim_ann = static_cast<int>(annihilator(mu).dim());
    p.aut = aut_dim(mu);
    for (const auto& I : cfg.ann_I) {
        if (static_cast<int>(I.size()) > mu.arity()) continue;
        p.dim_ann_I[I] = static_cast<int>(annihilator_I(mu, I).dim());
    }
    for (int t : cfg.center_t) {
        if (t < 1 || t >= mu.arity()) continue;
        p.dim_center_t[t] = static_cast<int>(t_center(mu, t).dim());
    }
    for (const auto& w : cfg.der_weights) {
        if (static_cast<int>(w.size()) != mu.arity() + 1) continue;
        p.dim_der_alpha.push_back({w, static_cast<int>(alpha_derivations(mu, w).dim())});
    }
    for (const auto& [i, j] : cfg.trace_ij)
        p.c[{i, j}] = trace_invariant(mu, i, j, cfg.trace);
    p.socle = socle_dim(mu);
    return p;
}

std::vector<Profile> profile_batch(const std::vector<NAry>& mus, const ProfileConfig& cfg) {
    std::vector<Profile> out(mus.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long i = 0; i < static_cast<long long>(mus.size()); ++i)
        out[static_cast<size_t>(i)] = profile(mus[static_cast<size_t>(i)], cfg);
    return out;
}

} // namespace filn
