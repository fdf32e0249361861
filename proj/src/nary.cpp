#include "filn/nary.hpp"

#include <algorithm>
#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "filn/error.hpp"

namespace filn {

std::vector<IndexTuple> increasing_tuples(int k, int len) {
    std::vector<IndexTuple> out;
    if (len < 0 || len > k) return out;
    IndexTuple cur(len);
    for (int i = 0; i < len; ++i) cur[i] = i + 1;
    for (;;) {
        out.push_back(cur);
        int i = len - 1;
        while (i >= 0 && cur[i] == k - (len - 1 - i)) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < len; ++j) cur[j] = cur[j - 1] + 1;
    }
    if (len == 0) out = {IndexTuple{}};
    return out;
}

int sort_sign(IndexTuple& tuple) {
    int sign = 1;
    for (size_t i = 1; i < tuple.size(); ++i) {
        for (size_t j = i; j > 0 && tuple[j - 1] > tuple[j]; --j) {
            std::swap(tuple[j - 1], tuple[j]);
            sign = -sign;
        }
    }
    for (size_t i = 1; i < tuple.size(); ++i)
        if (tuple[i - 1] == tuple[i]) return 0;
    return sign;
}

NAry::NAry(int n, int k) : n_(n), k_(k) {
    if (n < 2) raise(ErrorKind::BadInput, "arity must be at least 2");
    if (k < 1) raise(ErrorKind::BadInput, "dimension must be at least 1");
}

void NAry::check_tuple(const IndexTuple& tuple) const {
    if (static_cast<int>(tuple.size()) != n_)
        raise(ErrorKind::DimensionMismatch, "index tuple length must equal the arity");
    for (int i : tuple)
        if (i < 1 || i > k_) raise(ErrorKind::IndexOutOfRange, "basis index out of range");
}

void NAry::add_product(IndexTuple tuple, Vec value) {
    check_tuple(tuple);
    if (static_cast<int>(value.size()) != k_)
        raise(ErrorKind::DimensionMismatch, "coefficient vector length must equal the dimension");
    int sign = sort_sign(tuple);
    if (sign == 0) raise(ErrorKind::BadInput, "repeated index in product tuple");
    auto& slot = c_[tuple];
    if (slot.empty()) slot.assign(static_cast<size_t>(k_), Scalar());
    bool nonzero = false;
    for (int j = 0; j < k_; ++j) {
        slot[static_cast<size_t>(j)] +=
            sign > 0 ? value[static_cast<size_t>(j)] : -value[static_cast<size_t>(j)];
        if (!slot[static_cast<size_t>(j)].is_zero()) nonzero = true;
    }
    if (!nonzero) c_.erase(tuple);
}

Vec NAry::full_constant(const IndexTuple& tuple) const {
    check_tuple(tuple);
    IndexTuple sorted = tuple;
    int sign = sort_sign(sorted);
    Vec out(static_cast<size_t>(k_), Scalar());
    if (sign == 0) return out;
    auto it = c_.find(sorted);
    if (it == c_.end()) return out;
    for (int j = 0; j < k_; ++j)
        out[static_cast<size_t>(j)] =
            sign > 0 ? it->second[static_cast<size_t>(j)] : -it->second[static_cast<size_t>(j)];
    return out;
}

Scalar det_division_free(const std::vector<std::vector<Scalar>>& m) {
    size_t n = m.size();
    if (n == 0) return Scalar(Rational(1));
    // dp over column subsets: dp[mask] = signed minor using rows 0..popcount-1.
    std::vector<Scalar> dp(size_t{1} << n);
    dp[0] = Scalar(Rational(1));
    for (size_t mask = 1; mask < dp.size(); ++mask) {
        size_t row = static_cast<size_t>(__builtin_popcountll(mask)) - 1;
        Scalar acc;
        // Laplace expansion along the last used row: the sign of the j-th
        // set column (0-based within the mask) is (-1)^(row + j).
        int sign = (row % 2 == 0) ? 1 : -1;
        for (size_t col = 0; col < n; ++col) {
            if (!(mask & (size_t{1} << col))) continue;
            const Scalar& entry = m[row][col];
            if (!entry.is_zero()) {
                Scalar term = dp[mask ^ (size_t{1} << col)] * entry;
                acc += sign > 0 ? term : -term;
            }
            sign = -sign;
        }
        dp[mask] = acc;
    }
    return dp.back();
}

Vec NAry::eval_product(const std::vector<Vec>& args) const {
    if (static_cast<int>(args.size()) != n_)
        raise(ErrorKind::DimensionMismatch, "eval_product expects n argument vectors");
    for (const auto& a : args)
        if (static_cast<int>(a.size()) != k_)
            raise(ErrorKind::DimensionMismatch, "argument vector length must equal the dimension");
    Vec out(static_cast<size_t>(k_), Scalar());
    // mu(x_1..x_n) = sum over stored increasing tuples J of det(x[J]) c_J.
    std::vector<std::vector<Scalar>> minor(static_cast<size_t>(n_),
                                           std::vector<Scalar>(static_cast<size_t>(n_)));
    for (const auto& [J, cJ] : c_) {
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                minor[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                    args[static_cast<size_t>(a)][static_cast<size_t>(J[static_cast<size_t>(b)] - 1)];
        Scalar d = det_division_free(minor);
        if (d.is_zero()) continue;
        for (int j = 0; j < k_; ++j)
            out[static_cast<size_t>(j)] += d * cJ[static_cast<size_t>(j)];
    }
    return out;
}

NAry NAry::change_of_basis(const Mat& A) const {
    if (A.rows() != static_cast<size_t>(k_) || A.cols() != static_cast<size_t>(k_))
        raise(ErrorKind::DimensionMismatch, "basis matrix shape");
    if (det(A).is_zero()) raise(ErrorKind::SingularMatrix, "basis matrix is singular");
    // Coordinates of w in the new basis solve A^T d = w.
    Mat AtInv = inverse(A.transpose());
    NAry out(n_, k_);
    std::vector<Vec> rows(static_cast<size_t>(n_));
    for (const auto& I : increasing_tuples(k_, n_)) {
        for (int a = 0; a < n_; ++a) {
            Vec row(static_cast<size_t>(k_));
            for (int j = 0; j < k_; ++j)
                row[static_cast<size_t>(j)] = A.at(static_cast<size_t>(I[static_cast<size_t>(a)] - 1),
                                                   static_cast<size_t>(j));
            rows[static_cast<size_t>(a)] = std::move(row);
        }
        Vec w = eval_product(rows);
        bool nonzero = false;
        for (const auto& s : w)
            if (!s.is_zero()) { nonzero = true; break; }
        if (!nonzero) continue;
        Vec d(static_cast<size_t>(k_));
        for (int i = 0; i < k_; ++i) {
            Scalar acc;
            for (int j = 0; j < k_; ++j)
                acc += AtInv.at(static_cast<size_t>(i), static_cast<size_t>(j)) *
                       w[static_cast<size_t>(j)];
            d[static_cast<size_t>(i)] = acc;
        }
        out.add_product(I, d);
    }
    return out;
}

Mat NAry::rmatrix() const {
    if (k_ != n_ + 1)
        raise(ErrorKind::WrongDimension, "rmatrix requires dim = arity + 1");
    Mat R(static_cast<size_t>(k_), static_cast<size_t>(k_));
    for (int i = 1; i <= k_; ++i) {
        IndexTuple t;
        for (int l = 1; l <= k_; ++l)
            if (l != i) t.push_back(l);
        Vec c = full_constant(t);
        for (int j = 1; j <= k_; ++j) {
            Scalar v = c[static_cast<size_t>(j - 1)];
            R.at(static_cast<size_t>(i - 1), static_cast<size_t>(j - 1)) =
                (i % 2 == 1) ? v : -v;
        }
    }
    return R;
}

bool NAry::is_automorphism(const Mat& S) const {
    if (S.rows() != static_cast<size_t>(k_) || S.cols() != static_cast<size_t>(k_))
        raise(ErrorKind::DimensionMismatch, "automorphism matrix shape");
    Scalar dS = det(S);
    if (dS.is_zero()) raise(ErrorKind::SingularMatrix, "automorphism candidate is singular");
    bool holds = true;
    std::vector<Vec> imgs(static_cast<size_t>(n_));
    for (const auto& I : increasing_tuples(k_, n_)) {
        for (int a = 0; a < n_; ++a) {
            Vec col(static_cast<size_t>(k_));
            for (int i = 0; i < k_; ++i)
                col[static_cast<size_t>(i)] = S.at(static_cast<size_t>(i),
                                                   static_cast<size_t>(I[static_cast<size_t>(a)] - 1));
            imgs[static_cast<size_t>(a)] = std::move(col);
        }
        Vec rhs = eval_product(imgs);
        Vec c = full_constant(I);
        for (int j = 0; j < k_ && holds; ++j) {
            Scalar lhs;
            for (int l = 0; l < k_; ++l)
                lhs += S.at(static_cast<size_t>(j), static_cast<size_t>(l)) *
                       c[static_cast<size_t>(l)];
            if (lhs != rhs[static_cast<size_t>(j)]) holds = false;
        }
        if (!holds) break;
    }
    if (k_ == n_ + 1) {
        Mat R = rmatrix();
        bool rcond = (S * R * S.transpose()).scaled(dS.inverse()) == R;
        if (rcond != holds)
            raise(ErrorKind::Internal, "R-matrix automorphism condition disagrees with definition");
    }
    return holds;
}

std::set<std::string> NAry::params() const {
    std::set<std::string> out;
    for (const auto& [tuple, vec] : c_)
        for (const auto& s : vec)
            for (const auto& v : s.variables())
                if (v != "t") out.insert(v);
    return out;
}

NAry NAry::subst_params(const std::map<std::string, Scalar>& assignment) const {
    NAry out(n_, k_);
    for (const auto& [tuple, vec] : c_) {
        Vec nv(vec.size());
        for (size_t i = 0; i < vec.size(); ++i) nv[i] = vec[i].subst(assignment);
        out.add_product(tuple, std::move(nv));
    }
    return out;
}

Vec filippov_residual(const NAry& mu, const IndexTuple& x, const IndexTuple& y) {
    int n = mu.arity(), k = mu.dim();
    // [[x1..xn], y2..yn]
    Vec v = mu.full_constant(x);
    Vec lhs(static_cast<size_t>(k), Scalar());
    IndexTuple outer(static_cast<size_t>(n));
    std::copy(y.begin(), y.end(), outer.begin() + 1);
    for (int j = 1; j <= k; ++j) {
        const Scalar& coef = v[static_cast<size_t>(j - 1)];
        if (coef.is_zero()) continue;
        outer[0] = j;
        Vec w = mu.full_constant(outer);
        for (int l = 0; l < k; ++l) lhs[static_cast<size_t>(l)] += coef * w[static_cast<size_t>(l)];
    }
    // sum_i [x1 .. [xi, y2..yn] .. xn]
    Vec rhs(static_cast<size_t>(k), Scalar());
    IndexTuple inner(static_cast<size_t>(n));
    std::copy(y.begin(), y.end(), inner.begin() + 1);
    IndexTuple replaced = x;
    for (int i = 0; i < n; ++i) {
        inner[0] = x[static_cast<size_t>(i)];
        Vec u = mu.full_constant(inner);
        for (int j = 1; j <= k; ++j) {
            const Scalar& coef = u[static_cast<size_t>(j - 1)];
            if (coef.is_zero()) continue;
            replaced[static_cast<size_t>(i)] = j;
            Vec w = mu.full_constant(replaced);
            for (int l = 0; l < k; ++l)
                rhs[static_cast<size_t>(l)] += coef * w[static_cast<size_t>(l)];
        }
        replaced[static_cast<size_t>(i)] = x[static_cast<size_t>(i)];
    }
    Vec res(static_cast<size_t>(k));
    for (int l = 0; l < k; ++l)
        res[static_cast<size_t>(l)] = lhs[static_cast<size_t>(l)] - rhs[static_cast<size_t>(l)];
    return res;
}

namespace {

bool vec_nonzero(const Vec& v) {
    for (const auto& s : v)
        if (!s.is_zero()) return true;
    return false;
}

} // namespace

FilippovReport check_filippov_serial(const NAry& mu) {
    FilippovReport rep;
    auto xs = increasing_tuples(mu.dim(), mu.arity());
    auto ys = increasing_tuples(mu.dim(), mu.arity() - 1);
    for (const auto& x : xs)
        for (const auto& y : ys) {
            Vec r = filippov_residual(mu, x, y);
            if (vec_nonzero(r)) {
                rep.pass = false;
                rep.violations.push_back({x, y, std::move(r)});
            }
        }
    return rep;
}

FilippovReport check_filippov(const NAry& mu) {
    FilippovReport rep;
    auto xs = increasing_tuples(mu.dim(), mu.arity());
    auto ys = increasing_tuples(mu.dim(), mu.arity() - 1);
    size_t total = xs.size() * ys.size();
    std::vector<FilippovViolation> found;
#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<FilippovViolation> local;
#pragma omp for schedule(dynamic, 8) nowait
        for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
            const auto& x = xs[static_cast<size_t>(idx) / ys.size()];
            const auto& y = ys[static_cast<size_t>(idx) % ys.size()];
            Vec r = filippov_residual(mu, x, y);
            if (vec_nonzero(r)) local.push_back({x, y, std::move(r)});
        }
#pragma omp critical
        found.insert(found.end(), std::make_move_iterator(local.begin()),
                     std::make_move_iterator(local.end()));
    }
    std::sort(found.begin(), found.end(), [](const FilippovViolation& a, const FilippovViolation& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
#else
    return check_filippov_serial(mu);
#endif
    rep.pass = found.empty();
    rep.violations = std::move(found);
    return rep;
}

} // namespace filn
