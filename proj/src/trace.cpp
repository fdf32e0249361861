#include <algorithm>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "filn/error.hpp"
#include "filn/invariants.hpp"
#include "filn/polymat.hpp"

namespace filn {

PolyMat symbolic_right_mult(const NAry& mu, const std::string& prefix) {
    int n = mu.arity(), k = mu.dim();
    // Common denominator (lcm) of all structure constants.
    Poly den = Poly::constant(Rational(1));
    for (const auto& [tuple, vec] : mu.products())
        for (const auto& s : vec) {
            Poly g = Poly::gcd(den, s.den());
            den = Poly::divexact(den * s.den(), g);
        }
    auto cleared = [&den](const Scalar& s) {
        return s.num() * Poly::divexact(den, s.den());
    };
    auto var_name = [&prefix](int m, int i) {
        return prefix + std::to_string(m) + "_" + std::to_string(i);
    };
    PolyMat R(static_cast<size_t>(k));
    // Column b collects mu(e_b, e_{p_1}, .., e_{p_{n-1}}) weighted by the
    // coordinate monomial of the fundamental object.
    IndexTuple arg(static_cast<size_t>(n));
    std::vector<IndexTuple> fills;
    {
        IndexTuple cur(static_cast<size_t>(n - 1), 1);
        for (;;) {
            fills.push_back(cur);
            int i = n - 2;
            while (i >= 0 && cur[static_cast<size_t>(i)] == k) {
                cur[static_cast<size_t>(i)] = 1;
                --i;
            }
            if (i < 0) break;
            ++cur[static_cast<size_t>(i)];
        }
    }
    for (int b = 1; b <= k; ++b) {
        arg[0] = b;
        std::vector<Poly> col(static_cast<size_t>(k));
        for (const auto& p : fills) {
            for (int m = 0; m < n - 1; ++m) arg[static_cast<size_t>(m + 1)] = p[static_cast<size_t>(m)];
            Vec fc = mu.full_constant(arg);
            bool nonzero = false;
            for (const auto& s : fc)
                if (!s.is_zero()) { nonzero = true; break; }
            if (!nonzero) continue;
            Poly mono = Poly::constant(Rational(1));
            for (int m = 0; m < n - 1; ++m)
                mono = mono * Poly::variable(var_name(m + 1, p[static_cast<size_t>(m)]));
            for (int l = 0; l < k; ++l) {
                const Scalar& s = fc[static_cast<size_t>(l)];
                if (s.is_zero()) continue;
                col[static_cast<size_t>(l)] = col[static_cast<size_t>(l)] + mono * cleared(s);
            }
        }
        for (int l = 0; l < k; ++l)
            R.at(static_cast<size_t>(l), static_cast<size_t>(b - 1)) = std::move(col[static_cast<size_t>(l)]);
    }
    return R;
}

namespace {

Poly entry_product_sum(const PolyMat& A, const PolyMat& B, size_t i, size_t j, size_t budget) {
    Poly acc;
    for (size_t l = 0; l < A.k; ++l) {
        if (A.at(i, l).is_zero() || B.at(l, j).is_zero()) continue;
        acc = acc + Poly::mul_budget(A.at(i, l), B.at(l, j), budget);
    }
    return acc;
}

} // namespace

PolyMat poly_mat_mul_serial(const PolyMat& A, const PolyMat& B, size_t budget) {
    if (A.k != B.k) raise(ErrorKind::DimensionMismatch, "poly matrix product shape");
    PolyMat C(A.k);
    for (size_t i = 0; i < A.k; ++i)
        for (size_t j = 0; j < A.k; ++j) C.at(i, j) = entry_product_sum(A, B, i, j, budget);
    return C;
}

PolyMat poly_mat_mul(const PolyMat& A, const PolyMat& B, size_t budget) {
#ifndef _OPENMP
    return poly_mat_mul_serial(A, B, budget);
#else
    if (A.k != B.k) raise(ErrorKind::DimensionMismatch, "poly matrix product shape");
    PolyMat C(A.k);
    bool blown = false;
    std::string blow_msg;
#pragma omp parallel for collapse(2) schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(A.k); ++i)
        for (long long j = 0; j < static_cast<long long>(A.k); ++j) {
            bool skip;
#pragma omp atomic read
            skip = blown;
            if (skip) continue;
            try {
                C.at(static_cast<size_t>(i), static_cast<size_t>(j)) =
                    entry_product_sum(A, B, static_cast<size_t>(i), static_cast<size_t>(j), budget);
            } catch (const Error& e) {
#pragma omp critical
                {
                    blown = true;
                    blow_msg = e.what();
                }
            }
        }
    if (blown) raise(ErrorKind::SymbolicBlowup, blow_msg);
    return C;
#endif
}

Poly poly_mat_trace(const PolyMat& A) {
    Poly t;
    for (size_t i = 0; i < A.k; ++i) t = t + A.at(i, i);
    return t;
}

Poly trace_of_product_serial(const PolyMat& A, const PolyMat& B, size_t budget) {
    if (A.k != B.k) raise(ErrorKind::DimensionMismatch, "trace_of_product shape");
    Poly acc;
    for (size_t i = 0; i < A.k; ++i)
        for (size_t j = 0; j < A.k; ++j) {
            if (A.at(i, j).is_zero() || B.at(j, i).is_zero()) continue;
            acc = acc + Poly::mul_budget(A.at(i, j), B.at(j, i), budget);
        }
    return acc;
}

Poly trace_of_product(const PolyMat& A, const PolyMat& B, size_t budget) {
#ifndef _OPENMP
    return trace_of_product_serial(A, B, budget);
#else
    if (A.k != B.k) raise(ErrorKind::DimensionMismatch, "trace_of_product shape");
    size_t total = A.k * A.k;
    Poly acc;
    bool blown = false;
    std::string blow_msg;
#pragma omp parallel
    {
        Poly local;
#pragma omp for schedule(dynamic) nowait
        for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
            bool skip;
#pragma omp atomic read
            skip = blown;
            if (skip) continue;
            size_t i = static_cast<size_t>(idx) / A.k, j = static_cast<size_t>(idx) % A.k;
            if (A.at(i, j).is_zero() || B.at(j, i).is_zero()) continue;
            try {
                local = local + Poly::mul_budget(A.at(i, j), B.at(j, i), budget);
            } catch (const Error& e) {
#pragma omp critical
                {
                    blown = true;
                    blow_msg = e.what();
                }
            }
        }
#pragma omp critical
        acc = acc + local;
    }
    if (blown) raise(ErrorKind::SymbolicBlowup, blow_msg);
    return acc;
#endif
}

namespace {

// Splits a polynomial into slices keyed by the exponent pattern of the
// non-parameter (coordinate) variables; each slice is a polynomial in the
// parameters alone.
std::map<std::vector<std::pair<std::string, int32_t>>, Poly>
coordinate_slices(const Poly& p, const std::set<std::string>& params) {
    std::map<std::vector<std::pair<std::string, int32_t>>, Poly> out;
    std::map<std::vector<std::pair<std::string, int32_t>>, std::vector<Poly::Term>> buckets;
    std::vector<std::string> pvars;
    std::vector<size_t> pidx;
    for (size_t i = 0; i < p.vars().size(); ++i)
        if (params.count(p.vars()[i])) {
            pvars.push_back(p.vars()[i]);
            pidx.push_back(i);
        }
    for (const auto& t : p.terms()) {
        std::vector<std::pair<std::string, int32_t>> key;
        for (size_t i = 0; i < p.vars().size(); ++i)
            if (!params.count(p.vars()[i]) && t.exp[i] != 0)
                key.push_back({p.vars()[i], t.exp[i]});
        Poly::Term pt;
        pt.coef = t.coef;
        pt.exp.resize(pidx.size());
        for (size_t i = 0; i < pidx.size(); ++i) pt.exp[i] = t.exp[pidx[i]];
        buckets[std::move(key)].push_back(std::move(pt));
    }
    for (auto& [key, terms] : buckets)
        out[key] = Poly::from_terms(pvars, std::move(terms));
    return out;
}

TraceValue classify_exact(const Poly& L, const Poly& R, const std::set<std::string>& params) {
    TraceValue out;
    out.exact = true;
    if (R.is_zero()) {
        out.tag = L.is_zero() ? TraceValue::Tag::Indeterminate : TraceValue::Tag::Infinity;
        out.family_constant = params.empty();
        return out;
    }
    auto sl = coordinate_slices(L, params);
    auto sr = coordinate_slices(R, params);
    // Candidate from the first slice of R present in L or zero.
    const auto& [m0, r0] = *sr.begin();
    Poly l0 = sl.count(m0) ? sl.at(m0) : Poly();
    Scalar c = Scalar::of(l0, r0);
    // Cross-multiplied slice-by-slice verification of L = c R.
    std::set<std::vector<std::pair<std::string, int32_t>>> keys;
    for (const auto& [k2, v] : sl) keys.insert(k2);
    for (const auto& [k2, v] : sr) keys.insert(k2);
    for (const auto& key : keys) {
        Poly lk = sl.count(key) ? sl.at(key) : Poly();
        Poly rk = sr.count(key) ? sr.at(key) : Poly();
        if (lk * c.den() != rk * c.num()) {
            out.tag = TraceValue::Tag::None;
            return out;
        }
    }
    out.tag = TraceValue::Tag::Value;
    out.value = c;
    if (params.empty()) {
        out.family_constant = true;
    } else if (c.is_rational()) {
        // The same constant serves every parameter specialization as long as
        // no specialization kills the right side entirely.
        Poly content;
        for (const auto& [key, rk] : sr) content = Poly::gcd(content, rk);
        out.family_constant = content.is_constant();
    }
    return out;
}

TraceValue randomized_fallback(const NAry& mu, int i, int j, const TraceOptions& opt) {
    TraceValue out;
    out.exact = false;
    out.note = "probabilistic (term budget exceeded)";
    std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ULL + static_cast<uint64_t>(i) * 131u +
                        static_cast<uint64_t>(j) * 17u + 1u);
    std::uniform_int_distribution<long> num(-65536, 65536);
    std::uniform_int_distribution<long> den(1, 65536);
    int n = mu.arity(), k = mu.dim();
    auto draw_object = [&]() {
        std::vector<Vec> X(static_cast<size_t>(n - 1));
        for (auto& v : X) {
            v.resize(static_cast<size_t>(k));
            for (auto& s : v) s = Scalar(Rational(num(rng), den(rng)));
        }
        return X;
    };
    bool have_c = false;
    Scalar c;
    bool all_r_zero = true, all_l_zero = true, pole_sample = false;
    for (int s = 0; s < opt.fallback_samples; ++s) {
        Mat RX = right_mult(mu, draw_object());
        Mat RY = right_mult(mu, draw_object());
        Mat Xi = RX;
        for (int p = 1; p < i; ++p) Xi = Xi * RX;
        Mat Yj = RY;
        for (int p = 1; p < j; ++p) Yj = Yj * RY;
        Scalar L = Xi.trace() * Yj.trace();
        Scalar R = (Xi * Yj).trace();
        if (!L.is_zero()) all_l_zero = false;
        if (R.is_zero()) {
            // R = 0 with L != 0 rules out any finite constant unless R
            // vanishes identically over all samples.
            if (!L.is_zero()) pole_sample = true;
            continue;
        }
        all_r_zero = false;
        Scalar cand = L / R;
        if (!have_c) {
            c = cand;
            have_c = true;
        } else if (cand != c) {
            out.tag = TraceValue::Tag::None;
            return out;
        }
    }
    if (all_r_zero) {
        out.tag = all_l_zero ? TraceValue::Tag::Indeterminate : TraceValue::Tag::Infinity;
        return out;
    }
    if (pole_sample || !have_c) {
        out.tag = TraceValue::Tag::None;
        return out;
    }
    out.tag = TraceValue::Tag::Value;
    out.value = c;
    return out;
}

} // namespace

TraceValue trace_invariant(const NAry& mu, int i, int j, const TraceOptions& opt) {
    if (i < 1 || j < 1) raise(ErrorKind::BadInput, "trace invariant needs i, j >= 1");
    std::set<std::string> params = mu.params();
    try {
        PolyMat RX = symbolic_right_mult(mu, "x");
        PolyMat RY = symbolic_right_mult(mu, "y");
        size_t budget = opt.term_budget;
        PolyMat Xi = RX;
        for (int p = 1; p < i; ++p) Xi = poly_mat_mul(Xi, RX, budget);
        PolyMat Yj = RY;
        for (int p = 1; p < j; ++p) Yj = poly_mat_mul(Yj, RY, budget);
        Poly trX = poly_mat_trace(Xi);
        Poly trY = poly_mat_trace(Yj);
        Poly L = Poly::mul_budget(trX, trY, budget);
        Poly R = trace_of_product(Xi, Yj, budget);
        return classify_exact(L, R, params);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SymbolicBlowup) throw;
        return randomized_fallback(mu, i, j, opt);
    }
}

} // namespace filn
