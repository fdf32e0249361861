#pragma once

#include "filn/nary.hpp"
#include "filn/poly.hpp"

namespace filn {

/// Square matrix with sparse-polynomial entries; the workhorse of the trace
/// invariant expansion, where entries are polynomials in the formal
/// coordinates of a fundamental object.
struct PolyMat {
    size_t k = 0;
    std::vector<Poly> a;

    PolyMat() = default;
    explicit PolyMat(size_t k_) : k(k_), a(k_ * k_) {}

    Poly& at(size_t i, size_t j) { return a[i * k + j]; }
    const Poly& at(size_t i, size_t j) const { return a[i * k + j]; }

    bool is_zero() const {
        for (const auto& p : a)
            if (!p.is_zero()) return false;
        return true;
    }
};

/// Matrix of right multiplication by a formal fundamental object whose
/// coordinates are the variables "<prefix><m>_<i>" (m-th component, i-th
/// coordinate, 1-based). Structure-constant denominators are cleared by a
/// common parameter polynomial, which rescales every entry uniformly.
PolyMat symbolic_right_mult(const NAry& mu, const std::string& prefix);

/// Entry-parallel product (OpenMP); `budget` caps the monomial count of any
/// entry product (0 = unlimited). Throws Error(SymbolicBlowup) past the cap.
PolyMat poly_mat_mul(const PolyMat& A, const PolyMat& B, size_t budget);
/// Serial reference implementation kept for testing and benchmarking.
PolyMat poly_mat_mul_serial(const PolyMat& A, const PolyMat& B, size_t budget);

Poly poly_mat_trace(const PolyMat& A);

/// tr(A B) as a polynomial, accumulating entry pair products in parallel.
Poly trace_of_product(const PolyMat& A, const PolyMat& B, size_t budget);
Poly trace_of_product_serial(const PolyMat& A, const PolyMat& B, size_t budget);

} // namespace filn
