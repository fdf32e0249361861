#pragma once

#include <optional>
#include <vector>

#include "filn/scalar.hpp"

namespace filn {

/// Dense matrix over the exact scalar field.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(size_t k);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Scalar& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Scalar& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    Mat transpose() const;
    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b);
    Mat scaled(const Scalar& c) const;
    friend bool operator==(const Mat& a, const Mat& b);
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Scalar trace() const;

private:
    size_t rows_, cols_;
    std::vector<Scalar> a_;
};

/// In-place reduced row echelon form over the scalar field; returns the rank.
size_t rref(Mat& m);

size_t rank(Mat m);

/// Echelonized basis of the solution space of m x = 0.
std::vector<std::vector<Scalar>> nullspace(const Mat& m);

/// Reduced-row-echelon form of a list of row vectors (zero rows dropped).
std::vector<std::vector<Scalar>> echelonize(std::vector<std::vector<Scalar>> rows);

/// Determinant via fraction-free Bareiss elimination: denominators are
/// cleared row-wise, the elimination runs over the polynomial ring with
/// exact divisions only, and the scaling is divided back out at the end.
Scalar det(const Mat& m);

/// Solves the square system A x = b exactly (Bareiss forward elimination,
/// back substitution). Throws Error(SingularMatrix) when det(A) = 0.
std::vector<Scalar> solve(const Mat& A, const std::vector<Scalar>& b);

/// Exact inverse; throws Error(SingularMatrix).
Mat inverse(const Mat& A);

/// Characteristic polynomial coefficients c with det(lambda I - A) =
/// sum_i c[i] lambda^i and c[k] = 1 (Faddeev-LeVerrier; exact).
std::vector<Scalar> charpoly(const Mat& A);

/// Linear subspace of an ambient coordinate space, stored as a reduced
/// row echelon basis (canonical: two subspaces are equal iff their bases
/// compare equal).
struct Subspace {
    size_t ambient = 0;
    std::vector<std::vector<Scalar>> basis;

    static Subspace full(size_t ambient);
    static Subspace of(size_t ambient, std::vector<std::vector<Scalar>> spanning);

    size_t dim() const { return basis.size(); }
    bool contains(const std::vector<Scalar>& v) const;
    bool contains(const Subspace& other) const;
    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient == b.ambient && a.basis == b.basis;
    }

    /// { x in this : M x = 0 }.
    Subspace intersect_kernel(const Mat& M) const;
};

/// Rational-root decomposition of a univariate polynomial given by its
/// scalar coefficients (no dependence on t). `split` is true when the
/// polynomial factors completely into the listed linear factors over the
/// working field; `max_nonsplit_mult` bounds the multiplicity of any root
/// of the remaining (root-free) factor.
struct RootExtraction {
    bool ok = true;            // false: couldn't enumerate divisor candidates
    bool split = false;
    std::vector<std::pair<Scalar, int>> roots; // (root, multiplicity)
    int max_nonsplit_mult = 0;
};

RootExtraction rational_roots(const std::vector<Scalar>& coeffs);

} // namespace filn
