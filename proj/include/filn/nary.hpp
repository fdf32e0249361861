#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "filn/matrix.hpp"

namespace filn {

using IndexTuple = std::vector<int>; // 1-based basis indices
using Vec = std::vector<Scalar>;     // coordinate vector of length dim

/// All strictly increasing tuples of the given length with entries in 1..k,
/// in lexicographic order.
std::vector<IndexTuple> increasing_tuples(int k, int len);

/// Sign of the permutation sorting the tuple (0 when an index repeats).
int sort_sign(IndexTuple& tuple);

/// n-ary algebra structure on a k-dimensional space, stored by its
/// antisymmetry-normalized structure constants: only strictly increasing
/// index tuples are kept, absent tuples are zero, and signs for arbitrary
/// tuples are recovered on demand.
class NAry {
public:
    NAry() : n_(0), k_(0) {}
    NAry(int n, int k);

    int arity() const { return n_; }
    int dim() const { return k_; }

    /// Adds value to the product at the (not necessarily sorted) tuple;
    /// antisymmetry normalization is applied. Repeated indices are rejected.
    void add_product(IndexTuple tuple, Vec value);

    const std::map<IndexTuple, Vec>& products() const { return c_; }
    bool is_zero_algebra() const { return c_.empty(); }

    /// [e_{i1},...,e_{in}] for an arbitrary tuple: zero on repeats, signed
    /// lookup otherwise.
    Vec full_constant(const IndexTuple& tuple) const;

    /// n-linear alternating extension of full_constant.
    Vec eval_product(const std::vector<Vec>& args) const;

    /// Structure constants in the new basis E_i = sum_j A[i][j] e_j (rows of
    /// A are the new basis vectors in old coordinates).
    NAry change_of_basis(const Mat& A) const;

    /// The (n+1)x(n+1) matrix with (i,j)-entry (-1)^(i-1) c^j_{1..i-1,i+1..n+1};
    /// requires k = n+1.
    Mat rmatrix() const;

    /// Definition check phi[x1..xn] = [phi(x1)..phi(xn)] on all basis tuples,
    /// with phi(e_j) = column j of S. For k = n+1 the equivalent condition
    /// S R S^T / det(S) = R is evaluated as well and must agree.
    bool is_automorphism(const Mat& S) const;

    /// Parameter names appearing in the constants (never "t").
    std::set<std::string> params() const;

    /// Substitutes scalars for parameters in every constant.
    NAry subst_params(const std::map<std::string, Scalar>& assignment) const;

    friend bool operator==(const NAry& a, const NAry& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.c_ == b.c_;
    }
    friend bool operator!=(const NAry& a, const NAry& b) { return !(a == b); }

private:
    int n_, k_;
    std::map<IndexTuple, Vec> c_;

    void check_tuple(const IndexTuple& tuple) const;
};

struct FilippovViolation {
    IndexTuple x; // n-tuple
    IndexTuple y; // (n-1)-tuple
    Vec residual;
};

struct FilippovReport {
    bool pass = true;
    std::vector<FilippovViolation> violations;
};

/// Verifies the fundamental identity
///   [[x1..xn], y2..yn] = sum_i [x1.. [xi, y2..yn] ..xn]
/// on all increasing basis tuples. Antisymmetry holds by construction, so
/// increasing x- and y-tuples suffice. The tuple-pair loop is the OpenMP
/// kernel; the serial variant is the reference kept for testing.
FilippovReport check_filippov(const NAry& mu);
FilippovReport check_filippov_serial(const NAry& mu);

/// Residual of the fundamental identity on one (x, y) tuple pair.
Vec filippov_residual(const NAry& mu, const IndexTuple& x, const IndexTuple& y);

/// Division-free determinant of a small matrix over any exact scalar ring
/// (subset dynamic programming; no divisions required).
Scalar det_division_free(const std::vector<std::vector<Scalar>>& m);

} // namespace filn
