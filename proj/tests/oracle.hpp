#pragma once

// Test-only dense reference implementation. Everything here works on full
// k^n structure-constant arrays over the rationals with its own Gaussian
// elimination, independently of the sparse increasing-tuple storage, the
// shared matrix code and the kernel-based invariant computations it checks.

#include <vector>

#include "filn/nary.hpp"

namespace filn::oracle {

class Dense {
public:
    Dense(int n, int k);

    /// Requires purely rational structure constants.
    static Dense from(const NAry& mu);

    int arity() const { return n_; }
    int dim() const { return k_; }

    /// Assigns the product of an increasing tuple and antisymmetrizes into
    /// every permutation explicitly.
    void set_product(const std::vector<int>& tuple, const std::vector<Rational>& value);

    const Rational& coef(const std::vector<int>& tuple, int j) const;
    std::vector<Rational> bracket(const std::vector<int>& tuple) const;
    std::vector<Rational> filippov_residual(const std::vector<int>& x,
                                            const std::vector<int>& y) const;

private:
    int n_, k_;
    std::vector<Rational> c_;
    size_t flat(const std::vector<int>& tuple, int j) const;
};

size_t rank(std::vector<std::vector<Rational>> rows);
size_t kernel_dim(const std::vector<std::vector<Rational>>& rows, size_t cols);

int derived_dim(const Dense& d);
int ann_I_dim(const Dense& d, const std::vector<int>& I);
int ann_dim(const Dense& d);
int center_dim(const Dense& d, int t);
int der_dim(const Dense& d, const std::vector<Rational>& weights);

} // namespace filn::oracle
