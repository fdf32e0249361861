#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "filn/nary.hpp"

namespace filn {

/// Matrix of Z -> mu(Z, X_1, ..., X_{n-1}) in the standard basis, for a
/// fundamental object X given by n-1 coordinate vectors.
Mat right_mult(const NAry& mu, const std::vector<Vec>& X);

/// Dimension of the span of all products (the derived subspace).
int derived_dim(const NAry& mu);

/// I-annihilator: tensors X in V^{(x)t} (t = |I|) such that mu vanishes on
/// every tensor carrying X in the I-slots and basis vectors elsewhere.
/// I holds 1-based slot positions, strictly increasing.
Subspace annihilator_I(const NAry& mu, const std::vector<int>& I);

/// Intersection of the n singleton-slot annihilators.
Subspace annihilator(const NAry& mu);

/// t-center: X in V^{(x)t} with mu(sigma(X (x) Y)) = mu(X (x) Y) for every
/// basis filling Y and every (t, n-t) shuffle sigma. Requires 1 <= t <= n-1.
Subspace t_center(const NAry& mu, int t);

/// Solution space of a_0 D[x_1..x_n] = sum_i a_i [x_1.. D(x_i) ..x_n] in the
/// k^2 entries of D; weights has length n+1.
Subspace alpha_derivations(const NAry& mu, const std::vector<Rational>& weights);

/// dim Der with weights (1,...,1); equals dim Aut.
long aut_dim(const NAry& mu);

/// Trace invariant c_{i,j}: the unique constant with
/// tr(R_X^i) tr(R_Y^j) = c * tr(R_X^i R_Y^j) identically in the coordinates
/// of the fundamental objects X, Y.
struct TraceValue {
    enum class Tag { Value, Infinity, Indeterminate, None, Unavailable };
    Tag tag = Tag::Indeterminate;
    Scalar value;      // set for Tag::Value (rational function in the parameters)
    bool exact = true; // false when produced by the randomized fallback
    // Value holds with one constant for every parameter specialization
    // (right side vanishes nowhere); meaningful for parameterized algebras.
    bool family_constant = false;
    std::string note;

    bool has_invariant() const { return tag == Tag::Value || tag == Tag::Infinity; }
};

struct TraceOptions {
    size_t term_budget = 1000000; // maximal monomial count in any intermediate product
    uint64_t seed = 0;
    int fallback_samples = 32;
};

TraceValue trace_invariant(const NAry& mu, int i, int j, const TraceOptions& opt = {});

/// Scalar-socle dimension: maximal dimension of a subspace on which every
/// basis right-multiplication operator acts as a scalar. Exact rational
/// eigenvalue enumeration; reports Unavailable when an irreducible factor of
/// degree >= 2 could still contribute a larger subspace.
struct SocleResult {
    bool available = false;
    int dim = 0;
    std::string reason; // set when unavailable
};

SocleResult socle_dim(const NAry& mu);

struct ProfileConfig {
    std::vector<std::vector<int>> ann_I;
    std::vector<int> center_t;
    std::vector<std::vector<Rational>> der_weights;
    std::vector<std::pair<int, int>> trace_ij;
    TraceOptions trace;

    /// I over {1} and {1,2}; t over {1,2} (clipped to n-1); weights
    /// (1,..,1), (0,1,..,1), (1,0,..,0), (2,1,..,1); (i,j) over
    /// (1,1),(1,2),(2,2).
    static ProfileConfig defaults(int n);
};

/// All degeneration-monotone invariants of one algebra.
struct Profile {
    int dim_derived = 0;
    int dim_ann = 0;
    long aut = 0;
    std::map<std::vector<int>, int> dim_ann_I;
    std::map<int, int> dim_center_t;
    std::vector<std::pair<std::vector<Rational>, int>> dim_der_alpha;
    std::map<std::pair<int, int>, TraceValue> c;
    SocleResult socle;
};

bool operator==(const Profile& a, const Profile& b);

Profile profile(const NAry& mu, const ProfileConfig& cfg);

/// Independent profiles computed concurrently (one OpenMP task per algebra).
std::vector<Profile> profile_batch(const std::vector<NAry>& mus, const ProfileConfig& cfg);

} // namespace filn
