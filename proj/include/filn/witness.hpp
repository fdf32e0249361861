#pragma once

#include <map>
#include <string>

#include "filn/nary.hpp"

namespace filn {

/// Degeneration certificate: a parameterized basis E_i^t (rows of `basis`,
/// entries rational functions of t) and an optional parameterized index
/// (param_subst, mapping source parameters to rational functions of t).
/// Parameters of the source not covered by param_subst stay symbolic; the
/// limit comparison then certifies the degeneration for every value of them.
struct Witness {
    std::string name;
    std::string source_label;
    std::string target_label;
    NAry source; // over Q(params)
    std::map<std::string, Scalar> param_subst;
    Mat basis;   // rows = E_i in old coordinates
    NAry target; // over Q
};

struct WitnessReport {
    enum class Verdict { Certified, PoleFound, LimitMismatch };
    Verdict verdict = Verdict::Certified;
    IndexTuple offending;  // first offending tuple for non-certified verdicts
    NAry transformed;      // constants of the source in the basis E^t
    NAry limit;            // t -> 0 limit (only meaningful when all_regular)
    bool all_regular = true;

    bool certified() const { return verdict == Verdict::Certified; }
};

/// Substitutes the parameterized index into the source, changes to the
/// parameterized basis, takes every structure constant's limit at t = 0 and
/// compares the limit structure with the target, coefficient by coefficient.
WitnessReport verify_witness(const Witness& w);

/// Same verification; the certificate then reads as a family degeneration
/// A(*) -> B with parameterized index f(t) = param_subst.
WitnessReport verify_family_witness(const Witness& w);

/// Renders a coefficient vector in the new basis, e.g. "t*E1 + alpha*t^2*E2".
std::string format_in_new_basis(const Vec& v);

} // namespace filn
