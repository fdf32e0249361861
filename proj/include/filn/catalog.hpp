#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "filn/invariants.hpp"
#include "filn/witness.hpp"

namespace filn {

/// Identifier of one algebra of the (n+1)-dimensional n-ary catalog:
/// the zero algebra, B, C1, C2(alpha), C3 and D_r for 3 <= r <= n+1.
struct CatalogId {
    enum class Kind { Zero, B, C1, C2, C3, D };
    Kind kind = Kind::Zero;
    int n = 3;
    int r = 0;                   // D only
    std::optional<Scalar> alpha; // C2 only; nullopt means the symbolic parameter

    static CatalogId zero(int n) { return {Kind::Zero, n, 0, {}}; }
    static CatalogId B(int n) { return {Kind::B, n, 0, {}}; }
    static CatalogId C1(int n) { return {Kind::C1, n, 0, {}}; }
    static CatalogId C2(int n, std::optional<Scalar> alpha = {}) {
        return {Kind::C2, n, 0, std::move(alpha)};
    }
    static CatalogId C3(int n) { return {Kind::C3, n, 0, {}}; }
    static CatalogId D(int n, int r) { return {Kind::D, n, r, {}}; }

    std::string label() const;

    /// Parses "0"/"zero", "B", "C1", "C2", "C2(<scalar>)", "C3", "D<r>".
    static std::optional<CatalogId> parse(const std::string& name, int n);
};

/// Exact structure per the multiplication table; every result passes the
/// Filippov identity check.
NAry make(const CatalogId& id);

/// Closed-form automorphism group dimension.
long expected_aut_dim(const CatalogId& id);

struct ExpectedRow {
    CatalogId id;
    long aut;
    TraceValue c11;
};

/// Expected automorphism dimensions and c_{1,1} values for all catalog
/// algebras at the given arity (used by the acceptance suite).
std::vector<ExpectedRow> expected_table(int n);

/// The shipped degeneration witnesses: C1->B, C2(alpha)->B, C2(-1/4)->C3,
/// D3->C1, D_r->D_{r-1} for 3 < r <= n+1, and the family witness
/// C2(*)->C1 with parameterized index alpha = 1/t^2. Every returned witness
/// certifies under verify_witness.
std::vector<Witness> builtin_witnesses(int n);

/// C2(-1/4) -> B: the generic C2(alpha) -> B witness with the parameter
/// pinned; needed to classify the pair, but rendered under the generic edge.
Witness specialized_member_witness(int n);

/// Free data of one automorphism family; the fields each family reads:
///   B : U (n x n), row (n entries)
///   C1: U ((n-1) x (n-1)), a, b, V (2 x (n-1))
///   C2: U ((n-1) x (n-1)), a, b, V (2 x (n-1))
///   C3: U (2 x 2), W ((n-1) x (n-1)), V (2 x (n-1))
///   D : U (r x r), W ((n+1-r) square), V (r x (n+1-r)), a
struct AutParams {
    Mat U, W, V;
    std::vector<Scalar> row;
    Scalar a, b;
};

struct AutBuild {
    bool ok = false;
    std::string violated; // constraint name when !ok
    Mat S;
};

/// Assembles the family matrix and validates the admissibility constraints;
/// an accepted matrix passes is_automorphism on the corresponding algebra.
AutBuild build_automorphism(const CatalogId& id, const AutParams& p);

/// Draws an admissible random sample from the family.
Mat sample_automorphism(const CatalogId& id, std::mt19937_64& rng);

} // namespace filn
