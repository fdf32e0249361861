#pragma once

#include <optional>

#include "filn/catalog.hpp"

namespace filn {

/// Evidence for a non-degeneration: the violated criterion with the two
/// compared values, or the transitive rule that derived it.
struct Certificate {
    enum class Criterion {
        AutDim, Derived, Ann, AnnI, Center, DerAlpha, TraceInv, Socle, Transitive
    };
    Criterion criterion = Criterion::AutDim;
    std::string lhs, rhs;          // printable compared values
    std::vector<int> I;            // AnnI
    int t = 0;                     // Center
    std::vector<Rational> weights; // DerAlpha
    int i = 0, j = 0;              // TraceInv
    std::string via;               // Transitive

    std::string str() const;
};

/// First violated criterion in the fixed order AutDim, Derived, Ann, AnnI,
/// Center, DerAlpha, TraceInv, Socle; nullopt when inconclusive. With
/// family_source the criteria take their "for all members" form: strict
/// automorphism inequality, trace invariants only when constant across the
/// family, no socle.
std::optional<Certificate> refute(const Profile& a, const Profile& b, bool family_source);

struct GraphNode {
    std::string label;
    bool family = false; // the C2(*) node
    bool zero = false;
    CatalogId id;        // representative algebra (symbolic C2 for the family)
    Profile prof;
    long aut = 0;
};

struct GraphEdge {
    enum class Kind { Witness, Axiom, Member, Transitive };
    int src = -1, dst = -1;
    Kind kind = Kind::Witness;
    std::string witness_name;
    std::string via;               // Transitive: intermediate node label
    bool generic_instance = false; // specialization of a symbolic-parameter witness
};

struct Refutation {
    int src = -1, dst = -1;
    Certificate cert;
};

struct Component {
    int source = -1;
    std::vector<int> members;          // source first, then its downset
    std::vector<std::string> display;  // sorted, family members collapsed to C2(alpha)
    bool rigid = false;                // source is a single algebra
};

/// Complete classification of the catalog at one arity: certified edges
/// (transitively closed), refutations for every remaining ordered pair,
/// primary edges (transitive reduction), irreducible components and levels.
struct DegenerationGraph {
    int n = 0;
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    std::vector<Refutation> refutations;
    std::vector<std::pair<int, int>> primary;
    std::vector<std::pair<int, int>> unclassified; // empty for the shipped catalog
    std::vector<Component> components;
    std::map<int, int> levels;

    int find(const std::string& label) const;
    bool certified(int a, int b) const;
    const GraphEdge* edge(int a, int b) const;
    const Refutation* refutation(int a, int b) const;
};

DegenerationGraph build_graph(int n, const ProfileConfig& cfg);

/// Re-derives every monotonicity inequality along certified edges and every
/// recorded certificate from freshly computed profiles; returns human-readable
/// violation messages (empty = all consistent).
std::vector<std::string> consistency_violations(const DegenerationGraph& g);

/// DOT rendering: nodes annotated with aut dimension, solid arrows for the
/// primary degenerations, the alpha = -1/4 member edge labeled as in the
/// degeneration diagram.
std::string to_dot(const DegenerationGraph& g);

} // namespace filn
