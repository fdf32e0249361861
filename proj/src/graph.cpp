#include "filn/graph.hpp"

#include <algorithm>
#include <sstream>

#include "filn/error.hpp"

namespace filn {

namespace {

std::string weights_str(const std::vector<Rational>& w) {
    std::string s = "(";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += w[i].str();
    }
    return s + ")";
}

std::string trace_str(const TraceValue& t) {
    switch (t.tag) {
        case TraceValue::Tag::Value: return t.value.str();
        case TraceValue::Tag::Infinity: return "inf";
        case TraceValue::Tag::Indeterminate: return "indeterminate";
        case TraceValue::Tag::None: return "none";
        case TraceValue::Tag::Unavailable: return "unavailable";
    }
    return "?";
}

} // namespace

std::string Certificate::str() const {
    std::ostringstream os;
    switch (criterion) {
        case Criterion::AutDim: os << "dim Aut: " << lhs << " >= " << rhs; break;
        case Criterion::Derived: os << "dim A^2: " << lhs << " < " << rhs; break;
        case Criterion::Ann: os << "dim Ann: " << lhs << " > " << rhs; break;
        case Criterion::AnnI: {
            os << "dim Ann_{";
            for (size_t a = 0; a < I.size(); ++a) os << (a ? "," : "") << I[a];
            os << "}: " << lhs << " > " << rhs;
            break;
        }
        case Criterion::Center: os << "dim Z_" << t << ": " << lhs << " > " << rhs; break;
        case Criterion::DerAlpha:
            os << "dim Der_" << weights_str(weights) << ": " << lhs << " > " << rhs;
            break;
        case Criterion::TraceInv:
            os << "c_{" << i << "," << j << "}: " << lhs << " != " << rhs;
            break;
        case Criterion::Socle: os << "scalar socle: " << lhs << " > " << rhs; break;
        case Criterion::Transitive: os << "transitive via " << via; break;
    }
    return os.str();
}

std::optional<Certificate> refute(const Profile& a, const Profile& b, bool family_source) {
    Certificate c;
    auto num = [](long v) { return std::to_string(v); };

    // AutDim: a proper degeneration strictly increases dim Aut; for a family
    // only the strict form refutes (a member may share the target's value).
    bool aut_violated = family_source ? (a.aut > b.aut) : (a.aut >= b.aut);
    if (aut_violated) {
        c.criterion = Certificate::Criterion::AutDim;
        c.lhs = num(a.aut);
        c.rhs = num(b.aut);
        return c;
    }
    if (a.dim_derived < b.dim_derived) {
        c.criterion = Certificate::Criterion::Derived;
        c.lhs = num(a.dim_derived);
        c.rhs = num(b.dim_derived);
        return c;
    }
    if (a.dim_ann > b.dim_ann) {
        c.criterion = Certificate::Criterion::Ann;
        c.lhs = num(a.dim_ann);
        c.rhs = num(b.dim_ann);
        return c;
    }
    for (const auto& [I, da] : a.dim_ann_I) {
        auto it = b.dim_ann_I.find(I);
        if (it == b.dim_ann_I.end()) continue;
        if (da > it->second) {
            c.criterion = Certificate::Criterion::AnnI;
            c.I = I;
            c.lhs = num(da);
            c.rhs = num(it->second);
            return c;
        }
    }
    for (const auto& [t, da] : a.dim_center_t) {
        auto it = b.dim_center_t.find(t);
        if (it == b.dim_center_t.end()) continue;
        if (da > it->second) {
            c.criterion = Certificate::Criterion::Center;
            c.t = t;
            c.lhs = num(da);
            c.rhs = num(it->second);
            return c;
        }
    }
    for (const auto& [w, da] : a.dim_der_alpha) {
        for (const auto& [wb, db] : b.dim_der_alpha) {
            if (wb != w) continue;
            if (da > db) {
                c.criterion = Certificate::Criterion::DerAlpha;
                c.weights = w;
                c.lhs = num(da);
                c.rhs = num(db);
                return c;
            }
        }
    }
    for (const auto& [ij, ta] : a.c) {
        auto it = b.c.find(ij);
        if (it == b.c.end()) continue;
        const TraceValue& tb = it->second;
        // Probabilistic values never justify a refutation.
        if (!ta.exact || !tb.exact) continue;
        if (!ta.has_invariant() || !tb.has_invariant()) continue;
        if (family_source && !ta.family_constant) continue;
        bool differ = ta.tag != tb.tag ||
                      (ta.tag == TraceValue::Tag::Value && ta.value != tb.value);
        if (differ) {
            c.criterion = Certificate::Criterion::TraceInv;
            c.i = ij.first;
            c.j = ij.second;
            c.lhs = trace_str(ta);
            c.rhs = trace_str(tb);
            return c;
        }
    }
    if (!family_source && a.socle.available && b.socle.available && a.socle.dim > b.socle.dim) {
        c.criterion = Certificate::Criterion::Socle;
        c.lhs = num(a.socle.dim);
        c.rhs = num(b.socle.dim);
        return c;
    }
    return std::nullopt;
}

int DegenerationGraph::find(const std::string& label) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].label == label) return static_cast<int>(i);
    return -1;
}

bool DegenerationGraph::certified(int a, int b) const { return edge(a, b) != nullptr; }

const GraphEdge* DegenerationGraph::edge(int a, int b) const {
    for (const auto& e : edges)
        if (e.src == a && e.dst == b) return &e;
    return nullptr;
}

const Refutation* DegenerationGraph::refutation(int a, int b) const {
    for (const auto& r : refutations)
        if (r.src == a && r.dst == b) return &r;
    return nullptr;
}

namespace {

struct Builder {
    int n;
    ProfileConfig cfg;
    DegenerationGraph g;
    std::vector<std::vector<int>> status; // 0 unknown, 1 certified, 2 refuted

    int node_count() const { return static_cast<int>(g.nodes.size()); }

    void add_edge(GraphEdge e) {
        if (status[static_cast<size_t>(e.src)][static_cast<size_t>(e.dst)] == 2)
            raise(ErrorKind::Internal, "edge would contradict a refutation");
        if (status[static_cast<size_t>(e.src)][static_cast<size_t>(e.dst)] == 1) return;
        status[static_cast<size_t>(e.src)][static_cast<size_t>(e.dst)] = 1;
        g.edges.push_back(std::move(e));
    }

    void add_refutation(int a, int b, Certificate cert) {
        if (status[static_cast<size_t>(a)][static_cast<size_t>(b)] == 1)
            raise(ErrorKind::Internal, "refutation would contradict a certified edge");
        if (status[static_cast<size_t>(a)][static_cast<size_t>(b)] == 2) return;
        status[static_cast<size_t>(a)][static_cast<size_t>(b)] = 2;
        g.refutations.push_back({a, b, std::move(cert)});
    }

    void make_nodes() {
        auto push = [&](const std::string& label, CatalogId id, bool family, bool zero) {
            GraphNode node;
            node.label = label;
            node.family = family;
            node.zero = zero;
            node.id = std::move(id);
            g.nodes.push_back(std::move(node));
        };
        push("0", CatalogId::zero(n), false, true);
        push("B", CatalogId::B(n), false, false);
        push("C1", CatalogId::C1(n), false, false);
        push("C2(alpha)", CatalogId::C2(n), false, false);
        push("C2(-1/4)", CatalogId::C2(n, Scalar(Rational(-1, 4))), false, false);
        push("C3", CatalogId::C3(n), false, false);
        for (int r = 3; r <= n + 1; ++r)
            push("D" + std::to_string(r), CatalogId::D(n, r), false, false);
        push("C2(*)", CatalogId::C2(n), true, false);

        std::vector<NAry> mus;
        mus.reserve(g.nodes.size());
        for (const auto& node : g.nodes) mus.push_back(make(node.id));
        std::vector<Profile> profs = profile_batch(mus, cfg);
        for (size_t i = 0; i < g.nodes.size(); ++i) {
            g.nodes[i].prof = std::move(profs[i]);
            g.nodes[i].aut = g.nodes[i].prof.aut;
        }
        status.assign(g.nodes.size(), std::vector<int>(g.nodes.size(), 0));
    }

    void seed_edges() {
        for (const auto& w : builtin_witnesses(n)) {
            WitnessReport rep = verify_witness(w);
            if (!rep.certified())
                raise(ErrorKind::Internal, "shipped witness failed verification: " + w.name);
            GraphEdge e;
            e.src = g.find(w.source_label);
            e.dst = g.find(w.target_label);
            e.kind = GraphEdge::Kind::Witness;
            e.witness_name = w.name;
            add_edge(std::move(e));
        }
        {
            // C2(-1/4) -> B is the generic witness with alpha pinned; without
            // it the pair would stay unclassified (no transitive route exists).
            Witness w = specialized_member_witness(n);
            WitnessReport rep = verify_witness(w);
            if (!rep.certified())
                raise(ErrorKind::Internal, "specialized member witness failed verification");
            GraphEdge e;
            e.src = g.find(w.source_label);
            e.dst = g.find(w.target_label);
            e.kind = GraphEdge::Kind::Witness;
            e.witness_name = w.name;
            e.generic_instance = true;
            add_edge(std::move(e));
        }
        int zero = g.find("0");
        for (int i = 0; i < node_count(); ++i) {
            if (g.nodes[static_cast<size_t>(i)].zero) continue;
            GraphEdge e;
            e.src = i;
            e.dst = zero;
            e.kind = GraphEdge::Kind::Axiom;
            add_edge(std::move(e));
        }
        int fam = g.find("C2(*)");
        for (const char* member : {"C2(alpha)", "C2(-1/4)"}) {
            GraphEdge e;
            e.src = fam;
            e.dst = g.find(member);
            e.kind = GraphEdge::Kind::Member;
            add_edge(std::move(e));
        }
        close_transitively();
    }

    void close_transitively() {
        bool changed = true;
        while (changed) {
            changed = false;
            size_t count = g.edges.size();
            for (size_t x = 0; x < count; ++x)
                for (size_t y = 0; y < count; ++y) {
                    const GraphEdge& e1 = g.edges[x];
                    const GraphEdge& e2 = g.edges[y];
                    if (e1.dst != e2.src) continue;
                    if (e1.src == e2.dst) continue;
                    if (status[static_cast<size_t>(e1.src)][static_cast<size_t>(e2.dst)] == 1)
                        continue;
                    GraphEdge e;
                    e.src = e1.src;
                    e.dst = e2.dst;
                    e.kind = GraphEdge::Kind::Transitive;
                    e.via = g.nodes[static_cast<size_t>(e1.dst)].label;
                    add_edge(std::move(e));
                    changed = true;
                }
        }
    }

    // Derived refutations: if D -> A certified and D -/-> E, then A -/-> E;
    // if B -> E certified and D -/-> E, then D -/-> B.
    bool derive_refutation(int a, int b, Certificate* out) {
        for (int d = 0; d < node_count(); ++d) {
            if (d == a || d == b) continue;
            if (status[static_cast<size_t>(d)][static_cast<size_t>(a)] == 1 &&
                status[static_cast<size_t>(d)][static_cast<size_t>(b)] == 2) {
                Certificate c;
                c.criterion = Certificate::Criterion::Transitive;
                c.via = g.nodes[static_cast<size_t>(d)].label;
                *out = std::move(c);
                return true;
            }
        }
        for (int e = 0; e < node_count(); ++e) {
            if (e == a || e == b) continue;
            if (status[static_cast<size_t>(b)][static_cast<size_t>(e)] == 1 &&
                status[static_cast<size_t>(a)][static_cast<size_t>(e)] == 2) {
                Certificate c;
                c.criterion = Certificate::Criterion::Transitive;
                c.via = g.nodes[static_cast<size_t>(e)].label;
                *out = std::move(c);
                return true;
            }
        }
        return false;
    }

    void propagate_refutations() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int a = 0; a < node_count(); ++a)
                for (int b = 0; b < node_count(); ++b) {
                    if (a == b || g.nodes[static_cast<size_t>(b)].family) continue;
                    if (status[static_cast<size_t>(a)][static_cast<size_t>(b)] != 0) continue;
                    Certificate c;
                    if (derive_refutation(a, b, &c)) {
                        add_refutation(a, b, std::move(c));
                        changed = true;
                    }
                }
        }
    }

    void classify() {
        // The family node appears only as a source: a degeneration *to* a
        // family is not defined.
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < node_count(); ++a)
            for (int b = 0; b < node_count(); ++b) {
                if (a == b || g.nodes[static_cast<size_t>(b)].family) continue;
                pairs.push_back({a, b});
            }
        std::sort(pairs.begin(), pairs.end(), [&](const auto& p, const auto& q) {
            const GraphNode &pa = g.nodes[static_cast<size_t>(p.first)],
                            &pb = g.nodes[static_cast<size_t>(p.second)];
            const GraphNode &qa = g.nodes[static_cast<size_t>(q.first)],
                            &qb = g.nodes[static_cast<size_t>(q.second)];
            if (pa.aut != qa.aut) return pa.aut < qa.aut;
            if (pb.aut != qb.aut) return pb.aut < qb.aut;
            if (pa.label != qa.label) return pa.label < qa.label;
            return pb.label < qb.label;
        });
        propagate_refutations();
        for (const auto& [a, b] : pairs) {
            if (status[static_cast<size_t>(a)][static_cast<size_t>(b)] != 0) continue;
            Certificate c;
            if (derive_refutation(a, b, &c)) {
                add_refutation(a, b, std::move(c));
                propagate_refutations();
                continue;
            }
            auto direct = refute(g.nodes[static_cast<size_t>(a)].prof,
                                 g.nodes[static_cast<size_t>(b)].prof,
                                 g.nodes[static_cast<size_t>(a)].family);
            if (direct) {
                add_refutation(a, b, std::move(*direct));
                propagate_refutations();
            }
        }
        for (int a = 0; a < node_count(); ++a)
            for (int b = 0; b < node_count(); ++b) {
                if (a == b || g.nodes[static_cast<size_t>(b)].family) continue;
                if (status[static_cast<size_t>(a)][static_cast<size_t>(b)] == 0)
                    g.unclassified.push_back({a, b});
            }
    }

    void reduce() {
        for (const auto& e : g.edges) {
            if (e.kind == GraphEdge::Kind::Member || e.generic_instance) continue;
            bool has_intermediate = false;
            for (int w = 0; w < node_count() && !has_intermediate; ++w) {
                if (w == e.src || w == e.dst) continue;
                if (status[static_cast<size_t>(e.src)][static_cast<size_t>(w)] == 1 &&
                    status[static_cast<size_t>(w)][static_cast<size_t>(e.dst)] == 1)
                    has_intermediate = true;
            }
            if (!has_intermediate) g.primary.push_back({e.src, e.dst});
        }
        std::sort(g.primary.begin(), g.primary.end());
    }

    void levels() {
        int zero = g.find("0");
        std::vector<int> memo(g.nodes.size(), -1);
        auto longest = [&](auto&& self, int v) -> int {
            if (v == zero) return 0;
            if (memo[static_cast<size_t>(v)] >= 0) return memo[static_cast<size_t>(v)];
            int best = 0;
            for (const auto& e : g.edges) {
                if (e.src != v || e.kind == GraphEdge::Kind::Member) continue;
                best = std::max(best, 1 + self(self, e.dst));
            }
            memo[static_cast<size_t>(v)] = best;
            return best;
        };
        for (int v = 0; v < node_count(); ++v) g.levels[v] = longest(longest, v);
    }

    void components() {
        for (int s = 0; s < node_count(); ++s) {
            bool incoming = false;
            for (const auto& e : g.edges)
                if (e.dst == s) { incoming = true; break; }
            if (incoming) continue;
            Component comp;
            comp.source = s;
            comp.rigid = !g.nodes[static_cast<size_t>(s)].family;
            comp.members.push_back(s);
            for (int v = 0; v < node_count(); ++v)
                if (v != s && status[static_cast<size_t>(s)][static_cast<size_t>(v)] == 1)
                    comp.members.push_back(v);
            std::set<std::string> display;
            for (int v : comp.members) {
                const std::string& label = g.nodes[static_cast<size_t>(v)].label;
                if (label.rfind("C2", 0) == 0)
                    display.insert("C2(alpha)");
                else
                    display.insert(label);
            }
            comp.display.assign(display.begin(), display.end());
            g.components.push_back(std::move(comp));
        }
        std::sort(g.components.begin(), g.components.end(),
                  [&](const Component& a, const Component& b) {
                      return g.nodes[static_cast<size_t>(a.source)].label <
                             g.nodes[static_cast<size_t>(b.source)].label;
                  });
    }
};

} // namespace

DegenerationGraph build_graph(int n, const ProfileConfig& cfg) {
    if (n < 2) raise(ErrorKind::BadInput, "graph requires n >= 2");
    Builder b;
    b.n = n;
    b.cfg = cfg;
    b.g.n = n;
    b.make_nodes();
    b.seed_edges();
    b.classify();
    b.reduce();
    b.levels();
    b.components();
    return b.g;
}

namespace {

// Monotonicity requirements along one certified degeneration a -> b.
// family semantics: generic member dimensions bound every member, so
// non-strict inequalities apply and member-dependent invariants are skipped.
void check_edge_monotone(const GraphNode& a, const GraphNode& b, bool family,
                         const std::string& what, std::vector<std::string>& out) {
    auto bad = [&](const std::string& msg) { out.push_back(what + ": " + msg); };
    if (family) {
        if (a.prof.aut > b.prof.aut) bad("family aut dim exceeds target");
    } else {
        if (a.prof.aut >= b.prof.aut) bad("aut dim must strictly increase");
    }
    if (a.prof.dim_derived < b.prof.dim_derived) bad("derived dim increased");
    if (a.prof.dim_ann > b.prof.dim_ann) bad("annihilator dim decreased");
    for (const auto& [I, da] : a.prof.dim_ann_I) {
        auto it = b.prof.dim_ann_I.find(I);
        if (it != b.prof.dim_ann_I.end() && da > it->second) bad("Ann_I dim decreased");
    }
    for (const auto& [t, da] : a.prof.dim_center_t) {
        auto it = b.prof.dim_center_t.find(t);
        if (it != b.prof.dim_center_t.end() && da > it->second) bad("Z_t dim decreased");
    }
    for (const auto& [w, da] : a.prof.dim_der_alpha)
        for (const auto& [wb, db] : b.prof.dim_der_alpha)
            if (w == wb && da > db) bad("Der_(alpha) dim decreased");
    if (!family) {
        for (const auto& [ij, ta] : a.prof.c) {
            auto it = b.prof.c.find(ij);
            if (it == b.prof.c.end()) continue;
            const TraceValue& tb = it->second;
            if (!ta.exact || !tb.exact) continue;
            if (!ta.has_invariant() || !tb.has_invariant()) continue;
            bool equal = ta.tag == tb.tag &&
                         (ta.tag != TraceValue::Tag::Value || ta.value == tb.value);
            if (!equal) bad("c_{i,j} changed along a degeneration");
        }
        if (a.prof.socle.available && b.prof.socle.available &&
            a.prof.socle.dim > b.prof.socle.dim)
            bad("scalar socle dim decreased");
    }
}

bool certificate_valid(const DegenerationGraph& g, const Refutation& r) {
    const Profile& a = g.nodes[static_cast<size_t>(r.src)].prof;
    const Profile& b = g.nodes[static_cast<size_t>(r.dst)].prof;
    bool family = g.nodes[static_cast<size_t>(r.src)].family;
    switch (r.cert.criterion) {
        case Certificate::Criterion::AutDim:
            return family ? a.aut > b.aut : a.aut >= b.aut;
        case Certificate::Criterion::Derived:
            return a.dim_derived < b.dim_derived;
        case Certificate::Criterion::Ann:
            return a.dim_ann > b.dim_ann;
        case Certificate::Criterion::AnnI: {
            auto ia = a.dim_ann_I.find(r.cert.I);
            auto ib = b.dim_ann_I.find(r.cert.I);
            return ia != a.dim_ann_I.end() && ib != b.dim_ann_I.end() && ia->second > ib->second;
        }
        case Certificate::Criterion::Center: {
            auto ia = a.dim_center_t.find(r.cert.t);
            auto ib = b.dim_center_t.find(r.cert.t);
            return ia != a.dim_center_t.end() && ib != b.dim_center_t.end() &&
                   ia->second > ib->second;
        }
        case Certificate::Criterion::DerAlpha: {
            for (const auto& [w, da] : a.dim_der_alpha)
                for (const auto& [wb, db] : b.dim_der_alpha)
                    if (w == r.cert.weights && wb == r.cert.weights) return da > db;
            return false;
        }
        case Certificate::Criterion::TraceInv: {
            auto ia = a.c.find({r.cert.i, r.cert.j});
            auto ib = b.c.find({r.cert.i, r.cert.j});
            if (ia == a.c.end() || ib == b.c.end()) return false;
            const TraceValue &ta = ia->second, &tb = ib->second;
            if (!ta.exact || !tb.exact || !ta.has_invariant() || !tb.has_invariant())
                return false;
            if (family && !ta.family_constant) return false;
            return ta.tag != tb.tag ||
                   (ta.tag == TraceValue::Tag::Value && ta.value != tb.value);
        }
        case Certificate::Criterion::Socle:
            return !family && a.socle.available && b.socle.available &&
                   a.socle.dim > b.socle.dim;
        case Certificate::Criterion::Transitive: {
            int via = g.find(r.cert.via);
            if (via < 0) return false;
            bool ruleA = g.certified(via, r.src) && g.refutation(via, r.dst) != nullptr;
            bool ruleB = g.certified(r.dst, via) && g.refutation(r.src, via) != nullptr;
            return ruleA || ruleB;
        }
    }
    return false;
}

} // namespace

std::vector<std::string> consistency_violations(const DegenerationGraph& g) {
    std::vector<std::string> out;
    // no pair may be both certified and refuted
    for (const auto& r : g.refutations)
        if (g.certified(r.src, r.dst))
            out.push_back("pair both certified and refuted: " +
                          g.nodes[static_cast<size_t>(r.src)].label + " -> " +
                          g.nodes[static_cast<size_t>(r.dst)].label);
    for (const auto& e : g.edges) {
        if (e.kind == GraphEdge::Kind::Member) continue;
        const GraphNode& a = g.nodes[static_cast<size_t>(e.src)];
        const GraphNode& b = g.nodes[static_cast<size_t>(e.dst)];
        check_edge_monotone(a, b, a.family, a.label + " -> " + b.label, out);
    }
    for (const auto& r : g.refutations) {
        if (!certificate_valid(g, r))
            out.push_back("certificate no longer valid: " +
                          g.nodes[static_cast<size_t>(r.src)].label + " -/-> " +
                          g.nodes[static_cast<size_t>(r.dst)].label + " (" + r.cert.str() + ")");
    }
    return out;
}

std::string to_dot(const DegenerationGraph& g) {
    std::ostringstream os;
    os << "digraph degenerations {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=box, style=rounded];\n";
    for (const auto& node : g.nodes) {
        os << "  \"" << node.label << "\" [label=\"" << node.label << "\\naut = " << node.aut
           << "\"];\n";
    }
    int c2s = g.find("C2(-1/4)");
    int c3 = g.find("C3");
    for (const auto& [src, dst] : g.primary) {
        os << "  \"" << g.nodes[static_cast<size_t>(src)].label << "\" -> \""
           << g.nodes[static_cast<size_t>(dst)].label << "\"";
        if (src == c2s && dst == c3) os << " [label=\"\xCE\xB1=-1/4\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace filn
