#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "filn/error.hpp"
#include "filn/json_io.hpp"

using namespace filn;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInconclusive = 3;

struct AlgebraArgs {
    std::string catalog;
    int r = 0;
    std::string alpha;
    std::string file;
    int n = 3;

    void attach(CLI::App* cmd) {
        cmd->add_option("--catalog", catalog, "catalog id: 0, B, C1, C2, C3, D");
        cmd->add_option("--r", r, "r for D_r");
        cmd->add_option("--alpha", alpha, "alpha for C2 (scalar literal; omit for symbolic)");
        cmd->add_option("--file", file, "algebra JSON file");
        cmd->add_option("--n", n, "arity (default 3)");
    }

    NAry load(std::string* label = nullptr) const {
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) raise(ErrorKind::BadInput, "cannot open " + file);
            ordered_json j = ordered_json::parse(in);
            return algebra_or_ref_from_json(j, label);
        }
        if (catalog.empty()) raise(ErrorKind::BadInput, "need --catalog or --file");
        std::string name = catalog;
        if (catalog == "D" && r > 0) name += std::to_string(r);
        if (catalog == "C2" && !alpha.empty()) name += "(" + alpha + ")";
        auto id = CatalogId::parse(name, n);
        if (!id) raise(ErrorKind::InvalidId, "unknown catalog id: " + name);
        if (label) *label = id->label();
        return make(*id);
    }
};

ProfileConfig config_for(int n, const std::string& config_file, size_t term_budget,
                         uint64_t seed) {
    ProfileConfig cfg = ProfileConfig::defaults(n);
    if (!config_file.empty()) {
        std::ifstream in(config_file);
        if (!in) raise(ErrorKind::BadInput, "cannot open " + config_file);
        ordered_json j = ordered_json::parse(in);
        if (j.contains("ann_I")) cfg.ann_I = j.at("ann_I").get<std::vector<std::vector<int>>>();
        if (j.contains("center_t")) cfg.center_t = j.at("center_t").get<std::vector<int>>();
        if (j.contains("trace_ij")) {
            cfg.trace_ij.clear();
            for (const auto& e : j.at("trace_ij"))
                cfg.trace_ij.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
        }
        if (j.contains("der_weights")) {
            cfg.der_weights.clear();
            for (const auto& wv : j.at("der_weights")) {
                std::vector<Rational> w;
                for (const auto& x : wv) w.push_back(Rational::parse(x.get<std::string>()));
                cfg.der_weights.push_back(std::move(w));
            }
        }
        if (j.contains("term_budget")) cfg.trace.term_budget = j.at("term_budget").get<size_t>();
    }
    if (term_budget) cfg.trace.term_budget = term_budget;
    cfg.trace.seed = seed;
    return cfg;
}

int cmd_check(const AlgebraArgs& alg) {
    std::string label;
    NAry mu = alg.load(&label);
    FilippovReport rep = check_filippov(mu);
    if (rep.pass) {
        std::cout << (label.empty() ? "algebra" : label) << ": Filippov identities hold\n";
        return 0;
    }
    std::cout << (label.empty() ? "algebra" : label) << ": " << rep.violations.size()
              << " violated instance(s)\n";
    for (const auto& v : rep.violations) {
        std::cout << "  x=(";
        for (size_t i = 0; i < v.x.size(); ++i) std::cout << (i ? "," : "") << v.x[i];
        std::cout << ") y=(";
        for (size_t i = 0; i < v.y.size(); ++i) std::cout << (i ? "," : "") << v.y[i];
        std::cout << ") residual=" << format_in_new_basis(v.residual) << "\n";
    }
    return kExitViolation;
}

int cmd_invariants(const AlgebraArgs& alg, bool as_json, const std::string& config_file,
                   size_t term_budget, uint64_t seed) {
    std::string label;
    NAry mu = alg.load(&label);
    ProfileConfig cfg = config_for(mu.arity(), config_file, term_budget, seed);
    Profile p = profile(mu, cfg);
    ordered_json j = profile_to_json(p);
    if (!label.empty()) {
        ordered_json out;
        out["algebra"] = label;
        out.update(j);
        j = std::move(out);
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (label.empty() ? "algebra" : label) << "\n";
        std::cout << "  dim A^2        = " << p.dim_derived << "\n";
        std::cout << "  dim Ann        = " << p.dim_ann << "\n";
        std::cout << "  dim Aut        = " << p.aut << "\n";
        for (const auto& [I, d] : p.dim_ann_I) {
            std::cout << "  dim Ann_{";
            for (size_t i = 0; i < I.size(); ++i) std::cout << (i ? "," : "") << I[i];
            std::cout << "} = " << d << "\n";
        }
        for (const auto& [t, d] : p.dim_center_t)
            std::cout << "  dim Z_" << t << "        = " << d << "\n";
        for (const auto& [w, d] : p.dim_der_alpha) {
            std::cout << "  dim Der_(";
            for (size_t i = 0; i < w.size(); ++i) std::cout << (i ? "," : "") << w[i].str();
            std::cout << ") = " << d << "\n";
        }
        for (const auto& [ij, t] : p.c) {
            std::cout << "  c_{" << ij.first << "," << ij.second << "}        = ";
            switch (t.tag) {
                case TraceValue::Tag::Value: std::cout << t.value.str(); break;
                case TraceValue::Tag::Infinity: std::cout << "infinity"; break;
                case TraceValue::Tag::Indeterminate: std::cout << "indeterminate"; break;
                case TraceValue::Tag::None: std::cout << "none"; break;
                case TraceValue::Tag::Unavailable: std::cout << "unavailable"; break;
            }
            if (!t.exact) std::cout << " (probabilistic)";
            std::cout << "\n";
        }
        std::cout << "  scalar socle   = "
                  << (p.socle.available ? std::to_string(p.socle.dim)
                                        : "unavailable (" + p.socle.reason + ")")
                  << "\n";
    }
    return 0;
}

int cmd_aut(const AlgebraArgs& alg, int samples, uint64_t seed) {
    std::string label;
    NAry mu = alg.load(&label);
    std::cout << (label.empty() ? "algebra" : label) << ": dim Aut = " << aut_dim(mu) << "\n";
    if (samples > 0) {
        if (alg.catalog.empty())
            raise(ErrorKind::BadInput, "--samples needs a catalog id (automorphism families)");
        std::string name = alg.catalog;
        if (alg.catalog == "D" && alg.r > 0) name += std::to_string(alg.r);
        if (alg.catalog == "C2" && !alg.alpha.empty()) name += "(" + alg.alpha + ")";
        auto id = CatalogId::parse(name, alg.n);
        std::mt19937_64 rng(seed);
        int ok = 0;
        for (int s = 0; s < samples; ++s) {
            Mat S = sample_automorphism(*id, rng);
            if (mu.is_automorphism(S)) ++ok;
        }
        std::cout << "automorphism family samples accepted: " << ok << "/" << samples << "\n";
        if (ok != samples) return kExitViolation;
    }
    return 0;
}

int cmd_degenerate(const std::string& witness_file) {
    std::ifstream in(witness_file);
    if (!in) raise(ErrorKind::BadInput, "cannot open " + witness_file);
    Witness w = witness_from_json(ordered_json::parse(in));
    WitnessReport rep = verify_witness(w);
    std::cout << (w.name.empty() ? "witness" : w.name) << ":\n";
    auto tuples = increasing_tuples(w.source.dim(), w.source.arity());
    for (const auto& I : tuples) {
        Vec c = rep.transformed.full_constant(I);
        bool nonzero = false;
        for (const auto& s : c)
            if (!s.is_zero()) { nonzero = true; break; }
        if (!nonzero) continue;
        std::cout << "  [";
        for (size_t i = 0; i < I.size(); ++i) std::cout << (i ? "," : "") << "E" << I[i];
        std::cout << "] = " << format_in_new_basis(c) << "\n";
    }
    switch (rep.verdict) {
        case WitnessReport::Verdict::Certified:
            std::cout << "verdict: Certified\n";
            return 0;
        case WitnessReport::Verdict::PoleFound: {
            std::cout << "verdict: PoleFound at tuple (";
            for (size_t i = 0; i < rep.offending.size(); ++i)
                std::cout << (i ? "," : "") << rep.offending[i];
            std::cout << ")\n";
            return kExitViolation;
        }
        case WitnessReport::Verdict::LimitMismatch: {
            std::cout << "verdict: LimitMismatch at tuple (";
            for (size_t i = 0; i < rep.offending.size(); ++i)
                std::cout << (i ? "," : "") << rep.offending[i];
            std::cout << ")\n";
            return kExitViolation;
        }
    }
    return kExitViolation;
}

int cmd_refute(const std::string& a, const std::string& b, int n,
               const std::string& config_file, size_t term_budget, uint64_t seed) {
    ProfileConfig cfg = config_for(n, config_file, term_budget, seed);
    auto load_node = [&](const std::string& name, bool* family) -> NAry {
        *family = (name == "C2(*)");
        if (*family) return make(CatalogId::C2(n));
        auto id = CatalogId::parse(name, n);
        if (!id) raise(ErrorKind::InvalidId, "unknown algebra: " + name);
        return make(*id);
    };
    bool fam_a = false, fam_b = false;
    NAry ma = load_node(a, &fam_a);
    NAry mb = load_node(b, &fam_b);
    if (fam_b) raise(ErrorKind::BadInput, "a family cannot be a degeneration target");
    Profile pa = profile(ma, cfg), pb = profile(mb, cfg);
    auto cert = refute(pa, pb, fam_a);
    if (!cert) {
        std::cout << a << " -> " << b << ": inconclusive (no criterion violated)\n";
        return kExitInconclusive;
    }
    std::cout << a << " does not degenerate to " << b << ": " << cert->str() << "\n";
    return 0;
}

int cmd_graph(int n, const std::string& dot_file, const std::string& report_file,
              const std::string& config_file, size_t term_budget, uint64_t seed) {
    ProfileConfig cfg = config_for(n, config_file, term_budget, seed);
    DegenerationGraph g = build_graph(n, cfg);
    std::cout << "n=" << n << ": " << g.nodes.size() << " nodes, " << g.edges.size()
              << " certified edges, " << g.refutations.size() << " refutations, "
              << g.primary.size() << " primary edges\n";
    std::cout << "primary degenerations:\n";
    for (const auto& [s, d] : g.primary)
        std::cout << "  " << g.nodes[static_cast<size_t>(s)].label << " -> "
                  << g.nodes[static_cast<size_t>(d)].label << "\n";
    for (const auto& c : g.components) {
        std::cout << "component (" << (c.rigid ? "rigid " : "family ")
                  << g.nodes[static_cast<size_t>(c.source)].label << "): {";
        for (size_t i = 0; i < c.display.size(); ++i)
            std::cout << (i ? ", " : "") << c.display[i];
        std::cout << "}\n";
    }
    if (!g.unclassified.empty()) {
        std::cout << "UNCLASSIFIED pairs: " << g.unclassified.size() << "\n";
        for (const auto& [x, y] : g.unclassified)
            std::cout << "  " << g.nodes[static_cast<size_t>(x)].label << " ?? "
                      << g.nodes[static_cast<size_t>(y)].label << "\n";
    }
    if (!dot_file.empty()) {
        std::ofstream out(dot_file);
        out << to_dot(g);
        std::cout << "wrote " << dot_file << "\n";
    }
    if (!report_file.empty()) {
        std::ofstream out(report_file);
        out << graph_report_to_json(g).dump(2) << "\n";
        std::cout << "wrote " << report_file << "\n";
    }
    return g.unclassified.empty() ? 0 : kExitViolation;
}

int cmd_catalog_list(int n) {
    std::cout << "catalog for n = " << n << " (dim " << n + 1 << ")\n";
    for (const auto& row : expected_table(n)) {
        std::cout << "  " << row.id.label();
        for (size_t pad = row.id.label().size(); pad < 12; ++pad) std::cout << ' ';
        std::cout << " dim Aut = " << row.aut << "\n";
    }
    return 0;
}

int cmd_catalog_emit(const AlgebraArgs& alg, const std::string& out_file) {
    std::string label;
    NAry mu = alg.load(&label);
    ordered_json j = algebra_to_json(mu);
    if (!label.empty()) j["name"] = label;
    if (out_file.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_file);
        out << j.dump(2) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact engine for (n+1)-dimensional n-ary Filippov algebras: identity "
                 "checks, invariants, degeneration witnesses and the degeneration graph"};
    app.require_subcommand(1);

    uint64_t seed = 0;
    size_t term_budget = 0;
    std::string config_file;
    app.add_option("--seed", seed, "seed for randomized steps (default 0)");
    app.add_option("--term-budget", term_budget, "monomial budget for trace invariants");
    app.add_option("--config", config_file, "profile config JSON");

    auto* check = app.add_subcommand("check", "verify the Filippov identities");
    AlgebraArgs check_alg;
    check_alg.attach(check);

    auto* inv = app.add_subcommand("invariants", "print the invariant profile");
    AlgebraArgs inv_alg;
    inv_alg.attach(inv);
    bool inv_json = false;
    inv->add_flag("--json", inv_json, "emit JSON");

    auto* aut = app.add_subcommand("aut", "automorphism dimension and family samples");
    AlgebraArgs aut_alg;
    aut_alg.attach(aut);
    int aut_samples = 0;
    aut->add_option("--samples", aut_samples, "number of random family samples to test");

    auto* deg = app.add_subcommand("degenerate", "verify a degeneration witness");
    std::string witness_file;
    deg->add_option("--witness", witness_file, "witness JSON file")->required();

    auto* ref = app.add_subcommand("refute", "non-degeneration criteria for a pair");
    std::string ref_a, ref_b;
    int ref_n = 3;
    ref->add_option("--a", ref_a, "source (catalog id or C2(*))")->required();
    ref->add_option("--b", ref_b, "target catalog id")->required();
    ref->add_option("--n", ref_n, "arity");

    auto* gr = app.add_subcommand("graph", "build the full degeneration graph");
    int gr_n = 3;
    std::string dot_file, report_file;
    gr->add_option("--n", gr_n, "arity");
    gr->add_option("--dot", dot_file, "write DOT file");
    gr->add_option("--report", report_file, "write JSON report");

    auto* cat = app.add_subcommand("catalog", "list or emit catalog algebras");
    auto* cat_list = cat->add_subcommand("list", "print the catalog table");
    int cat_n = 3;
    cat_list->add_option("--n", cat_n, "arity");
    auto* cat_emit = cat->add_subcommand("emit", "emit an algebra as JSON");
    AlgebraArgs emit_alg;
    emit_alg.attach(cat_emit);
    std::string emit_out;
    cat_emit->add_option("--out", emit_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return cmd_check(check_alg);
        if (*inv) return cmd_invariants(inv_alg, inv_json, config_file, term_budget, seed);
        if (*aut) return cmd_aut(aut_alg, aut_samples, seed);
        if (*deg) return cmd_degenerate(witness_file);
        if (*ref) return cmd_refute(ref_a, ref_b, ref_n, config_file, term_budget, seed);
        if (*gr) return cmd_graph(gr_n, dot_file, report_file, config_file, term_budget, seed);
        if (*cat) {
            if (*cat_list) return cmd_catalog_list(cat_n);
            if (*cat_emit) return cmd_catalog_emit(emit_alg, emit_out);
            std::cerr << "catalog needs a subcommand (list or emit)\n";
            return kExitBadInput;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
