#include "filn/json_io.hpp"

#include <algorithm>

#include "filn/error.hpp"

namespace filn {

namespace {

std::string tuple_str(const IndexTuple& t) {
    std::string s;
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s;
}

} // namespace

ordered_json algebra_to_json(const NAry& mu) {
    ordered_json j;
    j["n"] = mu.arity();
    j["dim"] = mu.dim();
    ordered_json params = ordered_json::array();
    for (const auto& p : mu.params()) params.push_back(p);
    j["params"] = params;
    ordered_json products = ordered_json::array();
    for (const auto& [tuple, vec] : mu.products()) {
        ordered_json entry;
        entry["args"] = tuple;
        ordered_json value;
        for (size_t l = 0; l < vec.size(); ++l)
            if (!vec[l].is_zero()) value[std::to_string(l + 1)] = vec[l].str();
        entry["value"] = value;
        products.push_back(std::move(entry));
    }
    j["products"] = products;
    return j;
}

NAry algebra_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("dim"))
        raise(ErrorKind::BadInput, "algebra JSON needs n and dim");
    int n = j.at("n").get<int>();
    int k = j.at("dim").get<int>();
    NAry mu(n, k);
    if (!j.contains("products")) return mu;
    for (const auto& entry : j.at("products")) {
        IndexTuple tuple = entry.at("args").get<IndexTuple>();
        Vec vec(static_cast<size_t>(k));
        for (const auto& [key, val] : entry.at("value").items()) {
            int idx = std::stoi(key);
            if (idx < 1 || idx > k) raise(ErrorKind::IndexOutOfRange, "value index out of range");
            vec[static_cast<size_t>(idx - 1)] = Scalar::parse(val.get<std::string>());
        }
        for (const auto& s : vec)
            if (s.depends_on("t"))
                raise(ErrorKind::BadInput, "structure constants may not involve t");
        mu.add_product(tuple, vec);
    }
    return mu;
}

NAry algebra_or_ref_from_json(const ordered_json& j, std::string* label) {
    if (j.is_object() && j.contains("catalog")) {
        int n = j.contains("n") ? j.at("n").get<int>() : 3;
        std::string name = j.at("catalog").get<std::string>();
        if (name == "D" && j.contains("r"))
            name += std::to_string(j.at("r").get<int>());
        if (name == "C2" && j.contains("alpha"))
            name += "(" + j.at("alpha").get<std::string>() + ")";
        auto id = CatalogId::parse(name, n);
        if (!id) raise(ErrorKind::InvalidId, "unknown catalog reference: " + name);
        if (label) *label = id->label();
        return make(*id);
    }
    if (label && j.is_object() && j.contains("name")) *label = j.at("name").get<std::string>();
    return algebra_from_json(j);
}

ordered_json witness_to_json(const Witness& w) {
    ordered_json j;
    j["name"] = w.name;
    j["source"] = algebra_to_json(w.source);
    if (!w.source_label.empty()) j["source"]["name"] = w.source_label;
    ordered_json subst;
    for (const auto& [p, v] : w.param_subst) subst[p] = v.str();
    j["param_subst"] = subst;
    ordered_json rows = ordered_json::array();
    for (size_t i = 0; i < w.basis.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (size_t c = 0; c < w.basis.cols(); ++c) row.push_back(w.basis.at(i, c).str());
        rows.push_back(std::move(row));
    }
    j["basis"] = rows;
    j["target"] = algebra_to_json(w.target);
    if (!w.target_label.empty()) j["target"]["name"] = w.target_label;
    return j;
}

Witness witness_from_json(const ordered_json& j) {
    Witness w;
    if (j.contains("name")) w.name = j.at("name").get<std::string>();
    w.source = algebra_or_ref_from_json(j.at("source"), &w.source_label);
    w.target = algebra_or_ref_from_json(j.at("target"), &w.target_label);
    if (j.contains("param_subst"))
        for (const auto& [p, v] : j.at("param_subst").items())
            w.param_subst[p] = Scalar::parse(v.get<std::string>());
    const auto& rows = j.at("basis");
    size_t k = static_cast<size_t>(w.source.dim());
    if (rows.size() != k) raise(ErrorKind::BadInput, "basis must have dim rows");
    w.basis = Mat(k, k);
    for (size_t i = 0; i < k; ++i) {
        if (rows[i].size() != k) raise(ErrorKind::BadInput, "basis must be square");
        for (size_t c = 0; c < k; ++c)
            w.basis.at(i, c) = Scalar::parse(rows[i][c].get<std::string>());
    }
    return w;
}

namespace {

ordered_json trace_to_json(const TraceValue& t) {
    ordered_json j;
    switch (t.tag) {
        case TraceValue::Tag::Value:
            j["value"] = t.value.str();
            j["tag"] = "value";
            break;
        case TraceValue::Tag::Infinity: j["tag"] = "infinity"; break;
        case TraceValue::Tag::Indeterminate: j["tag"] = "indeterminate"; break;
        case TraceValue::Tag::None: j["tag"] = "none"; break;
        case TraceValue::Tag::Unavailable: j["tag"] = "unavailable"; break;
    }
    j["exact"] = t.exact;
    if (!t.note.empty()) j["note"] = t.note;
    return j;
}

} // namespace

ordered_json profile_to_json(const Profile& p) {
    ordered_json j;
    j["dim_derived"] = p.dim_derived;
    j["dim_ann"] = p.dim_ann;
    j["aut_dim"] = p.aut;
    ordered_json ann;
    for (const auto& [I, d] : p.dim_ann_I) ann[tuple_str(I)] = d;
    j["dim_ann_I"] = ann;
    ordered_json cen;
    for (const auto& [t, d] : p.dim_center_t) cen[std::to_string(t)] = d;
    j["dim_center_t"] = cen;
    ordered_json der;
    for (const auto& [w, d] : p.dim_der_alpha) {
        std::string key;
        for (size_t i = 0; i < w.size(); ++i) key += (i ? "," : "") + w[i].str();
        der[key] = d;
    }
    j["dim_der_alpha"] = der;
    for (const auto& [ij, t] : p.c)
        j["c_" + std::to_string(ij.first) + "_" + std::to_string(ij.second)] = trace_to_json(t);
    ordered_json socle;
    if (p.socle.available) {
        socle["tag"] = "value";
        socle["dim"] = p.socle.dim;
    } else {
        socle["tag"] = "unavailable";
        socle["reason"] = p.socle.reason;
    }
    j["socle"] = socle;
    return j;
}

ordered_json graph_report_to_json(const DegenerationGraph& g) {
    ordered_json j;
    j["n"] = g.n;
    ordered_json nodes = ordered_json::array();
    for (const auto& node : g.nodes) {
        ordered_json nj;
        nj["label"] = node.label;
        nj["family"] = node.family;
        nj["aut_dim"] = node.aut;
        nj["level"] = g.levels.count(g.find(node.label)) ? g.levels.at(g.find(node.label)) : 0;
        nj["profile"] = profile_to_json(node.prof);
        nodes.push_back(std::move(nj));
    }
    j["nodes"] = nodes;

    auto kind_str = [](GraphEdge::Kind k) {
        switch (k) {
            case GraphEdge::Kind::Witness: return "witness";
            case GraphEdge::Kind::Axiom: return "axiom";
            case GraphEdge::Kind::Member: return "member";
            case GraphEdge::Kind::Transitive: return "transitive";
        }
        return "?";
    };
    ordered_json edges = ordered_json::array();
    for (const auto& e : g.edges) {
        ordered_json ej;
        ej["source"] = g.nodes[static_cast<size_t>(e.src)].label;
        ej["target"] = g.nodes[static_cast<size_t>(e.dst)].label;
        ej["kind"] = kind_str(e.kind);
        if (!e.witness_name.empty()) ej["witness"] = e.witness_name;
        if (!e.via.empty()) ej["via"] = e.via;
        edges.push_back(std::move(ej));
    }
    j["edges"] = edges;

    ordered_json refs = ordered_json::array();
    for (const auto& r : g.refutations) {
        ordered_json rj;
        rj["source"] = g.nodes[static_cast<size_t>(r.src)].label;
        rj["target"] = g.nodes[static_cast<size_t>(r.dst)].label;
        rj["certificate"] = r.cert.str();
        refs.push_back(std::move(rj));
    }
    j["refutations"] = refs;

    ordered_json prim = ordered_json::array();
    for (const auto& [s, d] : g.primary) {
        ordered_json pj;
        pj["source"] = g.nodes[static_cast<size_t>(s)].label;
        pj["target"] = g.nodes[static_cast<size_t>(d)].label;
        prim.push_back(std::move(pj));
    }
    j["primary_edges"] = prim;

    ordered_json comps = ordered_json::array();
    for (const auto& c : g.components) {
        ordered_json cj;
        cj["source"] = g.nodes[static_cast<size_t>(c.source)].label;
        cj["rigid"] = c.rigid;
        cj["members"] = c.display;
        comps.push_back(std::move(cj));
    }
    j["components"] = comps;

    ordered_json lv;
    for (const auto& [v, l] : g.levels) lv[g.nodes[static_cast<size_t>(v)].label] = l;
    j["levels"] = lv;

    ordered_json unc = ordered_json::array();
    for (const auto& [a, b] : g.unclassified) {
        ordered_json uj;
        uj["source"] = g.nodes[static_cast<size_t>(a)].label;
        uj["target"] = g.nodes[static_cast<size_t>(b)].label;
        unc.push_back(std::move(uj));
    }
    j["unclassified"] = unc;
    return j;
}

} // namespace filn
