#include "filn/witness.hpp"

#include <sstream>

#include "filn/error.hpp"

namespace filn {

WitnessReport verify_witness(const Witness& w) {
    if (w.source.arity() != w.target.arity() || w.source.dim() != w.target.dim())
        raise(ErrorKind::DimensionMismatch, "witness source and target shapes differ");
    int n = w.source.arity(), k = w.source.dim();
    NAry mu = w.param_subst.empty() ? w.source : w.source.subst_params(w.param_subst);
    if (det(w.basis).is_zero())
        raise(ErrorKind::SingularMatrix, "witness basis is singular as a function of t");

    WitnessReport rep;
    rep.transformed = mu.change_of_basis(w.basis);
    rep.limit = NAry(n, k);

    for (const auto& I : increasing_tuples(k, n)) {
        Vec c = rep.transformed.full_constant(I);
        Vec lim(static_cast<size_t>(k));
        for (int j = 0; j < k; ++j) {
            LimitResult l = limit_at_zero(c[static_cast<size_t>(j)]);
            if (!l.regular) {
                rep.all_regular = false;
                rep.verdict = WitnessReport::Verdict::PoleFound;
                rep.offending = I;
                return rep;
            }
            lim[static_cast<size_t>(j)] = l.value;
        }
        bool nonzero = false;
        for (const auto& s : lim)
            if (!s.is_zero()) { nonzero = true; break; }
        if (nonzero) rep.limit.add_product(I, lim);
    }

    for (const auto& I : increasing_tuples(k, n)) {
        Vec have = rep.limit.full_constant(I);
        Vec want = w.target.full_constant(I);
        if (have != want) {
            rep.verdict = WitnessReport::Verdict::LimitMismatch;
            rep.offending = I;
            return rep;
        }
    }
    rep.verdict = WitnessReport::Verdict::Certified;
    return rep;
}

WitnessReport verify_family_witness(const Witness& w) { return verify_witness(w); }

std::string format_in_new_basis(const Vec& v) {
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero()) continue;
        std::string cs = v[j].str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) { os << "-"; cs = cs.substr(1); }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        if (cs != "1") {
            bool needs_parens = cs.find(" + ") != std::string::npos ||
                                cs.find(" - ") != std::string::npos;
            os << (needs_parens ? "(" + cs + ")" : cs) << "*";
        }
        os << "E" << (j + 1);
        first = false;
    }
    if (first) return "0";
    return os.str();
}

} // namespace filn
