#include <algorithm>

#include "filn/invariants.hpp"

namespace filn {

// Scalar-socle enumeration. Candidate subspaces are intersections of one
// eigenspace per basis right-multiplication operator; duplicates and
// dominated candidates are pruned after each operator. Operators whose
// characteristic polynomial does not split over the working field bound any
// competing subspace by the residual multiplicity; when that bound cannot
// beat the rational optimum, the rational answer stands.
SocleResult socle_dim(const NAry& mu) {
    int n = mu.arity(), k = mu.dim();
    struct Op {
        Mat m;
        std::vector<Scalar> eigenvalues;
        bool split = true;
        int nonsplit_mult = 0;
    };
    std::vector<Op> ops;
    std::vector<Vec> X(static_cast<size_t>(n - 1));
    for (const auto& T : increasing_tuples(k, n - 1)) {
        for (int a = 0; a < n - 1; ++a) {
            Vec e(static_cast<size_t>(k));
            e[static_cast<size_t>(T[static_cast<size_t>(a)] - 1)] = Scalar(Rational(1));
            X[static_cast<size_t>(a)] = std::move(e);
        }
        Op op;
        op.m = right_mult(mu, X);
        bool zero = true;
        for (size_t i = 0; i < op.m.rows() && zero; ++i)
            for (size_t j = 0; j < op.m.cols(); ++j)
                if (!op.m.at(i, j).is_zero()) { zero = false; break; }
        if (zero) continue; // no constraint
        RootExtraction roots = rational_roots(charpoly(op.m));
        if (!roots.ok)
            return {false, 0, "eigenvalue candidates could not be enumerated"};
        for (const auto& [r, mult] : roots.roots) op.eigenvalues.push_back(r);
        op.split = roots.split;
        op.nonsplit_mult = roots.max_nonsplit_mult;
        ops.push_back(std::move(op));
    }

    int irrational_bound = 0;
    for (const auto& op : ops)
        if (!op.split) irrational_bound = std::max(irrational_bound, op.nonsplit_mult);

    std::vector<Subspace> candidates = {Subspace::full(static_cast<size_t>(k))};
    for (const auto& op : ops) {
        std::vector<Subspace> next;
        for (const auto& W : candidates) {
            for (const auto& lambda : op.eigenvalues) {
                Mat shifted = op.m - Mat::identity(static_cast<size_t>(k)).scaled(lambda);
                Subspace inter = W.intersect_kernel(shifted);
                if (inter.dim() == 0) continue;
                bool dominated = false;
                for (auto& other : next) {
                    if (other.contains(inter)) { dominated = true; break; }
                }
                if (dominated) continue;
                next.erase(std::remove_if(next.begin(), next.end(),
                                          [&](const Subspace& o) { return inter.contains(o); }),
                           next.end());
                next.push_back(std::move(inter));
            }
        }
        candidates = std::move(next);
        if (candidates.empty()) break;
    }

    int rational_max = 0;
    for (const auto& W : candidates)
        rational_max = std::max(rational_max, static_cast<int>(W.dim()));

    if (irrational_bound > rational_max)
        return {false, 0, "IrrationalSpectrum"};
    return {true, rational_max, ""};
}

} // namespace filn
