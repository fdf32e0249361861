#include "filn/catalog.hpp"

#include <algorithm>

#include "filn/error.hpp"

namespace filn {

namespace {

Scalar one() { return Scalar(Rational(1)); }

Vec unit(int k, int j) {
    Vec v(static_cast<size_t>(k));
    v[static_cast<size_t>(j - 1)] = one();
    return v;
}

IndexTuple all_but(int k, int skip) {
    IndexTuple t;
    for (int i = 1; i <= k; ++i)
        if (i != skip) t.push_back(i);
    return t;
}

Scalar symbolic_alpha() { return Scalar::variable("alpha"); }

} // namespace

std::string CatalogId::label() const {
    switch (kind) {
        case Kind::Zero: return "0";
        case Kind::B: return "B";
        case Kind::C1: return "C1";
        case Kind::C2: return alpha ? "C2(" + alpha->str() + ")" : "C2(alpha)";
        case Kind::C3: return "C3";
        case Kind::D: return "D" + std::to_string(r);
    }
    return "?";
}

std::optional<CatalogId> CatalogId::parse(const std::string& name, int n) {
    if (name == "0" || name == "zero" || name == "Zero") return zero(n);
    if (name == "B") return B(n);
    if (name == "C1") return C1(n);
    if (name == "C3") return C3(n);
    if (name == "C2" || name == "C2(alpha)") return C2(n);
    if (name.rfind("C2(", 0) == 0 && name.back() == ')') {
        std::string inner = name.substr(3, name.size() - 4);
        if (inner == "alpha") return C2(n);
        return C2(n, Scalar::parse(inner));
    }
    if (name.size() > 1 && name[0] == 'D') {
        int r = 0;
        for (size_t i = 1; i < name.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
            r = r * 10 + (name[i] - '0');
        }
        return D(n, r);
    }
    return std::nullopt;
}

NAry make(const CatalogId& id) {
    int n = id.n, k = id.n + 1;
    if (n < 2) raise(ErrorKind::InvalidId, "catalog requires n >= 2");
    NAry mu(n, k);
    switch (id.kind) {
        case CatalogId::Kind::Zero:
            break;
        case CatalogId::Kind::B:
            mu.add_product(all_but(k, 1), unit(k, 1));
            break;
        case CatalogId::Kind::C1:
            mu.add_product(all_but(k, 1), unit(k, 1));
            mu.add_product(all_but(k, 2), unit(k, 2));
            break;
        case CatalogId::Kind::C2: {
            Scalar a = id.alpha ? *id.alpha : symbolic_alpha();
            Vec v = unit(k, 2);
            v[0] = a;
            mu.add_product(all_but(k, 1), v);
            mu.add_product(all_but(k, 2), unit(k, 2));
            break;
        }
        case CatalogId::Kind::C3:
            mu.add_product(all_but(k, 2), unit(k, 1));
            mu.add_product(all_but(k, 1), unit(k, 2));
            break;
        case CatalogId::Kind::D:
            if (id.r < 3 || id.r > k)
                raise(ErrorKind::InvalidId, "D_r requires 3 <= r <= n+1");
            for (int i = 1; i <= id.r; ++i) mu.add_product(all_but(k, i), unit(k, i));
            break;
    }
    return mu;
}

long expected_aut_dim(const CatalogId& id) {
    long n = id.n;
    switch (id.kind) {
        case CatalogId::Kind::Zero: return (n + 1) * (n + 1);
        case CatalogId::Kind::B: return n * n + n;
        case CatalogId::Kind::C1: return n * n;
        case CatalogId::Kind::C2: return n * n;
        case CatalogId::Kind::C3: return n * n + 2;
        case CatalogId::Kind::D: {
            long r = id.r;
            return (n + 1 - r) * (n + 1) + r * (r - 1) / 2;
        }
    }
    return -1;
}

std::vector<ExpectedRow> expected_table(int n) {
    auto value = [](const Scalar& s) {
        TraceValue t;
        t.tag = TraceValue::Tag::Value;
        t.value = s;
        return t;
    };
    TraceValue indet; // both traces vanish identically
    indet.tag = TraceValue::Tag::Indeterminate;

    std::vector<ExpectedRow> rows;
    rows.push_back({CatalogId::zero(n), expected_aut_dim(CatalogId::zero(n)), indet});
    rows.push_back({CatalogId::B(n), expected_aut_dim(CatalogId::B(n)), indet});
    rows.push_back({CatalogId::C1(n), expected_aut_dim(CatalogId::C1(n)),
                    value(Scalar(Rational(0)))});
    Scalar c2 = Scalar(Rational(1)) /
                (Scalar(Rational(2)) * symbolic_alpha() + Scalar(Rational(1)));
    rows.push_back({CatalogId::C2(n), expected_aut_dim(CatalogId::C2(n)), value(c2)});
    rows.push_back({CatalogId::C3(n), expected_aut_dim(CatalogId::C3(n)),
                    value(Scalar(Rational(2)))});
    for (int r = 3; r <= n + 1; ++r)
        rows.push_back({CatalogId::D(n, r), expected_aut_dim(CatalogId::D(n, r)),
                        value(Scalar(Rational(0)))});
    return rows;
}

namespace {

Mat diagonal_basis(int k, const std::map<int, Scalar>& overrides) {
    Mat m = Mat::identity(static_cast<size_t>(k));
    for (const auto& [i, s] : overrides) m.at(static_cast<size_t>(i - 1), static_cast<size_t>(i - 1)) = s;
    return m;
}

} // namespace

std::vector<Witness> builtin_witnesses(int n) {
    if (n < 2) raise(ErrorKind::BadInput, "witnesses require n >= 2");
    int k = n + 1;
    Scalar t = Scalar::t();
    std::vector<Witness> ws;

    {
        Witness w;
        w.name = "C1->B";
        w.source_label = "C1";
        w.target_label = "B";
        w.source = make(CatalogId::C1(n));
        w.target = make(CatalogId::B(n));
        w.basis = diagonal_basis(k, {{1, t}, {3, t}});
        ws.push_back(std::move(w));
    }
    {
        // E1 = t e2, E2 = e1, E3 = t e3, rest identity; valid for every alpha.
        Witness w;
        w.name = "C2(alpha)->B";
        w.source_label = "C2(alpha)";
        w.target_label = "B";
        w.source = make(CatalogId::C2(n));
        w.target = make(CatalogId::B(n));
        Mat m = diagonal_basis(k, {{3, t}});
        m.at(0, 0) = Scalar();
        m.at(0, 1) = t;
        m.at(1, 0) = one();
        m.at(1, 1) = Scalar();
        w.basis = m;
        ws.push_back(std::move(w));
    }
    {
        // E1 = e1 - 2 e2, E2 = -2t e2, E3 = 2 e3, rest identity.
        Witness w;
        w.name = "C2(-1/4)->C3";
        w.source_label = "C2(-1/4)";
        w.target_label = "C3";
        w.source = make(CatalogId::C2(n));
        w.param_subst = {{"alpha", Scalar(Rational(-1, 4))}};
        w.target = make(CatalogId::C3(n));
        Mat m = diagonal_basis(k, {{3, Scalar(Rational(2))}});
        m.at(0, 0) = one();
        m.at(0, 1) = Scalar(Rational(-2));
        m.at(1, 0) = Scalar();
        m.at(1, 1) = Scalar(Rational(-2)) * t;
        w.basis = m;
        ws.push_back(std::move(w));
    }
    {
        Witness w;
        w.name = "D3->C1";
        w.source_label = "D3";
        w.target_label = "C1";
        w.source = make(CatalogId::D(n, 3));
        w.target = make(CatalogId::C1(n));
        w.basis = diagonal_basis(k, {{1, t}, {2, t}});
        ws.push_back(std::move(w));
    }
    for (int r = 4; r <= k; ++r) {
        // E_i = t e_i (i < r), E_r = t^(3-r) e_r, rest identity.
        Witness w;
        w.name = "D" + std::to_string(r) + "->D" + std::to_string(r - 1);
        w.source_label = "D" + std::to_string(r);
        w.target_label = "D" + std::to_string(r - 1);
        w.source = make(CatalogId::D(n, r));
        w.target = make(CatalogId::D(n, r - 1));
        std::map<int, Scalar> d;
        for (int i = 1; i < r; ++i) d[i] = t;
        d[r] = t.pow(3 - r);
        w.basis = diagonal_basis(k, d);
        ws.push_back(std::move(w));
    }
    {
        // Family witness: alpha = 1/t^2 with E1 = e1, E2 = t e2, E3 = t e3.
        // In this basis C2(1/t^2) reads [E2,..] = E1 + t E2, [E1,E3,..] = E2,
        // which specializes to C1 at t = 0.
        Witness w;
        w.name = "C2(*)->C1";
        w.source_label = "C2(*)";
        w.target_label = "C1";
        w.source = make(CatalogId::C2(n));
        w.param_subst = {{"alpha", t.pow(-2)}};
        w.target = make(CatalogId::C1(n));
        w.basis = diagonal_basis(k, {{2, t}, {3, t}});
        ws.push_back(std::move(w));
    }
    return ws;
}

Witness specialized_member_witness(int n) {
    auto ws = builtin_witnesses(n);
    for (auto& w : ws) {
        if (w.name == "C2(alpha)->B") {
            w.name = "C2(-1/4)->B";
            w.source_label = "C2(-1/4)";
            w.param_subst = {{"alpha", Scalar(Rational(-1, 4))}};
            return w;
        }
    }
    raise(ErrorKind::Internal, "generic C2 witness missing");
}

namespace {

Scalar det_of(const Mat& m) { return m.rows() == 0 ? Scalar(Rational(1)) : det(m); }

// diag(1,-1,1,...) of size r
Mat signature_matrix(int r) {
    Mat s(static_cast<size_t>(r), static_cast<size_t>(r));
    for (int i = 0; i < r; ++i)
        s.at(static_cast<size_t>(i), static_cast<size_t>(i)) =
            Scalar(Rational(i % 2 == 0 ? 1 : -1));
    return s;
}

void place_block(Mat& S, size_t ri, size_t ci, const Mat& block) {
    for (size_t i = 0; i < block.rows(); ++i)
        for (size_t j = 0; j < block.cols(); ++j) S.at(ri + i, ci + j) = block.at(i, j);
}

} // namespace

AutBuild build_automorphism(const CatalogId& id, const AutParams& p) {
    int n = id.n, k = n + 1;
    AutBuild out;
    Mat S(static_cast<size_t>(k), static_cast<size_t>(k));
    switch (id.kind) {
        case CatalogId::Kind::Zero: {
            // every invertible map
            if (det_of(p.U).is_zero()) { out.violated = "U invertible"; return out; }
            out.S = p.U;
            out.ok = true;
            return out;
        }
        case CatalogId::Kind::B: {
            if (p.U.rows() != static_cast<size_t>(n) || p.U.cols() != static_cast<size_t>(n)) {
                out.violated = "U must be n x n";
                return out;
            }
            if (p.row.size() != static_cast<size_t>(n))
                raise(ErrorKind::BadInput, "B automorphism needs n free row entries");
            Scalar dU = det_of(p.U);
            if (dU.is_zero()) { out.violated = "U invertible"; return out; }
            S.at(0, 0) = dU;
            for (int j = 0; j < n; ++j) S.at(0, static_cast<size_t>(j + 1)) = p.row[static_cast<size_t>(j)];
            place_block(S, 1, 1, p.U);
            break;
        }
        case CatalogId::Kind::C1: {
            Scalar dU = det_of(p.U);
            if (dU != Scalar(Rational(1)) && dU != Scalar(Rational(-1))) {
                out.violated = "det(U) = 1 or -1";
                return out;
            }
            if (p.a * p.a == p.b * p.b) { out.violated = "a^2 != b^2"; return out; }
            S.at(0, 0) = p.a;
            S.at(0, 1) = p.b * dU;
            S.at(1, 0) = p.b;
            S.at(1, 1) = p.a * dU;
            place_block(S, 0, 2, p.V);
            place_block(S, 2, 2, p.U);
            break;
        }
        case CatalogId::Kind::C2: {
            Scalar alpha = id.alpha ? *id.alpha : Scalar::variable("alpha");
            Scalar dU = det_of(p.U);
            if (dU != Scalar(Rational(1))) { out.violated = "det(U) = 1"; return out; }
            if (p.a * (p.a + p.b) == alpha * p.b * p.b) {
                out.violated = "a*(a+b) != alpha*b^2";
                return out;
            }
            S.at(0, 0) = p.a;
            S.at(0, 1) = alpha * p.b;
            S.at(1, 0) = p.b;
            S.at(1, 1) = p.a + p.b;
            place_block(S, 0, 2, p.V);
            place_block(S, 2, 2, p.U);
            break;
        }
        case CatalogId::Kind::C3: {
            if (det_of(p.U).is_zero()) { out.violated = "U invertible"; return out; }
            if (det_of(p.W) != Scalar(Rational(1))) { out.violated = "det(W) = 1"; return out; }
            place_block(S, 0, 0, p.U);
            place_block(S, 0, 2, p.V);
            place_block(S, 2, 2, p.W);
            break;
        }
        case CatalogId::Kind::D: {
            int r = id.r;
            if (p.U.rows() != static_cast<size_t>(r)) { out.violated = "U must be r x r"; return out; }
            Mat Sr = signature_matrix(r);
            if (p.U * Sr * p.U.transpose() != Sr) { out.violated = "U preserves S_r"; return out; }
            Scalar dW = det_of(p.W);
            if (dW.is_zero()) { out.violated = "W invertible"; return out; }
            if (p.a.pow(r - 2) * det_of(p.U) * dW != Scalar(Rational(1))) {
                out.violated = "a^(r-2)*det(U)*det(W) = 1";
                return out;
            }
            place_block(S, 0, 0, p.U.scaled(p.a));
            if (k - r > 0) {
                place_block(S, 0, static_cast<size_t>(r), p.V);
                place_block(S, static_cast<size_t>(r), static_cast<size_t>(r), p.W);
            }
            break;
        }
    }
    out.S = std::move(S);
    out.ok = true;
    return out;
}

namespace {

Rational rnd_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    return Rational(num(rng), den(rng));
}

Mat rnd_matrix(std::mt19937_64& rng, size_t rows, size_t cols) {
    Mat m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = Scalar(rnd_rational(rng));
    return m;
}

Mat rnd_invertible(std::mt19937_64& rng, size_t k) {
    for (;;) {
        Mat m = rnd_matrix(rng, k, k);
        if (!det(m).is_zero()) return m;
    }
}

// Random determinant-1 matrix: identity sheared by random row operations.
Mat rnd_unimodular(std::mt19937_64& rng, size_t k) {
    Mat m = Mat::identity(k);
    if (k < 2) return m;
    std::uniform_int_distribution<size_t> pick(0, k - 1);
    for (size_t step = 0; step < 2 * k; ++step) {
        size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        Scalar c = Scalar(rnd_rational(rng));
        for (size_t l = 0; l < k; ++l) m.at(i, l) += c * m.at(j, l);
    }
    return m;
}

} // namespace

Mat sample_automorphism(const CatalogId& id, std::mt19937_64& rng) {
    int n = id.n, k = n + 1;
    for (;;) {
        AutParams p;
        switch (id.kind) {
            case CatalogId::Kind::Zero:
                p.U = rnd_invertible(rng, static_cast<size_t>(k));
                break;
            case CatalogId::Kind::B:
                p.U = rnd_invertible(rng, static_cast<size_t>(n));
                p.row.resize(static_cast<size_t>(n));
                for (auto& s : p.row) s = Scalar(rnd_rational(rng));
                break;
            case CatalogId::Kind::C1: {
                p.U = rnd_unimodular(rng, static_cast<size_t>(n - 1));
                if ((rng() & 1) != 0 && p.U.rows() >= 1) {
                    // flip to det -1
                    for (size_t l = 0; l < p.U.cols(); ++l) p.U.at(0, l) = -p.U.at(0, l);
                }
                p.a = Scalar(rnd_rational(rng));
                p.b = Scalar(rnd_rational(rng));
                p.V = rnd_matrix(rng, 2, static_cast<size_t>(n - 1));
                break;
            }
            case CatalogId::Kind::C2: {
                p.U = rnd_unimodular(rng, static_cast<size_t>(n - 1));
                p.a = Scalar(rnd_rational(rng));
                p.b = Scalar(rnd_rational(rng));
                p.V = rnd_matrix(rng, 2, static_cast<size_t>(n - 1));
                break;
            }
            case CatalogId::Kind::C3:
                p.U = rnd_invertible(rng, 2);
                p.W = rnd_unimodular(rng, static_cast<size_t>(n - 1));
                p.V = rnd_matrix(rng, 2, static_cast<size_t>(n - 1));
                break;
            case CatalogId::Kind::D: {
                int r = id.r;
                // Signed permutation preserving the sign pattern of S_r:
                // odd positions permute among odd positions, even among even.
                std::vector<int> odd, even;
                for (int i = 0; i < r; ++i) (i % 2 == 0 ? odd : even).push_back(i);
                std::shuffle(odd.begin(), odd.end(), rng);
                std::shuffle(even.begin(), even.end(), rng);
                std::vector<int> perm(static_cast<size_t>(r));
                {
                    size_t oi = 0, ei = 0;
                    for (int i = 0; i < r; ++i)
                        perm[static_cast<size_t>(i)] =
                            (i % 2 == 0) ? odd[oi++] : even[ei++];
                }
                Mat G(static_cast<size_t>(r), static_cast<size_t>(r));
                for (int i = 0; i < r; ++i) {
                    long sign = (rng() & 1) ? 1 : -1;
                    G.at(static_cast<size_t>(perm[static_cast<size_t>(i)]),
                         static_cast<size_t>(i)) = Scalar(Rational(sign));
                }
                Scalar dG = det(G);
                if (r == k) {
                    if (r % 2 == 0) {
                        if (dG != Scalar(Rational(1))) {
                            for (size_t l = 0; l < G.cols(); ++l) G.at(0, l) = -G.at(0, l);
                            dG = -dG;
                        }
                        p.a = Scalar(Rational((rng() & 1) ? 1 : -1));
                    } else {
                        p.a = dG;
                    }
                    p.U = G;
                } else {
                    static const long nums[] = {1, -1, 2, -2};
                    long choice = nums[rng() % 4];
                    p.a = Scalar(Rational(choice));
                    Mat W0 = rnd_invertible(rng, static_cast<size_t>(k - r));
                    Scalar target = (p.a.pow(r - 2) * dG * det(W0)).inverse();
                    for (size_t l = 0; l < W0.cols(); ++l) W0.at(0, l) = W0.at(0, l) * target;
                    p.W = W0;
                    p.V = rnd_matrix(rng, static_cast<size_t>(r), static_cast<size_t>(k - r));
                    p.U = G;
                }
                break;
            }
        }
        AutBuild b = build_automorphism(id, p);
        if (b.ok) return b.S;
    }
}

} // namespace filn
