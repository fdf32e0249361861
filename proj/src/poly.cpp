#include "filn/poly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <ostream>
#include <sstream>

#include "filn/error.hpp"

namespace filn {

namespace {

int64_t term_degree(const Poly::Term& t) {
    return std::accumulate(t.exp.begin(), t.exp.end(), int64_t{0});
}

// Descending graded-lex: higher total degree first, ties broken by the most
// significant variable's exponent.
bool mono_greater(const std::vector<int32_t>& a, const std::vector<int32_t>& b) {
    int64_t da = std::accumulate(a.begin(), a.end(), int64_t{0});
    int64_t db = std::accumulate(b.begin(), b.end(), int64_t{0});
    if (da != db) return da > db;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

struct MonoGreaterCmp {
    bool operator()(const std::vector<int32_t>& a, const std::vector<int32_t>& b) const {
        return mono_greater(a, b);
    }
};

} // namespace

bool Poly::var_before(const std::string& a, const std::string& b) {
    if (a == b) return false;
    if (a == "t") return true;
    if (b == "t") return false;
    return a < b;
}

Poly Poly::constant(const Rational& c) {
    Poly p;
    if (!c.is_zero()) p.terms_.push_back({{}, c});
    return p;
}

Poly Poly::variable(const std::string& name) {
    Poly p;
    p.vars_ = {name};
    p.terms_.push_back({{1}, Rational(1)});
    return p;
}

Poly Poly::term(const Rational& c, const std::vector<std::pair<std::string, int32_t>>& m) {
    Poly p = constant(c);
    for (const auto& [v, e] : m) {
        Poly f = variable(v);
        for (int32_t i = 0; i < e; ++i) p = p * f;
    }
    return p;
}

Poly Poly::from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
    Poly p;
    p.vars_ = std::move(vars);
    p.terms_ = std::move(terms);
    p.canon();
    return p;
}

void Poly::canon() {
    std::vector<Term> kept;
    kept.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!t.coef.is_zero()) kept.push_back(std::move(t));
    }
    std::sort(kept.begin(), kept.end(),
              [](const Term& a, const Term& b) { return mono_greater(a.exp, b.exp); });
    terms_.clear();
    for (auto& t : kept) {
        if (!terms_.empty() && terms_.back().exp == t.exp) {
            terms_.back().coef += t.coef;
            if (terms_.back().coef.is_zero()) terms_.pop_back();
        } else {
            terms_.push_back(std::move(t));
        }
    }
    // Drop variables with zero exponent everywhere.
    std::vector<size_t> used;
    for (size_t i = 0; i < vars_.size(); ++i) {
        bool u = false;
        for (const auto& t : terms_)
            if (t.exp[i] != 0) { u = true; break; }
        if (u) used.push_back(i);
    }
    if (used.size() != vars_.size()) {
        std::vector<std::string> nv;
        nv.reserve(used.size());
        for (size_t i : used) nv.push_back(vars_[i]);
        for (auto& t : terms_) {
            std::vector<int32_t> ne;
            ne.reserve(used.size());
            for (size_t i : used) ne.push_back(t.exp[i]);
            t.exp = std::move(ne);
        }
        vars_ = std::move(nv);
    }
}

Poly Poly::remapped(const std::vector<std::string>& new_vars) const {
    Poly r;
    r.vars_ = new_vars;
    std::vector<size_t> pos(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
        assert(it != new_vars.end());
        pos[i] = static_cast<size_t>(it - new_vars.begin());
    }
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term nt;
        nt.exp.assign(new_vars.size(), 0);
        for (size_t i = 0; i < vars_.size(); ++i) nt.exp[pos[i]] = t.exp[i];
        nt.coef = t.coef;
        r.terms_.push_back(std::move(nt));
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return mono_greater(a.exp, b.exp); });
    return r;
}

void Poly::align(Poly& a, Poly& b) {
    if (a.vars_ == b.vars_) return;
    std::vector<std::string> merged = a.vars_;
    for (const auto& v : b.vars_)
        if (std::find(merged.begin(), merged.end(), v) == merged.end()) merged.push_back(v);
    std::sort(merged.begin(), merged.end(), var_before);
    if (a.vars_ != merged) a = a.remapped(merged);
    if (b.vars_ != merged) b = b.remapped(merged);
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && term_degree(terms_[0]) == 0;
}

Rational Poly::constant_value() const {
    if (is_zero()) return Rational(0);
    if (!is_constant()) raise(ErrorKind::Internal, "constant_value of non-constant poly");
    return terms_[0].coef;
}

int64_t Poly::total_degree() const {
    int64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, term_degree(t));
    return d;
}

int64_t Poly::degree_in(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return 0;
    size_t i = static_cast<size_t>(it - vars_.begin());
    int64_t d = 0;
    for (const auto& t : terms_) d = std::max<int64_t>(d, t.exp[i]);
    return d;
}

Rational Poly::lc() const {
    if (is_zero()) return Rational(0);
    return terms_[0].coef;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    Poly::align(x, y);
    Poly r;
    r.vars_ = x.vars_;
    r.terms_.reserve(x.terms_.size() + y.terms_.size());
    size_t i = 0, j = 0;
    while (i < x.terms_.size() || j < y.terms_.size()) {
        if (j == y.terms_.size() ||
            (i < x.terms_.size() && mono_greater(x.terms_[i].exp, y.terms_[j].exp))) {
            r.terms_.push_back(x.terms_[i++]);
        } else if (i == x.terms_.size() || mono_greater(y.terms_[j].exp, x.terms_[i].exp)) {
            r.terms_.push_back(y.terms_[j++]);
        } else {
            Rational c = x.terms_[i].coef + y.terms_[j].coef;
            if (!c.is_zero()) r.terms_.push_back({x.terms_[i].exp, c});
            ++i;
            ++j;
        }
    }
    r.canon();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) { return Poly::mul_budget(a, b, 0); }

Poly Poly::mul_budget(const Poly& a, const Poly& b, size_t budget) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly x = a, y = b;
    align(x, y);
    if (budget > 0 && x.terms_.size() * y.terms_.size() > budget) {
        // Disjoint supports produce exactly |a|*|b| monomials, so the result
        // provably exceeds the budget; otherwise accumulate and abort late.
        bool disjoint = true;
        for (size_t v = 0; v < x.vars_.size() && disjoint; ++v) {
            bool in_x = false, in_y = false;
            for (const auto& t : x.terms_) if (t.exp[v]) { in_x = true; break; }
            for (const auto& t : y.terms_) if (t.exp[v]) { in_y = true; break; }
            if (in_x && in_y) disjoint = false;
        }
        if (disjoint)
            raise(ErrorKind::SymbolicBlowup, "polynomial product exceeds term budget");
    }
    std::map<std::vector<int32_t>, Rational, MonoGreaterCmp> acc;
    std::vector<int32_t> e(x.vars_.size());
    for (const auto& ta : x.terms_) {
        for (const auto& tb : y.terms_) {
            for (size_t v = 0; v < e.size(); ++v) e[v] = ta.exp[v] + tb.exp[v];
            auto [it, fresh] = acc.emplace(e, Rational(0));
            it->second += ta.coef * tb.coef;
            if (budget > 0 && fresh && acc.size() > budget)
                raise(ErrorKind::SymbolicBlowup, "polynomial product exceeds term budget");
        }
    }
    Poly r;
    r.vars_ = x.vars_;
    r.terms_.reserve(acc.size());
    for (auto& [exp, c] : acc)
        if (!c.is_zero()) r.terms_.push_back({exp, c});
    r.canon();
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    if (c.is_zero()) return Poly();
    Poly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r = constant(Rational(1));
    Poly base = *this;
    while (e) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    Poly::align(x, y);
    if (x.terms_.size() != y.terms_.size()) return false;
    for (size_t i = 0; i < x.terms_.size(); ++i)
        if (x.terms_[i].exp != y.terms_[i].exp || x.terms_[i].coef != y.terms_[i].coef)
            return false;
    return true;
}

Poly Poly::divexact(const Poly& a, const Poly& b) {
    if (b.is_zero()) raise(ErrorKind::ZeroDenominator, "exact division by zero polynomial");
    if (a.is_zero()) return Poly();
    if (b.is_constant()) return a.scaled(b.constant_value().inverse());
    Poly r = a, d = b;
    align(r, d);
    Poly q;
    q.vars_ = r.vars_;
    // Leading-term long division; stays exact whenever b | a.
    while (!r.is_zero()) {
        const Term& lr = r.terms_[0];
        const Term& ld = d.terms_[0];
        Term qt;
        qt.exp.resize(lr.exp.size());
        for (size_t v = 0; v < lr.exp.size(); ++v) {
            int32_t e = lr.exp[v] - ld.exp[v];
            if (e < 0) raise(ErrorKind::Internal, "divexact: division is not exact");
            qt.exp[v] = e;
        }
        qt.coef = lr.coef / ld.coef;
        Poly qterm;
        qterm.vars_ = r.vars_;
        qterm.terms_.push_back(qt);
        q.terms_.push_back(qt);
        r = r - qterm * d;
    }
    q.canon();
    return q;
}

namespace {

// Univariate view in the main variable: coefficient i is a Poly in the
// remaining variables.
std::vector<Poly> to_univar(const Poly& p, const std::string& x) {
    std::vector<Poly> coeffs;
    auto it = std::find(p.vars().begin(), p.vars().end(), x);
    if (it == p.vars().end()) {
        if (!p.is_zero()) coeffs.push_back(p);
        return coeffs;
    }
    size_t xi = static_cast<size_t>(it - p.vars().begin());
    std::vector<std::string> rest;
    for (size_t i = 0; i < p.vars().size(); ++i)
        if (i != xi) rest.push_back(p.vars()[i]);
    int64_t d = p.degree_in(x);
    std::vector<std::vector<Poly::Term>> buckets(static_cast<size_t>(d) + 1);
    for (const auto& t : p.terms()) {
        Poly::Term nt;
        nt.coef = t.coef;
        for (size_t i = 0; i < p.vars().size(); ++i)
            if (i != xi) nt.exp.push_back(t.exp[i]);
        buckets[static_cast<size_t>(t.exp[xi])].push_back(std::move(nt));
    }
    coeffs.resize(buckets.size());
    for (size_t i = 0; i < buckets.size(); ++i)
        coeffs[i] = Poly::from_terms(rest, std::move(buckets[i]));
    return coeffs;
}

Poly from_univar(const std::vector<Poly>& coeffs, const std::string& x) {
    Poly r;
    Poly xp = Poly::variable(x);
    for (size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i].is_zero()) continue;
        Poly m = Poly::constant(Rational(1));
        for (size_t j = 0; j < i; ++j) m = m * xp;
        r = r + coeffs[i] * m;
    }
    return r;
}

int64_t udeg(const std::vector<Poly>& u) {
    for (size_t i = u.size(); i-- > 0;)
        if (!u[i].is_zero()) return static_cast<int64_t>(i);
    return -1;
}

// Pseudo-remainder of a by b in the main variable (coefficients are polys).
std::vector<Poly> pseudo_rem(std::vector<Poly> a, const std::vector<Poly>& b) {
    int64_t db = udeg(b);
    assert(db >= 0);
    const Poly& lb = b[static_cast<size_t>(db)];
    int64_t da = udeg(a);
    while (da >= db) {
        Poly la = a[static_cast<size_t>(da)];
        for (int64_t i = 0; i <= da; ++i) a[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] * lb;
        for (int64_t i = 0; i <= db; ++i) {
            size_t k = static_cast<size_t>(da - db + i);
            a[k] = a[k] - la * b[static_cast<size_t>(i)];
        }
        a[static_cast<size_t>(da)] = Poly();
        da = udeg(a);
    }
    a.resize(static_cast<size_t>(std::max<int64_t>(da + 1, 0)));
    return a;
}

Poly content_of(const std::vector<Poly>& coeffs) {
    Poly g;
    for (const auto& c : coeffs) g = Poly::gcd(g, c);
    return g;
}

} // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) return Poly();
    auto monic = [](const Poly& p) {
        if (p.is_zero()) return p;
        return p.scaled(p.lc().inverse());
    };
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return constant(Rational(1));

    Poly x = a, y = b;
    align(x, y);
    const std::string main = x.vars_[0];

    if (x.vars_.size() == 1) {
        // Univariate over the rationals: monic Euclid.
        std::vector<Poly> u = to_univar(x, main), v = to_univar(y, main);
        while (udeg(v) >= 0) {
            std::vector<Poly> r = pseudo_rem(u, v);
            // Coefficients are rationals here; rescale to keep them tame.
            Poly rp = from_univar(r, main);
            if (!rp.is_zero()) rp = monic(rp);
            u = v;
            v = to_univar(rp, main);
        }
        Poly g = from_univar(u, main);
        return monic(g);
    }

    // Multivariate: primitive PRS, dense in the main variable.
    std::vector<Poly> ux = to_univar(x, main), uy = to_univar(y, main);
    Poly cx = content_of(ux), cy = content_of(uy);
    Poly cont = gcd(cx, cy);
    auto primitive = [&](std::vector<Poly> u, const Poly& c) {
        for (auto& p : u)
            if (!p.is_zero()) p = divexact(p, c);
        return u;
    };
    ux = primitive(std::move(ux), cx);
    uy = primitive(std::move(uy), cy);
    if (udeg(ux) < udeg(uy)) std::swap(ux, uy);
    while (udeg(uy) >= 0) {
        std::vector<Poly> r = pseudo_rem(ux, uy);
        if (udeg(r) >= 0) {
            Poly rc = content_of(r);
            r = primitive(std::move(r), rc);
        }
        ux = std::move(uy);
        uy = std::move(r);
    }
    Poly g = cont * from_univar(ux, main);
    return monic(g);
}

Rational Poly::eval(const std::map<std::string, Rational>& assignment) const {
    Rational acc(0);
    for (const auto& t : terms_) {
        Rational v = t.coef;
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (t.exp[i] == 0) continue;
            auto it = assignment.find(vars_[i]);
            if (it == assignment.end())
                raise(ErrorKind::MissingVariable, "no value for variable " + vars_[i]);
            v *= it->second.pow(t.exp[i]);
        }
        acc += v;
    }
    return acc;
}

Poly Poly::at_zero(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return *this;
    size_t vi = static_cast<size_t>(it - vars_.begin());
    Poly r;
    r.vars_ = vars_;
    for (const auto& t : terms_)
        if (t.exp[vi] == 0) r.terms_.push_back(t);
    r.canon();
    return r;
}

int64_t Poly::valuation(const std::string& var) const {
    if (is_zero()) return 0;
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return 0;
    size_t vi = static_cast<size_t>(it - vars_.begin());
    int64_t v = INT64_MAX;
    for (const auto& t : terms_) v = std::min<int64_t>(v, t.exp[vi]);
    return v;
}

Poly Poly::shift_down(const std::string& var, int64_t m) const {
    if (m == 0) return *this;
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) raise(ErrorKind::Internal, "shift_down: variable not present");
    size_t vi = static_cast<size_t>(it - vars_.begin());
    Poly r;
    r.vars_ = vars_;
    for (const auto& t : terms_) {
        Term nt = t;
        if (nt.exp[vi] < m) raise(ErrorKind::Internal, "shift_down: valuation too small");
        nt.exp[vi] -= static_cast<int32_t>(m);
        r.terms_.push_back(std::move(nt));
    }
    r.canon();
    return r;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coef;
        if (first) {
            if (c.sign() < 0) { os << "-"; c = -c; }
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        bool has_vars = term_degree(t) > 0;
        bool coef_shown = !c.is_one() || !has_vars;
        if (coef_shown) os << c.str();
        if (has_vars) {
            bool needs_star = coef_shown;
            for (size_t i = 0; i < vars_.size(); ++i) {
                if (t.exp[i] == 0) continue;
                if (needs_star) os << "*";
                os << vars_[i];
                if (t.exp[i] != 1) os << "^" << t.exp[i];
                needs_star = true;
            }
        }
        first = false;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

} // namespace filn
