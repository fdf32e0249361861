#include "filn/scalar.hpp"

#include <ostream>

#include "filn/error.hpp"

namespace filn {

Scalar Scalar::of(const Poly& num, const Poly& den) {
    if (den.is_zero())
        raise(ErrorKind::ZeroDenominator, "rational function with zero denominator");
    Scalar s;
    s.num_ = num;
    s.den_ = den;
    s.normalize();
    return s;
}

void Scalar::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(Rational(1));
        return;
    }
    if (!den_.is_constant() && !num_.is_constant()) {
        Poly g = Poly::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = Poly::divexact(num_, g);
            den_ = Poly::divexact(den_, g);
        }
    }
    Rational l = den_.lc();
    if (!l.is_one()) {
        Rational inv = l.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Rational Scalar::rational_value() const {
    if (!is_rational()) raise(ErrorKind::Internal, "rational_value of non-rational scalar");
    return num_.is_zero() ? Rational(0) : num_.constant_value();
}

bool Scalar::depends_on(const std::string& var) const {
    return num_.uses(var) || den_.uses(var);
}

std::set<std::string> Scalar::variables() const {
    std::set<std::string> vs(num_.vars().begin(), num_.vars().end());
    vs.insert(den_.vars().begin(), den_.vars().end());
    return vs;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return Scalar::of(a.num_ + b.num_, a.den_);
    return Scalar::of(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    return Scalar::of(a.num_ * b.num_, a.den_ * b.den_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) raise(ErrorKind::ZeroDenominator, "division by zero scalar");
    if (a.is_zero()) return Scalar();
    return Scalar::of(a.num_ * b.den_, a.den_ * b.num_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) raise(ErrorKind::ZeroDenominator, "inverse of zero scalar");
    return of(den_, num_);
}

Scalar Scalar::pow(long e) const {
    if (e == 0) return Scalar(Rational(1));
    Scalar base = e < 0 ? inverse() : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    return of(base.num_.pow(static_cast<unsigned>(k)), base.den_.pow(static_cast<unsigned>(k)));
}

Scalar Scalar::subst(const std::map<std::string, Scalar>& assignment) const {
    auto subst_poly = [&assignment](const Poly& p) {
        Scalar acc;
        for (const auto& t : p.terms()) {
            Scalar v(t.coef);
            for (size_t i = 0; i < p.vars().size(); ++i) {
                if (t.exp[i] == 0) continue;
                auto it = assignment.find(p.vars()[i]);
                Scalar base = it != assignment.end() ? it->second
                                                     : Scalar::variable(p.vars()[i]);
                v *= base.pow(t.exp[i]);
            }
            acc += v;
        }
        return acc;
    };
    Scalar n = subst_poly(num_);
    Scalar d = subst_poly(den_);
    return n / d;
}

LimitResult limit_at_zero(const Scalar& f) {
    LimitResult res;
    // Normal form has gcd(num, den) = 1, so t cannot divide both.
    int64_t vden = f.den().valuation("t");
    if (!f.num().is_zero() && vden > 0) {
        res.regular = false;
        res.pole_order = vden;
        return res;
    }
    res.regular = true;
    res.value = Scalar::of(f.num().at_zero("t"), f.den().at_zero("t"));
    return res;
}

std::string Scalar::str() const {
    if (den_.is_one()) return num_.str();
    auto wrap = [](const Poly& p) {
        std::string s = p.str();
        if (p.term_count() > 1 || s.find('*') != std::string::npos ||
            s.find('/') != std::string::npos || (!s.empty() && s[0] == '-'))
            return "(" + s + ")";
        return s;
    };
    return wrap(num_) + "/" + wrap(den_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

} // namespace filn
