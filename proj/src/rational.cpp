#include "filn/rational.hpp"

#include <ostream>

#include "filn/error.hpp"

namespace filn {

Rational::Rational(long n, long d) {
    if (d == 0) raise(ErrorKind::ZeroDenominator, "rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) raise(ErrorKind::ZeroDenominator, "rational with zero denominator");
    v_ = mpq_class(n) / mpq_class(d);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) raise(ErrorKind::ParseError, "empty rational literal");
    mpq_class v;
    if (v.set_str(s, 10) != 0)
        raise(ErrorKind::ParseError, "malformed rational literal: " + s);
    if (v.get_den() == 0)
        raise(ErrorKind::ZeroDenominator, "rational literal with zero denominator: " + s);
    v.canonicalize();
    return Rational(v);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) raise(ErrorKind::ZeroDenominator, "division by zero rational");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) raise(ErrorKind::ZeroDenominator, "inverse of zero");
    return Rational(mpq_class(1) / v_);
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    Rational base = e < 0 ? inverse() : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), k);
    return Rational(n, d);
}

std::string Rational::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace filn
