#pragma once

#include <map>
#include <set>
#include <string>

#include "filn/poly.hpp"

namespace filn {

/// Element of the exact scalar tower: a rational function in the distinguished
/// deformation variable "t" and any number of named parameters, with rational
/// coefficients. Always kept in canonical form:
///   - gcd(num, den) = 1,
///   - den != 0 with leading coefficient 1 (graded-lex, t greatest).
/// Plain rationals and polynomials embed as num/1.
class Scalar {
public:
    Scalar() : num_(), den_(Poly::constant(Rational(1))) {}
    Scalar(const Rational& c) : num_(Poly::constant(c)), den_(Poly::constant(Rational(1))) {}
    Scalar(long c) : Scalar(Rational(c)) {}
    explicit Scalar(const Poly& p) : num_(p), den_(Poly::constant(Rational(1))) {}

    /// num/den, normalized. Throws ZeroDenominator when den == 0.
    static Scalar of(const Poly& num, const Poly& den);
    static Scalar variable(const std::string& name) { return Scalar(Poly::variable(name)); }
    static Scalar t() { return variable("t"); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_rational() const { return num_.is_constant() && den_.is_one(); }
    Rational rational_value() const;
    bool is_polynomial() const { return den_.is_one(); }
    /// True when no variable besides the listed parameters appears (in
    /// particular "t" does not appear).
    bool depends_on(const std::string& var) const;
    std::set<std::string> variables() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    Scalar inverse() const;
    Scalar pow(long e) const;

    /// Structural equality of normal forms (== equality of rational functions).
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Substitutes scalars for variables (missing variables stay symbolic).
    Scalar subst(const std::map<std::string, Scalar>& assignment) const;

    std::string str() const;

    /// Parses the scalar literal grammar: integers, p/q rationals, parameter
    /// names, the reserved variable t, + - * / ^ (integer exponents) and
    /// parentheses. Throws Error(ParseError) on malformed input.
    static Scalar parse(const std::string& text);

private:
    Poly num_, den_;
    void normalize();
};

/// Result of the t -> 0 limit of a scalar.
struct LimitResult {
    bool regular = false;
    Scalar value;        // rational function in the parameters only (when regular)
    int64_t pole_order = 0; // > 0 when not regular
};

/// Exact limit at t = 0, viewing the scalar as a rational function of t over
/// the parameter field. Poles are reported with their order.
LimitResult limit_at_zero(const Scalar& f);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace filn
