#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "filn/rational.hpp"

namespace filn {

/// Sparse multivariate polynomial over the rationals.
///
/// Variables are kept in a fixed significance order: the deformation
/// variable "t" is always greatest, remaining parameter names follow in
/// lexicographic order. Terms are stored in descending graded-lexicographic
/// order with no zero coefficients; the leading term is terms()[0].
class Poly {
public:
    struct Term {
        std::vector<int32_t> exp; // aligned with vars()
        Rational coef;
    };

    Poly() = default;

    static Poly zero() { return Poly(); }
    static Poly constant(const Rational& c);
    static Poly variable(const std::string& name);
    /// Single term c * prod vars[i]^exps[i]; vars need not be sorted.
    static Poly term(const Rational& c, const std::vector<std::pair<std::string, int32_t>>& m);
    /// Builds from an unsorted term list over the given variables (canonicalizes).
    static Poly from_terms(std::vector<std::string> vars, std::vector<Term> terms);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const { return is_constant() && !is_zero() && terms_[0].coef.is_one(); }
    /// Constant term as a rational; requires is_constant().
    Rational constant_value() const;

    int64_t total_degree() const;
    int64_t degree_in(const std::string& var) const;
    bool uses(const std::string& var) const { return degree_in(var) > 0; }
    /// Rational coefficient of the leading (graded-lex greatest) term.
    Rational lc() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    Poly scaled(const Rational& c) const;
    Poly pow(unsigned e) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Multiplication with a cap on the number of result monomials.
    /// Throws Error(SymbolicBlowup) when the product would exceed the budget.
    static Poly mul_budget(const Poly& a, const Poly& b, size_t budget);

    /// Exact division; throws Error(Internal) if b does not divide a.
    static Poly divexact(const Poly& a, const Poly& b);

    /// Monic gcd (leading coefficient 1); gcd(0,0) = 0.
    static Poly gcd(const Poly& a, const Poly& b);

    /// Exact evaluation; assignment must cover every used variable.
    Rational eval(const std::map<std::string, Rational>& assignment) const;

    /// Substitutes var := 0 (polynomial specialization).
    Poly at_zero(const std::string& var) const;
    /// Largest power of var dividing the polynomial (0 for the zero poly).
    int64_t valuation(const std::string& var) const;
    /// Divides by var^m; every term must have exponent >= m in var.
    Poly shift_down(const std::string& var, int64_t m) const;

    std::string str() const;

    /// True when "a" is more significant than "b" ("t" greatest, then names
    /// in lexicographic order).
    static bool var_before(const std::string& a, const std::string& b);

private:
    std::vector<std::string> vars_;
    std::vector<Term> terms_;

    void canon(); // sort, merge, drop zeros, trim unused vars
    static void align(Poly& a, Poly& b);
    Poly remapped(const std::vector<std::string>& new_vars) const;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

} // namespace filn
