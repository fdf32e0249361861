#include <cctype>
#include <string>

#include "filn/error.hpp"
#include "filn/scalar.hpp"

namespace filn {

namespace {

// Recursive-descent parser for the scalar literal grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-')* primary ('^' ['-'] digits)?
//   primary:= digits | name | '(' expr ')'
class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Scalar run() {
        Scalar v = expr();
        skip_ws();
        if (pos_ != s_.size())
            raise(ErrorKind::ParseError, "trailing input in scalar literal: " + s_);
        return v;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Scalar expr() {
        Scalar v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }

    Scalar term() {
        Scalar v = factor();
        for (;;) {
            if (eat('*')) v *= factor();
            else if (eat('/')) {
                Scalar d = factor();
                if (d.is_zero()) raise(ErrorKind::ZeroDenominator, "division by zero in literal");
                v /= d;
            } else {
                return v;
            }
        }
    }

    Scalar factor() {
        bool neg = false;
        while (true) {
            if (eat('-')) { neg = !neg; continue; }
            if (eat('+')) continue;
            break;
        }
        Scalar v = primary();
        if (eat('^')) {
            bool eneg = eat('-');
            long e = integer();
            v = v.pow(eneg ? -e : e);
        }
        return neg ? -v : v;
    }

    long integer() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            raise(ErrorKind::ParseError, "expected integer exponent in: " + s_);
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 100000) raise(ErrorKind::ParseError, "exponent too large in: " + s_);
            ++pos_;
        }
        return v;
    }

    Scalar primary() {
        skip_ws();
        if (pos_ >= s_.size())
            raise(ErrorKind::ParseError, "unexpected end of scalar literal: " + s_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Scalar v = expr();
            if (!eat(')')) raise(ErrorKind::ParseError, "missing ')' in: " + s_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Scalar(Rational(mpz_class(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            ++pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            return Scalar::variable(s_.substr(start, pos_ - start));
        }
        raise(ErrorKind::ParseError, std::string("unexpected character '") + c + "' in: " + s_);
    }
};

} // namespace

Scalar Scalar::parse(const std::string& text) { return Parser(text).run(); }

} // namespace filn
