#include "jetdiff/rational.hpp"

#include <cctype>
#include <ostream>

#include "jetdiff/error.hpp"

namespace jetdiff {

Rational::Rational(const Integer& numerator, const Integer& denominator) {
    if (denominator == 0) throw MathError("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(long numerator, long denominator) : Rational(Integer(numerator), Integer(denominator)) {}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw UsageError("not a rational literal: '" + std::string(text) + "'");
    }
    Rational q{Integer(std::string(num)), Integer(std::string(den))};
    return negative ? -q : q;
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw MathError("division by zero");
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw MathError("inverse of zero");
    return Rational(mpq_class(1 / value_));
}

Rational Rational::pow(unsigned exponent) const {
    Integer num;
    Integer den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
    return Rational(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational factorial(unsigned n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return Rational(out);
}

Rational binomial(unsigned n, unsigned k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return Rational(out);
}

}  // namespace jetdiff
