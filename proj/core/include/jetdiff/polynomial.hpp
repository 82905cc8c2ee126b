#pragma once

#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jetdiff/rational.hpp"
#include "jetdiff/variable.hpp"

namespace jetdiff {

/// A power product of variables. Factors are sorted by Variable and carry
/// positive exponents; the empty monomial is 1.
class Monomial {
public:
    using Factor = std::pair<Variable, unsigned>;

    Monomial() = default;
    explicit Monomial(Variable v, unsigned exponent = 1);
    /// Factors may be given in any order; repeated variables are merged and
    /// zero exponents dropped.
    Monomial(std::initializer_list<Factor> factors);
    explicit Monomial(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    unsigned degree() const;
    unsigned exponent(Variable v) const;

    /// Splits into (factors whose variable is in `vars`, the rest).
    std::pair<Monomial, Monomial> split(const std::set<Variable>& vars) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;

    /// "f1'^2*f2''"; "1" for the empty monomial.
    std::string str() const;

private:
    std::vector<Factor> factors_;
};

/// Strict "a comes before b" in graded-lex descending order: higher total
/// degree first, ties broken lexicographically with earlier variables more
/// significant.
struct GradedLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over the rationals in canonical form:
/// no zero coefficients, terms kept in descending graded-lex order.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexGreater>;

    Polynomial() = default;
    Polynomial(Rational constant);  // NOLINT(google-explicit-constructor)
    Polynomial(int constant) : Polynomial(Rational(constant)) {}  // NOLINT(google-explicit-constructor)
    Polynomial(Variable v);  // NOLINT(google-explicit-constructor)
    Polynomial(const Monomial& m, Rational coefficient = Rational(1));

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (0 when absent).
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;
    /// Total degree; 0 for the zero polynomial.
    unsigned degree() const;
    std::set<Variable> variables() const;
    bool contains(Variable v) const;
    std::size_t size() const { return terms_.size(); }

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& rhs);
    /// Division by a nonzero constant.
    Polynomial& operator/=(const Rational& rhs);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator/(Polynomial a, const Rational& c) { return a /= c; }
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    Polynomial pow(unsigned exponent) const;
    Polynomial derivative(Variable v) const;

    /// "f1'^3 + 2/3*f2'^3 - f1'*f2''"; "0" for the zero polynomial.
    std::string str() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    TermMap terms_;
};

using JetPolynomial = Polynomial;
using Bindings = std::map<Variable, Polynomial>;

enum class ArithOp { Add, Sub, Mul };

Polynomial poly_arith(const Polynomial& p, const Polynomial& q, ArithOp op);

/// Simultaneous substitution of every bound variable; unbound variables are
/// left in place.
Polynomial substitute(const Polynomial& p, const Bindings& bindings);

/// Groups terms by their power product in `vars`. The coefficients contain
/// no variable from `vars` and sum(m * coeff) reconstructs p.
std::map<Monomial, Polynomial, GradedLexGreater> collect(const Polynomial& p, const std::set<Variable>& vars);

/// Integer content normalization: scales p so its coefficients are coprime
/// integers with a positive leading coefficient. Zero stays zero.
Polynomial primitive_part(const Polynomial& p);

}  // namespace jetdiff
