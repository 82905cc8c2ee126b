#include "jetdiff/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "jetdiff/error.hpp"

namespace jetdiff {

namespace {

std::vector<Monomial::Factor> normalize(std::vector<Monomial::Factor> factors) {
    std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Monomial::Factor> out;
    out.reserve(factors.size());
    for (const auto& [v, e] : factors) {
        if (e == 0) continue;
        if (!out.empty() && out.back().first == v) {
            out.back().second += e;
        } else {
            out.emplace_back(v, e);
        }
    }
    return out;
}

}  // namespace

Monomial::Monomial(Variable v, unsigned exponent) {
    if (exponent > 0) factors_.emplace_back(v, exponent);
}

Monomial::Monomial(std::initializer_list<Factor> factors)
    : factors_(normalize(std::vector<Factor>(factors))) {}

Monomial::Monomial(std::vector<Factor> factors) : factors_(normalize(std::move(factors))) {}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
}

unsigned Monomial::exponent(Variable v) const {
    for (const auto& [var, e] : factors_) {
        if (var == v) return e;
    }
    return 0;
}

std::pair<Monomial, Monomial> Monomial::split(const std::set<Variable>& vars) const {
    Monomial in;
    Monomial out;
    for (const auto& f : factors_) {
        (vars.count(f.first) ? in : out).factors_.push_back(f);
    }
    return {in, out};
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
        if (i->first < j->first) {
            out.factors_.push_back(*i++);
        } else if (j->first < i->first) {
            out.factors_.push_back(*j++);
        } else {
            out.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    out.factors_.insert(out.factors_.end(), i, a.factors_.end());
    out.factors_.insert(out.factors_.end(), j, b.factors_.end());
    return out;
}

std::string Monomial::str() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& [v, e] : factors_) {
        if (!out.empty()) out += '*';
        out += v.name();
        if (e > 1) out += '^' + std::to_string(e);
    }
    return out;
}

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = a.degree();
    const unsigned db = b.degree();
    if (da != db) return da > db;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    const std::size_t n = std::min(fa.size(), fb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first;
        if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
    }
    return fa.size() > fb.size();
}

Polynomial::Polynomial(Rational constant) {
    if (!constant.is_zero()) terms_.emplace(Monomial(), std::move(constant));
}

Polynomial::Polynomial(Variable v) { terms_.emplace(Monomial(v), Rational(1)); }

Polynomial::Polynomial(const Monomial& m, Rational coefficient) {
    if (!coefficient.is_zero()) terms_.emplace(m, std::move(coefficient));
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

Rational Polynomial::constant_term() const { return coefficient(Monomial()); }

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

std::set<Variable> Polynomial::variables() const {
    std::set<Variable> out;
    for (const auto& [m, c] : terms_) {
        for (const auto& f : m.factors()) out.insert(f.first);
    }
    return out;
}

bool Polynomial::contains(Variable v) const {
    for (const auto& [m, c] : terms_) {
        if (m.exponent(v) > 0) return true;
    }
    return false;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    *this = *this * rhs;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& rhs) {
    if (rhs.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= rhs;
    return *this;
}

Polynomial& Polynomial::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw MathError("polynomial division by zero");
    for (auto& [m, c] : terms_) c /= rhs;
    return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial result(1);
    Polynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

Polynomial Polynomial::derivative(Variable v) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        const unsigned e = m.exponent(v);
        if (e == 0) continue;
        std::vector<Monomial::Factor> factors = m.factors();
        for (auto& f : factors) {
            if (f.first == v) f.second -= 1;
        }
        out.add_term(Monomial(std::move(factors)), c * Rational(static_cast<long>(e)));
    }
    return out;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const Rational mag = c.abs();
        if (first) {
            if (c.sign() < 0) os << '-';
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        if (m.is_one()) {
            os << mag;
        } else if (mag.is_one()) {
            os << m.str();
        } else {
            os << mag << '*' << m.str();
        }
    }
    return os.str();
}

Polynomial poly_arith(const Polynomial& p, const Polynomial& q, ArithOp op) {
    switch (op) {
        case ArithOp::Add:
            return p + q;
        case ArithOp::Sub:
            return p - q;
        case ArithOp::Mul:
            return p * q;
    }
    throw InternalError("unknown arithmetic op");
}

Polynomial substitute(const Polynomial& p, const Bindings& bindings) {
    // Powers of each bound image, computed lazily and reused across terms.
    std::map<Variable, std::vector<Polynomial>> powers;
    auto power_of = [&](Variable v, unsigned e) -> const Polynomial& {
        auto& table = powers[v];
        if (table.empty()) table.emplace_back(1);
        while (table.size() <= e) table.push_back(table.back() * bindings.at(v));
        return table[e];
    };

    Polynomial out;
    for (const auto& [m, c] : p.terms()) {
        std::vector<Monomial::Factor> kept;
        Polynomial product(c);
        for (const auto& [v, e] : m.factors()) {
            if (bindings.count(v)) {
                product *= power_of(v, e);
            } else {
                kept.emplace_back(v, e);
            }
            if (product.is_zero()) break;
        }
        if (product.is_zero()) continue;
        if (!kept.empty()) product *= Polynomial(Monomial(std::move(kept)));
        out += product;
    }
    return out;
}

std::map<Monomial, Polynomial, GradedLexGreater> collect(const Polynomial& p, const std::set<Variable>& vars) {
    std::map<Monomial, Polynomial, GradedLexGreater> out;
    for (const auto& [m, c] : p.terms()) {
        auto [key, rest] = m.split(vars);
        out[key] += Polynomial(rest, c);
    }
    return out;
}

Polynomial primitive_part(const Polynomial& p) {
    if (p.is_zero()) return p;
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    for (const auto& [m, c] : p.terms()) {
        num_gcd = gcd(num_gcd, c.numerator());
        den_lcm = lcm(den_lcm, c.denominator());
    }
    Rational scale(den_lcm, num_gcd);
    if (p.terms().begin()->second.sign() < 0) scale = -scale;
    return p * scale;
}

}  // namespace jetdiff
