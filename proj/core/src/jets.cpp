#include "jetdiff/jets.hpp"

#include <sstream>

#include "jetdiff/error.hpp"
#include "jetdiff/linalg.hpp"
#include "jetdiff/series.hpp"

namespace jetdiff {

JetSpec::JetSpec(int rank, int order, bool allow_large) : rank_(rank), order_(order) {
    if (rank < 1) throw UsageError("rank must be >= 1");
    if (order < 1) throw UsageError("order must be >= 1");
    if (!allow_large && (rank > kMaxRank || order > kMaxOrder)) {
        throw UsageError("rank and order are limited to 4 unless large specs are explicitly allowed");
    }
}

std::vector<Variable> JetSpec::jet_variables() const {
    std::vector<Variable> out;
    out.reserve(static_cast<std::size_t>(rank_ * order_));
    for (int i = 1; i <= order_; ++i) {
        for (int j = 1; j <= rank_; ++j) out.push_back(Variable::jet(i, j));
    }
    return out;
}

ReparamJet::ReparamJet(std::vector<Polynomial> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw UsageError("reparametrization jet needs order >= 1");
    if (coeffs_.front().is_zero()) throw MathError("reparametrization has a_1 = 0");
}

ReparamJet ReparamJet::identity(int order) {
    if (order < 1) throw UsageError("order must be >= 1");
    std::vector<Polynomial> c(static_cast<std::size_t>(order));
    c[0] = Polynomial(1);
    return ReparamJet(std::move(c));
}

ReparamJet ReparamJet::formal(int order, bool unipotent) {
    if (order < 1) throw UsageError("order must be >= 1");
    std::vector<Polynomial> c;
    c.reserve(static_cast<std::size_t>(order));
    c.emplace_back(unipotent ? Polynomial(1) : Polynomial(Variable::group(1)));
    for (int i = 2; i <= order; ++i) c.emplace_back(Variable::group(i));
    return ReparamJet(std::move(c));
}

std::string ReparamJet::str() const {
    Polynomial p;
    for (int i = 1; i <= order(); ++i) p += coefficient(i) * Polynomial(Monomial(Variable::series(), static_cast<unsigned>(i)));
    return p.str();
}

JetPoint::JetPoint(JetSpec spec, std::vector<Polynomial> base, std::vector<Polynomial> entries)
    : spec_(spec), base_(std::move(base)), entries_(std::move(entries)) {
    if (base_.size() != static_cast<std::size_t>(spec_.rank())) throw UsageError("jet base point has wrong dimension");
    if (entries_.size() != static_cast<std::size_t>(spec_.rank() * spec_.order())) {
        throw UsageError("jet point needs exactly k*r entries");
    }
}

JetPoint JetPoint::formal(const JetSpec& spec, std::vector<Polynomial> base) {
    std::vector<Polynomial> entries;
    for (Variable v : spec.jet_variables()) entries.emplace_back(v);
    return JetPoint(spec, std::move(base), std::move(entries));
}

JetPoint JetPoint::formal(const JetSpec& spec) {
    return formal(spec, std::vector<Polynomial>(static_cast<std::size_t>(spec.rank())));
}

const Polynomial& JetPoint::entry(int order, int component) const {
    if (order < 1 || order > spec_.order() || component < 1 || component > spec_.rank()) {
        throw std::out_of_range("jet entry index out of range");
    }
    return entries_[static_cast<std::size_t>((order - 1) * spec_.rank() + (component - 1))];
}

Bindings JetPoint::as_bindings() const {
    Bindings out;
    for (int i = 1; i <= spec_.order(); ++i) {
        for (int j = 1; j <= spec_.rank(); ++j) out.emplace(Variable::jet(i, j), entry(i, j));
    }
    return out;
}

TargetMap::TargetMap(std::vector<Polynomial> components) : components_(std::move(components)) {
    if (components_.empty()) throw UsageError("target map needs at least one component");
    for (const auto& c : components_) {
        for (Variable v : c.variables()) {
            if (v.kind() != Variable::Kind::Base || v.index() > rank()) {
                throw UsageError("target map component uses " + v.name() + ", expected z1..z" + std::to_string(rank()));
            }
        }
    }
}

TargetMap TargetMap::identity(int rank) {
    std::vector<Polynomial> c;
    for (int j = 1; j <= rank; ++j) c.emplace_back(Variable::base(j));
    return TargetMap(std::move(c));
}

TargetMap TargetMap::linear(const RationalMatrix& g) {
    if (g.rows() != g.cols() || g.rows() == 0) throw UsageError("linear map needs a square matrix");
    std::vector<Polynomial> c(g.rows());
    for (std::size_t j = 0; j < g.rows(); ++j) {
        for (const auto& [l, v] : g.row_entries(j)) c[j] += Polynomial(Monomial(Variable::base(static_cast<int>(l + 1))), v);
    }
    return TargetMap(std::move(c));
}

namespace {

Bindings point_bindings(const std::vector<Rational>& point, int rank) {
    if (point.size() != static_cast<std::size_t>(rank)) throw UsageError("point has wrong dimension");
    Bindings b;
    for (int l = 1; l <= rank; ++l) b.emplace(Variable::base(l), Polynomial(point[static_cast<std::size_t>(l - 1)]));
    return b;
}

}  // namespace

std::vector<Rational> TargetMap::evaluate(const std::vector<Rational>& point) const {
    const Bindings b = point_bindings(point, rank());
    std::vector<Rational> out;
    for (const auto& c : components_) out.push_back(substitute(c, b).constant_term());
    return out;
}

RationalMatrix TargetMap::jacobian_at(const std::vector<Rational>& point) const {
    const Bindings b = point_bindings(point, rank());
    RationalMatrix jac(components_.size(), components_.size());
    for (int j = 1; j <= rank(); ++j) {
        for (int l = 1; l <= rank(); ++l) {
            jac.set(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(l - 1),
                    substitute(component(j).derivative(Variable::base(l)), b).constant_term());
        }
    }
    return jac;
}

bool TargetMap::is_singular_at(const std::vector<Rational>& point) const { return determinant(jacobian_at(point)).is_zero(); }

bool TargetMap::is_affine() const {
    for (const auto& c : components_) {
        if (c.degree() > 1) return false;
    }
    return true;
}

TargetMap TargetMap::compose(const TargetMap& inner) const {
    if (inner.rank() != rank()) throw UsageError("cannot compose maps of different rank");
    Bindings b;
    for (int l = 1; l <= rank(); ++l) b.emplace(Variable::base(l), inner.component(l));
    std::vector<Polynomial> out;
    for (const auto& c : components_) out.push_back(substitute(c, b));
    return TargetMap(std::move(out));
}

TargetMap TargetMap::taylor_truncation(const std::vector<Rational>& point, unsigned degree) const {
    if (point.size() != static_cast<std::size_t>(rank())) throw UsageError("point has wrong dimension");
    Bindings shift;
    Bindings unshift;
    for (int l = 1; l <= rank(); ++l) {
        const Rational& x = point[static_cast<std::size_t>(l - 1)];
        shift.emplace(Variable::base(l), Polynomial(Variable::base(l)) + Polynomial(x));
        unshift.emplace(Variable::base(l), Polynomial(Variable::base(l)) - Polynomial(x));
    }
    std::vector<Polynomial> out;
    for (const auto& c : components_) {
        const Polynomial shifted = substitute(c, shift);
        Polynomial local;
        for (const auto& [m, coeff] : shifted.terms()) {
            if (m.degree() <= degree) local += Polynomial(m, coeff);
        }
        out.push_back(substitute(local, unshift));
    }
    return TargetMap(std::move(out));
}

std::string TargetMap::str() const {
    std::string out;
    for (int j = 1; j <= rank(); ++j) {
        if (j > 1) out += "; ";
        out += "w" + std::to_string(j) + " = " + component(j).str();
    }
    return out;
}

namespace {

TruncatedSeries as_series(const ReparamJet& phi) {
    TruncatedSeries s(static_cast<unsigned>(phi.order()));
    for (int i = 1; i <= phi.order(); ++i) s[static_cast<unsigned>(i)] = phi.coefficient(i);
    return s;
}

ReparamJet from_series(const TruncatedSeries& s) {
    std::vector<Polynomial> c;
    for (unsigned i = 1; i <= s.order(); ++i) c.push_back(s[i]);
    return ReparamJet(std::move(c));
}

// f_j(t) - f_j(0) as a Taylor series: coefficients f_j^(i) / i!.
TruncatedSeries component_series(const JetPoint& jet, int component) {
    const auto k = static_cast<unsigned>(jet.spec().order());
    TruncatedSeries s(k);
    for (unsigned i = 1; i <= k; ++i) s[i] = jet.entry(static_cast<int>(i), component) / factorial(i);
    return s;
}

std::vector<Polynomial> derivatives_of(const std::vector<TruncatedSeries>& series, int rank, int order) {
    std::vector<Polynomial> entries(static_cast<std::size_t>(rank * order));
    for (int i = 1; i <= order; ++i) {
        const Rational scale = factorial(static_cast<unsigned>(i));
        for (int j = 1; j <= rank; ++j) {
            entries[static_cast<std::size_t>((i - 1) * rank + (j - 1))] =
                series[static_cast<std::size_t>(j - 1)][static_cast<unsigned>(i)] * scale;
        }
    }
    return entries;
}

}  // namespace

ReparamJet compose_reparam(const ReparamJet& phi, const ReparamJet& psi) {
    if (phi.order() != psi.order()) throw UsageError("cannot compose jets of different order");
    return from_series(as_series(phi).compose(as_series(psi)));
}

ReparamJet invert_reparam(const ReparamJet& phi) {
    const Polynomial& a1 = phi.coefficient(1);
    if (!a1.is_constant()) throw UsageError("inverse needs a numeric leading coefficient");
    const Rational lead = a1.constant_term();
    if (lead.is_zero()) throw MathError("reparametrization has a_1 = 0");

    // Solve phi(psi(t)) = t order by order: a_1 b_n + (terms in b_1..b_{n-1}) = 0.
    const auto k = static_cast<unsigned>(phi.order());
    const TruncatedSeries outer = as_series(phi);
    TruncatedSeries inner(k);
    inner[1] = Polynomial(lead.inverse());
    for (unsigned n = 2; n <= k; ++n) {
        const Polynomial known = outer.compose(inner)[n];
        inner[n] = -known / lead;
    }
    return from_series(inner);
}

JetPoint act_reparam(const JetPoint& jet, const ReparamJet& phi) {
    const JetSpec& spec = jet.spec();
    if (phi.order() != spec.order()) throw UsageError("jet and reparametrization orders differ");
    const TruncatedSeries inner = as_series(phi);
    std::vector<TruncatedSeries> composed;
    for (int j = 1; j <= spec.rank(); ++j) composed.push_back(component_series(jet, j).compose(inner));
    return JetPoint(spec, jet.base(), derivatives_of(composed, spec.rank(), spec.order()));
}

JetPoint act_target(const JetPoint& jet, const TargetMap& psi) {
    const JetSpec& spec = jet.spec();
    if (psi.rank() != spec.rank()) throw UsageError("target map rank differs from jet rank");
    std::vector<TruncatedSeries> args;
    for (int l = 1; l <= spec.rank(); ++l) {
        TruncatedSeries s = component_series(jet, l);
        s[0] = jet.base()[static_cast<std::size_t>(l - 1)];
        args.push_back(std::move(s));
    }
    std::vector<TruncatedSeries> images;
    std::vector<Polynomial> new_base;
    for (const auto& c : psi.components()) {
        images.push_back(evaluate_at_series(c, args));
        new_base.push_back(images.back()[0]);
    }
    return JetPoint(spec, std::move(new_base), derivatives_of(images, spec.rank(), spec.order()));
}

}  // namespace jetdiff
