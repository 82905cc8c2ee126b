#include "jetdiff/series.hpp"

#include <map>

#include "jetdiff/error.hpp"

namespace jetdiff {

TruncatedSeries::TruncatedSeries(unsigned order, std::vector<Polynomial> coeffs) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1);
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
    if (rhs.order() != order()) throw UsageError("series order mismatch");
    for (unsigned i = 0; i <= order(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order()) throw UsageError("series order mismatch");
    TruncatedSeries out(a.order());
    for (unsigned i = 0; i <= a.order(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (unsigned j = 0; i + j <= a.order(); ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return out;
}

TruncatedSeries& TruncatedSeries::operator*=(const Polynomial& scalar) {
    for (auto& c : coeffs_) c *= scalar;
    return *this;
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& inner) const {
    if (inner.order() != order()) throw UsageError("series order mismatch");
    if (!inner[0].is_zero()) throw UsageError("inner series must vanish at t = 0");
    // Horner: c0 + inner*(c1 + inner*(c2 + ...))
    TruncatedSeries out(order());
    for (unsigned i = order() + 1; i-- > 0;) {
        out = out * inner;
        out.coeffs_[0] += coeffs_[i];
    }
    return out;
}

TruncatedSeries evaluate_at_series(const Polynomial& p, const std::vector<TruncatedSeries>& args) {
    if (args.empty()) throw UsageError("evaluate_at_series needs at least one argument");
    const unsigned order = args.front().order();
    std::map<std::pair<int, unsigned>, TruncatedSeries> powers;
    auto power_of = [&](int index, unsigned e) -> const TruncatedSeries& {
        auto key = std::make_pair(index, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        TruncatedSeries value(order);
        value[0] = Polynomial(1);
        for (unsigned i = 0; i < e; ++i) value = value * args.at(static_cast<std::size_t>(index - 1));
        return powers.emplace(key, std::move(value)).first->second;
    };

    TruncatedSeries out(order);
    for (const auto& [m, c] : p.terms()) {
        TruncatedSeries term(order);
        term[0] = Polynomial(c);
        for (const auto& [v, e] : m.factors()) {
            if (v.kind() != Variable::Kind::Base || static_cast<std::size_t>(v.index()) > args.size()) {
                throw UsageError("map component uses unknown variable " + v.name());
            }
            term = term * power_of(v.index(), e);
        }
        out += term;
    }
    return out;
}

}  // namespace jetdiff
