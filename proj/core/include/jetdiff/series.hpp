#pragma once

#include <vector>

#include "jetdiff/polynomial.hpp"

namespace jetdiff {

/// Power series in t with polynomial coefficients, truncated after t^order.
class TruncatedSeries {
public:
    explicit TruncatedSeries(unsigned order) : coeffs_(order + 1) {}
    TruncatedSeries(unsigned order, std::vector<Polynomial> coeffs);

    unsigned order() const { return static_cast<unsigned>(coeffs_.size() - 1); }
    const Polynomial& operator[](unsigned i) const { return coeffs_.at(i); }
    Polynomial& operator[](unsigned i) { return coeffs_.at(i); }
    const std::vector<Polynomial>& coefficients() const { return coeffs_; }

    TruncatedSeries& operator+=(const TruncatedSeries& rhs);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries& operator*=(const Polynomial& scalar);

    /// this(inner(t)); inner must have zero constant term.
    TruncatedSeries compose(const TruncatedSeries& inner) const;

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::vector<Polynomial> coeffs_;
};

/// Evaluates a polynomial in base coordinates z_1..z_n at series arguments.
TruncatedSeries evaluate_at_series(const Polynomial& p, const std::vector<TruncatedSeries>& args);

}  // namespace jetdiff
