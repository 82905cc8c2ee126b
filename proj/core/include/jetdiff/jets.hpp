#pragma once

#include <string>
#include <vector>

#include "jetdiff/matrix.hpp"
#include "jetdiff/polynomial.hpp"

namespace jetdiff {

/// Rank r of the directed bundle and jet order k.
class JetSpec {
public:
    static constexpr int kMaxRank = 4;
    static constexpr int kMaxOrder = 4;

    /// Throws UsageError if r < 1 or k < 1, or if r > 4 or k > 4 without
    /// allow_large.
    JetSpec(int rank, int order, bool allow_large = false);

    int rank() const { return rank_; }
    int order() const { return order_; }

    /// f_j^(i) for 1 <= i <= k, 1 <= j <= r, in variable order.
    std::vector<Variable> jet_variables() const;

    friend bool operator==(const JetSpec&, const JetSpec&) = default;

private:
    int rank_;
    int order_;
};

/// k-jet of a reparametrization phi(t) = a_1 t + ... + a_k t^k.
///
/// Stores the coefficients a_i, so phi^(i)(0) = i! a_i. Coefficients may be
/// polynomials in formal group parameters.
class ReparamJet {
public:
    /// coefficients[0] is a_1. Throws MathError if a_1 is the zero constant.
    explicit ReparamJet(std::vector<Polynomial> coefficients);

    static ReparamJet identity(int order);
    /// phi = a1 t + a2 t^2 + ... with formal a_i. With unipotent, a_1 = 1.
    static ReparamJet formal(int order, bool unipotent);

    int order() const { return static_cast<int>(coeffs_.size()); }
    /// a_i, 1-based.
    const Polynomial& coefficient(int i) const { return coeffs_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<Polynomial>& coefficients() const { return coeffs_; }

    /// "t + t^2"
    std::string str() const;

    friend bool operator==(const ReparamJet&, const ReparamJet&) = default;

private:
    std::vector<Polynomial> coeffs_;
};

/// A point of J_k over a base point: f(0) and the raw derivatives
/// f_j^(i)(0). Entries are polynomials so formal jets are allowed.
class JetPoint {
public:
    JetPoint(JetSpec spec, std::vector<Polynomial> base, std::vector<Polynomial> entries);

    /// Entries are the jet variables themselves, over the given base point.
    static JetPoint formal(const JetSpec& spec, std::vector<Polynomial> base);
    /// Formal entries over the zero base point.
    static JetPoint formal(const JetSpec& spec);

    const JetSpec& spec() const { return spec_; }
    const std::vector<Polynomial>& base() const { return base_; }
    /// f_j^(i)(0); order i in 1..k, component j in 1..r.
    const Polynomial& entry(int order, int component) const;
    const std::vector<Polynomial>& entries() const { return entries_; }

    /// Substitution sending each jet variable f_j^(i) to this point's entry.
    Bindings as_bindings() const;

    friend bool operator==(const JetPoint&, const JetPoint&) = default;

private:
    JetSpec spec_;
    std::vector<Polynomial> base_;
    std::vector<Polynomial> entries_;  // index (i-1)*r + (j-1)
};

/// Polynomial map w_j = psi_j(z_1..z_r) between charts.
///
/// Components are kept exactly. Only derivatives up to the jet order at the
/// base point are ever read, so taylor_truncation(x, k) is interchangeable
/// with the full map for order-k jets over x.
class TargetMap {
public:
    explicit TargetMap(std::vector<Polynomial> components);

    static TargetMap identity(int rank);
    static TargetMap linear(const RationalMatrix& g);

    int rank() const { return static_cast<int>(components_.size()); }
    const std::vector<Polynomial>& components() const { return components_; }
    const Polynomial& component(int j) const { return components_.at(static_cast<std::size_t>(j - 1)); }

    std::vector<Rational> evaluate(const std::vector<Rational>& point) const;
    /// d psi_j / d z_l at point; row j, column l.
    RationalMatrix jacobian_at(const std::vector<Rational>& point) const;
    bool is_singular_at(const std::vector<Rational>& point) const;
    /// True when every component has degree <= 1.
    bool is_affine() const;

    /// (this o inner)(z) = this(inner(z)), exact.
    TargetMap compose(const TargetMap& inner) const;
    /// Taylor polynomial of total degree <= degree about point.
    TargetMap taylor_truncation(const std::vector<Rational>& point, unsigned degree) const;

    /// "w1 = z1; w2 = z2 + z1^2"
    std::string str() const;

    friend bool operator==(const TargetMap&, const TargetMap&) = default;

private:
    std::vector<Polynomial> components_;
};

/// phi(psi(t)) truncated after t^k.
ReparamJet compose_reparam(const ReparamJet& phi, const ReparamJet& psi);

/// Two-sided inverse in G_k. Requires a_1 to be a nonzero constant.
ReparamJet invert_reparam(const ReparamJet& phi);

/// f o phi, by truncated series composition.
JetPoint act_reparam(const JetPoint& jet, const ReparamJet& phi);

/// psi o f. The base point moves to psi(f(0)). A singular Jacobian is not
/// an error here; callers that need invertibility check is_singular_at.
JetPoint act_target(const JetPoint& jet, const TargetMap& psi);

}  // namespace jetdiff
