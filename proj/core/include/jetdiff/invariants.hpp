#pragma once

#include <optional>
#include <vector>

#include "jetdiff/jets.hpp"
#include "jetdiff/matrix.hpp"
#include "jetdiff/polynomial.hpp"

namespace jetdiff {

/// sum_i i * |alpha_i| over the jet variables of m.
int weighted_degree(const Monomial& m);

/// All monomials in f_j^(i) (i <= k, j <= r) of weighted degree m, in
/// descending graded-lex order. m = 0 gives the single monomial 1.
std::vector<Monomial> enumerate_monomials(const JetSpec& spec, int weight);

/// Linear conditions on coefficient vectors (one column per monomial) that
/// express invariance under the unipotent subgroup a_1 = 1. Rows are indexed
/// by (group-parameter monomial, jet monomial) in canonical order.
struct ConstraintSystem {
    std::vector<Monomial> columns;
    RationalMatrix matrix;
};

ConstraintSystem invariance_system(const JetSpec& spec, int weight);

/// A fiber of E_{k,m}: canonical basis plus the data it was derived from.
struct InvariantSpace {
    JetSpec spec;
    int weight = 0;
    /// Coordinate monomials of the ambient weight-m space.
    std::vector<Monomial> monomials;
    std::vector<Polynomial> basis;
    std::size_t constraint_rows = 0;
    std::size_t constraint_cols = 0;
    std::size_t constraint_rank = 0;
    /// Torus weight (d_1..d_r) of each basis element.
    std::vector<std::vector<int>> weights;

    std::size_t dimension() const { return basis.size(); }
};

/// Throws InternalError if any basis element fails verify_invariance.
InvariantSpace invariant_basis(const JetSpec& spec, int weight);

/// The same space presented in another basis. Throws InternalError unless
/// `basis` is a basis of the span of space.basis.
InvariantSpace rebase(const InvariantSpace& space, std::vector<Polynomial> basis);

/// Coordinates of p in space.basis, or nullopt when p lies outside the span.
std::optional<RationalVector> coordinates_in(const InvariantSpace& space, const Polynomial& p);

struct InvarianceVerdict {
    enum class Status { Invariant, NotInvariant, MixedWeights };
    Status status = Status::Invariant;
    int weight = 0;
    /// Q(f o phi) - a1^m Q(f) with formal a_1..a_k.
    Polynomial residual;
    /// residual at a_1 = 1.
    Polynomial unipotent_residual;
    /// Distinct weighted degrees, descending, when status is MixedWeights.
    std::vector<int> weights;
};

/// Substitutes the fully formal action of G_k. Throws UsageError if Q uses
/// anything but jet variables of spec.
InvarianceVerdict verify_invariance(const Polynomial& q, const JetSpec& spec);

/// Degree of q in each component; throws InternalError if q is not
/// homogeneous under the diagonal torus.
std::vector<int> torus_weight(const Polynomial& q, int rank);
std::vector<std::vector<int>> torus_weights(const InvariantSpace& space);

/// Derivation sum_i f_to^(i) * dQ/df_from^(i). With from > to this raises
/// the weight toward lower component index and kills highest-weight vectors.
Polynomial raising_action(const Polynomial& q, int from, int to);

struct IrrepLabel {
    std::vector<int> highest_weight;
    int multiplicity = 0;

    friend bool operator==(const IrrepLabel&, const IrrepLabel&) = default;
};

struct HighestWeightVector {
    std::vector<int> weight;
    Polynomial vector;
};

/// Joint kernel of the raising operators f_{j+1} -> f_j, per torus weight.
std::vector<HighestWeightVector> highest_weight_vectors(const InvariantSpace& space);

/// GL(2) decomposition. Throws UsageError for r != 2 and InternalError if
/// the Weyl dimension count does not match.
std::vector<IrrepLabel> decompose(const InvariantSpace& space);

struct IsotypicBlock {
    IrrepLabel label;
    /// Basis indices belonging to this block.
    std::vector<std::size_t> indices;
};

/// Assigns each basis element to an isotypic component, or nullopt when some
/// element straddles components (r = 2 only).
std::optional<std::vector<IsotypicBlock>> isotypic_partition(const InvariantSpace& space);

/// A basis of lowering strings from each highest-weight vector, grouped by
/// label, together with its partition (r = 2 only).
std::pair<InvariantSpace, std::vector<IsotypicBlock>> adapted_space(const InvariantSpace& space);

}  // namespace jetdiff
