#pragma once

#include <optional>
#include <vector>

#include "jetdiff/invariants.hpp"
#include "jetdiff/jets.hpp"
#include "jetdiff/matrix.hpp"

namespace jetdiff {

/// Matrix of Q -> Q o psi_* on a fiber, where (Q o psi_*)(f) = Q(psi o f).
///
/// Column j holds the coordinates, in space.basis, of the image of basis
/// element j. Because this is a pullback, composites reverse:
///   M(psi2 o psi1, x) = M(psi1, x) * M(psi2, psi1(x)).
struct TransitionMatrix {
    InvariantSpace space;
    RationalMatrix matrix;
    std::vector<Rational> basepoint;
    TargetMap psi;
};

/// Throws MathError if the Jacobian of psi at x is singular and
/// InternalError if some image leaves the span of the basis.
TransitionMatrix differential_transition(const InvariantSpace& space, const TargetMap& psi,
                                         const std::vector<Rational>& basepoint);

/// Structure-group action of g on the fiber: every derivative block f^(i)
/// is replaced by g f^(i). Throws MathError for singular g.
TransitionMatrix associated_action(const RationalMatrix& g, const InvariantSpace& space);

struct SplittingWitness {
    std::size_t row = 0;
    std::size_t column = 0;
    Rational value;
};

struct SplittingVerdict {
    std::vector<IsotypicBlock> partition;
    /// zero_blocks[a][b]: the (row block a, column block b) block is zero.
    std::vector<std::vector<bool>> zero_blocks;
    bool splits = true;
    std::vector<SplittingWitness> witnesses;
};

/// Exact zero test of every off-diagonal block. Throws UsageError if the
/// partition does not cover each basis index exactly once.
SplittingVerdict splitting_check(const TransitionMatrix& m, const std::vector<IsotypicBlock>& partition);

/// Whether the span of pure first-derivative basis elements (S^m) is
/// carried into itself, and whether the complement leaks into it.
struct ClosureVerdict {
    std::vector<std::size_t> first_order_indices;
    bool closed = true;
    /// Images of S^m elements that picked up higher derivatives.
    std::vector<std::size_t> offending;
    /// Some complement column has a nonzero entry in an S^m row.
    bool complement_leaks = false;
};

ClosureVerdict s_block_closure(const InvariantSpace& space, const TargetMap& psi, const std::vector<Rational>& basepoint);

/// Transition of the frame {e1 = d/dxi, e2 = d/dz1 + xi d/dz2} of V_1 on
/// P(T_X) in the chart v1 != 0 with slope xi = v2/v1 (rank 2 only).
struct V1Transition {
    /// Columns are the images of e1, e2 in the target frame {e1', e2'}.
    RationalMatrix matrix;
    /// Set iff the second-derivative term (the e1'-component of the image
    /// of e2) is nonzero.
    bool second_derivatives_involved = false;
    std::vector<Rational> target_point;
    Rational target_slope;
};

/// Throws MathError for a singular Jacobian or when the image direction
/// leaves the chart (vanishing first component).
V1Transition v1_frame_transition(const TargetMap& psi, const std::vector<Rational>& z, const Rational& slope);

/// -1/(2m) + (2 - 7/(2m)) / (d - 4). Throws MathError at the pole d = 4 and
/// UsageError for d < 5 or m outside {3, 4, 5}.
Rational theta_lower_bound(int degree, int weight);

struct ThetaAuditRow {
    int degree = 0;
    int weight = 0;
    Rational lower_bound;
    Rational upper_bound;
    bool contradiction = false;
};

/// One row per degree in [d_min, d_max]; a row is a contradiction when the
/// lower bound exceeds upper_bound. Throws UsageError for d_min < 6.
std::vector<ThetaAuditRow> contradiction_audit(int d_min, int d_max, int weight,
                                               const Rational& upper_bound = Rational(-1, 3));

}  // namespace jetdiff
