#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jetdiff/matrix.hpp"

namespace jetdiff {

struct RrefResult {
    RationalMatrix reduced;
    std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form by exact Gauss-Jordan elimination. Nonzero rows
/// come first, every pivot is 1, zero rows are kept so the shape matches M.
RrefResult rref_with_pivots(const RationalMatrix& m);
RationalMatrix rref(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

/// Basis of {v : Mv = 0}, one vector per free column of the RREF, in free
/// column order. Each vector is scaled to coprime integers with a positive
/// leading entry.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

/// Coprime-integer rescaling with positive leading entry. Zero stays zero.
RationalVector canonicalize(RationalVector v);

struct ModularRankReport {
    std::size_t rank = 0;
    std::vector<std::uint64_t> primes_used;
    /// Primes rejected because they divide some entry's denominator.
    std::vector<std::uint64_t> failed_primes;
};

/// Rank over Z/p for each prime, never touching the rational elimination
/// code. The reported rank is the maximum over primes that succeeded; it
/// equals the rational rank unless every prime divides a minor, which the
/// caller can rule out with several large primes.
ModularRankReport modular_rank(const RationalMatrix& m, std::span<const std::uint64_t> primes,
                               std::size_t wanted_successes = 3);

/// Primes just below 2^31 used by rank_modular_check.
std::span<const std::uint64_t> default_primes();

std::size_t rank_modular_check(const RationalMatrix& m);

/// Exact rank confirmed by the modular route; throws InternalError if the
/// two disagree.
std::size_t checked_rank(const RationalMatrix& m);

/// Coefficients c with sum_j c_j * vectors[j] == target, or nullopt when
/// target is outside the span. `vectors` must be linearly independent.
std::optional<RationalVector> solve_in_span(const std::vector<RationalVector>& vectors, const RationalVector& target);

/// Throws MathError if m is singular or not square.
RationalMatrix inverse(const RationalMatrix& m);
Rational determinant(const RationalMatrix& m);

}  // namespace jetdiff
