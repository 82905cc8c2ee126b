#pragma once

#include <string_view>
#include <vector>

#include "jetdiff/jets.hpp"
#include "jetdiff/matrix.hpp"
#include "jetdiff/polynomial.hpp"

namespace jetdiff {

// Grammar shared by all entry points:
//
//   expr    := ['+' | '-'] term { ('+' | '-') term }
//   term    := factor { ['*' | '/'] factor }      juxtaposition multiplies
//   factor  := '-' factor | primary ['^' integer]
//   primary := integer | identifier | '(' expr ')'
//
// Rational literals are written p/q. Identifiers: f<j> followed by i primes
// for f_j^(i), z<j> for base coordinates, a<i> for group parameters and t
// for the series parameter; which of these are legal depends on the entry
// point. Division is only allowed by nonzero constants. Errors are
// ParseError with 1-based line and column.

/// Jet polynomial over spec: jet variables f_j^(i) (j <= r, i <= k), base
/// coordinates z_j (j <= r) and group parameters a_i.
Polynomial parse_polynomial(std::string_view text, const JetSpec& spec);

/// "w1 = z1; w2 = z2 + z1^2". Statements are separated by ';' or newlines
/// and must define w1..w_rank exactly once.
TargetMap parse_map(std::string_view text, int rank);

/// "t + t^2", "2t - t^3": a polynomial in t with no constant term and
/// degree <= order.
ReparamJet parse_reparam(std::string_view text, int order);

/// "0,0" or "1/2, -3"
std::vector<Rational> parse_point(std::string_view text);

/// Rows separated by ';', entries by ',': "1,2;0,1".
RationalMatrix parse_matrix(std::string_view text);

}  // namespace jetdiff
