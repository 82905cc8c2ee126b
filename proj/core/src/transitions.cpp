#include "jetdiff/transitions.hpp"

#include <set>

#include "jetdiff/error.hpp"
#include "jetdiff/linalg.hpp"
#include "jetdiff/parallel.hpp"

namespace jetdiff {

namespace {

std::vector<Polynomial> constants(const std::vector<Rational>& point) {
    return {point.begin(), point.end()};
}

// Columns of the matrix are the coordinates of images[j] in space.basis;
// the exact re-expansion is confirmed term by term.
RationalMatrix expand_in_basis(const InvariantSpace& space, const std::vector<Polynomial>& images) {
    const std::size_t n = space.dimension();
    RationalMatrix m(n, n);
    std::vector<RationalVector> columns(n);
    parallel_for(n, [&](std::size_t j) {
        auto coords = coordinates_in(space, images[j]);
        if (!coords) throw InternalError("image of " + space.basis[j].str() + " left the invariant space");
        Polynomial rebuilt;
        for (std::size_t i = 0; i < n; ++i) rebuilt += space.basis[i] * (*coords)[i];
        if (rebuilt != images[j]) throw InternalError("re-expansion does not reproduce the image");
        columns[j] = std::move(*coords);
    });
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!columns[j][i].is_zero()) m.set(i, j, columns[j][i]);
        }
    }
    return m;
}

}  // namespace

TransitionMatrix differential_transition(const InvariantSpace& space, const TargetMap& psi,
                                         const std::vector<Rational>& basepoint) {
    if (psi.rank() != space.spec.rank()) throw UsageError("map rank differs from space rank");
    if (basepoint.size() != static_cast<std::size_t>(psi.rank())) throw UsageError("basepoint has wrong dimension");
    if (psi.is_singular_at(basepoint)) throw MathError("Jacobian of the map is singular at the basepoint");

    const Bindings pulled = act_target(JetPoint::formal(space.spec, constants(basepoint)), psi).as_bindings();
    std::vector<Polynomial> images(space.dimension());
    parallel_for(images.size(), [&](std::size_t j) { images[j] = substitute(space.basis[j], pulled); });
    return {space, expand_in_basis(space, images), basepoint, psi};
}

TransitionMatrix associated_action(const RationalMatrix& g, const InvariantSpace& space) {
    const int r = space.spec.rank();
    if (g.rows() != static_cast<std::size_t>(r) || g.cols() != static_cast<std::size_t>(r)) {
        throw UsageError("structure-group element has wrong size");
    }
    if (determinant(g).is_zero()) throw MathError("structure-group element is singular");

    Bindings action;
    for (int i = 1; i <= space.spec.order(); ++i) {
        for (int j = 1; j <= r; ++j) {
            Polynomial image;
            for (const auto& [l, v] : g.row_entries(static_cast<std::size_t>(j - 1))) {
                image += Polynomial(Monomial(Variable::jet(i, static_cast<int>(l) + 1)), v);
            }
            action.emplace(Variable::jet(i, j), std::move(image));
        }
    }
    std::vector<Polynomial> images(space.dimension());
    parallel_for(images.size(), [&](std::size_t j) { images[j] = substitute(space.basis[j], action); });
    return {space, expand_in_basis(space, images), std::vector<Rational>(static_cast<std::size_t>(r)),
            TargetMap::linear(g)};
}

SplittingVerdict splitting_check(const TransitionMatrix& m, const std::vector<IsotypicBlock>& partition) {
    const std::size_t n = m.matrix.rows();
    std::vector<int> block_of(n, -1);
    for (std::size_t b = 0; b < partition.size(); ++b) {
        for (auto i : partition[b].indices) {
            if (i >= n || block_of[i] != -1) throw UsageError("partition repeats or exceeds basis indices");
            block_of[i] = static_cast<int>(b);
        }
    }
    for (int b : block_of) {
        if (b < 0) throw UsageError("partition does not cover the basis");
    }

    SplittingVerdict verdict;
    verdict.partition = partition;
    verdict.zero_blocks.assign(partition.size(), std::vector<bool>(partition.size(), true));
    for (std::size_t row = 0; row < n; ++row) {
        for (const auto& [col, value] : m.matrix.row_entries(row)) {
            const auto a = static_cast<std::size_t>(block_of[row]);
            const auto b = static_cast<std::size_t>(block_of[col]);
            verdict.zero_blocks[a][b] = false;
            if (a != b) {
                verdict.splits = false;
                verdict.witnesses.push_back({row, col, value});
            }
        }
    }
    return verdict;
}

ClosureVerdict s_block_closure(const InvariantSpace& space, const TargetMap& psi, const std::vector<Rational>& basepoint) {
    const TransitionMatrix t = differential_transition(space, psi, basepoint);
    auto first_order_only = [](const Polynomial& p) {
        for (Variable v : p.variables()) {
            if (v.kind() != Variable::Kind::Jet || v.order() != 1) return false;
        }
        return true;
    };

    ClosureVerdict verdict;
    std::set<std::size_t> s_rows;
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        if (first_order_only(space.basis[i])) {
            verdict.first_order_indices.push_back(i);
            s_rows.insert(i);
        }
    }
    for (auto j : verdict.first_order_indices) {
        Polynomial image;
        for (std::size_t i = 0; i < space.dimension(); ++i) image += space.basis[i] * t.matrix.at(i, j);
        if (!first_order_only(image)) {
            verdict.closed = false;
            verdict.offending.push_back(j);
        }
    }
    for (std::size_t j = 0; j < space.dimension(); ++j) {
        if (s_rows.count(j)) continue;
        for (auto i : s_rows) {
            if (!t.matrix.at(i, j).is_zero()) verdict.complement_leaks = true;
        }
    }
    return verdict;
}

V1Transition v1_frame_transition(const TargetMap& psi, const std::vector<Rational>& z, const Rational& slope) {
    if (psi.rank() != 2) throw UsageError("the V1 frame transition is implemented for rank 2");
    if (z.size() != 2) throw UsageError("basepoint has wrong dimension");
    if (psi.is_singular_at(z)) throw MathError("Jacobian of the map is singular at the basepoint");

    const Bindings at_z{{Variable::base(1), Polynomial(z[0])}, {Variable::base(2), Polynomial(z[1])}};
    const Variable z1 = Variable::base(1);
    const Variable z2 = Variable::base(2);
    auto value = [&](const Polynomial& p) { return substitute(p, at_z).constant_term(); };

    // Directional first and second derivatives along the horizontal lift (1, xi).
    auto along = [&](const Polynomial& p) { return p.derivative(z1) + p.derivative(z2) * slope; };
    const Polynomial& psi1 = psi.component(1);
    const Polynomial& psi2 = psi.component(2);
    const Rational denom = value(along(psi1));
    const Rational numer = value(along(psi2));
    if (denom.is_zero()) throw MathError("image direction leaves the chart v1 != 0");
    const Rational second_denom = value(along(along(psi1)));
    const Rational second_numer = value(along(along(psi2)));
    const Rational det = determinant(psi.jacobian_at(z));

    V1Transition out;
    out.matrix = RationalMatrix(2, 2);
    out.matrix.set(0, 0, det / (denom * denom));
    const Rational vertical = (second_numer * denom - numer * second_denom) / (denom * denom);
    out.matrix.set(0, 1, vertical);
    out.matrix.set(1, 1, denom);
    out.second_derivatives_involved = !vertical.is_zero();
    out.target_point = psi.evaluate(z);
    out.target_slope = numer / denom;
    return out;
}

Rational theta_lower_bound(int degree, int weight) {
    if (weight < 3 || weight > 5) throw UsageError("the bound is stated for m in {3, 4, 5}");
    if (degree == 4) throw MathError("pole at d = 4");
    if (degree < 5) throw UsageError("degree must be >= 5");
    const Rational m(weight);
    return Rational(-1) / (Rational(2) * m) + (Rational(2) - Rational(7) / (Rational(2) * m)) / Rational(degree - 4);
}

std::vector<ThetaAuditRow> contradiction_audit(int d_min, int d_max, int weight, const Rational& upper_bound) {
    if (d_min < 6) throw UsageError("the bound applies to generic surfaces of degree d >= 6");
    if (d_max < d_min) throw UsageError("empty degree range");
    std::vector<ThetaAuditRow> rows;
    for (int d = d_min; d <= d_max; ++d) {
        const Rational lower = theta_lower_bound(d, weight);
        rows.push_back({d, weight, lower, upper_bound, lower > upper_bound});
    }
    return rows;
}

}  // namespace jetdiff
