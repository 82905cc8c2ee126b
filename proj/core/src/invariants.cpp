#include "jetdiff/invariants.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "jetdiff/error.hpp"
#include "jetdiff/linalg.hpp"
#include "jetdiff/parallel.hpp"

namespace jetdiff {

int weighted_degree(const Monomial& m) {
    int w = 0;
    for (const auto& [v, e] : m.factors()) {
        if (v.kind() == Variable::Kind::Jet) w += v.order() * static_cast<int>(e);
    }
    return w;
}

namespace {

void enumerate_rec(const std::vector<Variable>& vars, std::size_t idx, int remaining,
                   std::vector<Monomial::Factor>& current, std::vector<Monomial>& out) {
    if (remaining == 0) {
        out.emplace_back(current);
        return;
    }
    if (idx == vars.size()) return;
    const Variable v = vars[idx];
    for (int e = remaining / v.order(); e >= 0; --e) {
        if (e > 0) current.emplace_back(v, static_cast<unsigned>(e));
        enumerate_rec(vars, idx + 1, remaining - e * v.order(), current, out);
        if (e > 0) current.pop_back();
    }
}

std::set<Variable> group_variables(int order) {
    std::set<Variable> out;
    for (int i = 1; i <= order; ++i) out.insert(Variable::group(i));
    return out;
}

RationalVector to_coordinates(const Polynomial& p, const std::map<Monomial, std::size_t, GradedLexGreater>& index,
                              std::size_t size) {
    RationalVector v(size);
    for (const auto& [m, c] : p.terms()) {
        auto it = index.find(m);
        if (it == index.end()) throw InternalError("polynomial term " + m.str() + " outside the weight space");
        v[it->second] = c;
    }
    return v;
}

std::map<Monomial, std::size_t, GradedLexGreater> monomial_index(const std::vector<Monomial>& monomials) {
    std::map<Monomial, std::size_t, GradedLexGreater> index;
    for (std::size_t i = 0; i < monomials.size(); ++i) index.emplace(monomials[i], i);
    return index;
}

Polynomial from_coordinates(const RationalVector& v, const std::vector<Monomial>& monomials) {
    Polynomial p;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_zero()) p += Polynomial(monomials[i], v[i]);
    }
    return p;
}

}  // namespace

std::vector<Monomial> enumerate_monomials(const JetSpec& spec, int weight) {
    if (weight < 0) throw UsageError("weight must be >= 0");
    std::vector<Variable> vars;
    for (Variable v : spec.jet_variables()) {
        if (v.order() <= weight) vars.push_back(v);
    }
    std::vector<Monomial> out;
    std::vector<Monomial::Factor> current;
    enumerate_rec(vars, 0, weight, current, out);
    std::sort(out.begin(), out.end(), GradedLexGreater{});
    return out;
}

ConstraintSystem invariance_system(const JetSpec& spec, int weight) {
    if (weight < 1) throw UsageError("invariance system needs weight >= 1");
    ConstraintSystem sys;
    sys.columns = enumerate_monomials(spec, weight);

    const Bindings action = act_reparam(JetPoint::formal(spec), ReparamJet::formal(spec.order(), true)).as_bindings();
    const std::set<Variable> params = group_variables(spec.order());

    // Row key: (group-parameter monomial, jet monomial).
    using RowKey = std::pair<Monomial, Monomial>;
    struct RowKeyLess {
        bool operator()(const RowKey& a, const RowKey& b) const {
            GradedLexGreater g;
            if (g(a.first, b.first)) return true;
            if (g(b.first, a.first)) return false;
            return g(a.second, b.second);
        }
    };

    std::vector<std::vector<std::pair<RowKey, Rational>>> per_column(sys.columns.size());
    parallel_for(sys.columns.size(), [&](std::size_t col) {
        const Polynomial mono(sys.columns[col]);
        const Polynomial diff = substitute(mono, action) - mono;
        for (const auto& [group_mono, coeff] : collect(diff, params)) {
            for (const auto& [jet_mono, value] : coeff.terms()) per_column[col].push_back({{group_mono, jet_mono}, value});
        }
    });

    std::map<RowKey, std::vector<std::pair<std::size_t, Rational>>, RowKeyLess> rows;
    for (std::size_t col = 0; col < per_column.size(); ++col) {
        for (auto& [key, value] : per_column[col]) rows[key].emplace_back(col, std::move(value));
    }

    sys.matrix = RationalMatrix(rows.size(), sys.columns.size());
    std::size_t r = 0;
    for (const auto& [key, entries] : rows) {
        for (const auto& [col, value] : entries) sys.matrix.set(r, col, value);
        ++r;
    }
    return sys;
}

InvariantSpace invariant_basis(const JetSpec& spec, int weight) {
    InvariantSpace space{spec, weight, {}, {}, 0, 0, 0, {}};
    if (weight == 0) {
        space.monomials = {Monomial()};
        space.basis = {Polynomial(1)};
        space.constraint_cols = 1;
        space.weights = {std::vector<int>(static_cast<std::size_t>(spec.rank()), 0)};
        return space;
    }
    ConstraintSystem sys = invariance_system(spec, weight);
    space.monomials = std::move(sys.columns);
    space.constraint_rows = sys.matrix.rows();
    space.constraint_cols = sys.matrix.cols();
    space.constraint_rank = checked_rank(sys.matrix);

    const auto kernel = nullspace(sys.matrix);
    if (kernel.size() + space.constraint_rank != space.constraint_cols) throw InternalError("rank-nullity violated");
    for (const auto& v : kernel) space.basis.push_back(from_coordinates(v, space.monomials));

    std::vector<InvarianceVerdict> verdicts(space.basis.size());
    parallel_for(space.basis.size(), [&](std::size_t i) { verdicts[i] = verify_invariance(space.basis[i], spec); });
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        if (verdicts[i].status != InvarianceVerdict::Status::Invariant || verdicts[i].weight != weight) {
            throw InternalError("basis element " + space.basis[i].str() + " failed the invariance check");
        }
    }
    space.weights = torus_weights(space);
    return space;
}

InvariantSpace rebase(const InvariantSpace& space, std::vector<Polynomial> basis) {
    if (basis.size() != space.dimension()) throw InternalError("rebase: dimension mismatch");
    for (const auto& p : basis) {
        if (!coordinates_in(space, p)) throw InternalError("rebase: " + p.str() + " lies outside the space");
    }
    const auto index = monomial_index(space.monomials);
    std::vector<RationalVector> coords;
    for (const auto& p : basis) coords.push_back(to_coordinates(p, index, space.monomials.size()));
    if (rank(RationalMatrix::from_rows(coords)) != basis.size()) throw InternalError("rebase: vectors are dependent");
    InvariantSpace out = space;
    out.basis = std::move(basis);
    out.weights = torus_weights(out);
    return out;
}

std::optional<RationalVector> coordinates_in(const InvariantSpace& space, const Polynomial& p) {
    const auto index = monomial_index(space.monomials);
    for (const auto& [m, c] : p.terms()) {
        if (!index.count(m)) return std::nullopt;
    }
    std::vector<RationalVector> vectors;
    for (const auto& b : space.basis) vectors.push_back(to_coordinates(b, index, space.monomials.size()));
    return solve_in_span(vectors, to_coordinates(p, index, space.monomials.size()));
}

InvarianceVerdict verify_invariance(const Polynomial& q, const JetSpec& spec) {
    for (Variable v : q.variables()) {
        if (v.kind() != Variable::Kind::Jet || v.order() > spec.order() || v.index() > spec.rank()) {
            throw UsageError("verify_invariance: " + v.name() + " is not a jet variable of this spec");
        }
    }
    InvarianceVerdict verdict;
    std::set<int, std::greater<>> weights;
    for (const auto& [m, c] : q.terms()) weights.insert(weighted_degree(m));
    if (weights.size() > 1) {
        verdict.status = InvarianceVerdict::Status::MixedWeights;
        verdict.weights.assign(weights.begin(), weights.end());
        return verdict;
    }
    verdict.weight = weights.empty() ? 0 : *weights.begin();

    const Bindings action = act_reparam(JetPoint::formal(spec), ReparamJet::formal(spec.order(), false)).as_bindings();
    const Polynomial scale = Polynomial(Variable::group(1)).pow(static_cast<unsigned>(verdict.weight));
    verdict.residual = substitute(q, action) - scale * q;
    if (verdict.residual.is_zero()) return verdict;

    verdict.status = InvarianceVerdict::Status::NotInvariant;
    verdict.unipotent_residual = substitute(verdict.residual, {{Variable::group(1), Polynomial(1)}});
    return verdict;
}

std::vector<int> torus_weight(const Polynomial& q, int rank) {
    std::optional<std::vector<int>> weight;
    for (const auto& [m, c] : q.terms()) {
        std::vector<int> w(static_cast<std::size_t>(rank), 0);
        for (const auto& [v, e] : m.factors()) {
            if (v.kind() != Variable::Kind::Jet || v.index() > rank) throw UsageError("torus weight of non-jet term");
            w[static_cast<std::size_t>(v.index() - 1)] += static_cast<int>(e);
        }
        if (weight && *weight != w) throw InternalError("polynomial " + q.str() + " is not torus-homogeneous");
        weight = std::move(w);
    }
    return weight.value_or(std::vector<int>(static_cast<std::size_t>(rank), 0));
}

std::vector<std::vector<int>> torus_weights(const InvariantSpace& space) {
    std::vector<std::vector<int>> out;
    for (const auto& b : space.basis) out.push_back(torus_weight(b, space.spec.rank()));
    return out;
}

Polynomial raising_action(const Polynomial& q, int from, int to) {
    if (from == to || from < 1 || to < 1) throw UsageError("raising_action needs distinct components >= 1");
    Polynomial out;
    for (Variable v : q.variables()) {
        if (v.kind() != Variable::Kind::Jet || v.index() != from) continue;
        out += Polynomial(Variable::jet(v.order(), to)) * q.derivative(v);
    }
    return out;
}

std::vector<HighestWeightVector> highest_weight_vectors(const InvariantSpace& space) {
    const int r = space.spec.rank();
    const auto index = monomial_index(space.monomials);
    std::map<std::vector<int>, std::vector<std::size_t>, std::greater<>> by_weight;
    for (std::size_t i = 0; i < space.basis.size(); ++i) by_weight[space.weights[i]].push_back(i);

    std::vector<HighestWeightVector> out;
    for (const auto& [weight, members] : by_weight) {
        // Columns: stacked images of each member under every simple raising.
        const std::size_t n = space.monomials.size();
        RationalMatrix images(n * static_cast<std::size_t>(std::max(r - 1, 0)), members.size());
        for (std::size_t c = 0; c < members.size(); ++c) {
            for (int j = 1; j < r; ++j) {
                const RationalVector v = to_coordinates(raising_action(space.basis[members[c]], j + 1, j), index, n);
                for (std::size_t i = 0; i < n; ++i) {
                    if (!v[i].is_zero()) images.set(static_cast<std::size_t>(j - 1) * n + i, c, v[i]);
                }
            }
        }
        for (const auto& kernel : nullspace(images)) {
            Polynomial hw;
            for (std::size_t c = 0; c < members.size(); ++c) hw += space.basis[members[c]] * kernel[c];
            out.push_back({weight, primitive_part(hw)});
        }
    }
    return out;
}

namespace {

void require_rank_two(const InvariantSpace& space) {
    if (space.spec.rank() != 2) throw UsageError("irreducible labeling is only supported for rank 2");
}

std::vector<IrrepLabel> labels_from(const std::vector<HighestWeightVector>& hws) {
    std::map<std::vector<int>, int, std::greater<>> counts;
    for (const auto& hw : hws) ++counts[hw.weight];
    std::vector<IrrepLabel> out;
    for (const auto& [weight, mult] : counts) out.push_back({weight, mult});
    return out;
}

}  // namespace

std::vector<IrrepLabel> decompose(const InvariantSpace& space) {
    require_rank_two(space);
    const auto hws = highest_weight_vectors(space);
    std::size_t total = 0;
    for (const auto& hw : hws) {
        if (hw.weight[0] < hw.weight[1]) throw InternalError("highest weight is not dominant");
        total += static_cast<std::size_t>(hw.weight[0] - hw.weight[1] + 1);
    }
    if (total != space.dimension()) {
        throw InternalError("Weyl dimension count " + std::to_string(total) + " != dimension " +
                            std::to_string(space.dimension()));
    }
    return labels_from(hws);
}

std::pair<InvariantSpace, std::vector<IsotypicBlock>> adapted_space(const InvariantSpace& space) {
    const auto labels = decompose(space);
    const auto hws = highest_weight_vectors(space);
    std::vector<Polynomial> basis;
    std::vector<IsotypicBlock> blocks;
    for (const auto& label : labels) {
        IsotypicBlock block{label, {}};
        for (const auto& hw : hws) {
            if (hw.weight != label.highest_weight) continue;
            Polynomial v = hw.vector;
            for (int s = 0; s <= hw.weight[0] - hw.weight[1]; ++s) {
                block.indices.push_back(basis.size());
                basis.push_back(primitive_part(v));
                v = raising_action(v, 1, 2);
            }
            if (!v.is_zero()) throw InternalError("lowering string did not terminate");
        }
        blocks.push_back(std::move(block));
    }
    return {rebase(space, std::move(basis)), std::move(blocks)};
}

std::optional<std::vector<IsotypicBlock>> isotypic_partition(const InvariantSpace& space) {
    const auto [adapted, adapted_blocks] = adapted_space(space);
    std::vector<IsotypicBlock> blocks;
    std::vector<InvariantSpace> components;
    for (const auto& b : adapted_blocks) {
        blocks.push_back({b.label, {}});
        InvariantSpace component = adapted;
        component.basis.clear();
        for (auto i : b.indices) component.basis.push_back(adapted.basis[i]);
        components.push_back(std::move(component));
    }
    for (std::size_t i = 0; i < space.basis.size(); ++i) {
        std::optional<std::size_t> home;
        for (std::size_t c = 0; c < components.size(); ++c) {
            if (coordinates_in(components[c], space.basis[i])) {
                home = c;
                break;
            }
        }
        if (!home) return std::nullopt;
        blocks[*home].indices.push_back(i);
    }
    return blocks;
}

}  // namespace jetdiff
