#include "jetdiff/linalg.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "jetdiff/error.hpp"

namespace jetdiff {

namespace {

using SparseRow = std::map<std::size_t, Rational>;

std::vector<SparseRow> to_rows(const RationalMatrix& m) {
    std::vector<SparseRow> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (const auto& [c, v] : m.row_entries(r)) rows[r].emplace(c, v);
    }
    return rows;
}

// row_a -= factor * row_b
void axpy(SparseRow& row_a, const SparseRow& row_b, const Rational& factor) {
    for (const auto& [c, v] : row_b) {
        auto [it, inserted] = row_a.try_emplace(c, -(factor * v));
        if (!inserted) {
            it->second -= factor * v;
            if (it->second.is_zero()) row_a.erase(it);
        }
    }
}

}  // namespace

RrefResult rref_with_pivots(const RationalMatrix& m) {
    std::vector<SparseRow> rows = to_rows(m);
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t col = 0; col < m.cols() && next < rows.size(); ++col) {
        // Sparsest candidate keeps fill-in down; the RREF is unique anyway.
        std::size_t best = rows.size();
        for (std::size_t r = next; r < rows.size(); ++r) {
            if (rows[r].count(col) && (best == rows.size() || rows[r].size() < rows[best].size())) best = r;
        }
        if (best == rows.size()) continue;
        std::swap(rows[next], rows[best]);
        const Rational scale = rows[next].at(col).inverse();
        for (auto& [c, v] : rows[next]) v *= scale;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == next) continue;
            auto it = rows[r].find(col);
            if (it == rows[r].end()) continue;
            const Rational factor = it->second;
            axpy(rows[r], rows[next], factor);
        }
        pivots.push_back(col);
        ++next;
    }

    RationalMatrix reduced(m.rows(), m.cols());
    for (std::size_t r = 0; r < next; ++r) {
        for (const auto& [c, v] : rows[r]) reduced.set(r, c, v);
    }
    return {std::move(reduced), std::move(pivots)};
}

RationalMatrix rref(const RationalMatrix& m) { return rref_with_pivots(m).reduced; }

std::size_t rank(const RationalMatrix& m) { return rref_with_pivots(m).pivot_columns.size(); }

RationalVector canonicalize(RationalVector v) {
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    const Rational* leading = nullptr;
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        if (!leading) leading = &x;
        num_gcd = gcd(num_gcd, x.numerator());
        den_lcm = lcm(den_lcm, x.denominator());
    }
    if (!leading) return v;
    Rational scale(den_lcm, num_gcd);
    if (leading->sign() < 0) scale = -scale;
    for (auto& x : v) x *= scale;
    return v;
}

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
    const auto [reduced, pivots] = rref_with_pivots(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(m.cols());
        v[free] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -reduced.at(r, free);
        basis.push_back(canonicalize(std::move(v)));
    }
    return basis;
}

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t result = 1;
    base %= p;
    while (exp > 0) {
        if (exp & 1U) result = result * base % p;
        base = base * base % p;
        exp >>= 1U;
    }
    return result;
}

// Reduces q mod p; nullopt when p divides the denominator.
std::optional<std::uint64_t> reduce(const Rational& q, std::uint64_t p) {
    const std::uint64_t den = mpz_fdiv_ui(q.denominator().get_mpz_t(), p);
    if (den == 0) return std::nullopt;
    const std::uint64_t num = mpz_fdiv_ui(q.numerator().get_mpz_t(), p);
    return num * pow_mod(den, p - 2, p) % p;
}

std::optional<std::size_t> rank_mod_p(const RationalMatrix& m, std::uint64_t p) {
    std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (const auto& [c, v] : m.row_entries(r)) {
            auto x = reduce(v, p);
            if (!x) return std::nullopt;
            a[r][c] = *x;
        }
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < a.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
        if (pivot == a.size()) continue;
        std::swap(a[rank], a[pivot]);
        const std::uint64_t inv = pow_mod(a[rank][col], p - 2, p);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (a[r][col] == 0) continue;
            const std::uint64_t factor = a[r][col] * inv % p;
            for (std::size_t c = col; c < m.cols(); ++c) {
                a[r][c] = (a[r][c] + (p - factor) * a[rank][c]) % p;
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

ModularRankReport modular_rank(const RationalMatrix& m, std::span<const std::uint64_t> primes,
                               std::size_t wanted_successes) {
    ModularRankReport report;
    for (std::uint64_t p : primes) {
        if (report.primes_used.size() >= wanted_successes) break;
        if (p < 2 || p >= (std::uint64_t{1} << 32)) throw UsageError("modular rank needs primes below 2^32");
        auto r = rank_mod_p(m, p);
        if (!r) {
            report.failed_primes.push_back(p);
            continue;
        }
        report.primes_used.push_back(p);
        report.rank = std::max(report.rank, *r);
    }
    if (report.primes_used.empty()) throw InternalError("modular rank: every prime divided a denominator");
    return report;
}

std::span<const std::uint64_t> default_primes() {
    static const std::array<std::uint64_t, 8> primes = [] {
        std::array<std::uint64_t, 8> out{};
        mpz_class candidate = (mpz_class(1) << 31) - 4000000;
        for (auto& p : out) {
            mpz_nextprime(candidate.get_mpz_t(), candidate.get_mpz_t());
            p = candidate.get_ui();
            candidate += 500000;
        }
        return out;
    }();
    return primes;
}

std::size_t rank_modular_check(const RationalMatrix& m) { return modular_rank(m, default_primes()).rank; }

std::size_t checked_rank(const RationalMatrix& m) {
    const std::size_t exact = rank(m);
    const std::size_t modular = rank_modular_check(m);
    if (exact != modular) {
        throw InternalError("rank mismatch: exact " + std::to_string(exact) + " vs modular " + std::to_string(modular));
    }
    return exact;
}

std::optional<RationalVector> solve_in_span(const std::vector<RationalVector>& vectors, const RationalVector& target) {
    const std::size_t n = target.size();
    const std::size_t k = vectors.size();
    RationalMatrix augmented(n, k + 1);
    for (std::size_t j = 0; j < k; ++j) {
        if (vectors[j].size() != n) throw UsageError("solve_in_span: dimension mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            if (!vectors[j][i].is_zero()) augmented.set(i, j, vectors[j][i]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!target[i].is_zero()) augmented.set(i, k, target[i]);
    }
    const auto [reduced, pivots] = rref_with_pivots(augmented);
    if (!pivots.empty() && pivots.back() == k) return std::nullopt;
    if (pivots.size() != k) throw UsageError("solve_in_span: vectors are linearly dependent");
    RationalVector coeffs(k);
    for (std::size_t r = 0; r < pivots.size(); ++r) coeffs[pivots[r]] = reduced.at(r, k);
    return coeffs;
}

RationalMatrix inverse(const RationalMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw MathError("inverse of non-square matrix");
    RationalMatrix augmented(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (const auto& [c, v] : m.row_entries(r)) augmented.set(r, c, v);
        augmented.set(r, n + r, Rational(1));
    }
    const auto [reduced, pivots] = rref_with_pivots(augmented);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw MathError("matrix is singular");
    RationalMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) out.set(r, c, reduced.at(r, n + c));
    }
    return out;
}

Rational determinant(const RationalMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw MathError("determinant of non-square matrix");
    std::vector<RationalVector> a(n);
    for (std::size_t r = 0; r < n; ++r) a[r] = m.row(r);
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            const Rational factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

}  // namespace jetdiff
