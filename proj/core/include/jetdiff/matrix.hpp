#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "jetdiff/rational.hpp"

namespace jetdiff {

using RationalVector = std::vector<Rational>;

/// Rational matrix. Stored densely up to kDenseLimit entries and as sparse
/// rows beyond; the storage choice is invisible to callers.
class RationalMatrix {
public:
    static constexpr std::size_t kDenseLimit = 10000;

    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    /// Row-major nested initializer; all rows must have equal length.
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_sparse() const { return std::holds_alternative<SparseRows>(storage_); }

    Rational at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Rational& value);

    RationalVector row(std::size_t r) const;
    RationalVector column(std::size_t c) const;
    /// Nonzero entries of row r as (column, value), columns ascending.
    std::vector<std::pair<std::size_t, Rational>> row_entries(std::size_t r) const;
    bool is_zero() const;

    RationalVector apply(const RationalVector& v) const;
    RationalMatrix transpose() const;
    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

    std::string str() const;

private:
    using Dense = std::vector<Rational>;
    using SparseRows = std::vector<std::map<std::size_t, Rational>>;

    void check(std::size_t r, std::size_t c) const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::variant<Dense, SparseRows> storage_;
};

}  // namespace jetdiff
