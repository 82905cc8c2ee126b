#include "jetdiff/matrix.hpp"

#include <sstream>

#include "jetdiff/error.hpp"

namespace jetdiff {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows * cols <= kDenseLimit) {
        storage_ = Dense(rows * cols);
    } else {
        storage_ = SparseRows(rows);
    }
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw UsageError("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Rational(1));
    return m;
}

void RationalMatrix::check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
}

Rational RationalMatrix::at(std::size_t r, std::size_t c) const {
    check(r, c);
    if (const auto* dense = std::get_if<Dense>(&storage_)) return (*dense)[r * cols_ + c];
    const auto& row = std::get<SparseRows>(storage_)[r];
    auto it = row.find(c);
    return it == row.end() ? Rational(0) : it->second;
}

void RationalMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
    check(r, c);
    if (auto* dense = std::get_if<Dense>(&storage_)) {
        (*dense)[r * cols_ + c] = value;
        return;
    }
    auto& row = std::get<SparseRows>(storage_)[r];
    if (value.is_zero()) {
        row.erase(c);
    } else {
        row[c] = value;
    }
}

RationalVector RationalMatrix::row(std::size_t r) const {
    RationalVector out(cols_);
    for (const auto& [c, v] : row_entries(r)) out[c] = v;
    return out;
}

RationalVector RationalMatrix::column(std::size_t c) const {
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

std::vector<std::pair<std::size_t, Rational>> RationalMatrix::row_entries(std::size_t r) const {
    if (r >= rows_) throw std::out_of_range("matrix row out of range");
    std::vector<std::pair<std::size_t, Rational>> out;
    if (const auto* dense = std::get_if<Dense>(&storage_)) {
        for (std::size_t c = 0; c < cols_; ++c) {
            const Rational& v = (*dense)[r * cols_ + c];
            if (!v.is_zero()) out.emplace_back(c, v);
        }
        return out;
    }
    for (const auto& [c, v] : std::get<SparseRows>(storage_)[r]) out.emplace_back(c, v);
    return out;
}

bool RationalMatrix::is_zero() const {
    for (std::size_t r = 0; r < rows_; ++r) {
        if (!row_entries(r).empty()) return false;
    }
    return true;
}

RationalVector RationalMatrix::apply(const RationalVector& v) const {
    if (v.size() != cols_) throw UsageError("matrix-vector dimension mismatch");
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (const auto& [c, x] : row_entries(r)) out[r] += x * v[c];
    }
    return out;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (const auto& [c, x] : row_entries(r)) out.set(c, r, x);
    }
    return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw UsageError("matrix product dimension mismatch");
    RationalMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        RationalVector acc(b.cols_);
        for (const auto& [k, x] : a.row_entries(r)) {
            for (const auto& [c, y] : b.row_entries(k)) acc[c] += x * y;
        }
        for (std::size_t c = 0; c < b.cols_; ++c) {
            if (!acc[c].is_zero()) out.set(r, c, acc[c]);
        }
    }
    return out;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t r = 0; r < a.rows_; ++r) {
        if (a.row_entries(r) != b.row_entries(r)) return false;
    }
    return true;
}

std::string RationalMatrix::str() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        os << '[';
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << at(r, c);
        os << "]\n";
    }
    return os.str();
}

}  // namespace jetdiff
