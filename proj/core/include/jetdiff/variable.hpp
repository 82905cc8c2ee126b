#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace jetdiff {

/// An indeterminate of the polynomial ring.
///
/// The total order is fixed: base coordinates z_j, then jet variables
/// f_j^(i) sorted by (derivative order i, component j), then group
/// parameters a_i, then the series parameter t. Graded-lex monomial order
/// treats earlier variables as more significant.
class Variable {
public:
    enum class Kind : std::uint8_t { Base = 0, Jet = 1, Group = 2, Series = 3 };

    /// z_j, j >= 1
    static Variable base(int component);
    /// f_j^(i), i >= 1 derivative order, j >= 1 component
    static Variable jet(int order, int component);
    /// a_i, i >= 1
    static Variable group(int index);
    /// t
    static Variable series();

    Kind kind() const { return kind_; }
    int order() const { return order_; }
    int index() const { return index_; }

    /// z1, f2'', a3, t
    std::string name() const;

    friend bool operator==(const Variable&, const Variable&) = default;
    friend auto operator<=>(const Variable&, const Variable&) = default;

private:
    Variable(Kind kind, int order, int index) : kind_(kind), order_(static_cast<std::uint8_t>(order)), index_(static_cast<std::uint8_t>(index)) {}

    // Member order is the comparison order.
    Kind kind_;
    std::uint8_t order_;
    std::uint8_t index_;
};

}  // namespace jetdiff
