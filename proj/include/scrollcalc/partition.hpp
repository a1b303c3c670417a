#pragma once

// Partitions inside a k x (n-k) box.  The (2,2) box indexes the Schubert
// basis of H*(G(2,4)): the six classes
//
//   sigma_{}  sigma_1  sigma_2  sigma_{1,1}  sigma_{2,1}  sigma_{2,2}
//
// in that fixed order (ascending codimension |lambda|, ties broken with the
// lexicographically larger partition first), which is the serialization
// order used everywhere.  Partitions print as bracketed comma lists, e.g.
// "[2,1]", with "[]" for the empty partition.

#include <algorithm>
#include <array>
#include <compare>
#include <initializer_list>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "scrollcalc/numeric.hpp"

namespace scrollcalc {

class Partition {
public:
    Partition() = default;

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0) throw DomainError("partition parts must be non-negative");
            if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1]) {
                throw DomainError("partition parts must be weakly decreasing: " +
                                  to_string_of(parts_));
            }
        }
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    }

    const std::vector<int>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    int length() const { return static_cast<int>(parts_.size()); }
    int part(int i) const { return i < length() ? parts_[static_cast<std::size_t>(i)] : 0; }

    // |lambda|: number of boxes; the codimension of the Schubert class.
    int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    bool fits_box(int rows, int cols) const {
        return length() <= rows && (parts_.empty() || parts_.front() <= cols);
    }

    // Poincare dual inside the rows x cols box: the complement partition,
    // rotated by 180 degrees.
    Partition box_complement(int rows, int cols) const {
        if (!fits_box(rows, cols)) {
            throw DomainError("partition " + to_string() + " does not fit the box");
        }
        std::vector<int> dual(static_cast<std::size_t>(rows));
        for (int i = 0; i < rows; ++i) {
            dual[static_cast<std::size_t>(i)] = cols - part(rows - 1 - i);
        }
        return Partition(std::move(dual));
    }

    std::string to_string() const { return to_string_of(parts_); }

    // Parses "[2,1]", "[]", "[2]"; whitespace inside is not accepted (the
    // CLI grammar handles its own whitespace before partitions are built).
    static Partition parse(std::string_view s) {
        if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
            throw ParseError("invalid partition literal: '" + std::string(s) + "'");
        }
        std::string_view body = s.substr(1, s.size() - 2);
        std::vector<int> parts;
        while (!body.empty()) {
            std::size_t comma = body.find(',');
            std::string_view tok = body.substr(0, comma);
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string_view::npos) {
                throw ParseError("invalid partition part '" + std::string(tok) +
                                 "' in '" + std::string(s) + "'");
            }
            parts.push_back(std::stoi(std::string(tok)));
            body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
        }
        return Partition(std::move(parts));
    }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }

    // Canonical order: ascending weight; within a weight the lexicographically
    // larger partition first, so the (2,2)-box basis sorts as
    // [] < [1] < [2] < [1,1] < [2,1] < [2,2].
    bool operator<(const Partition& o) const {
        int w = weight(), ow = o.weight();
        if (w != ow) return w < ow;
        return parts_ > o.parts_;
    }
    bool operator<=(const Partition& o) const { return *this == o || *this < o; }
    bool operator>(const Partition& o) const { return o < *this; }

private:
    static std::string to_string_of(const std::vector<int>& parts) {
        std::string s = "[";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts[i]);
        }
        s += ']';
        return s;
    }

    std::vector<int> parts_;
};

// ---------------------------------------------------------------------------
// The fixed Schubert basis of the (2,2) box.
// ---------------------------------------------------------------------------

inline const std::array<Partition, 6>& schubert_basis() {
    static const std::array<Partition, 6> basis = {
        Partition{},       // sigma_{}     codim 0
        Partition{1},      // sigma_1      codim 1 (the divisor class)
        Partition{2},      // sigma_2      codim 2 (lines through a point)
        Partition{1, 1},   // sigma_{1,1}  codim 2 (lines in a plane)
        Partition{2, 1},   // sigma_{2,1}  codim 3
        Partition{2, 2},   // sigma_{2,2}  codim 4 (the point class)
    };
    return basis;
}

// Index of a partition in the fixed basis; DomainError outside the box.
inline int basis_index(const Partition& p) {
    const auto& basis = schubert_basis();
    for (int i = 0; i < 6; ++i) {
        if (basis[static_cast<std::size_t>(i)] == p) return i;
    }
    throw DomainError("partition " + p.to_string() + " is outside the 2x2 box");
}

// Poincare dual index inside the (2,2) box, as a basis permutation.
inline int dual_index(int i) {
    static constexpr std::array<int, 6> dual = {5, 4, 2, 3, 1, 0};
    return dual.at(static_cast<std::size_t>(i));
}

inline int basis_codim(int i) {
    static constexpr std::array<int, 6> codim = {0, 1, 2, 2, 3, 4};
    return codim.at(static_cast<std::size_t>(i));
}

}  // namespace scrollcalc
