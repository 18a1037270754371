#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rbox/error.hpp"

namespace rbox {

using Index = std::uint32_t;
using Tuple = std::vector<Index>;

/// Requested part sizes (s_1, ..., s_k); every entry is at least 1.
class Shape {
public:
    Shape() = default;
    explicit Shape(std::vector<std::uint32_t> sizes);

    std::size_t arity() const noexcept { return sizes_.size(); }
    std::uint32_t operator[](std::size_t i) const { return sizes_[i]; }
    const std::vector<std::uint32_t>& sizes() const noexcept { return sizes_; }
    std::uint32_t back() const { return sizes_.back(); }

    /// Product of all entries (saturates at UINT64_MAX).
    std::uint64_t product() const noexcept;

    /// Shape without its last entry.
    Shape prefix() const;
    Shape drop_front() const;

    std::string to_string() const;

    friend bool operator==(const Shape&, const Shape&) = default;

private:
    std::vector<std::uint32_t> sizes_;
};

/// A product V_1 x ... x V_k of index sets. A rectangle is a box on the first
/// r-1 axes of an r-ary relation.
struct Box {
    std::vector<std::vector<Index>> parts;

    std::size_t arity() const noexcept { return parts.size(); }
    Shape shape() const;
    std::string to_string() const;

    friend bool operator==(const Box&, const Box&) = default;
    friend auto operator<=>(const Box&, const Box&) = default;
};

using Rectangle = Box;

/// r-ary 0-1 relation M over U_1 x ... x U_r, |U_i| = axis_sizes[i].
/// Tuples are stored flat, deduplicated and in lexicographic order, so two
/// relations are equal iff they hold the same tuples over the same axes.
class Relation {
public:
    enum class Duplicates { reject, merge };

    Relation() = default;

    /// Empty relation over the given axes.
    explicit Relation(std::vector<std::uint32_t> axis_sizes);

    /// Flat row-major tuple data (size multiple of arity), any order.
    Relation(std::vector<std::uint32_t> axis_sizes, std::vector<Index> flat,
             Duplicates duplicates = Duplicates::reject);

    static Relation from_tuples(std::vector<std::uint32_t> axis_sizes, const std::vector<Tuple>& tuples,
                                Duplicates duplicates = Duplicates::reject);

    /// Every tuple of the product space.
    static Relation full(std::vector<std::uint32_t> axis_sizes);

    std::size_t arity() const noexcept { return axis_sizes_.size(); }
    std::size_t size() const noexcept { return arity() == 0 ? 0 : data_.size() / arity(); }
    bool empty() const noexcept { return data_.empty(); }
    const std::vector<std::uint32_t>& axis_sizes() const noexcept { return axis_sizes_; }
    std::uint32_t axis_size(std::size_t i) const { return axis_sizes_.at(i); }
    std::uint32_t min_axis_size() const;

    std::span<const Index> tuple(std::size_t i) const {
        return {data_.data() + i * arity(), arity()};
    }
    const std::vector<Index>& flat() const noexcept { return data_; }
    std::vector<Tuple> tuples() const;

    bool contains(std::span<const Index> t) const;

    /// Half-open range of tuple positions whose first prefix.size() coordinates
    /// equal prefix.
    std::pair<std::size_t, std::size_t> prefix_range(std::span<const Index> prefix) const;

    /// d_M(v): number of tuples whose last coordinate is v.
    std::size_t last_degree(Index v) const;

    /// Positions (ascending) of the tuples whose last coordinate is v.
    std::span<const std::uint32_t> last_fiber_positions(Index v) const;

    /// Product of axis sizes, saturating.
    std::uint64_t capacity() const noexcept;

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.axis_sizes_ == b.axis_sizes_ && a.data_ == b.data_;
    }

private:
    void canonicalize(Duplicates duplicates);
    void build_last_index();

    std::vector<std::uint32_t> axis_sizes_;
    std::vector<Index> data_;
    // CSR index over the last axis: positions of tuples by last coordinate.
    std::vector<std::uint32_t> last_offsets_;
    std::vector<std::uint32_t> last_positions_;
};

/// M': prefixes of tuples of M with the last coordinate dropped.
Relation project_last(const Relation& m);

/// N_M(v) as an (r-1)-ary relation.
Relation fiber(const Relation& m, Index v);

/// N_M(R): last-axis indices u with every prefix of R extended by u inside M.
std::vector<Index> common_neighborhood(const Relation& m, const Rectangle& rect);

struct BoxCheck {
    bool ok = true;
    std::optional<Tuple> violator;  // first product tuple (lexicographic) missing from M
};

BoxCheck validate_box(const Relation& m, const Box& box);

/// Throws unless every part is nonempty, sorted, duplicate-free and in bounds.
void check_box_parts(const Box& box, std::span<const std::uint32_t> axis_sizes);

}  // namespace rbox
