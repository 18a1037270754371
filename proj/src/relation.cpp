#include "rbox/relation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace rbox {

namespace {

void check_axes(const std::vector<std::uint32_t>& axes) {
    if (axes.empty()) throw InvalidArgument("relation arity must be >= 1");
    for (std::size_t i = 0; i < axes.size(); ++i)
        if (axes[i] == 0) throw InvalidArgument("axis " + std::to_string(i) + " has size 0");
}

std::string join(std::span<const Index> xs) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
    out << ')';
    return out.str();
}

}  // namespace

Shape::Shape(std::vector<std::uint32_t> sizes) : sizes_(std::move(sizes)) {
    for (auto s : sizes_)
        if (s == 0) throw InvalidArgument("shape entries must be >= 1, got " + to_string());
}

std::uint64_t Shape::product() const noexcept {
    std::uint64_t p = 1;
    for (auto s : sizes_) {
        if (p > std::numeric_limits<std::uint64_t>::max() / s) return std::numeric_limits<std::uint64_t>::max();
        p *= s;
    }
    return p;
}

Shape Shape::prefix() const {
    if (sizes_.empty()) throw InvalidArgument("prefix of an empty shape");
    return Shape({sizes_.begin(), sizes_.end() - 1});
}

Shape Shape::drop_front() const {
    if (sizes_.empty()) throw InvalidArgument("drop_front of an empty shape");
    return Shape({sizes_.begin() + 1, sizes_.end()});
}

std::string Shape::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < sizes_.size(); ++i) out += (i ? "," : "") + std::to_string(sizes_[i]);
    return out;
}

Shape Box::shape() const {
    std::vector<std::uint32_t> sizes;
    for (const auto& p : parts) sizes.push_back(static_cast<std::uint32_t>(p.size()));
    return Shape(std::move(sizes));
}

std::string Box::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += i ? " x " : "";
        out += '{';
        for (std::size_t j = 0; j < parts[i].size(); ++j) out += (j ? "," : "") + std::to_string(parts[i][j]);
        out += '}';
    }
    return out;
}

void check_box_parts(const Box& box, std::span<const std::uint32_t> axis_sizes) {
    if (box.parts.size() != axis_sizes.size())
        throw ArityMismatch("box has " + std::to_string(box.parts.size()) + " parts, expected " +
                            std::to_string(axis_sizes.size()));
    for (std::size_t i = 0; i < box.parts.size(); ++i) {
        const auto& part = box.parts[i];
        if (part.empty()) throw InvalidArgument("box part " + std::to_string(i) + " is empty");
        if (!std::is_sorted(part.begin(), part.end()) ||
            std::adjacent_find(part.begin(), part.end()) != part.end())
            throw InvalidArgument("box part " + std::to_string(i) + " is not strictly increasing");
        if (part.back() >= axis_sizes[i])
            throw OutOfBounds("box part " + std::to_string(i) + " index " + std::to_string(part.back()) +
                              " >= axis size " + std::to_string(axis_sizes[i]));
    }
}

Relation::Relation(std::vector<std::uint32_t> axis_sizes) : axis_sizes_(std::move(axis_sizes)) {
    check_axes(axis_sizes_);
    build_last_index();
}

Relation::Relation(std::vector<std::uint32_t> axis_sizes, std::vector<Index> flat, Duplicates duplicates)
    : axis_sizes_(std::move(axis_sizes)), data_(std::move(flat)) {
    check_axes(axis_sizes_);
    if (data_.size() % arity() != 0) throw InvalidArgument("flat tuple data is not a multiple of the arity");
    const std::size_t r = arity();
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (data_[i] >= axis_sizes_[i % r])
            throw OutOfBounds("tuple " + join(tuple(i / r)) + " out of bounds on axis " + std::to_string(i % r));
    canonicalize(duplicates);
    build_last_index();
}

Relation Relation::from_tuples(std::vector<std::uint32_t> axis_sizes, const std::vector<Tuple>& tuples,
                               Duplicates duplicates) {
    std::vector<Index> flat;
    flat.reserve(tuples.size() * axis_sizes.size());
    for (const auto& t : tuples) {
        if (t.size() != axis_sizes.size())
            throw ArityMismatch("tuple " + join(t) + " has arity " + std::to_string(t.size()) + ", expected " +
                                std::to_string(axis_sizes.size()));
        flat.insert(flat.end(), t.begin(), t.end());
    }
    return Relation(std::move(axis_sizes), std::move(flat), duplicates);
}

Relation Relation::full(std::vector<std::uint32_t> axis_sizes) {
    const std::size_t r = axis_sizes.size();
    std::vector<Index> flat;
    if (r > 0 && std::find(axis_sizes.begin(), axis_sizes.end(), 0u) == axis_sizes.end()) {
        std::vector<Index> cur(r, 0);
        bool more = true;
        while (more) {
            flat.insert(flat.end(), cur.begin(), cur.end());
            more = false;
            for (std::size_t i = r; i-- > 0;) {
                if (++cur[i] < axis_sizes[i]) {
                    more = true;
                    break;
                }
                cur[i] = 0;
            }
        }
    }
    return Relation(std::move(axis_sizes), std::move(flat));
}

void Relation::canonicalize(Duplicates duplicates) {
    const std::size_t r = arity();
    const std::size_t m = size();
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);
    auto less = [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(data_.begin() + a * r, data_.begin() + (a + 1) * r,
                                            data_.begin() + b * r, data_.begin() + (b + 1) * r);
    };
    if (!std::is_sorted(order.begin(), order.end(), less)) std::sort(order.begin(), order.end(), less);
    std::vector<Index> sorted;
    sorted.reserve(data_.size());
    for (std::size_t i = 0; i < m; ++i) {
        auto row = data_.begin() + order[i] * r;
        if (!sorted.empty() && std::equal(row, row + r, sorted.end() - r)) {
            if (duplicates == Duplicates::reject)
                throw InvalidArgument("duplicate tuple " + join(std::span<const Index>(&*row, r)));
            continue;
        }
        sorted.insert(sorted.end(), row, row + r);
    }
    data_ = std::move(sorted);
}

void Relation::build_last_index() {
    const std::size_t r = arity();
    const std::uint32_t n_last = axis_sizes_.back();
    last_offsets_.assign(n_last + 1, 0);
    for (std::size_t i = 0; i < size(); ++i) ++last_offsets_[data_[i * r + r - 1] + 1];
    for (std::uint32_t v = 0; v < n_last; ++v) last_offsets_[v + 1] += last_offsets_[v];
    last_positions_.assign(size(), 0);
    std::vector<std::uint32_t> fill(last_offsets_.begin(), last_offsets_.end() - 1);
    for (std::size_t i = 0; i < size(); ++i)
        last_positions_[fill[data_[i * r + r - 1]]++] = static_cast<std::uint32_t>(i);
}

std::uint32_t Relation::min_axis_size() const {
    return *std::min_element(axis_sizes_.begin(), axis_sizes_.end());
}

std::vector<Tuple> Relation::tuples() const {
    std::vector<Tuple> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        auto t = tuple(i);
        out.emplace_back(t.begin(), t.end());
    }
    return out;
}

bool Relation::contains(std::span<const Index> t) const {
    if (t.size() != arity()) return false;
    auto [lo, hi] = prefix_range(t);
    return lo < hi;
}

std::pair<std::size_t, std::size_t> Relation::prefix_range(std::span<const Index> prefix) const {
    const std::size_t r = arity();
    const std::size_t k = prefix.size();
    auto cmp = [&](std::size_t pos) {
        // -1, 0, +1 comparing tuple(pos)[0..k) with prefix
        for (std::size_t i = 0; i < k; ++i) {
            Index a = data_[pos * r + i];
            if (a != prefix[i]) return a < prefix[i] ? -1 : 1;
        }
        return 0;
    };
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (cmp(mid) < 0) lo = mid + 1;
        else hi = mid;
    }
    std::size_t first = lo;
    hi = size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (cmp(mid) <= 0) lo = mid + 1;
        else hi = mid;
    }
    return {first, lo};
}

std::size_t Relation::last_degree(Index v) const {
    if (v >= axis_sizes_.back())
        throw OutOfBounds("last-axis index " + std::to_string(v) + " >= " + std::to_string(axis_sizes_.back()));
    return last_offsets_[v + 1] - last_offsets_[v];
}

std::span<const std::uint32_t> Relation::last_fiber_positions(Index v) const {
    if (v >= axis_sizes_.back())
        throw OutOfBounds("last-axis index " + std::to_string(v) + " >= " + std::to_string(axis_sizes_.back()));
    return {last_positions_.data() + last_offsets_[v], last_offsets_[v + 1] - last_offsets_[v]};
}

std::uint64_t Relation::capacity() const noexcept {
    std::uint64_t p = 1;
    for (auto n : axis_sizes_) {
        if (n != 0 && p > std::numeric_limits<std::uint64_t>::max() / n) return std::numeric_limits<std::uint64_t>::max();
        p *= n;
    }
    return p;
}

Relation project_last(const Relation& m) {
    if (m.arity() < 2) throw InvalidArgument("cannot project unary relation");
    const std::size_t r = m.arity();
    std::vector<Index> flat;
    flat.reserve(m.size() * (r - 1));
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto t = m.tuple(i);
        // tuples sharing a prefix are adjacent in lexicographic order
        if (!flat.empty() && std::equal(t.begin(), t.end() - 1, flat.end() - (r - 1))) continue;
        flat.insert(flat.end(), t.begin(), t.end() - 1);
    }
    std::vector<std::uint32_t> axes(m.axis_sizes().begin(), m.axis_sizes().end() - 1);
    return Relation(std::move(axes), std::move(flat));
}

Relation fiber(const Relation& m, Index v) {
    if (m.arity() < 2) throw InvalidArgument("fiber requires arity >= 2");
    const std::size_t r = m.arity();
    auto positions = m.last_fiber_positions(v);
    std::vector<Index> flat;
    flat.reserve(positions.size() * (r - 1));
    for (auto pos : positions) {
        auto t = m.tuple(pos);
        flat.insert(flat.end(), t.begin(), t.end() - 1);
    }
    std::vector<std::uint32_t> axes(m.axis_sizes().begin(), m.axis_sizes().end() - 1);
    return Relation(std::move(axes), std::move(flat));
}

std::vector<Index> common_neighborhood(const Relation& m, const Rectangle& rect) {
    if (m.arity() < 2) throw InvalidArgument("common neighborhood requires arity >= 2");
    const std::size_t k = m.arity() - 1;
    check_box_parts(rect, std::span(m.axis_sizes()).first(k));

    std::vector<Index> result;
    std::vector<Index> next;
    std::vector<std::size_t> odo(k, 0);
    std::vector<Index> prefix(k);
    bool first = true;
    while (true) {
        for (std::size_t i = 0; i < k; ++i) prefix[i] = rect.parts[i][odo[i]];
        auto [lo, hi] = m.prefix_range(prefix);
        if (first) {
            for (auto p = lo; p < hi; ++p) result.push_back(m.tuple(p)[k]);
            first = false;
        } else {
            next.clear();
            std::size_t j = 0;
            for (auto p = lo; p < hi && j < result.size(); ++p) {
                Index u = m.tuple(p)[k];
                while (j < result.size() && result[j] < u) ++j;
                if (j < result.size() && result[j] == u) next.push_back(u);
            }
            result.swap(next);
        }
        if (result.empty()) return result;

        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++odo[i] < rect.parts[i].size()) break;
            odo[i] = 0;
            if (i == 0) return result;
        }
    }
}

BoxCheck validate_box(const Relation& m, const Box& box) {
    check_box_parts(box, m.axis_sizes());
    const std::size_t r = box.parts.size();
    std::vector<std::size_t> odo(r, 0);
    Tuple t(r);
    while (true) {
        for (std::size_t i = 0; i < r; ++i) t[i] = box.parts[i][odo[i]];
        if (!m.contains(t)) return {false, t};
        std::size_t i = r;
        while (i > 0) {
            --i;
            if (++odo[i] < box.parts[i].size()) break;
            odo[i] = 0;
            if (i == 0) return {true, std::nullopt};
        }
    }
}

}  // namespace rbox
