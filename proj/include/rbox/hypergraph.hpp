#pragma once

#include <cstdint>
#include <vector>

#include "rbox/relation.hpp"

namespace rbox {

/// r-uniform hypergraph on vertices 0..n-1. Edges are strictly increasing
/// vertex lists, kept in lexicographic order.
class Hypergraph {
public:
    Hypergraph() = default;
    /// Validates and canonicalizes; rejects repeated vertices, out-of-range
    /// vertices and duplicate edges.
    Hypergraph(unsigned r, std::uint32_t n, std::vector<Tuple> edges);

    unsigned r() const noexcept { return r_; }
    std::uint32_t n() const noexcept { return n_; }
    const std::vector<Tuple>& edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return edges_.size(); }

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    unsigned r_ = 0;
    std::uint32_t n_ = 0;
    std::vector<Tuple> edges_;
};

/// M = every ordering (u_1, ..., u_r) of every edge, over r axes of size n;
/// |M| = r! e(G).
Relation hypergraph_to_relation(const Hypergraph& g);

}  // namespace rbox
