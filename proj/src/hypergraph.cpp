#include "rbox/hypergraph.hpp"

#include <algorithm>

namespace rbox {

Hypergraph::Hypergraph(unsigned r, std::uint32_t n, std::vector<Tuple> edges) : r_(r), n_(n), edges_(std::move(edges)) {
    if (r_ < 1) throw InvalidArgument("hypergraph uniformity r must be >= 1");
    for (auto& e : edges_) {
        if (e.size() != r_)
            throw ArityMismatch("edge with " + std::to_string(e.size()) + " vertices in a " + std::to_string(r_) +
                                "-uniform hypergraph");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw InvalidArgument("edge repeats vertex " + std::to_string(*std::adjacent_find(e.begin(), e.end())));
        if (e.back() >= n_)
            throw OutOfBounds("vertex " + std::to_string(e.back()) + " >= n = " + std::to_string(n_));
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
        std::string s;
        for (auto v : *dup) s += (s.empty() ? "" : " ") + std::to_string(v);
        throw InvalidArgument("duplicate edge {" + s + "}");
    }
}

Relation hypergraph_to_relation(const Hypergraph& g) {
    std::vector<Index> flat;
    for (const auto& e : g.edges()) {
        Tuple perm = e;
        do {
            flat.insert(flat.end(), perm.begin(), perm.end());
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return Relation(std::vector<std::uint32_t>(g.r(), g.n()), std::move(flat));
}

}  // namespace rbox
