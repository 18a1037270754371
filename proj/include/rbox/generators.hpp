#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rbox/hypergraph.hpp"
#include "rbox/relation.hpp"

namespace rbox {

enum class GenKind { bernoulli, exact_count, planted_box, hypergraph_gnp, hypergraph_exact };
const char* to_string(GenKind k) noexcept;
std::optional<GenKind> parse_gen_kind(std::string_view s);

/// Instance recipe. Hypergraph kinds read n from axis_sizes (all entries equal).
/// planted_box draws its base like bernoulli (density, default 0) or like
/// exact_count (count); hypergraph kinds accept an optional planted shape
/// whose parts are placed on disjoint vertex sets.
struct GenSpec {
    GenKind kind = GenKind::bernoulli;
    unsigned r = 2;
    std::vector<std::uint32_t> axis_sizes;
    std::optional<double> density;
    std::optional<std::uint64_t> count;
    std::optional<Shape> planted;
    std::uint64_t seed = 0;
};

/// Throws InvalidArgument naming the offending field.
void validate(const GenSpec& spec);

struct GenOutput {
    std::variant<Relation, Hypergraph> instance;
    std::optional<Box> planted;
    std::uint64_t seed = 0;
    std::string generator;
    double expected_count = 0.0;
    bool count_within_5sigma = true;  // bernoulli-style kinds only

    bool is_relation() const { return std::holds_alternative<Relation>(instance); }
    const Relation& relation() const { return std::get<Relation>(instance); }
    const Hypergraph& hypergraph() const { return std::get<Hypergraph>(instance); }
};

GenOutput gen(const GenSpec& spec);

}  // namespace rbox
