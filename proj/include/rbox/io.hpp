#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "rbox/hypergraph.hpp"
#include "rbox/relation.hpp"

namespace rbox {

/// RBOX v1:
///   RBOX 1
///   r n_1 ... n_r m
///   m lines of r zero-based indices, strictly increasing in lexicographic order
/// Text is UTF-8 with LF line ends; errors carry 1-based line numbers.
Relation parse_rbox(std::string_view text);
std::string format_rbox(const Relation& m);

/// HG v1:
///   HG 1
///   r n m
///   m lines of r strictly increasing vertex indices (written in lexicographic order)
Hypergraph parse_hg(std::string_view text);
std::string format_hg(const Hypergraph& g);

/// Dispatches on the first line.
std::variant<Relation, Hypergraph> parse_instance(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// "sha256:<hex>" of the bytes.
std::string content_digest(std::string_view bytes);

}  // namespace rbox
