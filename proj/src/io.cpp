#include "rbox/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <openssl/evp.h>

namespace rbox {

namespace {

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    bool next(std::string_view& line) {
        if (pos_ >= text_.size()) return false;
        auto end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        line = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++number_;
        if (!line.empty() && line.back() == '\r') throw ParseError(number_, "CR line ending; files must use LF");
        return true;
    }

    std::size_t number() const { return number_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t number_ = 0;
};

std::vector<std::uint64_t> parse_numbers(std::string_view line, std::size_t lineno) {
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ') {
            ++i;
            continue;
        }
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
        if (ec != std::errc() || (p != line.data() + line.size() && *p != ' '))
            throw ParseError(lineno, "expected a non-negative integer in '" + std::string(line) + "'");
        out.push_back(v);
        i = static_cast<std::size_t>(p - line.data());
    }
    return out;
}

std::string_view expect_line(LineReader& in, const char* what) {
    std::string_view line;
    if (!in.next(line)) throw ParseError(in.number() + 1, std::string("unexpected end of file, expected ") + what);
    return line;
}

std::uint32_t as_u32(std::uint64_t v, std::size_t lineno, const char* what) {
    if (v > 0xffffffffu) throw ParseError(lineno, std::string(what) + " too large");
    return static_cast<std::uint32_t>(v);
}

void expect_end(LineReader& in) {
    std::string_view line;
    while (in.next(line))
        if (!line.empty()) throw ParseError(in.number(), "unexpected content after the declared tuple count");
}

}  // namespace

Relation parse_rbox(std::string_view text) {
    LineReader in(text);
    if (expect_line(in, "header") != "RBOX 1") throw ParseError(1, "expected header 'RBOX 1'");
    auto dims = parse_numbers(expect_line(in, "dimensions"), 2);
    if (dims.size() < 3) throw ParseError(2, "expected 'r n_1 ... n_r m'");
    const std::uint64_t r = dims[0];
    if (r < 1 || dims.size() != r + 2) throw ParseError(2, "expected 'r n_1 ... n_r m' with r = " + std::to_string(r));
    std::vector<std::uint32_t> axes;
    for (std::size_t i = 1; i <= r; ++i) {
        axes.push_back(as_u32(dims[i], 2, "axis size"));
        if (axes.back() == 0) throw ParseError(2, "axis sizes must be positive");
    }
    const std::uint64_t m = dims[r + 1];

    std::vector<Index> flat;
    flat.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(m, 1u << 24) * r));
    for (std::uint64_t k = 0; k < m; ++k) {
        auto line = expect_line(in, "tuple");
        auto t = parse_numbers(line, in.number());
        if (t.size() != r)
            throw ParseError(in.number(), "expected " + std::to_string(r) + " indices, got " + std::to_string(t.size()));
        for (std::size_t i = 0; i < r; ++i)
            if (t[i] >= axes[i])
                throw ParseError(in.number(), "index " + std::to_string(t[i]) + " out of bounds for axis " +
                                                  std::to_string(i) + " (size " + std::to_string(axes[i]) + ")");
        if (k > 0) {
            const Index* prev = flat.data() + flat.size() - r;
            int cmp = 0;
            for (std::size_t i = 0; i < r && cmp == 0; ++i) cmp = prev[i] < t[i] ? -1 : (prev[i] > t[i] ? 1 : 0);
            if (cmp == 0) throw ParseError(in.number(), "duplicate tuple");
            if (cmp > 0) throw ParseError(in.number(), "tuples must be in strict lexicographic order");
        }
        for (auto v : t) flat.push_back(static_cast<Index>(v));
    }
    expect_end(in);
    return Relation(std::move(axes), std::move(flat));
}

std::string format_rbox(const Relation& m) {
    std::string out = "RBOX 1\n";
    out += std::to_string(m.arity());
    for (auto n : m.axis_sizes()) out += ' ' + std::to_string(n);
    out += ' ' + std::to_string(m.size()) + '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto t = m.tuple(i);
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(t[j]);
        }
        out += '\n';
    }
    return out;
}

Hypergraph parse_hg(std::string_view text) {
    LineReader in(text);
    if (expect_line(in, "header") != "HG 1") throw ParseError(1, "expected header 'HG 1'");
    auto dims = parse_numbers(expect_line(in, "dimensions"), 2);
    if (dims.size() != 3) throw ParseError(2, "expected 'r n m'");
    const auto r = as_u32(dims[0], 2, "r");
    const auto n = as_u32(dims[1], 2, "n");
    if (r < 1) throw ParseError(2, "r must be >= 1");
    if (n < 1) throw ParseError(2, "n must be >= 1");
    std::map<Tuple, std::size_t> seen;
    std::vector<Tuple> edges;
    for (std::uint64_t k = 0; k < dims[2]; ++k) {
        auto line = expect_line(in, "edge");
        auto e = parse_numbers(line, in.number());
        if (e.size() != r)
            throw ParseError(in.number(), "expected " + std::to_string(r) + " vertices, got " + std::to_string(e.size()));
        Tuple edge;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] >= n) throw ParseError(in.number(), "vertex " + std::to_string(e[i]) + " >= n = " + std::to_string(n));
            if (i > 0 && e[i] <= e[i - 1]) throw ParseError(in.number(), "edge vertices must be strictly increasing");
            edge.push_back(static_cast<Index>(e[i]));
        }
        auto [it, fresh] = seen.emplace(edge, in.number());
        if (!fresh) throw ParseError(in.number(), "duplicate edge (first seen on line " + std::to_string(it->second) + ")");
        edges.push_back(std::move(edge));
    }
    expect_end(in);
    return Hypergraph(r, n, std::move(edges));
}

std::string format_hg(const Hypergraph& g) {
    std::string out = "HG 1\n" + std::to_string(g.r()) + ' ' + std::to_string(g.n()) + ' ' + std::to_string(g.size()) + '\n';
    for (const auto& e : g.edges()) {
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(e[j]);
        }
        out += '\n';
    }
    return out;
}

std::variant<Relation, Hypergraph> parse_instance(std::string_view text) {
    if (text.starts_with("RBOX ")) return parse_rbox(text);
    if (text.starts_with("HG ")) return parse_hg(text);
    throw ParseError(1, "unknown format; expected 'RBOX 1' or 'HG 1'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

std::string content_digest(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out = "sha256:";
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

}  // namespace rbox
