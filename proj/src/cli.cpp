#include "rbox/cli.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbox/bounds.hpp"
#include "rbox/counting.hpp"
#include "rbox/extraction.hpp"
#include "rbox/generators.hpp"
#include "rbox/invariants.hpp"
#include "rbox/io.hpp"
#include "rbox/peeling.hpp"
#include "rbox/rng.hpp"

namespace rbox {
namespace {

using Json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kFails = 1, kUsage = 2, kBudget = 3 };

class UsageError : public Error {
public:
    using Error::Error;
};

struct Options {
    std::string file;
    std::string shape;
    std::string alpha;
    std::string theta;
    std::string strategy = "exhaustive";
    std::string kind = "bernoulli";
    std::string axes;
    std::string planted;
    std::string ln_n;
    std::string bound;
    std::string frontier_target = "thm4";
    std::string count;
    std::string output;
    std::string density;
    bool no_peel = false;
    bool oracle = false;
    bool guarantee = false;
    std::optional<std::uint64_t> budget;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::optional<unsigned> r;
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> t;
    std::optional<std::uint64_t> m;
    unsigned orders = 100;
};

// ---- value formatting ----

Json log_value(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round_significant(x, 12);
}

std::string rational_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Json real_json(const Real& a) {
    Json j;
    j["value"] = log_value(a.value);
    j["exact"] = a.exact ? Json(rational_string(*a.exact)) : Json(nullptr);
    return j;
}

Json scale_json(const Scale& s) {
    Json j;
    j["ln_n"] = log_value(s.ln_n);
    j["ln_n_exact"] = s.ln_n_exact ? Json(rational_string(*s.ln_n_exact)) : Json(nullptr);
    j["n"] = s.n ? Json(std::to_string(*s.n)) : Json(nullptr);
    return j;
}

Json box_json(const Box& b) {
    Json parts = Json::array();
    for (const auto& p : b.parts) parts.push_back(p);
    return parts;
}

Json comparison_json(const Comparison& c) {
    return Json{{"name", c.name},
                {"lhs_log", log_value(c.lhs_log)},
                {"rhs_log", log_value(c.rhs_log)},
                {"relation", to_string(c.op)},
                {"strict", c.op == Relop::lt || c.op == Relop::gt},
                {"holds", c.holds},
                {"exact", c.exact},
                {"near_boundary", c.near_boundary}};
}

Json bound_json(const BoundReport& b) {
    Json j;
    j["bound"] = b.bound;
    j["r"] = b.r;
    j["n"] = scale_json(b.scale);
    j["alpha"] = real_json(b.alpha);
    j["alpha_inferred"] = b.alpha_inferred;
    j["shape"] = b.shape;
    j["hypotheses_ok"] = b.hypotheses_ok();
    Json hyps = Json::array();
    for (const auto& h : b.hypotheses) hyps.push_back(comparison_json(h));
    j["hypotheses"] = std::move(hyps);
    j["conclusion"] = b.conclusion ? comparison_json(*b.conclusion) : Json(nullptr);
    j["lhs_log"] = log_value(b.lhs_log);
    j["rhs_log"] = log_value(b.rhs_log);
    j["verdict"] = to_string(b.verdict);
    j["notes"] = b.notes;
    return j;
}

Json claim_json(const ClaimCheck& c) {
    return Json{{"window", c.window},
                {"product", c.product},
                {"hypothesis", c.hypothesis},
                {"conclusion", c.conclusion},
                {"counterexample", c.hypothesis && !c.conclusion},
                {"lhs_log", log_value(c.lhs_log)},
                {"rhs_log", log_value(c.rhs_log)}};
}

Json extraction_json(const ExtractionResult& e) {
    Json j;
    j["box"] = box_json(e.box);
    j["t"] = e.t;
    j["strategy"] = to_string(e.strategy);
    j["certificate_checked"] = e.certificate_checked;
    j["averaging_floor"] = rational_string(e.averaging_floor);
    j["support_sum"] = e.support_sum.str();
    j["candidates"] = e.candidates.str();
    j["peeled"] = e.peeled;
    j["theta"] = rational_string(e.theta);
    j["alpha"] = rational_string(e.alpha);
    j["alpha_inferred"] = e.alpha_inferred;
    j["core_size"] = e.core_size;
    j["survivors"] = e.survivors;
    return j;
}

// ---- argument parsing ----

std::vector<std::uint32_t> parse_list(const std::string& text, const char* flag) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(item, &used);
            if (used != item.size() || v > 0xFFFFFFFFul || item.front() == '-') throw std::invalid_argument(item);
            out.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::logic_error&) {
            throw UsageError(std::string(flag) + ": expected comma-separated non-negative integers, got '" + text +
                             "'");
        }
    }
    if (out.empty() || text.back() == ',') throw UsageError(std::string(flag) + ": empty list");
    return out;
}

Shape parse_shape(const std::string& text) {
    if (text.empty()) throw UsageError("--shape is required");
    auto sizes = parse_list(text, "--shape");
    for (auto s : sizes)
        if (s == 0) throw UsageError("--shape: entries must be at least 1");
    return Shape(std::move(sizes));
}

Real parse_real(const std::string& text, const char* flag) {
    auto v = Real::parse(text);
    if (!v) throw UsageError(std::string(flag) + ": not a decimal or p/q fraction: '" + text + "'");
    return *v;
}

Rational exact_of(const Real& x) { return x.exact ? *x.exact : from_double(x.value); }

std::optional<Rational> parse_alpha(const std::string& text) {
    if (text.empty()) return std::nullopt;
    Rational a = exact_of(parse_real(text, "--alpha"));
    if (a <= 0 || a > 1) throw UsageError("--alpha: must satisfy 0 < alpha <= 1");
    return a;
}

std::optional<Rational> parse_theta(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto q = parse_rational(text);
    if (!q) throw UsageError("--theta: not a decimal or p/q fraction: '" + text + "'");
    if (*q < 0) throw UsageError("--theta: must be non-negative");
    return q;
}

Strategy parse_strategy_flag(const std::string& text) {
    auto s = parse_strategy(text);
    if (!s) throw UsageError("--strategy: expected exhaustive, greedy or sampled, got '" + text + "'");
    return *s;
}

// ---- inputs ----

struct Input {
    std::string format;
    std::string digest;
    std::variant<Relation, Hypergraph> instance;

    bool is_hypergraph() const { return std::holds_alternative<Hypergraph>(instance); }
    Relation relation() const {
        if (is_hypergraph()) return hypergraph_to_relation(std::get<Hypergraph>(instance));
        return std::get<Relation>(instance);
    }
};

Input load_input(const std::string& path) {
    if (path.empty()) throw UsageError("an input file is required");
    std::string text = read_file(path);
    try {
        Input in{"", content_digest(text), parse_instance(text)};
        in.format = in.is_hypergraph() ? "HG 1" : "RBOX 1";
        return in;
    } catch (const ParseError& e) {
        throw UsageError("parse error: " + path + ": " + e.what());
    }
}

Json input_json(const Input& in) {
    Json j;
    j["format"] = in.format;
    j["digest"] = in.digest;
    if (in.is_hypergraph()) {
        const auto& g = std::get<Hypergraph>(in.instance);
        j["r"] = g.r();
        j["n"] = g.n();
        j["edges"] = g.size();
    } else {
        const auto& m = std::get<Relation>(in.instance);
        j["r"] = m.arity();
        j["axis_sizes"] = m.axis_sizes();
        j["tuples"] = m.size();
    }
    return j;
}

Json make_report(const std::string& command, Json input, Json parameters, std::optional<std::uint64_t> seed) {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["input"] = std::move(input);
    j["parameters"] = std::move(parameters);
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    j["results"] = Json::object();
    return j;
}

// ---- commands ----

int run_gen(const Options& o, std::ostream& out) {
    auto kind = parse_gen_kind(o.kind);
    if (!kind) throw UsageError("--kind: unknown generator '" + o.kind + "'");
    GenSpec spec;
    spec.kind = *kind;
    spec.seed = o.seed;
    if (!o.axes.empty()) {
        spec.axis_sizes = parse_list(o.axes, "--axes");
        spec.r = o.r.value_or(static_cast<unsigned>(spec.axis_sizes.size()));
    } else {
        if (!o.r || !o.n) throw UsageError("gen: give --axes, or both --r and --n");
        spec.r = *o.r;
        spec.axis_sizes.assign(*o.r, static_cast<std::uint32_t>(*o.n));
    }
    if (!o.density.empty()) spec.density = parse_real(o.density, "--density").value;
    spec.count = o.m;
    if (!o.planted.empty()) spec.planted = parse_shape(o.planted);
    validate(spec);

    auto result = gen(spec);
    std::string text = result.is_relation() ? format_rbox(result.relation()) : format_hg(result.hypergraph());
    if (o.output.empty()) {
        out << text;
        return kOk;
    }
    write_file(o.output, text);

    Json params{{"kind", to_string(spec.kind)}, {"r", spec.r}, {"axis_sizes", spec.axis_sizes}};
    params["density"] = spec.density ? log_value(*spec.density) : Json(nullptr);
    params["count"] = spec.count ? Json(std::to_string(*spec.count)) : Json(nullptr);
    params["planted"] = spec.planted ? Json(spec.planted->sizes()) : Json(nullptr);
    Json report = make_report("gen", nullptr, std::move(params), spec.seed);
    auto& res = report["results"];
    res["generator"] = result.generator;
    res["rng"] = Rng::kName;
    res["format"] = result.is_relation() ? "RBOX 1" : "HG 1";
    res["digest"] = content_digest(text);
    res["size"] = result.is_relation() ? result.relation().size() : result.hypergraph().size();
    res["expected_count"] = log_value(result.expected_count);
    res["count_within_5sigma"] = result.count_within_5sigma;
    res["planted"] = result.planted ? box_json(*result.planted) : Json(nullptr);
    out << report.dump(2) << '\n';
    return kOk;
}

int run_count(const Options& o, std::ostream& out) {
    Input in = load_input(o.file);
    Relation m = in.relation();
    Shape shape = parse_shape(o.shape);
    auto res = count_boxes(m, shape, CountOptions{o.jobs});

    Json params{{"shape", shape.sizes()}, {"oracle", o.oracle}};
    if (o.oracle) params["budget"] = o.budget.value_or(kDefaultNaiveBudget);
    Json report = make_report("count", input_json(in), std::move(params), std::nullopt);
    auto& r = report["results"];
    r["count"] = res.count.str();
    r["rectangles_visited"] = res.rectangles_visited;
    r["method"] = to_string(res.method);
    int code = kOk;
    if (o.oracle) {
        auto slow = naive_count_boxes(m, shape, o.budget.value_or(kDefaultNaiveBudget));
        bool agrees = slow.count == res.count;
        r["oracle"] = Json{{"count", slow.count.str()}, {"agrees", agrees}};
        if (!agrees) code = kFails;
    }
    out << report.dump(2) << '\n';
    return code;
}

int run_peel(const Options& o, std::ostream& out) {
    Input in = load_input(o.file);
    Relation m = in.relation();
    auto alpha = parse_alpha(o.alpha);
    auto theta = parse_theta(o.theta);

    Json params{{"alpha", alpha ? Json(rational_string(*alpha)) : Json(nullptr)},
                {"theta", theta ? Json(rational_string(*theta)) : Json(nullptr)}};
    Json report = make_report("peel", input_json(in), std::move(params), std::nullopt);
    auto& r = report["results"];

    Rational th;
    if (theta) {
        th = *theta;
        r["threshold"] = Json{{"theta", rational_string(th)}, {"source", "flag"}};
    } else {
        auto d = default_theta(m, alpha);
        th = d.theta;
        r["threshold"] = Json{{"theta", rational_string(th)},
                              {"source", "default"},
                              {"alpha", rational_string(d.alpha)},
                              {"alpha_inferred", d.alpha_inferred},
                              {"n", d.n}};
    }
    auto res = peel(m, th);
    r["survivors"] = res.survivors;
    r["core_size"] = res.core.size();
    r["removed_tuples"] = m.size() - res.core.size();
    Json trace = Json::array();
    for (const auto& rem : res.removed) trace.push_back(Json{{"vertex", rem.vertex}, {"degree", rem.degree}});
    r["removed"] = std::move(trace);
    r["passes"] = res.passes;
    if (!o.output.empty()) {
        std::string text = format_rbox(res.core);
        write_file(o.output, text);
        r["core_digest"] = content_digest(text);
    }
    out << report.dump(2) << '\n';
    return kOk;
}

ExtractOptions extract_options(const Options& o) {
    ExtractOptions e;
    e.alpha = parse_alpha(o.alpha);
    e.theta = parse_theta(o.theta);
    e.peel = !o.no_peel;
    e.strategy = parse_strategy_flag(o.strategy);
    if (o.budget) e.budget = *o.budget;
    e.seed = o.seed;
    e.jobs = o.jobs;
    return e;
}

int run_extract(const Options& o, std::ostream& out) {
    Input in = load_input(o.file);
    Shape shape = parse_shape(o.shape);
    ExtractOptions eo = extract_options(o);

    Json params{{"shape", shape.sizes()},
                {"alpha", eo.alpha ? Json(rational_string(*eo.alpha)) : Json(nullptr)},
                {"theta", eo.theta ? Json(rational_string(*eo.theta)) : Json(nullptr)},
                {"peel", eo.peel},
                {"strategy", to_string(eo.strategy)},
                {"budget", eo.budget},
                {"guarantee", o.guarantee}};
    Json report = make_report("extract", input_json(in), std::move(params), eo.seed);
    auto& r = report["results"];
    int code = kOk;

    if (in.is_hypergraph()) {
        if (o.guarantee) throw UsageError("--guarantee applies to relation inputs");
        auto res = extract_multipartite(std::get<Hypergraph>(in.instance), shape, eo);
        r = extraction_json(res);
        r["pairwise_disjoint"] = true;
    } else if (o.guarantee) {
        if (eo.strategy != Strategy::exhaustive) throw UsageError("--guarantee runs the exhaustive strategy");
        auto g = verify_guarantee(std::get<Relation>(in.instance), shape, eo);
        r = extraction_json(g.extraction);
        r["averaging"] = Json{{"ceiling", g.averaging_ceiling.str()},
                              {"applies", g.averaging_applies},
                              {"holds", g.averaging_holds}};
        r["conditional"] = bound_json(g.conditional);
        if ((g.averaging_applies && !g.averaging_holds) || g.conditional.verdict == Verdict::fails) code = kFails;
    } else {
        r = extraction_json(extract_box(std::get<Relation>(in.instance), shape, eo));
    }
    out << report.dump(2) << '\n';
    return code;
}

Scale scale_from(const Options& o, const std::optional<Relation>& m) {
    if (o.n && !o.ln_n.empty()) throw UsageError("give only one of --n and --ln-n");
    if (o.n) return Scale::from_n(*o.n);
    if (!o.ln_n.empty()) return Scale::from_ln(parse_real(o.ln_n, "--ln-n"));
    if (m) return Scale::from_n(m->min_axis_size());
    throw UsageError("--n or --ln-n is required");
}

int verdict_code(Verdict v) { return v == Verdict::fails ? kFails : kOk; }

int run_bounds(const Options& o, std::ostream& out) {
    const std::string& what = o.bound;
    Json params;
    params["bound"] = what;

    if (what == "frontier") {
        const std::string& tname = o.frontier_target;
        auto target = parse_frontier_target(tname);
        if (!target) throw UsageError("--target: expected thm4, thm3 or thm1");
        if (!o.r) throw UsageError("--r is required");
        params["r"] = *o.r;
        params["target"] = tname;
        auto f = feasibility_frontier(*o.r, *target);
        Json report = make_report("bounds", nullptr, std::move(params), std::nullopt);
        auto& r = report["results"];
        r["target"] = to_string(f.target);
        r["r"] = f.r;
        r["ln_n_min"] = log_value(f.ln_n_min);
        r["ln_n_closed_form"] = log_value(f.ln_n_closed_form);
        r["n_min"] = f.n_min ? Json(std::to_string(*f.n_min)) : Json(nullptr);
        out << report.dump(2) << '\n';
        return kOk;
    }

    std::optional<Input> in;
    std::optional<Relation> rel;
    if (!o.file.empty()) {
        if (what != "thm4") throw UsageError("an input file is accepted only by 'bounds thm4'");
        in = load_input(o.file);
        rel = in->relation();
    }
    Scale scale = scale_from(o, rel);
    params["n"] = scale_json(scale);

    bool alpha_inferred = false;
    Real alpha;
    if (!o.alpha.empty()) {
        alpha = parse_real(o.alpha, "--alpha");
    } else if (rel && !rel->empty()) {
        Rational density(BigInt(rel->size()));
        for (auto n : rel->axis_sizes()) density /= n;
        alpha = Real(density);
        alpha_inferred = true;
    } else {
        throw UsageError("--alpha is required");
    }
    params["alpha"] = real_json(alpha);
    params["alpha_inferred"] = alpha_inferred;

    auto need_r = [&]() -> unsigned {
        if (o.r) return *o.r;
        if (rel) return static_cast<unsigned>(rel->arity());
        throw UsageError("--r is required");
    };

    Json results;
    int code = kOk;
    if (what == "thm1") {
        unsigned r = need_r();
        params["r"] = r;
        auto p = thm1_params(r, scale, alpha);
        results["s"] = p.s;
        results["t"] = p.t ? Json(p.t->str()) : Json(nullptr);
        results["t_log"] = log_value(p.t_log);
        results["report"] = bound_json(p.report);
        code = verdict_code(p.report.verdict);
    } else if (what == "thm2" || what == "thm3") {
        unsigned r = need_r();
        Shape shape = parse_shape(o.shape);
        params["r"] = r;
        params["shape"] = shape.sizes();
        params["t"] = o.t ? Json(*o.t) : Json(nullptr);
        auto b = what == "thm2" ? thm2_check(r, scale, alpha, shape, o.t) : thm3_check(r, scale, alpha, shape, o.t);
        results["report"] = bound_json(b);
        code = verdict_code(b.verdict);
    } else if (what == "thm4") {
        unsigned r = need_r();
        Shape shape = parse_shape(o.shape);
        params["r"] = r;
        params["shape"] = shape.sizes();
        std::optional<BigInt> exact;
        if (!o.count.empty()) {
            auto q = parse_rational(o.count);
            if (!q || denominator(*q) != 1 || *q < 0) throw UsageError("--count: expected a non-negative integer");
            exact = numerator(*q);
        } else if (rel) {
            exact = count_boxes(*rel, shape, CountOptions{o.jobs}).count;
        }
        params["count"] = exact ? Json(exact->str()) : Json(nullptr);
        auto b = thm4_bound(r, scale, alpha, shape, exact);
        b.alpha_inferred = alpha_inferred;
        results["report"] = bound_json(b);
        code = verdict_code(b.verdict);
    } else if (what == "claim1") {
        unsigned r = need_r();
        Shape shape = parse_shape(o.shape);
        params["r"] = r;
        params["shape"] = shape.sizes();
        auto c = claim1_check(r, scale, alpha, shape);
        results = claim_json(c);
        if (c.hypothesis && !c.conclusion) code = kFails;
    } else if (what == "claim2") {
        unsigned r = need_r();
        params["r"] = r;
        auto c = claim2_check(r, scale, alpha);
        results = claim_json(c);
        if (c.hypothesis && !c.conclusion) code = kFails;
    } else if (what == "r2") {
        auto p = r2_remark_params(scale, alpha);
        results["s"] = p.s;
        results["t_log"] = log_value(p.t_log);
        results["report"] = bound_json(p.report);
        code = verdict_code(p.report.verdict);
    } else {
        throw UsageError("bounds: unknown target '" + what +
                         "' (expected thm1, thm2, thm3, thm4, claim1, claim2, r2 or frontier)");
    }

    Json report = make_report("bounds", in ? input_json(*in) : Json(nullptr), std::move(params), std::nullopt);
    report["results"] = std::move(results);
    out << report.dump(2) << '\n';
    return code;
}

int run_verify(const Options& o, std::ostream& out) {
    VerifyOptions vo;
    vo.shape = parse_shape(o.shape);
    vo.alpha = parse_alpha(o.alpha);
    vo.budget = o.budget.value_or(kDefaultNaiveBudget);
    vo.orders = o.orders;
    vo.seed = o.seed;

    Json input;
    Relation m;
    if (!o.file.empty()) {
        Input in = load_input(o.file);
        m = in.relation();
        input = input_json(in);
    } else {
        if (!o.r || !o.n) throw UsageError("verify: give an input file, or --r and --n to generate one");
        if (!vo.alpha) throw UsageError("verify: --alpha sets the density of the generated instance");
        GenSpec spec;
        spec.kind = GenKind::bernoulli;
        spec.r = *o.r;
        spec.axis_sizes.assign(*o.r, static_cast<std::uint32_t>(*o.n));
        spec.density = to_double(*vo.alpha);
        spec.seed = o.seed;
        validate(spec);
        auto g = gen(spec);
        m = g.relation();
        std::string text = format_rbox(m);
        input = Json{{"format", "RBOX 1"},  {"digest", content_digest(text)}, {"generator", g.generator},
                     {"rng", Rng::kName},   {"r", m.arity()},                 {"axis_sizes", m.axis_sizes()},
                     {"tuples", m.size()}};
    }
    if (vo.shape.arity() != m.arity())
        throw UsageError("--shape: expected " + std::to_string(m.arity()) + " entries for an arity-" +
                         std::to_string(m.arity()) + " relation");

    Json params{{"shape", vo.shape.sizes()},
                {"alpha", vo.alpha ? Json(rational_string(*vo.alpha)) : Json(nullptr)},
                {"budget", vo.budget},
                {"orders", vo.orders}};
    Json report = make_report("verify", std::move(input), std::move(params), vo.seed);
    auto checks = run_invariants(m, vo);
    Json list = Json::array();
    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& c : checks) {
        list.push_back(Json{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
        switch (c.status) {
            case CheckStatus::pass: ++passed; break;
            case CheckStatus::fail: ++failed; break;
            case CheckStatus::skipped: ++skipped; break;
        }
    }
    auto& r = report["results"];
    r["checks"] = std::move(list);
    r["passed"] = passed;
    r["failed"] = failed;
    r["skipped"] = skipped;
    r["ok"] = failed == 0;
    out << report.dump(2) << '\n';
    return failed == 0 ? kOk : kFails;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Boxes in dense r-dimensional 0-1 relations: counting, peeling, extraction and bounds", kToolName};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded relation or hypergraph");
    gen_cmd->add_option("--kind", o.kind, "bernoulli | exact_count | planted_box | hypergraph_gnp | hypergraph_exact");
    gen_cmd->add_option("--r", o.r, "Arity");
    gen_cmd->add_option("--n", o.n, "Size of every axis (vertices for hypergraphs)");
    gen_cmd->add_option("--axes", o.axes, "Axis sizes n1,...,nr");
    gen_cmd->add_option("--density", o.density, "Inclusion probability");
    gen_cmd->add_option("--m", o.m, "Exact number of tuples or edges");
    gen_cmd->add_option("--planted", o.planted, "Shape of a planted box");
    gen_cmd->add_option("--seed", o.seed, "Random seed");
    gen_cmd->add_option("--output,-o", o.output, "Write the instance here and print a report");

    auto* count_cmd = app.add_subcommand("count", "Count boxes of a shape");
    count_cmd->add_option("file", o.file, "RBOX or HG file")->required();
    count_cmd->add_option("--shape", o.shape, "s1,...,sr")->required();
    count_cmd->add_flag("--oracle", o.oracle, "Cross-check against the brute-force counter");
    count_cmd->add_option("--budget", o.budget, "Oracle candidate budget");
    count_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* peel_cmd = app.add_subcommand("peel", "Peel low-degree last-axis vertices");
    peel_cmd->add_option("file", o.file, "RBOX or HG file")->required();
    peel_cmd->add_option("--alpha", o.alpha, "Density for the default threshold (decimal or p/q)");
    peel_cmd->add_option("--theta", o.theta, "Explicit threshold");
    peel_cmd->add_option("--output,-o", o.output, "Write the peeled core as RBOX");

    auto* ext_cmd = app.add_subcommand("extract", "Extract a box with a prescribed prefix shape");
    ext_cmd->add_option("file", o.file, "RBOX or HG file")->required();
    ext_cmd->add_option("--shape", o.shape, "s1,...,s(r-1)")->required();
    ext_cmd->add_option("--alpha", o.alpha, "Density for the default threshold");
    auto* theta_opt = ext_cmd->add_option("--theta", o.theta, "Explicit peeling threshold");
    auto* no_peel = ext_cmd->add_flag("--no-peel", o.no_peel, "Search the relation without peeling");
    theta_opt->excludes(no_peel);
    ext_cmd->add_option("--strategy", o.strategy, "exhaustive | greedy | sampled");
    ext_cmd->add_option("--budget", o.budget, "Exhaustive candidate cap or number of samples");
    ext_cmd->add_option("--seed", o.seed, "Seed for the sampled strategy");
    ext_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    ext_cmd->add_flag("--guarantee", o.guarantee, "Also check the averaging floor and the conditional bound");

    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a bound, claim or feasibility frontier");
    bounds_cmd->add_option("bound", o.bound, "thm1 | thm2 | thm3 | thm4 | claim1 | claim2 | r2 | frontier")
        ->required();
    bounds_cmd->add_option("file", o.file, "Relation for thm4 (exact count, inferred alpha)");
    bounds_cmd->add_option("--r", o.r, "Arity");
    bounds_cmd->add_option("--n", o.n, "Common axis size");
    bounds_cmd->add_option("--ln-n", o.ln_n, "Natural log of the axis size (decimal or p/q)");
    bounds_cmd->add_option("--alpha", o.alpha, "Density (decimal or p/q)");
    bounds_cmd->add_option("--shape", o.shape, "Shape");
    bounds_cmd->add_option("--t", o.t, "Measured last-part size");
    bounds_cmd->add_option("--count", o.count, "Exact box count");
    bounds_cmd->add_option("--target", o.frontier_target, "Frontier target: thm4 | thm3 | thm1");
    bounds_cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite on an instance");
    verify_cmd->add_option("file", o.file, "RBOX or HG file (omit to generate one)");
    verify_cmd->add_option("--r", o.r, "Arity of the generated instance");
    verify_cmd->add_option("--n", o.n, "Axis size of the generated instance");
    verify_cmd->add_option("--alpha", o.alpha, "Density, also used for the peeling threshold");
    verify_cmd->add_option("--shape", o.shape, "s1,...,sr")->required();
    verify_cmd->add_option("--seed", o.seed, "Seed for generation and scan orders");
    verify_cmd->add_option("--budget", o.budget, "Oracle and extraction budget");
    verify_cmd->add_option("--orders", o.orders, "Random scan orders for the peeling check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (gen_cmd->parsed()) return run_gen(o, out);
        if (count_cmd->parsed()) return run_count(o, out);
        if (peel_cmd->parsed()) return run_peel(o, out);
        if (ext_cmd->parsed()) return run_extract(o, out);
        if (bounds_cmd->parsed()) return run_bounds(o, out);
        if (verify_cmd->parsed()) return run_verify(o, out);
    } catch (const BudgetExceeded& e) {
        err << "rbox: budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const EmptySearchSpace& e) {
        err << "rbox: empty search space: " << e.what() << '\n';
        return kFails;
    } catch (const ParseError& e) {
        err << "rbox: parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "rbox: " << e.what() << '\n';
        return kUsage;
    } catch (const std::logic_error& e) {
        err << "rbox: internal check failed: " << e.what() << '\n';
        return kFails;
    } catch (const std::exception& e) {
        err << "rbox: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace rbox
