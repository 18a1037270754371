// Python bindings for the rbox core. Counts cross the boundary as Python ints
// and exact rationals as "p/q" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "rbox/bounds.hpp"
#include "rbox/counting.hpp"
#include "rbox/error.hpp"
#include "rbox/extraction.hpp"
#include "rbox/generators.hpp"
#include "rbox/invariants.hpp"
#include "rbox/io.hpp"
#include "rbox/peeling.hpp"
#include "rbox/relation.hpp"

namespace py = pybind11;
using namespace rbox;

namespace {

py::int_ to_py(const BigInt& z) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(z.str().c_str(), nullptr, 10));
}

std::string rational_text(const Rational& q) {
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

std::optional<Rational> rational_arg(const std::optional<std::string>& text, const char* name) {
    if (!text) return std::nullopt;
    auto q = parse_rational(*text);
    if (!q) throw InvalidArgument(std::string(name) + ": not a number: " + *text);
    return q;
}

py::dict extraction_dict(const ExtractionResult& e) {
    py::dict d;
    d["parts"] = e.box.parts;
    d["t"] = e.t;
    d["strategy"] = to_string(e.strategy);
    d["support_sum"] = to_py(e.support_sum);
    d["candidates"] = to_py(e.candidates);
    d["averaging_floor"] = rational_text(e.averaging_floor);
    d["peeled"] = e.peeled;
    d["theta"] = rational_text(e.theta);
    d["alpha"] = rational_text(e.alpha);
    d["core_size"] = e.core_size;
    d["survivors"] = e.survivors;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Box counting, peeling and extraction on r-ary 0-1 relations";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<EmptySearchSpace>(m, "EmptySearchSpace", PyExc_LookupError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Relation>(m, "Relation")
        .def(py::init([](std::vector<std::uint32_t> axes, const std::vector<Tuple>& tuples) {
                 return Relation::from_tuples(std::move(axes), tuples);
             }),
             py::arg("axis_sizes"), py::arg("tuples"))
        .def_static("full", &Relation::full, py::arg("axis_sizes"))
        .def_static("parse", &parse_rbox, py::arg("text"))
        .def("format", &format_rbox)
        .def_property_readonly("arity", &Relation::arity)
        .def_property_readonly("axis_sizes", &Relation::axis_sizes)
        .def("tuples", &Relation::tuples)
        .def("__len__", &Relation::size)
        .def("__contains__", [](const Relation& r, const Tuple& t) { return r.contains(t); })
        .def("__eq__", [](const Relation& a, const Relation& b) { return a == b; })
        .def("__repr__", [](const Relation& r) {
            std::string axes;
            for (auto n : r.axis_sizes()) axes += (axes.empty() ? "" : ", ") + std::to_string(n);
            return "Relation(axis_sizes=[" + axes + "], size=" + std::to_string(r.size()) + ")";
        });

    m.def("count_boxes",
          [](const Relation& r, const std::vector<std::uint32_t>& shape, unsigned jobs) {
              return to_py(count_boxes(r, Shape(shape), CountOptions{jobs}).count);
          },
          py::arg("relation"), py::arg("shape"), py::arg("jobs") = 1);

    m.def("naive_count_boxes",
          [](const Relation& r, const std::vector<std::uint32_t>& shape, std::uint64_t budget) {
              return to_py(naive_count_boxes(r, Shape(shape), budget).count);
          },
          py::arg("relation"), py::arg("shape"), py::arg("budget") = kDefaultNaiveBudget);

    m.def("support_sum",
          [](const Relation& r, const std::vector<std::uint32_t>& prefix) { return to_py(support_sum(r, Shape(prefix))); },
          py::arg("relation"), py::arg("prefix_shape"));

    m.def("peel",
          [](const Relation& r, const std::optional<std::string>& theta, const std::optional<std::string>& alpha) {
              auto q = rational_arg(theta, "theta");
              Rational th = q ? *q : default_theta(r, rational_arg(alpha, "alpha")).theta;
              auto res = peel(r, th);
              py::dict d;
              d["theta"] = rational_text(res.theta);
              d["survivors"] = res.survivors;
              d["core"] = res.core;
              py::list removed;
              for (const auto& rem : res.removed) removed.append(py::make_tuple(rem.vertex, rem.degree));
              d["removed"] = removed;
              d["passes"] = res.passes;
              return d;
          },
          py::arg("relation"), py::arg("theta") = py::none(), py::arg("alpha") = py::none());

    m.def("extract_box",
          [](const Relation& r, const std::vector<std::uint32_t>& prefix, const std::string& strategy, bool use_peel,
             const std::optional<std::string>& alpha, const std::optional<std::string>& theta, std::uint64_t budget,
             std::uint64_t seed, unsigned jobs) {
              ExtractOptions o;
              auto s = parse_strategy(strategy);
              if (!s) throw InvalidArgument("strategy: expected exhaustive, greedy or sampled");
              o.strategy = *s;
              o.peel = use_peel;
              o.alpha = rational_arg(alpha, "alpha");
              o.theta = rational_arg(theta, "theta");
              o.budget = budget;
              o.seed = seed;
              o.jobs = jobs;
              return extraction_dict(extract_box(r, Shape(prefix), o));
          },
          py::arg("relation"), py::arg("prefix_shape"), py::arg("strategy") = "exhaustive", py::arg("peel") = true,
          py::arg("alpha") = py::none(), py::arg("theta") = py::none(), py::arg("budget") = 1'000'000,
          py::arg("seed") = 0, py::arg("jobs") = 1);

    m.def("extract_multipartite",
          [](unsigned r, std::uint32_t n, const std::vector<Tuple>& edges, const std::vector<std::uint32_t>& prefix,
             bool use_peel) {
              ExtractOptions o;
              o.peel = use_peel;
              return extraction_dict(extract_multipartite(Hypergraph(r, n, edges), Shape(prefix), o));
          },
          py::arg("r"), py::arg("n"), py::arg("edges"), py::arg("prefix_shape"), py::arg("peel") = true);

    m.def("generate_relation",
          [](const std::string& kind, std::vector<std::uint32_t> axes, std::optional<double> density,
             std::optional<std::uint64_t> count, std::optional<std::vector<std::uint32_t>> planted, std::uint64_t seed) {
              GenSpec spec;
              auto k = parse_gen_kind(kind);
              if (!k) throw InvalidArgument("kind: unknown generator " + kind);
              spec.kind = *k;
              spec.r = static_cast<unsigned>(axes.size());
              spec.axis_sizes = std::move(axes);
              spec.density = density;
              spec.count = count;
              if (planted) spec.planted = Shape(*planted);
              spec.seed = seed;
              auto out = gen(spec);
              if (!out.is_relation()) throw InvalidArgument("kind: " + kind + " produces a hypergraph");
              return out.relation();
          },
          py::arg("kind"), py::arg("axis_sizes"), py::arg("density") = py::none(), py::arg("count") = py::none(),
          py::arg("planted") = py::none(), py::arg("seed") = 0);

    m.def("feasibility_frontier",
          [](unsigned r, const std::string& target) {
              auto t = parse_frontier_target(target);
              if (!t) throw InvalidArgument("target: expected thm4, thm3 or thm1");
              auto f = feasibility_frontier(r, *t);
              py::dict d;
              d["ln_n_min"] = f.ln_n_min;
              d["ln_n_closed_form"] = f.ln_n_closed_form;
              d["n_min"] = f.n_min ? py::object(py::int_(*f.n_min)) : py::object(py::none());
              return d;
          },
          py::arg("r"), py::arg("target") = "thm4");

    m.def("verify",
          [](const Relation& r, const std::vector<std::uint32_t>& shape, std::uint64_t seed, unsigned orders) {
              VerifyOptions o;
              o.shape = Shape(shape);
              o.seed = seed;
              o.orders = orders;
              py::list out;
              for (const auto& res : run_invariants(r, o)) {
                  py::dict d;
                  d["name"] = res.name;
                  d["status"] = to_string(res.status);
                  d["detail"] = res.detail;
                  out.append(d);
              }
              return out;
          },
          py::arg("relation"), py::arg("shape"), py::arg("seed") = 0, py::arg("orders") = 100);

    m.def("content_digest", [](const std::string& bytes) { return content_digest(bytes); }, py::arg("data"));
}
