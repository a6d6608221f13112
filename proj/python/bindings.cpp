#include <optional>
#include <string>
#include <vector>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dipw/error.hpp"
#include "dipw/obstacles.hpp"
#include "dipw/oracle.hpp"
#include "dipw/sampler.hpp"
#include "dipw/separations.hpp"
#include "dipw/solver.hpp"

namespace py = pybind11;
using namespace dipw;

namespace {

using Bags = std::vector<std::vector<Vertex>>;

VertexSet to_set(const Digraph& g, const std::vector<Vertex>& members) { return VertexSet(g.order(), members); }

Bags to_bags(const PathDecomposition& pd) {
  Bags out;
  for (const auto& bag : pd.bags) out.push_back(bag.members());
  return out;
}

PathDecomposition from_bags(const Digraph& g, const Bags& bags) {
  PathDecomposition pd;
  for (const auto& bag : bags) pd.bags.emplace_back(g.order(), bag);
  return pd;
}

py::dict stats_dict(const SolveStats& s) {
  py::dict d;
  d["instance_count"] = s.instance_count;
  d["base_count"] = s.base_count;
  d["max_depth"] = s.max_depth;
  d["divide_count"] = s.divide_count;
  d["branch_count"] = s.branch_count;
  d["max_fanout_left"] = s.max_fanout_left;
  d["max_fanout_right"] = s.max_fanout_right;
  return d;
}

std::optional<std::string> as_json(const std::optional<DegreeTangle>& c) {
  return c ? std::optional(write_certificate(*c)) : std::nullopt;
}

std::optional<std::string> as_json(const std::optional<MatchingTangle>& c) {
  return c ? std::optional(write_certificate(*c)) : std::nullopt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Directed pathwidth, obstacle certificates and uniform-marginal independent sets";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Digraph>(m, "Digraph")
      .def(py::init<std::size_t, const std::vector<Edge>&>(), py::arg("n"), py::arg("edges"))
      .def_property_readonly("order", &Digraph::order)
      .def_property_readonly("edge_count", &Digraph::edge_count)
      .def("edges", &Digraph::edges)
      .def("has_edge", &Digraph::has_edge)
      .def("out_degree", &Digraph::out_degree)
      .def("in_degree", &Digraph::in_degree)
      .def("d_plus", [](const Digraph& g, const std::vector<Vertex>& u) { return g.d_plus(to_set(g, u)); })
      .def("d_minus", [](const Digraph& g, const std::vector<Vertex>& u) { return g.d_minus(to_set(g, u)); })
      .def("to_text", [](const Digraph& g) { return write_digraph(g); })
      .def_static("from_text", &read_digraph)
      .def(py::self == py::self)
      .def("__repr__", [](const Digraph& g) {
        return "<Digraph n=" + std::to_string(g.order()) + " m=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("h_index", &h_index);
  m.def("semicomplete_completion", &semicomplete_completion);
  m.def("random_digraph", &random_digraph, py::arg("n"), py::arg("density"), py::arg("seed"));
  m.def("random_h_semicomplete", &random_h_semicomplete, py::arg("n"), py::arg("h"), py::arg("seed"));
  m.def("random_banded_h_semicomplete", &random_banded_h_semicomplete, py::arg("n"), py::arg("h"), py::arg("band"),
        py::arg("seed"));
  m.def("directed_cycle", &directed_cycle);
  m.def("directed_path", &directed_path);
  m.def("transitive_tournament", &transitive_tournament);
  m.def("complete_biorientation", &complete_biorientation);

  m.def(
      "mu", [](const Digraph& g, const std::vector<Vertex>& s, const std::vector<Vertex>& t) {
        return mu(g, to_set(g, s), to_set(g, t));
      },
      py::arg("g"), py::arg("s"), py::arg("t"));
  m.def(
      "mu_prime", [](const Digraph& g, const std::vector<Vertex>& s, const std::vector<Vertex>& t) {
        return mu_prime(g, to_set(g, s), to_set(g, t));
      },
      py::arg("g"), py::arg("s"), py::arg("t"));
  m.def(
      "gamma", [](const Digraph& g, const std::vector<Vertex>& s, const std::vector<Vertex>& t) {
        return gamma(g, to_set(g, s), to_set(g, t));
      },
      py::arg("g"), py::arg("s"), py::arg("t"));
  m.def(
      "min_separation",
      [](const Digraph& g, const std::vector<Vertex>& s,
         const std::vector<Vertex>& t) -> std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> {
        const auto sep = min_st_separation(g, to_set(g, s), to_set(g, t));
        if (!sep) return std::nullopt;
        return std::pair{sep->a.members(), sep->b.members()};
      },
      py::arg("g"), py::arg("s"), py::arg("t"), "Leftmost minimum S-T separation (A, B), or None if none exists.");

  m.def(
      "solve",
      [](const Digraph& g, std::size_t k) -> std::optional<Bags> {
        const SolveResult res = solve(g, k);
        if (!res.found()) return std::nullopt;
        return to_bags(*res.decomposition);
      },
      py::arg("g"), py::arg("k"), "Bags of a decomposition of width <= k, or None if pw(g) > k.");
  m.def(
      "solve_stats", [](const Digraph& g, std::size_t k) { return stats_dict(solve(g, k).stats); }, py::arg("g"),
      py::arg("k"));
  m.def(
      "compute_pathwidth",
      [](const Digraph& g) {
        const PathwidthResult res = compute_pathwidth(g);
        return std::pair{res.width, to_bags(res.decomposition)};
      },
      py::arg("g"));
  m.def("oracle_pathwidth", &oracle_pathwidth, py::arg("g"), py::arg("cap") = kDefaultOracleCap);
  m.def("oracle_ordering", &oracle_ordering, py::arg("g"), py::arg("cap") = kDefaultOracleCap);
  m.def("ordering_width", &ordering_width, py::arg("g"), py::arg("ordering"));
  m.def(
      "validate_decomposition",
      [](const Digraph& g, const Bags& bags) {
        const DecompositionReport rep = validate_decomposition(g, from_bags(g, bags));
        return py::make_tuple(rep.valid, rep.width, rep.violation);
      },
      py::arg("g"), py::arg("bags"), "(valid, width, violation) for a list of bags.");

  m.def(
      "find_degree_tangle", [](const Digraph& g, std::size_t k) { return as_json(find_degree_tangle(g, k)); },
      py::arg("g"), py::arg("k"), "Certificate JSON text or None.");
  m.def(
      "find_matching_tangle",
      [](const Digraph& g, std::size_t k, std::optional<std::size_t> d) {
        return as_json(d ? find_matching_tangle(g, *d, k) : find_best_matching_tangle(g, k));
      },
      py::arg("g"), py::arg("k"), py::arg("d") = py::none(), "Certificate JSON text or None.");
  m.def(
      "find_spider",
      [](const Digraph& g) -> std::optional<std::string> {
        const auto c = find_spider(g);
        return c ? std::optional(write_certificate(*c)) : std::nullopt;
      },
      py::arg("g"));
  m.def(
      "verify_certificate",
      [](const Digraph& g, const std::string& text) { return verify(g, read_certificate(text, g.order())).lower_bound; },
      py::arg("g"), py::arg("certificate"), "Lower bound certified by the JSON text, or None if rejected.");
  m.def("degree_interval_lower_bound", &degree_interval_lower_bound);
  m.def("degree_interval_count", &degree_interval_count, py::arg("g"), py::arg("d1"), py::arg("d2"));
  m.def("wildness", &wildness, py::arg("g"), py::arg("v"));

  py::class_<UGraph>(m, "UGraph")
      .def(py::init<std::size_t, const std::vector<Edge>&>(), py::arg("n"), py::arg("edges"))
      .def_property_readonly("order", &UGraph::order)
      .def_property_readonly("edge_count", &UGraph::edge_count)
      .def("edges", &UGraph::edges)
      .def("has_edge", &UGraph::has_edge)
      .def("degree", &UGraph::degree)
      .def("max_degree", &UGraph::max_degree)
      .def("neighbors", &UGraph::neighbors)
      .def("is_independent",
           [](const UGraph& g, const std::vector<Vertex>& set) { return g.is_independent(VertexSet(g.order(), set)); })
      .def("to_text", [](const UGraph& g) { return write_ugraph(g); })
      .def_static("from_text", &read_ugraph)
      .def(py::self == py::self)
      .def("__repr__", [](const UGraph& g) {
        return "<UGraph n=" + std::to_string(g.order()) + " m=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("non_adjacency_graph", &non_adjacency_graph);
  m.def("random_bounded_degree_graph", &random_bounded_degree_graph, py::arg("n"), py::arg("d"), py::arg("density"),
        py::arg("seed"));
  m.def("erdos_kelly_feasible", &erdos_kelly_feasible, py::arg("degrees"), py::arg("d"), py::arg("m"));
  m.def("regular_completion", &regular_completion, py::arg("g"), py::arg("d"), py::arg("total"));
  m.def("sampler_marginal", &sampler_marginal, py::arg("d"));
  m.def(
      "sample_independent_set",
      [](const UGraph& g, std::size_t d, std::uint64_t seed) { return sample_independent_set(g, d, seed).members(); },
      py::arg("g"), py::arg("d"), py::arg("seed"));
  m.def(
      "marginal_check",
      [](const UGraph& g, std::size_t d, std::size_t trials, const std::vector<std::vector<Vertex>>& sets,
         std::uint64_t seed, std::size_t jobs) {
        std::vector<VertexSet> targets;
        for (const auto& s : sets) targets.emplace_back(g.order(), s);
        MarginalReport rep;
        {
          py::gil_scoped_release release;
          rep = marginal_and_tail_check(g, d, trials, targets, seed, jobs);
        }
        py::dict out;
        out["marginals_ok"] = rep.marginals_ok();
        out["tails_ok"] = rep.tails_ok();
        out["dependent_samples"] = rep.dependent_samples;
        std::vector<double> freq;
        for (const auto& v : rep.vertices) freq.push_back(v.frequency);
        out["frequencies"] = freq;
        out["csv"] = rep.to_csv();
        return out;
      },
      py::arg("g"), py::arg("d"), py::arg("trials"), py::arg("sets") = std::vector<std::vector<Vertex>>{},
      py::arg("seed"), py::arg("jobs") = 1);
}
