#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "cuttree/cutting.hpp"
#include "cuttree/discrete_limit.hpp"
#include "cuttree/ptree.hpp"
#include "cuttree/real_tree.hpp"
#include "cuttree/shuffle.hpp"
#include "cuttree/stats.hpp"
#include "cuttree/theta.hpp"
#include "cuttree/verify.hpp"

namespace py = pybind11;
using namespace cuttree;

namespace {

py::dict subset_tree_to_dict(const SubsetTree& s) {
  py::dict out;
  out["root"] = s.root;
  out["vertices"] = s.vertices;
  py::dict parent;
  for (const auto& [v, p] : s.parent) parent[py::int_(v)] = p;
  out["parent"] = parent;
  return out;
}

py::dict verdict_to_dict(const Verdict& v) {
  py::dict out;
  out["name"] = v.name;
  out["statistic"] = v.statistic;
  out["threshold"] = v.threshold;
  out["pass"] = v.pass;
  out["seed"] = v.seed;
  out["n_samples"] = v.n_samples;
  out["note"] = v.note;
  return out;
}

}  // namespace

PYBIND11_MODULE(_cuttree, m) {
  m.doc() = "Cutting, shuffling and continuum limits of weighted random trees";

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream") = 0)
      .def("stream", &Rng::stream)
      .def("u01", &Rng::u01)
      .def("exponential", &Rng::exponential);

  py::class_<ProbWeights>(m, "ProbWeights")
      .def(py::init<std::vector<double>>())
      .def_static("uniform", &ProbWeights::uniform)
      .def_property_readonly("n", &ProbWeights::n)
      .def("p", &ProbWeights::p)
      .def_property_readonly("values", &ProbWeights::values)
      .def("sum_squares", &ProbWeights::sum_squares);

  py::class_<RootedTree>(m, "RootedTree")
      .def(py::init<int, int>(), py::arg("n"), py::arg("root"))
      .def_readwrite("n", &RootedTree::n)
      .def_readwrite("root", &RootedTree::root)
      .def_readwrite("parent", &RootedTree::parent)
      .def("__eq__", [](const RootedTree& a, const RootedTree& b) { return a == b; });

  m.def("validate", &validate);
  m.def("tree_key", [](const RootedTree& t) { return py::bytes(tree_key(t)); });
  m.def("depths", &depths);
  m.def("graph_distance", &graph_distance);
  m.def("distance_matrix", &distance_matrix);

  m.def("sample_ptree", &sample_ptree);
  m.def("ptree_pmf", &ptree_pmf);
  m.def("enumerate_rooted_trees", &enumerate_rooted_trees);
  m.def("reroot", &reroot);
  m.def("span",
        [](const RootedTree& t, const std::vector<int>& targets) {
          return subset_tree_to_dict(span(t, targets));
        });
  m.def("subtree_above", &subtree_above);
  m.def("repeat_times", [](const ProbWeights& w, int count, Rng& rng) {
    RepeatTimes r = repeat_times(w, count, rng);
    return py::make_tuple(r.times, r.walk);
  });

  py::class_<OneCutRecord>(m, "OneCutRecord")
      .def_readonly("cut_tree", &OneCutRecord::cut_tree)
      .def_readonly("cut_sequence", &OneCutRecord::cut_sequence)
      .def_readonly("marks", &OneCutRecord::marks)
      .def_readonly("target", &OneCutRecord::target)
      .def_readonly("original_root", &OneCutRecord::original_root)
      .def("cut_count", &OneCutRecord::cut_count);

  py::class_<KCutRecord>(m, "KCutRecord")
      .def_readonly("cut_tree", &KCutRecord::cut_tree)
      .def_readonly("cut_sequence", &KCutRecord::cut_sequence)
      .def_readonly("targets", &KCutRecord::targets)
      .def_readonly("mark_sets", &KCutRecord::mark_sets)
      .def_readonly("mark_of", &KCutRecord::mark_of)
      .def_readonly("effective_sets", &KCutRecord::effective_sets)
      .def_readonly("canonical_order", &KCutRecord::canonical_order)
      .def_readonly("original_root", &KCutRecord::original_root)
      .def_property_readonly("backbone",
                             [](const KCutRecord& r) { return subset_tree_to_dict(r.backbone); })
      .def("cut_count", &KCutRecord::cut_count);

  py::class_<CompleteCutRecord>(m, "CompleteCutRecord")
      .def_readonly("cut_tree", &CompleteCutRecord::cut_tree)
      .def_readonly("permutation", &CompleteCutRecord::permutation)
      .def_readonly("mark_sets", &CompleteCutRecord::mark_sets)
      .def_readonly("mark_of", &CompleteCutRecord::mark_of)
      .def_readonly("original_root", &CompleteCutRecord::original_root);

  m.def("cut_one", &cut_one);
  m.def("cut_k", &cut_k);
  m.def("coupled_cut_family", &coupled_cut_family);
  m.def("cut_complete", &cut_complete);

  m.def("canonical_order", [](const RootedTree& h, const std::vector<int>& targets) {
    return canonical_order(span(h, targets), targets);
  });
  m.def("rewire", &rewire);
  m.def("sample_marks", &sample_marks);
  m.def("shuff_one", &shuff_one);
  m.def("shuff_k", &shuff_k);
  m.def("shuff_complete", &shuff_complete);
  m.def("reverse_one", &reverse_one);
  m.def("reverse_k", &reverse_k);
  m.def("reverse_complete", &reverse_complete);
  m.def("draw_vertex", &draw_vertex);

  py::class_<ThetaParam>(m, "ThetaParam")
      .def(py::init(
          [](const std::vector<double>& values) { return ThetaParam::from_values(values); }))
      .def_property_readonly("theta0", &ThetaParam::theta0)
      .def_property_readonly("thetas", &ThetaParam::thetas);

  m.def("r1_length_survival", &r1_length_survival);
  m.def("build_pn", &build_pn);

  py::class_<RealTree>(m, "RealTree")
      .def_readonly("leaves", &RealTree::leaves)
      .def_readonly("cutpoints", &RealTree::cutpoints)
      .def_readonly("joinpoints", &RealTree::joinpoints)
      .def_readonly("total_length", &RealTree::total_length)
      .def_readonly("branch_atoms", &RealTree::branch_atoms)
      .def("node_count", &RealTree::node_count)
      .def("metric_distance", &RealTree::metric_distance);

  m.def("line_break", &line_break);
  m.def("genealogy_matrix",
        [](const ThetaParam& theta, int k, int m_leaves, py::object horizon, Rng& rng) {
          const double h = horizon.is_none() ? std::numeric_limits<double>::infinity()
                                             : horizon.cast<double>();
          auto g = genealogy_matrix(theta, k, m_leaves, h, rng);
          py::dict out;
          out["matrix"] = g.matrix;
          out["residual_mass"] = g.residual_mass;
          out["horizon_reached"] = g.horizon_reached;
          out["stop_time"] = g.stop_time;
          return out;
        },
        py::arg("theta"), py::arg("k"), py::arg("m"), py::arg("horizon") = py::none(),
        py::arg("rng"));

  m.def("shuffle_walk", [](const RootedTree& h, const ProbWeights& w, int anchor,
                           const std::vector<int>& points, Rng& rng) {
    WalkMatrices wm = shuffle_walk(h, w, anchor, points, rng);
    py::dict out;
    out["merge_steps"] = wm.merge_steps;
    out["meet_index"] = wm.meet_index;
    out["distance"] = wm.distance;
    out["attach_marks"] = wm.attach_marks;
    return out;
  });

  m.def("exact_span_law", &exact_span_law);
  m.def("exact_tree_law", [](const ProbWeights& w) {
    py::dict out;
    for (const auto& [key, p] : exact_tree_law(w)) out[py::bytes(key)] = p;
    return out;
  });
  m.def("ks_test", [](std::vector<double> samples, const std::function<double(double)>& cdf) {
    KsResult r = ks_test(std::move(samples), cdf);
    return py::make_tuple(r.statistic, r.p_value);
  });
  m.def("ks_two_sample", [](std::vector<double> a, std::vector<double> b) {
    KsResult r = ks_two_sample(std::move(a), std::move(b));
    return py::make_tuple(r.statistic, r.p_value);
  });
  m.def("is_tree_metric", &is_tree_metric);

  m.def("verify_suite_names", &verify_suite_names);
  m.def("run_verify_suite",
        [](const std::string& name, py::object seed, int threads) {
          std::optional<std::uint64_t> s;
          if (!seed.is_none()) s = seed.cast<std::uint64_t>();
          return verdict_to_dict(run_verify_suite(name, s, threads));
        },
        py::arg("name"), py::arg("seed") = py::none(), py::arg("threads") = 2);
}
