#include "cuttree/io.hpp"

#include <stdexcept>

namespace cuttree {

using nlohmann::json;

json tree_to_json(const RootedTree& t) {
  json parent = json::object();
  for (int v = 1; v <= t.n; ++v)
    if (v != t.root) parent[std::to_string(v)] = t.parent[v];
  return json{{"n", t.n}, {"root", t.root}, {"parent", parent}};
}

RootedTree tree_from_json(const json& j) {
  RootedTree t(j.at("n").get<int>(), j.at("root").get<int>());
  for (const auto& [key, value] : j.at("parent").items())
    t.parent.at(std::stoul(key)) = value.get<int>();
  validate(t);
  return t;
}

json weights_to_json(const ProbWeights& w) { return json(w.values()); }

ProbWeights weights_from_json(const json& j) {
  return ProbWeights(j.get<std::vector<double>>());
}

namespace {

json marks_to_json(const std::unordered_map<int, int>& marks) {
  json out = json::object();
  for (const auto& [successor, mark] : marks) out[std::to_string(successor)] = mark;
  return out;
}

std::unordered_map<int, int> marks_from_json(const json& j) {
  std::unordered_map<int, int> out;
  for (const auto& [key, value] : j.items()) out[std::stoi(key)] = value.get<int>();
  return out;
}

}  // namespace

json record_to_json(const OneCutRecord& rec) {
  json j = tree_to_json(rec.cut_tree);
  j["mode"] = "one";
  j["cuts"] = rec.cut_sequence;
  json marks = json::object();
  for (std::size_t i = 0; i + 1 < rec.cut_sequence.size(); ++i)
    marks[std::to_string(rec.cut_sequence[i + 1])] = rec.marks[i];
  j["marks"] = marks;
  j["targets"] = std::vector<int>{rec.target};
  j["original_root"] = rec.original_root;
  return j;
}

json record_to_json(const KCutRecord& rec) {
  json j = tree_to_json(rec.cut_tree);
  j["mode"] = "k";
  j["cuts"] = rec.cut_sequence;
  j["marks"] = marks_to_json(rec.mark_of);
  j["targets"] = rec.targets;
  j["original_root"] = rec.original_root;
  j["effective_sets"] = rec.effective_sets;
  j["canonical_order"] = rec.canonical_order;
  return j;
}

json record_to_json(const CompleteCutRecord& rec) {
  json j = tree_to_json(rec.cut_tree);
  j["mode"] = "complete";
  j["cuts"] = rec.permutation;
  j["marks"] = marks_to_json(rec.mark_of);
  j["targets"] = json::array();
  j["original_root"] = rec.original_root;
  return j;
}

OneCutRecord one_cut_from_json(const json& j) {
  OneCutRecord rec;
  rec.cut_tree = tree_from_json(j);
  rec.cut_sequence = j.at("cuts").get<std::vector<int>>();
  rec.target = j.at("targets").at(0).get<int>();
  rec.original_root = j.at("original_root").get<int>();
  auto marks = marks_from_json(j.at("marks"));
  for (std::size_t i = 0; i + 1 < rec.cut_sequence.size(); ++i)
    rec.marks.push_back(marks.at(rec.cut_sequence[i + 1]));
  return rec;
}

KCutRecord k_cut_from_json(const json& j) {
  KCutRecord rec;
  rec.cut_tree = tree_from_json(j);
  rec.cut_sequence = j.at("cuts").get<std::vector<int>>();
  rec.targets = j.at("targets").get<std::vector<int>>();
  rec.original_root = j.at("original_root").get<int>();
  rec.mark_of = marks_from_json(j.at("marks"));
  rec.backbone.root = rec.cut_tree.root;
  rec.backbone.vertices = rec.cut_sequence;
  for (int x : rec.cut_sequence)
    if (x != rec.backbone.root) rec.backbone.parent[x] = rec.cut_tree.parent[x];
  rec.canonical_order = canonical_order(rec.backbone, rec.targets);
  return rec;
}

CompleteCutRecord complete_cut_from_json(const json& j) {
  CompleteCutRecord rec;
  rec.cut_tree = tree_from_json(j);
  rec.permutation = j.at("cuts").get<std::vector<int>>();
  rec.original_root = j.at("original_root").get<int>();
  rec.mark_of = marks_from_json(j.at("marks"));
  return rec;
}

json real_tree_to_json(const RealTree& t) {
  json nodes = json::array();
  for (const auto& nd : t.nodes)
    nodes.push_back(json{{"parent", nd.parent}, {"edge_len", nd.edge_len}});
  json atoms = json::array();
  for (const auto& [node, theta] : t.branch_atoms)
    atoms.push_back(json{{"node", node}, {"local_time", theta}});
  return json{{"nodes", nodes},
              {"leaves", t.leaves},
              {"branch_atoms", atoms},
              {"cutpoints", t.cutpoints},
              {"joinpoints", t.joinpoints},
              {"total_length", t.total_length}};
}

json verdict_to_json(const Verdict& v) {
  json j{{"name", v.name},      {"statistic", v.statistic}, {"threshold", v.threshold},
         {"pass", v.pass},      {"seed", v.seed},           {"n_samples", v.n_samples}};
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

}  // namespace cuttree
