#pragma once

#include <string>

#include "json.hpp"

#include "cuttree/cutting.hpp"
#include "cuttree/real_tree.hpp"
#include "cuttree/tree.hpp"
#include "cuttree/weights.hpp"

namespace cuttree {

// Shared tree format: {"n": int, "root": int, "parent": {"2": 1, ...}} with
// string keys for the non-root vertices. Weights are a plain JSON array.

nlohmann::json tree_to_json(const RootedTree& t);
RootedTree tree_from_json(const nlohmann::json& j);

nlohmann::json weights_to_json(const ProbWeights& w);
ProbWeights weights_from_json(const nlohmann::json& j);

// Cut records: the cut tree's fields plus "cuts", "marks" (successor ->
// former neighbor), "targets" and "original_root". "mode" tags the variant.
nlohmann::json record_to_json(const OneCutRecord& rec);
nlohmann::json record_to_json(const KCutRecord& rec);
nlohmann::json record_to_json(const CompleteCutRecord& rec);
OneCutRecord one_cut_from_json(const nlohmann::json& j);
KCutRecord k_cut_from_json(const nlohmann::json& j);
CompleteCutRecord complete_cut_from_json(const nlohmann::json& j);

nlohmann::json real_tree_to_json(const RealTree& t);

struct Verdict {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  long n_samples = 0;
  std::string note;
};
nlohmann::json verdict_to_json(const Verdict& v);

}  // namespace cuttree
