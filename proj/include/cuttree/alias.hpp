#pragma once

#include <cstdint>
#include <vector>

#include "cuttree/rng.hpp"
#include "cuttree/weights.hpp"

namespace cuttree {

// Walker/Vose alias table over an arbitrary list of (vertex, weight) entries.
// O(1) per draw after O(n) construction.
class AliasTable {
 public:
  AliasTable() = default;

  AliasTable(const std::vector<int>& vertices, const std::vector<double>& weights) {
    build(vertices, weights);
  }

  void build(const std::vector<int>& vertices, const std::vector<double>& weights) {
    const std::size_t n = vertices.size();
    vertex_ = vertices;
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    total_ = 0.0;
    for (double w : weights) total_ += w;
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * n / total_;
    std::vector<std::uint32_t> small, large;
    small.reserve(n);
    large.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    while (!small.empty() && !large.empty()) {
      std::uint32_t s = small.back(), l = large.back();
      small.pop_back();
      large.pop_back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    while (!large.empty()) {
      prob_[large.back()] = 1.0;
      large.pop_back();
    }
    while (!small.empty()) {
      prob_[small.back()] = 1.0;
      small.pop_back();
    }
  }

  int draw(Rng& rng) const {
    const std::size_t i = static_cast<std::size_t>(rng.below(vertex_.size()));
    return rng.u01() < prob_[i] ? vertex_[i] : vertex_[alias_[i]];
  }

  double total_mass() const { return total_; }
  bool empty() const { return vertex_.empty(); }

 private:
  std::vector<int> vertex_;
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
  double total_ = 0.0;
};

// Draws from p restricted to a shrinking alive set. Rejection against the
// last built table while the alive mass is at least a quarter of the table
// mass, a rebuild on the alive set once it drops below. Cutting procedures
// shrink components geometrically, so rebuild cost telescopes.
class RestrictedSampler {
 public:
  explicit RestrictedSampler(const ProbWeights& weights)
      : weights_(&weights), alive_(weights.n() + 1, 1) {
    std::vector<int> verts(weights.n());
    std::vector<double> w(weights.n());
    for (int v = 1; v <= weights.n(); ++v) {
      verts[v - 1] = v;
      w[v - 1] = weights.p(v);
    }
    table_.build(verts, w);
    table_mass_ = 1.0;
    alive_mass_ = 1.0;
  }

  void remove(int v) {
    alive_[v] = 0;
    alive_mass_ -= weights_->p(v);
  }

  bool alive(int v) const { return alive_[v] != 0; }
  double alive_mass() const { return alive_mass_; }

  int draw(Rng& rng) {
    if (alive_mass_ < 0.25 * table_mass_) rebuild();
    for (;;) {
      int v = table_.draw(rng);
      if (alive_[v]) return v;
    }
  }

 private:
  void rebuild() {
    std::vector<int> verts;
    std::vector<double> w;
    for (int v = 1; v <= weights_->n(); ++v) {
      if (alive_[v]) {
        verts.push_back(v);
        w.push_back(weights_->p(v));
      }
    }
    table_.build(verts, w);
    // Recompute instead of carrying the decremented running mass; keeps the
    // rejection bound honest over long runs.
    alive_mass_ = 0.0;
    for (double x : w) alive_mass_ += x;
    table_mass_ = alive_mass_;
  }

  const ProbWeights* weights_;
  std::vector<char> alive_;
  AliasTable table_;
  double table_mass_ = 1.0;
  double alive_mass_ = 1.0;
};

}  // namespace cuttree
