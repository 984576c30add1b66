#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/rng.hpp"
#include "ensemble/degree_distribution.hpp"

namespace spreadnet::graphgen {

// Undirected simple graph as per-vertex sorted neighbor lists.
class Graph {
 public:
  explicit Graph(int n) : adjacency_(static_cast<std::size_t>(n)) {}

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  long long edge_count() const;
  const std::vector<int>& neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
  std::vector<int> degree_sequence() const;

  // Builds the adjacency from a simple edge set; callers guarantee u != v and
  // no duplicates.
  void set_edges(const std::vector<std::pair<int, int>>& edges);

  bool is_undirected_simple() const;

 private:
  std::vector<std::vector<int>> adjacency_;
};

// Barabasi-Albert preferential attachment: strict degree-proportional target
// choice starting from a single vertex, m_edges distinct targets per arriving
// vertex. n > m_edges >= 1.
Graph generate_ba(int n, int m_edges, std::uint64_t seed);

// n i.i.d. draws from dist, one entry resampled until the total is even.
std::vector<int> sample_powerlaw_sequence(const ensemble::DegreeDistribution& dist, int n,
                                          std::uint64_t seed);

struct ConfigModelResult {
  Graph graph;
  // L1 distance between target and realized degree sequences (stubs lost to
  // self-loop / multi-edge deletion).
  long long degree_l1_gap;
};

// Stub matching; offending stub pairs are deleted rather than rewired.
ConfigModelResult configuration_model(const std::vector<int>& degrees, std::uint64_t seed);

// Edge-list text format: one "u v" pair per line, 0-indexed, u < v, sorted by
// (u, v).
void write_edge_list(const Graph& g, const std::string& path);
Graph read_edge_list(const std::string& path);

}  // namespace spreadnet::graphgen
