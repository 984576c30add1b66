#include "graphgen/graph.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace spreadnet::graphgen {

long long Graph::edge_count() const {
  long long twice = 0;
  for (const auto& nbrs : adjacency_) twice += static_cast<long long>(nbrs.size());
  return twice / 2;
}

std::vector<int> Graph::degree_sequence() const {
  std::vector<int> degs(adjacency_.size());
  for (std::size_t v = 0; v < adjacency_.size(); ++v)
    degs[v] = static_cast<int>(adjacency_[v].size());
  return degs;
}

void Graph::set_edges(const std::vector<std::pair<int, int>>& edges) {
  for (auto& nbrs : adjacency_) nbrs.clear();
  for (const auto& [u, v] : edges) {
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::is_undirected_simple() const {
  const int n = vertex_count();
  for (int u = 0; u < n; ++u) {
    const auto& nbrs = neighbors(u);
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
      const int v = nbrs[j];
      if (v == u)
        return false;  // self-loop
      if (j > 0 && nbrs[j - 1] == v)
        return false;  // multi-edge
      const auto& back = neighbors(v);
      if (!std::binary_search(back.begin(), back.end(), u))
        return false;  // asymmetric
    }
  }
  return true;
}

Graph generate_ba(int n, int m_edges, std::uint64_t seed) {
  if (m_edges < 1 || n <= m_edges)
    throw std::invalid_argument("generate_ba: need n > m_edges >= 1");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * m_edges);
  // Repeated-target list: each vertex appears once per attached stub. Vertex 0
  // seeds the list so the first arrival attaches to it with probability one.
  std::vector<int> targets;
  targets.reserve(2 * edges.capacity() + 1);
  targets.push_back(0);
  std::vector<int> picked;
  for (int v = 1; v < n; ++v) {
    picked.clear();
    const int want = std::min(m_edges, v);
    while (static_cast<int>(picked.size()) < want) {
      const int t = targets[rng.uniform_index(targets.size())];
      if (std::find(picked.begin(), picked.end(), t) == picked.end())
        picked.push_back(t);
    }
    for (int t : picked) {
      edges.emplace_back(t, v);
      targets.push_back(t);
      targets.push_back(v);
    }
  }
  Graph g(n);
  g.set_edges(edges);
  return g;
}

std::vector<int> sample_powerlaw_sequence(const ensemble::DegreeDistribution& dist, int n,
                                          std::uint64_t seed) {
  if (n < 2)
    throw std::invalid_argument("sample_powerlaw_sequence: need n >= 2");
  Rng rng(seed);
  std::vector<int> degs(static_cast<std::size_t>(n));
  long long total = 0;
  for (auto& d : degs) {
    d = dist.sample(rng);
    total += d;
  }
  // Resample the last entry until the handshake parity works out. A
  // single-degree distribution with odd degree and odd n can never become
  // even; bump by duplicating one draw instead.
  if (total % 2 != 0) {
    if (dist.class_count() == 1) {
      throw std::invalid_argument(
          "sample_powerlaw_sequence: odd total degree cannot be fixed for a point-mass law");
    }
    while (total % 2 != 0) {
      total -= degs.back();
      degs.back() = dist.sample(rng);
      total += degs.back();
    }
  }
  return degs;
}

ConfigModelResult configuration_model(const std::vector<int>& degrees, std::uint64_t seed) {
  long long total = 0;
  for (int d : degrees) {
    if (d < 0)
      throw std::invalid_argument("configuration_model: negative degree");
    total += d;
  }
  if (total % 2 != 0)
    throw std::invalid_argument("configuration_model: degree sum must be even");

  Rng rng(seed);
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(total));
  for (std::size_t v = 0; v < degrees.size(); ++v)
    for (int j = 0; j < degrees[v]; ++j) stubs.push_back(static_cast<int>(v));
  // Fisher-Yates with the deterministic stream.
  for (std::size_t i = stubs.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_index(i);
    std::swap(stubs[i - 1], stubs[j]);
  }

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(stubs.size());
  std::vector<std::pair<int, int>> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    int u = stubs[i], v = stubs[i + 1];
    if (u == v)
      continue;  // drop self-loop
    if (u > v)
      std::swap(u, v);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
    if (!seen.insert(key).second)
      continue;  // drop multi-edge
    edges.emplace_back(u, v);
  }

  Graph g(static_cast<int>(degrees.size()));
  g.set_edges(edges);
  long long gap = 0;
  for (std::size_t v = 0; v < degrees.size(); ++v)
    gap += std::abs(degrees[v] - g.degree(static_cast<int>(v)));
  return ConfigModelResult{std::move(g), gap};
}

void write_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_edge_list: cannot open " + path);
  const int n = g.vertex_count();
  out << "# vertices " << n << "\n";
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u))
      if (u < v)
        out << u << " " << v << "\n";
  if (!out)
    throw std::runtime_error("write_edge_list: write failed for " + path);
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("read_edge_list: cannot open " + path);
  std::vector<std::pair<int, int>> edges;
  int n = 0;
  std::string tok;
  while (in >> tok) {
    if (tok == "#") {
      in >> tok;  // "vertices"
      in >> n;
      continue;
    }
    const int u = std::stoi(tok);
    int v = 0;
    if (!(in >> v))
      throw std::runtime_error("read_edge_list: truncated pair in " + path);
    if (u < 0 || v < 0)
      throw std::runtime_error("read_edge_list: negative vertex id in " + path);
    n = std::max(n, std::max(u, v) + 1);
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  Graph g(n);
  g.set_edges(edges);
  return g;
}

}  // namespace spreadnet::graphgen
