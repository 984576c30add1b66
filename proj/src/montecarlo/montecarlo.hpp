#pragma once

#include <cstdint>
#include <vector>

#include "graphgen/graph.hpp"
#include "meanfield/meanfield.hpp"
#include "series/timeseries.hpp"

namespace spreadnet::montecarlo {

enum class VertexState : std::uint8_t { Ignorant, Active, Indifferent, Quiet };

struct SimTrace {
  std::vector<long long> ignorant, active, indifferent, quiet, new_active;
  std::uint64_t seed = 0;

  std::size_t steps() const { return active.size(); }
  // (indifferent + quiet) / n at the final step.
  double final_prevalence(int n) const {
    return static_cast<double>(indifferent.back() + quiet.back()) / static_cast<double>(n);
  }
};

// Synchronous agent simulation. Per step, an ignorant vertex with g active
// neighbors stays ignorant with probability (1 - dt*lambda)^g; a vertex that
// notices becomes Active with probability alpha, else Indifferent. Actives
// become Quiet with probability dt*beta. Vertices activated at step t start
// influencing neighbors at step t+1 (double-buffered update). Runs until no
// vertex is active.
SimTrace simulate(const graphgen::Graph& graph, const meanfield::ModelParams& params, double dt,
                  std::uint64_t seed, int initial_active);

struct EnsemblePrevalence {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
};

// Mean final (indifferent + quiet)/n over runs with uniformly random seed
// vertices; one RNG substream per run. jobs = 0 uses hardware concurrency.
EnsemblePrevalence ensemble_prevalence(const graphgen::Graph& graph,
                                       const meanfield::ModelParams& params, double dt, int runs,
                                       std::uint64_t seed, int jobs = 0);

// Convolution with a normalized Gaussian kernel truncated at 4 sigma,
// half-sample symmetric boundary; output length equals input length.
series::TimeSeries gaussian_smooth(const series::TimeSeries& input, double sigma);

}  // namespace spreadnet::montecarlo
