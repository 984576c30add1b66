#include "montecarlo/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "core/rng.hpp"

namespace spreadnet::montecarlo {

SimTrace simulate(const graphgen::Graph& graph, const meanfield::ModelParams& params, double dt,
                  std::uint64_t seed, int initial_active) {
  const int n = graph.vertex_count();
  if (initial_active < 0 || initial_active >= n)
    throw std::invalid_argument("simulate: initial_active out of range");
  if (!(dt > 0.0) || dt * params.lambda > 1.0 || dt * params.beta > 1.0)
    throw std::invalid_argument("simulate: need dt > 0 with dt*lambda <= 1 and dt*beta <= 1");

  const double notice_per_neighbor = dt * params.lambda;
  const double quiet_prob = dt * params.beta;

  Rng rng(seed);
  std::vector<VertexState> state(static_cast<std::size_t>(n), VertexState::Ignorant);
  std::vector<VertexState> next(state);
  state[static_cast<std::size_t>(initial_active)] = VertexState::Active;
  next[static_cast<std::size_t>(initial_active)] = VertexState::Active;

  std::vector<int> active_list{initial_active};
  std::vector<int> exposure(static_cast<std::size_t>(n), 0);
  std::vector<int> touched;

  SimTrace trace;
  trace.seed = seed;
  auto record = [&](long long new_active_count) {
    long long ci = 0, ca = 0, cr = 0, cq = 0;
    for (VertexState s : state) {
      switch (s) {
        case VertexState::Ignorant: ++ci; break;
        case VertexState::Active: ++ca; break;
        case VertexState::Indifferent: ++cr; break;
        case VertexState::Quiet: ++cq; break;
      }
    }
    trace.ignorant.push_back(ci);
    trace.active.push_back(ca);
    trace.indifferent.push_back(cr);
    trace.quiet.push_back(cq);
    trace.new_active.push_back(new_active_count);
  };
  record(1);  // the seed activation

  while (!active_list.empty()) {
    touched.clear();
    for (int a : active_list) {
      for (int v : graph.neighbors(a)) {
        if (state[static_cast<std::size_t>(v)] == VertexState::Ignorant) {
          if (exposure[static_cast<std::size_t>(v)] == 0)
            touched.push_back(v);
          ++exposure[static_cast<std::size_t>(v)];
        }
      }
    }

    long long newly_active = 0;
    std::vector<int> next_active;
    next_active.reserve(active_list.size());

    // Ignorants exposed this step notice with 1 - (1 - dt*lambda)^g and then
    // decide activation immediately.
    for (int v : touched) {
      const int g = exposure[static_cast<std::size_t>(v)];
      const double stay = std::pow(1.0 - notice_per_neighbor, static_cast<double>(g));
      if (rng.uniform01() >= stay) {
        if (rng.uniform01() < params.alpha) {
          next[static_cast<std::size_t>(v)] = VertexState::Active;
          next_active.push_back(v);
          ++newly_active;
        } else {
          next[static_cast<std::size_t>(v)] = VertexState::Indifferent;
        }
      }
      exposure[static_cast<std::size_t>(v)] = 0;
    }

    for (int a : active_list) {
      if (rng.uniform01() < quiet_prob) {
        next[static_cast<std::size_t>(a)] = VertexState::Quiet;
      } else {
        next_active.push_back(a);
      }
    }

    for (int v : touched) state[static_cast<std::size_t>(v)] = next[static_cast<std::size_t>(v)];
    for (int a : active_list) state[static_cast<std::size_t>(a)] = next[static_cast<std::size_t>(a)];
    active_list.swap(next_active);
    record(newly_active);
  }
  return trace;
}

EnsemblePrevalence ensemble_prevalence(const graphgen::Graph& graph,
                                       const meanfield::ModelParams& params, double dt, int runs,
                                       std::uint64_t seed, int jobs) {
  if (runs < 1)
    throw std::invalid_argument("ensemble_prevalence: runs must be positive");
  if (jobs <= 0)
    jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, runs));

  const int n = graph.vertex_count();
  std::vector<double> prevalence(static_cast<std::size_t>(runs));
  auto worker = [&](int begin, int end) {
    for (int r = begin; r < end; ++r) {
      Rng pick = Rng::substream(seed, static_cast<std::uint64_t>(r) * 2);
      const int start = static_cast<int>(pick.uniform_index(static_cast<std::uint64_t>(n)));
      const std::uint64_t run_seed =
          splitmix64(seed + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(r) * 2 + 1));
      const SimTrace trace = simulate(graph, params, dt, run_seed, start);
      prevalence[static_cast<std::size_t>(r)] = trace.final_prevalence(n);
    }
  };

  std::vector<std::future<void>> futures;
  const int chunk = (runs + jobs - 1) / jobs;
  for (int j = 0; j < jobs; ++j) {
    const int begin = j * chunk;
    const int end = std::min(runs, begin + chunk);
    if (begin >= end)
      break;
    futures.push_back(std::async(std::launch::async, worker, begin, end));
  }
  for (auto& f : futures) f.get();

  double mean = 0.0;
  for (double p : prevalence) mean += p;
  mean /= static_cast<double>(runs);
  double var = 0.0;
  for (double p : prevalence) var += (p - mean) * (p - mean);
  const double se =
      runs > 1 ? std::sqrt(var / (static_cast<double>(runs) * (static_cast<double>(runs) - 1.0)))
               : 0.0;
  return EnsemblePrevalence{mean, se};
}

series::TimeSeries gaussian_smooth(const series::TimeSeries& input, double sigma) {
  if (input.values.empty())
    throw std::invalid_argument("gaussian_smooth: empty series");
  if (!(sigma > 0.0))
    throw std::invalid_argument("gaussian_smooth: sigma must be positive");

  const int half = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
  double total = 0.0;
  for (int j = -half; j <= half; ++j) {
    const double w = std::exp(-0.5 * (static_cast<double>(j) / sigma) * (static_cast<double>(j) / sigma));
    kernel[static_cast<std::size_t>(j + half)] = w;
    total += w;
  }
  for (double& w : kernel) w /= total;

  const int n = static_cast<int>(input.values.size());
  auto reflect = [n](int idx) {
    while (idx < 0 || idx >= n) {
      if (idx < 0)
        idx = -idx - 1;
      if (idx >= n)
        idx = 2 * n - idx - 1;
    }
    return idx;
  };

  series::TimeSeries out;
  out.bin_hours = input.bin_hours;
  out.values.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = -half; j <= half; ++j)
      acc += kernel[static_cast<std::size_t>(j + half)] *
             input.values[static_cast<std::size_t>(reflect(i + j))];
    out.values[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

}  // namespace spreadnet::montecarlo
