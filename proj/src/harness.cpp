#include "fairdyn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "fairdyn/errors.hpp"

namespace fairdyn {

ThresholdPolicy Scenario::policy(const PopulationState& s) const {
  return apply_intervention(intervention, d, V, mu, s);
}

PopulationState Scenario::step(const PopulationState& s,
                               const ThresholdPolicy& policy) const {
  switch (dynamics.tag) {
    case DynamicsModel::Tag::replicator:
      return replicator_step(mu, s, policy, d, U);
    case DynamicsModel::Tag::markov:
      if (!dynamics.markov_T) {
        throw ConfigError("dynamics: markov model requires a T matrix");
      }
      return markov_step(mu, s, policy, d, *dynamics.markov_T);
    case DynamicsModel::Tag::best_response:
      if (!dynamics.cost) {
        throw ConfigError("dynamics: best_response model requires a cost CDF");
      }
      return best_response_step(mu, s, policy, d, dynamics.omega,
                                *dynamics.cost);
  }
  throw ConfigError("dynamics: unknown model tag");
}

namespace {

TrajectoryRecord make_record(const Scenario& sc, long t,
                             const PopulationState& s,
                             const ThresholdPolicy& policy) {
  TrajectoryRecord rec;
  rec.t = t;
  rec.s = s.values();
  rec.phi = policy.phi;
  const CoordState c = to_coords(sc.mu, s);
  rec.s_bar = c.s_bar;
  rec.disparity_l1 = disparity_norm(c.D, 1.0);
  rec.acceptance.resize(s.size());
  rec.fpr.resize(s.size());
  rec.fnr.resize(s.size());
  for (std::size_t g = 0; g < s.size(); ++g) {
    const Confusion conf = confusion(sc.d, policy.phi[g], s[g]);
    rec.acceptance[g] = acceptance_rate(sc.d, policy.phi[g], s[g]);
    rec.fpr[g] = conf.fpr;
    rec.fnr[g] = conf.fnr;
  }
  if (policy.uniform()) {
    rec.fitness_gap = fitness_gap(sc.d, sc.U, policy.phi[0]);
  }
  return rec;
}

}  // namespace

std::vector<TrajectoryRecord> run_trajectory(const Scenario& sc,
                                             const PopulationState& s0,
                                             long steps, long record_every) {
  if (steps < 1) throw ConfigError("run_trajectory: steps must be >= 1");
  if (record_every < 1) {
    throw ConfigError("run_trajectory: record stride must be >= 1");
  }
  std::vector<TrajectoryRecord> records;
  PopulationState s = s0;
  for (long t = 0; t <= steps; ++t) {
    const ThresholdPolicy policy = sc.policy(s);
    if (t % record_every == 0 || t == steps) {
      records.push_back(make_record(sc, t, s, policy));
    }
    if (t < steps) s = sc.step(s, policy);
  }
  return records;
}

ConvergenceReport detect_convergence(const Scenario& sc,
                                     const std::vector<TrajectoryRecord>& records,
                                     long window, double tol) {
  if (records.empty() || window + 1 > static_cast<long>(records.size())) {
    throw ConfigError("detect_convergence: window exceeds recorded length");
  }
  ConvergenceReport report;
  const TrajectoryRecord& last = records.back();
  report.limit_state = last.s;
  report.s_bar = last.s_bar;
  report.disparity_l1 = last.disparity_l1;
  report.steps = last.t;

  double max_step = 0.0;
  for (std::size_t i = records.size() - window; i < records.size(); ++i) {
    const auto& prev = records[i - 1].s;
    const auto& cur = records[i].s;
    for (std::size_t g = 0; g < cur.size(); ++g) {
      max_step = std::max(max_step, std::abs(cur[g] - prev[g]));
    }
  }
  report.converged = max_step <= tol;

  // Classify the limit: internal hyperplane when the fitness gap vanishes at
  // the induced shared threshold, vertex when every s_g is near {0,1}.
  if (!report.converged) return report;

  const double vertex_tol = 1e-6;
  bool near_vertex = true;
  for (double sg : last.s) {
    if (std::min(sg, 1.0 - sg) > vertex_tol) near_vertex = false;
  }
  if (near_vertex) {
    report.limit = LimitClass::trivial_vertex;
  } else if (report.s_bar > 0.0 && report.s_bar < 1.0) {
    const double phi = solve_threshold(sc.d, sc.V, report.s_bar);
    if (std::abs(fitness_gap(sc.d, sc.U, phi)) < 1e-6) {
      report.limit = LimitClass::internal_hyperplane;
    }
  }
  return report;
}

SweepResult sweep_grid(const Scenario& sc, int resolution) {
  if (sc.groups() != 2) {
    throw ConfigError("sweep_grid: only defined for 2 groups");
  }
  if (resolution < 2) throw ConfigError("sweep_grid: resolution must be >= 2");

  SweepResult result;
  const double margin = 1.0 / (2.0 * resolution);
  result.s1_values.resize(resolution);
  result.s2_values.resize(resolution);
  for (int i = 0; i < resolution; ++i) {
    const double v = margin + i * (1.0 - 2.0 * margin) / (resolution - 1);
    result.s1_values[i] = v;
    result.s2_values[i] = v;
  }
  result.cells.resize(static_cast<std::size_t>(resolution) * resolution);

  auto eval_row = [&](int i) {
    const double s1 = result.s1_values[i];
    for (int j = 0; j < resolution; ++j) {
      const double s2 = result.s2_values[j];
      const PopulationState s({s1, s2});
      const ThresholdPolicy policy = sc.policy(s);
      const PopulationState next = sc.step(s, policy);
      SweepResult::Cell& cell = result.cells[static_cast<std::size_t>(i) * resolution + j];
      cell.s1 = s1;
      cell.s2 = s2;
      cell.ds1 = next[0] - s1;
      cell.ds2 = next[1] - s2;
      cell.acc1 = acceptance_rate(sc.d, policy.phi[0], s1);
      const Confusion conf = confusion(sc.d, policy.phi[0], s1);
      cell.fpr1 = conf.fpr;
      cell.fnr1 = conf.fnr;
    }
  };

  unsigned threads = 1;
  if (const char* env = std::getenv("FAIRDYN_THREADS")) {
    const long requested = std::strtol(env, nullptr, 10);
    threads = requested == 0 ? std::thread::hardware_concurrency()
                             : static_cast<unsigned>(std::max(1L, requested));
  }
  threads = std::min<unsigned>(std::max(1u, threads),
                               static_cast<unsigned>(resolution));

  if (threads <= 1) {
    for (int i = 0; i < resolution; ++i) eval_row(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) {
      pool.emplace_back([&, k] {
        for (int i = static_cast<int>(k); i < resolution;
             i += static_cast<int>(threads)) {
          eval_row(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return result;
}

}  // namespace fairdyn
