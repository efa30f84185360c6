#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lackwalk/walk.hpp"

namespace lackwalk {

struct ProbabilitySeries {
  std::vector<double> probabilities;  // entry t: success probability after t steps
  Index n_vertices = 0;
  std::size_t n_targets = 0;
  double self_loop = 0.0;
  bool hadamard = false;
  OracleMode mode = OracleMode::per_target_flip;

  std::size_t size() const noexcept { return probabilities.size(); }
  double operator[](std::size_t t) const { return probabilities[t]; }
};

struct PeakReport {
  std::int64_t t = -1;
  double p = 0.0;
  bool found = false;
};

/// Rule deciding what counts as the first peak of a series.
///
/// A step t qualifies when p[t-1] < p[t], p[t] >= floor, and p[t] is at least
/// every value within `window` steps on either side (the full right-hand
/// window must be present in the series). window = 1 is the plain
/// rise-then-non-strict-fall rule.
struct PeakRule {
  double floor = 0.0;
  std::size_t window = 1;
};

/// Default floor 2M/N, which steps over round-off ripples near the baseline.
inline double default_peak_floor(Index n_vertices, std::size_t n_targets) {
  return 2.0 * static_cast<double>(n_targets) / static_cast<double>(n_vertices);
}

constexpr double kProbabilitySlack = 1e-12;

/// Runs t_max steps of U from the uniform initial state, recording every step.
inline ProbabilitySeries run_search(const Geometry& g, const CoinSpec& coin, const OracleSpec& oracle,
                                    std::size_t t_max) {
  if (t_max < 1)
    throw std::invalid_argument("t_max must be >= 1");
  ProbabilitySeries series;
  series.n_vertices = g.n_vertices();
  series.n_targets = oracle.targets.size();
  series.self_loop = coin.is_grover() ? coin.grover().self_loop : 0.0;
  series.hadamard = coin.is_hadamard();
  series.mode = oracle.mode;
  series.probabilities.reserve(t_max + 1);

  Walker walker(initial_state(g, coin), coin, oracle);
  for (std::size_t t = 0;; ++t) {
    const double raw = success_probability(walker.state(), oracle.targets);
    if (raw > 1.0 + kProbabilitySlack || raw < -kProbabilitySlack)
      throw std::logic_error("success probability " + std::to_string(raw) + " left [0, 1] at step " +
                             std::to_string(t));
    series.probabilities.push_back(std::clamp(raw, 0.0, 1.0));
    if (t == t_max)
      break;
    walker.step();
  }
  return series;
}

inline PeakReport first_peak(const std::vector<double>& p, const PeakRule& rule) {
  if (rule.floor < 0.0)
    throw std::invalid_argument("peak floor must be >= 0");
  const std::size_t w = std::max<std::size_t>(rule.window, 1);
  for (std::size_t t = 1; t + w < p.size(); ++t) {
    if (!(p[t - 1] < p[t]) || p[t] < rule.floor)
      continue;
    const std::size_t lo = t > w ? t - w : 0;
    const bool dominates = std::all_of(p.begin() + static_cast<std::ptrdiff_t>(lo),
                                       p.begin() + static_cast<std::ptrdiff_t>(t + w + 1),
                                       [&](double x) { return x <= p[t]; });
    if (dominates)
      return PeakReport{static_cast<std::int64_t>(t), p[t], true};
  }
  return PeakReport{};
}

inline PeakReport first_peak(const ProbabilitySeries& s, double floor, std::size_t window = 1) {
  return first_peak(s.probabilities, PeakRule{floor, window});
}

/// Smallest t with p[t] >= threshold.
inline PeakReport first_threshold_crossing(const std::vector<double>& p, double threshold) {
  if (!(threshold > 0.0))
    throw std::invalid_argument("threshold must be > 0");
  for (std::size_t t = 0; t < p.size(); ++t)
    if (p[t] >= threshold)
      return PeakReport{static_cast<std::int64_t>(t), p[t], true};
  return PeakReport{};
}

inline PeakReport first_threshold_crossing(const ProbabilitySeries& s, double threshold) {
  return first_threshold_crossing(s.probabilities, threshold);
}

/// Running time once amplitude amplification boosts p_s to O(1).
struct AmplifiedComplexity {
  std::int64_t t1 = 0;
  double p_s = 1.0;
  std::int64_t repetitions = 1;
  std::int64_t total = 0;
};

inline AmplifiedComplexity amplified_complexity(std::int64_t t1, double p_s) {
  if (!(p_s > 0.0) || p_s > 1.0)
    throw std::invalid_argument("p_s must lie in (0, 1]");
  if (t1 < 0)
    throw std::invalid_argument("t1 must be >= 0");
  const auto reps = static_cast<std::int64_t>(std::ceil(1.0 / std::sqrt(p_s)));
  return AmplifiedComplexity{t1, p_s, reps, t1 * reps};
}

}  // namespace lackwalk
