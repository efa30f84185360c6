#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lackwalk/fit.hpp"
#include "lackwalk/search.hpp"
#include "lackwalk/table.hpp"

namespace lackwalk {

/// Self-loop weight: either an absolute value or coefficient / N.
struct SelfLoopRule {
  double value = 0.0;
  bool per_vertex_count = false;

  static SelfLoopRule absolute(double a) { return {a, false}; }
  static SelfLoopRule over_n(double c) { return {c, true}; }

  double at(Index n) const { return per_vertex_count ? value / static_cast<double>(n) : value; }
};

/// Accepts "4.01/N" or a plain number.
inline SelfLoopRule parse_self_loop_rule(std::string s) {
  std::erase(s, ' ');
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    if (s.substr(slash + 1) != "N")
      throw std::invalid_argument("self-loop rule must look like '<c>/N', got '" + s + "'");
    return SelfLoopRule::over_n(std::stod(s.substr(0, slash)));
  }
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size())
    throw std::invalid_argument("bad self-loop value '" + s + "'");
  return SelfLoopRule::absolute(v);
}

/// Self-loop coefficients (a = c/N) used for M = 1..6 targets on the torus.
inline double preset_self_loop_coefficient(std::size_t m) {
  static constexpr double kCoefficients[] = {4.01, 7.8, 10.4, 15.2, 18.6, 21.7};
  if (m < 1 || m > 6)
    throw std::out_of_range("no self-loop preset for M = " + std::to_string(m));
  return kCoefficients[m - 1];
}

/// Number of steps to simulate for a lattice of N vertices.
struct TMaxRule {
  enum class Kind { automatic, times_n, times_sqrt_n_log_n, fixed };
  Kind kind = Kind::automatic;
  double value = 0.0;

  std::size_t at(int dim, Index n) const {
    const double dn = static_cast<double>(n);
    switch (kind) {
      case Kind::automatic:
        return dim == 1 ? static_cast<std::size_t>(4 * n)
                        : static_cast<std::size_t>(std::ceil(4.0 * std::sqrt(dn * std::log(dn))));
      case Kind::times_n:
        return static_cast<std::size_t>(std::ceil(value * dn));
      case Kind::times_sqrt_n_log_n:
        return static_cast<std::size_t>(std::ceil(value * std::sqrt(dn * std::log(dn))));
      case Kind::fixed:
        return static_cast<std::size_t>(value);
    }
    return 0;
  }
};

/// "auto", "<k>N", "<k>sqrt(NlnN)" or an integer step count.
inline TMaxRule parse_t_max_rule(std::string s) {
  std::erase(s, ' ');
  if (s == "auto")
    return {};
  const auto number = [&](const std::string& body) {
    if (body.empty())
      return 1.0;
    std::size_t pos = 0;
    const double v = std::stod(body, &pos);
    if (pos != body.size() || !(v > 0))
      throw std::invalid_argument("bad t_max rule '" + s + "'");
    return v;
  };
  for (const std::string suffix : {"*sqrt(NlnN)", "sqrt(NlnN)"})
    if (s.size() >= suffix.size() && s.ends_with(suffix))
      return {TMaxRule::Kind::times_sqrt_n_log_n, number(s.substr(0, s.size() - suffix.size()))};
  for (const std::string suffix : {"*N", "N"})
    if (s.ends_with(suffix))
      return {TMaxRule::Kind::times_n, number(s.substr(0, s.size() - suffix.size()))};
  return {TMaxRule::Kind::fixed, number(s)};
}

/// Success-probability mark for the amplification pipeline.
struct ThresholdRule {
  enum class Kind { none, inverse_ln, inverse_log2, fixed };
  Kind kind = Kind::none;
  double value = 0.0;

  bool enabled() const noexcept { return kind != Kind::none; }

  double at(Index n) const {
    const double dn = static_cast<double>(n);
    switch (kind) {
      case Kind::inverse_ln:
        return 1.0 / std::log(dn);
      case Kind::inverse_log2:
        return 1.0 / std::log2(dn);
      case Kind::fixed:
        return value;
      case Kind::none:
        break;
    }
    throw std::logic_error("threshold rule is disabled");
  }
};

/// "none", "1/lnN", "1/log2N" or a number.
inline ThresholdRule parse_threshold_rule(std::string s) {
  std::erase(s, ' ');
  if (s.empty() || s == "none")
    return {};
  if (s == "1/lnN" || s == "1/ln(N)")
    return {ThresholdRule::Kind::inverse_ln, 0.0};
  if (s == "1/log2N" || s == "1/log2(N)")
    return {ThresholdRule::Kind::inverse_log2, 0.0};
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size() || !(v > 0))
    throw std::invalid_argument("bad threshold '" + s + "'");
  return {ThresholdRule::Kind::fixed, v};
}

/// Peak-detection window: max(fixed, floor(per_n * N)).
struct PeakWindowRule {
  std::size_t fixed = 1;
  double per_n = 0.0;

  std::size_t at(Index n) const {
    return std::max(fixed, static_cast<std::size_t>(std::floor(per_n * static_cast<double>(n))));
  }
};

/// "<int>" or "<k>N".
inline PeakWindowRule parse_peak_window_rule(std::string s) {
  std::erase(s, ' ');
  if (s.ends_with("N")) {
    const std::string body = s.substr(0, s.size() - 1);
    return {1, body.empty() ? 1.0 : std::stod(body)};
  }
  const long long w = std::stoll(s);
  if (w < 1)
    throw std::invalid_argument("peak window must be >= 1");
  return {static_cast<std::size_t>(w), 0.0};
}

/// Coin family of a sweep; the Hadamard parameters only matter for `hadamard`.
struct CoinRule {
  bool hadamard = false;
  HadamardParams base{0.5, 1};
  std::optional<HadamardParams> target;

  CoinSpec at(double a) const {
    return hadamard ? CoinSpec::hadamard(base, target) : CoinSpec::grover_loop(a);
  }
};

struct SweepSpec {
  int dim = 2;
  std::vector<Index> sides;
  std::size_t n_targets = 1;
  SelfLoopRule self_loop = SelfLoopRule::over_n(4.01);
  CoinRule coin;
  OracleMode mode = OracleMode::per_target_flip;
  TMaxRule t_max;
  ThresholdRule threshold;
  PeakWindowRule peak_window;
  std::string output;
  TableFormat format = TableFormat::csv;
};

/// Target list: 2D uses the first M of (s/2, s/2), (2,2), (7,7), (4,4),
/// (8,8), (10,10); 1D uses the single vertex N/2 (floor division throughout).
inline std::vector<Index> place_targets(const Geometry& g, std::size_t m) {
  if (g.dim() == 1) {
    if (m != 1)
      throw std::invalid_argument("1D presets place exactly one target, got M = " + std::to_string(m));
    return {g.side() / 2};
  }
  if (g.dim() != 2)
    throw std::invalid_argument("target placement is defined for 1D and 2D lattices only");
  if (m < 1 || m > 6)
    throw std::invalid_argument("2D target placement supports 1 <= M <= 6, got " + std::to_string(m));
  const Index mid = g.side() / 2;
  const Index diag[] = {mid, 2, 7, 4, 8, 10};
  std::vector<Index> targets;
  for (std::size_t i = 0; i < m; ++i) {
    if (diag[i] >= g.side())
      throw std::invalid_argument("target (" + std::to_string(diag[i]) + "," + std::to_string(diag[i]) +
                                  ") does not fit on side " + std::to_string(g.side()));
    const Index v = vertex_index(g, {diag[i], diag[i]});
    if (std::find(targets.begin(), targets.end(), v) != targets.end())
      throw std::invalid_argument("target (" + std::to_string(diag[i]) + "," + std::to_string(diag[i]) +
                                  ") collides with another target on side " + std::to_string(g.side()));
    targets.push_back(v);
  }
  return targets;
}

/// Runs body(i) for i in [0, count) on at most `jobs` threads. The first
/// exception thrown by any job is rethrown after all workers finish.
inline void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
              failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure)
    std::rethrow_exception(failure);
}

struct SweepRow {
  int dim = 0;
  Index side = 0;
  Index n = 0;
  std::size_t m = 0;
  double a = 0.0;
  OracleMode mode = OracleMode::per_target_flip;
  PeakReport peak;
  std::optional<PeakReport> threshold;
  double threshold_value = 0.0;
};

/// One row per side in ascending order. Sides where the targets cannot be
/// placed, or where no peak is detected, are dropped with a note on stderr.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned jobs = 1) {
  std::vector<Index> sides = spec.sides;
  std::sort(sides.begin(), sides.end());
  sides.erase(std::unique(sides.begin(), sides.end()), sides.end());

  std::vector<std::optional<SweepRow>> slots(sides.size());
  std::vector<std::string> rejected(sides.size());
  parallel_for(sides.size(), jobs, [&](std::size_t i) {
    const Geometry g(spec.dim, sides[i]);
    const Index n = g.n_vertices();
    const double a = spec.self_loop.at(n);
    const CoinSpec coin = spec.coin.at(a);
    OracleSpec oracle{{}, spec.mode};
    try {
      oracle.targets = place_targets(g, spec.n_targets);
    } catch (const std::invalid_argument& e) {
      rejected[i] = e.what();
      return;
    }
    const ProbabilitySeries series = run_search(g, coin, oracle, spec.t_max.at(spec.dim, n));

    SweepRow row;
    row.dim = spec.dim;
    row.side = sides[i];
    row.n = n;
    row.m = spec.n_targets;
    row.a = coin.is_grover() ? a : 0.0;
    row.mode = spec.mode;
    row.peak = first_peak(series, default_peak_floor(n, spec.n_targets), spec.peak_window.at(n));
    if (spec.threshold.enabled()) {
      row.threshold_value = spec.threshold.at(n);
      row.threshold = first_threshold_crossing(series, row.threshold_value);
    }
    slots[i] = row;
  });

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const auto& slot = slots[i];
    if (!slot) {
      std::cerr << "lackwalk: side " << sides[i] << " rejected: " << rejected[i] << "\n";
      continue;
    }
    if (!slot->peak.found) {
      std::cerr << "lackwalk: no first peak for side " << slot->side << " (N = " << slot->n
                << "); row skipped\n";
      continue;
    }
    rows.push_back(*slot);
  }
  return rows;
}

inline Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t;
  t.columns = {"dim", "side", "N", "M", "a", "mode", "t_peak", "p_peak", "t_threshold", "p_threshold"};
  for (const auto& r : rows) {
    Cell t_thr, p_thr;
    if (r.threshold && r.threshold->found) {
      t_thr = r.threshold->t;
      p_thr = r.threshold->p;
    }
    t.add_row({std::int64_t{r.dim}, static_cast<std::int64_t>(r.side), static_cast<std::int64_t>(r.n),
               static_cast<std::int64_t>(r.m), r.a, std::string(to_string(r.mode)), r.peak.t, r.peak.p, t_thr,
               p_thr});
  }
  return t;
}

struct SelfLoopRow {
  std::size_t m = 0;
  double a = 0.0;
  double n_times_a = 0.0;
  PeakReport peak;
};

/// First-peak probability as a function of the self-loop weight.
inline std::vector<SelfLoopRow> sweep_self_loop(const Geometry& g, std::size_t m, const std::vector<double>& a_grid,
                                                OracleMode mode = OracleMode::per_target_flip,
                                                TMaxRule t_max = {}, unsigned jobs = 1) {
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    if (!(a_grid[i] > 0.0))
      throw std::invalid_argument("self-loop grid must be positive");
    if (i > 0 && !(a_grid[i] > a_grid[i - 1]))
      throw std::invalid_argument("self-loop grid must be strictly ascending");
  }
  const Index n = g.n_vertices();
  const OracleSpec oracle{place_targets(g, m), mode};
  std::vector<SelfLoopRow> rows(a_grid.size());
  parallel_for(a_grid.size(), jobs, [&](std::size_t i) {
    const auto series = run_search(g, CoinSpec::grover_loop(a_grid[i]), oracle, t_max.at(g.dim(), n));
    rows[i] = SelfLoopRow{m, a_grid[i], a_grid[i] * static_cast<double>(n),
                          first_peak(series, default_peak_floor(n, m))};
  });
  return rows;
}

inline Table self_loop_table(const std::vector<SelfLoopRow>& rows) {
  Table t;
  t.columns = {"M", "a", "Na", "t_peak", "p_peak"};
  for (const auto& r : rows) {
    Cell tp, pp;
    if (r.peak.found) {
      tp = r.peak.t;
      pp = r.peak.p;
    }
    t.add_row({static_cast<std::int64_t>(r.m), r.a, r.n_times_a, tp, pp});
  }
  return t;
}

inline Table series_table(const ProbabilitySeries& s) {
  Table t;
  t.columns = {"t", "p"};
  for (std::size_t i = 0; i < s.size(); ++i)
    t.add_row({static_cast<std::int64_t>(i), s[i]});
  return t;
}

}  // namespace lackwalk
