#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lackwalk/harness.hpp"

namespace lackwalk {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline long long parse_integer(const std::string& key, const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size())
    throw std::invalid_argument("key '" + key + "': expected an integer, got '" + s + "'");
  return v;
}

inline double parse_real(const std::string& key, const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size())
    throw std::invalid_argument("key '" + key + "': expected a number, got '" + s + "'");
  return v;
}

}  // namespace detail

/// "lo:hi:step" (inclusive) or a comma-separated list.
inline std::vector<Index> parse_sides(const std::string& text) {
  std::vector<Index> sides;
  const std::string s = detail::trim(text);
  if (s.empty())
    return sides;
  if (s.find(':') != std::string::npos) {
    std::vector<long long> parts;
    std::istringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ':'))
      parts.push_back(detail::parse_integer("sides", detail::trim(part)));
    if (parts.size() < 2 || parts.size() > 3)
      throw std::invalid_argument("sides range must be lo:hi or lo:hi:step");
    const long long step = parts.size() == 3 ? parts[2] : 1;
    if (step < 1 || parts[0] < 1 || parts[1] < parts[0])
      throw std::invalid_argument("bad sides range '" + s + "'");
    for (long long v = parts[0]; v <= parts[1]; v += step)
      sides.push_back(static_cast<Index>(v));
    return sides;
  }
  std::istringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const long long v = detail::parse_integer("sides", detail::trim(part));
    if (v < 1)
      throw std::invalid_argument("sides must be positive");
    sides.push_back(static_cast<Index>(v));
  }
  return sides;
}

/// Reads a flat `key = value` document (also accepts `key: value`; `#` starts
/// a comment). Keys: dim, sides, M, a_rule, coin, oracle_mode, t_max_rule,
/// threshold, output, plus optional format, peak_window, gamma, delta,
/// target_gamma.
inline SweepSpec parse_sweep_spec(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = detail::trim(line);
    if (line.empty())
      continue;
    auto sep = line.find('=');
    if (sep == std::string::npos)
      sep = line.find(':');
    if (sep == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, sep));
    if (!kv.emplace(key, detail::trim(line.substr(sep + 1))).second)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }

  static const char* const kKnown[] = {"dim",       "sides",  "M",           "a_rule", "coin",
                                       "oracle_mode", "t_max_rule", "threshold", "output", "format",
                                       "peak_window", "gamma", "delta",       "target_gamma"};
  for (const auto& [key, value] : kv) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown))
      throw std::invalid_argument("unknown key '" + key + "'");
  }
  const auto get = [&](const std::string& key) -> std::optional<std::string> {
    if (auto it = kv.find(key); it != kv.end())
      return it->second;
    return std::nullopt;
  };
  const auto require = [&](const std::string& key) {
    auto v = get(key);
    if (!v)
      throw std::invalid_argument("missing required key '" + key + "'");
    return *v;
  };

  SweepSpec spec;
  spec.dim = static_cast<int>(detail::parse_integer("dim", require("dim")));
  if (spec.dim < 1)
    throw std::invalid_argument("key 'dim': must be >= 1");
  spec.sides = parse_sides(require("sides"));
  spec.n_targets = static_cast<std::size_t>(detail::parse_integer("M", get("M").value_or("1")));
  if (spec.n_targets < 1)
    throw std::invalid_argument("key 'M': must be >= 1");
  const std::string coin = get("coin").value_or("grover");
  if (coin == "hadamard") {
    spec.coin.hadamard = true;
    spec.coin.base.gamma = detail::parse_real("gamma", get("gamma").value_or("0.5"));
    spec.coin.base.delta = static_cast<int>(detail::parse_integer("delta", get("delta").value_or("1")));
    if (auto tg = get("target_gamma"))
      spec.coin.target = HadamardParams{detail::parse_real("target_gamma", *tg), spec.coin.base.delta};
    spec.coin.at(0.0);  // validates gamma / delta
  } else if (coin != "grover") {
    throw std::invalid_argument("key 'coin': expected grover or hadamard, got '" + coin + "'");
  }
  if (auto a = get("a_rule"))
    spec.self_loop = parse_self_loop_rule(*a);
  else if (!spec.coin.hadamard)
    spec.self_loop = SelfLoopRule::over_n(spec.dim == 1 ? 2.0 : preset_self_loop_coefficient(spec.n_targets));
  if (auto m = get("oracle_mode"))
    spec.mode = parse_oracle_mode(*m);
  if (auto t = get("t_max_rule"))
    spec.t_max = parse_t_max_rule(*t);
  if (auto t = get("threshold"))
    spec.threshold = parse_threshold_rule(*t);
  if (auto w = get("peak_window"))
    spec.peak_window = parse_peak_window_rule(*w);
  if (auto f = get("format"))
    spec.format = parse_table_format(*f);
  spec.output = get("output").value_or("");
  return spec;
}

inline SweepSpec read_sweep_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open sweep spec '" + path + "'");
  return parse_sweep_spec(in);
}

/// A single search whose full time series is the output.
struct SeriesJob {
  int dim = 1;
  Index side = 200;
  CoinSpec coin = CoinSpec::grover_loop(0.01);
  OracleSpec oracle;
  std::size_t t_max = 400;
  PeakWindowRule peak_window;
};

/// First-peak probability against N*a on one lattice, for several M.
struct SelfLoopJob {
  Index side = 70;
  std::vector<std::size_t> target_counts;
  std::vector<double> n_times_a;
  OracleMode mode = OracleMode::per_target_flip;
};

struct Preset {
  std::string name;
  std::string description;
  std::optional<SeriesJob> series;
  std::optional<SweepSpec> sweep;
  std::optional<SelfLoopJob> self_loop;
};

inline std::vector<std::string> preset_names() {
  return {"fig1a", "fig1b", "fig2", "fig3", "fig4-m1", "fig4-m2", "fig4-m3", "fig5-m4", "fig5-m5", "fig5-m6", "fig6"};
}

inline Preset make_preset(const std::string& name) {
  Preset p;
  p.name = name;
  if (name == "fig1a" || name == "fig1b") {
    SeriesJob job;
    job.dim = 1;
    job.side = 200;
    job.oracle.targets = {100};
    if (name == "fig1a") {
      p.description = "1D N=200, symmetric Hadamard coin, gamma 0.5 off target / 0.4 on target";
      job.coin = CoinSpec::hadamard({0.5, 1}, HadamardParams{0.4, 1});
      job.t_max = 1000;
      job.peak_window = {1, 0.5};
    } else {
      p.description = "1D N=200, lackadaisical walk with a = 2/N";
      job.coin = CoinSpec::grover_loop(2.0 / 200.0);
      job.t_max = 400;
    }
    p.series = job;
    return p;
  }
  if (name == "fig2" || name == "fig3") {
    SweepSpec s;
    s.dim = 1;
    s.n_targets = 1;
    s.self_loop = SelfLoopRule::over_n(2.0);
    if (name == "fig2") {
      p.description = "1D first peak vs N, a = 2/N, N = 100..5000";
      s.sides = parse_sides("100:5000:100");
      s.t_max = parse_t_max_rule("1.2N");
    } else {
      p.description = "1D first crossing of 1/ln N, a = 2/N, N = 1000..20000";
      s.sides = parse_sides("1000:20000:1000");
      s.t_max = parse_t_max_rule("1.2N");
      s.threshold = parse_threshold_rule("1/lnN");
    }
    p.sweep = s;
    return p;
  }
  if (name.starts_with("fig4-m") || name.starts_with("fig5-m")) {
    const std::size_t m = static_cast<std::size_t>(name.back() - '0');
    const bool fig4 = name.starts_with("fig4");
    if ((fig4 && (m < 1 || m > 3)) || (!fig4 && (m < 4 || m > 6)))
      throw std::invalid_argument("unknown preset '" + name + "'");
    SweepSpec s;
    s.dim = 2;
    s.n_targets = m;
    s.self_loop = SelfLoopRule::over_n(preset_self_loop_coefficient(m));
    s.sides = parse_sides(fig4 ? "10:120" : "12:120");
    s.t_max = parse_t_max_rule("2sqrt(NlnN)");
    p.description = "2D first peak vs side, M = " + std::to_string(m) + ", a = " +
                    format_double(preset_self_loop_coefficient(m)) + "/N";
    p.sweep = s;
    return p;
  }
  if (name == "fig6") {
    SelfLoopJob job;
    job.side = 70;
    job.target_counts = {1, 2, 3, 4, 5, 6};
    for (int k = 1; k <= 60; ++k)
      job.n_times_a.push_back(0.5 * k);
    p.description = "70x70 first-peak probability vs N*a for M = 1..6";
    p.self_loop = job;
    return p;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

/// Which running time to fit from a sweep table.
enum class FitColumn {
  t_peak,
  t_threshold,
  /// t_threshold times the amplification repetitions for p_s = 1/ln N.
  amplified,
};

inline FitColumn parse_fit_column(const std::string& s) {
  if (s == "t_peak")
    return FitColumn::t_peak;
  if (s == "t_threshold")
    return FitColumn::t_threshold;
  if (s == "amplified")
    return FitColumn::amplified;
  throw std::invalid_argument("unknown fit column '" + s + "'");
}

struct FitWindow {
  Index min_side = 0;
  Index max_side = static_cast<Index>(-1);

  bool contains(Index side) const { return side >= min_side && side <= max_side; }
};

/// Window starting at side 50, where the first-peak probabilities have settled.
inline FitWindow default_fit_window(int dim) { return dim == 2 ? FitWindow{50} : FitWindow{}; }

struct TableFit {
  FitResult fit;
  FitWindow window;
  std::vector<FitPoint> points;
};

inline std::vector<FitPoint> collect_fit_points(const Table& table, FitColumn column, const FitWindow& window) {
  const std::size_t side_col = table.column("side");
  const std::size_t n_col = table.column("N");
  const std::size_t t_col = table.column(column == FitColumn::t_peak ? "t_peak" : "t_threshold");
  std::vector<FitPoint> points;
  for (const auto& row : table.rows) {
    const auto side = static_cast<Index>(cell_as_double(row[side_col]));
    if (!window.contains(side) || cell_is_empty(row[t_col]))
      continue;
    const double n = cell_as_double(row[n_col]);
    double t = cell_as_double(row[t_col]);
    if (column == FitColumn::amplified)
      t = static_cast<double>(amplified_complexity(static_cast<std::int64_t>(t), 1.0 / std::log(n)).total);
    points.push_back({n, t});
  }
  return points;
}

/// Fits a sweep table. M for the sqrt-log model comes from the table's M column.
inline TableFit fit_table(const Table& table, FitModel model, FitColumn column, const FitWindow& window,
                          LogBase base) {
  TableFit out;
  out.window = window;
  out.points = collect_fit_points(table, column, window);
  if (model == FitModel::power_law) {
    out.fit = fit_power_law(out.points);
  } else {
    if (table.rows.empty())
      throw std::invalid_argument("cannot fit an empty table");
    const auto m = static_cast<std::size_t>(cell_as_double(table.rows.front()[table.column("M")]));
    out.fit = fit_scaled_sqrt_log(out.points, m, base);
  }
  return out;
}

inline nlohmann::ordered_json fit_report_json(const TableFit& tf) {
  nlohmann::ordered_json j;
  j["model"] = to_string(tf.fit.model);
  j["M"] = tf.fit.n_targets;
  j["c"] = tf.fit.c;
  if (tf.fit.b)
    j["b"] = *tf.fit.b;
  j["residual"] = tf.fit.residual;
  j["n_points"] = tf.fit.n_points;
  nlohmann::ordered_json window;
  window["min_side"] = tf.window.min_side;
  if (tf.window.max_side != static_cast<Index>(-1))
    window["max_side"] = tf.window.max_side;
  else
    window["max_side"] = nullptr;
  j["fit_window"] = window;
  j["log_base"] = to_string(tf.fit.log_base);
  return j;
}

}  // namespace lackwalk
