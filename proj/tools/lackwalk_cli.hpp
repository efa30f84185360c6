#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "lackwalk/lackwalk.hpp"

namespace lackwalk::cli {

enum ExitCode : int { kOk = 0, kInvalid = 1, kVerificationFailed = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string path;  // empty: standard output
  TableFormat format = TableFormat::csv;
};

struct RunCommand {
  Geometry geometry{1, 2};
  CoinSpec coin = CoinSpec::grover_loop(0.0);
  OracleSpec oracle;
  std::size_t steps = 1;
  PeakWindowRule peak_window;
  OutputOptions output;
};

struct SweepCommand {
  Preset job;
  unsigned jobs = 1;
  OutputOptions output;
};

struct FitCommand {
  std::string input;
  FitModel model = FitModel::scaled_sqrt_log;
  FitColumn column = FitColumn::t_peak;
  std::optional<Index> min_side;
  std::optional<Index> max_side;
  LogBase log_base = LogBase::binary;
  std::string output;
};

struct VerifyCommand {
  Geometry geometry{1, 2};
  CoinSpec coin = CoinSpec::grover_loop(0.0);
  OracleSpec oracle;
  int steps = 1;
  double tol = 1e-10;
};

using Command = std::variant<RunCommand, SweepCommand, FitCommand, VerifyCommand>;

/// "35,35" is a coordinate pair; "4" a flat index. Tokens may also be joined with ';'.
inline std::vector<Index> parse_targets(const Geometry& g, const std::vector<std::string>& tokens) {
  std::vector<Index> targets;
  for (const auto& token : tokens) {
    std::istringstream groups(token);
    std::string item;
    while (std::getline(groups, item, ';')) {
      if (item.empty())
        continue;
      std::vector<Index> parts;
      std::istringstream coords(item);
      std::string part;
      while (std::getline(coords, part, ',')) {
        std::size_t pos = 0;
        long long v = -1;
        try {
          v = std::stoll(part, &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (pos == 0 || pos != part.size() || v < 0)
          throw UsageError("--targets: '" + item + "' is not an index or coordinate tuple");
        parts.push_back(static_cast<Index>(v));
      }
      try {
        if (parts.size() == 1 && item.find(',') == std::string::npos) {
          if (parts[0] >= g.n_vertices())
            throw std::out_of_range("index outside lattice");
          targets.push_back(parts[0]);
        } else {
          targets.push_back(vertex_index(g, parts));
        }
      } catch (const std::exception& e) {
        throw UsageError("--targets: '" + item + "': " + e.what());
      }
    }
  }
  try {
    validate_targets(g, targets);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--targets: ") + e.what());
  }
  return targets;
}

namespace detail {

// Flags shared by `run` and `verify`.
struct WalkFlags {
  int dim = 0;
  long long side = 0;
  std::optional<double> self_loop;
  std::string self_loop_rule;
  std::string coin = "grover";
  double gamma = 0.5;
  int delta = 1;
  std::optional<double> target_gamma;
  std::vector<std::string> targets;
  std::size_t num_targets = 1;
  std::string oracle_mode = "per_target_flip";

  void attach(CLI::App* app) {
    app->add_option("--dim", dim, "Lattice dimension")->required()->check(CLI::PositiveNumber);
    app->add_option("--side", side, "Vertices per axis")->required()->check(CLI::Range(2LL, 1LL << 40));
    auto* abs = app->add_option("--self-loop", self_loop, "Self-loop weight a")->check(CLI::NonNegativeNumber);
    auto* rule = app->add_option("--self-loop-rule", self_loop_rule, "Self-loop weight as '<c>/N'");
    abs->excludes(rule);
    app->add_option("--coin", coin, "grover or hadamard")->check(CLI::IsMember({"grover", "hadamard"}));
    app->add_option("--gamma", gamma, "Hadamard gamma off target")->check(CLI::Range(0.0, 1.0));
    app->add_option("--delta", delta, "Hadamard delta (0 biased, 1 symmetric)")->check(CLI::IsMember({0, 1}));
    app->add_option("--target-gamma", target_gamma, "Hadamard gamma on targets")->check(CLI::Range(0.0, 1.0));
    app->add_option("--targets", targets, "Target vertices: flat indices or x,y tuples");
    app->add_option("--num-targets", num_targets, "Preset placement of M targets when --targets is absent")
        ->check(CLI::Range(1, 6));
    app->add_option("--oracle-mode", oracle_mode, "per_target_flip or superposition_reflection")
        ->check(CLI::IsMember({"per_target_flip", "superposition_reflection", "flip", "reflection"}));
  }

  void build(Geometry& g, CoinSpec& c, OracleSpec& o) const {
    try {
      g = Geometry(dim, static_cast<Index>(side));
    } catch (const std::exception& e) {
      throw UsageError(std::string("--side/--dim: ") + e.what());
    }
    double a = 0.0;
    if (self_loop) {
      a = *self_loop;
    } else if (!self_loop_rule.empty()) {
      try {
        a = parse_self_loop_rule(self_loop_rule).at(g.n_vertices());
      } catch (const std::exception& e) {
        throw UsageError(std::string("--self-loop-rule: ") + e.what());
      }
    }
    if (coin == "hadamard") {
      if (dim != 1)
        throw UsageError("--coin: hadamard requires --dim 1");
      std::optional<HadamardParams> target;
      if (target_gamma)
        target = HadamardParams{*target_gamma, delta};
      c = CoinSpec::hadamard({gamma, delta}, target);
    } else {
      try {
        c = CoinSpec::grover_loop(a);
      } catch (const std::exception& e) {
        throw UsageError(std::string("--self-loop: ") + e.what());
      }
    }
    o.mode = parse_oracle_mode(oracle_mode);
    if (!targets.empty()) {
      o.targets = parse_targets(g, targets);
    } else {
      try {
        o.targets = place_targets(g, num_targets);
      } catch (const std::exception& e) {
        throw UsageError(std::string("--num-targets: ") + e.what());
      }
    }
  }
};

}  // namespace detail

/// Parses argv (without the program name) into a validated command.
/// Throws UsageError naming the offending flag.
inline Command parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Lackadaisical quantum-walk search simulator"};
  app.require_subcommand(1, 1);

  detail::WalkFlags run_flags;
  std::size_t run_steps = 0;
  std::string run_window = "1";
  std::string run_out, run_format = "csv";
  auto* run = app.add_subcommand("run", "Simulate one search and write its success-probability series");
  run_flags.attach(run);
  run->add_option("--steps", run_steps, "Number of walk steps")->required()->check(CLI::PositiveNumber);
  run->add_option("--peak-window", run_window, "Peak window: steps or '<k>N'");
  run->add_option("--out", run_out, "Output path (default: standard output)");
  run->add_option("--format", run_format)->check(CLI::IsMember({"csv", "json"}));

  std::string sweep_preset, sweep_spec, sweep_out, sweep_format, sweep_mode;
  unsigned sweep_jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a preset or sweep-spec file");
  auto* preset_opt = sweep->add_option("--preset", sweep_preset, "Preset name")
                         ->check(CLI::IsMember(preset_names()));
  auto* spec_opt = sweep->add_option("--spec", sweep_spec, "Sweep-spec file")->check(CLI::ExistingFile);
  preset_opt->excludes(spec_opt);
  sweep->add_option("--out", sweep_out, "Output path (overrides the spec's output key)");
  sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--oracle-mode", sweep_mode)
      ->check(CLI::IsMember({"per_target_flip", "superposition_reflection", "flip", "reflection"}));
  sweep->add_option("--jobs", sweep_jobs, "Worker threads")
      ->envname("LACKWALK_JOBS")
      ->check(CLI::Range(1u, 1024u));

  FitCommand fit_cmd;
  std::string fit_model = "scaled_sqrt_log", fit_column = "t_peak", fit_base = "2";
  Index fit_min = 0, fit_max = 0;
  auto* fit = app.add_subcommand("fit", "Fit a running-time model to a sweep CSV");
  fit->add_option("--in", fit_cmd.input, "Sweep CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--model", fit_model)->check(CLI::IsMember({"power_law", "scaled_sqrt_log"}));
  fit->add_option("--column", fit_column)->check(CLI::IsMember({"t_peak", "t_threshold", "amplified"}));
  auto* min_opt = fit->add_option("--min-side", fit_min, "Smallest side in the fit window");
  auto* max_opt = fit->add_option("--max-side", fit_max, "Largest side in the fit window");
  fit->add_option("--log-base", fit_base, "Logarithm base of the sqrt-log model")
      ->check(CLI::IsMember({"e", "2"}));
  fit->add_option("--out", fit_cmd.output, "JSON report path (default: standard output)");

  detail::WalkFlags verify_flags;
  VerifyCommand verify_cmd;
  auto* verify = app.add_subcommand("verify", "Compare the engine against the dense reference operator");
  verify_flags.attach(verify);
  verify->add_option("--steps", verify_cmd.steps)->required()->check(CLI::PositiveNumber);
  verify->add_option("--tol", verify_cmd.tol)->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (run->parsed()) {
    RunCommand cmd;
    run_flags.build(cmd.geometry, cmd.coin, cmd.oracle);
    cmd.steps = run_steps;
    try {
      cmd.peak_window = parse_peak_window_rule(run_window);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--peak-window: ") + e.what());
    }
    cmd.output = {run_out, parse_table_format(run_format)};
    return cmd;
  }
  if (sweep->parsed()) {
    SweepCommand cmd;
    cmd.jobs = sweep_jobs;
    if (!sweep_preset.empty()) {
      cmd.job = make_preset(sweep_preset);
    } else if (!sweep_spec.empty()) {
      try {
        cmd.job.name = sweep_spec;
        cmd.job.sweep = read_sweep_spec_file(sweep_spec);
      } catch (const std::exception& e) {
        throw UsageError("--spec: " + std::string(e.what()));
      }
      cmd.output = {cmd.job.sweep->output, cmd.job.sweep->format};
    } else {
      throw UsageError("sweep: one of --preset or --spec is required");
    }
    if (!sweep_mode.empty()) {
      const OracleMode mode = parse_oracle_mode(sweep_mode);
      if (cmd.job.sweep)
        cmd.job.sweep->mode = mode;
      if (cmd.job.series)
        cmd.job.series->oracle.mode = mode;
      if (cmd.job.self_loop)
        cmd.job.self_loop->mode = mode;
    }
    if (!sweep_out.empty())
      cmd.output.path = sweep_out;
    if (!sweep_format.empty())
      cmd.output.format = parse_table_format(sweep_format);
    return cmd;
  }
  if (fit->parsed()) {
    fit_cmd.model = fit_model == "power_law" ? FitModel::power_law : FitModel::scaled_sqrt_log;
    fit_cmd.column = parse_fit_column(fit_column);
    fit_cmd.log_base = parse_log_base(fit_base);
    if (min_opt->count())
      fit_cmd.min_side = fit_min;
    if (max_opt->count())
      fit_cmd.max_side = fit_max;
    return fit_cmd;
  }
  verify_flags.build(verify_cmd.geometry, verify_cmd.coin, verify_cmd.oracle);
  return verify_cmd;
}

namespace detail {

inline void write_output(const Table& table, const OutputOptions& out, std::ostream& stdout_stream) {
  if (out.path.empty())
    write_table(table, out.format, stdout_stream);
  else
    emit_table(table, out.format, out.path);
}

}  // namespace detail

/// Runs a parsed command. Data goes to files (or `out` when no path is
/// given); diagnostics go to `err`.
inline int execute(const Command& command, std::ostream& out, std::ostream& err) {
  try {
    if (const auto* run = std::get_if<RunCommand>(&command)) {
      const auto series = run_search(run->geometry, run->coin, run->oracle, run->steps);
      const auto peak = first_peak(series, default_peak_floor(run->geometry.n_vertices(), run->oracle.targets.size()),
                                   run->peak_window.at(run->geometry.n_vertices()));
      if (peak.found)
        err << "first peak: t = " << peak.t << ", p = " << format_double(peak.p) << '\n';
      else
        err << "first peak: none within " << run->steps << " steps\n";
      detail::write_output(series_table(series), run->output, out);
      return kOk;
    }
    if (const auto* sweep = std::get_if<SweepCommand>(&command)) {
      const Preset& job = sweep->job;
      Table table;
      if (job.series) {
        const auto& s = *job.series;
        const Geometry g(s.dim, s.side);
        table = series_table(run_search(g, s.coin, s.oracle, s.t_max));
      } else if (job.sweep) {
        table = sweep_table(run_sweep(*job.sweep, sweep->jobs));
      } else {
        const auto& s = *job.self_loop;
        const Geometry g(2, s.side);
        std::vector<double> grid;
        for (double na : s.n_times_a)
          grid.push_back(na / static_cast<double>(g.n_vertices()));
        std::vector<SelfLoopRow> rows;
        for (std::size_t m : s.target_counts) {
          auto part = sweep_self_loop(g, m, grid, s.mode, {}, sweep->jobs);
          rows.insert(rows.end(), part.begin(), part.end());
        }
        table = self_loop_table(rows);
      }
      detail::write_output(table, sweep->output, out);
      return kOk;
    }
    if (const auto* fit = std::get_if<FitCommand>(&command)) {
      const Table table = read_csv_file(fit->input);
      int dim = 2;
      if (!table.rows.empty())
        dim = static_cast<int>(cell_as_double(table.rows.front()[table.column("dim")]));
      FitWindow window = default_fit_window(dim);
      if (fit->min_side)
        window.min_side = *fit->min_side;
      if (fit->max_side)
        window.max_side = *fit->max_side;
      const TableFit result = fit_table(table, fit->model, fit->column, window, fit->log_base);
      const std::string text = fit_report_json(result).dump(2) + "\n";
      if (fit->output.empty()) {
        out << text;
      } else {
        std::ofstream f(fit->output, std::ios::binary | std::ios::trunc);
        if (!(f << text))
          throw std::runtime_error("cannot write '" + fit->output + "'");
      }
      return kOk;
    }
    const auto& verify = std::get<VerifyCommand>(command);
    const auto report = verify_equivalence(verify.geometry, verify.coin, verify.oracle, verify.steps, verify.tol);
    out << (report.pass ? "pass" : "fail") << " max_deviation=" << format_double(report.max_deviation)
        << " worst_step=" << report.worst_step << " steps=" << report.steps << '\n';
    return report.pass ? kOk : kVerificationFailed;
  } catch (const std::exception& e) {
    err << "lackwalk: " << e.what() << '\n';
    return kInvalid;
  }
}

/// parse_args + execute with usage errors mapped to exit status 1.
inline int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Command cmd;
  try {
    cmd = parse_args(argv);
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    err << "lackwalk: " << e.what() << '\n';
    return kInvalid;
  }
  return execute(cmd, out, err);
}

}  // namespace lackwalk::cli
