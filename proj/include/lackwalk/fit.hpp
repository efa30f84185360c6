#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lackwalk {

struct FitPoint {
  double n = 0.0;  // lattice size N
  double t = 0.0;  // running time T
};

enum class FitModel {
  /// T = c N^b, fitted as a line in (ln N, ln T).
  power_law,
  /// T = c sqrt((N/M) log(N/M)).
  scaled_sqrt_log,
};

inline const char* to_string(FitModel m) {
  return m == FitModel::power_law ? "power_law" : "scaled_sqrt_log";
}

/// Base of the logarithm inside sqrt((N/M) log(N/M)). Changing base rescales
/// the predictor by a constant, so only c moves: c_2 = c_e * sqrt(ln 2).
enum class LogBase { natural, binary };

inline const char* to_string(LogBase b) { return b == LogBase::natural ? "e" : "2"; }

inline LogBase parse_log_base(const std::string& s) {
  if (s == "e" || s == "natural" || s == "ln")
    return LogBase::natural;
  if (s == "2" || s == "binary" || s == "log2")
    return LogBase::binary;
  throw std::invalid_argument("unknown log base '" + s + "' (expected e or 2)");
}

inline double log_in(LogBase base, double x) { return base == LogBase::natural ? std::log(x) : std::log2(x); }

struct FitResult {
  FitModel model = FitModel::power_law;
  double c = 0.0;
  std::optional<double> b;  // exponent, power law only
  double residual = 0.0;    // RMS, in ln T for the power law, in T otherwise
  std::size_t n_points = 0;
  std::size_t n_targets = 1;
  LogBase log_base = LogBase::natural;
};

inline FitResult fit_power_law(std::span<const FitPoint> points) {
  if (points.size() < 3)
    throw std::invalid_argument("power-law fit needs at least 3 points");
  std::vector<double> x, y;
  for (const auto& p : points) {
    if (!(p.n > 0.0) || !(p.t > 0.0))
      throw std::invalid_argument("power-law fit needs positive N and T");
    x.push_back(std::log(p.n));
    y.push_back(std::log(p.t));
  }
  const double k = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0))
    throw std::invalid_argument("power-law fit needs at least two distinct N");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    ss += r * r;
  }
  FitResult fit;
  fit.model = FitModel::power_law;
  fit.c = std::exp(intercept);
  fit.b = slope;
  fit.residual = std::sqrt(ss / k);
  fit.n_points = points.size();
  return fit;
}

inline double scaled_sqrt_log_predictor(double n, std::size_t m, LogBase base) {
  const double ratio = n / static_cast<double>(m);
  return std::sqrt(ratio * log_in(base, ratio));
}

/// Closed-form least squares for the single coefficient c.
inline FitResult fit_scaled_sqrt_log(std::span<const FitPoint> points, std::size_t m,
                                     LogBase base = LogBase::natural) {
  if (points.size() < 2)
    throw std::invalid_argument("scaled sqrt-log fit needs at least 2 points");
  if (m < 1)
    throw std::invalid_argument("target count must be >= 1");
  double sxx = 0.0, sxt = 0.0;
  for (const auto& p : points) {
    if (!(p.n / static_cast<double>(m) > 1.0))
      throw std::invalid_argument("scaled sqrt-log fit needs N/M > 1 at every point");
    const double x = scaled_sqrt_log_predictor(p.n, m, base);
    sxx += x * x;
    sxt += x * p.t;
  }
  if (!(sxx > 0.0))
    throw std::invalid_argument("degenerate predictor: sqrt((N/M) log(N/M)) vanishes at every point");
  const double c = sxt / sxx;
  double ss = 0.0;
  for (const auto& p : points) {
    const double r = p.t - c * scaled_sqrt_log_predictor(p.n, m, base);
    ss += r * r;
  }
  FitResult fit;
  fit.model = FitModel::scaled_sqrt_log;
  fit.c = c;
  fit.residual = std::sqrt(ss / static_cast<double>(points.size()));
  fit.n_points = points.size();
  fit.n_targets = m;
  fit.log_base = base;
  return fit;
}

}  // namespace lackwalk
