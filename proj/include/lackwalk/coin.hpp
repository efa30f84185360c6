#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "lackwalk/lattice.hpp"

namespace lackwalk {

using cx_double = std::complex<double>;

/// Grover diffusion coin with a weighted self-loop of weight `a` at every vertex.
struct GroverLoopCoin {
  double self_loop = 0.0;
};

/// Hadamard-family coin on a loopless line. delta = 0 is the biased
/// Hadamard coin, delta = 1 the symmetric one.
struct HadamardParams {
  double gamma = 0.5;
  int delta = 0;
};

struct HadamardCoin {
  HadamardParams base;
  /// Coin applied at target vertices instead of `base`. When absent,
  /// targets are marked by negating `base`.
  std::optional<HadamardParams> target;
};

class CoinSpec {
public:
  static CoinSpec grover_loop(double a) {
    if (!(a >= 0.0) || !std::isfinite(a))
      throw std::invalid_argument("self-loop weight must be finite and >= 0");
    return CoinSpec(GroverLoopCoin{a});
  }

  static CoinSpec hadamard(HadamardParams base, std::optional<HadamardParams> target = std::nullopt) {
    check(base);
    if (target)
      check(*target);
    return CoinSpec(HadamardCoin{base, target});
  }

  bool is_grover() const noexcept { return std::holds_alternative<GroverLoopCoin>(kind_); }
  bool is_hadamard() const noexcept { return std::holds_alternative<HadamardCoin>(kind_); }
  const GroverLoopCoin& grover() const { return std::get<GroverLoopCoin>(kind_); }
  const HadamardCoin& hadamard() const { return std::get<HadamardCoin>(kind_); }

  /// Coin-space dimension on geometry g: 2d + 1 with the self-loop, 2 for Hadamard.
  int coin_dim(const Geometry& g) const {
    if (is_hadamard()) {
      if (g.dim() != 1)
        throw std::invalid_argument("Hadamard coin requires a one-dimensional lattice");
      return 2;
    }
    return g.degree() + 1;
  }

private:
  explicit CoinSpec(std::variant<GroverLoopCoin, HadamardCoin> kind) : kind_(kind) {}

  static void check(const HadamardParams& p) {
    if (!(p.gamma >= 0.0 && p.gamma <= 1.0))
      throw std::invalid_argument("Hadamard gamma must lie in [0, 1], got " + std::to_string(p.gamma));
    if (p.delta != 0 && p.delta != 1)
      throw std::invalid_argument("Hadamard delta must be 0 or 1");
  }

  std::variant<GroverLoopCoin, HadamardCoin> kind_;
};

/// Weighted uniform coin state: 1/sqrt(2d + a) on every edge direction and
/// sqrt(a)/sqrt(2d + a) on the self-loop (last slot).
inline Eigen::VectorXd grover_coin_state(int degree, double a) {
  const double norm = std::sqrt(static_cast<double>(degree) + a);
  Eigen::VectorXd psi(degree + 1);
  psi.head(degree).setConstant(1.0 / norm);
  psi(degree) = std::sqrt(a) / norm;
  return psi;
}

/// 2|psi_c><psi_c| - I over the (degree + 1)-dimensional coin space.
inline Eigen::MatrixXcd grover_coin_matrix(int degree, double a) {
  if (degree < 2 || degree % 2 != 0)
    throw std::invalid_argument("Grover coin degree must be a positive even number");
  if (!(a >= 0.0))
    throw std::invalid_argument("self-loop weight must be >= 0");
  const Eigen::VectorXd psi = grover_coin_state(degree, a);
  const Eigen::MatrixXd c = 2.0 * psi * psi.transpose() - Eigen::MatrixXd::Identity(degree + 1, degree + 1);
  return c.cast<cx_double>();
}

/// [[sqrt(g), s sqrt(1-g)], [s sqrt(1-g), (-1)^(1+delta) sqrt(g)]] with
/// s = (-1)^(delta/2), taking the positive root (s = i) for delta = 1.
inline Eigen::Matrix2cd hadamard_coin_matrix(double gamma, int delta) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("Hadamard gamma must lie in [0, 1], got " + std::to_string(gamma));
  if (delta != 0 && delta != 1)
    throw std::invalid_argument("Hadamard delta must be 0 or 1");
  const double diag = std::sqrt(gamma);
  const double off = std::sqrt(1.0 - gamma);
  const cx_double phase = delta == 0 ? cx_double(1.0, 0.0) : cx_double(0.0, 1.0);
  Eigen::Matrix2cd h;
  h << diag, phase * off, phase * off, (delta == 0 ? -diag : diag);
  return h;
}

inline Eigen::Matrix2cd hadamard_coin_matrix(const HadamardParams& p) {
  return hadamard_coin_matrix(p.gamma, p.delta);
}

}  // namespace lackwalk
