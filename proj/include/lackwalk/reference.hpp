#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "lackwalk/walk.hpp"

namespace lackwalk {

/// Explicit (coin_dim * N)-square matrix of U = S C~ in the canonical
/// (direction, vertex) basis. Only meant for tiny lattices.
struct DenseOperator {
  static constexpr Index kMaxDim = 4096;

  Index dim = 0;
  Eigen::MatrixXcd entries;
};

namespace reference {

// Straightforward step on a flat vector: explicit per-vertex coin matrix,
// explicit oracle, shift by walking neighbor() for every basis state.
inline Eigen::VectorXcd step(const Geometry& g, const CoinSpec& coin, const OracleSpec& oracle,
                             const Eigen::VectorXcd& x) {
  const int k = coin.coin_dim(g);
  const Index n = g.n_vertices();
  const auto at = [n](int c, Index v) { return static_cast<Eigen::Index>(static_cast<Index>(c) * n + v); };
  const auto is_target = [&](Index v) {
    return std::find(oracle.targets.begin(), oracle.targets.end(), v) != oracle.targets.end();
  };
  const bool hadamard_target = coin.is_hadamard() && coin.hadamard().target.has_value();
  const bool reflect = oracle.mode == OracleMode::superposition_reflection && !hadamard_target;
  const bool flip = oracle.mode == OracleMode::per_target_flip && !hadamard_target;

  Eigen::VectorXcd y = x;
  if (reflect && !oracle.targets.empty()) {
    const double m = static_cast<double>(oracle.targets.size());
    for (int c = 0; c < k; ++c) {
      cx_double overlap{};
      for (Index t : oracle.targets)
        overlap += x(at(c, t)) / std::sqrt(m);
      for (Index t : oracle.targets)
        y(at(c, t)) -= 2.0 * overlap / std::sqrt(m);
    }
  }

  Eigen::MatrixXcd base;
  Eigen::MatrixXcd marked;
  if (coin.is_grover()) {
    base = grover_coin_matrix(g.degree(), coin.grover().self_loop);
  } else {
    base = hadamard_coin_matrix(coin.hadamard().base);
    if (hadamard_target)
      marked = hadamard_coin_matrix(*coin.hadamard().target);
  }

  Eigen::VectorXcd z(x.size());
  for (Index v = 0; v < n; ++v) {
    const bool target = is_target(v);
    const Eigen::MatrixXcd& m = (hadamard_target && target) ? marked : base;
    for (int r = 0; r < k; ++r) {
      cx_double acc{};
      for (int c = 0; c < k; ++c)
        acc += m(r, c) * y(at(c, v));
      z(at(r, v)) = (flip && target) ? -acc : acc;
    }
  }

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(x.size());
  for (int c = 0; c < k; ++c) {
    const Direction dir = direction_of_slot(g, c);
    for (Index v = 0; v < n; ++v) {
      if (dir.self_loop) {
        out(at(c, v)) += z(at(c, v));
        continue;
      }
      const Direction flipped{dir.axis, -dir.sign, false};
      out(at(coin_slot(g, flipped), neighbor(g, v, dir))) += z(at(c, v));
    }
  }
  return out;
}

inline Eigen::VectorXcd initial_vector(const Geometry& g, const CoinSpec& coin) {
  const int k = coin.coin_dim(g);
  const Index n = g.n_vertices();
  Eigen::VectorXd coin_state;
  if (coin.is_grover()) {
    coin_state = grover_coin_state(g.degree(), coin.grover().self_loop);
  } else {
    coin_state = Eigen::VectorXd::Constant(2, 1.0 / std::sqrt(2.0));
  }
  Eigen::VectorXcd x(static_cast<Eigen::Index>(static_cast<Index>(k) * n));
  for (int c = 0; c < k; ++c)
    for (Index v = 0; v < n; ++v)
      x(static_cast<Eigen::Index>(static_cast<Index>(c) * n + v)) =
          coin_state(c) / std::sqrt(static_cast<double>(n));
  return x;
}

}  // namespace reference

/// Assembles U column by column by probing basis vectors through reference::step.
inline DenseOperator build_dense_unitary(const Geometry& g, const CoinSpec& coin, const OracleSpec& oracle) {
  const Index dim = static_cast<Index>(coin.coin_dim(g)) * g.n_vertices();
  if (dim > DenseOperator::kMaxDim)
    throw std::length_error("dense operator dimension " + std::to_string(dim) + " exceeds guard " +
                            std::to_string(DenseOperator::kMaxDim));
  validate_targets(g, oracle.targets);
  const auto d = static_cast<Eigen::Index>(dim);
  DenseOperator op{dim, Eigen::MatrixXcd(d, d)};
  Eigen::VectorXcd probe = Eigen::VectorXcd::Zero(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    probe(j) = 1.0;
    op.entries.col(j) = reference::step(g, coin, oracle, probe);
    probe(j) = 0.0;
  }
  return op;
}

/// Largest entry of |U^dagger U - I|.
inline double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff();
}

struct EquivalenceReport {
  bool pass = false;
  double max_deviation = 0.0;
  int worst_step = 0;
  int steps = 0;
};

/// Compares U^t psi_in against t engine steps for t = 1..steps, entrywise.
inline EquivalenceReport verify_equivalence(const Geometry& g, const CoinSpec& coin, const OracleSpec& oracle,
                                            int steps, double tol) {
  const DenseOperator u = build_dense_unitary(g, coin, oracle);
  Eigen::VectorXcd dense = reference::initial_vector(g, coin);
  Walker walker(initial_state(g, coin), coin, oracle);

  EquivalenceReport report;
  report.steps = steps;
  for (int t = 1; t <= steps; ++t) {
    dense = u.entries * dense;
    walker.step();
    const auto amps = walker.state().amplitudes();
    for (Eigen::Index i = 0; i < dense.size(); ++i) {
      const double dev = std::abs(dense(i) - amps[static_cast<std::size_t>(i)]);
      if (dev > report.max_deviation) {
        report.max_deviation = dev;
        report.worst_step = t;
      }
    }
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

}  // namespace lackwalk
