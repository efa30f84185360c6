#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lackwalk/coin.hpp"
#include "lackwalk/lattice.hpp"

namespace lackwalk {

enum class OracleMode {
  /// Negate the coin at every target vertex.
  per_target_flip,
  /// Reflect the vertex register about the normalized target superposition
  /// before the coin acts.
  superposition_reflection,
};

inline const char* to_string(OracleMode m) {
  return m == OracleMode::per_target_flip ? "per_target_flip" : "superposition_reflection";
}

inline OracleMode parse_oracle_mode(const std::string& s) {
  if (s == "per_target_flip" || s == "flip")
    return OracleMode::per_target_flip;
  if (s == "superposition_reflection" || s == "reflection")
    return OracleMode::superposition_reflection;
  throw std::invalid_argument("unknown oracle mode '" + s + "'");
}

struct OracleSpec {
  std::vector<Index> targets;
  OracleMode mode = OracleMode::per_target_flip;
};

/// Rejects out-of-range or repeated target vertices.
inline void validate_targets(const Geometry& g, std::span<const Index> targets) {
  std::vector<Index> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate target vertex");
  if (!sorted.empty() && sorted.back() >= g.n_vertices())
    throw std::out_of_range("target vertex " + std::to_string(sorted.back()) + " outside lattice");
}

/// Amplitudes over coin (x) vertex space, laid out direction-major:
/// amplitude(c, v) lives at c * N + v.
class WalkState {
public:
  WalkState(Geometry g, int coin_dim)
      : geometry_(std::move(g)),
        coin_dim_(coin_dim),
        amps_(static_cast<std::size_t>(coin_dim) * geometry_.n_vertices()) {
    if (coin_dim < 1)
      throw std::invalid_argument("coin dimension must be positive");
  }

  const Geometry& geometry() const noexcept { return geometry_; }
  int coin_dim() const noexcept { return coin_dim_; }
  Index n_vertices() const noexcept { return geometry_.n_vertices(); }
  std::size_t size() const noexcept { return amps_.size(); }

  cx_double& operator()(int c, Index v) { return amps_[static_cast<std::size_t>(c) * n_vertices() + v]; }
  const cx_double& operator()(int c, Index v) const {
    return amps_[static_cast<std::size_t>(c) * n_vertices() + v];
  }

  std::span<cx_double> amplitudes() noexcept { return amps_; }
  std::span<const cx_double> amplitudes() const noexcept { return amps_; }

  /// Contiguous block of all vertices for one coin slot.
  std::span<cx_double> slot(int c) {
    return std::span<cx_double>(amps_).subspan(static_cast<std::size_t>(c) * n_vertices(), n_vertices());
  }
  std::span<const cx_double> slot(int c) const {
    return std::span<const cx_double>(amps_).subspan(static_cast<std::size_t>(c) * n_vertices(),
                                                     n_vertices());
  }

  /// Compensated sum, so the result is accurate to a few ulp at any size.
  double squared_norm() const {
    double s = 0.0, carry = 0.0;
    for (const auto& z : amps_) {
      const double x = std::norm(z);
      const double t = s + x;
      carry += std::abs(s) >= x ? (s - t) + x : (x - t) + s;
      s = t;
    }
    return s + carry;
  }

  friend void swap(WalkState& a, WalkState& b) noexcept {
    using std::swap;
    swap(a.geometry_, b.geometry_);
    swap(a.coin_dim_, b.coin_dim_);
    swap(a.amps_, b.amps_);
  }

private:
  Geometry geometry_;
  int coin_dim_;
  std::vector<cx_double> amps_;
};

inline void check_compatible(const WalkState& s, const CoinSpec& coin) {
  if (coin.coin_dim(s.geometry()) != s.coin_dim())
    throw std::invalid_argument("coin dimension " + std::to_string(coin.coin_dim(s.geometry())) +
                                " does not match state coin dimension " + std::to_string(s.coin_dim()));
}

/// Uniform superposition over vertices times the coin's initial state.
inline WalkState initial_state(const Geometry& g, const CoinSpec& coin) {
  WalkState s(g, coin.coin_dim(g));
  const double vertex_amp = 1.0 / std::sqrt(static_cast<double>(g.n_vertices()));
  if (coin.is_grover()) {
    const Eigen::VectorXd psi = grover_coin_state(g.degree(), coin.grover().self_loop);
    for (int c = 0; c < s.coin_dim(); ++c)
      std::ranges::fill(s.slot(c), cx_double(psi(c) * vertex_amp, 0.0));
  } else {
    const double coin_amp = 1.0 / std::sqrt(2.0);
    for (int c = 0; c < 2; ++c)
      std::ranges::fill(s.slot(c), cx_double(coin_amp * vertex_amp, 0.0));
  }
  return s;
}

namespace detail {

// x <- 2 psi (psi . x) - x at every vertex, with psi uniform on edge slots.
// Degree > 0 fixes the edge count at compile time; 0 reads it from the state.
template <int Degree>
void grover_coin_kernel(WalkState& s, double a) {
  const int degree = Degree > 0 ? Degree : s.geometry().degree();
  const double norm = std::sqrt(static_cast<double>(degree) + a);
  const double w_edge = 1.0 / norm;
  const double w_loop = std::sqrt(a) / norm;
  const double two_edge = 2.0 * w_edge;
  const double two_loop = 2.0 * w_loop;
  const Index n = s.n_vertices();

  constexpr int kSlots = Degree > 0 ? Degree : 64;
  cx_double* edge[kSlots];
  for (int c = 0; c < degree; ++c)
    edge[c] = s.slot(c).data();
  cx_double* loop = s.slot(degree).data();

  for (Index v = 0; v < n; ++v) {
    cx_double sum = edge[0][v];
    for (int c = 1; c < degree; ++c)
      sum += edge[c][v];
    const cx_double proj = w_edge * sum + w_loop * loop[v];
    const cx_double to_edge = two_edge * proj;
    for (int c = 0; c < degree; ++c)
      edge[c][v] = to_edge - edge[c][v];
    loop[v] = two_loop * proj - loop[v];
  }
}

inline void apply_grover_coin_inplace(WalkState& s, double a) {
  switch (s.geometry().degree()) {
    case 2:
      return grover_coin_kernel<2>(s, a);
    case 4:
      return grover_coin_kernel<4>(s, a);
    default:
      if (s.geometry().degree() > 64)
        throw std::invalid_argument("lattice dimension above 32 is not supported");
      return grover_coin_kernel<0>(s, a);
  }
}

inline void negate_targets(WalkState& s, std::span<const Index> targets) {
  for (int c = 0; c < s.coin_dim(); ++c) {
    auto blk = s.slot(c);
    for (Index t : targets)
      blk[t] = -blk[t];
  }
}

// Per coin slot: x <- x - 2 |T><T| x with |T> = sum_t |t> / sqrt(M).
inline void reflect_about_targets(WalkState& s, std::span<const Index> targets) {
  if (targets.empty())
    return;
  const double scale = 2.0 / static_cast<double>(targets.size());
  for (int c = 0; c < s.coin_dim(); ++c) {
    auto blk = s.slot(c);
    cx_double sum{};
    for (Index t : targets)
      sum += blk[t];
    const cx_double delta = scale * sum;
    for (Index t : targets)
      blk[t] -= delta;
  }
}

inline void apply_2x2(const Eigen::Matrix2cd& m, cx_double& x0, cx_double& x1) {
  const cx_double y0 = m(0, 0) * x0 + m(0, 1) * x1;
  const cx_double y1 = m(1, 0) * x0 + m(1, 1) * x1;
  x0 = y0;
  x1 = y1;
}

inline void apply_hadamard_coin_inplace(WalkState& s, const HadamardCoin& coin, const OracleSpec& oracle) {
  const Eigen::Matrix2cd base = hadamard_coin_matrix(coin.base);
  auto lo = s.slot(0);
  auto hi = s.slot(1);
  std::vector<std::pair<cx_double, cx_double>> saved;
  if (coin.target) {
    saved.reserve(oracle.targets.size());
    for (Index t : oracle.targets)
      saved.emplace_back(lo[t], hi[t]);
  }
  const Index n = s.n_vertices();
  for (Index v = 0; v < n; ++v)
    apply_2x2(base, lo[v], hi[v]);
  if (coin.target) {
    const Eigen::Matrix2cd marked = hadamard_coin_matrix(*coin.target);
    for (std::size_t i = 0; i < oracle.targets.size(); ++i) {
      auto [x0, x1] = saved[i];
      apply_2x2(marked, x0, x1);
      lo[oracle.targets[i]] = x0;
      hi[oracle.targets[i]] = x1;
    }
  } else if (oracle.mode == OracleMode::per_target_flip) {
    negate_targets(s, oracle.targets);
  }
}

}  // namespace detail

inline void apply_oracle_coin_inplace(WalkState& s, const CoinSpec& coin, const OracleSpec& oracle) {
  check_compatible(s, coin);
  const bool reflect = oracle.mode == OracleMode::superposition_reflection;
  if (coin.is_grover()) {
    if (reflect)
      detail::reflect_about_targets(s, oracle.targets);
    detail::apply_grover_coin_inplace(s, coin.grover().self_loop);
    if (!reflect)
      detail::negate_targets(s, oracle.targets);
    return;
  }
  const auto& h = coin.hadamard();
  if (reflect && !h.target)
    detail::reflect_about_targets(s, oracle.targets);
  detail::apply_hadamard_coin_inplace(s, h, oracle);
}

inline WalkState apply_oracle_coin(WalkState s, const CoinSpec& coin, const OracleSpec& oracle) {
  apply_oracle_coin_inplace(s, coin, oracle);
  return s;
}

/// Flip-flop shift into `out`: (axis, +) at v goes to (axis, -) at v + e_axis,
/// (axis, -) at v goes to (axis, +) at v - e_axis; the self-loop stays put.
inline void apply_shift_into(const WalkState& in, WalkState& out) {
  const Geometry& g = in.geometry();
  const Index side = g.side();
  const Index n = g.n_vertices();
  for (int axis = 0; axis < g.dim(); ++axis) {
    const Index stride = g.stride(axis);
    const Index period = stride * side;
    const auto minus_in = in.slot(2 * axis);
    const auto plus_in = in.slot(2 * axis + 1);
    auto minus_out = out.slot(2 * axis);
    auto plus_out = out.slot(2 * axis + 1);
    const Index body = period - stride;
    for (Index outer = 0; outer < n; outer += period) {
      const auto src = plus_in.begin() + static_cast<std::ptrdiff_t>(outer);
      const auto src_minus = minus_in.begin() + static_cast<std::ptrdiff_t>(outer);
      const auto dst_minus = minus_out.begin() + static_cast<std::ptrdiff_t>(outer);
      const auto dst_plus = plus_out.begin() + static_cast<std::ptrdiff_t>(outer);
      const auto st = static_cast<std::ptrdiff_t>(stride);
      const auto bd = static_cast<std::ptrdiff_t>(body);
      // + moves up one coordinate (wrapping the last layer to the first).
      std::copy_n(src, body, dst_minus + st);
      std::copy_n(src + bd, stride, dst_minus);
      // - moves down one coordinate (wrapping the first layer to the last).
      std::copy_n(src_minus + st, body, dst_plus);
      std::copy_n(src_minus, stride, dst_plus + bd);
    }
  }
  for (int c = g.degree(); c < in.coin_dim(); ++c)
    std::ranges::copy(in.slot(c), out.slot(c).begin());
}

inline WalkState apply_shift(const WalkState& s) {
  WalkState out(s.geometry(), s.coin_dim());
  apply_shift_into(s, out);
  return out;
}

/// Stateful evolution U = S C~ with reusable buffers; the hot loop of every run.
class Walker {
public:
  Walker(WalkState initial, CoinSpec coin, OracleSpec oracle)
      : state_(std::move(initial)),
        buffer_(state_.geometry(), state_.coin_dim()),
        coin_(std::move(coin)),
        oracle_(std::move(oracle)) {
    check_compatible(state_, coin_);
    validate_targets(state_.geometry(), oracle_.targets);
  }

  void step() {
    apply_oracle_coin_inplace(state_, coin_, oracle_);
    apply_shift_into(state_, buffer_);
    swap(state_, buffer_);
  }

  const WalkState& state() const noexcept { return state_; }
  const CoinSpec& coin() const noexcept { return coin_; }
  const OracleSpec& oracle() const noexcept { return oracle_; }

private:
  WalkState state_;
  WalkState buffer_;
  CoinSpec coin_;
  OracleSpec oracle_;
};

inline WalkState walk_step(const WalkState& s, const CoinSpec& coin, const OracleSpec& oracle) {
  validate_targets(s.geometry(), oracle.targets);
  return apply_shift(apply_oracle_coin(s, coin, oracle));
}

/// Probability of measuring the walker at any target vertex, summed over coin slots.
inline double success_probability(const WalkState& s, std::span<const Index> targets) {
  double p = 0.0;
  for (int c = 0; c < s.coin_dim(); ++c) {
    const auto blk = s.slot(c);
    for (Index t : targets)
      p += std::norm(blk[t]);
  }
  return p;
}

}  // namespace lackwalk
