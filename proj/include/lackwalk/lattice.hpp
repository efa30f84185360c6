#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lackwalk {

using Index = std::size_t;

/// Periodic d-dimensional square lattice (a torus of side^dim vertices).
///
/// Vertices are flattened row-major with axis 0 the slowest-varying
/// coordinate, so in 2D the vertex (x, y) has index x * side + y.
class Geometry {
public:
  Geometry(int dim, Index side) : dim_(dim), side_(side) {
    if (dim < 1)
      throw std::invalid_argument("lattice dimension must be >= 1, got " + std::to_string(dim));
    if (side < 2)
      throw std::invalid_argument("lattice side must be >= 2, got " + std::to_string(side));
    Index n = 1;
    strides_.assign(static_cast<std::size_t>(dim), 1);
    for (int axis = dim - 1; axis >= 0; --axis) {
      strides_[static_cast<std::size_t>(axis)] = n;
      if (n > std::numeric_limits<Index>::max() / side)
        throw std::overflow_error("side^dim overflows the vertex index type");
      n *= side;
    }
    n_vertices_ = n;
  }

  int dim() const noexcept { return dim_; }
  Index side() const noexcept { return side_; }
  Index n_vertices() const noexcept { return n_vertices_; }
  /// Index distance between neighbours along `axis`.
  Index stride(int axis) const { return strides_.at(static_cast<std::size_t>(axis)); }

  /// Number of coin directions: 2d edges plus an optional self-loop.
  int degree() const noexcept { return 2 * dim_; }

  friend bool operator==(const Geometry&, const Geometry&) = default;

private:
  int dim_;
  Index side_;
  Index n_vertices_ = 0;
  std::vector<Index> strides_;
};

inline Geometry make_geometry(int dim, Index side) { return Geometry(dim, side); }

/// One coin direction: a signed step along an axis, or the self-loop.
struct Direction {
  int axis = 0;
  int sign = +1;
  bool self_loop = false;

  static Direction loop() { return Direction{0, 0, true}; }
  static Direction plus(int axis) { return Direction{axis, +1, false}; }
  static Direction minus(int axis) { return Direction{axis, -1, false}; }

  friend bool operator==(const Direction&, const Direction&) = default;
};

/// Coin-basis slot of a direction. Per axis the order is (-, +); the
/// self-loop, when present, is the last slot 2d.
inline int coin_slot(const Geometry& g, Direction dir) {
  if (dir.self_loop)
    return g.degree();
  return 2 * dir.axis + (dir.sign > 0 ? 1 : 0);
}

/// Inverse of coin_slot. `slot == 2d` is the self-loop.
inline Direction direction_of_slot(const Geometry& g, int slot) {
  if (slot == g.degree())
    return Direction::loop();
  if (slot < 0 || slot > g.degree())
    throw std::out_of_range("coin slot out of range");
  return Direction{slot / 2, (slot % 2) ? +1 : -1, false};
}

/// All directions of the lattice in coin-slot order.
inline std::vector<Direction> directions(const Geometry& g, bool with_self_loop) {
  std::vector<Direction> out;
  for (int slot = 0; slot < g.degree(); ++slot)
    out.push_back(direction_of_slot(g, slot));
  if (with_self_loop)
    out.push_back(Direction::loop());
  return out;
}

inline Index vertex_index(const Geometry& g, std::span<const Index> coords) {
  if (coords.size() != static_cast<std::size_t>(g.dim()))
    throw std::invalid_argument("coordinate count does not match lattice dimension");
  Index v = 0;
  for (std::size_t axis = 0; axis < coords.size(); ++axis) {
    if (coords[axis] >= g.side())
      throw std::out_of_range("coordinate " + std::to_string(coords[axis]) + " on axis " +
                              std::to_string(axis) + " outside [0, " + std::to_string(g.side()) +
                              ")");
    v = v * g.side() + coords[axis];
  }
  return v;
}

inline Index vertex_index(const Geometry& g, std::initializer_list<Index> coords) {
  return vertex_index(g, std::span<const Index>(coords.begin(), coords.size()));
}

inline std::vector<Index> vertex_coords(const Geometry& g, Index v) {
  if (v >= g.n_vertices())
    throw std::out_of_range("vertex " + std::to_string(v) + " outside lattice");
  std::vector<Index> coords(static_cast<std::size_t>(g.dim()));
  for (int axis = g.dim() - 1; axis >= 0; --axis) {
    coords[static_cast<std::size_t>(axis)] = v % g.side();
    v /= g.side();
  }
  return coords;
}

/// Periodic neighbour of `v` one step along `dir`; the self-loop maps v to itself.
inline Index neighbor(const Geometry& g, Index v, Direction dir) {
  if (dir.self_loop)
    return v;
  const Index stride = g.stride(dir.axis);
  const Index coord = (v / stride) % g.side();
  if (dir.sign > 0)
    return coord + 1 == g.side() ? v - coord * stride : v + stride;
  return coord == 0 ? v + (g.side() - 1) * stride : v - stride;
}

}  // namespace lackwalk
