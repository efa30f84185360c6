#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "lackwalk/lattice.hpp"

using namespace lackwalk;

TEST_CASE("make_geometry sizes", "[lattice]")
{
	CHECK(make_geometry(1, 200).n_vertices() == 200);
	CHECK(make_geometry(2, 70).n_vertices() == 4900);
	CHECK(make_geometry(3, 4).n_vertices() == 64);
	CHECK(make_geometry(2, 70).degree() == 4);
}

TEST_CASE("make_geometry rejects bad input", "[lattice]")
{
	CHECK_THROWS_AS(make_geometry(2, 1), std::invalid_argument);
	CHECK_THROWS_AS(make_geometry(0, 10), std::invalid_argument);
	CHECK_THROWS_AS(make_geometry(-1, 10), std::invalid_argument);
	CHECK_THROWS_AS(make_geometry(64, 2), std::overflow_error);
	CHECK_THROWS_AS(make_geometry(3, Index{1} << 22), std::overflow_error);
}

TEST_CASE("vertex_index is row-major with axis 0 slowest", "[lattice]")
{
	const auto g2 = make_geometry(2, 10);
	CHECK(vertex_index(g2, {3, 7}) == 37);
	const auto g1 = make_geometry(1, 10);
	CHECK(vertex_index(g1, {5}) == 5);
	CHECK_THROWS_AS(vertex_index(g2, {10, 0}), std::out_of_range);
	CHECK_THROWS_AS(vertex_index(g2, {1}), std::invalid_argument);
	CHECK_THROWS_AS(vertex_coords(g2, 100), std::out_of_range);
}

TEST_CASE("vertex_index and vertex_coords are mutually inverse", "[lattice][property]")
{
	for (auto [dim, side] : {std::pair{1, 7}, std::pair{2, 5}, std::pair{3, 3}, std::pair{4, 2}})
	{
		const Geometry g(dim, static_cast<Index>(side));
		std::set<Index> seen;
		for (Index v = 0; v < g.n_vertices(); ++v)
		{
			const auto c = vertex_coords(g, v);
			REQUIRE(vertex_index(g, c) == v);
			seen.insert(v);
		}
		CHECK(seen.size() == g.n_vertices());
	}
}

TEST_CASE("neighbor wraps periodically", "[lattice]")
{
	const auto g1 = make_geometry(1, 5);
	CHECK(neighbor(g1, 4, Direction::plus(0)) == 0);
	CHECK(neighbor(g1, 0, Direction::minus(0)) == 4);
	CHECK(neighbor(g1, 2, Direction::plus(0)) == 3);

	const auto g2 = make_geometry(2, 10);
	const Index v = neighbor(g2, vertex_index(g2, {0, 0}), Direction::minus(0));
	CHECK(vertex_coords(g2, v) == std::vector<Index>{9, 0});
	CHECK(vertex_coords(g2, neighbor(g2, vertex_index(g2, {4, 9}), Direction::plus(1))) == std::vector<Index>{4, 0});

	for (Index u = 0; u < g2.n_vertices(); u += 7)
		CHECK(neighbor(g2, u, Direction::loop()) == u);
}

TEST_CASE("neighbor maps are permutations and +/- steps cancel", "[lattice][property]")
{
	for (auto [dim, side] : {std::pair{1, 6}, std::pair{2, 4}, std::pair{3, 3}})
	{
		const Geometry g(dim, static_cast<Index>(side));
		for (const Direction d : directions(g, true))
		{
			std::set<Index> image;
			for (Index v = 0; v < g.n_vertices(); ++v)
				image.insert(neighbor(g, v, d));
			REQUIRE(image.size() == g.n_vertices());
		}
		for (int axis = 0; axis < dim; ++axis)
			for (Index v = 0; v < g.n_vertices(); ++v)
			{
				REQUIRE(neighbor(g, neighbor(g, v, Direction::plus(axis)), Direction::minus(axis)) == v);
				REQUIRE(neighbor(g, neighbor(g, v, Direction::minus(axis)), Direction::plus(axis)) == v);
			}
	}
}

TEST_CASE("direction count and coin slots", "[lattice]")
{
	const auto g = make_geometry(2, 4);
	CHECK(directions(g, true).size() == 5);
	CHECK(directions(g, false).size() == 4);
	for (int slot = 0; slot <= g.degree(); ++slot)
		CHECK(coin_slot(g, direction_of_slot(g, slot)) == slot);
	CHECK(coin_slot(g, Direction::minus(0)) == 0);
	CHECK(coin_slot(g, Direction::plus(0)) == 1);
	CHECK(coin_slot(g, Direction::loop()) == 4);
}
