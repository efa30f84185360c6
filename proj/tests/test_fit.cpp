#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lackwalk/fit.hpp"

using namespace lackwalk;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("power law recovers exact log-linear data", "[fit]")
{
	std::vector<FitPoint> pts;
	for (double n : {100.0, 200.0, 400.0, 800.0, 1600.0})
		pts.push_back({n, 2.0 * n});
	const auto f = fit_power_law(pts);
	CHECK(f.model == FitModel::power_law);
	CHECK_THAT(f.c, WithinRel(2.0, 1e-12));
	CHECK_THAT(*f.b, WithinRel(1.0, 1e-12));
	CHECK(f.residual < 1e-12);
	CHECK(f.n_points == 5);
}

TEST_CASE("power law on constant data has zero exponent", "[fit]")
{
	std::vector<FitPoint> pts{{10, 7}, {20, 7}, {40, 7}, {80, 7}};
	const auto f = fit_power_law(pts);
	CHECK(*f.b == 0.0);
	CHECK_THAT(f.c, WithinRel(7.0, 1e-12));
}

TEST_CASE("power law rejects bad data", "[fit]")
{
	CHECK_THROWS_AS(fit_power_law(std::vector<FitPoint>{{1, 1}, {2, 2}}), std::invalid_argument);
	CHECK_THROWS_AS(fit_power_law(std::vector<FitPoint>{{1, 1}, {2, 0}, {3, 3}}), std::invalid_argument);
	CHECK_THROWS_AS(fit_power_law(std::vector<FitPoint>{{-1, 1}, {2, 2}, {3, 3}}), std::invalid_argument);
	CHECK_THROWS_AS(fit_power_law(std::vector<FitPoint>{{5, 1}, {5, 2}, {5, 3}}), std::invalid_argument);
}

TEST_CASE("power law recovers its own model", "[fit][property]")
{
	std::mt19937_64 re{3141};
	std::uniform_real_distribution<double> coef(0.05, 20.0), expo(-1.0, 2.5), size(10.0, 1e6);
	for (int trial = 0; trial < 200; ++trial)
	{
		const double c = coef(re), b = expo(re);
		std::vector<FitPoint> pts;
		for (int i = 0; i < 8; ++i)
		{
			const double n = size(re);
			pts.push_back({n, c * std::pow(n, b)});
		}
		const auto f = fit_power_law(pts);
		REQUIRE_THAT(f.c, WithinRel(c, 1e-12));
		REQUIRE_THAT(*f.b, WithinRel(b, 1e-12));
	}
}

TEST_CASE("scaled sqrt-log recovers model-generated data", "[fit]")
{
	std::vector<FitPoint> pts;
	for (double n : {2500.0, 3600.0, 4900.0, 6400.0})
		pts.push_back({n, 0.5 * std::sqrt(n * std::log(n))});
	const auto f = fit_scaled_sqrt_log(pts, 1, LogBase::natural);
	CHECK(f.model == FitModel::scaled_sqrt_log);
	CHECK_THAT(f.c, WithinRel(0.5, 1e-14));
	CHECK(f.residual <= 1e-12);

	// Base change only rescales c by sqrt(ln 2).
	const auto f2 = fit_scaled_sqrt_log(pts, 1, LogBase::binary);
	CHECK_THAT(f2.c, WithinRel(0.5 * std::sqrt(std::log(2.0)), 1e-13));
	CHECK(f2.residual <= 1e-12);
}

TEST_CASE("scaled sqrt-log residual vanishes on its own model", "[fit][property]")
{
	std::mt19937_64 re{42};
	std::uniform_real_distribution<double> coef(0.1, 3.0);
	for (std::size_t m = 1; m <= 6; ++m)
		for (auto base : {LogBase::natural, LogBase::binary})
		{
			const double c = coef(re);
			std::vector<FitPoint> pts;
			for (int side = 50; side <= 120; side += 10)
			{
				const double n = side * side;
				pts.push_back({n, c * scaled_sqrt_log_predictor(n, m, base)});
			}
			const auto f = fit_scaled_sqrt_log(pts, m, base);
			CHECK_THAT(f.c, WithinRel(c, 1e-13));
			CHECK(f.residual <= 1e-12);
			CHECK(f.n_targets == m);
		}
}

TEST_CASE("scaled sqrt-log rejects bad input", "[fit]")
{
	CHECK_THROWS_AS(fit_scaled_sqrt_log(std::vector<FitPoint>{{100, 3}}, 1), std::invalid_argument);
	CHECK_THROWS_AS(fit_scaled_sqrt_log(std::vector<FitPoint>{{4, 3}, {6, 5}}, 6), std::invalid_argument);
	CHECK_THROWS_AS(fit_scaled_sqrt_log(std::vector<FitPoint>{{4, 3}, {6, 5}}, 0), std::invalid_argument);
	CHECK(parse_log_base("2") == LogBase::binary);
	CHECK(parse_log_base("e") == LogBase::natural);
	CHECK_THROWS(parse_log_base("10"));
}
