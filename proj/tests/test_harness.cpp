#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lackwalk/experiments.hpp"

using namespace lackwalk;
using Catch::Matchers::WithinAbs;

namespace
{

std::string slurp(const std::filesystem::path& p)
{
	std::ifstream in(p, std::ios::binary);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::filesystem::path scratch(const std::string& name)
{
	auto dir = std::filesystem::temp_directory_path() / "lackwalk_test_harness";
	std::filesystem::create_directories(dir);
	return dir / name;
}

} // namespace

TEST_CASE("place_targets on the torus", "[harness]")
{
	const Geometry g(2, 70);
	CHECK(place_targets(g, 3) == std::vector<Index>{vertex_index(g, {35, 35}), vertex_index(g, {2, 2}), vertex_index(g, {7, 7})});
	auto six = place_targets(g, 6);
	REQUIRE(six.size() == 6);
	std::sort(six.begin(), six.end());
	CHECK(std::adjacent_find(six.begin(), six.end()) == six.end());
	CHECK_THROWS_AS(place_targets(Geometry(2, 14), 4), std::invalid_argument);
	CHECK_THROWS_AS(place_targets(Geometry(2, 9), 6), std::invalid_argument);
	CHECK_THROWS_AS(place_targets(g, 7), std::invalid_argument);
	CHECK(place_targets(Geometry(1, 201), 1) == std::vector<Index>{100});
	CHECK_THROWS_AS(place_targets(Geometry(1, 200), 2), std::invalid_argument);
}

TEST_CASE("rule parsers", "[harness]")
{
	CHECK(parse_self_loop_rule("4.01/N").at(100) == 4.01 / 100);
	CHECK(parse_self_loop_rule("0.25").at(100) == 0.25);
	CHECK_THROWS(parse_self_loop_rule("4/M"));
	CHECK_THROWS(parse_self_loop_rule("x"));

	CHECK(parse_t_max_rule("1.2N").at(1, 1000) == 1200);
	CHECK(parse_t_max_rule("500").at(2, 10000) == 500);
	CHECK(parse_t_max_rule("2sqrt(NlnN)").at(2, 100) ==
	      static_cast<std::size_t>(std::ceil(2 * std::sqrt(100 * std::log(100.0)))));
	CHECK(parse_t_max_rule("auto").at(1, 50) == 200);

	CHECK(parse_threshold_rule("1/lnN").at(1000) == 1.0 / std::log(1000.0));
	CHECK_THAT(parse_threshold_rule("1/log2N").at(1024), WithinAbs(0.1, 1e-15));
	CHECK(parse_threshold_rule("0.3").at(7) == 0.3);

	CHECK(parse_peak_window_rule("3").at(100) == 3);
	CHECK(parse_peak_window_rule("0.5N").at(200) == 100);
	CHECK_THROWS(parse_peak_window_rule("-2"));

	CHECK(parse_sides("10:30:10") == std::vector<Index>{10, 20, 30});
	CHECK(parse_sides("5,7") == std::vector<Index>{5, 7});
	CHECK_THROWS(parse_sides("10:5"));
}

TEST_CASE("sweep with no sides gives a header-only table", "[harness]")
{
	SweepSpec spec;
	spec.dim = 1;
	const auto rows = run_sweep(spec);
	CHECK(rows.empty());
	std::ostringstream out;
	write_csv(sweep_table(rows), out);
	CHECK(out.str() == "dim,side,N,M,a,mode,t_peak,p_peak,t_threshold,p_threshold\n");
}

TEST_CASE("1D sweep with a = 2/N peaks near N at p near 3/4", "[harness][scaling]")
{
	SweepSpec spec;
	spec.dim = 1;
	spec.sides = parse_sides("100:1000:100");
	spec.self_loop = SelfLoopRule::over_n(2.0);
	spec.t_max = parse_t_max_rule("1.5N");
	const auto rows = run_sweep(spec, 2);
	REQUIRE(rows.size() == 10);
	for (const auto& r : rows)
	{
		CHECK_THAT(r.peak.p, WithinAbs(0.75, 0.05));
		CHECK(std::abs(static_cast<double>(r.peak.t) / static_cast<double>(r.n) - 1.0) <= 0.1);
	}
}

TEST_CASE("2D single-target first peak grows with side", "[harness][scaling]")
{
	SweepSpec spec;
	spec.dim = 2;
	spec.sides = parse_sides("20:100:10");
	spec.self_loop = SelfLoopRule::over_n(4.01);
	spec.t_max = parse_t_max_rule("2sqrt(NlnN)");
	const auto rows = run_sweep(spec, 2);
	REQUIRE(rows.size() == 9);
	for (std::size_t i = 1; i < rows.size(); ++i)
		CHECK(rows[i].peak.t > rows[i - 1].peak.t);
	// Ratio to sqrt(N ln N) stays bounded.
	for (const auto& r : rows)
	{
		const double n = static_cast<double>(r.n);
		const double ratio = static_cast<double>(r.peak.t) / std::sqrt(n * std::log(n));
		CHECK(ratio > 0.5);
		CHECK(ratio < 1.2);
	}
}

TEST_CASE("sweep drops sides where targets collide", "[harness]")
{
	SweepSpec spec;
	spec.dim = 2;
	spec.n_targets = 4;
	spec.sides = {14, 16};
	spec.self_loop = SelfLoopRule::over_n(15.2);
	const auto rows = run_sweep(spec);
	REQUIRE(rows.size() == 1);
	CHECK(rows[0].side == 16);
}

TEST_CASE("parallel and serial sweeps agree", "[harness]")
{
	SweepSpec spec = make_preset("fig4-m2").sweep.value();
	spec.sides = parse_sides("10:30");
	std::ostringstream a, b;
	write_csv(sweep_table(run_sweep(spec, 1)), a);
	write_csv(sweep_table(run_sweep(spec, 3)), b);
	CHECK(a.str() == b.str());
}

TEST_CASE("self-loop sweep", "[harness]")
{
	const Geometry g(2, 70);
	const double n = static_cast<double>(g.n_vertices());
	const auto single = sweep_self_loop(g, 1, {4.0 / n});
	CHECK(self_loop_table(single).rows.size() == 1);

	std::vector<double> grid;
	for (int k = 1; k <= 20; ++k)
		grid.push_back(0.5 * k / n);
	const auto rows = sweep_self_loop(g, 1, grid, OracleMode::per_target_flip, {}, 2);
	const auto best = std::max_element(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.peak.p < y.peak.p; });
	CHECK(best->n_times_a >= 3.0);
	CHECK(best->n_times_a <= 6.0);

	const auto tiny = sweep_self_loop(g, 1, {1e-6});
	CHECK(tiny[0].peak.p < 0.5 * best->peak.p);

	CHECK_THROWS(sweep_self_loop(g, 1, {0.1, 0.05}));
	CHECK_THROWS(sweep_self_loop(g, 1, {0.0}));
}

TEST_CASE("emit_table", "[harness]")
{
	Table t;
	t.columns = {"x", "y", "label", "gap"};
	t.add_row({std::int64_t{3}, 0.1, std::string("a"), std::monostate{}});
	CHECK_THROWS(t.add_row({std::int64_t{1}}));

	const auto csv = scratch("one.csv");
	emit_table(t, TableFormat::csv, csv.string());
	CHECK(slurp(csv) == "x,y,label,gap\n3,0.10000000000000001,a,\n");
	emit_table(t, TableFormat::csv, csv.string());
	CHECK(slurp(csv) == "x,y,label,gap\n3,0.10000000000000001,a,\n");

	const auto js = scratch("one.json");
	emit_table(t, TableFormat::json, js.string());
	const auto parsed = nlohmann::json::parse(slurp(js));
	REQUIRE(parsed.size() == 1);
	CHECK(parsed[0]["x"] == 3);
	CHECK(parsed[0]["y"] == 0.1);
	CHECK(parsed[0]["label"] == "a");
	CHECK(parsed[0]["gap"].is_null());

	const Table back = read_csv_file(csv.string());
	CHECK(back.columns == t.columns);
	CHECK(cell_as_double(back.rows[0][1]) == 0.1);
	CHECK(cell_is_empty(back.rows[0][3]));

	CHECK_THROWS(emit_table(t, TableFormat::csv, "/nonexistent-dir/x.csv"));
}

TEST_CASE("sweep spec documents", "[harness]")
{
	std::istringstream good(R"(# 2D sweep
dim = 2
sides = 20:40:10
M: 2
oracle_mode = superposition_reflection
t_max_rule = 2sqrt(NlnN)
threshold = 1/lnN
output = out.csv
)");
	const auto spec = parse_sweep_spec(good);
	CHECK(spec.dim == 2);
	CHECK(spec.sides == std::vector<Index>{20, 30, 40});
	CHECK(spec.n_targets == 2);
	CHECK(spec.self_loop.at(100) == 7.8 / 100);
	CHECK(spec.mode == OracleMode::superposition_reflection);
	CHECK(spec.threshold.enabled());
	CHECK(spec.output == "out.csv");

	std::istringstream had("dim = 1\nsides = 200\ncoin = hadamard\ngamma = 0.5\ntarget_gamma = 0.4\n");
	const auto hs = parse_sweep_spec(had);
	CHECK(hs.coin.hadamard);
	REQUIRE(hs.coin.target);
	CHECK(hs.coin.target->gamma == 0.4);

	for (const char* bad : {"sides = 10\n", "dim = 2\n", "dim = 2\nsides = 10\nbogus = 1\n", "dim = 2\ndim = 3\nsides = 10\n",
	                        "dim = x\nsides = 10\n", "dim = 2\nsides = 10\ncoin = fancy\n", "just words\n"})
	{
		std::istringstream in(bad);
		CHECK_THROWS_AS(parse_sweep_spec(in), std::invalid_argument);
	}
}

TEST_CASE("presets", "[harness]")
{
	for (const auto& name : preset_names())
	{
		const auto p = make_preset(name);
		CHECK(p.name == name);
		CHECK(static_cast<int>(p.series.has_value()) + static_cast<int>(p.sweep.has_value()) + static_cast<int>(p.self_loop.has_value()) == 1);
	}
	CHECK_THROWS(make_preset("fig7"));
	CHECK_THROWS(make_preset("fig4-m5"));
}
