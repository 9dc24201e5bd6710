#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ufl/errors.hpp"
#include "ufl/measures.hpp"
#include "ufl/rindler.hpp"
#include "ufl/states.hpp"
#include "ufl/sweep.hpp"
#include "ufl/version.hpp"

using namespace ufl;

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

ScenarioConfig unfiltered_config(double mu, std::vector<double> r_grid) {
    ScenarioConfig cfg;
    cfg.mu = mu;
    cfg.r_grid = std::move(r_grid);
    return cfg;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++count;
    }
    return count;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_SUITE("sweep") {

TEST_CASE("linspace endpoints and spacing") {
    const std::vector<double> g = linspace(0.0, kQuarterPi, 101);
    REQUIRE(g.size() == 101);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == kQuarterPi);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    const std::vector<double> two = linspace(0.25, 0.75, 2);
    CHECK(two.front() == 0.25);
    CHECK(two.back() == 0.75);
    CHECK_THROWS_AS(linspace(0.0, 1.0, 1), RangeError);
}

TEST_CASE("unfiltered pure-family sweep hits the closed form") {
    SweepResult res = run_scenario(unfiltered_config(0.0, {0.0, std::numbers::pi / 8.0,
                                                           kQuarterPi}));
    REQUIRE(res.rows.size() == 3);
    CHECK(res.version == std::string(kVersion));
    REQUIRE(res.rows[0].negativity.has_value());
    CHECK_FALSE(res.rows[0].strength.has_value());
    CHECK(*res.rows[0].negativity == doctest::Approx(1.0).epsilon(1e-12));
    const double mid = *res.rows[1].negativity;
    CHECK(mid < 1.0);
    CHECK(mid > 0.5);
    const double c = std::cos(std::numbers::pi / 8.0);
    CHECK(mid == doctest::Approx(c * c).epsilon(1e-12));
    CHECK(*res.rows[2].negativity == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("kappa = 1/2 sweep reproduces the unfiltered value") {
    ScenarioConfig cfg = unfiltered_config(0.0, {0.0});
    cfg.filter.kind = ScenarioFilter::Kind::Qubit;
    cfg.filter.strength = 0.5;
    SweepResult res = run_scenario(cfg);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0].strength.has_value());
    CHECK(*res.rows[0].strength == 0.5);
    CHECK(*res.rows[0].negativity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("postselect strength point matches the closed form") {
    ScenarioConfig cfg = unfiltered_config(0.5, {0.0});
    cfg.filter.kind = ScenarioFilter::Kind::Qutrit;
    cfg.filter.strength = 0.49;
    cfg.filter.mode = FilterMode::Postselect;
    SweepResult res = run_scenario(cfg);
    CHECK(*res.rows[0].negativity == doctest::Approx(0.5577689243027888).epsilon(1e-12));
}

TEST_CASE("row ordering is r outer, strength inner") {
    ScenarioConfig cfg = unfiltered_config(0.2, {0.1, 0.2, 0.3});
    cfg.filter.kind = ScenarioFilter::Kind::Qutrit;
    cfg.filter.mode = FilterMode::Channel;
    cfg.strength_grid = {0.2, 0.4, 0.6, 0.8};
    SweepResult res = run_scenario(cfg);
    REQUIRE(res.rows.size() == 12);
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        CHECK(res.rows[i].r == cfg.r_grid[i / 4]);
        REQUIRE(res.rows[i].strength.has_value());
        CHECK(*res.rows[i].strength == cfg.strength_grid[i % 4]);
        REQUIRE(res.rows[i].negativity.has_value());
        CHECK(*res.rows[i].negativity >= 0.0);
        CHECK(*res.rows[i].negativity <= 1.0 + 1e-10);
    }
}

TEST_CASE("thread count does not change the rows") {
    ScenarioConfig cfg = unfiltered_config(0.1, linspace(0.0, kQuarterPi, 33));
    cfg.filter.kind = ScenarioFilter::Kind::Qubit;
    cfg.filter.strength = 0.3;
    const SweepResult serial = run_scenario(cfg, 1);
    const SweepResult parallel = run_scenario(cfg, 4);
    const SweepResult oversubscribed = run_scenario(cfg, 64);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].r == parallel.rows[i].r);
        CHECK(*serial.rows[i].strength == *parallel.rows[i].strength);
        CHECK(*serial.rows[i].negativity == *parallel.rows[i].negativity);
        CHECK(*serial.rows[i].negativity == *oversubscribed.rows[i].negativity);
    }
    std::ostringstream a, b;
    write_csv(serial, a);
    write_csv(parallel, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("invalid configurations are rejected") {
    CHECK_THROWS_AS(run_scenario(unfiltered_config(0.7, {0.0})), RangeError);
    CHECK_THROWS_AS(run_scenario(unfiltered_config(0.2, {})), RangeError);
    CHECK_THROWS_AS(run_scenario(unfiltered_config(0.2, {0.3, 0.2})), RangeError);
    CHECK_THROWS_AS(run_scenario(unfiltered_config(0.2, {0.0, 1.0})), RangeError);

    ScenarioConfig no_filter = unfiltered_config(0.2, {0.1});
    no_filter.strength_grid = {0.5};
    CHECK_THROWS_AS(run_scenario(no_filter), RangeError);

    ScenarioConfig bad_strength = unfiltered_config(0.2, {0.1});
    bad_strength.filter.kind = ScenarioFilter::Kind::Qubit;
    bad_strength.filter.strength = 1.0;
    CHECK_THROWS_AS(run_scenario(bad_strength), RangeError);

    ScenarioConfig bad_grid = unfiltered_config(0.2, {0.1});
    bad_grid.filter.kind = ScenarioFilter::Kind::Qutrit;
    bad_grid.strength_grid = {0.5, 0.5};
    CHECK_THROWS_AS(run_scenario(bad_grid), RangeError);
    bad_grid.strength_grid = {0.0, 0.5};
    CHECK_THROWS_AS(run_scenario(bad_grid), RangeError);
}

TEST_CASE("figure presets: acceleration sweeps") {
    const std::vector<ScenarioConfig> fig1 = figure_preset(1, FamilyParameter(0.0));
    REQUIRE(fig1.size() == 6);
    CHECK(fig1[0].filter.kind == ScenarioFilter::Kind::None);
    const double strengths[] = {0.1, 0.3, 0.5, 0.7, 0.9};
    for (std::size_t i = 1; i < fig1.size(); ++i) {
        CHECK(fig1[i].filter.kind == ScenarioFilter::Kind::Qubit);
        CHECK(fig1[i].filter.strength == strengths[i - 1]);
        CHECK(fig1[i].accelerated == Subsystem::Qubit);
        REQUIRE(fig1[i].r_grid.size() == 101);
        CHECK(fig1[i].r_grid.front() == 0.0);
        CHECK(fig1[i].r_grid.back() == kQuarterPi);
        CHECK(fig1[i].strength_grid.empty());
    }
    const std::vector<ScenarioConfig> fig2 = figure_preset(2, FamilyParameter(0.3));
    CHECK(fig2[1].filter.kind == ScenarioFilter::Kind::Qutrit);
    CHECK(fig2[1].filter.mode == FilterMode::Postselect);
    CHECK(fig2[1].mu == 0.3);
    const std::vector<ScenarioConfig> fig5 = figure_preset(5, FamilyParameter(0.0));
    CHECK(fig5[0].accelerated == Subsystem::Qutrit);
    CHECK(fig5[3].filter.pair_policy == PairPolicy::Discard);
    CHECK_THROWS_AS(figure_preset(0, FamilyParameter(0.0)), RangeError);
    CHECK_THROWS_AS(figure_preset(7, FamilyParameter(0.0)), RangeError);
}

TEST_CASE("figure presets: strength sweeps") {
    for (int id : {3, 6}) {
        const std::vector<ScenarioConfig> figs = figure_preset(id, FamilyParameter(0.25));
        REQUIRE(figs.size() == 8);
        const double fixed_r[] = {0.2, 0.4, 0.6, kQuarterPi};
        for (std::size_t i = 0; i < figs.size(); ++i) {
            CHECK(figs[i].filter.kind ==
                  (i < 4 ? ScenarioFilter::Kind::Qubit : ScenarioFilter::Kind::Qutrit));
            REQUIRE(figs[i].r_grid.size() == 1);
            CHECK(figs[i].r_grid[0] == fixed_r[i % 4]);
            REQUIRE(figs[i].strength_grid.size() == 101);
            CHECK(figs[i].strength_grid.front() == 0.005);
            CHECK(figs[i].strength_grid.back() == 0.995);
            CHECK(figs[i].accelerated == (id == 3 ? Subsystem::Qubit : Subsystem::Qutrit));
        }
    }
}

TEST_CASE("curve labels") {
    const std::vector<ScenarioConfig> fig1 = figure_preset(1, FamilyParameter(0.0));
    CHECK(scenario_label(fig1[0]) == "unfiltered");
    CHECK(scenario_label(fig1[2]) == "kappa=0.3");
    const std::vector<ScenarioConfig> fig3 = figure_preset(3, FamilyParameter(0.0));
    CHECK(scenario_label(fig3[0]) == "kappa(r=0.2)");
    CHECK(scenario_label(fig3[4]) == "Q(r=0.2)");
    ScenarioConfig qfixed = unfiltered_config(0.2, {0.1});
    qfixed.filter.kind = ScenarioFilter::Kind::Qutrit;
    qfixed.filter.strength = 0.75;
    CHECK(scenario_label(qfixed) == "Q=0.75");
}

TEST_CASE("csv header and row bytes") {
    ScenarioConfig cfg = unfiltered_config(0.0, {0.25, 0.5});
    SweepResult res;
    res.config = cfg;
    res.version = "0.1.0";
    SweepRow row1;
    row1.r = 0.25;
    row1.negativity = 0.75;
    SweepRow row2;
    row2.r = 0.5;
    row2.strength = 0.125;
    res.rows = {row1, row2};

    std::ostringstream os;
    write_csv(res, os);
    CHECK(os.str() ==
          "# unruh-filter-lab v0.1.0\n"
          "# scenario: mu=0 accelerated=qubit filter=none strength-mode=NA pair=NA\n"
          "r,strength,negativity\n"
          "0.25,NA,0.75\n"
          "0.5,0.125,NA\n");
}

TEST_CASE("csv scenario line variants") {
    auto header_line = [](const ScenarioConfig& cfg) {
        SweepResult res;
        res.config = cfg;
        res.version = "0.1.0";
        std::ostringstream os;
        write_csv(res, os);
        const std::string text = os.str();
        const std::size_t from = text.find('\n') + 1;
        return text.substr(from, text.find('\n', from) - from);
    };

    ScenarioConfig qubit_filtered = unfiltered_config(0.3, {0.1});
    qubit_filtered.filter.kind = ScenarioFilter::Kind::Qubit;
    CHECK(header_line(qubit_filtered) ==
          "# scenario: mu=0.29999999999999999 accelerated=qubit filter=qubit "
          "strength-mode=postselect pair=NA");

    ScenarioConfig unaccel_target = unfiltered_config(0.25, {0.1});
    unaccel_target.filter.kind = ScenarioFilter::Kind::Qutrit;
    unaccel_target.filter.mode = FilterMode::Channel;
    CHECK(header_line(unaccel_target) ==
          "# scenario: mu=0.25 accelerated=qubit filter=qutrit "
          "strength-mode=channel pair=NA");

    ScenarioConfig accel_target = unfiltered_config(0.25, {0.1});
    accel_target.accelerated = Subsystem::Qutrit;
    accel_target.filter.kind = ScenarioFilter::Kind::Qutrit;
    accel_target.filter.mode = FilterMode::Channel;
    accel_target.filter.pair_policy = PairPolicy::Keep;
    CHECK(header_line(accel_target) ==
          "# scenario: mu=0.25 accelerated=qutrit filter=qutrit "
          "strength-mode=channel pair=keep");
}

TEST_CASE("csv numbers round-trip exactly") {
    ScenarioConfig cfg = unfiltered_config(0.2, linspace(0.0, kQuarterPi, 7));
    cfg.filter.kind = ScenarioFilter::Kind::Qutrit;
    cfg.filter.mode = FilterMode::Postselect;
    cfg.strength_grid = {0.1, 1.0 / 3.0, 0.9};
    const SweepResult res = run_scenario(cfg);
    std::ostringstream os;
    write_csv(res, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line); // banner
    std::getline(is, line); // scenario
    std::getline(is, line); // column names
    CHECK(line == "r,strength,negativity");
    std::size_t i = 0;
    while (std::getline(is, line)) {
        REQUIRE(i < res.rows.size());
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 + 1);
        REQUIRE(c1 != std::string::npos);
        REQUIRE(c2 != std::string::npos);
        CHECK(std::strtod(line.substr(0, c1).c_str(), nullptr) == res.rows[i].r);
        CHECK(std::strtod(line.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr) ==
              *res.rows[i].strength);
        CHECK(std::strtod(line.substr(c2 + 1).c_str(), nullptr) == *res.rows[i].negativity);
        ++i;
    }
    CHECK(i == res.rows.size());
}

TEST_CASE("csv file writing reports io failures") {
    SweepResult res;
    res.config = unfiltered_config(0.0, {0.1});
    res.version = "0.1.0";
    CHECK_THROWS_AS(write_csv(res, "/nonexistent-dir/out.csv"), IoError);
}

TEST_CASE("svg structure") {
    ScenarioConfig cfg = unfiltered_config(0.0, linspace(0.0, kQuarterPi, 5));
    const SweepResult base = run_scenario(cfg);
    cfg.filter.kind = ScenarioFilter::Kind::Qubit;
    cfg.filter.strength = 0.2;
    const SweepResult filtered = run_scenario(cfg);
    SweepResult empty;
    empty.config = cfg;
    empty.version = kVersion;
    SweepRow null_row;
    null_row.r = 0.1;
    empty.rows = {null_row}; // no negativity: curve renders with no points

    const std::string path = temp_path("ufl_test_curves.svg");
    write_svg({base, filtered, empty}, path, {"unfiltered", "kappa<0.2>", "empty"});
    const std::string svg = slurp(path);
    std::remove(path.c_str());

    CHECK(count_occurrences(svg, "<svg ") == 1);
    CHECK(count_occurrences(svg, "<polyline ") == 3);
    CHECK(count_occurrences(svg, "points=\"\"") == 1);
    CHECK(count_occurrences(svg, "width=\"800\" height=\"500\"") >= 1);
    CHECK(svg.find(">r</text>") != std::string::npos);   // x-axis titled by r sweep
    CHECK(svg.find(">negativity</text>") != std::string::npos);
    CHECK(svg.find("kappa&lt;0.2&gt;") != std::string::npos);
    // Axis ticks: 6 per axis, each tick a black line segment, plus 2 axes.
    CHECK(count_occurrences(svg, "stroke=\"black\"") == 14);

    CHECK_THROWS_AS(write_svg({base}, path, {"a", "b"}), DimensionError);
}

TEST_CASE("svg strength axis follows the first curve") {
    ScenarioConfig cfg = unfiltered_config(0.5, {0.0});
    cfg.filter.kind = ScenarioFilter::Kind::Qutrit;
    cfg.filter.mode = FilterMode::Channel;
    cfg.strength_grid = linspace(0.1, 0.9, 9);
    const SweepResult res = run_scenario(cfg);
    const std::string path = temp_path("ufl_test_strength.svg");
    write_svg({res}, path, {scenario_label(res.config)});
    const std::string svg = slurp(path);
    std::remove(path.c_str());
    CHECK(svg.find(">strength</text>") != std::string::npos);
    CHECK(count_occurrences(svg, "<polyline ") == 1);
}

TEST_CASE("unfiltered negativity decreases with acceleration") {
    for (double mu : {0.0, 0.25, 0.5}) {
        const SweepResult res = run_scenario(unfiltered_config(mu, linspace(0.0, kQuarterPi, 21)));
        for (std::size_t i = 1; i < res.rows.size(); ++i) {
            CHECK(*res.rows[i].negativity <= *res.rows[i - 1].negativity + 1e-10);
        }
    }
}

TEST_CASE("trace-preserving filter sweeps never beat the baseline") {
    // The filtered qutrit here is unaccelerated (3 levels), so channel mode
    // is genuinely trace preserving and cannot create entanglement.
    for (double mu : {0.0, 0.3, 0.5}) {
        const SweepResult base = run_scenario(unfiltered_config(mu, linspace(0.0, kQuarterPi, 9)));
        for (double q : {0.1, 0.5, 0.9}) {
            ScenarioConfig cfg = unfiltered_config(mu, linspace(0.0, kQuarterPi, 9));
            cfg.filter.kind = ScenarioFilter::Kind::Qutrit;
            cfg.filter.mode = FilterMode::Channel;
            cfg.filter.strength = q;
            const SweepResult filtered = run_scenario(cfg);
            for (std::size_t i = 0; i < base.rows.size(); ++i) {
                CHECK(*filtered.rows[i].negativity <= *base.rows[i].negativity + 1e-10);
            }
        }
    }
}

TEST_CASE("strong postselection counteracts the acceleration loss") {
    // At maximal acceleration the unfiltered negativity of the pure member
    // drops to 1/2; a strong postselected qutrit filter pushes it back up.
    ScenarioConfig cfg = unfiltered_config(0.0, {kQuarterPi});
    const double baseline = *run_scenario(cfg).rows[0].negativity;
    CHECK(baseline == doctest::Approx(0.5).epsilon(1e-12));
    cfg.filter.kind = ScenarioFilter::Kind::Qutrit;
    cfg.filter.mode = FilterMode::Postselect;
    cfg.filter.strength = 0.995;
    const double filtered = *run_scenario(cfg).rows[0].negativity;
    CHECK(filtered > baseline);
    CHECK(filtered < baseline + 0.01);
}

} // TEST_SUITE

