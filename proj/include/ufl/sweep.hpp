// Scenario grids over acceleration and filter strength, the presets behind
// the six shipped figures, and CSV/SVG emission. Grid points are pure
// function evaluations, so run_scenario may fan them out over threads; rows
// are written by index and the output is byte-identical at any thread count.

#ifndef UFL_SWEEP_HPP
#define UFL_SWEEP_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ufl/filters.hpp"
#include "ufl/states.hpp"

namespace ufl {

struct ScenarioFilter {
    enum class Kind { None, Qubit, Qutrit };
    Kind kind = Kind::None;
    double strength = 0.5; // used when the scenario has no strength grid
    FilterMode mode = FilterMode::Postselect;
    PairPolicy pair_policy = PairPolicy::Discard;
};

struct ScenarioConfig {
    double mu = 0.0;
    Subsystem accelerated = Subsystem::Qubit;
    ScenarioFilter filter;
    std::vector<double> r_grid;
    std::vector<double> strength_grid; // non-empty sweeps the filter strength
};

struct SweepRow {
    double r = 0.0;
    std::optional<double> strength;   // absent for unfiltered scenarios
    std::optional<double> negativity; // absent when the filter annihilated the state
};

struct SweepResult {
    ScenarioConfig config;
    std::string version;
    std::vector<SweepRow> rows; // r outer, strength inner
};

// n evenly spaced points from lo to hi inclusive; n >= 2.
std::vector<double> linspace(double lo, double hi, std::size_t n);

// Evaluate every grid point of cfg. threads <= 1 runs serially; the row
// order and values do not depend on the thread count. A filtered-to-zero
// point becomes a null-negativity row rather than an error.
SweepResult run_scenario(const ScenarioConfig& cfg, unsigned threads = 1);

// Configs reproducing figure id 1..6 at the caller's mu. Ids 1,2,4,5 sweep
// r over 101 points with the unfiltered baseline plus filter strengths
// {0.1,0.3,0.5,0.7,0.9}; ids 3,6 sweep strength over 101 points in
// (0.005,0.995) for both filter targets at four fixed r values. Qutrit
// filters default to postselect mode with the pair level discarded.
std::vector<ScenarioConfig> figure_preset(int id, const FamilyParameter& mu);

// Short curve label for legends, e.g. "unfiltered", "kappa=0.3", "Q(r=0.2)".
std::string scenario_label(const ScenarioConfig& cfg);

void write_csv(const SweepResult& res, std::ostream& os);
void write_csv(const SweepResult& res, const std::string& path);

// One polyline per result; labels must pair 1:1 with results.
void write_svg(const std::vector<SweepResult>& results, const std::string& path,
               const std::vector<std::string>& labels);

} // namespace ufl

#endif // UFL_SWEEP_HPP
