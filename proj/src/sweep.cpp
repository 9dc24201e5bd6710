#include "ufl/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "ufl/errors.hpp"
#include "ufl/format.hpp"
#include "ufl/measures.hpp"
#include "ufl/rindler.hpp"
#include "ufl/version.hpp"

namespace ufl {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

void validate_config(const ScenarioConfig& cfg) {
    FamilyParameter mu_check(cfg.mu);
    if (cfg.r_grid.empty()) throw RangeError("r grid must not be empty");
    for (std::size_t i = 0; i < cfg.r_grid.size(); ++i) {
        RindlerParameter r_check(cfg.r_grid[i]);
        if (i > 0 && !(cfg.r_grid[i] > cfg.r_grid[i - 1])) {
            throw RangeError("r grid must be strictly increasing");
        }
    }
    if (!cfg.strength_grid.empty()) {
        if (cfg.filter.kind == ScenarioFilter::Kind::None) {
            throw RangeError("a strength grid requires an active filter");
        }
        for (std::size_t i = 0; i < cfg.strength_grid.size(); ++i) {
            const double s = cfg.strength_grid[i];
            if (!std::isfinite(s) || s <= 0.0 || s >= 1.0) {
                throw RangeError("strength grid values must lie strictly inside (0, 1)");
            }
            if (i > 0 && !(s > cfg.strength_grid[i - 1])) {
                throw RangeError("strength grid must be strictly increasing");
            }
        }
    } else if (cfg.filter.kind != ScenarioFilter::Kind::None) {
        const double s = cfg.filter.strength;
        if (!std::isfinite(s) || s <= 0.0 || s >= 1.0) {
            throw RangeError("filter strength must lie strictly inside (0, 1)");
        }
    }
}

SweepRow eval_point(const ScenarioConfig& cfg, std::size_t idx, std::size_t inner) {
    SweepRow row;
    row.r = cfg.r_grid[idx / inner];
    if (cfg.filter.kind != ScenarioFilter::Kind::None) {
        row.strength = cfg.strength_grid.empty() ? cfg.filter.strength
                                                 : cfg.strength_grid[idx % inner];
    }
    DensityMatrix state = one_param_state(FamilyParameter(cfg.mu));
    state = accelerate(state, cfg.accelerated, RindlerParameter(row.r));
    if (row.strength) {
        FilterSpec spec;
        spec.target = cfg.filter.kind == ScenarioFilter::Kind::Qubit ? Subsystem::Qubit
                                                                     : Subsystem::Qutrit;
        spec.strength = *row.strength;
        spec.mode = cfg.filter.mode;
        spec.pair_policy = cfg.filter.pair_policy;
        try {
            state = apply_filter(state, spec);
        } catch (const FilteredToZeroError&) {
            return row; // null negativity, row kept for stable counts
        }
    }
    row.negativity = negativity(state);
    return row;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n < 2) throw RangeError("linspace needs at least 2 points");
    std::vector<double> out(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

SweepResult run_scenario(const ScenarioConfig& cfg, unsigned threads) {
    validate_config(cfg);
    const std::size_t inner = std::max<std::size_t>(1, cfg.strength_grid.size());
    const std::size_t total = cfg.r_grid.size() * inner;
    std::vector<SweepRow> rows(total);

    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, threads), total);
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) rows[i] = eval_point(cfg, i, inner);
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr first_error;
        auto drain = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= total) return;
                try {
                    rows[i] = eval_point(cfg, i, inner);
                } catch (...) {
                    std::lock_guard<std::mutex> guard(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers - 1);
        for (std::size_t t = 0; t + 1 < workers; ++t) pool.emplace_back(drain);
        drain();
        for (std::thread& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    return SweepResult{cfg, kVersion, std::move(rows)};
}

std::vector<ScenarioConfig> figure_preset(int id, const FamilyParameter& mu) {
    if (id < 1 || id > 6) throw RangeError("figure id must be in 1..6");
    using Kind = ScenarioFilter::Kind;
    const Subsystem accel = id <= 3 ? Subsystem::Qubit : Subsystem::Qutrit;
    std::vector<ScenarioConfig> out;
    if (id == 3 || id == 6) {
        // Strength sweeps at four fixed accelerations; the last nominal point
        // (0.8) sits past the r range, so it clamps to pi/4.
        const std::vector<double> fixed_r{0.2, 0.4, 0.6, kQuarterPi};
        for (Kind kind : {Kind::Qubit, Kind::Qutrit}) {
            for (double r : fixed_r) {
                ScenarioConfig cfg;
                cfg.mu = mu.value();
                cfg.accelerated = accel;
                cfg.filter.kind = kind;
                cfg.r_grid = {r};
                cfg.strength_grid = linspace(0.005, 0.995, 101);
                out.push_back(std::move(cfg));
            }
        }
    } else {
        const Kind kind = (id == 1 || id == 4) ? Kind::Qubit : Kind::Qutrit;
        ScenarioConfig base;
        base.mu = mu.value();
        base.accelerated = accel;
        base.r_grid = linspace(0.0, kQuarterPi, 101);
        out.push_back(base); // unfiltered baseline
        for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            ScenarioConfig cfg = base;
            cfg.filter.kind = kind;
            cfg.filter.strength = s;
            out.push_back(std::move(cfg));
        }
    }
    return out;
}

std::string scenario_label(const ScenarioConfig& cfg) {
    using Kind = ScenarioFilter::Kind;
    if (cfg.filter.kind == Kind::None) return "unfiltered";
    const std::string symbol = cfg.filter.kind == Kind::Qubit ? "kappa" : "Q";
    if (!cfg.strength_grid.empty()) {
        return symbol + "(r=" + format_shortest(cfg.r_grid.front()) + ")";
    }
    return symbol + "=" + format_shortest(cfg.filter.strength);
}

void write_csv(const SweepResult& res, std::ostream& os) {
    const ScenarioConfig& cfg = res.config;
    using Kind = ScenarioFilter::Kind;
    const char* accel = cfg.accelerated == Subsystem::Qubit ? "qubit" : "qutrit";
    const char* filter = cfg.filter.kind == Kind::None     ? "none"
                         : cfg.filter.kind == Kind::Qubit  ? "qubit"
                                                            : "qutrit";
    std::string mode = "NA";
    if (cfg.filter.kind == Kind::Qubit) {
        mode = "postselect";
    } else if (cfg.filter.kind == Kind::Qutrit) {
        mode = cfg.filter.mode == FilterMode::Postselect ? "postselect" : "channel";
    }
    // The pair policy only acts on a 4-level filtered factor, i.e. when the
    // filtered qutrit is itself the accelerated party.
    std::string pair = "NA";
    if (cfg.filter.kind == Kind::Qutrit && cfg.accelerated == Subsystem::Qutrit) {
        pair = cfg.filter.pair_policy == PairPolicy::Discard ? "discard" : "keep";
    }
    os << "# " << kLibraryName << " v" << res.version << "\n";
    os << "# scenario: mu=" << format_g17(cfg.mu) << " accelerated=" << accel
       << " filter=" << filter << " strength-mode=" << mode << " pair=" << pair << "\n";
    os << "r,strength,negativity\n";
    for (const SweepRow& row : res.rows) {
        os << format_shortest(row.r) << ",";
        os << (row.strength ? format_shortest(*row.strength) : "NA") << ",";
        os << (row.negativity ? format_shortest(*row.negativity) : "NA") << "\n";
    }
}

void write_csv(const SweepResult& res, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(path, "cannot open for writing");
    write_csv(res, os);
    os.flush();
    if (!os.good()) throw IoError(path, "write failed");
}

void write_svg(const std::vector<SweepResult>& results, const std::string& path,
               const std::vector<std::string>& labels) {
    if (labels.size() != results.size()) {
        throw DimensionError("write_svg needs exactly one label per curve");
    }
    constexpr double kWidth = 800, kHeight = 500;
    constexpr double kLeft = 70, kRight = 780, kTop = 20, kBottom = 450;
    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    struct Point {
        double x, y;
    };
    std::vector<std::vector<Point>> curves(results.size());
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < results.size(); ++c) {
        const bool by_strength = !results[c].config.strength_grid.empty();
        for (const SweepRow& row : results[c].rows) {
            if (!row.negativity) continue;
            const double x = by_strength ? row.strength.value_or(row.r) : row.r;
            curves[c].push_back({x, *row.negativity});
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
        }
    }
    if (!(xmin < xmax)) {
        const double center = std::isfinite(xmin) ? xmin : 0.5;
        xmin = center - 0.5;
        xmax = center + 0.5;
    }
    const double ymin = 0.0, ymax = 1.0;
    auto map_x = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft); };
    auto map_y = [&](double y) { return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop); };

    const bool strength_axis =
        !results.empty() && !results.front().config.strength_grid.empty();
    const char* x_title = strength_axis ? "strength" : "r";

    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(path, "cannot open for writing");
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
          "viewBox=\"0 0 800 500\">\n";
    os << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    os << "  <line x1=\"" << px(kLeft) << "\" y1=\"" << px(kBottom) << "\" x2=\"" << px(kRight)
       << "\" y2=\"" << px(kBottom) << "\" stroke=\"black\"/>\n";
    os << "  <line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(kLeft)
       << "\" y2=\"" << px(kBottom) << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double fx = xmin + (xmax - xmin) * t / 5.0;
        const double fy = ymin + (ymax - ymin) * t / 5.0;
        const double tx = map_x(fx);
        const double ty = map_y(fy);
        char label[32];
        os << "  <line x1=\"" << px(tx) << "\" y1=\"" << px(kBottom) << "\" x2=\"" << px(tx)
           << "\" y2=\"" << px(kBottom + 6) << "\" stroke=\"black\"/>\n";
        std::snprintf(label, sizeof label, "%.3g", fx);
        os << "  <text x=\"" << px(tx) << "\" y=\"" << px(kBottom + 22)
           << "\" font-size=\"12\" text-anchor=\"middle\">" << label << "</text>\n";
        os << "  <line x1=\"" << px(kLeft - 6) << "\" y1=\"" << px(ty) << "\" x2=\"" << px(kLeft)
           << "\" y2=\"" << px(ty) << "\" stroke=\"black\"/>\n";
        std::snprintf(label, sizeof label, "%.3g", fy);
        os << "  <text x=\"" << px(kLeft - 10) << "\" y=\"" << px(ty + 4)
           << "\" font-size=\"12\" text-anchor=\"end\">" << label << "</text>\n";
    }
    os << "  <text x=\"" << px((kLeft + kRight) / 2) << "\" y=\"" << px(kHeight - 10)
       << "\" font-size=\"14\" text-anchor=\"middle\">" << x_title << "</text>\n";
    os << "  <text x=\"18\" y=\"" << px((kTop + kBottom) / 2)
       << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << px((kTop + kBottom) / 2) << ")\">negativity</text>\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const char* color = kPalette[c % (sizeof kPalette / sizeof kPalette[0])];
        os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < curves[c].size(); ++i) {
            if (i) os << " ";
            os << px(map_x(curves[c][i].x)) << "," << px(map_y(curves[c][i].y));
        }
        os << "\"/>\n";
    }
    for (std::size_t c = 0; c < labels.size(); ++c) {
        const char* color = kPalette[c % (sizeof kPalette / sizeof kPalette[0])];
        const double ly = kTop + 16 + 18.0 * static_cast<double>(c);
        os << "  <line x1=\"" << px(kRight - 150) << "\" y1=\"" << px(ly) << "\" x2=\""
           << px(kRight - 120) << "\" y2=\"" << px(ly) << "\" stroke=\"" << color
           << "\" stroke-width=\"1.5\"/>\n";
        os << "  <text x=\"" << px(kRight - 112) << "\" y=\"" << px(ly + 4)
           << "\" font-size=\"12\">" << xml_escape(labels[c]) << "</text>\n";
    }
    os << "</svg>\n";
    os.flush();
    if (!os.good()) throw IoError(path, "write failed");
}

} // namespace ufl
