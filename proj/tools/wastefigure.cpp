// wastefigure: waste-factor cascade, link energy and relay/FWA placement reports.
//
//   wastefigure cascade|link|relay|fwa <file> [--json <path>] [--csv <path>]
//                                            [--grid NX NY] [--quiet]
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <CLI11.hpp>
#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "wastefigure/cascade.hpp"
#include "wastefigure/energy.hpp"
#include "wastefigure/fwa.hpp"
#include "wastefigure/region.hpp"
#include "wastefigure/region_io.hpp"
#include "wastefigure/relay.hpp"
#include "wastefigure/scenario_io.hpp"

namespace {

using namespace wastefigure;
using nlohmann::json;

enum ExitCode : int { ok = 0, validation_failure = 1, io_failure = 2 };

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::string file;
    std::optional<std::string> json_path;
    std::optional<std::string> csv_path;
    std::vector<std::size_t> grid;
    unsigned threads = 0;
    bool quiet = false;
    bool ellipse = false;
};

std::string sig4(double v) { return fmt::format("{:#.4g}", v); }
std::string db2(Decibel d) { return fmt::format("{:.2f} dB", d.value); }

ScenarioFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open scenario file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw config_error(path + ": invalid JSON: " + e.what());
    }
    return parse_scenario(doc);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw io_error("failed writing '" + path + "'");
}

class Report {
public:
    explicit Report(bool quiet) : quiet_(quiet) {}

    template <class... Args>
    void line(fmt::format_string<Args...> f, Args&&... args) {
        if (!quiet_) fmt::print("{}\n", fmt::format(f, std::forward<Args>(args)...));
    }

private:
    bool quiet_;
};

json run_cascade(const Cascade& c, Report& out) {
    const auto report = contribution_report(c);
    const double w = report.total_waste.value();
    out.line("W = {}, WF = {}", sig4(w), db2(waste_figure(report.total_waste)));
    out.line("");
    out.line("{:<4} {:<20} {:>12} {:>9}", "rank", "stage", "term", "share");
    json terms = json::array();
    for (std::size_t r = 0; r < report.terms.size(); ++r) {
        const auto& t = report.terms[r];
        out.line("{:<4} {:<20} {:>12} {:>8.2f}%", r + 1, t.label, sig4(t.value), 100.0 * t.share);
        terms.push_back({{"label", t.label}, {"index", t.index}, {"term", t.value}, {"share", t.share}});
    }
    out.line("");
    out.line("dominant stage: {}", report.dominant().label);
    return json{{"total_waste", w}, {"waste_figure_db", waste_figure(report.total_waste).value}, {"terms", terms}};
}

json run_link(const LinkScenario& s, Report& out) {
    const auto& t = s.terminals;
    const auto& ctx = s.energy;
    const auto w_exact = link_waste(t, s.channel_gain, LinkMode::exact);
    const auto w_approx = link_waste(t, s.channel_gain, LinkMode::approximate);
    const double e_exact = energy_per_bit_link(ctx, t, s.channel_gain, LinkMode::exact);
    const double e_approx = energy_per_bit_link(ctx, t, s.channel_gain, LinkMode::approximate);
    if (!approximation_regime_ok(t.g_rx(), s.channel_gain)) {
        fmt::print(stderr, "warning: G_RX*G_ch = {} >= {}; the transmitter-dominated approximation is out of regime\n",
                   sig4(t.g_rx().value() * s.channel_gain.value()), approximation_regime_limit);
    }
    out.line("W_link (exact)       = {}  WF = {}", sig4(w_exact.value()), db2(waste_figure(w_exact)));
    out.line("W_link (approximate) = {}  WF = {}", sig4(w_approx.value()), db2(waste_figure(w_approx)));
    out.line("E_bc (exact)         = {} J/bit  E_bc/N0 = {}", sig4(e_exact), db2(energy_re_n0_db(e_exact, ctx.n0())));
    out.line("E_bc (approximate)   = {} J/bit  E_bc/N0 = {}", sig4(e_approx),
             db2(energy_re_n0_db(e_approx, ctx.n0())));

    json report{{"w_link_exact", w_exact.value()},
                {"w_link_approximate", w_approx.value()},
                {"e_bc_exact", e_exact},
                {"e_bc_approximate", e_approx},
                {"e_bc_exact_db_re_n0", energy_re_n0_db(e_exact, ctx.n0()).value},
                {"e_bc_approximate_db_re_n0", energy_re_n0_db(e_approx, ctx.n0()).value}};
    if (s.path_loss) {
        const auto d = max_efficient_distance(ctx, t, s.path_loss->k(), s.path_loss->alpha());
        out.line("max efficient distance = {}", d ? sig4(*d) : std::string("none"));
        report["max_efficient_distance"] = d ? json(*d) : json(nullptr);
    } else {
        out.line("max efficient distance = n/a (channel given without a path-loss model)");
    }
    return report;
}

json ellipse_json(const EllipseAxes& e) { return json{{"a", e.a}, {"b", e.b}}; }

std::optional<EllipseAxes> maybe_ellipse(double alpha, bool requested, auto&& axes) {
    if (alpha == 2.0) return axes();
    if (requested) axes();  // throws the explanatory domain error
    return std::nullopt;
}

json run_region(const FeasibilityRegion& region, const Options& opt, Report& out) {
    out.line("region: {} grid {}x{}, area_fraction = {} ({} of {} nodes advantageous)",
             region.spec.mode == GridMode::planar ? "planar" : "normalized", region.spec.nx, region.spec.ny,
             sig4(region.area_fraction), region.count(), region.mask.size());
    if (opt.csv_path) write_file(*opt.csv_path, to_csv(region));
    return to_json(region);
}

json run_relay(const RelayScenario& s, const std::optional<GridSpec>& sweep_spec, const Options& opt, Report& out) {
    const auto v = evaluate_relay(s);
    const double n0 = s.hw.ctx.n0();
    if (!v.approximation_ok) {
        fmt::print(stderr, "warning: a hop has G_RX*G >= {}; relay energies use the high-loss approximation\n",
                   approximation_regime_limit);
    }
    out.line("E_direct  = {} J/bit ({} re N0)", sig4(v.e_direct), db2(energy_re_n0_db(v.e_direct, n0)));
    out.line("E_relayed = {} J/bit ({} re N0)", sig4(v.e_relayed), db2(energy_re_n0_db(v.e_relayed, n0)));
    out.line("ratio E_relayed/E_direct = {}", sig4(v.ratio));
    out.line("decision margin (P_NP = 0 rule) = {}", sig4(v.decision_margin));
    out.line("verdict: {}", v.use_relay ? "use relay" : "direct link");

    json verdict{{"e_direct", v.e_direct},   {"e_relayed", v.e_relayed},
                 {"ratio", v.ratio},         {"use_relay", v.use_relay},
                 {"decision_margin", v.decision_margin}};
    if (auto e = maybe_ellipse(s.hw.alpha, opt.ellipse, [&] { return ellipse_axes(s.hw); })) {
        out.line("ellipse semi-axes: a = {} (d1/d3), b = {} (d2/d3)", sig4(e->a), sig4(e->b));
        verdict["ellipse"] = ellipse_json(*e);
    }
    json doc{{"verdict", verdict}};
    if (sweep_spec) doc["region"] = run_region(sweep_relay(s.hw, *sweep_spec, {opt.threads}), opt, out);
    return doc;
}

json run_fwa(const FwaScenario& s, const std::optional<GridSpec>& sweep_spec, const Options& opt, Report& out) {
    const auto v = evaluate_fwa(s);
    const auto c = fwa_coefficients(s.hw);
    const double n0 = s.hw.ctx.n0();
    out.line("traffic: rho_u = {}, rho_d = {}", sig4(s.hw.traffic.uplink()), sig4(s.hw.traffic.downlink()));
    out.line("E_direct  = {} J/bit ({} re N0)", sig4(v.e_direct), db2(energy_re_n0_db(v.e_direct, n0)));
    out.line("E_via_AP  = {} J/bit ({} re N0)", sig4(v.e_relayed), db2(energy_re_n0_db(v.e_relayed, n0)));
    out.line("ratio E_via_AP/E_direct = {}", sig4(v.ratio));
    out.line("distance rule: d3^a > {}*d1^a + {}*d2^a", sig4(c.a), sig4(c.b));
    out.line("verdict: {}", v.use_ap ? "use access point" : "direct link");

    json verdict{{"e_direct", v.e_direct},
                 {"e_relayed", v.e_relayed},
                 {"ratio", v.ratio},
                 {"use_ap", v.use_ap},
                 {"coefficients", {{"a", c.a}, {"b", c.b}}}};
    if (auto e = maybe_ellipse(s.hw.alpha, opt.ellipse, [&] { return fwa_ellipse_axes(s.hw); })) {
        out.line("ellipse semi-axes: a = {} (d1/d3), b = {} (d2/d3)", sig4(e->a), sig4(e->b));
        verdict["ellipse"] = ellipse_json(*e);
    }
    json doc{{"verdict", verdict}};
    if (sweep_spec) doc["region"] = run_region(sweep_fwa(s.hw, *sweep_spec, {opt.threads}), opt, out);
    return doc;
}

int run(Options opt) {
    auto file = load(opt.file);
    const std::string section = section_name(file.body);
    const std::string expected = opt.command == "relay" ? "relay_scenario"
                                 : opt.command == "fwa" ? "fwa_scenario"
                                                        : opt.command;
    if (section != expected) {
        throw config_error(opt.file + ": '" + opt.command + "' expects a '" + expected + "' section, found '" +
                           section + "'");
    }
    if (!opt.json_path) opt.json_path = file.output.json;
    if (!opt.csv_path) opt.csv_path = file.output.csv;

    const bool sweepable = std::holds_alternative<RelayScenario>(file.body) ||
                           std::holds_alternative<FwaScenario>(file.body);
    if (!sweepable && (opt.csv_path || !opt.grid.empty())) {
        throw config_error("--csv and --grid apply to relay and fwa scenarios only");
    }

    std::optional<GridSpec> sweep_spec = file.sweep;
    if (sweepable && !sweep_spec && (opt.csv_path || !opt.grid.empty())) {
        const double d3 = std::visit(
            [](const auto& s) -> double {
                if constexpr (requires { s.geo.d3; }) return s.geo.d3;
                else return 1.0;
            },
            file.body);
        sweep_spec = GridSpec::default_for(GridMode::normalized, d3);
    }
    if (sweep_spec && !opt.grid.empty()) {
        if (opt.grid[0] < 2 || opt.grid[1] < 2) throw config_error("--grid: NX and NY must be >= 2");
        sweep_spec->nx = opt.grid[0];
        sweep_spec->ny = opt.grid[1];
    }

    Report out(opt.quiet);
    json result = std::visit(
        [&](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Cascade>) return json{{"report", run_cascade(s, out)}};
            else if constexpr (std::is_same_v<T, LinkScenario>) return json{{"report", run_link(s, out)}};
            else if constexpr (std::is_same_v<T, RelayScenario>) return run_relay(s, sweep_spec, opt, out);
            else return run_fwa(s, sweep_spec, opt, out);
        },
        file.body);

    if (opt.json_path) {
        file.sweep = sweep_spec;
        file.output = {};
        result["scenario"] = to_json(file);
        write_file(*opt.json_path, result.dump(2) + "\n");
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Waste factor, energy-per-bit and relay placement analysis", "wastefigure"};
    app.require_subcommand(1);
    Options opt;

    for (const auto* name : {"cascade", "link", "relay", "fwa"}) {
        auto* sub = app.add_subcommand(name, fmt::format("evaluate a '{}' scenario file", name));
        sub->add_option("file", opt.file, "scenario file (JSON)")->required();
        sub->add_option("--json", opt.json_path, "write the machine-readable report to this path");
        sub->add_flag("--quiet", opt.quiet, "suppress the human-readable report");
        if (std::string(name) == "relay" || std::string(name) == "fwa") {
            sub->add_option("--csv", opt.csv_path, "write the feasibility region grid as CSV");
            sub->add_option("--grid", opt.grid, "grid resolution NX NY")->expected(2);
            sub->add_option("--threads", opt.threads, "sweep worker threads (0 = all cores)");
            sub->add_flag("--ellipse", opt.ellipse, "require the free-space ellipse (alpha = 2)");
        }
        sub->callback([&opt, sub] { opt.command = sub->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : validation_failure;
    }

    try {
        return run(opt);
    } catch (const io_error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return io_failure;
    } catch (const config_error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return validation_failure;
    } catch (const std::domain_error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return validation_failure;
    }
}
