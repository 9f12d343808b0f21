// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "wastefigure/cascade.hpp"
#include "wastefigure/channel.hpp"
#include "wastefigure/energy.hpp"
#include "wastefigure/fwa.hpp"
#include "wastefigure/region.hpp"
#include "wastefigure/region_io.hpp"
#include "wastefigure/relay.hpp"

using namespace wastefigure;
using oracle::rel_diff;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

RelayHardware relay_hw(double w_src, double w_rel, double g_rel_db, double g_sink_db, double alpha) {
    return RelayHardware{LinearRatio{w_src},
                         LinearRatio{w_rel},
                         db_to_linear(Decibel{g_rel_db}),
                         db_to_linear(Decibel{g_sink_db}),
                         alpha,
                         LinearRatio{1.0},
                         EnergyContext{1e-20, 1.0, 0.0}};
}

FwaHardware traffic_hw(double rho_u) {
    return FwaHardware{LinearRatio{3.0},
                       LinearRatio{15.0},
                       LinearRatio{10.0},
                       db_to_linear(Decibel{10.0}),
                       db_to_linear(Decibel{15.0}),
                       db_to_linear(Decibel{10.0}),
                       TrafficMix::from_uplink(rho_u),
                       4.0,
                       LinearRatio{1.0},
                       EnergyContext{1e-20, 1.0, 0.0}};
}

const GridSpec grid = GridSpec::default_for(GridMode::normalized);

Outcome shannon_floor() {
    const double n0 = 1e-20;
    const double e = energy_per_bit_min(EnergyContext{n0, 1e6, 0.0}, LinearRatio{1.0});
    const double db = energy_re_n0_db(e, n0).value;
    const bool ok = rel_diff(e / n0, std::numbers::ln2) <= 1e-15 && std::abs(db - (-1.59)) <= 0.01;
    return {ok, fmt("E/N0 = %.6f = %.4f dB", e / n0, db)};
}

Outcome cascade_fold() {
    gen::Rng rng(1001);
    double worst_fold = 0.0;
    double worst_cut = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto raw = gen::raw_stages(rng, rng.integer(1, 8));
        const auto c = gen::to_cascade(raw);
        const double w = cascade_waste(c).value();
        worst_fold = std::max({worst_fold, rel_diff(w, oracle::fold_waste(raw)), rel_diff(oracle::expanded_waste(raw), oracle::fold_waste(raw))});
        for (std::size_t m = 1; m < c.size(); ++m) {
            const auto suffix = c.slice(m, c.size());
            const double split = compose_subsystems(cascade_waste(c.slice(0, m)), cascade_waste(suffix), suffix.gain()).value();
            worst_cut = std::max(worst_cut, rel_diff(split, w));
        }
    }
    return {worst_fold <= 1e-12 && worst_cut <= 1e-12, fmt("max rel diff fold %.2e, cut %.2e", worst_fold, worst_cut)};
}

Outcome ideal_first_stage() {
    gen::Rng rng(1002);
    int exact = 0;
    for (int i = 0; i < 1000; ++i) {
        const double w2 = rng.uniform(1.0, 100.0);
        const double g2 = rng.log_uniform(1e-12, 1e12);
        exact += compose_subsystems(LinearRatio{1.0}, LinearRatio{w2}, LinearRatio{g2}).value() == w2 ? 1 : 0;
    }
    return {exact == 1000, fmt("%d/1000 exact", exact)};
}

Outcome link_identity() {
    gen::Rng rng(1003);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto ctx = gen::energy(rng, rng.coin());
        const LinkTerminals t{LinearRatio{rng.uniform(1.0, 100.0)}, LinearRatio{rng.uniform(1.0, 100.0)},
                              LinearRatio{rng.log_uniform(1e-2, 1e4)}};
        const LinearRatio g{rng.log_uniform(1e-12, 1.0)};
        const Cascade chain{{Stage::active("TX", LinearRatio{1.0}, t.w_tx()), channel_stage(g),
                             Stage::active("RX", t.g_rx(), t.w_rx())}};
        worst = std::max(worst, rel_diff(energy_per_bit_link(ctx, t, g), energy_per_bit_min(ctx, cascade_waste(chain))));
    }
    return {worst <= 1e-12, fmt("max rel diff %.2e over 1000 draws", worst)};
}

Outcome wideband_convergence() {
    gen::Rng rng(1004);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double n0 = rng.log_uniform(1e-21, 1e-19);
        const double p_s = rng.log_uniform(1e-15, 1e-6);
        const double p_np = rng.coin() ? 0.0 : rng.log_uniform(1e-9, 1.0);
        const LinearRatio w{rng.uniform(1.0, 1e3)};
        const double b = 1e9 * p_s / n0;
        const double cf = consumption_factor(b, p_s / (n0 * b), p_np, n0 * b, w);
        const EnergyContext ctx{n0, wideband_rate_limit(p_s, n0), p_np};
        worst = std::max(worst, rel_diff(1.0 / cf, energy_per_bit_min(ctx, w)));
    }
    return {worst <= 1e-4, fmt("max rel diff %.2e", worst)};
}

Outcome max_distance_oracle() {
    gen::Rng rng(1005);
    int sets = 0;
    int agree = 0;
    double worst = 0.0;
    while (sets < 200) {
        const oracle::LinkParams p{rng.log_uniform(1e-21, 1e-19), rng.log_uniform(1e6, 1e10), rng.log_uniform(1e-6, 10.0),
                                   rng.uniform(1.0, 20.0),        rng.uniform(1.0, 5.0),        rng.log_uniform(1.0, 1e4),
                                   rng.log_uniform(1e-3, 1.0),    rng.uniform(2.0, 6.0)};
        const auto d = max_efficient_distance(EnergyContext{p.n0, p.capacity, p.p_np},
                                              LinkTerminals{LinearRatio{p.w_tx}, LinearRatio{p.w_rx}, LinearRatio{p.g_rx}},
                                              LinearRatio{p.k}, p.alpha);
        if (!d) continue;
        ++sets;
        // Bracket the crossover from the inequality alone.
        double lo = 1.0;
        double hi = 1.0;
        while (!oracle::non_path_dominates(p, lo)) lo *= 0.5;
        while (oracle::non_path_dominates(p, hi)) hi *= 2.0;
        const double bisected = oracle::bisect_max_distance(p, lo, hi);
        worst = std::max(worst, rel_diff(bisected, *d));
        agree += oracle::non_path_dominates(p, 0.99 * *d) && !oracle::non_path_dominates(p, 1.01 * *d) ? 1 : 0;
    }
    return {agree == 200 && worst <= 1e-6, fmt("%d/200 bracket checks, bisection rel diff %.2e", agree, worst)};
}

Outcome relay_equivalence() {
    int mismatches = 0;
    int compared = 0;
    for (const bool with_pnp : {false, true}) {
        gen::Rng rng(with_pnp ? 1007 : 1006);
        for (int i = 0; i < 10000; ++i) {
            const auto s = gen::relay(rng, with_pnp);
            const double ratio = relay_ratio(s);
            if (std::abs(ratio - 1.0) <= 1e-9) continue;
            ++compared;
            const auto term = with_pnp ? NonPathTerm::included : NonPathTerm::excluded;
            mismatches += (ratio < 1.0) != decision_rule_holds(s, term) ? 1 : 0;
        }
    }
    return {mismatches == 0, fmt("%d mismatches over %d scenarios", mismatches, compared)};
}

Outcome ellipse_correctness() {
    const auto hw = relay_hw(1.0, 2.0, 20.0, 0.0, 2.0);
    const auto e = ellipse_axes(hw);
    double worst = 0.0;
    for (int n = 0; n < 360; ++n) {
        const double t = 2.0 * std::numbers::pi * n / 360.0;
        const double x = e.a * std::cos(t);
        const double y = e.b * std::sin(t);
        const double lhs = hw.g_rx_sink.value() / hw.g_rx_relay.value() * x * x +
                           hw.w_tx_relay.value() / hw.w_tx_source.value() * y * y;
        worst = std::max(worst, std::abs(lhs - 1.0));
    }
    gen::Rng rng(1008);
    int disagreements = 0;
    for (int i = 0; i < 10000; ++i) {
        auto h = gen::relay(rng, false).hw;
        h.alpha = 2.0;
        const auto ax = ellipse_axes(h);
        const double x = rng.uniform(0.0, 1.5 * ax.a);
        const double y = rng.uniform(0.0, 1.5 * ax.b);
        if (std::abs(ax.level(x, y) - 1.0) < 1e-9) continue;
        disagreements += ax.contains(x, y) != decision_rule_holds(h, {x, y, 1.0}) ? 1 : 0;
    }
    const double area = sweep_relay(relay_hw(1, 1, 0, 0, 2), grid).area_fraction;
    const bool ok = worst <= 1e-12 && disagreements == 0 && std::abs(area - oracle::quarter_disc_fraction(1.5)) <= 0.01;
    return {ok, fmt("boundary err %.2e, %d sampling disagreements, area %.4f vs %.4f", worst, disagreements, area,
                    oracle::quarter_disc_fraction(1.5))};
}

Outcome family_nesting() {
    const auto chain = [](std::vector<RelayHardware> inner_to_outer) {
        std::vector<FeasibilityRegion> r;
        for (const auto& h : inner_to_outer) r.push_back(sweep_relay(h, grid));
        for (std::size_t i = 0; i + 1 < r.size(); ++i) {
            if (!region_strict_subset(r[i], r[i + 1])) return false;
        }
        return true;
    };
    const bool waste = chain({relay_hw(1, 8, 30, 10, 6), relay_hw(1, 4, 30, 10, 6), relay_hw(1, 2, 30, 10, 6)});
    const bool alpha = chain({relay_hw(1, 2, 30, 10, 4), relay_hw(1, 2, 30, 10, 5), relay_hw(1, 2, 30, 10, 6)});
    const bool gain = chain({relay_hw(1, 2, 20, 10, 6), relay_hw(1, 2, 25, 10, 6), relay_hw(1, 2, 30, 10, 6)});
    return {waste && alpha && gain, fmt("relay waste %s, path loss exponent %s, relay gain %s", waste ? "nested" : "NOT nested",
                                        alpha ? "nested" : "NOT nested", gain ? "nested" : "NOT nested")};
}

Outcome fwa_reductions() {
    gen::Rng rng(1010);
    double worst = 0.0;
    int decision_mismatch = 0;
    for (int i = 0; i < 2000; ++i) {
        auto s = gen::fwa(rng, rng.coin());
        for (const double rho_u : {1.0, 0.0}) {
            s.hw.traffic = TrafficMix::from_uplink(rho_u);
            const RelayScenario r{rho_u == 1.0 ? uplink_relay(s.hw) : downlink_relay(s.hw), s.geo};
            worst = std::max({worst, rel_diff(fwa_direct_energy(s), direct_energy(r)),
                              rel_diff(fwa_relayed_energy(s), relayed_energy(r)), rel_diff(fwa_ratio(s), relay_ratio(r))});
            decision_mismatch += fwa_decision_holds(s) != decision_rule_holds(r) ? 1 : 0;
        }
    }
    int sweep_mismatch = 0;
    for (const double rho_u : {1.0, 0.0}) {
        const auto h = traffic_hw(rho_u);
        const auto mapped = rho_u == 1.0 ? uplink_relay(h) : downlink_relay(h);
        sweep_mismatch += sweep_fwa(h, grid).mask != sweep_relay(mapped, grid).mask ? 1 : 0;
    }
    return {worst <= 1e-12 && decision_mismatch == 0 && sweep_mismatch == 0,
            fmt("energy rel diff %.2e, %d decision and %d sweep mismatches", worst, decision_mismatch, sweep_mismatch)};
}

Outcome fwa_traffic_trend() {
    const auto r1 = sweep_fwa(traffic_hw(0.1), grid);
    const auto r5 = sweep_fwa(traffic_hw(0.5), grid);
    const auto r9 = sweep_fwa(traffic_hw(0.9), grid);
    const bool ok = r9.area_fraction <= r5.area_fraction && r5.area_fraction <= r1.area_fraction &&
                    region_subset(r9, r5) && region_subset(r5, r1);
    return {ok, fmt("area %.4f (rho_u=0.1) >= %.4f (0.5) >= %.4f (0.9)", r1.area_fraction, r5.area_fraction,
                    r9.area_fraction)};
}

Outcome granular_chain() {
    gen::Rng rng(1012);
    double worst = 0.0;
    int pa_dominant = 0;
    const int trials = 1000;
    for (int i = 0; i < trials; ++i) {
        GranularChain chain;
        if (i > 0) {
            chain.lna_gain = LinearRatio{rng.uniform(1.0, 100.0)};
            chain.pa_gain = LinearRatio{rng.uniform(1.0, 100.0)};
            chain.processing_gain = LinearRatio{rng.uniform(1.0, 100.0)};
            chain.prior_rx_gain = LinearRatio{rng.uniform(1.0, 100.0)};
            chain.channel_gain = LinearRatio{rng.log_uniform(1e-12, 1e-6)};
        }
        const auto c = chain.cascade();
        const auto report = contribution_report(c);
        std::vector<oracle::RawStage> raw;
        for (const auto& s : c.stages()) raw.push_back({s.gain().value(), s.waste().value()});
        worst = std::max({worst, rel_diff(report.total_waste.value(), cascade_waste(c).value()),
                          rel_diff(report.total_waste.value(), oracle::expanded_waste(raw))});
        pa_dominant += report.dominant().label == "PA" && c[oracle::argmax(oracle::brute_force_terms(raw))].label() == "PA";
    }
    return {worst <= 1e-12 && pa_dominant == trials,
            fmt("rel diff %.2e, PA dominant in %d/%d deep-fade chains", worst, pa_dominant, trials)};
}

Outcome determinism() {
    const auto planar = GridSpec::default_for(GridMode::planar, 40.0);
    const auto relay = relay_hw(1.0, 2.0, 6.0, 0.0, 2.0);
    const auto fwa = traffic_hw(0.5);
    const std::string relay_ref = to_csv(sweep_relay(relay, planar, {1}));
    const std::string fwa_ref = to_csv(sweep_fwa(fwa, grid, {1}));
    int identical = 0;
    int runs = 0;
    for (const unsigned t : {0u, 2u, 3u, 8u, 16u, 0u}) {
        runs += 2;
        identical += to_csv(sweep_relay(relay, planar, {t})) == relay_ref ? 1 : 0;
        identical += to_csv(sweep_fwa(fwa, grid, {t})) == fwa_ref ? 1 : 0;
    }
    return {identical == runs, fmt("%d/%d parallel CSV outputs byte-identical", identical, runs)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"Shannon floor", shannon_floor},
        {"cascade fold equivalence and cut-point invariance", cascade_fold},
        {"ideal first stage limit", ideal_first_stage},
        {"link identity", link_identity},
        {"wideband convergence", wideband_convergence},
        {"max-distance oracle", max_distance_oracle},
        {"relay decision/energy equivalence", relay_equivalence},
        {"ellipse correctness", ellipse_correctness},
        {"relay family nesting", family_nesting},
        {"FWA edge reductions", fwa_reductions},
        {"FWA traffic trend", fwa_traffic_trend},
        {"granular chain", granular_chain},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
