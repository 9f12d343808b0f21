#pragma once

// Scenario files: one JSON document holding exactly one of the sections
// `cascade`, `link`, `relay_scenario` or `fwa_scenario`, plus optional
// `sweep` and `output`. Any numeric ratio field `foo` may instead be given in
// decibels as `foo_db`; exactly one of the two spellings must be present.

#include <nlohmann/json.hpp>

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wastefigure/cascade.hpp"
#include "wastefigure/channel.hpp"
#include "wastefigure/energy.hpp"
#include "wastefigure/fwa.hpp"
#include "wastefigure/region.hpp"
#include "wastefigure/relay.hpp"
#include "wastefigure/units.hpp"

namespace wastefigure {

/// Invalid scenario content. The message names the offending field.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Smallest channel gain accepted from configuration.
inline constexpr double min_channel_gain = 1e-30;

struct LinkScenario {
    LinkTerminals terminals;
    EnergyContext energy;
    LinearRatio channel_gain;
    std::optional<PathLossChannel> path_loss;  // set when the channel was given as {k, alpha, distance}

    friend bool operator==(const LinkScenario&, const LinkScenario&) = default;
};

using ScenarioBody = std::variant<Cascade, LinkScenario, RelayScenario, FwaScenario>;

struct OutputPaths {
    std::optional<std::string> json;
    std::optional<std::string> csv;

    friend bool operator==(const OutputPaths&, const OutputPaths&) = default;
};

struct ScenarioFile {
    ScenarioBody body;
    std::optional<GridSpec> sweep;
    OutputPaths output;

    friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

[[nodiscard]] inline const char* section_name(const ScenarioBody& body) {
    constexpr const char* names[] = {"cascade", "link", "relay_scenario", "fwa_scenario"};
    return names[body.index()];
}

namespace detail {

using json = nlohmann::json;

class Reader {
public:
    Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) fail("", "must be an object");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw config_error(field(key) + ": " + what);
    }

    [[nodiscard]] std::string field(const std::string& key) const { return key.empty() ? path_ : path_ + "." + key; }

    [[nodiscard]] bool has(const std::string& key) const { return node_.contains(key); }

    [[nodiscard]] double number(const std::string& key) const {
        used_.insert(key);
        if (!node_.contains(key)) fail(key, "required field missing");
        return as_number(node_.at(key), key);
    }

    [[nodiscard]] double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    [[nodiscard]] std::optional<double> optional_number(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return number(key);
    }

    /// Ratio given linearly as `key` or in dB as `key_db`.
    [[nodiscard]] LinearRatio ratio(const std::string& key) const {
        const std::string db_key = key + "_db";
        used_.insert(key);
        used_.insert(db_key);
        const bool lin = node_.contains(key);
        const bool db = node_.contains(db_key);
        if (lin && db) fail(key, "give either '" + key + "' or '" + db_key + "', not both");
        if (!lin && !db) fail(key, "required field missing (as '" + key + "' or '" + db_key + "')");
        return guarded(db ? db_key : key, [&] {
            return db ? db_to_linear(Decibel{as_number(node_.at(db_key), db_key)})
                      : LinearRatio{as_number(node_.at(key), key)};
        });
    }

    /// Ratio that must be a waste factor (>= 1).
    [[nodiscard]] LinearRatio waste(const std::string& key) const {
        const auto w = ratio(key);
        return guarded(has(key + "_db") ? key + "_db" : key, [&] {
            require_waste(w, key.c_str());
            return w;
        });
    }

    [[nodiscard]] LinearRatio ratio_or(const std::string& key, LinearRatio fallback) const {
        return has(key) || has(key + "_db") ? ratio(key) : fallback;
    }

    [[nodiscard]] Reader child(const std::string& key) const {
        used_.insert(key);
        if (!node_.contains(key)) fail(key, "required section missing");
        return Reader{node_.at(key), field(key)};
    }

    [[nodiscard]] const json& raw(const std::string& key) const {
        used_.insert(key);
        if (!node_.contains(key)) fail(key, "required field missing");
        return node_.at(key);
    }

    /// Runs `make`, re-throwing library domain errors against `key`.
    template <class F>
    auto guarded(const std::string& key, F&& make) const -> decltype(make()) {
        try {
            return make();
        } catch (const std::domain_error& e) {
            fail(key, e.what());
        }
    }

    void reject_unknown() const {
        for (const auto& [key, value] : node_.items()) {
            if (!used_.contains(key)) fail(key, "unknown field");
        }
    }

private:
    double as_number(const json& v, const std::string& key) const {
        if (!v.is_number()) fail(key, "must be a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(key, "must be finite");
        return d;
    }

    const json& node_;
    std::string path_;
    mutable std::set<std::string> used_;
};

inline EnergyContext read_energy(const Reader& r) {
    const double n0 = r.number("n0");
    const double capacity = r.number("capacity");
    const double p_np = r.number("p_np");
    return r.guarded("", [&] { return EnergyContext{n0, capacity, p_np}; });
}

// FWA accepts per-direction P_NP and C; they must all equal the shared values.
inline EnergyContext read_fwa_energy(const Reader& r) {
    const auto ctx = read_energy(r);
    for (const char* key : {"p_np_u", "p_np_d"}) {
        if (auto v = r.optional_number(key); v && *v != ctx.p_np()) {
            r.fail(key, "per-direction non-path power must equal p_np (shared across links)");
        }
    }
    for (const char* key : {"capacity_u", "capacity_d"}) {
        if (auto v = r.optional_number(key); v && *v != ctx.capacity()) {
            r.fail(key, "per-direction capacity must equal capacity (shared across links)");
        }
    }
    r.reject_unknown();
    return ctx;
}

inline LinearRatio checked_channel_gain(const Reader& r, LinearRatio g) {
    if (g.value() < min_channel_gain) r.fail("", "channel gain below 1e-30 is not supported");
    if (g.value() > 1.0) r.fail("", "channel models attenuation only: gain must be <= 1");
    return g;
}

struct ChannelSpec {
    LinearRatio gain;
    std::optional<PathLossChannel> path_loss;
};

inline ChannelSpec read_channel(const Reader& r) {
    const bool distance_form = r.has("distance") || r.has("alpha") || r.has("k") || r.has("k_db");
    const bool gain_form = r.has("gain") || r.has("gain_db");
    if (distance_form == gain_form) {
        r.fail("", "give either {k, alpha, distance} or {gain_db}");
    }
    ChannelSpec spec;
    if (gain_form) {
        spec.gain = r.ratio("gain");
    } else {
        const auto k = r.ratio_or("k", LinearRatio{1.0});
        const double alpha = r.number("alpha");
        const double distance = r.number("distance");
        spec.path_loss = r.guarded("", [&] { return PathLossChannel{distance, alpha, k}; });
        spec.gain = r.guarded("", [&] { return spec.path_loss->gain(); });
    }
    r.reject_unknown();
    spec.gain = checked_channel_gain(r, spec.gain);
    return spec;
}

inline Stage read_stage(const Reader& r) {
    const std::string label = r.has("label") ? r.raw("label").get<std::string>() : "stage";
    if (r.has("channel")) {
        const auto ch = read_channel(r.child("channel"));
        r.reject_unknown();
        return r.guarded("channel", [&] { return channel_stage(ch.gain, label); });
    }
    const bool passive = r.has("passive") && r.raw("passive").get<bool>();
    const auto gain = r.ratio("gain");
    if (passive) {
        r.reject_unknown();
        return r.guarded("gain", [&] { return Stage::passive(label, gain); });
    }
    const auto waste = r.ratio("waste");
    r.reject_unknown();
    return r.guarded("waste", [&] { return Stage::active(label, gain, waste); });
}

inline Cascade read_cascade(const Reader& r) {
    const auto& stages = r.raw("stages");
    if (!stages.is_array() || stages.empty()) r.fail("stages", "must be a non-empty array");
    std::vector<Stage> out;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        out.push_back(read_stage(Reader{stages[i], r.field("stages[" + std::to_string(i) + "]")}));
    }
    r.reject_unknown();
    return Cascade{std::move(out)};
}

inline LinkScenario read_link(const Reader& r) {
    const auto t = r.child("terminals");
    const auto w_tx = t.waste("w_tx");
    const auto w_rx = t.waste("w_rx");
    const auto g_rx = t.ratio("g_rx");
    t.reject_unknown();
    auto terminals = t.guarded("", [&] { return LinkTerminals{w_tx, w_rx, g_rx}; });
    const auto ch = read_channel(r.child("channel"));
    const auto energy_reader = r.child("energy");
    auto energy = read_energy(energy_reader);
    energy_reader.reject_unknown();
    r.reject_unknown();
    return LinkScenario{terminals, energy, ch.gain, ch.path_loss};
}

inline RelayGeometry read_geometry(const Reader& r) {
    RelayGeometry g{r.number("d1"), r.number("d2"), r.number("d3")};
    r.guarded("", [&] {
        g.validate();
        return 0;
    });
    return g;
}

inline RelayScenario read_relay(const Reader& r) {
    RelayScenario s;
    s.hw.w_tx_source = r.waste("w_tx_source");
    s.hw.w_tx_relay = r.waste("w_tx_relay");
    s.hw.g_rx_relay = r.ratio("g_rx_relay");
    s.hw.g_rx_sink = r.ratio("g_rx_sink");
    s.hw.alpha = r.number("alpha");
    s.hw.k = r.ratio_or("k", LinearRatio{1.0});
    const auto e = r.child("energy");
    s.hw.ctx = read_energy(e);
    e.reject_unknown();
    s.geo = read_geometry(r);
    r.reject_unknown();
    r.guarded("", [&] {
        s.hw.validate();
        return 0;
    });
    return s;
}

inline FwaScenario read_fwa(const Reader& r) {
    FwaScenario s;
    s.hw.w_tx_ue = r.waste("w_tx_ue");
    s.hw.w_tx_bs = r.waste("w_tx_bs");
    s.hw.w_tx_ap = r.waste("w_tx_ap");
    s.hw.g_rx_ue = r.ratio("g_rx_ue");
    s.hw.g_rx_bs = r.ratio("g_rx_bs");
    s.hw.g_rx_ap = r.ratio("g_rx_ap");
    const double rho_u = r.number("rho_u");
    s.hw.traffic = r.guarded("rho_u", [&] { return TrafficMix::from_uplink(rho_u); });
    s.hw.alpha = r.number("alpha");
    s.hw.k = r.ratio_or("k", LinearRatio{1.0});
    s.hw.ctx = read_fwa_energy(r.child("energy"));
    s.geo = read_geometry(r);
    r.reject_unknown();
    r.guarded("", [&] {
        s.hw.validate();
        return 0;
    });
    return s;
}

inline Interval read_interval(const Reader& r, const std::string& key, Interval fallback) {
    if (!r.has(key)) return fallback;
    const auto& v = r.raw(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        r.fail(key, "must be a [lo, hi] pair of numbers");
    }
    return Interval{v[0].get<double>(), v[1].get<double>()};
}

inline std::size_t read_count(const Reader& r, const std::string& key, std::size_t fallback) {
    if (!r.has(key)) return fallback;
    const auto& v = r.raw(key);
    if (!v.is_number_integer() || v.get<long long>() < 2) r.fail(key, "must be an integer >= 2");
    return static_cast<std::size_t>(v.get<long long>());
}

inline GridSpec read_sweep(const Reader& r, double d3) {
    GridMode mode = GridMode::normalized;
    if (r.has("mode")) {
        const auto name = r.raw("mode");
        if (name == "normalized") {
            mode = GridMode::normalized;
        } else if (name == "planar") {
            mode = GridMode::planar;
        } else {
            r.fail("mode", "must be \"normalized\" or \"planar\"");
        }
    }
    auto spec = GridSpec::default_for(mode, d3);
    spec.x = read_interval(r, "x_range", spec.x);
    spec.y = read_interval(r, "y_range", spec.y);
    spec.nx = read_count(r, "nx", spec.nx);
    spec.ny = read_count(r, "ny", spec.ny);
    r.reject_unknown();
    r.guarded("", [&] {
        spec.validate();
        return 0;
    });
    return spec;
}

inline json ratio_json(LinearRatio r) { return r.value(); }

inline json energy_json(const EnergyContext& c) {
    return json{{"n0", c.n0()}, {"capacity", c.capacity()}, {"p_np", c.p_np()}};
}

inline json geometry_json(json j, const RelayGeometry& g) {
    j["d1"] = g.d1;
    j["d2"] = g.d2;
    j["d3"] = g.d3;
    return j;
}

}  // namespace detail

/// Machine-readable echo of relay hardware (linear units).
[[nodiscard]] inline nlohmann::json to_json(const RelayHardware& h) {
    return nlohmann::json{{"w_tx_source", h.w_tx_source.value()},
                          {"w_tx_relay", h.w_tx_relay.value()},
                          {"g_rx_relay", h.g_rx_relay.value()},
                          {"g_rx_sink", h.g_rx_sink.value()},
                          {"alpha", h.alpha},
                          {"k", h.k.value()},
                          {"energy", detail::energy_json(h.ctx)}};
}

[[nodiscard]] inline nlohmann::json to_json(const FwaHardware& h) {
    return nlohmann::json{{"w_tx_ue", h.w_tx_ue.value()}, {"w_tx_bs", h.w_tx_bs.value()},
                          {"w_tx_ap", h.w_tx_ap.value()}, {"g_rx_ue", h.g_rx_ue.value()},
                          {"g_rx_bs", h.g_rx_bs.value()}, {"g_rx_ap", h.g_rx_ap.value()},
                          {"rho_u", h.traffic.uplink()},  {"alpha", h.alpha},
                          {"k", h.k.value()},             {"energy", detail::energy_json(h.ctx)}};
}

[[nodiscard]] inline nlohmann::json to_json(const GridSpec& g) {
    return nlohmann::json{{"mode", g.mode == GridMode::planar ? "planar" : "normalized"},
                          {"x_range", {g.x.lo, g.x.hi}},
                          {"y_range", {g.y.lo, g.y.hi}},
                          {"nx", g.nx},
                          {"ny", g.ny}};
}

[[nodiscard]] inline nlohmann::json to_json(const ScenarioBody& body) {
    using nlohmann::json;
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Cascade>) {
                json stages = json::array();
                for (const auto& st : s.stages()) {
                    if (st.is_passive()) {
                        stages.push_back({{"label", st.label()}, {"passive", true}, {"gain", st.gain().value()}});
                    } else {
                        stages.push_back(
                            {{"label", st.label()}, {"gain", st.gain().value()}, {"waste", st.waste().value()}});
                    }
                }
                return json{{"stages", stages}};
            } else if constexpr (std::is_same_v<T, LinkScenario>) {
                json channel;
                if (s.path_loss) {
                    channel = {{"k", s.path_loss->k().value()},
                               {"alpha", s.path_loss->alpha()},
                               {"distance", s.path_loss->distance()}};
                } else {
                    channel = {{"gain", s.channel_gain.value()}};
                }
                return json{{"terminals",
                             {{"w_tx", s.terminals.w_tx().value()},
                              {"w_rx", s.terminals.w_rx().value()},
                              {"g_rx", s.terminals.g_rx().value()}}},
                            {"channel", channel},
                            {"energy", detail::energy_json(s.energy)}};
            } else if constexpr (std::is_same_v<T, RelayScenario>) {
                return detail::geometry_json(to_json(s.hw), s.geo);
            } else {
                return detail::geometry_json(to_json(s.hw), s.geo);
            }
        },
        body);
}

/// Full scenario-file echo; parse_scenario(to_json(f)) == f.
[[nodiscard]] inline nlohmann::json to_json(const ScenarioFile& f) {
    nlohmann::json j;
    j[section_name(f.body)] = to_json(f.body);
    if (f.sweep) j["sweep"] = to_json(*f.sweep);
    nlohmann::json out = nlohmann::json::object();
    if (f.output.json) out["json"] = *f.output.json;
    if (f.output.csv) out["csv"] = *f.output.csv;
    if (!out.empty()) j["output"] = out;
    return j;
}

namespace detail {

inline ScenarioFile parse_scenario_document(const nlohmann::json& doc) {
    if (!doc.is_object()) throw config_error("scenario file must be a JSON object");
    const Reader root{doc, "scenario"};

    std::vector<std::string> present;
    for (const char* name : {"cascade", "link", "relay_scenario", "fwa_scenario"}) {
        if (doc.contains(name)) present.emplace_back(name);
    }
    if (present.size() != 1) {
        throw config_error(
            "scenario: exactly one of 'cascade', 'link', 'relay_scenario', 'fwa_scenario' must be present");
    }

    const std::string& section = present.front();
    const Reader body_reader{root.raw(section), section};
    ScenarioFile file{[&]() -> ScenarioBody {
        if (section == "cascade") return detail::read_cascade(body_reader);
        if (section == "link") return detail::read_link(body_reader);
        if (section == "relay_scenario") return detail::read_relay(body_reader);
        return detail::read_fwa(body_reader);
    }(), std::nullopt, OutputPaths{}};

    if (root.has("sweep")) {
        double d3 = 1.0;
        if (const auto* r = std::get_if<RelayScenario>(&file.body)) d3 = r->geo.d3;
        else if (const auto* f = std::get_if<FwaScenario>(&file.body)) d3 = f->geo.d3;
        else throw config_error("sweep: only relay_scenario and fwa_scenario files can be swept");
        file.sweep = detail::read_sweep(root.child("sweep"), d3);
    }
    if (root.has("output")) {
        const auto out = root.child("output");
        for (const char* key : {"json", "csv"}) {
            if (!out.has(key)) continue;
            const auto& v = out.raw(key);
            if (!v.is_string()) out.fail(key, "must be a path string");
            (std::string(key) == "json" ? file.output.json : file.output.csv) = v.get<std::string>();
        }
        out.reject_unknown();
    }
    root.reject_unknown();
    return file;
}

}  // namespace detail

/// Validates a scenario document. Throws config_error naming the first
/// offending field.
[[nodiscard]] inline ScenarioFile parse_scenario(const nlohmann::json& doc) {
    try {
        return detail::parse_scenario_document(doc);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("scenario: ") + e.what());
    } catch (const std::domain_error& e) {
        throw config_error(std::string("scenario: ") + e.what());
    }
}

}  // namespace wastefigure
