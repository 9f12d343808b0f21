#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "wastefigure/region.hpp"
#include "wastefigure/scenario_io.hpp"

namespace wastefigure {

/// Run lengths of alternating values, starting with `first`.
struct RunLength {
    std::uint8_t first = 0;
    std::vector<std::size_t> runs;
};

[[nodiscard]] inline RunLength rle_encode(const std::vector<std::uint8_t>& mask) {
    RunLength out;
    if (mask.empty()) return out;
    out.first = mask.front();
    std::size_t run = 0;
    std::uint8_t current = mask.front();
    for (const auto v : mask) {
        if (v == current) {
            ++run;
        } else {
            out.runs.push_back(run);
            current = v;
            run = 1;
        }
    }
    out.runs.push_back(run);
    return out;
}

[[nodiscard]] inline std::vector<std::uint8_t> rle_decode(const RunLength& rle) {
    std::vector<std::uint8_t> mask;
    std::uint8_t value = rle.first;
    for (const auto run : rle.runs) {
        mask.insert(mask.end(), run, value);
        value = value != 0 ? 0 : 1;
    }
    return mask;
}

/// CSV with header `x,y,advantageous`; coordinates with 17 significant
/// digits, one row per node, y outer and x inner.
[[nodiscard]] inline std::string to_csv(const FeasibilityRegion& region) {
    std::string out = "x,y,advantageous\n";
    out.reserve(out.size() + region.mask.size() * 48);
    char line[96];
    for (std::size_t j = 0; j < region.spec.ny; ++j) {
        for (std::size_t i = 0; i < region.spec.nx; ++i) {
            const int n = std::snprintf(line, sizeof line, "%.17g,%.17g,%d\n", region.spec.x_at(i),
                                        region.spec.y_at(j), region.at(i, j) ? 1 : 0);
            out.append(line, static_cast<std::size_t>(n));
        }
    }
    return out;
}

[[nodiscard]] inline nlohmann::json to_json(const FeasibilityRegion& region) {
    using nlohmann::json;
    const auto rle = rle_encode(region.mask);
    json spec = to_json(region.spec);
    if (region.spec.mode == GridMode::planar) spec["d3"] = region.spec.d3;
    json j{{"spec", spec},
           {"mask",
            {{"encoding", "rle"}, {"order", "row-major, y outer, x inner"}, {"first", rle.first}, {"runs", rle.runs}}},
           {"advantageous_nodes", region.count()},
           {"area_fraction", region.area_fraction}};
    if (const auto* h = std::get_if<RelayHardware>(&region.scenario)) j["scenario"] = to_json(*h);
    if (const auto* h = std::get_if<FwaHardware>(&region.scenario)) j["scenario"] = to_json(*h);
    return j;
}

/// Mask stored in a region JSON document.
[[nodiscard]] inline std::vector<std::uint8_t> mask_from_json(const nlohmann::json& region) {
    const auto& m = region.at("mask");
    if (m.at("encoding") != "rle") throw std::invalid_argument("unsupported mask encoding");
    return rle_decode(RunLength{m.at("first").get<std::uint8_t>(), m.at("runs").get<std::vector<std::size_t>>()});
}

}  // namespace wastefigure
