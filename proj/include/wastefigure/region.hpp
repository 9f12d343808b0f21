#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <variant>
#include <vector>

#include "wastefigure/fwa.hpp"
#include "wastefigure/relay.hpp"

namespace wastefigure {

/// normalized: axes are (d1/d3, d2/d3) with d3 = 1.
/// planar: axes are the relay position (x, y), source at the origin and sink
/// at (d3, 0).
enum class GridMode { normalized, planar };

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct GridSpec {
    GridMode mode = GridMode::normalized;
    Interval x{0.0, 1.5};
    Interval y{0.0, 1.5};
    std::size_t nx = 201;
    std::size_t ny = 201;
    double d3 = 1.0;  // source-sink separation, planar mode only

    /// 201x201 over [0, 1.5]^2, or in planar mode a box 1.5x the source-sink
    /// segment centred on it.
    static GridSpec default_for(GridMode mode, double d3 = 1.0) {
        GridSpec g;
        g.mode = mode;
        if (mode == GridMode::planar) {
            g.d3 = d3;
            g.x = Interval{-0.25 * d3, 1.25 * d3};
            g.y = Interval{-0.75 * d3, 0.75 * d3};
        }
        return g;
    }

    void validate() const {
        if (nx < 2 || ny < 2) throw std::domain_error("grid needs at least 2 points per axis");
        for (const auto& r : {x, y}) {
            if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi)) {
                throw std::domain_error("grid range must be finite with lo < hi");
            }
        }
        if (mode == GridMode::normalized && (x.lo < 0.0 || y.lo < 0.0)) {
            throw std::domain_error("normalized grid coordinates must be >= 0");
        }
        if (!std::isfinite(d3) || !(d3 > 0.0)) throw std::domain_error("grid d3 must be > 0");
    }

    [[nodiscard]] double x_at(std::size_t i) const {
        return x.lo + (x.hi - x.lo) * static_cast<double>(i) / static_cast<double>(nx - 1);
    }
    [[nodiscard]] double y_at(std::size_t j) const {
        return y.lo + (y.hi - y.lo) * static_cast<double>(j) / static_cast<double>(ny - 1);
    }

    /// Distances (d1, d2, d3) implied by grid node (i, j).
    [[nodiscard]] RelayGeometry geometry_at(std::size_t i, std::size_t j) const {
        const double px = x_at(i);
        const double py = y_at(j);
        if (mode == GridMode::normalized) return RelayGeometry{px, py, 1.0};
        return RelayGeometry{std::hypot(px, py), std::hypot(px - d3, py), d3};
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Advantage mask over a grid, stored row-major with y as the outer index:
/// mask[j * nx + i] is node (x_at(i), y_at(j)).
struct FeasibilityRegion {
    GridSpec spec;
    std::vector<std::uint8_t> mask;
    double area_fraction = 0.0;
    std::variant<std::monostate, RelayHardware, FwaHardware> scenario;

    [[nodiscard]] bool at(std::size_t i, std::size_t j) const { return mask.at(j * spec.nx + i) != 0; }
    [[nodiscard]] std::size_t count() const {
        return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
    }
};

struct SweepOptions {
    unsigned threads = 0;  // 0 = hardware concurrency
    NonPathTerm non_path = NonPathTerm::excluded;
};

/// Evaluates `rule(RelayGeometry) -> bool` at every grid node. Rows are
/// split across threads; each node is written by index, so the mask does not
/// depend on the thread count.
template <class Rule>
[[nodiscard]] FeasibilityRegion sweep(const GridSpec& spec, Rule&& rule, unsigned threads = 0) {
    spec.validate();
    FeasibilityRegion region;
    region.spec = spec;
    region.mask.assign(spec.nx * spec.ny, 0);

    const auto eval_rows = [&](std::size_t first, std::size_t last) {
        for (std::size_t j = first; j < last; ++j) {
            for (std::size_t i = 0; i < spec.nx; ++i) {
                region.mask[j * spec.nx + i] = rule(spec.geometry_at(i, j)) ? 1 : 0;
            }
        }
    };

    std::size_t workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, spec.ny);
    if (workers <= 1) {
        eval_rows(0, spec.ny);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (spec.ny + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t first = w * chunk;
            const std::size_t last = std::min(spec.ny, first + chunk);
            if (first >= last) break;
            pool.emplace_back(eval_rows, first, last);
        }
    }

    region.area_fraction = static_cast<double>(region.count()) / static_cast<double>(region.mask.size());
    return region;
}

[[nodiscard]] inline FeasibilityRegion sweep_relay(const RelayHardware& hw, GridSpec spec, SweepOptions opts = {}) {
    hw.validate();
    if (spec.mode == GridMode::normalized) spec.d3 = 1.0;
    auto region = sweep(
        spec, [&](const RelayGeometry& g) { return decision_rule_holds(hw, g, opts.non_path); }, opts.threads);
    region.scenario = hw;
    return region;
}

[[nodiscard]] inline FeasibilityRegion sweep_fwa(const FwaHardware& hw, GridSpec spec, SweepOptions opts = {}) {
    hw.validate();
    if (spec.mode == GridMode::normalized) spec.d3 = 1.0;
    auto region = sweep(spec, [&](const RelayGeometry& g) { return fwa_decision_holds(hw, g); }, opts.threads);
    region.scenario = hw;
    return region;
}

/// True iff every advantageous node of `a` is advantageous in `b`.
[[nodiscard]] inline bool region_subset(const FeasibilityRegion& a, const FeasibilityRegion& b) {
    if (!(a.spec == b.spec) || a.mask.size() != b.mask.size()) {
        throw std::domain_error("region_subset: regions were sampled on different grids");
    }
    for (std::size_t n = 0; n < a.mask.size(); ++n) {
        if (a.mask[n] != 0 && b.mask[n] == 0) return false;
    }
    return true;
}

/// Subset with at least one node of `b` outside `a`.
[[nodiscard]] inline bool region_strict_subset(const FeasibilityRegion& a, const FeasibilityRegion& b) {
    return region_subset(a, b) && a.count() < b.count();
}

}  // namespace wastefigure
