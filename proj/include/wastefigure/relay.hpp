#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wastefigure/energy.hpp"
#include "wastefigure/units.hpp"

namespace wastefigure {

/// Node hardware and propagation for a source -> relay -> sink deployment.
/// Non-path power and capacity are shared by all three links.
struct RelayHardware {
    LinearRatio w_tx_source;
    LinearRatio w_tx_relay;
    LinearRatio g_rx_relay;
    LinearRatio g_rx_sink;
    double alpha = 2.0;
    LinearRatio k{1.0};
    EnergyContext ctx{1e-20, 1.0, 0.0};

    void validate() const {
        detail::require_waste(w_tx_source, "w_tx_source");
        detail::require_waste(w_tx_relay, "w_tx_relay");
        if (!std::isfinite(alpha) || !(alpha > 0.0)) throw std::domain_error("alpha must be finite and > 0");
    }

    friend bool operator==(const RelayHardware&, const RelayHardware&) = default;
};

/// Source->relay (d1), relay->sink (d2) and source->sink (d3) distances.
/// d1 and d2 may be zero (relay collocated with an endpoint); d3 must be > 0.
struct RelayGeometry {
    double d1 = 0.5;
    double d2 = 0.5;
    double d3 = 1.0;

    void validate() const {
        if (!std::isfinite(d1) || d1 < 0.0 || !std::isfinite(d2) || d2 < 0.0) {
            throw std::domain_error("relay hop distances must be finite and >= 0");
        }
        if (!std::isfinite(d3) || !(d3 > 0.0)) throw std::domain_error("direct distance d3 must be finite and > 0");
    }

    friend bool operator==(const RelayGeometry&, const RelayGeometry&) = default;
};

struct RelayScenario {
    RelayHardware hw;
    RelayGeometry geo;

    friend bool operator==(const RelayScenario&, const RelayScenario&) = default;
};

/// Whether the non-path power term enters the distance rule.
enum class NonPathTerm { excluded, included };

namespace detail {

// Approximate hop waste W_TX/(G_RX·G) with G = k/d^alpha, i.e. W_TX·d^alpha/(G_RX·k).
inline double hop_waste(LinearRatio w_tx, LinearRatio g_rx, double d, double alpha, LinearRatio k) {
    return w_tx.value() * std::pow(d, alpha) / (g_rx.value() * k.value());
}

}  // namespace detail

/// E_3 = P_NP/C + N0·ln2·W_TX,source/(G_RX,sink·G_3).
[[nodiscard]] inline double direct_energy(const RelayScenario& s) {
    const auto& h = s.hw;
    return h.ctx.non_path_energy() +
           h.ctx.n0() * ln2 * detail::hop_waste(h.w_tx_source, h.g_rx_sink, s.geo.d3, h.alpha, h.k);
}

/// E_12 = 2·P_NP/C + N0·ln2·(W_1 + W_2).
[[nodiscard]] inline double relayed_energy(const RelayScenario& s) {
    const auto& h = s.hw;
    const double w1 = detail::hop_waste(h.w_tx_source, h.g_rx_relay, s.geo.d1, h.alpha, h.k);
    const double w2 = detail::hop_waste(h.w_tx_relay, h.g_rx_sink, s.geo.d2, h.alpha, h.k);
    return 2.0 * h.ctx.non_path_energy() + h.ctx.n0() * ln2 * (w1 + w2);
}

[[nodiscard]] inline double relay_ratio(const RelayScenario& s) { return relayed_energy(s) / direct_energy(s); }

/// Right-hand side of the distance rule d3^alpha > rhs.
[[nodiscard]] inline double decision_threshold(const RelayHardware& h, double d1, double d2,
                                               NonPathTerm pnp = NonPathTerm::excluded) {
    double rhs = h.g_rx_sink.value() / h.g_rx_relay.value() * std::pow(d1, h.alpha) +
                 h.w_tx_relay.value() / h.w_tx_source.value() * std::pow(d2, h.alpha);
    if (pnp == NonPathTerm::included) {
        // k stays in the P_NP term; it cancels only in the P_NP = 0 rule.
        rhs += h.g_rx_sink.value() * h.k.value() / h.w_tx_source.value() * h.ctx.p_np() /
               (h.ctx.n0() * h.ctx.capacity() * ln2);
    }
    return rhs;
}

[[nodiscard]] inline bool decision_rule_holds(const RelayHardware& h, const RelayGeometry& g,
                                              NonPathTerm pnp = NonPathTerm::excluded) {
    return std::pow(g.d3, h.alpha) > decision_threshold(h, g.d1, g.d2, pnp);
}

[[nodiscard]] inline bool decision_rule_holds(const RelayScenario& s, NonPathTerm pnp = NonPathTerm::excluded) {
    return decision_rule_holds(s.hw, s.geo, pnp);
}

/// d3^alpha minus the P_NP-free threshold; positive favours the relay.
[[nodiscard]] inline double decision_margin(const RelayScenario& s) {
    return std::pow(s.geo.d3, s.hw.alpha) - decision_threshold(s.hw, s.geo.d1, s.geo.d2);
}

struct RelayVerdict {
    double e_direct = 0.0;   // J/bit
    double e_relayed = 0.0;  // J/bit
    double ratio = 0.0;
    bool use_relay = false;  // ratio < 1; a tie keeps the direct link
    double decision_margin = 0.0;
    bool approximation_ok = true;
};

[[nodiscard]] inline RelayVerdict evaluate_relay(const RelayScenario& s) {
    RelayVerdict v;
    v.e_direct = direct_energy(s);
    v.e_relayed = relayed_energy(s);
    v.ratio = v.e_relayed / v.e_direct;
    v.use_relay = v.ratio < 1.0;
    v.decision_margin = decision_margin(s);
    const auto gain_at = [&](double d) { return s.hw.k.value() / std::pow(d, s.hw.alpha); };
    v.approximation_ok = s.hw.g_rx_sink.value() * gain_at(s.geo.d3) < approximation_regime_limit &&
                         (s.geo.d1 == 0.0 || s.hw.g_rx_relay.value() * gain_at(s.geo.d1) < approximation_regime_limit) &&
                         (s.geo.d2 == 0.0 || s.hw.g_rx_sink.value() * gain_at(s.geo.d2) < approximation_regime_limit);
    return v;
}

/// Semi-axes of the free-space (alpha = 2) advantage ellipse in (d1/d3, d2/d3).
struct EllipseAxes {
    double a = 1.0;  // along d1/d3
    double b = 1.0;  // along d2/d3

    /// (x/a)^2 + (y/b)^2; points with a value below 1 lie inside.
    [[nodiscard]] double level(double x, double y) const { return (x / a) * (x / a) + (y / b) * (y / b); }
    [[nodiscard]] bool contains(double x, double y) const { return level(x, y) < 1.0; }
};

namespace detail {

inline void require_free_space(double alpha) {
    if (alpha != 2.0) {
        std::ostringstream msg;
        msg << "ellipse form valid only for free-space exponent (alpha = 2, got " << alpha << ")";
        throw std::domain_error(msg.str());
    }
}

}  // namespace detail

[[nodiscard]] inline EllipseAxes ellipse_axes(const RelayHardware& h) {
    detail::require_free_space(h.alpha);
    return EllipseAxes{std::sqrt(h.g_rx_relay.value() / h.g_rx_sink.value()),
                       std::sqrt(h.w_tx_source.value() / h.w_tx_relay.value())};
}

}  // namespace wastefigure
