#pragma once

#include <cmath>
#include <stdexcept>

#include "wastefigure/relay.hpp"

namespace wastefigure {

/// Uplink/downlink traffic split. Built from the uplink share; the downlink
/// share is its complement, so the pair always sums to one.
class TrafficMix {
public:
    static TrafficMix from_uplink(double rho_u) {
        if (!std::isfinite(rho_u) || rho_u < 0.0 || rho_u > 1.0) {
            throw std::domain_error("uplink traffic share rho_u must lie in [0, 1]");
        }
        return TrafficMix{rho_u};
    }

    [[nodiscard]] double uplink() const noexcept { return rho_u_; }
    [[nodiscard]] double downlink() const noexcept { return 1.0 - rho_u_; }

    friend bool operator==(TrafficMix, TrafficMix) = default;

private:
    explicit TrafficMix(double rho_u) : rho_u_(rho_u) {}
    double rho_u_ = 0.5;
};

/// UE, access point and base station hardware for a fixed-wireless-access
/// deployment. Channel gains are reciprocal; P_NP and C are shared.
struct FwaHardware {
    LinearRatio w_tx_ue;
    LinearRatio w_tx_bs;
    LinearRatio w_tx_ap;
    LinearRatio g_rx_ue;
    LinearRatio g_rx_bs;
    LinearRatio g_rx_ap;
    TrafficMix traffic = TrafficMix::from_uplink(0.5);
    double alpha = 2.0;
    LinearRatio k{1.0};
    EnergyContext ctx{1e-20, 1.0, 0.0};

    void validate() const {
        detail::require_waste(w_tx_ue, "w_tx_ue");
        detail::require_waste(w_tx_bs, "w_tx_bs");
        detail::require_waste(w_tx_ap, "w_tx_ap");
        if (!std::isfinite(alpha) || !(alpha > 0.0)) throw std::domain_error("alpha must be finite and > 0");
    }

    friend bool operator==(const FwaHardware&, const FwaHardware&) = default;
};

/// d3 is the UE<->BS distance. d1 and d2 are the hop-1 and hop-2 channels
/// through the AP; each hop channel keeps its gain in both directions (hop 1
/// carries UE->AP on the uplink and BS->AP on the downlink).
struct FwaScenario {
    FwaHardware hw;
    RelayGeometry geo;

    friend bool operator==(const FwaScenario&, const FwaScenario&) = default;
};

/// Uplink view: UE is the source, AP the relay, BS the sink.
[[nodiscard]] inline RelayHardware uplink_relay(const FwaHardware& h) {
    return RelayHardware{h.w_tx_ue, h.w_tx_ap, h.g_rx_ap, h.g_rx_bs, h.alpha, h.k, h.ctx};
}

/// Downlink view: BS is the source, AP the relay, UE the sink.
[[nodiscard]] inline RelayHardware downlink_relay(const FwaHardware& h) {
    return RelayHardware{h.w_tx_bs, h.w_tx_ap, h.g_rx_ap, h.g_rx_ue, h.alpha, h.k, h.ctx};
}

/// Traffic-weighted direct-link energy per bit, rho_d·E_3^d + rho_u·E_3^u.
[[nodiscard]] inline double fwa_direct_energy(const FwaScenario& s) {
    const auto& h = s.hw;
    const double rho_u = h.traffic.uplink();
    const double rho_d = h.traffic.downlink();
    const double w3_u = detail::hop_waste(h.w_tx_ue, h.g_rx_bs, s.geo.d3, h.alpha, h.k);
    const double w3_d = detail::hop_waste(h.w_tx_bs, h.g_rx_ue, s.geo.d3, h.alpha, h.k);
    const double e_np = h.ctx.non_path_energy();
    const double n0_ln2 = h.ctx.n0() * ln2;
    return rho_d * (e_np + n0_ln2 * w3_d) + rho_u * (e_np + n0_ln2 * w3_u);
}

/// Traffic-weighted two-hop energy per bit through the access point.
[[nodiscard]] inline double fwa_relayed_energy(const FwaScenario& s) {
    const auto& h = s.hw;
    const double rho_u = h.traffic.uplink();
    const double rho_d = h.traffic.downlink();
    const double d1 = s.geo.d1;
    const double d2 = s.geo.d2;
    const double w1_u = detail::hop_waste(h.w_tx_ue, h.g_rx_ap, d1, h.alpha, h.k);
    const double w2_u = detail::hop_waste(h.w_tx_ap, h.g_rx_bs, d2, h.alpha, h.k);
    const double w1_d = detail::hop_waste(h.w_tx_bs, h.g_rx_ap, d1, h.alpha, h.k);
    const double w2_d = detail::hop_waste(h.w_tx_ap, h.g_rx_ue, d2, h.alpha, h.k);
    return 2.0 * h.ctx.non_path_energy() * (rho_u + rho_d) +
           h.ctx.n0() * ln2 * (rho_u * (w1_u + w2_u) + rho_d * (w1_d + w2_d));
}

[[nodiscard]] inline double fwa_ratio(const FwaScenario& s) { return fwa_relayed_energy(s) / fwa_direct_energy(s); }

/// Coefficients of the traffic-weighted distance rule d3^a > A·d1^a + B·d2^a.
struct FwaCoefficients {
    double a = 1.0;
    double b = 1.0;
};

[[nodiscard]] inline FwaCoefficients fwa_coefficients(const FwaHardware& h) {
    const double rho_u = h.traffic.uplink();
    const double rho_d = h.traffic.downlink();
    // Single-direction traffic: the relay-rule coefficients of that direction.
    if (rho_d == 0.0) {
        return FwaCoefficients{h.g_rx_bs.value() / h.g_rx_ap.value(), h.w_tx_ap.value() / h.w_tx_ue.value()};
    }
    if (rho_u == 0.0) {
        return FwaCoefficients{h.g_rx_ue.value() / h.g_rx_ap.value(), h.w_tx_ap.value() / h.w_tx_bs.value()};
    }
    const double denominator =
        rho_u * h.w_tx_ue.value() / h.g_rx_bs.value() + rho_d * h.w_tx_bs.value() / h.g_rx_ue.value();
    const double a_num = rho_u * h.w_tx_ue.value() / h.g_rx_ap.value() + rho_d * h.w_tx_bs.value() / h.g_rx_ap.value();
    const double b_num = rho_u * h.w_tx_ap.value() / h.g_rx_bs.value() + rho_d * h.w_tx_ap.value() / h.g_rx_ue.value();
    return FwaCoefficients{a_num / denominator, b_num / denominator};
}

[[nodiscard]] inline bool fwa_decision_holds(const FwaHardware& h, const RelayGeometry& g) {
    const auto c = fwa_coefficients(h);
    return std::pow(g.d3, h.alpha) > c.a * std::pow(g.d1, h.alpha) + c.b * std::pow(g.d2, h.alpha);
}

[[nodiscard]] inline bool fwa_decision_holds(const FwaScenario& s) { return fwa_decision_holds(s.hw, s.geo); }

[[nodiscard]] inline EllipseAxes fwa_ellipse_axes(const FwaHardware& h) {
    detail::require_free_space(h.alpha);
    const auto c = fwa_coefficients(h);
    return EllipseAxes{std::sqrt(1.0 / c.a), std::sqrt(1.0 / c.b)};
}

struct FwaVerdict {
    double e_direct = 0.0;
    double e_relayed = 0.0;
    double ratio = 0.0;
    bool use_ap = false;  // ratio < 1
};

[[nodiscard]] inline FwaVerdict evaluate_fwa(const FwaScenario& s) {
    FwaVerdict v;
    v.e_direct = fwa_direct_energy(s);
    v.e_relayed = fwa_relayed_energy(s);
    v.ratio = v.e_relayed / v.e_direct;
    v.use_ap = v.ratio < 1.0;
    return v;
}

}  // namespace wastefigure
