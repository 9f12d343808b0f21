#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "wastefigure/cascade.hpp"
#include "wastefigure/channel.hpp"
#include "wastefigure/units.hpp"

namespace wastefigure {

inline constexpr double ln2 = std::numbers::ln2;

/// Noise floor, link capacity and off-path power shared by a link.
class EnergyContext {
public:
    EnergyContext(double n0, double capacity, double p_np) : n0_(n0), capacity_(capacity), p_np_(p_np) {
        if (!std::isfinite(n0) || !(n0 > 0.0)) throw std::domain_error("n0 must be finite and > 0");
        if (!std::isfinite(capacity) || !(capacity > 0.0)) throw std::domain_error("capacity must be finite and > 0");
        if (!std::isfinite(p_np) || p_np < 0.0) throw std::domain_error("p_np must be finite and >= 0");
    }

    /// Noise power spectral density N0 [W/Hz].
    [[nodiscard]] double n0() const noexcept { return n0_; }
    /// Channel capacity C [bit/s].
    [[nodiscard]] double capacity() const noexcept { return capacity_; }
    /// Non-path power P_NP [W].
    [[nodiscard]] double p_np() const noexcept { return p_np_; }

    /// P_NP/C [J/bit].
    [[nodiscard]] double non_path_energy() const noexcept { return p_np_ / capacity_; }

    friend bool operator==(const EnergyContext&, const EnergyContext&) = default;

private:
    double n0_;
    double capacity_;
    double p_np_;
};

/// Transmitter waste, receiver waste and receiver gain of a point-to-point link.
class LinkTerminals {
public:
    LinkTerminals(LinearRatio w_tx, LinearRatio w_rx, LinearRatio g_rx) : w_tx_(w_tx), w_rx_(w_rx), g_rx_(g_rx) {
        detail::require_waste(w_tx, "w_tx");
        detail::require_waste(w_rx, "w_rx");
    }

    [[nodiscard]] LinearRatio w_tx() const noexcept { return w_tx_; }
    [[nodiscard]] LinearRatio w_rx() const noexcept { return w_rx_; }
    [[nodiscard]] LinearRatio g_rx() const noexcept { return g_rx_; }

    friend bool operator==(const LinkTerminals&, const LinkTerminals&) = default;

private:
    LinearRatio w_tx_;
    LinearRatio w_rx_;
    LinearRatio g_rx_;
};

struct SnrSpec {
    double spectral_efficiency = 0.0;  // bit/s/Hz
    LinearRatio margin{1.0};           // >= 1

    SnrSpec(double eta, LinearRatio m = LinearRatio{1.0}) : spectral_efficiency(eta), margin(m) {
        if (!std::isfinite(eta) || eta < 0.0) throw std::domain_error("spectral efficiency must be >= 0");
        detail::require_waste(m, "SNR margin");
    }
};

/// Minimum SNR for a spectral efficiency: 2^eta - 1.
[[nodiscard]] inline double snr_min(const SnrSpec& spec) { return std::exp2(spec.spectral_efficiency) - 1.0; }

/// Operating SNR, margin times the minimum.
[[nodiscard]] inline double operating_snr(const SnrSpec& spec) { return spec.margin.value() * snr_min(spec); }

/// P_consumed,min = P_NP + SNR_min·P_noise·W.
[[nodiscard]] inline double min_consumed_power(double snr_min, double p_noise, LinearRatio w, double p_np) {
    if (snr_min < 0.0 || !(p_noise > 0.0) || p_np < 0.0) {
        throw std::domain_error("min_consumed_power: snr_min >= 0, p_noise > 0, p_np >= 0 required");
    }
    return p_np + snr_min * p_noise * w.value();
}

/// Consumption factor [bit/J]: B·log2(1 + SNR) / (P_NP + (SNR/M)·P_noise·W).
[[nodiscard]] inline double consumption_factor(double bandwidth, double snr, double p_np, double p_noise,
                                               LinearRatio w, LinearRatio margin = LinearRatio{1.0}) {
    if (!(bandwidth > 0.0) || !(snr > 0.0)) {
        throw std::domain_error("consumption_factor: bandwidth and snr must be > 0");
    }
    const double denominator = min_consumed_power(snr / margin.value(), p_noise, w, p_np);
    if (!(denominator > 0.0)) {
        throw std::domain_error("consumption_factor: consumed power is zero");
    }
    return bandwidth * std::log1p(snr) / ln2 / denominator;
}

/// Infinite-bandwidth Shannon rate (P_S/N0)/ln 2 [bit/s].
[[nodiscard]] inline double wideband_rate_limit(double p_s, double n0) {
    if (!(p_s > 0.0) || !(n0 > 0.0)) {
        throw std::domain_error("wideband_rate_limit: p_s and n0 must be > 0");
    }
    return p_s / n0 / ln2;
}

/// Minimum consumed energy per bit, E_bc = P_NP/C + ln2·N0·W [J/bit].
[[nodiscard]] inline double energy_per_bit_min(const EnergyContext& ctx, LinearRatio w) {
    return ctx.non_path_energy() + ln2 * ctx.n0() * w.value();
}

enum class LinkMode { exact, approximate };

/// Receiver-gain-times-channel-gain above which the transmitter-dominated
/// approximation is considered out of regime.
inline constexpr double approximation_regime_limit = 0.1;

[[nodiscard]] inline bool approximation_regime_ok(LinearRatio g_rx, LinearRatio g_ch) {
    return g_rx.value() * g_ch.value() < approximation_regime_limit;
}

/// Waste factor of TX -> channel -> RX, exact: W_RX + W_TX/(G_RX·G_ch) - 1/G_RX.
[[nodiscard]] inline LinearRatio link_waste(const LinkTerminals& t, LinearRatio g_ch, LinkMode mode = LinkMode::exact) {
    static_cast<void>(channel_waste(g_ch));
    const double gg = t.g_rx().value() * g_ch.value();
    if (mode == LinkMode::approximate) {
        return LinearRatio{t.w_tx().value() / gg};
    }
    return LinearRatio{t.w_rx().value() + t.w_tx().value() / gg - 1.0 / t.g_rx().value()};
}

/// Signal-path share of the link energy per bit,
/// ln2·N0/(G_RX·G_ch)·(G_RX·G_ch·W_RX + W_TX - G_ch).
[[nodiscard]] inline double link_transmission_energy(const EnergyContext& ctx, const LinkTerminals& t, LinearRatio g_ch,
                                                     LinkMode mode = LinkMode::exact) {
    static_cast<void>(channel_waste(g_ch));
    const double g = g_ch.value();
    const double gg = t.g_rx().value() * g;
    if (mode == LinkMode::approximate) {
        return ln2 * ctx.n0() / gg * t.w_tx().value();
    }
    return ln2 * ctx.n0() / gg * (gg * t.w_rx().value() + t.w_tx().value() - g);
}

/// Link-level minimum energy per bit [J/bit].
[[nodiscard]] inline double energy_per_bit_link(const EnergyContext& ctx, const LinkTerminals& t, LinearRatio g_ch,
                                                LinkMode mode = LinkMode::exact) {
    return ctx.non_path_energy() + link_transmission_energy(ctx, t, g_ch, mode);
}

/// Largest distance at which P_NP/C still exceeds the transmission energy
/// per bit, for G_ch = k/d^alpha. Empty when no distance qualifies.
[[nodiscard]] inline std::optional<double> max_efficient_distance(const EnergyContext& ctx, const LinkTerminals& t,
                                                                  LinearRatio k, double alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0)) {
        throw std::domain_error("path loss exponent must be finite and > 0");
    }
    const double n0c_ln2 = ctx.n0() * ctx.capacity() * ln2;
    const double braced = ctx.p_np() * t.g_rx().value() + n0c_ln2 * (1.0 - t.g_rx().value() * t.w_rx().value());
    if (!(braced > 0.0)) {
        return std::nullopt;
    }
    return std::pow(k.value() / (t.w_tx().value() * n0c_ln2) * braced, 1.0 / alpha);
}

/// Energy expressed relative to N0, in dB.
[[nodiscard]] inline Decibel energy_re_n0_db(double joules_per_bit, double n0) {
    return linear_to_db(LinearRatio{joules_per_bit / n0});
}

}  // namespace wastefigure
