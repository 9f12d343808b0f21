#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wastefigure/cascade.hpp"
#include "wastefigure/units.hpp"

namespace wastefigure {

/// Distance-based channel with gain k/d^alpha. k defaults to 1 (normalized
/// distance units).
class PathLossChannel {
public:
    PathLossChannel(double distance, double alpha, LinearRatio k = LinearRatio{1.0})
        : k_(k), alpha_(alpha), distance_(distance) {
        if (!std::isfinite(alpha) || !(alpha > 0.0)) {
            throw std::domain_error("path loss exponent must be finite and > 0");
        }
        if (!std::isfinite(distance) || !(distance > 0.0)) {
            throw std::domain_error("channel distance must be finite and > 0");
        }
    }

    [[nodiscard]] LinearRatio k() const noexcept { return k_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double distance() const noexcept { return distance_; }

    [[nodiscard]] LinearRatio gain() const { return LinearRatio{k_.value() / std::pow(distance_, alpha_)}; }

    friend bool operator==(const PathLossChannel&, const PathLossChannel&) = default;

private:
    LinearRatio k_;
    double alpha_;
    double distance_;
};

[[nodiscard]] inline LinearRatio channel_gain(const PathLossChannel& ch) { return ch.gain(); }

/// Waste factor of a passive attenuating channel, W_ch = 1/G_ch.
[[nodiscard]] inline LinearRatio channel_waste(LinearRatio gain) {
    if (gain.value() > 1.0) {
        std::ostringstream msg;
        msg << "channel models attenuation only: gain must be <= 1 (got " << gain.value() << ")";
        throw std::domain_error(msg.str());
    }
    return gain.inverse();
}

[[nodiscard]] inline LinearRatio channel_waste(const PathLossChannel& ch) { return channel_waste(ch.gain()); }

/// The channel as a passive cascade stage.
[[nodiscard]] inline Stage channel_stage(LinearRatio gain, std::string label = "channel") {
    static_cast<void>(channel_waste(gain));
    return Stage::passive(std::move(label), gain);
}

[[nodiscard]] inline Stage channel_stage(const PathLossChannel& ch, std::string label = "channel") {
    return channel_stage(ch.gain(), std::move(label));
}

}  // namespace wastefigure
