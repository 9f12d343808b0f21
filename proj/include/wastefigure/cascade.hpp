#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wastefigure/units.hpp"

namespace wastefigure {

/// One element of a cascade: a linear power gain and a waste factor.
///
/// Active stages require W >= 1. Passive (attenuating) stages are built with
/// Stage::passive, which fixes W = 1/G and rejects G > 1.
class Stage {
public:
    static Stage active(std::string label, LinearRatio gain, LinearRatio waste) {
        if (waste.value() < 1.0) {
            std::ostringstream msg;
            msg << "stage '" << label << "': waste factor must be >= 1 (got " << waste.value() << ")";
            throw std::domain_error(msg.str());
        }
        return Stage{std::move(label), gain, waste, false};
    }

    static Stage passive(std::string label, LinearRatio gain) {
        if (gain.value() > 1.0) {
            std::ostringstream msg;
            msg << "stage '" << label << "': passive stage gain must be <= 1 (got " << gain.value() << ")";
            throw std::domain_error(msg.str());
        }
        return Stage{std::move(label), gain, gain.inverse(), true};
    }

    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] LinearRatio gain() const noexcept { return gain_; }
    [[nodiscard]] LinearRatio waste() const noexcept { return waste_; }
    [[nodiscard]] bool is_passive() const noexcept { return passive_; }

    friend bool operator==(const Stage&, const Stage&) = default;

private:
    Stage(std::string label, LinearRatio gain, LinearRatio waste, bool passive)
        : label_(std::move(label)), gain_(gain), waste_(waste), passive_(passive) {}

    std::string label_;
    LinearRatio gain_;
    LinearRatio waste_;
    bool passive_ = false;
};

/// Ordered stages, index 0 nearest the source, last nearest the sink.
class Cascade {
public:
    explicit Cascade(std::vector<Stage> stages) : stages_(std::move(stages)) {
        if (stages_.empty()) {
            throw std::domain_error("cascade must contain at least one stage");
        }
    }

    [[nodiscard]] std::span<const Stage> stages() const noexcept { return stages_; }
    [[nodiscard]] std::size_t size() const noexcept { return stages_.size(); }
    [[nodiscard]] const Stage& operator[](std::size_t i) const { return stages_.at(i); }

    /// End-to-end power gain (product of all stage gains).
    [[nodiscard]] LinearRatio gain() const {
        double g = 1.0;
        for (const auto& s : stages_) g *= s.gain().value();
        return LinearRatio{g};
    }

    /// Stages [first, last) as a new cascade.
    [[nodiscard]] Cascade slice(std::size_t first, std::size_t last) const {
        if (first >= last || last > stages_.size()) {
            throw std::out_of_range("cascade slice out of range");
        }
        return Cascade{std::vector<Stage>(stages_.begin() + static_cast<std::ptrdiff_t>(first),
                                          stages_.begin() + static_cast<std::ptrdiff_t>(last))};
    }

    friend bool operator==(const Cascade&, const Cascade&) = default;

private:
    std::vector<Stage> stages_;
};

namespace detail {

inline void require_waste(LinearRatio w, const char* name) {
    if (w.value() < 1.0) {
        std::ostringstream msg;
        msg << name << " must be >= 1 (got " << w.value() << ")";
        throw std::domain_error(msg.str());
    }
}

}  // namespace detail

/// Waste factor of a source-side device (w1) followed by a sink-side device
/// (w2, g2): W = W2 + (W1 - 1)/G2.
[[nodiscard]] inline LinearRatio stage_waste_two(LinearRatio w1, LinearRatio w2, LinearRatio g2) {
    detail::require_waste(w1, "first-stage waste factor");
    detail::require_waste(w2, "second-stage waste factor");
    return LinearRatio{w2.value() + (w1.value() - 1.0) / g2.value()};
}

/// Additive terms (W_k - 1)/prod_{i>k} G_i, in storage order (source first).
[[nodiscard]] inline std::vector<double> waste_terms(std::span<const Stage> stages) {
    if (stages.empty()) {
        throw std::domain_error("cascade must contain at least one stage");
    }
    std::vector<double> terms(stages.size());
    double downstream_gain = 1.0;
    for (std::size_t k = stages.size(); k-- > 0;) {
        terms[k] = (stages[k].waste().value() - 1.0) / downstream_gain;
        downstream_gain *= stages[k].gain().value();
    }
    return terms;
}

/// N-device waste factor, W = 1 + sum_k (W_k - 1)/prod_{i>k} G_i.
[[nodiscard]] inline LinearRatio cascade_waste(std::span<const Stage> stages) {
    const auto terms = waste_terms(stages);
    double sum = 0.0;
    for (std::size_t k = terms.size(); k-- > 0;) sum += terms[k];
    return LinearRatio{1.0 + sum};
}

[[nodiscard]] inline LinearRatio cascade_waste(const Cascade& c) { return cascade_waste(c.stages()); }

/// Two known subsystems in series, (W_S2·G_S2 + W_S1 - 1)/G_S2, evaluated as
/// W_S2 + (W_S1 - 1)/G_S2. An ideal first subsystem returns W_S2 exactly.
[[nodiscard]] inline LinearRatio compose_subsystems(LinearRatio ws1, LinearRatio ws2, LinearRatio gs2) {
    detail::require_waste(ws1, "subsystem 1 waste factor");
    detail::require_waste(ws2, "subsystem 2 waste factor");
    return LinearRatio{ws2.value() + (ws1.value() - 1.0) / gs2.value()};
}

struct ContributionTerm {
    std::string label;
    std::size_t index = 0;  // position in the cascade, 0 = source side
    double value = 0.0;     // (W_k - 1)/prod_{i>k} G_i
    double share = 0.0;     // value/(W_total - 1), or 0 when W_total == 1
};

/// Per-stage decomposition of a cascade's waste factor. Terms are sorted by
/// descending value; ties keep source-to-sink order.
struct ContributionReport {
    LinearRatio total_waste;
    std::vector<ContributionTerm> terms;

    [[nodiscard]] const ContributionTerm& dominant() const { return terms.front(); }
};

[[nodiscard]] inline ContributionReport contribution_report(const Cascade& c) {
    const auto values = waste_terms(c.stages());
    ContributionReport report{cascade_waste(c), {}};
    const double excess = report.total_waste.value() - 1.0;
    report.terms.reserve(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        report.terms.push_back(ContributionTerm{c[k].label(), k, values[k], excess > 0.0 ? values[k] / excess : 0.0});
    }
    std::stable_sort(report.terms.begin(), report.terms.end(),
                     [](const ContributionTerm& a, const ContributionTerm& b) { return a.value > b.value; });
    return report;
}

/// Parameters of the seven-element transmission chain, listed sink to source
/// as LNA, receive antenna, channel, transmit antenna, PA, processing, and
/// the receiver that fed the processing block.
///
/// Antennas are passive here (W = 1/G), so their gains are efficiencies <= 1.
struct GranularChain {
    LinearRatio lna_gain{100.0};
    LinearRatio lna_waste{2.0};
    LinearRatio rx_antenna_gain{1.0};
    LinearRatio channel_gain{1e-6};
    LinearRatio tx_antenna_gain{1.0};
    LinearRatio pa_gain{100.0};
    LinearRatio pa_waste{3.0};
    LinearRatio processing_gain{1.0};
    LinearRatio processing_waste{1.5};
    LinearRatio prior_rx_gain{10.0};
    LinearRatio prior_rx_waste{2.0};

    /// Source-to-sink cascade for the chain.
    [[nodiscard]] Cascade cascade() const {
        return Cascade{{
            Stage::active("prior RX", prior_rx_gain, prior_rx_waste),
            Stage::active("processing", processing_gain, processing_waste),
            Stage::active("PA", pa_gain, pa_waste),
            Stage::passive("TX antenna", tx_antenna_gain),
            Stage::passive("channel", channel_gain),
            Stage::passive("RX antenna", rx_antenna_gain),
            Stage::active("LNA", lna_gain, lna_waste),
        }};
    }
};

}  // namespace wastefigure
