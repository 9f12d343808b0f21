#pragma once

#include <cmath>
#include <compare>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wastefigure {

/// Dimensionless, strictly positive power ratio (gain or waste factor) in
/// linear units. All computation inside the library happens on this type;
/// decibels only appear at configuration and report boundaries.
class LinearRatio {
public:
    constexpr LinearRatio() = default;

    explicit LinearRatio(double value) : value_(value) {
        if (!std::isfinite(value) || !(value > 0.0)) {
            std::ostringstream msg;
            msg << "linear power ratio must be finite and > 0 (got " << value << ")";
            throw std::domain_error(msg.str());
        }
    }

    [[nodiscard]] constexpr double value() const noexcept { return value_; }

    [[nodiscard]] LinearRatio inverse() const { return LinearRatio{1.0 / value_}; }

    friend LinearRatio operator*(LinearRatio a, LinearRatio b) { return LinearRatio{a.value_ * b.value_}; }
    friend LinearRatio operator/(LinearRatio a, LinearRatio b) { return LinearRatio{a.value_ / b.value_}; }

    friend constexpr bool operator==(LinearRatio, LinearRatio) = default;
    friend constexpr auto operator<=>(LinearRatio, LinearRatio) = default;

private:
    double value_ = 1.0;
};

/// Power ratio in decibels (10·log10 convention).
struct Decibel {
    double value = 0.0;

    friend constexpr bool operator==(Decibel, Decibel) = default;
};

[[nodiscard]] inline LinearRatio db_to_linear(Decibel x) {
    if (!std::isfinite(x.value)) {
        throw std::domain_error("decibel value must be finite");
    }
    return LinearRatio{std::pow(10.0, x.value / 10.0)};
}

[[nodiscard]] inline Decibel linear_to_db(LinearRatio x) {
    return Decibel{10.0 * std::log10(x.value())};
}

/// Waste Figure: a waste factor expressed in dB.
[[nodiscard]] inline Decibel waste_figure(LinearRatio waste) { return linear_to_db(waste); }

namespace literals {

inline LinearRatio operator""_lin(long double v) { return LinearRatio{static_cast<double>(v)}; }
inline LinearRatio operator""_lin(unsigned long long v) { return LinearRatio{static_cast<double>(v)}; }
inline LinearRatio operator""_dB(long double v) { return db_to_linear(Decibel{static_cast<double>(v)}); }
inline LinearRatio operator""_dB(unsigned long long v) { return db_to_linear(Decibel{static_cast<double>(v)}); }

}  // namespace literals

}  // namespace wastefigure
