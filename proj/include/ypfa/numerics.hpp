#pragma once

#include <cmath>
#include <limits>

namespace ypfa {

/// 1 - exp(-x) without cancellation for small x.
inline double one_minus_exp(double x) { return -std::expm1(-x); }

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    [[nodiscard]] double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// A force (or energy) held as mantissa * exp(log_scale). Short-range Yukawa
/// forces routinely carry factors like exp(-1000) that underflow a double;
/// keeping the exponent apart lets ratios and log-magnitudes stay exact.
/// Sign convention: attractive < 0.
struct ForceValue {
    double mantissa = 0.0;
    double log_scale = 0.0;

    /// Plain SI value; may underflow to 0 or overflow to inf.
    [[nodiscard]] double newtons() const { return mantissa * std::exp(log_scale); }
    /// ln|F|; -inf for an exact zero.
    [[nodiscard]] double log_magnitude() const {
        if (mantissa == 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(mantissa)) + log_scale;
    }
    [[nodiscard]] int sign() const { return (mantissa > 0.0) - (mantissa < 0.0); }

    ForceValue scaled(double factor) const { return {mantissa * factor, log_scale}; }
};

/// a / b, computed without forming either value.
inline double ratio(const ForceValue& a, const ForceValue& b) {
    const double ds = a.log_scale - b.log_scale;
    return ds == 0.0 ? a.mantissa / b.mantissa : (a.mantissa / b.mantissa) * std::exp(ds);
}

/// |a - b| / |b|.
inline double relative_error(double a, double b) {
    if (b == 0.0) return a == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(a - b) / std::abs(b);
}

}  // namespace ypfa
