#pragma once

#include <cmath>
#include <limits>
#include <ostream>

namespace share_sense {

/// Non-negative upper limit that may be +infinity.
///
/// Products with a finite multiplier follow the convention inf * 0 = 0, which
/// plain IEEE arithmetic does not give us (it yields NaN).
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr explicit ExtendedReal(double value) : value_(value) {}

    static constexpr ExtendedReal infinity() {
        return ExtendedReal(std::numeric_limits<double>::infinity());
    }

    constexpr bool is_finite() const { return value_ != std::numeric_limits<double>::infinity(); }
    constexpr bool is_infinite() const { return !is_finite(); }

    /// Raw value; +inf for the infinite limit.
    constexpr double value() const { return value_; }

    friend constexpr bool operator==(ExtendedReal, ExtendedReal) = default;

private:
    double value_{0.0};
};

/// scale * limit with inf * 0 = 0.
inline double times(double scale, ExtendedReal limit) {
    if (scale == 0.0) return 0.0;
    return scale * limit.value();
}

inline std::ostream& operator<<(std::ostream& os, ExtendedReal v) {
    if (v.is_infinite()) return os << "inf";
    return os << v.value();
}

}  // namespace share_sense
