#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace fracmkt {

/// Currency amount in fixed-point micro-euros.
///
/// Cash, prices and notionals are integers so that settlement conserves
/// money exactly; 1e-6 EUR is far below any price resolution the model cares about.
struct Money {
    static constexpr std::int64_t kMicrosPerUnit = 1'000'000;

    std::int64_t micros = 0;

    static constexpr Money from_micros(std::int64_t m) { return Money{m}; }
    /// Rounds to the nearest micro-euro.
    static Money from_eur(double eur) { return Money{std::llround(eur * kMicrosPerUnit)}; }

    [[nodiscard]] constexpr double eur() const {
        return static_cast<double>(micros) / kMicrosPerUnit;
    }

    constexpr Money& operator+=(Money o) { micros += o.micros; return *this; }
    constexpr Money& operator-=(Money o) { micros -= o.micros; return *this; }
    friend constexpr Money operator+(Money a, Money b) { return Money{a.micros + b.micros}; }
    friend constexpr Money operator-(Money a, Money b) { return Money{a.micros - b.micros}; }
    friend constexpr Money operator*(Money a, std::int64_t n) { return Money{a.micros * n}; }
    friend constexpr auto operator<=>(Money, Money) = default;
};

/// `fraction * amount` rounded to the nearest micro. For fraction in [0, 1]
/// the result stays within [0, amount].
inline Money scale(Money amount, double fraction) {
    return Money{std::llround(static_cast<double>(amount.micros) * fraction)};
}

}  // namespace fracmkt
