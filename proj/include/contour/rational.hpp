#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace contour {

/// Non-negative exact fraction, always stored in lowest terms.
///
/// Velocities are ratios of move counts to periods, so the numerator never
/// goes negative. Comparison is exact (cross multiplication in 128 bits).
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t numerator, std::int64_t denominator = 1);

    std::int64_t numerator() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }

    /// "p/q", with an explicit denominator even for integers ("1/1").
    std::string to_string() const;

    /// Accepts "p/q" or a bare integer "p".
    static Rational parse(std::string_view text);

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace contour
