#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mvsched {

/// Exact fraction with a positive denominator, always kept in lowest terms.
///
/// Cycle durations (down to 1/64 of the shortest period during exploration),
/// the NIT length and the conflict-graph node weights are all compared for
/// equality, so they are carried as fractions instead of doubles.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Accepts "7", "-3", "0.125" and "1/8".
    static Rational parse(std::string_view text);

    /// Exact conversion of a binary or short decimal double (JSON numbers).
    static Rational from_double(double value);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    std::int64_t floor() const;
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "5", "1/8"
    std::string str() const;
    /// Shortest decimal form when one exists within 9 fractional digits, else str().
    std::string decimal() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace mvsched
