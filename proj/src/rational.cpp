#include "mvsched/rational.hpp"

#include "mvsched/model.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

namespace mvsched {

namespace {

using wide = __int128;

Rational from_wide(wide num, wide den) {
    if (den == 0) {
        throw Error("rational: division by zero");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    wide a = num < 0 ? -num : num;
    wide b = den;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    constexpr wide lim = std::numeric_limits<std::int64_t>::max();
    if (num > lim || num < -lim || den > lim) {
        throw Error("rational: overflow");
    }
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::int64_t parse_int(std::string_view text) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw Error("rational: cannot parse '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw Error("rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.size() > 15) {
            throw Error("rational: too many decimals in '" + std::string(text) + "'");
        }
        bool negative = !whole.empty() && whole.front() == '-';
        if (negative) whole.remove_prefix(1);
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        std::int64_t w = whole.empty() ? 0 : parse_int(whole);
        std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        Rational r(w * scale + f, scale);
        return negative ? Rational(0) - r : r;
    }
    return Rational(parse_int(text));
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) {
        throw Error("rational: non-finite value");
    }
    for (std::int64_t den = 1; den <= (std::int64_t{1} << 30); den *= 2) {
        double scaled = value * static_cast<double>(den);
        if (std::abs(scaled) > 9e15) break;
        if (scaled == std::round(scaled)) {
            return Rational(static_cast<std::int64_t>(std::llround(scaled)), den);
        }
    }
    for (std::int64_t den = 10; den <= 1'000'000'000; den *= 10) {
        double scaled = value * static_cast<double>(den);
        if (std::abs(scaled - std::round(scaled)) < 1e-6) {
            return Rational(static_cast<std::int64_t>(std::llround(scaled)), den);
        }
    }
    throw Error("rational: cannot represent " + std::to_string(value) + " exactly");
}

std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal() const {
    if (den_ == 1) return std::to_string(num_);
    std::int64_t scale = 1;
    for (int digits = 1; digits <= 9; ++digits) {
        scale *= 10;
        if (scale % den_ == 0) {
            std::int64_t scaled = num_ * (scale / den_);
            bool negative = scaled < 0;
            if (negative) scaled = -scaled;
            std::string frac = std::to_string(scaled % scale);
            frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
            while (!frac.empty() && frac.back() == '0') frac.pop_back();
            return (negative ? "-" : "") + std::to_string(scaled / scale) + "." + frac;
        }
    }
    return str();
}

Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    wide lhs = wide(a.num_) * b.den_;
    wide rhs = wide(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace mvsched
