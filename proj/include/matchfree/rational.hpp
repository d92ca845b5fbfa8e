#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace matchfree {

/// Exact rational with a 64-bit numerator and a positive denominator, kept
/// in lowest terms. Arithmetic goes through 128-bit intermediates and throws
/// std::overflow_error if the reduced result no longer fits.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

    [[nodiscard]] constexpr std::int64_t num() const { return num_; }
    [[nodiscard]] constexpr std::int64_t den() const { return den_; }
    [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
    [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) {
            throw std::domain_error("Rational: division by zero");
        }
        return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        os << r.num_;
        if (r.den_ != 1) os << '/' << r.den_;
        return os;
    }

private:
    void assign(std::int64_t num, std::int64_t den) {
        *this = from_wide(num, den);
    }

    static Rational from_wide(__int128 num, __int128 den) {
        if (den == 0) {
            throw std::domain_error("Rational: zero denominator");
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        __int128 a = num < 0 ? -num : num;
        __int128 b = den;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        const __int128 g = a == 0 ? 1 : a;
        num /= g;
        den /= g;
        constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
        if (num > lim || num < -lim || den > lim) {
            throw std::overflow_error("Rational: result exceeds 64-bit range");
        }
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace matchfree
