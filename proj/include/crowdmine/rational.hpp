#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "crowdmine/errors.hpp"

namespace crowdmine {

// Exact rational with a small fixed-width representation. Support values and
// thresholds are ratios of desk-scale integers, so int64 components with
// int128 cross-multiplication comparisons are plenty.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }
    static Rational from_int(std::int64_t v) { return Rational(v, 1); }

    // Parses "p/q" or a bare integer "p".
    static Rational parse(const std::string& text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    void normalize();

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace crowdmine
