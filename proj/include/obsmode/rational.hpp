#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace obsmode {

// Exact rational arithmetic on int64 numerator/denominator, normalized so
// that den > 0 and gcd(|num|, den) == 1. All operations check for overflow
// via __int128 and throw std::overflow_error instead of wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    // Accepts "7", "-3", "1.5", "0.25", "3/2", "-7/4".
    static Rational parse(const std::string& text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    // Decimal form when the denominator is 2^a * 5^b ("1.5", "0.375"),
    // otherwise "num/den". Integers print without a fraction part.
    std::string str() const;

private:
    std::int64_t num_;
    std::int64_t den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// A rational extended with +infinity, used for worst-case costs. Infinity
// absorbs addition and compares greater than every finite value. There is
// deliberately no sentinel numeric encoding: infinite is a separate flag.
class ExtCost {
public:
    ExtCost() : finite_(true), value_() {}
    ExtCost(Rational v) : finite_(true), value_(v) {}
    ExtCost(std::int64_t v) : finite_(true), value_(v) {}

    static ExtCost infinity();

    bool is_infinite() const { return !finite_; }
    bool is_finite() const { return finite_; }

    // Throws std::logic_error when infinite.
    const Rational& value() const;

    ExtCost operator+(const ExtCost& o) const;

    bool operator==(const ExtCost& o) const;
    bool operator!=(const ExtCost& o) const { return !(*this == o); }
    bool operator<(const ExtCost& o) const;
    bool operator<=(const ExtCost& o) const { return *this < o || *this == o; }
    bool operator>(const ExtCost& o) const { return o < *this; }
    bool operator>=(const ExtCost& o) const { return o <= *this; }

    // "inf" for infinity, Rational::str() otherwise.
    std::string str() const;

private:
    bool finite_;
    Rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExtCost& c);

}  // namespace obsmode
