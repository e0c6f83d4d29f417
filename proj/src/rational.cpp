#include "obsmode/rational.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace obsmode {

namespace {

std::int64_t checked(__int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw std::overflow_error(std::string("rational overflow in ") + what);
    }
    return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        if (n == INT64_MIN || d == INT64_MIN) throw std::overflow_error("rational overflow in negate");
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = n;
    den_ = d;
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::size_t pos1 = 0, pos2 = 0;
        std::int64_t n = std::stoll(text.substr(0, slash), &pos1);
        std::string dpart = text.substr(slash + 1);
        std::int64_t d = std::stoll(dpart, &pos2);
        if (pos1 != slash || pos2 != dpart.size()) {
            throw std::invalid_argument("malformed rational literal: " + text);
        }
        return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t frac_len = text.size() - dot - 1;
        if (frac_len == 0 || digits.empty()) {
            throw std::invalid_argument("malformed rational literal: " + text);
        }
        std::size_t pos = 0;
        std::int64_t n = std::stoll(digits, &pos);
        if (pos != digits.size()) {
            throw std::invalid_argument("malformed rational literal: " + text);
        }
        std::int64_t d = 1;
        for (std::size_t i = 0; i < frac_len; ++i) {
            d = checked(static_cast<__int128>(d) * 10, "parse");
        }
        return Rational(n, d);
    }
    std::size_t pos = 0;
    std::int64_t n = std::stoll(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("malformed rational literal: " + text);
    return Rational(n);
}

Rational Rational::operator+(const Rational& o) const {
    __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    // Reduce in 128 bits first so values whose normalized form fits are accepted.
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    return Rational(checked(n, "add"), checked(d, "add"));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator-() const {
    if (num_ == INT64_MIN) throw std::overflow_error("rational overflow in negate");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::operator*(const Rational& o) const {
    std::int64_t g1 = std::gcd(num_, o.den_);
    std::int64_t g2 = std::gcd(o.num_, den_);
    __int128 n = static_cast<__int128>(num_ / g1) * (o.num_ / g2);
    __int128 d = static_cast<__int128>(den_ / g2) * (o.den_ / g1);
    return Rational(checked(n, "mul"), checked(d, "mul"));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    // A denominator of the form 2^a * 5^b has a finite decimal expansion.
    std::int64_t d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
    int digits = twos > fives ? twos : fives;
    __int128 scaled = static_cast<__int128>(num_ < 0 ? -num_ : num_);
    for (int i = 0; i < digits; ++i) scaled *= 10;
    scaled /= den_;
    std::string body;
    for (__int128 v = scaled; v > 0 || body.empty(); v /= 10) {
        body.insert(body.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        if (v == 0) break;
    }
    while (static_cast<int>(body.size()) <= digits) body.insert(body.begin(), '0');
    body.insert(body.size() - digits, ".");
    if (num_ < 0) body.insert(body.begin(), '-');
    return body;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

ExtCost ExtCost::infinity() {
    ExtCost c;
    c.finite_ = false;
    return c;
}

const Rational& ExtCost::value() const {
    if (!finite_) throw std::logic_error("value() on infinite cost");
    return value_;
}

ExtCost ExtCost::operator+(const ExtCost& o) const {
    if (!finite_ || !o.finite_) return infinity();
    return ExtCost(value_ + o.value_);
}

bool ExtCost::operator==(const ExtCost& o) const {
    if (finite_ != o.finite_) return false;
    return !finite_ || value_ == o.value_;
}

bool ExtCost::operator<(const ExtCost& o) const {
    if (!finite_) return false;
    if (!o.finite_) return true;
    return value_ < o.value_;
}

std::string ExtCost::str() const { return finite_ ? value_.str() : "inf"; }

std::ostream& operator<<(std::ostream& os, const ExtCost& c) { return os << c.str(); }

}  // namespace obsmode
