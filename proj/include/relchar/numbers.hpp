#pragma once

// Exact arithmetic foundations: arbitrary-precision integers, rationals,
// circle values (Q/Z), and a small deterministic PRNG used by the
// verification suites.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace relchar {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond)
        throw Error(msg);
}

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

// floor of p/q as an Integer
inline Integer rational_floor(const Rational& q) {
    Integer n = num(q), d = den(q);
    Integer f = n / d;
    if (n % d != 0 && n < 0)
        --f;
    return f;
}

// representative of q mod 1 in [0,1)
inline Rational mod1(const Rational& q) {
    return q - Rational(rational_floor(q));
}

/// An element of Q/Z (rational circle value), stored as its representative
/// in [0,1).  Corresponds to exp(2*pi*i*value) on the unit circle.
class CircleValue {
  public:
    CircleValue() = default;
    explicit CircleValue(const Rational& q) : value_(mod1(q)) {}

    const Rational& value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    CircleValue operator+(const CircleValue& o) const { return CircleValue(value_ + o.value_); }
    CircleValue operator-(const CircleValue& o) const { return CircleValue(value_ - o.value_); }
    CircleValue operator-() const { return CircleValue(-value_); }
    CircleValue operator*(const Integer& n) const { return CircleValue(value_ * Rational(n)); }
    bool operator==(const CircleValue& o) const { return value_ == o.value_; }
    bool operator!=(const CircleValue& o) const { return value_ != o.value_; }

    std::string str() const {
        std::ostringstream os;
        os << value_;
        return os.str();
    }

  private:
    Rational value_ = 0;
};

inline std::string to_string(const Integer& n) {
    std::ostringstream os;
    os << n;
    return os.str();
}

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << num(q) << "/" << den(q);
    return os.str();
}

/// SplitMix64. Deterministic across platforms, which the reproducible
/// verification reports rely on; std::mt19937 distributions are not.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi], inclusive
    long long range(long long lo, long long hi) {
        require(hi >= lo, "Rng::range: empty range");
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(next() % span);
    }

    Integer small_int(long long bound = 3) { return Integer(range(-bound, bound)); }

    Rational small_rational(long long num_bound = 3, long long den_bound = 4) {
        return Rational(Integer(range(-num_bound, num_bound)), Integer(range(1, den_bound)));
    }

  private:
    std::uint64_t state_;
};

} // namespace relchar
