#pragma once
// Exact arithmetic in Q/Z.
//
// A value is stored as a reduced fraction num/den with 0 <= num < den.
// The additive group Q/Z is where all cochain values live; an element of
// order m sits in the (1/m)Z/Z subgroup.  Multiplicative k^x-valued
// formulas from the character-theory side are handled additively here:
// products of characters become sums, inverses become negation, and the
// scalar -1 corresponds to 1/2.

#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace morita {

struct QmodZ {
  std::int64_t num = 0;  // 0 <= num < den
  std::int64_t den = 1;  // den >= 1

  QmodZ() = default;

  // Reduces an arbitrary fraction a/b into canonical form.
  static QmodZ make(std::int64_t a, std::int64_t b) {
    if (b == 0) throw std::invalid_argument("QmodZ: zero denominator");
    if (b < 0) { a = -a; b = -b; }
    a %= b;
    if (a < 0) a += b;
    std::int64_t g = std::gcd(a, b);
    if (g == 0) g = 1;
    QmodZ q;
    q.num = a / g;
    q.den = b / g;
    if (q.num == 0) q.den = 1;
    return q;
  }

  bool is_zero() const { return num == 0; }

  // Additive order: the smallest m >= 1 with m*this == 0.
  std::int64_t order() const { return den; }

  friend QmodZ operator+(const QmodZ& a, const QmodZ& b) {
    std::int64_t g = std::gcd(a.den, b.den);
    std::int64_t l = a.den / g * b.den;
    return make(a.num * (l / a.den) + b.num * (l / b.den), l);
  }
  friend QmodZ operator-(const QmodZ& a, const QmodZ& b) {
    std::int64_t g = std::gcd(a.den, b.den);
    std::int64_t l = a.den / g * b.den;
    return make(a.num * (l / a.den) - b.num * (l / b.den), l);
  }
  QmodZ operator-() const { return make(-num, den); }
  QmodZ& operator+=(const QmodZ& o) { *this = *this + o; return *this; }
  QmodZ& operator-=(const QmodZ& o) { *this = *this - o; return *this; }

  // Integer multiple (the Z-module structure).
  friend QmodZ operator*(std::int64_t k, const QmodZ& a) {
    return make((k % a.den) * a.num, a.den);
  }

  friend bool operator==(const QmodZ& a, const QmodZ& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const QmodZ& a, const QmodZ& b) { return !(a == b); }
  friend bool operator<(const QmodZ& a, const QmodZ& b) {
    // Total order by value in [0,1); used only for canonical sorting.
    return a.num * b.den < b.num * a.den;
  }

  std::string str() const {
    if (num == 0) return "0";
    return std::to_string(num) + "/" + std::to_string(den);
  }
  friend std::ostream& operator<<(std::ostream& os, const QmodZ& q) {
    return os << q.str();
  }

  // Accepts "a/b", "a" (any integer reads as 0), with optional sign.
  static QmodZ parse(const std::string& s) {
    std::size_t slash = s.find('/');
    try {
      if (slash == std::string::npos)
        return make(std::stoll(s), 1);
      std::int64_t a = std::stoll(s.substr(0, slash));
      std::int64_t b = std::stoll(s.substr(slash + 1));
      return make(a, b);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("QmodZ: cannot parse '" + s + "'");
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("QmodZ: value out of range in '" + s + "'");
    }
  }
};

inline QmodZ qz(std::int64_t a, std::int64_t b) { return QmodZ::make(a, b); }

// num/den scaled to an integer residue mod m; requires den | m.
inline std::int64_t to_residue(const QmodZ& q, std::int64_t m) {
  if (m % q.den != 0)
    throw std::invalid_argument("QmodZ: denominator " + std::to_string(q.den) +
                                " does not divide modulus " + std::to_string(m));
  return q.num * (m / q.den);
}

}  // namespace morita

template <>
struct std::hash<morita::QmodZ> {
  std::size_t operator()(const morita::QmodZ& q) const noexcept {
    return std::hash<std::int64_t>()(q.num * 1000003 + q.den);
  }
};
