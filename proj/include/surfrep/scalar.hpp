#pragma once

// Exact scalars: arbitrary-precision rationals (GMP) and prime fields GF(p).
// A Scalar knows its field; mixing fields in arithmetic is a logic error.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "surfrep/errors.hpp"

namespace surfrep {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// deterministic Miller-Rabin for 64-bit inputs
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline long long invmod_ll(long long a, long long p) {
  long long t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr != 0) {
    const long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw consistency_error("invmod of a non-unit");
  return ((t % p) + p) % p;
}

}  // namespace detail

class FieldTag {
 public:
  FieldTag() = default;  // rationals

  static FieldTag rationals() { return FieldTag{}; }

  static FieldTag prime(long long p) {
    if (p < 2 || !detail::is_prime_u64(static_cast<std::uint64_t>(p))) {
      throw input_error("field modulus " + std::to_string(p) + " is not prime");
    }
    FieldTag t;
    t.p_ = p;
    return t;
  }

  bool is_rational() const { return p_ == 0; }
  bool is_prime_field() const { return p_ != 0; }
  long long modulus() const { return p_; }

  std::string str() const { return is_rational() ? "Q" : "F" + std::to_string(p_); }

  friend bool operator==(const FieldTag&, const FieldTag&) = default;

 private:
  long long p_ = 0;  // 0 = rationals
};

class Scalar {
 public:
  Scalar() = default;  // rational zero

  static Scalar zero(const FieldTag& f) { return from_long(f, 0); }
  static Scalar one(const FieldTag& f) { return from_long(f, 1); }

  static Scalar from_long(const FieldTag& f, long long v) {
    Scalar s;
    s.p_ = f.modulus();
    if (s.p_ == 0) {
      s.q_ = static_cast<long>(v);
    } else {
      s.v_ = ((v % s.p_) + s.p_) % s.p_;
    }
    return s;
  }

  static Scalar rational(mpq_class q) {
    Scalar s;
    q.canonicalize();
    s.q_ = std::move(q);
    return s;
  }

  static Scalar mod_p(long long v, long long p) { return from_long(FieldTag::prime(p), v); }

  // "num/den" with arbitrary-precision parts for Q; a decimal residue for GF(p)
  static Scalar parse(const FieldTag& f, std::string_view text) {
    const std::string t(text);
    if (t.empty()) throw input_error("empty scalar");
    try {
      if (f.is_rational()) {
        const auto slash = t.find('/');
        mpq_class q;
        if (slash == std::string::npos) {
          q = mpq_class(mpz_class(t));
        } else {
          const mpz_class num(t.substr(0, slash));
          const mpz_class den(t.substr(slash + 1));
          if (den == 0) throw input_error("zero denominator in '" + t + "'");
          q = mpq_class(num) / mpq_class(den);
        }
        return rational(std::move(q));
      }
      mpz_class z(t);
      mpz_class r = z % static_cast<long>(f.modulus());
      Scalar s;
      s.p_ = f.modulus();
      s.v_ = r.get_si();
      if (s.v_ < 0) s.v_ += s.p_;
      return s;
    } catch (const std::invalid_argument&) {
      throw input_error("unparsable scalar '" + t + "'");
    }
  }

  FieldTag field() const { return p_ == 0 ? FieldTag::rationals() : FieldTag::prime(p_); }
  bool is_rational_field() const { return p_ == 0; }

  bool is_zero() const { return p_ == 0 ? q_ == 0 : v_ == 0; }
  bool is_one() const { return p_ == 0 ? q_ == 1 : v_ == 1; }

  const mpq_class& rational_value() const {
    if (p_ != 0) throw consistency_error("rational_value() on a GF(p) scalar");
    return q_;
  }
  long long residue() const {
    if (p_ == 0) throw consistency_error("residue() on a rational scalar");
    return v_;
  }

  Scalar operator-() const {
    Scalar r = *this;
    if (p_ == 0) {
      r.q_ = -q_;
    } else if (v_ != 0) {
      r.v_ = p_ - v_;
    }
    return r;
  }

  Scalar inverse() const {
    if (is_zero()) throw consistency_error("inverse of zero");
    Scalar r = *this;
    if (p_ == 0) {
      r.q_ = 1 / q_;
    } else {
      r.v_ = detail::invmod_ll(v_, p_);
    }
    return r;
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    check_same(x, y);
    Scalar r = x;
    if (x.p_ == 0) {
      r.q_ += y.q_;
    } else {
      r.v_ = (x.v_ + y.v_) % x.p_;
    }
    return r;
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }
  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    check_same(x, y);
    Scalar r = x;
    if (x.p_ == 0) {
      r.q_ *= y.q_;
    } else {
      r.v_ = static_cast<long long>(
          detail::mulmod_u64(static_cast<std::uint64_t>(x.v_), static_cast<std::uint64_t>(y.v_),
                             static_cast<std::uint64_t>(x.p_)));
    }
    return r;
  }
  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    if (x.p_ != y.p_) return false;
    return x.p_ == 0 ? x.q_ == y.q_ : x.v_ == y.v_;
  }

  std::string str() const {
    if (p_ == 0) return q_.get_str();
    return std::to_string(v_);
  }

 private:
  static void check_same(const Scalar& x, const Scalar& y) {
    if (x.p_ != y.p_) throw consistency_error("mixed-field scalar arithmetic");
  }

  mpq_class q_;
  long long v_ = 0;
  long long p_ = 0;  // 0 = rational
};

}  // namespace surfrep
