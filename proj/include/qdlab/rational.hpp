#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qdlab {

// Arbitrary-precision rational number in canonical form:
// gcd(|num|, den) = 1, den > 0.  All arithmetic is exact.
class ExactRational {
 public:
  ExactRational() : v_(0) {}
  ExactRational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  ExactRational(long num, unsigned long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("ExactRational: zero denominator");
    v_.canonicalize();
  }
  explicit ExactRational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  explicit ExactRational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("ExactRational: zero denominator");
    v_.canonicalize();
  }

  // Parses "num/den" or a plain integer string.
  static ExactRational parse(const std::string& text);

  const mpz_class& numerator() const { return v_.get_num(); }
  const mpz_class& denominator() const { return v_.get_den(); }

  ExactRational operator+(const ExactRational& o) const { return ExactRational(mpq_class(v_ + o.v_)); }
  ExactRational operator-(const ExactRational& o) const { return ExactRational(mpq_class(v_ - o.v_)); }
  ExactRational operator*(const ExactRational& o) const { return ExactRational(mpq_class(v_ * o.v_)); }
  ExactRational operator/(const ExactRational& o) const {
    if (o.v_ == 0) throw std::invalid_argument("ExactRational: division by zero");
    return ExactRational(mpq_class(v_ / o.v_));
  }
  ExactRational operator-() const { return ExactRational(mpq_class(-v_)); }
  ExactRational& operator+=(const ExactRational& o) { v_ += o.v_; return *this; }
  ExactRational& operator-=(const ExactRational& o) { v_ -= o.v_; return *this; }
  ExactRational& operator*=(const ExactRational& o) { v_ *= o.v_; return *this; }

  bool operator==(const ExactRational& o) const { return v_ == o.v_; }
  bool operator!=(const ExactRational& o) const { return v_ != o.v_; }
  bool operator<(const ExactRational& o) const { return v_ < o.v_; }
  bool operator<=(const ExactRational& o) const { return v_ <= o.v_; }
  bool operator>(const ExactRational& o) const { return v_ > o.v_; }
  bool operator>=(const ExactRational& o) const { return v_ >= o.v_; }

  // Non-negative integer power.
  ExactRational pow(unsigned long e) const;

  bool is_zero() const { return v_ == 0; }

  // "num/den" (always with the slash, e.g. "3/4", "2/1", "-1/3").
  std::string to_string() const;

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

inline ExactRational operator*(long a, const ExactRational& b) { return ExactRational(a) * b; }

}  // namespace qdlab
