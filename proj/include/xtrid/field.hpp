#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace xtrid {

// The ground field: either the rationals or a prime field GF(p).
class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  // Largest admissible modulus; residues multiply in 64 bits.
  static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 32) - 1;

  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec{}; }
  // Throws InvalidArgument unless p is a prime no larger than kMaxModulus.
  static FieldSpec prime(std::uint64_t p);
  // Accepts "Q" or "GF(p)".
  static FieldSpec parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rationals; }
  bool is_prime_field() const { return kind_ == Kind::PrimeField; }
  // Zero for the rationals.
  std::uint64_t modulus() const { return modulus_; }

  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_ = Kind::Rationals;
  std::uint64_t modulus_ = 0;
};

bool is_prime(std::uint64_t n);

// An exact element of Q or GF(p). Rationals are kept in lowest terms with a
// positive denominator; residues are kept in [0, p).
class Scalar {
 public:
  // Zero of the rationals.
  Scalar() : value_(mpq_class(0)) {}
  Scalar(FieldSpec spec, long long integer);
  Scalar(FieldSpec spec, const mpq_class& value);

  static Scalar zero(FieldSpec spec) { return Scalar(spec, 0); }
  static Scalar one(FieldSpec spec) { return Scalar(spec, 1); }
  // Parses "num/den", "num" or, for prime fields, a decimal residue.
  static Scalar parse(FieldSpec spec, std::string_view text);

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const;
  bool is_one() const;

  // Valid only over Q.
  const mpq_class& rational() const;
  // Valid only over GF(p).
  std::uint64_t residue() const;

  Scalar inverse() const;
  Scalar pow(unsigned exponent) const;

  // Canonical text: "num/den" (den omitted when 1) or the decimal residue.
  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);

 private:
  void require_same_field(const Scalar& rhs) const;

  FieldSpec spec_;
  std::variant<mpq_class, std::uint64_t> value_;
};

// Maps a rational into the given field. Throws DivisionByZero when the
// denominator vanishes modulo p.
Scalar embed(FieldSpec spec, const mpq_class& value);

}  // namespace xtrid
