#include "xtrid/field.hpp"

#include <charconv>

#include "xtrid/errors.hpp"

namespace xtrid {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p > kMaxModulus) {
    throw InvalidArgument("modulus " + std::to_string(p) + " exceeds the supported range");
  }
  if (!is_prime(p)) {
    throw InvalidArgument("modulus " + std::to_string(p) + " is not prime");
  }
  return FieldSpec(Kind::PrimeField, p);
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
    auto digits = text.substr(3, text.size() - 4);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc{} && ptr == digits.data() + digits.size()) return prime(p);
  }
  throw ParseError("unrecognized field \"" + std::string(text) + "\" (expected Q or GF(p))");
}

std::string FieldSpec::name() const {
  if (is_rational()) return "Q";
  return "GF(" + std::to_string(modulus_) + ")";
}

namespace {

std::uint64_t reduce(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  // Extended Euclid on signed 64-bit values; p < 2^32 so nothing overflows.
  std::int64_t old_r = static_cast<std::int64_t>(a), r = static_cast<std::int64_t>(p);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_s < 0) old_s += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(old_s);
}

}  // namespace

Scalar embed(FieldSpec spec, const mpq_class& value) { return Scalar(spec, value); }

Scalar::Scalar(FieldSpec spec, long long integer) : spec_(spec) {
  if (spec.is_rational()) {
    value_ = mpq_class(mpz_class(static_cast<long>(integer)));
  } else {
    const auto p = static_cast<long long>(spec.modulus());
    long long r = integer % p;
    if (r < 0) r += p;
    value_ = static_cast<std::uint64_t>(r);
  }
}

Scalar::Scalar(FieldSpec spec, const mpq_class& value) : spec_(spec) {
  if (spec.is_rational()) {
    mpq_class v = value;
    v.canonicalize();
    value_ = std::move(v);
    return;
  }
  const auto p = spec.modulus();
  const auto den = reduce(value.get_den(), p);
  if (den == 0) {
    throw DivisionByZero("denominator of " + value.get_str() + " vanishes in " + spec.name());
  }
  value_ = reduce(value.get_num(), p) * inverse_mod(den, p) % p;
}

Scalar Scalar::parse(FieldSpec spec, std::string_view text) {
  if (text.empty()) throw ParseError("empty scalar");
  mpq_class q;
  const std::string owned(text);
  // mpq_set_str accepts surrounding whitespace and "+"; canonical text has neither.
  for (char c : owned) {
    if (!(c == '-' || c == '/' || (c >= '0' && c <= '9'))) {
      throw ParseError("malformed scalar \"" + owned + "\"");
    }
  }
  if (q.set_str(owned, 10) != 0 || q.get_den() == 0) {
    throw ParseError("malformed scalar \"" + owned + "\"");
  }
  return Scalar(spec, q);
}

bool Scalar::is_zero() const {
  if (spec_.is_rational()) return sgn(std::get<mpq_class>(value_)) == 0;
  return std::get<std::uint64_t>(value_) == 0;
}

bool Scalar::is_one() const {
  if (spec_.is_rational()) return std::get<mpq_class>(value_) == 1;
  return std::get<std::uint64_t>(value_) == 1;
}

const mpq_class& Scalar::rational() const {
  if (!spec_.is_rational()) throw IncompatibleOperands("residue requested as a rational");
  return std::get<mpq_class>(value_);
}

std::uint64_t Scalar::residue() const {
  if (spec_.is_rational()) throw IncompatibleOperands("rational requested as a residue");
  return std::get<std::uint64_t>(value_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in " + spec_.name());
  Scalar out = *this;
  if (spec_.is_rational()) {
    auto& q = std::get<mpq_class>(out.value_);
    mpq_inv(q.get_mpq_t(), q.get_mpq_t());
  } else {
    out.value_ = inverse_mod(std::get<std::uint64_t>(value_), spec_.modulus());
  }
  return out;
}

Scalar Scalar::pow(unsigned exponent) const {
  Scalar result = one(spec_);
  Scalar base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

std::string Scalar::to_string() const {
  if (spec_.is_rational()) return std::get<mpq_class>(value_).get_str();
  return std::to_string(std::get<std::uint64_t>(value_));
}

void Scalar::require_same_field(const Scalar& rhs) const {
  if (!(spec_ == rhs.spec_)) {
    throw IncompatibleOperands("cannot combine " + spec_.name() + " and " + rhs.spec_.name() +
                               " scalars");
  }
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (spec_.is_rational()) {
    auto& q = std::get<mpq_class>(out.value_);
    mpq_neg(q.get_mpq_t(), q.get_mpq_t());
  } else {
    const auto r = std::get<std::uint64_t>(value_);
    out.value_ = r == 0 ? 0 : spec_.modulus() - r;
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same_field(rhs);
  if (spec_.is_rational()) {
    std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
  } else {
    auto& r = std::get<std::uint64_t>(value_);
    r = (r + std::get<std::uint64_t>(rhs.value_)) % spec_.modulus();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  require_same_field(rhs);
  if (spec_.is_rational()) {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
  } else {
    auto& r = std::get<std::uint64_t>(value_);
    r = (r + spec_.modulus() - std::get<std::uint64_t>(rhs.value_)) % spec_.modulus();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same_field(rhs);
  if (spec_.is_rational()) {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
  } else {
    auto& r = std::get<std::uint64_t>(value_);
    r = r * std::get<std::uint64_t>(rhs.value_) % spec_.modulus();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  require_same_field(rhs);
  return *this *= rhs.inverse();
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  return lhs.spec_ == rhs.spec_ && lhs.value_ == rhs.value_;
}

}  // namespace xtrid
