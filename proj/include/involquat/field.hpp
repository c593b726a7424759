#pragma once

// Exact scalar fields: GF(p), GF(p^k) = GF(p)[t]/(modulus) and the rationals.
//
// A scalar type K used by the rest of the library provides
//   K::field_type  with zero(), one(), from_int(), characteristic(),
//                  is_finite(), has_unitary(), prime_subfield(),
//                  prime_basis(), prime_coordinates(), name()
//   arithmetic operators, inv(), conj(), is_zero(), field().

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "involquat/error.hpp"
#include "involquat/random.hpp"

namespace involquat {

class Fq;

/// Finite field GF(p^k) with elements encoded as integers c = sum c_i p^i,
/// c_i the coefficient of t^i. Instances are interned and never destroyed,
/// so scalars may hold a plain pointer to their field.
class FiniteField {
 public:
  using element_type = Fq;
  static constexpr unsigned kMaxPrime = 13;
  static constexpr unsigned kMaxDegree = 3;

  static const FiniteField& prime(unsigned p) { return intern(p, {}, false); }

  /// modulus lists the coefficients low to high and must be monic.
  static const FiniteField& extension(unsigned p, std::vector<unsigned> modulus, bool unitary = false) {
    return intern(p, std::move(modulus), unitary);
  }

  /// GF(q) with a fixed default modulus: t^2+t+1 (q=4), t^3+t+1 (q=8),
  /// t^2+1 (q=9); q prime gives the prime field.
  static const FiniteField& gf(unsigned q, bool unitary = false) {
    switch (q) {
      case 4: return extension(2, {1, 1, 1}, unitary);
      case 8: return extension(2, {1, 1, 0, 1}, unitary);
      case 9: return extension(3, {1, 0, 1}, unitary);
      default:
        if (unitary) fail(ErrorCode::InvalidField, "unitary automorphism needs an even-degree extension");
        return prime(q);
    }
  }

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  unsigned size() const { return q_; }
  bool is_finite() const { return true; }
  bool has_unitary() const { return unitary_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Fq zero() const;
  Fq one() const;
  Fq from_int(long long value) const;
  Fq from_code(unsigned code) const;
  Fq from_coefficients(const std::vector<long long>& coefficients) const;
  std::vector<Fq> elements() const;
  Fq random(Rng& rng) const;
  Fq random_nonzero(Rng& rng) const;

  const FiniteField& prime_subfield() const { return k_ == 1 && !unitary_ ? *this : prime(p_); }
  /// 1, t, ..., t^{k-1} as elements of this field.
  std::vector<Fq> prime_basis() const;
  /// Coefficients of a in the basis above, as elements of prime_subfield().
  std::vector<Fq> prime_coordinates(const Fq& a) const;
  /// Inverse of prime_coordinates.
  Fq from_prime_coordinates(const std::vector<Fq>& coords) const;

  std::string name() const {
    std::string s = "GF(" + std::to_string(q_) + ")";
    if (k_ > 1) {
      s += "=GF(" + std::to_string(p_) + ")[t]/(";
      bool first = true;
      for (unsigned i = k_ + 1; i-- > 0;) {
        if (modulus_[i] == 0) continue;
        if (!first) s += "+";
        first = false;
        if (modulus_[i] != 1 || i == 0) s += std::to_string(modulus_[i]);
        if (i >= 1) s += "t";
        if (i >= 2) s += "^" + std::to_string(i);
      }
      s += ")";
    }
    if (unitary_) s += "[unitary]";
    return s;
  }

  // Raw table access for the element type.
  std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return add_[a * q_ + b]; }
  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const { return mul_[a * q_ + b]; }
  std::uint16_t neg(std::uint16_t a) const { return neg_[a]; }
  std::uint16_t inv(std::uint16_t a) const { return inv_[a]; }
  std::uint16_t conj(std::uint16_t a) const {
    if (!unitary_) fail(ErrorCode::NoAutomorphism, name());
    return conj_[a];
  }
  unsigned digit(std::uint16_t a, unsigned i) const {
    for (unsigned j = 0; j < i; ++j) a /= p_;
    return a % p_;
  }

  FiniteField(const FiniteField&) = delete;
  FiniteField& operator=(const FiniteField&) = delete;

 private:
  using Key = std::tuple<unsigned, std::vector<unsigned>, bool>;

  static const FiniteField& intern(unsigned p, std::vector<unsigned> modulus, bool unitary) {
    static std::mutex mutex;
    static std::map<Key, std::unique_ptr<FiniteField>> registry;
    std::lock_guard lock(mutex);
    Key key{p, modulus, unitary};
    auto it = registry.find(key);
    if (it != registry.end()) return *it->second;
    auto field = std::unique_ptr<FiniteField>(new FiniteField(p, std::move(modulus), unitary));
    return *registry.emplace(std::move(key), std::move(field)).first->second;
  }

  static bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

  FiniteField(unsigned p, std::vector<unsigned> modulus, bool unitary) : p_(p), unitary_(unitary) {
    require(is_prime(p), ErrorCode::InvalidField, "characteristic " + std::to_string(p) + " is not prime");
    require(p <= kMaxPrime, ErrorCode::InvalidField, "characteristic above " + std::to_string(kMaxPrime));
    if (modulus.empty()) modulus = {0, 1};
    for (auto& c : modulus) c %= p;
    require(modulus.size() >= 2 && modulus.back() == 1, ErrorCode::InvalidField, "modulus must be monic of degree >= 1");
    k_ = static_cast<unsigned>(modulus.size() - 1);
    require(k_ <= kMaxDegree, ErrorCode::InvalidField, "extension degree above 3");
    require(!unitary || k_ % 2 == 0, ErrorCode::InvalidField, "unitary automorphism needs an even-degree extension");
    modulus_ = std::move(modulus);
    if (k_ == 1) modulus_ = {0, 1};
    require(irreducible(), ErrorCode::InvalidField, "modulus is reducible over GF(" + std::to_string(p) + ")");
    q_ = 1;
    for (unsigned i = 0; i < k_; ++i) q_ *= p_;
    build_tables();
  }

  using Poly = std::vector<unsigned>;  // low to high, over GF(p)

  static void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  unsigned inverse_mod_p(unsigned a) const {
    for (unsigned b = 1; b < p_; ++b)
      if (a * b % p_ == 1) return b;
    fail(ErrorCode::DivisionByZero);
  }

  Poly remainder(Poly a, const Poly& b) const {
    trim(a);
    const unsigned lead_inv = inverse_mod_p(b.back());
    while (a.size() >= b.size()) {
      const unsigned factor = a.back() * lead_inv % p_;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p_ * p_ - factor * b[i] % p_) % p_;
      trim(a);
    }
    return a;
  }

  // Trial division by every monic polynomial of degree 1..k/2.
  bool irreducible() const {
    if (k_ == 1) return true;
    for (unsigned d = 1; 2 * d <= k_; ++d) {
      unsigned count = 1;
      for (unsigned i = 0; i < d; ++i) count *= p_;
      for (unsigned code = 0; code < count; ++code) {
        Poly divisor(d + 1, 0);
        unsigned c = code;
        for (unsigned i = 0; i < d; ++i, c /= p_) divisor[i] = c % p_;
        divisor[d] = 1;
        if (remainder(modulus_, divisor).empty()) return false;
      }
    }
    return true;
  }

  Poly decode(unsigned code) const {
    Poly a(k_, 0);
    for (unsigned i = 0; i < k_; ++i, code /= p_) a[i] = code % p_;
    return a;
  }

  unsigned encode(const Poly& a) const {
    unsigned code = 0;
    for (std::size_t i = a.size(); i-- > 0;) code = code * p_ + a[i];
    return code;
  }

  unsigned poly_mul(unsigned x, unsigned y) const {
    const Poly a = decode(x), b = decode(y);
    Poly prod(2 * k_, 0);
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    Poly r = remainder(prod, modulus_);
    r.resize(k_, 0);
    return encode(r);
  }

  void build_tables() {
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    for (unsigned x = 0; x < q_; ++x) {
      const Poly a = decode(x);
      Poly n(k_);
      for (unsigned i = 0; i < k_; ++i) n[i] = (p_ - a[i]) % p_;
      neg_[x] = static_cast<std::uint16_t>(encode(n));
      for (unsigned y = 0; y < q_; ++y) {
        const Poly b = decode(y);
        Poly s(k_);
        for (unsigned i = 0; i < k_; ++i) s[i] = (a[i] + b[i]) % p_;
        add_[x * q_ + y] = static_cast<std::uint16_t>(encode(s));
        mul_[x * q_ + y] = static_cast<std::uint16_t>(poly_mul(x, y));
      }
    }
    for (unsigned x = 1; x < q_; ++x)
      for (unsigned y = 1; y < q_; ++y)
        if (mul_[x * q_ + y] == 1) inv_[x] = static_cast<std::uint16_t>(y);
    if (unitary_) {
      // a -> a^(p^(k/2))
      unsigned exponent = 1;
      for (unsigned i = 0; i < k_ / 2; ++i) exponent *= p_;
      conj_.assign(q_, 0);
      for (unsigned x = 0; x < q_; ++x) {
        unsigned r = 1;
        for (unsigned i = 0; i < exponent; ++i) r = mul_[r * q_ + x];
        conj_[x] = static_cast<std::uint16_t>(r);
      }
    }
  }

  unsigned p_ = 2;
  unsigned k_ = 1;
  unsigned q_ = 2;
  bool unitary_ = false;
  std::vector<unsigned> modulus_;
  std::vector<std::uint16_t> add_, mul_, neg_, inv_, conj_;
};

/// Element of a FiniteField. Canonical form is the integer code, so
/// equality is structural.
class Fq {
 public:
  using field_type = FiniteField;

  Fq() = default;
  Fq(const FiniteField& field, std::uint16_t code) : field_(&field), code_(code) {}

  const FiniteField& field() const {
    if (!field_) fail(ErrorCode::FieldMismatch, "uninitialised scalar");
    return *field_;
  }
  std::uint16_t code() const { return code_; }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  friend Fq operator+(const Fq& a, const Fq& b) {
    a.check(b);
    return {*a.field_, a.field_->add(a.code_, b.code_)};
  }
  friend Fq operator-(const Fq& a, const Fq& b) {
    a.check(b);
    return {*a.field_, a.field_->add(a.code_, a.field_->neg(b.code_))};
  }
  friend Fq operator*(const Fq& a, const Fq& b) {
    a.check(b);
    return {*a.field_, a.field_->mul(a.code_, b.code_)};
  }
  friend Fq operator/(const Fq& a, const Fq& b) { return a * b.inv(); }
  Fq operator-() const { return {field(), field_->neg(code_)}; }
  Fq& operator+=(const Fq& b) { return *this = *this + b; }
  Fq& operator-=(const Fq& b) { return *this = *this - b; }
  Fq& operator*=(const Fq& b) { return *this = *this * b; }

  Fq inv() const {
    if (code_ == 0) fail(ErrorCode::DivisionByZero);
    return {field(), field_->inv(code_)};
  }
  /// The designated order-2 automorphism a -> a^(p^(k/2)).
  Fq conj() const { return {field(), field().conj(code_)}; }

  friend bool operator==(const Fq& a, const Fq& b) {
    a.check(b);
    return a.code_ == b.code_;
  }

  /// Decimal residue for prime fields, "[c0,c1,...]" otherwise.
  std::string to_string() const {
    const auto& f = field();
    if (f.degree() == 1) return std::to_string(code_);
    std::string s = "[";
    for (unsigned i = 0; i < f.degree(); ++i) {
      if (i) s += ",";
      s += std::to_string(f.digit(code_, i));
    }
    return s + "]";
  }

 private:
  void check(const Fq& b) const {
    if (field_ != b.field_ || !field_) fail(ErrorCode::FieldMismatch);
  }

  const FiniteField* field_ = nullptr;
  std::uint16_t code_ = 0;
};

inline Fq FiniteField::zero() const { return {*this, 0}; }
inline Fq FiniteField::one() const { return {*this, 1}; }
inline Fq FiniteField::from_code(unsigned code) const {
  require(code < q_, ErrorCode::Malformed, "element code out of range");
  return {*this, static_cast<std::uint16_t>(code)};
}
inline Fq FiniteField::from_int(long long value) const {
  long long r = value % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return {*this, static_cast<std::uint16_t>(r)};
}
inline Fq FiniteField::from_coefficients(const std::vector<long long>& coefficients) const {
  require(coefficients.size() <= k_, ErrorCode::Malformed, "too many coefficients for " + name());
  Poly a(k_, 0);
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    long long r = coefficients[i] % static_cast<long long>(p_);
    a[i] = static_cast<unsigned>(r < 0 ? r + p_ : r);
  }
  return {*this, static_cast<std::uint16_t>(encode(a))};
}
inline std::vector<Fq> FiniteField::elements() const {
  std::vector<Fq> out;
  out.reserve(q_);
  for (unsigned c = 0; c < q_; ++c) out.emplace_back(*this, static_cast<std::uint16_t>(c));
  return out;
}
inline Fq FiniteField::random(Rng& rng) const { return {*this, static_cast<std::uint16_t>(rng.below(q_))}; }
inline Fq FiniteField::random_nonzero(Rng& rng) const {
  return {*this, static_cast<std::uint16_t>(1 + rng.below(q_ - 1))};
}
inline std::vector<Fq> FiniteField::prime_basis() const {
  std::vector<Fq> out;
  unsigned code = 1;
  for (unsigned i = 0; i < k_; ++i, code *= p_) out.emplace_back(*this, static_cast<std::uint16_t>(code));
  return out;
}
inline std::vector<Fq> FiniteField::prime_coordinates(const Fq& a) const {
  const auto& sub = prime_subfield();
  std::vector<Fq> out;
  unsigned c = a.code();
  for (unsigned i = 0; i < k_; ++i, c /= p_) out.emplace_back(sub, static_cast<std::uint16_t>(c % p_));
  return out;
}
inline Fq FiniteField::from_prime_coordinates(const std::vector<Fq>& coords) const {
  Poly a(k_, 0);
  for (unsigned i = 0; i < k_ && i < coords.size(); ++i) a[i] = coords[i].code();
  return {*this, static_cast<std::uint16_t>(encode(a))};
}

class Rational;

/// The field of rationals; a single shared instance.
class RationalField {
 public:
  using element_type = Rational;

  static const RationalField& instance() {
    static const RationalField field;
    return field;
  }

  unsigned characteristic() const { return 0; }
  unsigned size() const { return 0; }
  bool is_finite() const { return false; }
  bool has_unitary() const { return false; }
  std::string name() const { return "Q"; }

  Rational zero() const;
  Rational one() const;
  Rational from_int(long long value) const;
  /// Small random rational p/q with |p| <= 9, 1 <= q <= 9.
  Rational random(Rng& rng) const;
  Rational random_nonzero(Rng& rng) const;

  const RationalField& prime_subfield() const { return *this; }
  std::vector<Rational> prime_basis() const;
  std::vector<Rational> prime_coordinates(const Rational& a) const;
  Rational from_prime_coordinates(const std::vector<Rational>& coords) const;

 private:
  RationalField() = default;
};

class Rational {
 public:
  using field_type = RationalField;
  using value_type = boost::multiprecision::cpp_rational;

  Rational() = default;
  explicit Rational(value_type v) : value_(std::move(v)) {}
  Rational(long long num, long long den) {
    if (den == 0) fail(ErrorCode::DivisionByZero);
    value_ = value_type(num, den);
  }

  const RationalField& field() const { return RationalField::instance(); }
  const value_type& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(value_type(a.value_ + b.value_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(value_type(a.value_ - b.value_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(value_type(a.value_ * b.value_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) fail(ErrorCode::DivisionByZero);
    return Rational(value_type(a.value_ / b.value_));
  }
  Rational operator-() const { return Rational(value_type(-value_)); }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  Rational inv() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero);
    return Rational(value_type(1 / value_));
  }
  Rational conj() const { fail(ErrorCode::NoAutomorphism, "Q"); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }

  /// "num/den" (or "num" for integers).
  std::string to_string() const {
    const auto num = boost::multiprecision::numerator(value_);
    const auto den = boost::multiprecision::denominator(value_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }

 private:
  value_type value_{0};
};

inline Rational RationalField::zero() const { return Rational(0, 1); }
inline Rational RationalField::one() const { return Rational(1, 1); }
inline Rational RationalField::from_int(long long value) const { return Rational(value, 1); }
inline Rational RationalField::random(Rng& rng) const {
  return Rational(static_cast<long long>(rng.below(19)) - 9, static_cast<long long>(1 + rng.below(9)));
}
inline Rational RationalField::random_nonzero(Rng& rng) const {
  Rational r;
  do {
    r = random(rng);
  } while (r.is_zero());
  return r;
}
inline std::vector<Rational> RationalField::prime_basis() const { return {one()}; }
inline std::vector<Rational> RationalField::prime_coordinates(const Rational& a) const { return {a}; }
inline Rational RationalField::from_prime_coordinates(const std::vector<Rational>& coords) const {
  return coords.empty() ? zero() : coords.front();
}

template <class K>
concept FieldScalar = requires(const K& a, const K& b) {
  typename K::field_type;
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.inv() } -> std::same_as<K>;
  { a.conj() } -> std::same_as<K>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.field() } -> std::same_as<const typename K::field_type&>;
  { a.field().zero() } -> std::same_as<K>;
  { a.to_string() } -> std::same_as<std::string>;
};

template <FieldScalar K>
using FieldOf = typename K::field_type;

/// The order-2 automorphism of a unitary field (Frobenius a -> a^(p^(k/2))).
template <FieldScalar K>
K unitary_conjugate(const K& a) {
  return a.conj();
}

/// lambda with lambda^2 = mu, or nullopt when mu is not a square.
/// Finite fields: Euler's criterion to decide, enumeration to find the root.
inline std::optional<Fq> sqrt_in_field(const Fq& mu) {
  const auto& f = mu.field();
  if (mu.is_zero()) return f.zero();
  if (f.characteristic() != 2) {
    // mu^((q-1)/2) == 1
    Fq power = f.one();
    for (unsigned i = 0; i < (f.size() - 1) / 2; ++i) power = power * mu;
    if (!power.is_one()) return std::nullopt;
  }
  for (const Fq& x : f.elements())
    if (x * x == mu) return x;
  return std::nullopt;
}

/// Rationals: exact integer square roots of numerator and denominator.
inline std::optional<Rational> sqrt_in_field(const Rational& mu) {
  using boost::multiprecision::cpp_int;
  if (mu.value() < 0) return std::nullopt;
  const cpp_int num = boost::multiprecision::numerator(mu.value());
  const cpp_int den = boost::multiprecision::denominator(mu.value());
  const cpp_int rn = boost::multiprecision::sqrt(num);
  const cpp_int rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(Rational::value_type(rn, rd));
}

}  // namespace involquat
