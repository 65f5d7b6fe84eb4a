#pragma once

// Exact scalar domains: prime fields GF(p) and the rationals.
//
// A field is a small value type exposing an `Element` type plus the field
// operations as member functions. Matrices, vectors and subspaces carry a copy
// of their field, so two objects over GF(3) and GF(5) never mix silently.

#include <charconv>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace unistab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation's documented precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised when an internal postcondition check fails. Seeing one is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Runtime description of a scalar domain, as read from a problem file.
struct FieldSpec {
  enum class Kind { prime, rationals };

  Kind kind = Kind::rationals;
  std::int64_t p = 0;

  static FieldSpec prime(std::int64_t p);
  static FieldSpec rationals() { return {}; }

  std::string to_string() const {
    return kind == Kind::prime ? "gf " + std::to_string(p) : "q";
  }
  bool operator==(const FieldSpec&) const = default;
};

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline FieldSpec FieldSpec::prime(std::int64_t p) {
  if (!is_prime(p)) throw PreconditionError("field modulus " + std::to_string(p) + " is not prime");
  if (p >= (std::int64_t{1} << 31)) throw PreconditionError("field modulus must be below 2^31");
  return {Kind::prime, p};
}

namespace detail {

inline std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  auto first = text.data();
  auto last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last)
    throw PreconditionError("malformed integer '" + std::string(text) + "'");
  return value;
}

}  // namespace detail

/// GF(p) with p < 2^31; elements are stored reduced in [0, p).
class PrimeField {
 public:
  using Element = std::int64_t;

  explicit PrimeField(std::int64_t p) : p_(FieldSpec::prime(p).p) {}

  std::int64_t modulus() const { return p_; }
  FieldSpec spec() const { return {FieldSpec::Kind::prime, p_}; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const {
    v %= p_;
    return v < 0 ? v + p_ : v;
  }

  Element add(Element a, Element b) const {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const {
    Element s = a - b;
    return s < 0 ? s + p_ : s;
  }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return (a * b) % p_; }
  Element inv(Element a) const {
    if (a == 0) throw PreconditionError("division by zero in GF(" + std::to_string(p_) + ")");
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    return from_int(t);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }

  /// Accepts an integer or a fraction `a/b` with b invertible mod p.
  Element parse(std::string_view text) const {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return from_int(detail::parse_int(text));
    auto num = from_int(detail::parse_int(text.substr(0, slash)));
    auto den = from_int(detail::parse_int(text.substr(slash + 1)));
    if (den == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
    return div(num, den);
  }
  std::string format(Element a) const { return std::to_string(a); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::int64_t p_;
};

/// The rationals with arbitrary-precision numerator and denominator.
class RationalField {
 public:
  using Element = mpq_class;

  FieldSpec spec() const { return FieldSpec::rationals(); }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(static_cast<long>(v)); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw PreconditionError("division by zero in Q");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }

  /// Accepts `a` or `a/b`; the result is in lowest terms with positive denominator.
  Element parse(std::string_view text) const {
    auto slash = text.find('/');
    auto check_digits = [&](std::string_view part) {
      std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
      if (i == part.size()) throw PreconditionError("malformed rational '" + std::string(text) + "'");
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9')
          throw PreconditionError("malformed rational '" + std::string(text) + "'");
    };
    auto strip_plus = [](std::string_view part) {
      return (!part.empty() && part[0] == '+') ? part.substr(1) : part;
    };
    if (slash == std::string_view::npos) {
      check_digits(text);
      return Element(mpz_class(std::string(strip_plus(text))));
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    check_digits(num);
    check_digits(den);
    mpz_class d(std::string(strip_plus(den)));
    if (d == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
    Element q(mpz_class(std::string(strip_plus(num))), d);
    q.canonicalize();
    return q;
  }
  std::string format(const Element& a) const { return a.get_str(); }

  bool operator==(const RationalField&) const { return true; }
};

template <class F>
concept ExactField = std::equality_comparable<F> && requires(const F f, const typename F::Element a,
                                                             std::string_view s, std::int64_t i) {
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.one() } -> std::convertible_to<typename F::Element>;
  { f.from_int(i) } -> std::convertible_to<typename F::Element>;
  { f.add(a, a) } -> std::convertible_to<typename F::Element>;
  { f.sub(a, a) } -> std::convertible_to<typename F::Element>;
  { f.neg(a) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.parse(s) } -> std::convertible_to<typename F::Element>;
  { f.format(a) } -> std::convertible_to<std::string>;
  { f.spec() } -> std::same_as<FieldSpec>;
};

}  // namespace unistab
