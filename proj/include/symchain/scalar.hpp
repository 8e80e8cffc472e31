#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "symchain/error.hpp"

namespace symchain {

/// Coefficient ring of a complex. Cheap to copy; equality is structural.
class Ring {
 public:
  enum class Kind { Integers, Rationals, PrimeField, Localized, Graded };

  static Ring integers();
  static Ring rationals();
  /// GF(p). Throws if p is not prime.
  static Ring prime_field(long p);
  /// Integers localized at the prime ideal (p).
  static Ring localized(long p);
  /// QQ[vars] with every variable of internal degree 1.
  static Ring graded(std::vector<std::string> vars);

  /// Accepts "ZZ", "QQ", "GF(p)", "ZLoc(p)" and "QQ[x,y,...]".
  static Ring parse(std::string_view text);

  Kind kind() const { return impl_->kind; }
  long prime() const { return impl_->prime; }
  const std::vector<std::string>& variables() const { return impl_->vars; }
  std::size_t num_variables() const { return impl_->vars.size(); }

  bool is_field() const { return kind() == Kind::Rationals || kind() == Kind::PrimeField; }
  bool is_graded() const { return kind() == Kind::Graded; }
  /// ZZ or ZLoc(p): the rings handled by Smith normal form.
  bool is_euclidean() const { return kind() == Kind::Integers || kind() == Kind::Localized; }
  /// Fields, ZLoc(p) and graded polynomial rings (graded-local at the irrelevant ideal).
  bool is_local() const { return kind() != Kind::Integers; }

  std::string name() const;

  friend bool operator==(const Ring& a, const Ring& b);
  friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

 private:
  struct Impl {
    Kind kind;
    long prime = 0;
    std::vector<std::string> vars;
  };
  explicit Ring(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

bool two_is_unit(const Ring& ring);
bool is_prime(long p);

using Exponents = std::vector<unsigned>;
/// Monomial -> nonzero coefficient. Map order is lexicographic on exponent vectors.
using Terms = std::map<Exponents, mpq_class>;

/// Exact ring element in canonical form.
///
/// Payloads: ZZ and GF(p) use an integer (GF reduced into [0, p)); QQ and
/// ZLoc(p) a normalized fraction (ZLoc denominators prime to p); graded rings
/// a term map without zero coefficients.
class Scalar {
 public:
  using Payload = std::variant<mpz_class, mpq_class, Terms>;

  explicit Scalar(Ring ring);  // zero
  Scalar(Ring ring, long value);
  Scalar(Ring ring, const mpz_class& value);
  /// Throws NonUnit if the denominator is not invertible in the ring.
  Scalar(Ring ring, const mpq_class& value);
  static Scalar from_terms(Ring ring, Terms terms);
  static Scalar variable(const Ring& ring, std::size_t index);
  static Scalar zero(const Ring& ring) { return Scalar(ring); }
  static Scalar one(const Ring& ring) { return Scalar(ring, 1L); }

  /// Parses the textual grammar: integers, fractions a/b, and polynomial
  /// expressions such as `3*x^2*y - y^3` over graded rings.
  static Scalar parse(const Ring& ring, std::string_view text);

  const Ring& ring() const { return ring_; }
  const Payload& payload() const { return value_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;
  Scalar inverse() const;

  /// Graded only: true when every term has the same total degree (zero included).
  bool is_homogeneous() const;
  /// Total degree of a nonzero homogeneous polynomial; 0 for non-graded rings.
  int degree() const;
  /// Element of the prime subring's fraction field (a constant).
  bool is_constant() const;
  /// Rational value of a constant element (GF residues are returned as integers).
  mpq_class constant_value() const;

  /// Euclidean size used for pivoting: |a| over ZZ, the p-adic valuation over
  /// ZLoc(p), 0 over fields. Undefined for zero.
  mpz_class euclidean_norm() const;
  /// a = q*b + r with r == 0 or norm(r) < norm(b). Euclidean rings and fields.
  std::pair<Scalar, Scalar> div_rem(const Scalar& b) const;
  /// Exact division; throws NonUnit when b does not divide this element.
  Scalar exact_div(const Scalar& b) const;
  /// Splits a = unit * normal with normal = |a| (ZZ), p^v (ZLoc) or 1 (fields).
  std::pair<Scalar, Scalar> unit_normal() const;

  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b);
  Scalar& operator-=(const Scalar& b);
  Scalar& operator*=(const Scalar& b);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  Scalar(Ring ring, Payload value) : ring_(std::move(ring)), value_(std::move(value)) {}
  void normalize();
  void require_same_ring(const Scalar& b) const;

  Ring ring_;
  Payload value_;
};

enum class ArithOp { Add, Mul, Neg };

/// Ring operation dispatch; `b` is ignored for Neg.
Scalar arith(ArithOp op, const Scalar& a, const Scalar& b);
bool is_unit(const Scalar& a);
Scalar inverse(const Scalar& a);

/// Image of `a` under one of the supported ring maps
/// (ZZ->QQ, ZZ->GF(p), ZZ->ZLoc(p), ZLoc(p)->QQ, ZLoc(p)->GF(p), identity).
Scalar map_scalar(const Scalar& a, const Ring& target);
bool is_supported_ring_map(const Ring& source, const Ring& target);

/// Monomials of total degree `degree` in `nvars` variables, in descending lex order.
std::vector<Exponents> monomials_of_degree(std::size_t nvars, int degree);

}  // namespace symchain
