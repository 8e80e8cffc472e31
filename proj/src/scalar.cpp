#include "symchain/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace symchain {

// ---------------------------------------------------------------- Ring

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Ring Ring::integers() {
  static const Ring ring(std::make_shared<const Impl>(Impl{Kind::Integers, 0, {}}));
  return ring;
}

Ring Ring::rationals() {
  static const Ring ring(std::make_shared<const Impl>(Impl{Kind::Rationals, 0, {}}));
  return ring;
}

Ring Ring::prime_field(long p) {
  if (!is_prime(p)) throw Error("GF(" + std::to_string(p) + "): modulus is not prime");
  return Ring(std::make_shared<const Impl>(Impl{Kind::PrimeField, p, {}}));
}

Ring Ring::localized(long p) {
  if (!is_prime(p)) throw Error("ZLoc(" + std::to_string(p) + "): not a prime");
  return Ring(std::make_shared<const Impl>(Impl{Kind::Localized, p, {}}));
}

Ring Ring::graded(std::vector<std::string> vars) {
  if (vars.empty()) throw Error("graded ring needs at least one variable");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& v = vars[i];
    bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_');
    for (char c : v) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) throw Error("invalid variable name '" + v + "'");
    for (std::size_t j = 0; j < i; ++j) {
      if (vars[j] == v) throw Error("duplicate variable name '" + v + "'");
    }
  }
  return Ring(std::make_shared<const Impl>(Impl{Kind::Graded, 0, std::move(vars)}));
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

long parse_modulus(const std::string& text, std::size_t open) {
  if (text.back() != ')') throw Error("malformed ring descriptor '" + text + "'");
  std::string inner = trim(std::string_view(text).substr(open + 1, text.size() - open - 2));
  if (inner.empty() || !std::all_of(inner.begin(), inner.end(), ::isdigit)) {
    throw Error("malformed ring descriptor '" + text + "'");
  }
  return std::stol(inner);
}

}  // namespace

Ring Ring::parse(std::string_view raw) {
  std::string text = trim(raw);
  if (text == "ZZ") return integers();
  if (text == "QQ") return rationals();
  if (text.rfind("GF(", 0) == 0) return prime_field(parse_modulus(text, 2));
  if (text.rfind("ZLoc(", 0) == 0) return localized(parse_modulus(text, 4));
  if (text.rfind("QQ[", 0) == 0 && text.back() == ']') {
    std::vector<std::string> vars;
    std::stringstream ss(text.substr(3, text.size() - 4));
    std::string item;
    while (std::getline(ss, item, ',')) vars.push_back(trim(item));
    return graded(std::move(vars));
  }
  throw Error("unknown ring descriptor '" + text + "'");
}

std::string Ring::name() const {
  switch (kind()) {
    case Kind::Integers:
      return "ZZ";
    case Kind::Rationals:
      return "QQ";
    case Kind::PrimeField:
      return "GF(" + std::to_string(prime()) + ")";
    case Kind::Localized:
      return "ZLoc(" + std::to_string(prime()) + ")";
    case Kind::Graded: {
      std::string s = "QQ[";
      for (std::size_t i = 0; i < variables().size(); ++i) {
        if (i) s += ",";
        s += variables()[i];
      }
      return s + "]";
    }
  }
  return "?";
}

bool operator==(const Ring& a, const Ring& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->kind == b.impl_->kind && a.impl_->prime == b.impl_->prime &&
         a.impl_->vars == b.impl_->vars;
}

bool two_is_unit(const Ring& ring) {
  switch (ring.kind()) {
    case Ring::Kind::Integers:
      return false;
    case Ring::Kind::PrimeField:
    case Ring::Kind::Localized:
      return ring.prime() != 2;
    case Ring::Kind::Rationals:
    case Ring::Kind::Graded:
      return true;
  }
  return false;
}

// ---------------------------------------------------------------- Scalar

namespace {

bool divisible(const mpz_class& a, long p) { return mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(p)) != 0; }

unsigned valuation(mpz_class a, long p) {
  unsigned v = 0;
  if (a == 0) return 0;
  while (divisible(a, p)) {
    a /= p;
    ++v;
  }
  return v;
}

int total_degree(const Exponents& e) { return static_cast<int>(std::accumulate(e.begin(), e.end(), 0U)); }

mpz_class mod_inverse(const mpz_class& a, long p) {
  mpz_class r;
  mpz_class m = p;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw NonUnit(a.get_str() + " is not invertible modulo " + std::to_string(p));
  }
  return r;
}

}  // namespace

Scalar::Scalar(Ring ring) : ring_(std::move(ring)) {
  switch (ring_.kind()) {
    case Ring::Kind::Integers:
    case Ring::Kind::PrimeField:
      value_ = mpz_class(0);
      break;
    case Ring::Kind::Rationals:
    case Ring::Kind::Localized:
      value_ = mpq_class(0);
      break;
    case Ring::Kind::Graded:
      value_ = Terms{};
      break;
  }
}

Scalar::Scalar(Ring ring, long value) : Scalar(std::move(ring), mpz_class(value)) {}

Scalar::Scalar(Ring ring, const mpz_class& value) : Scalar(std::move(ring), mpq_class(value)) {}

Scalar::Scalar(Ring ring, const mpq_class& value) : ring_(std::move(ring)) {
  mpq_class q = value;
  q.canonicalize();
  switch (ring_.kind()) {
    case Ring::Kind::Integers:
      if (q.get_den() != 1) throw NonUnit("denominator " + q.get_den().get_str() + " is not a unit in ZZ");
      value_ = q.get_num();
      break;
    case Ring::Kind::PrimeField: {
      mpz_class den = mod_inverse(q.get_den(), ring_.prime());
      value_ = mpz_class(q.get_num() * den);
      break;
    }
    case Ring::Kind::Rationals:
      value_ = q;
      break;
    case Ring::Kind::Localized:
      if (divisible(q.get_den(), ring_.prime())) {
        throw NonUnit("denominator " + q.get_den().get_str() + " is not a unit in " + ring_.name());
      }
      value_ = q;
      break;
    case Ring::Kind::Graded: {
      Terms t;
      if (q != 0) t.emplace(Exponents(ring_.num_variables(), 0), q);
      value_ = std::move(t);
      break;
    }
  }
  normalize();
}

Scalar Scalar::from_terms(Ring ring, Terms terms) {
  if (!ring.is_graded()) throw UnsupportedRing("polynomial terms over non-graded ring " + ring.name());
  for (const auto& [e, c] : terms) {
    if (e.size() != ring.num_variables()) throw DimensionMismatch("exponent vector length mismatch");
  }
  Scalar s(std::move(ring), Payload(std::move(terms)));
  s.normalize();
  return s;
}

Scalar Scalar::variable(const Ring& ring, std::size_t index) {
  if (!ring.is_graded() || index >= ring.num_variables()) throw Error("no such variable");
  Exponents e(ring.num_variables(), 0);
  e[index] = 1;
  return from_terms(ring, Terms{{e, mpq_class(1)}});
}

void Scalar::normalize() {
  switch (ring_.kind()) {
    case Ring::Kind::Integers:
      break;
    case Ring::Kind::PrimeField: {
      auto& v = std::get<mpz_class>(value_);
      mpz_class m = ring_.prime();
      mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
      break;
    }
    case Ring::Kind::Rationals:
    case Ring::Kind::Localized:
      std::get<mpq_class>(value_).canonicalize();
      break;
    case Ring::Kind::Graded: {
      auto& t = std::get<Terms>(value_);
      for (auto it = t.begin(); it != t.end();) {
        it->second.canonicalize();
        if (it->second == 0) {
          it = t.erase(it);
        } else {
          ++it;
        }
      }
      break;
    }
  }
}

void Scalar::require_same_ring(const Scalar& b) const {
  if (ring_ != b.ring_) throw RingMismatch("ring mismatch: " + ring_.name() + " vs " + b.ring_.name());
}

bool Scalar::is_zero() const {
  return std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Terms>) {
          return v.empty();
        } else {
          return v == 0;
        }
      },
      value_);
}

bool Scalar::is_one() const { return *this == one(ring_); }

bool Scalar::is_constant() const {
  if (!ring_.is_graded()) return true;
  const auto& t = std::get<Terms>(value_);
  return t.empty() || (t.size() == 1 && total_degree(t.begin()->first) == 0);
}

mpq_class Scalar::constant_value() const {
  if (!is_constant()) throw Error("not a constant: " + to_string());
  switch (ring_.kind()) {
    case Ring::Kind::Integers:
    case Ring::Kind::PrimeField:
      return mpq_class(std::get<mpz_class>(value_));
    case Ring::Kind::Rationals:
    case Ring::Kind::Localized:
      return std::get<mpq_class>(value_);
    case Ring::Kind::Graded: {
      const auto& t = std::get<Terms>(value_);
      return t.empty() ? mpq_class(0) : t.begin()->second;
    }
  }
  return 0;
}

bool Scalar::is_unit() const {
  if (is_zero()) return false;
  switch (ring_.kind()) {
    case Ring::Kind::Integers: {
      const auto& v = std::get<mpz_class>(value_);
      return v == 1 || v == -1;
    }
    case Ring::Kind::Rationals:
    case Ring::Kind::PrimeField:
      return true;
    case Ring::Kind::Localized:
      return !divisible(std::get<mpq_class>(value_).get_num(), ring_.prime());
    case Ring::Kind::Graded:
      return is_constant();
  }
  return false;
}

Scalar Scalar::inverse() const {
  if (!is_unit()) throw NonUnit(to_string() + " is not a unit in " + ring_.name());
  switch (ring_.kind()) {
    case Ring::Kind::Integers:
      return *this;
    case Ring::Kind::PrimeField:
      return Scalar(ring_, mod_inverse(std::get<mpz_class>(value_), ring_.prime()));
    case Ring::Kind::Rationals:
    case Ring::Kind::Localized:
      return Scalar(ring_, mpq_class(1 / std::get<mpq_class>(value_)));
    case Ring::Kind::Graded:
      return Scalar(ring_, mpq_class(1 / constant_value()));
  }
  return *this;
}

bool Scalar::is_homogeneous() const {
  if (!ring_.is_graded()) return true;
  const auto& t = std::get<Terms>(value_);
  if (t.empty()) return true;
  int d = total_degree(t.begin()->first);
  return std::all_of(t.begin(), t.end(), [d](const auto& kv) { return total_degree(kv.first) == d; });
}

int Scalar::degree() const {
  if (!ring_.is_graded() || is_zero()) return 0;
  if (!is_homogeneous()) throw Error("degree of a non-homogeneous polynomial: " + to_string());
  return total_degree(std::get<Terms>(value_).begin()->first);
}

mpz_class Scalar::euclidean_norm() const {
  switch (ring_.kind()) {
    case Ring::Kind::Integers:
      return abs(std::get<mpz_class>(value_));
    case Ring::Kind::Localized:
      return valuation(std::get<mpq_class>(value_).get_num(), ring_.prime());
    case Ring::Kind::Rationals:
    case Ring::Kind::PrimeField:
      return 0;
    case Ring::Kind::Graded:
      break;
  }
  throw UnsupportedRing("no Euclidean structure on " + ring_.name());
}

std::pair<Scalar, Scalar> Scalar::div_rem(const Scalar& b) const {
  require_same_ring(b);
  if (b.is_zero()) throw Error("division by zero");
  switch (ring_.kind()) {
    case Ring::Kind::Integers: {
      mpz_class q, r;
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), std::get<mpz_class>(value_).get_mpz_t(),
                  std::get<mpz_class>(b.value_).get_mpz_t());
      return {Scalar(ring_, q), Scalar(ring_, r)};
    }
    case Ring::Kind::Localized:
      if (is_zero() || euclidean_norm() >= b.euclidean_norm()) {
        return {Scalar(ring_, mpq_class(std::get<mpq_class>(value_) / std::get<mpq_class>(b.value_))), zero(ring_)};
      }
      return {zero(ring_), *this};
    case Ring::Kind::Rationals:
    case Ring::Kind::PrimeField:
      return {*this * b.inverse(), zero(ring_)};
    case Ring::Kind::Graded:
      break;
  }
  throw UnsupportedRing("no division with remainder over " + ring_.name());
}

Scalar Scalar::exact_div(const Scalar& b) const {
  if (b.is_unit()) return *this * b.inverse();
  auto [q, r] = div_rem(b);
  if (!r.is_zero()) throw NonUnit(b.to_string() + " does not divide " + to_string());
  return q;
}

std::pair<Scalar, Scalar> Scalar::unit_normal() const {
  if (is_zero()) return {one(ring_), *this};
  switch (ring_.kind()) {
    case Ring::Kind::Integers: {
      const auto& v = std::get<mpz_class>(value_);
      return {Scalar(ring_, v < 0 ? -1L : 1L), Scalar(ring_, mpz_class(abs(v)))};
    }
    case Ring::Kind::Localized: {
      mpz_class pv;
      mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(ring_.prime()),
                    valuation(std::get<mpq_class>(value_).get_num(), ring_.prime()));
      Scalar normal(ring_, pv);
      return {Scalar(ring_, mpq_class(std::get<mpq_class>(value_) / mpq_class(pv))), normal};
    }
    case Ring::Kind::Rationals:
    case Ring::Kind::PrimeField:
      return {*this, one(ring_)};
    case Ring::Kind::Graded:
      break;
  }
  throw UnsupportedRing("no unit normalization over " + ring_.name());
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  std::visit(
      [](auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Terms>) {
          for (auto& kv : v) kv.second = -kv.second;
        } else {
          v = -v;
        }
      },
      r.value_);
  r.normalize();
  return r;
}

Scalar& Scalar::operator+=(const Scalar& b) {
  require_same_ring(b);
  switch (ring_.kind()) {
    case Ring::Kind::Integers:
    case Ring::Kind::PrimeField:
      std::get<mpz_class>(value_) += std::get<mpz_class>(b.value_);
      break;
    case Ring::Kind::Rationals:
    case Ring::Kind::Localized:
      std::get<mpq_class>(value_) += std::get<mpq_class>(b.value_);
      break;
    case Ring::Kind::Graded: {
      auto& t = std::get<Terms>(value_);
      for (const auto& [e, c] : std::get<Terms>(b.value_)) t[e] += c;
      break;
    }
  }
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& b) { return *this += -b; }

Scalar& Scalar::operator*=(const Scalar& b) {
  require_same_ring(b);
  switch (ring_.kind()) {
    case Ring::Kind::Integers:
    case Ring::Kind::PrimeField:
      std::get<mpz_class>(value_) *= std::get<mpz_class>(b.value_);
      break;
    case Ring::Kind::Rationals:
    case Ring::Kind::Localized:
      std::get<mpq_class>(value_) *= std::get<mpq_class>(b.value_);
      break;
    case Ring::Kind::Graded: {
      const auto& lhs = std::get<Terms>(value_);
      const auto& rhs = std::get<Terms>(b.value_);
      Terms out;
      for (const auto& [ea, ca] : lhs) {
        for (const auto& [eb, cb] : rhs) {
          Exponents e(ea.size());
          for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
          out[e] += ca * cb;
        }
      }
      value_ = std::move(out);
      break;
    }
  }
  normalize();
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) { return a.ring_ == b.ring_ && a.value_ == b.value_; }

// ---------------------------------------------------------------- text form

namespace {

std::string monomial_string(const Ring& ring, const Exponents& e) {
  std::string s;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring.variables()[k];
    if (e[k] > 1) s += "^" + std::to_string(e[k]);
  }
  return s;
}

// Descending by (total degree, lex).
bool term_precedes(const Exponents& a, const Exponents& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

}  // namespace

std::string Scalar::to_string() const {
  switch (ring_.kind()) {
    case Ring::Kind::Integers:
    case Ring::Kind::PrimeField:
      return std::get<mpz_class>(value_).get_str();
    case Ring::Kind::Rationals:
    case Ring::Kind::Localized:
      return std::get<mpq_class>(value_).get_str();
    case Ring::Kind::Graded:
      break;
  }
  const auto& t = std::get<Terms>(value_);
  if (t.empty()) return "0";
  std::vector<const Terms::value_type*> order;
  for (const auto& kv : t) order.push_back(&kv);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return term_precedes(a->first, b->first); });
  std::string out;
  bool first = true;
  for (const auto* kv : order) {
    mpq_class c = kv->second;
    bool negative = c < 0;
    if (negative) c = -c;
    std::string mono = monomial_string(ring_, kv->first);
    std::string body;
    if (mono.empty()) {
      body = c.get_str();
    } else if (c == 1) {
      body = mono;
    } else {
      body = c.get_str() + "*" + mono;
    }
    if (first) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
    first = false;
  }
  return out;
}

namespace {

class ScalarParser {
 public:
  ScalarParser(const Ring& ring, std::string_view text) : ring_(ring), text_(text) {}

  Scalar run() {
    skip_ws();
    if (at_end()) fail("empty scalar");
    Scalar acc = Scalar::zero(ring_);
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Scalar term = parse_term();
      acc += sign < 0 ? -term : term;
      first = false;
      skip_ws();
      if (at_end()) break;
    }
    return acc;
  }

 private:
  Scalar parse_term() {
    Scalar value = parse_factor();
    while (true) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      skip_ws();
      value *= parse_factor();
    }
    return value;
  }

  Scalar parse_factor() {
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      mpz_class num(read_digits());
      mpz_class den = 1;
      if (peek() == '/') {
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
        den = mpz_class(read_digits());
        if (den == 0) fail("zero denominator");
      }
      try {
        return Scalar(ring_, mpq_class(num, den));
      } catch (const NonUnit& e) {
        fail(e.what(), true);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      const auto& vars = ring_.variables();
      auto it = std::find(vars.begin(), vars.end(), name);
      if (!ring_.is_graded() || it == vars.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'", true);
      }
      Scalar v = Scalar::variable(ring_, static_cast<std::size_t>(it - vars.begin()));
      if (peek() == '^') {
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent after '^'");
        unsigned long e = std::stoul(read_digits());
        Scalar p = Scalar::one(ring_);
        for (unsigned long k = 0; k < e; ++k) p *= v;
        return p;
      }
      return v;
    }
    if (at_end()) fail("unexpected end of scalar");
    fail(std::string("unexpected character '") + peek() + "'");
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& what, bool foreign = false) const {
    std::string msg = "bad scalar '" + std::string(text_) + "': " + what;
    if (foreign) throw ForeignElement(msg, 1, pos_ + 1);
    throw ParseError(msg, 1, pos_ + 1);
  }

  const Ring& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(const Ring& ring, std::string_view text) { return ScalarParser(ring, text).run(); }

// ---------------------------------------------------------------- free functions

Scalar arith(ArithOp op, const Scalar& a, const Scalar& b) {
  switch (op) {
    case ArithOp::Add:
      return a + b;
    case ArithOp::Mul:
      return a * b;
    case ArithOp::Neg:
      return -a;
  }
  return a;
}

bool is_unit(const Scalar& a) { return a.is_unit(); }

Scalar inverse(const Scalar& a) { return a.inverse(); }

bool is_supported_ring_map(const Ring& source, const Ring& target) {
  using K = Ring::Kind;
  if (source == target) return true;
  if (source.kind() == K::Integers) {
    return target.kind() == K::Rationals || target.kind() == K::PrimeField || target.kind() == K::Localized;
  }
  if (source.kind() == K::Localized) {
    return target.kind() == K::Rationals || (target.kind() == K::PrimeField && target.prime() == source.prime());
  }
  return false;
}

Scalar map_scalar(const Scalar& a, const Ring& target) {
  if (a.ring() == target) return a;
  if (!is_supported_ring_map(a.ring(), target)) {
    throw UnsupportedRing("unsupported ring map " + a.ring().name() + " -> " + target.name());
  }
  mpq_class q = a.constant_value();
  if (target.kind() == Ring::Kind::PrimeField && a.ring().kind() == Ring::Kind::Localized &&
      divisible(q.get_den(), target.prime())) {
    throw NonUnit("denominator divisible by " + std::to_string(target.prime()));
  }
  return Scalar(target, q);
}

std::vector<Exponents> monomials_of_degree(std::size_t nvars, int degree) {
  std::vector<Exponents> out;
  if (degree < 0 || nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponents e(nvars, 0);
  // Descending lex: the first variable takes as much degree as possible first.
  auto rec = [&](auto&& self, std::size_t k, unsigned left) -> void {
    if (k + 1 == nvars) {
      e[k] = left;
      out.push_back(e);
      return;
    }
    for (int a = static_cast<int>(left); a >= 0; --a) {
      e[k] = static_cast<unsigned>(a);
      self(self, k + 1, left - static_cast<unsigned>(a));
    }
  };
  rec(rec, 0, static_cast<unsigned>(degree));
  return out;
}

}  // namespace symchain
