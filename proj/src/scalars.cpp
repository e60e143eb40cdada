#include "gda/scalars.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "gda/error.hpp"

namespace gda {

namespace {

using Poly = std::vector<mpq_class>;  // constant term first

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Quotient and remainder of a by nonzero b over Q.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  trim(a);
  Poly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, mpq_class(0));
  const mpq_class& lead = b.back();
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (a[i] == 0) continue;
    mpq_class c = a[i] / lead;
    q[i - b.size() + 1] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] -= c * b[j];
  }
  trim(a);
  return {q, a};
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

std::uint32_t euler_phi(std::uint32_t n) {
  std::uint32_t r = n;
  for (auto q : prime_factors(n)) r = r / q * (q - 1);
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

using PhiCache = std::map<std::uint32_t, std::vector<mpz_class>>;

// Caller holds the cache lock.
const std::vector<mpz_class>& cyclotomic_locked(PhiCache& cache, std::uint32_t n) {
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  Poly num(n + 1, mpq_class(0));
  num[0] = -1;
  num[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d) continue;
    const auto& phi_d = cyclotomic_locked(cache, d);
    num = poly_divmod(num, Poly(phi_d.begin(), phi_d.end())).first;
  }
  std::vector<mpz_class> coeffs;
  for (const auto& c : num) coeffs.push_back(c.get_num());
  return cache.emplace(n, std::move(coeffs)).first->second;
}

}  // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(std::uint32_t n) {
  static std::mutex mutex;
  static PhiCache cache;
  std::lock_guard lock(mutex);
  return cyclotomic_locked(cache, n);
}

// ---------------------------------------------------------------------------
// CoefficientField

CoefficientField CoefficientField::prime(std::uint64_t p) {
  if (p > kMaxPrime || !is_prime(p))
    raise(ErrorCode::ValidationError, "field characteristic must be a prime <= 10^6, got " + std::to_string(p));
  return CoefficientField(Kind::Prime, p);
}

CoefficientField CoefficientField::cyclotomic(std::uint32_t n) {
  if (n < 1 || n > kMaxConductor)
    raise(ErrorCode::ValidationError, "cyclotomic conductor must lie in [1, 120], got " + std::to_string(n));
  cyclotomic_polynomial(n);
  return CoefficientField(Kind::Cyclotomic, n);
}

std::size_t CoefficientField::degree() const {
  return kind_ == Kind::Prime ? 1 : euler_phi(static_cast<std::uint32_t>(modulus_));
}

std::optional<std::uint64_t> CoefficientField::unit_group_order() const {
  if (kind_ == Kind::Prime) return modulus_ - 1;
  return std::nullopt;
}

std::uint64_t CoefficientField::roots_of_unity_order() const {
  if (kind_ == Kind::Prime) return modulus_ - 1;
  return modulus_ % 2 == 0 ? modulus_ : 2 * modulus_;
}

FieldElement CoefficientField::zero() const {
  FieldElement x(*this);
  if (kind_ == Kind::Cyclotomic) x.coeffs_.assign(degree(), mpq_class(0));
  return x;
}

FieldElement CoefficientField::one() const { return from_integer(1); }

FieldElement CoefficientField::from_integer(long value) const {
  return from_rational(mpq_class(value));
}

FieldElement CoefficientField::from_rational(const mpq_class& value) const {
  FieldElement x = zero();
  if (kind_ == Kind::Cyclotomic) {
    x.coeffs_[0] = value;
    return x;
  }
  mpz_class num = value.get_num() % static_cast<unsigned long>(modulus_);
  mpz_class den = value.get_den() % static_cast<unsigned long>(modulus_);
  if (den == 0) raise(ErrorCode::ValidationError, "denominator divisible by the characteristic");
  if (num < 0) num += static_cast<unsigned long>(modulus_);
  std::uint64_t n = num.get_ui(), d = den.get_ui();
  x.residue_ = mulmod(n, powmod(d, modulus_ - 2, modulus_), modulus_);
  return x;
}

FieldElement CoefficientField::zeta() const {
  if (kind_ != Kind::Cyclotomic) raise(ErrorCode::ValidationError, "zeta is only defined for cyclotomic fields");
  return make_cyclotomic_element(*this, Poly{mpq_class(0), mpq_class(1)});
}

FieldElement CoefficientField::primitive_root() const {
  if (kind_ != Kind::Prime)
    raise(ErrorCode::InfiniteCoefficientField, "primitive roots exist only for finite fields");
  const std::uint64_t p = modulus_;
  if (p == 2) return one();
  auto qs = prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : qs)
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return from_integer(static_cast<long>(g));
  }
  raise(ErrorCode::ValidationError, "no primitive root found");
}

std::string CoefficientField::describe() const {
  if (kind_ == Kind::Prime) return "GF(" + std::to_string(modulus_) + ")";
  return "Q(zeta_" + std::to_string(modulus_) + ")";
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement make_cyclotomic_element(const CoefficientField& f, Poly poly) {
  const auto& phi = cyclotomic_polynomial(static_cast<std::uint32_t>(f.modulus()));
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > deg;) {
    if (poly[i] == 0) continue;
    mpq_class c = poly[i];
    for (std::size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * mpq_class(phi[j]);
  }
  poly.resize(deg, mpq_class(0));
  FieldElement x(f);
  x.coeffs_ = std::move(poly);
  return x;
}

bool FieldElement::is_zero() const {
  if (field_.kind() == CoefficientField::Kind::Prime) return residue_ == 0;
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool FieldElement::is_one() const { return *this == field_.one(); }

FieldElement FieldElement::operator+(const FieldElement& o) const {
  FieldElement r(field_);
  if (field_.kind() == CoefficientField::Kind::Prime) {
    r.residue_ = (residue_ + o.residue_) % field_.modulus();
  } else {
    r.coeffs_ = coeffs_;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  }
  return r;
}

FieldElement FieldElement::operator-() const {
  FieldElement r(field_);
  if (field_.kind() == CoefficientField::Kind::Prime) {
    r.residue_ = residue_ == 0 ? 0 : field_.modulus() - residue_;
  } else {
    r.coeffs_ = coeffs_;
    for (auto& c : r.coeffs_) c = -c;
  }
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  if (field_.kind() == CoefficientField::Kind::Prime) {
    FieldElement r(field_);
    r.residue_ = mulmod(residue_, o.residue_, field_.modulus());
    return r;
  }
  return make_cyclotomic_element(field_, poly_mul(coeffs_, o.coeffs_));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) raise(ErrorCode::ZeroElement, "inverse of zero");
  if (field_.kind() == CoefficientField::Kind::Prime) {
    FieldElement r(field_);
    r.residue_ = powmod(residue_, field_.modulus() - 2, field_.modulus());
    return r;
  }
  const auto& phi = cyclotomic_polynomial(static_cast<std::uint32_t>(field_.modulus()));
  Poly r0(phi.begin(), phi.end()), r1 = coeffs_;
  trim(r1);
  Poly s0, s1{mpq_class(1)};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly next = poly_sub(s0, poly_mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(next);
  }
  // r0 is a nonzero constant because Phi_N is irreducible.
  for (auto& c : s0) c /= r0[0];
  return make_cyclotomic_element(field_, std::move(s0));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement base = *this, r = field_.one();
  auto k = static_cast<std::uint64_t>(e);
  while (k) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (!(field_ == o.field_)) return false;
  if (field_.kind() == CoefficientField::Kind::Prime) return residue_ == o.residue_;
  return coeffs_ == o.coeffs_;
}

std::strong_ordering FieldElement::operator<=>(const FieldElement& o) const {
  if (field_.kind() == CoefficientField::Kind::Prime) return residue_ <=> o.residue_;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    int c = cmp(coeffs_[i], o.coeffs_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string FieldElement::to_string() const {
  if (field_.kind() == CoefficientField::Kind::Prime) return std::to_string(residue_);
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const mpq_class& c = coeffs_[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    mpq_class mag = abs(c);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (i == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += i == 1 ? "z" : "z^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Literal parsing

namespace {

class LiteralParser {
 public:
  LiteralParser(const CoefficientField& f, std::string_view text) : field_(f), text_(text) {}

  FieldElement parse() {
    skip_ws();
    if (at_end()) fail("empty literal");
    if (field_.kind() == CoefficientField::Kind::Prime) {
      bool negative = accept('-');
      if (!negative) accept('+');
      skip_ws();
      mpz_class v = digits();
      skip_ws();
      if (!at_end()) fail("unexpected character");
      FieldElement x = field_.from_rational(mpq_class(v));
      return negative ? -x : x;
    }
    Poly poly;
    bool first = true;
    for (;;) {
      skip_ws();
      bool negative = false;
      if (accept('-'))
        negative = true;
      else if (!accept('+') && !first)
        fail("expected '+' or '-'");
      skip_ws();
      auto [coeff, power] = term();
      if (negative) coeff = -coeff;
      if (poly.size() <= power) poly.resize(power + 1, mpq_class(0));
      poly[power] += coeff;
      first = false;
      skip_ws();
      if (at_end()) break;
    }
    return make_cyclotomic_element(field_, std::move(poly));
  }

 private:
  std::pair<mpq_class, std::size_t> term() {
    mpq_class coeff = 1;
    if (peek_digit()) {
      mpz_class num = digits();
      mpz_class den = 1;
      skip_ws();
      if (accept('/')) {
        skip_ws();
        den = digits();
        if (den == 0) fail("zero denominator");
      }
      coeff = mpq_class(num, den);
      coeff.canonicalize();
      skip_ws();
      if (!accept('*')) return {coeff, 0};
      skip_ws();
    }
    if (!accept('z')) fail("expected 'z'");
    skip_ws();
    std::size_t power = 1;
    if (accept('^')) {
      skip_ws();
      mpz_class p = digits();
      if (p > 10000) fail("exponent too large");
      power = p.get_ui();
    }
    return {coeff, power};
  }

  mpz_class digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  bool peek_digit() const { return !at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }
  bool at_end() const { return pos_ >= text_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    raise(ErrorCode::ParseError, "field literal \"" + std::string(text_) + "\": " + what + " at position " +
                                     std::to_string(pos_));
  }

  const CoefficientField& field_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElement parse_field_element(const CoefficientField& f, std::string_view text) {
  return LiteralParser(f, text).parse();
}

// ---------------------------------------------------------------------------
// Roots of unity

std::vector<FieldElement> RootsOfUnity::elements() const {
  std::vector<FieldElement> out;
  FieldElement x = generator.field().one();
  for (std::uint64_t i = 0; i < order; ++i) {
    out.push_back(x);
    x *= generator;
  }
  return out;
}

bool RootsOfUnity::contains(const FieldElement& x) const {
  return !x.is_zero() && x.pow(static_cast<std::int64_t>(order)).is_one();
}

RootsOfUnity mu(const CoefficientField& f, std::uint64_t d) {
  if (d == 0) raise(ErrorCode::ValidationError, "mu_d requires d >= 1");
  const std::uint64_t total = f.roots_of_unity_order();
  const std::uint64_t order = std::gcd(d, total);
  FieldElement full_generator = f.kind() == CoefficientField::Kind::Prime
                                    ? f.primitive_root()
                                    : (f.modulus() % 2 == 0 ? f.zeta() : -f.zeta());
  return RootsOfUnity{order, full_generator.pow(static_cast<std::int64_t>(total / order))};
}

std::optional<std::uint64_t> order_of_unit(const FieldElement& x) {
  if (x.is_zero()) raise(ErrorCode::ZeroElement, "order of zero");
  std::uint64_t t = x.field().roots_of_unity_order();
  if (!x.pow(static_cast<std::int64_t>(t)).is_one()) return std::nullopt;
  for (auto q : prime_factors(t))
    while (t % q == 0 && x.pow(static_cast<std::int64_t>(t / q)).is_one()) t /= q;
  return t;
}

std::uint64_t discrete_log(const FieldElement& x) {
  const auto& f = x.field();
  if (!f.is_finite()) raise(ErrorCode::InfiniteCoefficientField, "discrete log needs a finite field");
  if (x.is_zero()) raise(ErrorCode::ZeroElement, "discrete log of zero");
  const std::uint64_t p = f.modulus(), n = p - 1;
  const std::uint64_t g = f.primitive_root().residue();
  const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::unordered_map<std::uint64_t, std::uint64_t> baby;
  std::uint64_t cur = 1;
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mulmod(cur, g, p);
  }
  const std::uint64_t giant = powmod(powmod(g, m, p), p - 2, p);
  std::uint64_t gamma = x.residue();
  for (std::uint64_t i = 0; i <= m; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) return (i * m + it->second) % n;
    gamma = mulmod(gamma, giant, p);
  }
  raise(ErrorCode::ValidationError, "discrete log failed");
}

}  // namespace gda
