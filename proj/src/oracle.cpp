#include "gda/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <limits>

#include "gda/dieudonne.hpp"
#include "gda/error.hpp"

namespace gda {

std::uint64_t default_budget() {
  const char* env = std::getenv("GDA_BUDGET");
  if (!env) return kDefaultBudget;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
  if (ec != std::errc() || *ptr != '\0' || v == 0) return kDefaultBudget;
  return v;
}

// ModRing

ModRing::ModRing(std::uint32_t p, std::size_t n) : p_(p), n_(n) {
  if (p < 2 || n == 0) raise(ErrorCode::ValidationError, "ModRing needs p >= 2 and n >= 1");
  unsigned __int128 capacity = 1;
  for (std::size_t i = 0; i < n * n; ++i) {
    capacity *= p;
    if (capacity > std::numeric_limits<std::uint64_t>::max())
      raise(ErrorCode::ValidationError, "p^(n^2) exceeds the 64-bit element key");
  }
}

std::uint32_t ModRing::mul(std::uint32_t x, std::uint32_t y) const {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % p_);
}

std::uint32_t ModRing::pow(std::uint32_t x, std::uint64_t k) const {
  std::uint32_t r = 1 % p_;
  for (; k; k >>= 1, x = mul(x, x))
    if (k & 1) r = mul(r, x);
  return r;
}

std::uint32_t ModRing::inv(std::uint32_t x) const {
  if (x % p_ == 0) raise(ErrorCode::ZeroElement, "zero has no inverse");
  return pow(x, p_ - 2);
}

ModMatrix ModRing::identity() const {
  ModMatrix m{std::vector<std::uint32_t>(n_ * n_, 0)};
  for (std::size_t i = 0; i < n_; ++i) m.a[i * n_ + i] = 1;
  return m;
}

ModMatrix ModRing::elementary(std::size_t i, std::size_t j, std::uint32_t x) const {
  ModMatrix m = identity();
  m.a[i * n_ + j] = x % p_;
  return m;
}

ModMatrix ModRing::diagonal(const std::vector<std::uint32_t>& d) const {
  ModMatrix m{std::vector<std::uint32_t>(n_ * n_, 0)};
  for (std::size_t i = 0; i < n_; ++i) m.a[i * n_ + i] = d[i] % p_;
  return m;
}

ModMatrix ModRing::multiply(const ModMatrix& x, const ModMatrix& y) const {
  ModMatrix r{std::vector<std::uint32_t>(n_ * n_, 0)};
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < n_; ++k) acc = (acc + static_cast<std::uint64_t>(x.a[i * n_ + k]) * y.a[k * n_ + j]) % p_;
      r.a[i * n_ + j] = static_cast<std::uint32_t>(acc);
    }
  return r;
}

ModMatrix ModRing::inverse(const ModMatrix& x) const {
  ModMatrix w = x, r = identity();
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t piv = c;
    while (piv < n_ && w.a[piv * n_ + c] == 0) ++piv;
    if (piv == n_) raise(ErrorCode::Singular, "matrix over GF(" + std::to_string(p_) + ") is singular");
    for (std::size_t k = 0; k < n_; ++k) {
      std::swap(w.a[c * n_ + k], w.a[piv * n_ + k]);
      std::swap(r.a[c * n_ + k], r.a[piv * n_ + k]);
    }
    const std::uint32_t s = inv(w.a[c * n_ + c]);
    for (std::size_t k = 0; k < n_; ++k) {
      w.a[c * n_ + k] = mul(w.a[c * n_ + k], s);
      r.a[c * n_ + k] = mul(r.a[c * n_ + k], s);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == c || w.a[i * n_ + c] == 0) continue;
      const std::uint32_t f = p_ - w.a[i * n_ + c];
      for (std::size_t k = 0; k < n_; ++k) {
        w.a[i * n_ + k] = (w.a[i * n_ + k] + mul(f, w.a[c * n_ + k])) % p_;
        r.a[i * n_ + k] = (r.a[i * n_ + k] + mul(f, r.a[c * n_ + k])) % p_;
      }
    }
  }
  return r;
}

ModMatrix ModRing::power(ModMatrix x, std::uint64_t k) const {
  ModMatrix r = identity();
  for (; k; k >>= 1, x = multiply(x, x))
    if (k & 1) r = multiply(r, x);
  return r;
}

ModMatrix ModRing::commutator(const ModMatrix& x, const ModMatrix& y) const {
  return multiply(multiply(x, y), multiply(inverse(x), inverse(y)));
}

std::uint32_t ModRing::block_det(const ModMatrix& x, std::size_t start, std::size_t r) const {
  std::vector<std::uint32_t> w(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) w[i * r + j] = x.a[(start + i) * n_ + start + j];
  std::uint32_t det = 1;
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t piv = c;
    while (piv < r && w[piv * r + c] == 0) ++piv;
    if (piv == r) return 0;
    if (piv != c) {
      for (std::size_t k = 0; k < r; ++k) std::swap(w[c * r + k], w[piv * r + k]);
      det = (p_ - det) % p_;
    }
    det = mul(det, w[c * r + c]);
    const std::uint32_t s = inv(w[c * r + c]);
    for (std::size_t i = c + 1; i < r; ++i) {
      const std::uint32_t f = p_ - mul(w[i * r + c], s);
      for (std::size_t k = c; k < r; ++k) w[i * r + k] = (w[i * r + k] + mul(f, w[c * r + k])) % p_;
    }
  }
  return det;
}

std::uint64_t ModRing::key(const ModMatrix& x) const {
  std::uint64_t k = 0;
  for (std::uint32_t v : x.a) k = k * p_ + v;
  return k;
}

// FiniteMatrixGroup

std::size_t FiniteMatrixGroup::find(const ModMatrix& x) const {
  auto it = index_.find(ring_.key(x));
  return it == index_.end() ? elements_.size() : it->second;
}

bool FiniteMatrixGroup::insert(const ModMatrix& x) {
  auto [it, added] = index_.emplace(ring_.key(x), static_cast<std::uint32_t>(elements_.size()));
  if (added) elements_.push_back(x);
  return added;
}

namespace {

constexpr std::size_t kChunk = 1 << 15;

FiniteMatrixGroup closure_impl(const ModRing& ring, const std::vector<ModMatrix>& gens, std::uint64_t budget,
                               bool parallel) {
  FiniteMatrixGroup g(ring);
  g.insert(ring.identity());
  std::vector<std::uint32_t> frontier{0}, next;
  const std::size_t ng = gens.size();
  std::vector<ModMatrix> prod;
  std::vector<char> fresh;
  while (!frontier.empty() && ng > 0) {
    next.clear();
    for (std::size_t base = 0; base < frontier.size(); base += kChunk) {
      const std::size_t count = std::min(kChunk, frontier.size() - base) * ng;
      prod.assign(count, ModMatrix{});
      fresh.assign(count, 0);
      const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static) if (parallel)
      for (std::ptrdiff_t t = 0; t < total; ++t) {
        const auto u = static_cast<std::size_t>(t);
        prod[u] = ring.multiply(g.elements()[frontier[base + u / ng]], gens[u % ng]);
        fresh[u] = !g.contains(prod[u]);
      }
      for (std::size_t u = 0; u < count; ++u) {
        if (!fresh[u] || !g.insert(prod[u])) continue;
        next.push_back(static_cast<std::uint32_t>(g.size() - 1));
        if (g.size() > budget)
          raise(ErrorCode::SizeBudgetExceeded, "closure exceeds the budget of " + std::to_string(budget) + " elements");
      }
    }
    std::swap(frontier, next);
  }
  return g;
}

}  // namespace

FiniteMatrixGroup closure_serial(const ModRing& ring, const std::vector<ModMatrix>& gens, std::uint64_t budget) {
  return closure_impl(ring, gens, budget, false);
}

FiniteMatrixGroup closure(const ModRing& ring, const std::vector<ModMatrix>& gens, std::uint64_t budget) {
  return closure_impl(ring, gens, budget, true);
}

bool same_elements(const FiniteMatrixGroup& a, const FiniteMatrixGroup& b) {
  if (a.size() != b.size()) return false;
  return std::all_of(a.elements().begin(), a.elements().end(), [&](const ModMatrix& x) { return b.contains(x); });
}

// Conversion

namespace {

const CoefficientField& finite_field(const ShiftedMatrixAlgebra& s) {
  const auto& f = s.algebra().field();
  if (!f.is_finite()) raise(ErrorCode::InfiniteCoefficientField, "the oracle needs a finite coefficient field, got " + f.describe());
  return f;
}

ModRing ring_of(const ShiftedMatrixAlgebra& s) {
  return ModRing(static_cast<std::uint32_t>(finite_field(s).modulus()), s.n());
}

// Reads a degree-0 matrix already in epsilon coordinates.
ModMatrix read_mod(const ModRing& ring, const GradedMatrix& b) {
  const std::size_t n = ring.n();
  ModMatrix m{std::vector<std::uint32_t>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& x = b.at(i, j);
      if (x.is_zero()) continue;
      auto u = x.as_homogeneous();
      if (!u || !is_zero(u->degree)) raise(ErrorCode::NotDegreeZero, "matrix is not homogeneous of degree 0");
      m.a[i * n + j] = static_cast<std::uint32_t>(u->coeff.residue());
    }
  return m;
}

}  // namespace

ModMatrix to_mod(const ShiftedMatrixAlgebra& s, const GradedMatrix& a) { return read_mod(ring_of(s), s.to_epsilon(a)); }

GradedMatrix from_mod(const ShiftedMatrixAlgebra& s, const ModMatrix& m) {
  const auto& f = finite_field(s);
  const std::size_t n = s.n();
  const GradeVector zero(s.algebra().ambient_rank(), 0);
  GradedMatrix b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m.a[i * n + j] != 0) b.at(i, j) = AlgebraElement(HomogeneousUnit{f.from_integer(m.a[i * n + j]), zero});
  return s.from_epsilon(b);
}

std::vector<ModMatrix> s0_generators(const ShiftedMatrixAlgebra& s) {
  const ModRing ring = ring_of(s);
  const auto g = static_cast<std::uint32_t>(s.algebra().field().primitive_root().residue());
  const auto& eps = s.epsilon_form();
  std::vector<ModMatrix> gens;
  for (std::size_t l = 0; l < eps.multiplicities.size(); ++l) {
    const std::size_t start = eps.block_start[l], r = eps.multiplicities[l];
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (i != j) gens.push_back(ring.elementary(start + i, start + j, 1));
    std::vector<std::uint32_t> d(s.n(), 1);
    d[start] = g;
    if (g != 1) gens.push_back(ring.diagonal(d));
  }
  return gens;
}

std::uint64_t s0_order(const ShiftedMatrixAlgebra& s) {
  const std::uint64_t p = finite_field(s).modulus();
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 total = 1;
  for (std::size_t r : s.epsilon_form().multiplicities) {
    unsigned __int128 pr = 1;
    for (std::size_t i = 0; i < r; ++i) {
      pr *= p;
      if (pr > kMax) return kMax;
    }
    unsigned __int128 pi = 1;
    for (std::size_t i = 0; i < r; ++i, pi *= p) {
      total *= (pr - pi);
      if (total > kMax) return kMax;
    }
  }
  return static_cast<std::uint64_t>(total);
}

namespace {

// A monomial generator of S_h^* in epsilon coordinates, with its conjugation
// action on S_0: (M A M^{-1})_{ij} = kappa_ij A_{rho(i) rho(j)}, kappa_ij = u_i u_j^{-1}.
struct Monomial {
  GradedMatrix m;
  GradedMatrix m_inv;
  std::vector<std::size_t> rho;
  std::vector<std::uint32_t> kappa;
};

struct Setup {
  ShiftedMatrixAlgebra eps;
  ModRing ring;
  std::vector<ModMatrix> s0;
  std::vector<ModMatrix> s0_inv;
  std::vector<Monomial> monomials;

  explicit Setup(const ShiftedMatrixAlgebra& s)
      : eps(s.epsilon_algebra()), ring(ring_of(s)), s0(s0_generators(s)) {
    for (const auto& x : s0) s0_inv.push_back(ring.inverse(x));
    const auto& E = eps.algebra();
    for (const auto& g : E.basis()) add(eps.scalar(E.monomial(g)));
    for (const auto& [sigma, lambda] : eps.gamma_s_star().witnesses) {
      if (E.gamma_e().contains(lambda)) continue;
      GradedMatrix m(eps.n());
      for (std::size_t i = 0; i < eps.n(); ++i)
        m.at(i, sigma(i)) = AlgebraElement(E.monomial(eps.entry_degree(lambda, i, sigma(i))));
      add(std::move(m));
    }
  }

  void add(GradedMatrix m) {
    const auto& E = eps.algebra();
    const std::size_t n = eps.n();
    Monomial mono;
    mono.rho.assign(n, 0);
    std::vector<std::optional<HomogeneousUnit>> u(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (auto h = m.at(i, j).as_homogeneous()) {
          mono.rho[i] = j;
          u[i] = h;
        }
    mono.kappa.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        HomogeneousUnit k = E.multiply(*u[i], E.invert_homogeneous(*u[j]));
        if (is_zero(k.degree)) mono.kappa[i * n + j] = static_cast<std::uint32_t>(k.coeff.residue());
      }
    mono.m_inv = eps.invert(m);
    mono.m = std::move(m);
    monomials.push_back(std::move(mono));
  }

  ModMatrix act(const Monomial& mono, const ModMatrix& a) const {
    const std::size_t n = ring.n();
    ModMatrix r{std::vector<std::uint32_t>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint32_t v = a.a[mono.rho[i] * n + mono.rho[j]];
        if (v == 0) continue;
        if (mono.kappa[i * n + j] == 0) raise(ErrorCode::NotDegreeZero, "monomial conjugation left S_0");
        r.a[i * n + j] = ring.mul(mono.kappa[i * n + j], v);
      }
    return r;
  }

  ModMatrix monomial_commutator(const Monomial& x, const Monomial& y) const {
    return read_mod(ring, eps.multiply(eps.multiply(x.m, y.m), eps.multiply(x.m_inv, y.m_inv)));
  }

  // Commutators of a generating set of S_h^*, identity dropped, in a fixed order.
  std::vector<ModMatrix> commutator_seeds() const {
    std::vector<ModMatrix> seeds;
    for (std::size_t a = 0; a < s0.size(); ++a)
      for (std::size_t b = a + 1; b < s0.size(); ++b) seeds.push_back(ring.commutator(s0[a], s0[b]));
    for (const auto& mono : monomials)
      for (std::size_t a = 0; a < s0.size(); ++a) seeds.push_back(ring.multiply(act(mono, s0[a]), s0_inv[a]));
    for (std::size_t x = 0; x < monomials.size(); ++x)
      for (std::size_t y = x + 1; y < monomials.size(); ++y) seeds.push_back(monomial_commutator(monomials[x], monomials[y]));
    const ModMatrix id = ring.identity();
    std::vector<ModMatrix> out;
    for (auto& c : seeds)
      if (!(c == id) && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
    return out;
  }

  FiniteMatrixGroup close(const std::vector<ModMatrix>& gens, const OracleOptions& opt) const {
    return opt.parallel ? closure(ring, gens, opt.budget) : closure_serial(ring, gens, opt.budget);
  }

  // Smallest subgroup containing the seeds and normalized by S_h^*.
  FiniteMatrixGroup normal_closure(std::vector<ModMatrix> gens, const OracleOptions& opt) const {
    FiniteMatrixGroup group = close(gens, opt);
    for (std::size_t h = 0; h < gens.size(); ++h) {
      std::vector<ModMatrix> conj;
      for (std::size_t a = 0; a < s0.size(); ++a) conj.push_back(ring.multiply(ring.multiply(s0[a], gens[h]), s0_inv[a]));
      for (const auto& mono : monomials) conj.push_back(act(mono, gens[h]));
      for (auto& c : conj)
        if (!group.contains(c)) {
          gens.push_back(std::move(c));
          group = close(gens, opt);
        }
    }
    return group;
  }

  std::uint32_t nrd_s(const ModMatrix& a, std::uint64_t s_index) const {
    const auto& form = eps.epsilon_form();
    std::uint32_t d = 1;
    for (std::size_t l = 0; l < form.multiplicities.size(); ++l)
      d = ring.mul(d, ring.block_det(a, form.block_start[l], form.multiplicities[l]));
    return ring.pow(d, s_index);
  }
};

std::uint64_t mu_order(const ShiftedMatrixAlgebra& s, std::uint64_t d) { return mu(s.algebra().field(), d).order; }

GroupDescription sk_oracle_full(const ShiftedMatrixAlgebra& s, const Setup& setup, const OracleOptions& opt) {
  const auto& ring = setup.ring;
  const std::uint64_t sidx = s.algebra().index();
  FiniteMatrixGroup s0 = setup.close(setup.s0, opt);
  FiniteMatrixGroup n = setup.normal_closure(setup.commutator_seeds(), opt);

  std::vector<std::uint32_t> g;
  for (std::uint32_t i = 0; i < s0.size(); ++i)
    if (setup.nrd_s(s0.elements()[i], sidx) == 1) g.push_back(i);
  bool commutators_in_sh1 = std::all_of(n.elements().begin(), n.elements().end(),
                                        [&](const ModMatrix& x) { return setup.nrd_s(x, sidx) == 1; });

  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(s0.size(), kNone);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t i : g) {
    if (label[i] != kNone) continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(i);
    for (const auto& h : n.elements()) label[s0.find(ring.multiply(s0.elements()[i], h))] = id;
  }
  const std::uint64_t q = reps.size();
  auto label_of = [&](const ModMatrix& x) {
    std::size_t k = s0.find(x);
    return k == s0.size() ? kNone : label[k];
  };
  FiniteAbelianGroup group = group_from_torsion_counts(q, [&](std::uint64_t k) {
    std::uint64_t c = 0;
    for (std::uint32_t r : reps)
      if (label_of(ring.power(s0.elements()[r], k)) == 0) ++c;
    return c;
  });

  // eta(c) = diag(c, 1, ..., 1) over c in mu_s(T_0) meets every coset.
  const auto& f = s.algebra().field();
  std::vector<char> hit(q, 0);
  for (const auto& c : mu(f, sidx).elements()) {
    std::vector<std::uint32_t> d(s.n(), 1);
    d[0] = static_cast<std::uint32_t>(c.residue());
    const std::uint32_t l = label_of(ring.diagonal(d));
    if (l != kNone) hit[l] = 1;
  }

  GroupDescription out;
  out.group = group;
  out.provenance = "oracle: S_h^(1)/[S_h^*,S_h^*] by enumeration of S_0^* and coset counting";
  out.components["route"] = "full";
  out.components["S0_order"] = s0.size();
  out.components["Sh1_order"] = g.size();
  out.components["commutator_order"] = n.size();
  out.components["order"] = q;
  out.components["commutators_in_Sh1"] = commutators_in_sh1;
  out.components["index_consistent"] = static_cast<std::uint64_t>(g.size()) == q * n.size();
  out.components["eta_surjective"] = std::all_of(hit.begin(), hit.end(), [](char b) { return b != 0; });
  out.components["mu_s_order"] = mu_order(s, sidx);
  return out;
}

GroupDescription sk_oracle_abelianized(const ShiftedMatrixAlgebra& s, const Setup& setup, const OracleOptions& opt) {
  const auto& ring = setup.ring;
  const std::uint32_t p = ring.p(), q = p - 1;
  const auto& form = setup.eps.epsilon_form();
  const std::size_t k = form.multiplicities.size();
  const std::uint64_t sidx = s.algebra().index();

  // Every elementary transvection in a block is a commutator in S_0^*, so the
  // kernel prod SL_{r_l} of the block determinants lies in [S_h^*, S_h^*].
  bool certified = true;
  for (std::size_t l = 0; l < k; ++l) {
    const std::size_t start = form.block_start[l], r = form.multiplicities[l];
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        if (i == j) continue;
        const ModMatrix target = ring.elementary(start + i, start + j, 1);
        ModMatrix c;
        if (p > 2) {
          std::vector<std::uint32_t> d(s.n(), 1);
          d[start + i] = 2;
          c = ring.commutator(ring.diagonal(d), target);
        } else if (r >= 3) {
          std::size_t m = 0;
          while (m == i || m == j) ++m;
          c = ring.commutator(ring.elementary(start + i, start + m, 1), ring.elementary(start + m, start + j, 1));
        }
        if (!(c == target)) certified = false;
      }
  }
  if (!certified) raise(ErrorCode::ExceptionalF2Config, "SL_2(F_2) blocks are not generated by commutators");

  std::uint64_t total = 1;
  for (std::size_t l = 0; l < k; ++l) {
    total *= q;
    if (total > opt.budget) raise(ErrorCode::SizeBudgetExceeded, "determinant image exceeds the budget");
  }

  const auto g = static_cast<std::uint32_t>(s.algebra().field().primitive_root().residue());
  std::vector<std::uint32_t> dlog(p, 0);
  for (std::uint32_t e = 0, x = 1; e < q; ++e, x = ring.mul(x, g)) dlog[x] = e;

  // Image vectors are encoded as sum v_l q^l.
  auto encode = [&](const std::vector<std::uint32_t>& v) {
    std::uint64_t c = 0;
    for (std::size_t l = k; l-- > 0;) c = c * q + v[l];
    return c;
  };
  auto decode = [&](std::uint64_t c) {
    std::vector<std::uint32_t> v(k);
    for (std::size_t l = 0; l < k; ++l, c /= q) v[l] = static_cast<std::uint32_t>(c % q);
    return v;
  };
  auto add = [&](std::uint64_t a, std::uint64_t b) {
    auto x = decode(a), y = decode(b);
    for (std::size_t l = 0; l < k; ++l) x[l] = (x[l] + y[l]) % q;
    return encode(x);
  };
  auto phi = [&](const ModMatrix& a) {
    std::vector<std::uint32_t> v(k);
    for (std::size_t l = 0; l < k; ++l) v[l] = dlog[ring.block_det(a, form.block_start[l], form.multiplicities[l])];
    return encode(v);
  };
  auto section = [&](std::size_t l) {
    std::vector<std::uint32_t> d(s.n(), 1);
    d[form.block_start[l]] = g;
    return ring.diagonal(d);
  };
  // Induced action of each monomial on the image, as images of the unit vectors.
  std::vector<std::vector<std::uint64_t>> action;
  for (const auto& mono : setup.monomials) {
    std::vector<std::uint64_t> cols;
    for (std::size_t l = 0; l < k; ++l) cols.push_back(phi(setup.act(mono, section(l))));
    action.push_back(std::move(cols));
  }
  auto apply = [&](const std::vector<std::uint64_t>& cols, std::uint64_t c) {
    auto v = decode(c);
    std::uint64_t r = 0;
    for (std::size_t l = 0; l < k; ++l)
      for (std::uint32_t t = 0; t < v[l]; ++t) r = add(r, cols[l]);
    return r;
  };

  std::vector<std::uint64_t> gens;
  for (const auto& mono : setup.monomials)
    for (std::size_t a = 0; a < setup.s0.size(); ++a)
      gens.push_back(phi(ring.multiply(setup.act(mono, setup.s0[a]), setup.s0_inv[a])));
  for (std::size_t x = 0; x < setup.monomials.size(); ++x)
    for (std::size_t y = x + 1; y < setup.monomials.size(); ++y)
      gens.push_back(phi(setup.monomial_commutator(setup.monomials[x], setup.monomials[y])));

  std::vector<char> in_n(total, 0);
  std::vector<std::uint64_t> n_elems;
  auto close = [&]() {
    std::fill(in_n.begin(), in_n.end(), 0);
    n_elems.assign(1, 0);
    in_n[0] = 1;
    for (std::size_t i = 0; i < n_elems.size(); ++i)
      for (std::uint64_t h : gens) {
        std::uint64_t c = add(n_elems[i], h);
        if (!in_n[c]) in_n[c] = 1, n_elems.push_back(c);
      }
  };
  close();
  for (std::size_t h = 0; h < gens.size(); ++h)
    for (const auto& cols : action) {
      std::uint64_t c = apply(cols, gens[h]);
      if (!in_n[c]) {
        gens.push_back(c);
        close();
      }
    }

  auto in_g = [&](std::uint64_t c) {
    std::uint64_t sum = 0;
    for (auto x : decode(c)) sum += x;
    return sum * sidx % q == 0;
  };
  bool commutators_in_sh1 = std::all_of(n_elems.begin(), n_elems.end(), in_g);
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(total, kNone);
  std::vector<std::uint64_t> reps;
  std::uint64_t g_order = 0;
  for (std::uint64_t c = 0; c < total; ++c) {
    if (!in_g(c)) continue;
    ++g_order;
    if (label[c] != kNone) continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(c);
    for (std::uint64_t h : n_elems) label[add(c, h)] = id;
  }
  auto times = [&](std::uint64_t c, std::uint64_t m) {
    auto v = decode(c);
    for (auto& x : v) x = static_cast<std::uint32_t>(x * (m % q) % q);
    return encode(v);
  };
  const std::uint64_t order = reps.size();
  FiniteAbelianGroup group = group_from_torsion_counts(order, [&](std::uint64_t m) {
    std::uint64_t c = 0;
    for (std::uint64_t r : reps)
      if (label[times(r, m)] == 0) ++c;
    return c;
  });

  std::vector<char> hit(order, 0);
  for (const auto& c : mu(s.algebra().field(), sidx).elements()) {
    std::vector<std::uint32_t> v(k, 0);
    v[0] = dlog[c.residue()];
    const std::uint32_t l = label[encode(v)];
    if (l != kNone) hit[l] = 1;
  }

  GroupDescription out;
  out.group = group;
  out.provenance =
      "oracle: S_h^(1)/[S_h^*,S_h^*] through the block determinants, prod SL_r certified inside the commutator subgroup";
  out.components["route"] = "abelianized";
  out.components["image_order"] = total;
  out.components["Sh1_image_order"] = g_order;
  out.components["commutator_image_order"] = n_elems.size();
  out.components["order"] = order;
  out.components["commutators_in_Sh1"] = commutators_in_sh1;
  out.components["index_consistent"] = g_order == order * n_elems.size();
  out.components["eta_surjective"] = std::all_of(hit.begin(), hit.end(), [](char b) { return b != 0; });
  out.components["sl_certified"] = certified;
  out.components["mu_s_order"] = mu_order(s, sidx);
  return out;
}

}  // namespace

FiniteMatrixGroup commutator_subgroup_Sh(const ShiftedMatrixAlgebra& s, const OracleOptions& opt) {
  Setup setup(s);
  return setup.normal_closure(setup.commutator_seeds(), opt);
}

GroupDescription sk_oracle(const ShiftedMatrixAlgebra& s, const OracleOptions& opt) {
  Setup setup(s);
  bool full = opt.route == OracleOptions::Route::Full;
  if (opt.route == OracleOptions::Route::Auto) full = s0_order(s) <= opt.budget;
  if (full && s0_order(s) > opt.budget)
    raise(ErrorCode::SizeBudgetExceeded, "|S_0^*| = " + std::to_string(s0_order(s)) + " exceeds the budget of " +
                                             std::to_string(opt.budget));
  return full ? sk_oracle_full(s, setup, opt) : sk_oracle_abelianized(s, setup, opt);
}

FiniteMatrixGroup kernel_by_determinant(const ShiftedMatrixAlgebra& s, const OracleOptions& opt) {
  const ModRing ring = ring_of(s);
  if (s0_order(s) > opt.budget) raise(ErrorCode::SizeBudgetExceeded, "S_0^* exceeds the budget");
  FiniteMatrixGroup s0 = opt.parallel ? closure(ring, s0_generators(s), opt.budget)
                                      : closure_serial(ring, s0_generators(s), opt.budget);
  std::vector<GradedMatrix> as;
  as.reserve(s0.size());
  for (const auto& x : s0.elements()) as.push_back(from_mod(s, x));
  auto dets = opt.parallel ? det_E_batch(s, as) : det_E_batch_serial(s, as);
  FiniteMatrixGroup k(ring);
  const auto one = s.algebra().identity_class();
  for (std::size_t i = 0; i < dets.size(); ++i)
    if (dets[i] == one) k.insert(s0.elements()[i]);
  return k;
}

FiniteMatrixGroup kernel_by_generators(const ShiftedMatrixAlgebra& s, const OracleOptions& opt) {
  const ModRing ring = ring_of(s);
  const auto& E = s.algebra();
  const auto& f = E.field();
  std::vector<ModMatrix> gens;
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.n(); ++j) {
      const GradeVector d = s.shifts()[j] - s.shifts()[i];
      if (i == j || !E.gamma_e().contains(d)) continue;
      for (std::uint64_t c = 1; c < f.modulus(); ++c) {
        HomogeneousUnit x = E.monomial(d);
        x.coeff *= f.from_integer(static_cast<long>(c));
        gens.push_back(to_mod(s, s.elementary(i, j, AlgebraElement(x))));
      }
    }
  // D = diag(1, ..., 1, c_l) per block with prod c_l in mu_e(T_0).
  const auto& eps = s.epsilon_form();
  const std::size_t k = eps.multiplicities.size();
  auto d_block = [&](const std::vector<FieldElement>& c) {
    std::vector<FieldMatrix> blocks;
    for (std::size_t l = 0; l < k; ++l) {
      const std::size_t r = eps.multiplicities[l];
      FieldMatrix b(r, std::vector<FieldElement>(r, f.zero()));
      for (std::size_t i = 0; i < r; ++i) b[i][i] = f.one();
      b[r - 1][r - 1] = c[l];
      blocks.push_back(std::move(b));
    }
    return to_mod(s, s.block_assemble(blocks));
  };
  std::vector<FieldElement> c(k, f.one());
  c[0] = E.mu_e().generator;
  gens.push_back(d_block(c));
  for (std::size_t l = 1; l < k; ++l) {
    std::vector<FieldElement> t(k, f.one());
    t[0] = f.primitive_root();
    t[l] = f.primitive_root().inverse();
    gens.push_back(d_block(t));
  }
  return opt.parallel ? closure(ring, gens, opt.budget) : closure_serial(ring, gens, opt.budget);
}

FiniteAbelianGroup group_from_torsion_counts(std::uint64_t order, const std::function<std::uint64_t(std::uint64_t)>& count) {
  // For sum Z/d_i, #{x : x^(p^j) = 1} = p^(sum_i min(j, v_p(d_i))).
  std::vector<Integer> cyclic;
  for (std::uint64_t p : prime_factors(order)) {
    std::uint64_t v = 0;
    for (std::uint64_t m = order; m % p == 0; m /= p) ++v;
    std::vector<std::uint64_t> logs{0};
    std::uint64_t pk = 1;
    for (std::uint64_t j = 1; j <= v; ++j) {
      pk *= p;
      std::uint64_t c = count(pk), l = 0;
      for (; c > 1; c /= p) ++l;
      logs.push_back(l);
    }
    // #{i : v_p(d_i) >= j} = logs[j] - logs[j-1]
    for (std::uint64_t j = 1; j <= v; ++j) {
      const std::uint64_t at_least = logs[j] - logs[j - 1];
      const std::uint64_t above = j < v ? logs[j + 1] - logs[j] : 0;
      Integer pj = 1;
      for (std::uint64_t t = 0; t < j; ++t) pj *= static_cast<unsigned long>(p);
      for (std::uint64_t t = above; t < at_least; ++t) cyclic.push_back(pj);
    }
  }
  return FiniteAbelianGroup::from_cyclic_orders(cyclic);
}

}  // namespace gda
