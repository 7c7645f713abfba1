#pragma once

// Brute-force verifiers and seeded generators for small lattices. Nothing in
// the verification half uses normal forms: quotients are enumerated by
// closure and cosets are compared through an explicit rational inverse.

#include "latlab/errors.hpp"
#include "latlab/glue.hpp"
#include "latlab/integer.hpp"
#include "latlab/lattice.hpp"
#include "latlab/matrix.hpp"
#include "latlab/sublattice.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace latlab::oracle {

// Cofactor expansion along the first row.
inline Integer naive_det(const IntMatrix& a) {
  if (!a.is_square()) throw dimension_error("naive_det: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = a(i, k);
    const Integer term = a(0, j) * naive_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

// Plain Gaussian elimination over ℚ, for ranks where cofactors are too slow.
inline Integer elimination_det(const IntMatrix& a) {
  if (!a.is_square()) throw dimension_error("elimination_det: matrix is not square");
  const std::size_t n = a.rows();
  RatMatrix m = to_rational(a);
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(k, p);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i)
      if (m(i, k) != 0) m.add_row(i, k, -m(i, k) / m(k, k));
  }
  return numerator(det);
}

// Gauss–Jordan inverse over ℚ; nullopt if singular.
inline std::optional<RatMatrix> naive_inverse(const IntMatrix& a) {
  const std::size_t n = a.rows();
  RatMatrix m = to_rational(a);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return std::nullopt;
    m.swap_rows(k, p);
    inv.swap_rows(k, p);
    const Rational piv = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      const Rational f = m(i, k);
      m.add_row(i, k, -f);
      inv.add_row(i, k, -f);
    }
  }
  return inv;
}

// gcd of all maximal minors of a k x n matrix (k ≤ n); 1 iff the rows span a
// primitive sublattice.
inline Integer maximal_minor_gcd(const IntMatrix& b) {
  const std::size_t k = b.rows(), n = b.cols();
  if (k == 0) return 1;
  Integer g = 0;
  std::vector<std::size_t> cols(k);
  for (std::size_t i = 0; i < k; ++i) cols[i] = i;
  for (;;) {
    IntMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = b(i, cols[j]);
    g = gcd(g, naive_det(m));
    std::size_t i = k;
    while (i > 0 && cols[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t j = i; j < k; ++j) cols[j] = cols[j - 1] + 1;
  }
  return g;
}

struct QuotientGroup {
  Integer order;
  IntVector invariant_factors;  // nonunit, d1 | d2 | ...
  std::vector<IntVector> reps;
};

namespace detail {

inline std::vector<Integer> prime_factors(Integer n) {
  std::vector<Integer> ps;
  for (Integer p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

// Invariant factors of a finite abelian group from the orders of all its elements.
inline IntVector factors_from_orders(const std::vector<Integer>& orders, const Integer& group_order) {
  std::vector<std::vector<unsigned>> exps;  // per prime, descending exponents
  std::vector<Integer> primes = prime_factors(group_order);
  for (const auto& p : primes) {
    // count[j] = #{x : ord(x) | p^j}
    std::vector<Integer> count{1};
    Integer pj = 1;
    for (;;) {
      pj *= p;
      Integer c = 0;
      for (const auto& o : orders) {
        // ord(x) | p^j  ⟺  ord(x) divides pj
        if (pj % o == 0) ++c;
      }
      count.push_back(c);
      if (c == count[count.size() - 2]) break;
    }
    count.pop_back();
    // r_j = #{cyclic factors with exponent ≥ j} = log_p(count[j]/count[j-1])
    std::vector<unsigned> at_least;
    for (std::size_t j = 1; j < count.size(); ++j) {
      Integer ratio = count[j] / count[j - 1];
      unsigned r = 0;
      while (ratio > 1) {
        ratio /= p;
        ++r;
      }
      at_least.push_back(r);
    }
    std::vector<unsigned> e;
    const unsigned num = at_least.empty() ? 0 : at_least[0];
    for (unsigned f = 0; f < num; ++f) {
      unsigned ex = 0;
      for (const auto r : at_least)
        if (r > f) ++ex;
      e.push_back(ex);
    }
    exps.push_back(e);
  }
  std::size_t width = 0;
  for (const auto& e : exps) width = std::max(width, e.size());
  IntVector out;
  for (std::size_t k = 0; k < width; ++k) {
    Integer d = 1;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (k < exps[i].size()) d *= pow(primes[i], exps[i][k]);
    out.push_back(d);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

// ℤⁿ / (row span of inner_basis) by breadth-first closure under the unit
// vectors. inner_basis must be square and nonsingular. The coset of x is
// identified by x·adj(M) mod det, i.e. det times the fractional part of x·M⁻¹.
inline QuotientGroup enumerate_quotient(std::size_t n, const IntMatrix& inner_basis, const Integer& budget = 1000000) {
  if (inner_basis.rows() != n || inner_basis.cols() != n)
    throw dimension_error("enumerate_quotient: inner basis must be square of full rank");
  const Integer det = abs(elimination_det(inner_basis));
  if (det == 0) throw dimension_error("enumerate_quotient: inner basis is singular");
  if (det > budget) throw budget_error("enumerate_quotient: quotient of order " + det.str() + " exceeds budget");
  const RatMatrix inv = *naive_inverse(inner_basis);
  std::vector<IntVector> adj_rows(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational a = inv(i, j) * Rational(det);
      check_invariant(is_integral(a), "enumerate_quotient: det·M^-1 is not integral");
      adj_rows[i][j] = floor_mod(numerator(a), det);
    }

  std::map<IntVector, IntVector> seen;
  std::deque<std::pair<IntVector, IntVector>> queue;  // (key, representative)
  const IntVector zero(n, Integer(0));
  seen.emplace(zero, zero);
  queue.emplace_back(zero, zero);
  while (!queue.empty()) {
    const auto [key, x] = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      IntVector k = key;
      for (std::size_t j = 0; j < n; ++j) {
        k[j] += adj_rows[i][j];
        if (k[j] >= det) k[j] -= det;
      }
      if (seen.count(k)) continue;
      IntVector y = x;
      ++y[i];
      seen.emplace(k, y);
      queue.emplace_back(std::move(k), std::move(y));
    }
  }

  QuotientGroup q;
  q.order = seen.size();
  std::vector<Integer> orders;
  for (const auto& [key, rep] : seen) {
    orders.push_back(det / gcd(det, gcd(key)));
    q.reps.push_back(rep);
  }
  q.invariant_factors = detail::factors_from_orders(orders, q.order);
  return q;
}

inline QuotientGroup enumerate_quotient(const Lattice& h, const IntMatrix& inner_basis,
                                        const Integer& budget = 1000000) {
  return enumerate_quotient(h.rank(), inner_basis, budget);
}

// A_L = L*/L, with L* = ℤⁿ in dual coordinates and L the row span of the Gram matrix.
inline QuotientGroup enumerate_discriminant_group(const Lattice& l, const Integer& budget = 1000000) {
  return enumerate_quotient(l.rank(), l.gram(), budget);
}

struct FuzzConfig {
  std::uint64_t seed = 1;
  std::size_t trials = 500;
  std::size_t max_rank = 4;
  int max_entry = 6;
  // Instances with disc(N) above this are redrawn. G embeds in A_N, so this
  // bounds the quotient the oracle has to enumerate.
  std::int64_t max_disc_n = 2000;

  void validate() const {
    if (max_rank < 1 || max_rank > 5) throw parameter_error("fuzz max_rank must be in [1, 5]");
    if (max_entry < 1 || max_entry > 8) throw parameter_error("fuzz max_entry must be in [1, 8]");
  }
};

// Deterministic integer source; avoids the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

inline Lattice random_even_lattice(Rng& rng, std::size_t rank, int max_entry, int retries = 10000) {
  const int half = max_entry / 2;
  for (int attempt = 0; attempt < retries; ++attempt) {
    IntMatrix g(rank, rank);
    for (std::size_t i = 0; i < rank; ++i) {
      g(i, i) = 2 * rng.uniform(-half, half);
      for (std::size_t j = i + 1; j < rank; ++j) g(i, j) = g(j, i) = rng.uniform(-max_entry, max_entry);
    }
    if (naive_det(g) != 0) return Lattice(g);
  }
  throw generation_error("random_even_lattice: no nonsingular sample after retries");
}

inline Lattice random_even_lattice(const FuzzConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const auto rank = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(cfg.max_rank)));
  return random_even_lattice(rng, rank, cfg.max_entry);
}

// U or U ⊕ U in a random basis with entries bounded by max_entry.
inline Lattice random_unimodular_even_lattice(Rng& rng, std::size_t rank, int max_entry, int retries = 10000) {
  if (rank != 2 && rank != 4) throw parameter_error("even unimodular lattices of rank <= 4 have rank 2 or 4");
  const IntMatrix base = rank == 2 ? IntMatrix{{0, 1}, {1, 0}} : block_diagonal(IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{0, 1}, {1, 0}});
  for (int attempt = 0; attempt < retries; ++attempt) {
    IntMatrix w = IntMatrix::identity(rank);
    const auto ops = rng.uniform(0, 6);
    for (std::int64_t k = 0; k < ops; ++k) {
      const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(rank) - 1));
      auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(rank) - 2));
      if (j >= i) ++j;
      w.add_row(i, j, rng.uniform(-2, 2));
      if (rng.uniform(0, 3) == 0) w.swap_rows(i, j);
    }
    const IntMatrix g = w * base * w.transpose();
    bool ok = true;
    for (const auto& x : g.data()) ok = ok && abs(x) <= max_entry;
    if (ok) return Lattice(g);
  }
  throw generation_error("random_unimodular_even_lattice: no sample within bounds");
}

// Primitive nondegenerate sublattice of the given rank: a random span,
// saturated, resampled while degenerate.
inline Sublattice random_primitive_sublattice(const Lattice& l, std::size_t rank, Rng& rng, int coord_bound = 3,
                                              int retries = 10000) {
  if (rank < 1 || rank >= l.rank()) throw parameter_error("sublattice rank must be in [1, rank(L))");
  for (int attempt = 0; attempt < retries; ++attempt) {
    IntMatrix b(rank, l.rank());
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < l.rank(); ++j) b(i, j) = rng.uniform(-coord_bound, coord_bound);
    if (maximal_minor_gcd(b) == 0) continue;
    const Sublattice s = saturation(Sublattice(l, b));
    if (s.is_nondegenerate()) return s;
  }
  throw generation_error("random_primitive_sublattice: no nondegenerate sample after retries");
}

inline Sublattice random_primitive_sublattice(const Lattice& l, std::size_t rank, const FuzzConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  return random_primitive_sublattice(l, rank, rng);
}

// Everything about G = H/(N ⊕ T) that brute force can establish.
struct GlueOracle {
  Integer order;
  IntVector invariant_factors;
  Integer disc_h, disc_n, disc_t;
  bool t_orthogonal = false;  // every T row pairs to zero with every N row
  bool t_primitive = false;
  bool identity_holds = false;
  bool n_injective = false, t_injective = false;
  bool n_surjective = false, t_surjective = false;
  bool anti_isometry = false;
};

// Classes in A_M = ℤᵏ / ℤᵏ·G_M, computed with the integer adjugate: the class
// of a functional f is f·adj(G_M) mod det, and q(f) = f·adj·fᵀ/det mod 2.
class DualForm {
 public:
  explicit DualForm(const IntMatrix& gram) : det_(1), adj_(gram.rows(), gram.rows()) {
    if (gram.rows() == 0) return;
    det_ = naive_det(gram);
    const RatMatrix inv = *naive_inverse(gram);
    for (std::size_t i = 0; i < gram.rows(); ++i)
      for (std::size_t j = 0; j < gram.rows(); ++j) adj_(i, j) = numerator(inv(i, j) * Rational(det_));
  }

  IntVector key(const IntVector& f) const {
    IntVector y = f * adj_;
    for (auto& c : y) c = floor_mod(c, abs(det_));
    return y;
  }

  Rational q(const IntVector& f) const { return rational_mod(Rational(dot(f * adj_, f)) / Rational(det_), 2); }

 private:
  Integer det_;
  IntMatrix adj_;
};

inline GlueOracle glue_oracle(const Lattice& h, const IntMatrix& n_basis, const IntMatrix& t_basis,
                              const Integer& budget = 1000000) {
  GlueOracle o;
  const IntMatrix& g = h.gram();
  o.t_orthogonal = (n_basis * g * t_basis.transpose()).is_zero();
  o.t_primitive = maximal_minor_gcd(t_basis) == 1;
  const IntMatrix gn = n_basis * g * n_basis.transpose();
  const IntMatrix gt = t_basis * g * t_basis.transpose();
  o.disc_h = abs(naive_det(g));
  o.disc_n = abs(naive_det(gn));
  o.disc_t = abs(naive_det(gt));

  const QuotientGroup q = enumerate_quotient(h.rank(), vstack(n_basis, t_basis), budget);
  o.order = q.order;
  o.invariant_factors = q.invariant_factors;
  o.identity_holds = o.disc_t * o.disc_n == o.order * o.order * o.disc_h;

  const DualForm fn(gn), ft(gt);
  std::set<IntVector> n_keys, t_keys;
  o.anti_isometry = true;
  for (const auto& x : q.reps) {
    const IntVector gx = g * x;
    const IntVector a = n_basis * gx, b = t_basis * gx;
    n_keys.insert(fn.key(a));
    t_keys.insert(ft.key(b));
    if (!congruent_mod(fn.q(a) + ft.q(b), 0, 2)) o.anti_isometry = false;
  }
  o.n_injective = Integer(n_keys.size()) == o.order;
  o.t_injective = Integer(t_keys.size()) == o.order;
  o.n_surjective = Integer(n_keys.size()) == o.disc_n;
  o.t_surjective = Integer(t_keys.size()) == o.disc_t;
  return o;
}

struct FuzzFailure {
  std::uint64_t seed;
  std::size_t trial;
  std::string what;
  std::string ambient;
  std::string sublattice;
};

struct FuzzReport {
  std::size_t trials = 0;
  std::size_t unimodular_instances = 0;
  std::size_t identity_failures = 0;
  std::size_t injectivity_failures = 0;
  std::size_t surjectivity_failures = 0;
  std::size_t anti_isometry_failures = 0;
  std::size_t mismatches = 0;  // main path and oracle disagree
  std::vector<FuzzFailure> failures;

  bool passed() const { return failures.empty(); }
};

enum class Family { general, unimodular };

// One seeded instance: (H, N) with N primitive nondegenerate, 1 ≤ rank N < rank H.
struct Instance {
  Lattice h;
  Sublattice n;
};

inline Instance make_instance(const FuzzConfig& cfg, std::size_t trial, Family family) {
  Rng rng(cfg.seed * 0x9E3779B97F4A7C15ULL + trial + (family == Family::unimodular ? 0x5bd1e995ULL : 0));
  for (;;) {
    std::size_t rank;
    Lattice h;
    if (family == Family::unimodular) {
      rank = (cfg.max_rank >= 4 && rng.uniform(0, 1) == 1) ? 4 : 2;
      h = random_unimodular_even_lattice(rng, rank, cfg.max_entry);
    } else {
      rank = static_cast<std::size_t>(rng.uniform(2, static_cast<std::int64_t>(std::max<std::size_t>(cfg.max_rank, 2))));
      h = random_even_lattice(rng, rank, cfg.max_entry);
    }
    const auto nrank = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(rank) - 1));
    try {
      Sublattice n = random_primitive_sublattice(h, nrank, rng, 2);
      if (abs(naive_det(n.gram())) <= cfg.max_disc_n) return {h, std::move(n)};
    } catch (const generation_error&) {
      // only degenerate spans found; draw a new H
    }
  }
}

// Runs the main gluing path against the oracle on `trials` seeded instances.
inline FuzzReport run_fuzz(const FuzzConfig& cfg, Family family = Family::general) {
  cfg.validate();
  FuzzReport r;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const Instance inst = make_instance(cfg, t, family);
    ++r.trials;
    std::ostringstream hs, ns;
    hs << inst.h.gram();
    ns << inst.n.basis();
    const auto fail = [&](const std::string& what) { r.failures.push_back({cfg.seed, t, what, hs.str(), ns.str()}); };

    try {
      const GluingData data = gluing_group(inst.h, inst.n);
      const GlueOracle o = glue_oracle(inst.h, data.n_part.basis(), data.t_part.basis());
      const bool unimodular = o.disc_h == 1;
      if (unimodular) ++r.unimodular_instances;

      if (!o.t_orthogonal || !o.t_primitive) {
        ++r.mismatches;
        fail("complement is not orthogonal or not primitive");
      }
      if (o.order != data.order() || o.invariant_factors != data.group_invariant_factors) {
        ++r.mismatches;
        fail("|G| or its invariant factors differ between oracle and SNF path");
      }
      if (!o.identity_holds || !gluing_order_identity(data).holds) {
        ++r.identity_failures;
        fail("disc(T)disc(N) != |G|^2 disc(H)");
      }
      if (!o.n_injective || !o.t_injective) {
        ++r.injectivity_failures;
        fail("i_N or i_T not injective");
      }
      if (!o.anti_isometry || !anti_isometry_check(data).holds) {
        ++r.anti_isometry_failures;
        fail("q_N + q_T not 0 mod 2");
      }
      if (unimodular && (!o.n_surjective || !o.t_surjective || !verify_unimodular_iso(data).holds)) {
        ++r.surjectivity_failures;
        fail("unimodular ambient but i_N or i_T not surjective");
      }
    } catch (const std::exception& e) {
      ++r.mismatches;
      fail(std::string("exception: ") + e.what());
    }
  }
  return r;
}

}  // namespace latlab::oracle
