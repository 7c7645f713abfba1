#pragma once

// Mukai vectors on a K3 surface S, the extended Néron–Severi lattice
// N(S) = H⁰ ⊕ NS(S) ⊕ H⁴, and the lattice invariants of moduli spaces M(v):
// coarseness crs = div(v), the gluing-group order |G| = disc(T)/crs and
// disc(NS(M(v))).
//
// Conventions: the basis of N(S) is ordered (H⁰, NS basis, H⁴) and H⁰·H⁴ = -1,
// so the Mukai square is v² = c² - 2rs.

#include "latlab/errors.hpp"
#include "latlab/glue.hpp"
#include "latlab/integer.hpp"
#include "latlab/lattice.hpp"
#include "latlab/linalg.hpp"
#include "latlab/standard.hpp"
#include "latlab/sublattice.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace latlab::k3 {

class K3Config {
 public:
  // NS(S) = ℤH with H² = 2g-2.
  static K3Config picard_rank_one(const Integer& genus) {
    if (genus < 2) throw parameter_error("genus must be >= 2, got " + genus.str());
    K3Config c(Lattice(IntMatrix{{2 * genus - 2}}, "NS g=" + genus.str()), IntVector{1});
    c.genus_ = genus;
    return c;
  }

  // Arbitrary even NS Gram matrix. `polarization` (NS coordinates) is only used
  // for the effectiveness predicate; it defaults to the first basis vector.
  static K3Config general(const IntMatrix& ns_gram, std::optional<IntVector> polarization = std::nullopt) {
    Lattice ns(ns_gram, "NS");
    if (ns.rank() == 0) throw parameter_error("NS lattice must have positive rank");
    IntVector h = polarization.value_or(IntVector{});
    if (h.empty()) {
      h.assign(ns.rank(), Integer(0));
      h[0] = 1;
    }
    ns.check_vector(h);
    return K3Config(std::move(ns), std::move(h));
  }

  bool is_picard_rank_one() const { return genus_.has_value(); }
  const std::optional<Integer>& genus() const { return genus_; }
  const Lattice& ns() const { return ns_; }
  const IntVector& polarization() const { return polarization_; }
  std::size_t ns_rank() const { return ns_.rank(); }

  // disc(T(S)) = |A_NS| since H²(S, ℤ) is unimodular.
  Integer disc_t() const { return ns_.discriminant(); }

 private:
  K3Config(Lattice ns, IntVector polarization) : ns_(std::move(ns)), polarization_(std::move(polarization)) {}

  Lattice ns_;
  IntVector polarization_;
  std::optional<Integer> genus_;
};

// v = (r, c, s) ∈ H⁰ ⊕ NS ⊕ H⁴.
struct MukaiVector {
  Integer r;
  IntVector c;
  Integer s;

  static MukaiVector rank_one(const Integer& r, const Integer& d, const Integer& s) { return {r, {d}, s}; }

  // Coordinates in the basis (H⁰, NS, H⁴) of N(S).
  IntVector coords() const {
    IntVector x{r};
    x.insert(x.end(), c.begin(), c.end());
    x.push_back(s);
    return x;
  }

  static MukaiVector from_coords(const IntVector& x) {
    if (x.size() < 3) throw shape_error("Mukai vector needs at least 3 coordinates");
    return {x.front(), IntVector(x.begin() + 1, x.end() - 1), x.back()};
  }

  MukaiVector operator-() const {
    MukaiVector m{-r, c, -s};
    for (auto& x : m.c) x = -x;
    return m;
  }

  bool operator==(const MukaiVector&) const = default;
};

inline void check_shape(const K3Config& cfg, const MukaiVector& v) {
  if (v.c.size() != cfg.ns_rank())
    throw shape_error("Mukai vector has " + std::to_string(v.c.size()) + " NS coordinates, NS has rank " +
                      std::to_string(cfg.ns_rank()));
}

inline Integer mukai_pairing(const K3Config& cfg, const MukaiVector& v, const MukaiVector& w) {
  check_shape(cfg, v);
  check_shape(cfg, w);
  return cfg.ns().pair(v.c, w.c) - v.r * w.s - w.r * v.s;
}

inline Integer mukai_square(const K3Config& cfg, const MukaiVector& v) { return mukai_pairing(cfg, v, v); }

// N(S) with Gram [[0,0,-1],[0,NS,0],[-1,0,0]].
inline Lattice extended_ns_lattice(const K3Config& cfg) {
  const std::size_t k = cfg.ns_rank();
  IntMatrix g(k + 2, k + 2);
  g(0, k + 1) = g(k + 1, 0) = -1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g(i + 1, j + 1) = cfg.ns().gram()(i, j);
  return Lattice(g, "N(S)");
}

// div(v) in N(S). In Picard rank one this is gcd(r, s, d·(2g-2)).
inline Integer mukai_divisibility(const K3Config& cfg, const MukaiVector& v) {
  check_shape(cfg, v);
  return divisibility(extended_ns_lattice(cfg), v.coords());
}

// r > 0; or r = 0 and c ≠ 0 of positive degree against the polarization; or
// r = 0, c = 0, s > 0.
inline bool is_effective(const K3Config& cfg, const MukaiVector& v) {
  check_shape(cfg, v);
  if (v.r > 0) return true;
  if (v.r < 0) return false;
  bool c_zero = true;
  for (const auto& x : v.c) c_zero = c_zero && x == 0;
  if (!c_zero) return cfg.ns().pair(v.c, cfg.polarization()) > 0;
  return v.s > 0;
}

struct ModuliOptions {
  bool check_effective = true;
};

// Invariants of M(v), assuming M(v) smooth of the expected dimension v² + 2.
struct ModuliInvariants {
  Integer v_square;
  Integer n;  // v² = 2n - 2
  Integer div_v;
  Integer crs;
  Integer disc_t_x;
  Integer gluing_order;
  Integer disc_ns_x;             // closed formula disc(T)(2n-2)/crs²
  Integer disc_ns_x_complement;  // |det| of v⊥ ⊂ N(S)
  Integer index_m;               // [N(S) : v⊥ ⊕ ℤv] = (2n-2)/div(v)
  bool fine = false;
};

namespace detail {

inline void check_primitive(const MukaiVector& v) {
  const Integer g = gcd(v.coords());
  if (g == 0) throw domain_error("Mukai vector is zero");
  if (g != 1) throw primitivity_error("Mukai vector is not primitive (content " + g.str() + ")");
}

}  // namespace detail

inline ModuliInvariants moduli_invariants(const K3Config& cfg, const MukaiVector& v, ModuliOptions opts = {}) {
  check_shape(cfg, v);
  detail::check_primitive(v);
  ModuliInvariants inv;
  inv.v_square = mukai_square(cfg, v);
  if (inv.v_square < 2)
    throw precondition_error("moduli_invariants needs v^2 >= 2, got " + inv.v_square.str() +
                             (inv.v_square == 0 ? " (use surface_disc for v^2 = 0)" : ""));
  if (opts.check_effective && !is_effective(cfg, v)) throw precondition_error("Mukai vector is not effective");

  const Lattice nsx = extended_ns_lattice(cfg);
  const IntVector x = v.coords();
  const Integer two_n_minus_two = inv.v_square;
  inv.n = two_n_minus_two / 2 + 1;
  inv.div_v = divisibility(nsx, x);
  inv.crs = inv.div_v;
  inv.disc_t_x = cfg.disc_t();
  inv.fine = inv.crs == 1;

  check_invariant(inv.disc_t_x % inv.crs == 0, "crs does not divide disc(T)");
  check_invariant(two_n_minus_two % inv.crs == 0, "crs does not divide 2n-2");
  inv.gluing_order = inv.disc_t_x / inv.crs;
  inv.index_m = two_n_minus_two / inv.div_v;

  const Integer numer = inv.disc_t_x * two_n_minus_two;
  check_invariant(numer % (inv.crs * inv.crs) == 0, "disc(T)(2n-2) is not divisible by crs^2");
  inv.disc_ns_x = numer / (inv.crs * inv.crs);

  // Lattice route: NS(M(v)) = v⊥ ∩ N(S).
  const Sublattice line = span_of(nsx, x);
  const Sublattice perp = orthogonal_complement(line);
  inv.disc_ns_x_complement = abs(det_exact(perp.gram()));
  check_invariant(inv.disc_ns_x == inv.disc_ns_x_complement,
                  "disc(NS(M(v))) formula " + inv.disc_ns_x.str() + " != complement determinant " +
                      inv.disc_ns_x_complement.str());

  // [N(S) : v⊥ ⊕ ℤv] from the gluing group of ℤv ⊂ N(S).
  const GluingData glue = gluing_group(nsx, line);
  check_invariant(glue.order() == inv.index_m, "[N(S) : v-perp + Zv] != (2n-2)/div(v)");
  check_invariant(gluing_order_identity(glue).holds, "gluing identity fails on Zv in N(S)");
  return inv;
}

// disc(T(M)) = disc(T(S))/div(v)² for a two-dimensional moduli space (v² = 0).
inline Integer surface_disc(const K3Config& cfg, const MukaiVector& v) {
  check_shape(cfg, v);
  detail::check_primitive(v);
  if (mukai_square(cfg, v) != 0) throw precondition_error("surface_disc needs v^2 = 0");
  const Integer d = mukai_divisibility(cfg, v);
  check_invariant(cfg.disc_t() % (d * d) == 0, "div(v)^2 does not divide disc(T(S))");
  return cfg.disc_t() / (d * d);
}

// |det| of the lattice v⊥/ℤv (the Néron–Severi lattice of the K3 surface M(v)),
// computed without the closed formula. Requires v² = 0, v primitive.
inline Integer isotropic_quotient_disc(const K3Config& cfg, const MukaiVector& v) {
  check_shape(cfg, v);
  detail::check_primitive(v);
  if (mukai_square(cfg, v) != 0) throw precondition_error("isotropic_quotient_disc needs v^2 = 0");
  const Lattice nsx = extended_ns_lattice(cfg);
  const Sublattice perp = orthogonal_complement(span_of(nsx, v.coords()));
  IntMatrix vrow(1, nsx.rank());
  const IntVector x = v.coords();
  for (std::size_t j = 0; j < x.size(); ++j) vrow(0, j) = x[j];
  const auto coords = integer_coordinates(vrow, perp.basis());
  check_invariant(coords.has_value(), "v does not lie in its own orthogonal complement");
  const IntMatrix w = complete_to_basis(coords->row(0)) * perp.basis();
  const IntMatrix rest = w.row_range(1, w.rows());
  const IntMatrix gram = rest * nsx.gram() * rest.transpose();
  const Integer d = abs(det_exact(gram));
  check_invariant(d != 0, "v-perp / Zv is degenerate");
  return d;
}

enum class Verdict { not_l_equivalent, inconclusive };

inline const char* to_string(Verdict v) {
  return v == Verdict::not_l_equivalent ? "NOT_L_EQUIVALENT" : "INCONCLUSIVE";
}

struct Obstruction {
  Verdict verdict;
  bool dimension_mismatch = false;
  ModuliInvariants v;
  ModuliInvariants u;
};

// Different gluing orders rule out L-equivalence of M(v) and M(u). Equal
// orders prove nothing.
inline Obstruction l_equivalence_obstruction(const K3Config& cfg, const MukaiVector& v, const MukaiVector& u,
                                             ModuliOptions opts = {}) {
  Obstruction o{Verdict::inconclusive, false, moduli_invariants(cfg, v, opts), moduli_invariants(cfg, u, opts)};
  o.dimension_mismatch = o.v.v_square != o.u.v_square;
  if (o.v.gluing_order != o.u.gluing_order) o.verdict = Verdict::not_l_equivalent;
  return o;
}

struct CounterexampleRow {
  Integer g;
  MukaiVector v;  // (0, H, 1-g)
  MukaiVector u;  // (0, H, 0)
  Integer crs_v;
  Integer crs_u;
  Integer gluing_order_v;
  Integer gluing_order_u;
  Integer disc_ns_v;
  Integer disc_ns_u;
  Verdict verdict;
  std::string d_equivalence = "cited";  // known result, not computed here
};

inline CounterexampleRow counterexample_row(const Integer& g) {
  const K3Config cfg = K3Config::picard_rank_one(g);
  const MukaiVector v = MukaiVector::rank_one(0, 1, 1 - g);
  const MukaiVector u = MukaiVector::rank_one(0, 1, 0);
  const Obstruction o = l_equivalence_obstruction(cfg, v, u);
  return {g, v, u, o.v.crs, o.u.crs, o.v.gluing_order, o.u.gluing_order, o.v.disc_ns_x, o.u.disc_ns_x, o.verdict};
}

// Rows for the compactified Jacobians Pic⁰ = M(0,H,1-g) and Pic^{g-1} = M(0,H,0).
inline std::vector<CounterexampleRow> counterexample_report(const Integer& g_min, const Integer& g_max) {
  if (g_min < 2) throw parameter_error("g_min must be >= 2, got " + g_min.str());
  std::vector<CounterexampleRow> rows;
  for (Integer g = g_min; g <= g_max; ++g) rows.push_back(counterexample_row(g));
  return rows;
}

}  // namespace latlab::k3
