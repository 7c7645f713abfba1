#pragma once

// Gluing groups G = H/(N ⊕ N⊥) of primitive sublattices, the embeddings
// i_N: G → A_N and i_T: G → A_T, the anti-isometry between their images and
// reconstruction of H as an overlattice of N ⊕ T.

#include "latlab/discriminant.hpp"
#include "latlab/errors.hpp"
#include "latlab/integer.hpp"
#include "latlab/lattice.hpp"
#include "latlab/linalg.hpp"
#include "latlab/sublattice.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace latlab {

struct GluingData {
  Lattice ambient;
  Sublattice n_part;
  Sublattice t_part;
  FiniteQuadraticModule a_n;
  FiniteQuadraticModule a_t;
  // Nonunit invariant factors of G.
  IntVector group_invariant_factors;
  // generator_reps[i] ∈ H has order group_invariant_factors[i] in G.
  std::vector<IntVector> generator_reps;
  std::vector<IntVector> n_generator_images;
  std::vector<IntVector> t_generator_images;

  Integer order() const {
    Integer o = 1;
    for (const auto& d : group_invariant_factors) o *= d;
    return o;
  }

  // i_N of the class of x ∈ H: the functional (x·-)|_N modulo N.
  IntVector i_n(const IntVector& x) const {
    return a_n.classify_functional(n_part.basis() * (ambient.gram() * x));
  }
  IntVector i_t(const IntVector& x) const {
    return a_t.classify_functional(t_part.basis() * (ambient.gram() * x));
  }

  // Σ a_i·generator_reps[i].
  IntVector combine(const IntVector& coeffs) const {
    IntVector x(ambient.rank(), Integer(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += coeffs[i] * generator_reps[i][j];
    return x;
  }

  // One representative per coset of N ⊕ T in H.
  std::vector<IntVector> coset_reps(const Integer& budget = 1000000) const {
    std::vector<IntVector> reps;
    for_each_residue(group_invariant_factors, [&](const IntVector& c) { reps.push_back(combine(c)); }, budget);
    return reps;
  }

  std::vector<IntVector> n_images(const Integer& budget = 1000000) const {
    std::vector<IntVector> out;
    for (const auto& x : coset_reps(budget)) out.push_back(i_n(x));
    return out;
  }
  std::vector<IntVector> t_images(const Integer& budget = 1000000) const {
    std::vector<IntVector> out;
    for (const auto& x : coset_reps(budget)) out.push_back(i_t(x));
    return out;
  }
};

// G = H/(N ⊕ N⊥) for a primitive nondegenerate N ⊂ H.
inline GluingData gluing_group(const Lattice& h, const Sublattice& n) {
  if (!(n.ambient() == h)) throw containment_error("sublattice does not live in the given ambient lattice");
  if (!is_primitive(n)) throw primitivity_error("gluing_group needs a primitive sublattice (saturate it first)");
  if (!n.is_nondegenerate()) throw degeneracy_error("gluing_group needs a nondegenerate sublattice");

  Sublattice t = orthogonal_complement(n);
  check_invariant(n.rank() + t.rank() == h.rank(), "rank(N) + rank(T) != rank(H)");

  const IntMatrix stacked = vstack(n.basis(), t.basis());
  const auto s = snf(stacked);
  const IntMatrix v_inv = inverse_unimodular(s.V);

  GluingData data{h, n, t, discriminant_module(n.as_lattice()), discriminant_module(t.as_lattice()), {}, {}, {}, {}};
  for (std::size_t i = 0; i < h.rank(); ++i) {
    const Integer& d = s.D(i, i);
    check_invariant(d != 0, "N + T is not of full rank in H");
    if (d == 1) continue;
    data.group_invariant_factors.push_back(d);
    data.generator_reps.push_back(v_inv.row(i));
  }
  for (const auto& x : data.generator_reps) {
    data.n_generator_images.push_back(data.i_n(x));
    data.t_generator_images.push_back(data.i_t(x));
  }

  const auto index = sublattice_index(internal_sum(n, t), whole_lattice(h));
  check_invariant(index && *index == data.order(), "|G| differs from [H : N + T]");
  check_invariant(data.a_n.subgroup_order(data.n_generator_images) == data.order(), "i_N is not injective");
  check_invariant(data.a_t.subgroup_order(data.t_generator_images) == data.order(), "i_T is not injective");
  return data;
}

struct UnimodularIsoReport {
  Integer order;
  Integer order_a_n;
  Integer order_a_t;
  bool n_surjective = false;
  bool t_surjective = false;
  bool holds = false;
  // (i_N(g), i_T(g)) for each generator g of G.
  std::vector<std::pair<IntVector, IntVector>> matching;
};

// For unimodular H, i_N and i_T are isomorphisms.
inline UnimodularIsoReport verify_unimodular_iso(const GluingData& data) {
  if (!data.ambient.is_unimodular()) throw precondition_error("verify_unimodular_iso needs a unimodular ambient lattice");
  UnimodularIsoReport r;
  r.order = data.order();
  r.order_a_n = data.a_n.order();
  r.order_a_t = data.a_t.order();
  r.n_surjective = data.a_n.subgroup_order(data.n_generator_images) == r.order_a_n;
  r.t_surjective = data.a_t.subgroup_order(data.t_generator_images) == r.order_a_t;
  r.holds = r.n_surjective && r.t_surjective && r.order == r.order_a_n && r.order == r.order_a_t;
  for (std::size_t i = 0; i < data.generator_reps.size(); ++i)
    r.matching.emplace_back(data.n_generator_images[i], data.t_generator_images[i]);
  return r;
}

struct AntiIsometryReport {
  bool holds = true;
  bool exhaustive = false;
  std::size_t checked = 0;
  std::optional<IntVector> counterexample;
};

// q_N(i_N(x)) + q_T(i_T(x)) ≡ 0 mod 2ℤ on every class of G. Enumerates G when
// |G| ≤ budget; otherwise checks q on generators and b on generator pairs,
// which determines q on all of G.
inline AntiIsometryReport anti_isometry_check(const GluingData& data, const Integer& budget = 100000) {
  AntiIsometryReport r;
  if (data.order() <= budget) {
    r.exhaustive = true;
    for_each_residue(data.group_invariant_factors, [&](const IntVector& c) {
      const IntVector x = data.combine(c);
      ++r.checked;
      if (!congruent_mod(data.a_n.q(data.i_n(x)) + data.a_t.q(data.i_t(x)), 0, 2) && r.holds) {
        r.holds = false;
        r.counterexample = x;
      }
    });
    return r;
  }
  const auto& gn = data.n_generator_images;
  const auto& gt = data.t_generator_images;
  for (std::size_t i = 0; i < gn.size(); ++i) {
    ++r.checked;
    if (!congruent_mod(data.a_n.q(gn[i]) + data.a_t.q(gt[i]), 0, 2) && r.holds) {
      r.holds = false;
      r.counterexample = data.generator_reps[i];
    }
    for (std::size_t j = i + 1; j < gn.size(); ++j)
      if (!congruent_mod(data.a_n.b(gn[i], gn[j]) + data.a_t.b(gt[i], gt[j]), 0, 1) && r.holds) {
        r.holds = false;
        r.counterexample = data.generator_reps[i];
      }
  }
  return r;
}

struct GluingIdentityReport {
  Integer disc_n;
  Integer disc_t;
  Integer disc_h;
  Integer order;
  bool holds = false;
};

// disc(T)·disc(N) = |G|²·disc(H).
inline GluingIdentityReport gluing_order_identity(const GluingData& data) {
  GluingIdentityReport r{data.a_n.order(), data.a_t.order(), data.ambient.discriminant(), data.order(), false};
  r.holds = r.disc_t * r.disc_n == r.order * r.order * r.disc_h;
  return r;
}

// Overlattice of N ⊕ T with its basis in rational N⊕T coordinates.
struct Overlattice {
  Lattice lattice;
  RatMatrix basis;
  Integer index;
};

using GlueMap = std::vector<std::pair<IntVector, IntVector>>;

// {(x, y) ∈ N* ⊕ T* : x̄ ∈ dom(γ), γ(x̄) = ȳ}, where γ is the subgroup
// isomorphism generated by the given pairs (A_N residues, A_T residues).
inline Overlattice overlattice_reconstruct(const Lattice& n, const Lattice& t, const GlueMap& glue) {
  const auto an = discriminant_module(n);
  const auto at = discriminant_module(t);
  for (const auto& [a, b] : glue)
    if (a.size() != an.num_generators() || b.size() != at.num_generators())
      throw glue_error("glue element has the wrong number of residues");

  std::vector<IntVector> pn, pt, graph;
  for (const auto& [a, b] : glue) {
    pn.push_back(a);
    pt.push_back(b);
    IntVector ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    graph.push_back(ab);
  }
  IntVector both = an.invariant_factors();
  both.insert(both.end(), at.invariant_factors().begin(), at.invariant_factors().end());
  const Integer index = subgroup_order(both, graph);
  if (an.subgroup_order(pn) != index || at.subgroup_order(pt) != index)
    throw glue_error("glue is not a group isomorphism between subgroups");
  for (std::size_t i = 0; i < glue.size(); ++i) {
    if (!congruent_mod(an.q(glue[i].first) + at.q(glue[i].second), 0, 2))
      throw glue_error("glue is not an anti-isometry (q values do not cancel)");
    for (std::size_t j = i + 1; j < glue.size(); ++j)
      if (!congruent_mod(an.b(glue[i].first, glue[j].first) + at.b(glue[i].second, glue[j].second), 0, 1))
        throw glue_error("glue is not an anti-isometry (bilinear values do not cancel)");
  }

  const std::size_t rn = n.rank(), rt = t.rank(), r = rn + rt;
  RatMatrix gens(r + glue.size(), r);
  for (std::size_t i = 0; i < r; ++i) gens(i, i) = 1;
  Integer common = 1;
  for (std::size_t k = 0; k < glue.size(); ++k) {
    const RatVector x = an.lift(glue[k].first);
    const RatVector y = at.lift(glue[k].second);
    for (std::size_t j = 0; j < rn; ++j) gens(r + k, j) = x[j];
    for (std::size_t j = 0; j < rt; ++j) gens(r + k, rn + j) = y[j];
    for (std::size_t j = 0; j < r; ++j) common = lcm(common, denominator(gens(r + k, j)));
  }
  IntMatrix scaled(gens.rows(), r);
  for (std::size_t i = 0; i < gens.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) scaled(i, j) = numerator(gens(i, j) * Rational(common));
  const IntMatrix h = hnf(scaled);
  check_invariant(h.rows() == r, "overlattice generators do not span");
  RatMatrix basis(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) basis(i, j) = Rational(h(i, j), common);

  const RatMatrix g = to_rational(block_diagonal(n.gram(), t.gram()));
  const auto gram = to_integer(basis * g * basis.transpose());
  if (!gram) throw consistency_error("glued lattice is not integral");
  try {
    Overlattice out{Lattice(*gram), basis, index};
    // [H' : N ⊕ T] = 1/|det basis| = common^r / |det h|
    check_invariant(abs(det_exact(h)) * index == pow(common, static_cast<unsigned>(r)),
                    "overlattice index does not match the glue order");
    return out;
  } catch (const evenness_error&) {
    throw consistency_error("glued lattice is odd");
  }
}

// Rebuilds H from N, T and the gluing data's generator matching.
inline Overlattice reconstruct_from(const GluingData& data) {
  GlueMap glue;
  for (std::size_t i = 0; i < data.generator_reps.size(); ++i)
    glue.emplace_back(data.n_generator_images[i], data.t_generator_images[i]);
  return overlattice_reconstruct(data.n_part.as_lattice(), data.t_part.as_lattice(), glue);
}

// Integral unimodular C with C·gram(rebuilt)·Cᵀ = gram(H), taking the standard
// basis of H to its coordinates in the rebuilt lattice's basis.
inline std::optional<IntMatrix> round_trip_witness(const GluingData& data, const Overlattice& rebuilt) {
  const IntMatrix stacked = vstack(data.n_part.basis(), data.t_part.basis());
  const RatMatrix coords = inverse_exact(stacked);  // rows: e_i in N⊕T coordinates
  const auto c = to_integer(coords * inverse_exact(rebuilt.basis));
  if (!c) return std::nullopt;
  if (abs(det_exact(*c)) != 1) return std::nullopt;
  if (!(*c * rebuilt.lattice.gram() * c->transpose() == data.ambient.gram())) return std::nullopt;
  return c;
}

}  // namespace latlab
