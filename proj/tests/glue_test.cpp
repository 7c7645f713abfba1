#include "latlab/glue.hpp"
#include "latlab/oracle.hpp"
#include "latlab/standard.hpp"

#include <gtest/gtest.h>

using namespace latlab;

namespace {

GluingData glue_of(const Lattice& h, const IntMatrix& n_basis) { return gluing_group(h, Sublattice(h, n_basis)); }

void expect_matches_oracle(const GluingData& data) {
  const auto o = oracle::glue_oracle(data.ambient, data.n_part.basis(), data.t_part.basis());
  EXPECT_TRUE(o.t_orthogonal);
  EXPECT_TRUE(o.t_primitive);
  EXPECT_EQ(o.order, data.order());
  EXPECT_EQ(o.invariant_factors, data.group_invariant_factors);
  EXPECT_TRUE(o.identity_holds);
  EXPECT_TRUE(o.n_injective);
  EXPECT_TRUE(o.t_injective);
  EXPECT_TRUE(o.anti_isometry);
}

}  // namespace

TEST(GluingGroup, HyperbolicPlaneDiagonalLine) {
  // N = ℤ(1,1), T = ℤ(1,-1): disc 2 each, H unimodular, so |G| = 2
  const auto data = glue_of(standard::hyperbolic_plane(), IntMatrix{{1, 1}});
  EXPECT_EQ(data.order(), 2);
  EXPECT_EQ(data.group_invariant_factors, (IntVector{2}));
  EXPECT_EQ(data.t_part.gram(), (IntMatrix{{-2}}));
  expect_matches_oracle(data);
}

TEST(GluingGroup, DirectSummandHasTrivialGlue) {
  const Lattice h = direct_sum(standard::rank_one(2), standard::rank_one(4));
  const auto data = glue_of(h, IntMatrix{{1, 0}});
  EXPECT_EQ(data.order(), 1);
  EXPECT_TRUE(data.group_invariant_factors.empty());
  EXPECT_EQ(data.t_part.gram(), (IntMatrix{{4}}));
  expect_matches_oracle(data);
}

TEST(GluingGroup, RankOneSummandOfK3n) {
  const Lattice h = standard::k3n(2);
  IntMatrix b(1, 23);
  b(0, 22) = 1;
  const auto data = glue_of(h, b);
  EXPECT_EQ(data.order(), 1);
  EXPECT_EQ(data.t_part.as_lattice().discriminant(), 1);
  EXPECT_TRUE(gluing_order_identity(data).holds);
}

TEST(GluingGroup, MukaiVectorInExtendedNs) {
  for (int g = 2; g <= 15; ++g) {
    const Lattice ns = standard::ns_extended(g);
    const auto v = glue_of(ns, IntMatrix{{0, 1, 1 - g}});
    const auto u = glue_of(ns, IntMatrix{{0, 1, 0}});
    // [N(S) : v⊥ ⊕ ℤv] = v²/div(v)
    EXPECT_EQ(v.order(), (2 * g - 2) / (g - 1));
    EXPECT_EQ(u.order(), 1);
    expect_matches_oracle(v);
    expect_matches_oracle(u);
  }
}

TEST(GluingGroup, Preconditions) {
  const Lattice u = standard::hyperbolic_plane();
  EXPECT_THROW(glue_of(u, IntMatrix{{2, 2}}), primitivity_error);
  EXPECT_THROW(glue_of(u, IntMatrix{{1, 0}}), degeneracy_error);
  const Lattice other = standard::rank_one(2);
  EXPECT_THROW(gluing_group(other, Sublattice(u, IntMatrix{{1, 1}})), containment_error);
}

TEST(GluingGroup, AgreesWithOracleOnRandomInstances) {
  oracle::FuzzConfig cfg;
  cfg.seed = 4242;
  for (std::size_t t = 0; t < 150; ++t) {
    const auto inst = oracle::make_instance(cfg, t, oracle::Family::general);
    const auto data = gluing_group(inst.h, inst.n);
    SCOPED_TRACE(testing::Message() << inst.h.gram() << " N=" << inst.n.basis());
    expect_matches_oracle(data);
    // classes computed from coset representatives match the generator images
    for (std::size_t i = 0; i < data.generator_reps.size(); ++i) {
      EXPECT_EQ(data.i_n(data.generator_reps[i]), data.n_generator_images[i]);
      EXPECT_EQ(data.a_n.element_order(data.n_generator_images[i]), data.group_invariant_factors[i]);
    }
  }
}

TEST(UnimodularIso, HyperbolicPlane) {
  const auto r = verify_unimodular_iso(glue_of(standard::hyperbolic_plane(), IntMatrix{{1, 1}}));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.order, 2);
  ASSERT_EQ(r.matching.size(), 1u);
}

TEST(UnimodularIso, DoubleHyperbolicPlane) {
  const Lattice h = direct_sum_power(standard::hyperbolic_plane(), 2);
  // N = ⟨e1 + 2f1⟩ ⊕ ⟨e2 + 3f2⟩, disc 4·6 = 24
  const auto data = glue_of(h, IntMatrix{{1, 2, 0, 0}, {0, 0, 1, 3}});
  const auto r = verify_unimodular_iso(data);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.order, 24);
  EXPECT_EQ(r.order_a_n, 24);
  EXPECT_EQ(r.order_a_t, 24);
  expect_matches_oracle(data);
}

TEST(UnimodularIso, ExtendedK3WithMukaiVector) {
  const Lattice h = standard::k3_extended();
  // a class of square 4 in the last U summand: e + 2f
  IntVector v(24, Integer(0));
  v[22] = 1;
  v[23] = 2;
  const auto data = gluing_group(h, span_of(h, v));
  const auto r = verify_unimodular_iso(data);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.order, 4);
  EXPECT_TRUE(anti_isometry_check(data).holds);
}

TEST(UnimodularIso, ExtendedK3GenusTwo) {
  const Lattice h = standard::k3_extended();
  IntVector v(24, Integer(0));
  v[22] = 1;
  v[23] = 1;
  const auto data = gluing_group(h, span_of(h, v));
  EXPECT_EQ(h.square(v), 2);
  EXPECT_EQ(data.order(), 2);
  EXPECT_TRUE(verify_unimodular_iso(data).holds);
  // the same vector in a rank-4 block U ⊕ U, small enough to enumerate
  const auto block = glue_of(direct_sum_power(standard::hyperbolic_plane(), 2), IntMatrix{{0, 0, 1, 1}});
  EXPECT_EQ(oracle::glue_oracle(block.ambient, block.n_part.basis(), block.t_part.basis()).order, 2);
}

TEST(UnimodularIso, DiagonalLineInDoubleHyperbolicPlane) {
  const auto data = glue_of(direct_sum_power(standard::hyperbolic_plane(), 2), IntMatrix{{1, 1, 0, 0}});
  const auto r = verify_unimodular_iso(data);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.order, 2);
  expect_matches_oracle(data);
}

TEST(UnimodularIso, RejectsNonUnimodularAmbient) {
  const Lattice h = direct_sum(standard::rank_one(2), standard::rank_one(4));
  EXPECT_THROW(verify_unimodular_iso(glue_of(h, IntMatrix{{1, 0}})), precondition_error);
}

TEST(AntiIsometry, ExhaustiveAndGeneratorChecksAgree) {
  const auto data = glue_of(direct_sum_power(standard::hyperbolic_plane(), 2), IntMatrix{{1, 2, 0, 0}, {0, 0, 1, 3}});
  const auto full = anti_isometry_check(data);
  EXPECT_TRUE(full.holds);
  EXPECT_TRUE(full.exhaustive);
  EXPECT_EQ(full.checked, 24u);
  const auto gens = anti_isometry_check(data, 1);
  EXPECT_TRUE(gens.holds);
  EXPECT_FALSE(gens.exhaustive);
}

TEST(AntiIsometry, HyperbolicPlaneValues) {
  const auto data = glue_of(standard::hyperbolic_plane(), IntMatrix{{1, 1}});
  EXPECT_EQ(data.a_n.q(data.n_generator_images[0]), Rational(1, 2));
  EXPECT_EQ(data.a_t.q(data.t_generator_images[0]), Rational(3, 2));
  const auto trivial = anti_isometry_check(glue_of(direct_sum(standard::rank_one(2), standard::rank_one(4)), IntMatrix{{1, 0}}));
  EXPECT_TRUE(trivial.holds);
  EXPECT_EQ(trivial.checked, 1u);
}

TEST(GluingIdentity, Examples) {
  const auto id = gluing_order_identity(glue_of(standard::hyperbolic_plane(), IntMatrix{{1, 1}}));
  EXPECT_EQ(id.disc_n, 2);
  EXPECT_EQ(id.disc_t, 2);
  EXPECT_EQ(id.disc_h, 1);
  EXPECT_EQ(id.order, 2);
  EXPECT_TRUE(id.holds);

  const auto ns = gluing_order_identity(glue_of(standard::ns_extended(3), IntMatrix{{0, 1, -2}}));
  EXPECT_EQ(ns.disc_n, 4);
  EXPECT_EQ(ns.disc_t, 4);
  EXPECT_EQ(ns.disc_h, 4);
  EXPECT_EQ(ns.order, 2);
  EXPECT_TRUE(ns.holds);
}

TEST(Overlattice, GluesPlusTwoAndMinusTwo) {
  const Lattice n = standard::rank_one(2), t = standard::rank_one(-2);
  const auto h = overlattice_reconstruct(n, t, {{IntVector{1}, IntVector{1}}});
  EXPECT_EQ(h.index, 2);
  EXPECT_EQ(h.lattice.determinant(), -1);
  EXPECT_EQ(h.lattice.rank(), 2u);
}

TEST(Overlattice, TrivialGlueIsDirectSum) {
  const Lattice n = standard::rank_one(2), t = standard::rank_one(4);
  const auto h = overlattice_reconstruct(n, t, {});
  EXPECT_EQ(h.index, 1);
  EXPECT_EQ(h.lattice.gram(), (IntMatrix{{2, 0}, {0, 4}}));
}

TEST(Overlattice, RejectsBadGlue) {
  const Lattice n = standard::rank_one(2), t = standard::rank_one(2);
  // q = 1/2 + 1/2 = 1, not 0 mod 2
  EXPECT_THROW(overlattice_reconstruct(n, t, {{IntVector{1}, IntVector{1}}}), glue_error);
  EXPECT_THROW(overlattice_reconstruct(n, t, {{IntVector{1, 0}, IntVector{1}}}), glue_error);
  // a non-injective pairing: 1 ↦ 0
  const Lattice m = standard::rank_one(-2);
  EXPECT_THROW(overlattice_reconstruct(n, m, {{IntVector{1}, IntVector{0}}}), glue_error);
}

TEST(Overlattice, RoundTripSmallExamples) {
  const Lattice h = direct_sum(standard::hyperbolic_plane(), standard::rank_one(4));
  for (const IntMatrix& b : {IntMatrix{{1, 1, 0}}, IntMatrix{{1, 1, 1}}, IntMatrix{{1, 2, 1}, {0, 0, 1}}}) {
    const auto data = glue_of(h, b);
    const auto rebuilt = reconstruct_from(data);
    EXPECT_EQ(rebuilt.index, data.order());
    EXPECT_EQ(rebuilt.lattice.discriminant(), h.discriminant());
    const auto c = round_trip_witness(data, rebuilt);
    ASSERT_TRUE(c.has_value()) << b;
    EXPECT_EQ(*c * rebuilt.lattice.gram() * c->transpose(), h.gram());
  }
}

TEST(Overlattice, RoundTripOnRandomInstances) {
  oracle::FuzzConfig cfg;
  cfg.seed = 77;
  for (std::size_t t = 0; t < 150; ++t) {
    const auto inst = oracle::make_instance(cfg, t, t % 2 ? oracle::Family::general : oracle::Family::unimodular);
    const auto data = gluing_group(inst.h, inst.n);
    const auto rebuilt = reconstruct_from(data);
    ASSERT_EQ(rebuilt.index, data.order());
    ASSERT_TRUE(round_trip_witness(data, rebuilt).has_value()) << inst.h.gram() << inst.n.basis();
  }
}
