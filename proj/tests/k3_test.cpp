#include "latlab/k3.hpp"
#include "latlab/oracle.hpp"

#include <gtest/gtest.h>

using namespace latlab;
using k3::K3Config;
using k3::MukaiVector;

namespace {

MukaiVector mv(int r, int d, int s) { return MukaiVector::rank_one(r, d, s); }

k3::ModuliOptions unchecked() { return {false}; }

// |det| of v⊥ ⊂ N(S) from the gluing identity, with |G| counted by brute force:
// disc(v⊥) = |G|²·disc(N(S)) / v².
Integer complement_disc_by_enumeration(const K3Config& cfg, const MukaiVector& v) {
  const Lattice nsx = k3::extended_ns_lattice(cfg);
  const Sublattice line = span_of(nsx, v.coords());
  const Sublattice perp = orthogonal_complement(line);
  const auto o = oracle::glue_oracle(nsx, line.basis(), perp.basis());
  EXPECT_TRUE(o.t_orthogonal && o.t_primitive);
  return o.order * o.order * o.disc_h / k3::mukai_square(cfg, v);
}

}  // namespace

TEST(K3Config, PicardRankOne) {
  const auto cfg = K3Config::picard_rank_one(3);
  EXPECT_EQ(cfg.ns().gram(), (IntMatrix{{4}}));
  EXPECT_EQ(cfg.disc_t(), 4);
  EXPECT_TRUE(cfg.is_picard_rank_one());
  EXPECT_THROW(K3Config::picard_rank_one(1), parameter_error);
}

TEST(K3Config, GeneralRejectsBadGram) {
  EXPECT_THROW(K3Config::general(IntMatrix{{3}}), evenness_error);
  EXPECT_THROW(K3Config::general(IntMatrix{{2, 2}, {2, 2}}), degeneracy_error);
}

TEST(Mukai, PairingAndSquare) {
  const auto cfg = K3Config::picard_rank_one(3);
  EXPECT_EQ(k3::mukai_square(cfg, mv(0, 1, -2)), 4);
  EXPECT_EQ(k3::mukai_square(cfg, mv(1, 0, -1)), 2);
  EXPECT_EQ(k3::mukai_pairing(cfg, mv(1, 0, 0), mv(0, 0, 1)), -1);
  EXPECT_THROW(k3::mukai_square(cfg, MukaiVector{0, {1, 0}, 0}), shape_error);
}

TEST(Mukai, ExtendedNsLattice) {
  const auto cfg = K3Config::picard_rank_one(3);
  EXPECT_EQ(k3::extended_ns_lattice(cfg).gram(), (IntMatrix{{0, 0, -1}, {0, 4, 0}, {-1, 0, 0}}));
  const auto two = K3Config::general(IntMatrix{{2, 1}, {1, -2}});
  EXPECT_EQ(k3::extended_ns_lattice(two).gram(),
            (IntMatrix{{0, 0, 0, -1}, {0, 2, 1, 0}, {0, 1, -2, 0}, {-1, 0, 0, 0}}));
}

TEST(Mukai, Divisibility) {
  for (int g = 2; g <= 30; ++g) {
    const auto cfg = K3Config::picard_rank_one(g);
    EXPECT_EQ(k3::mukai_divisibility(cfg, mv(0, 1, 1 - g)), g - 1);
    EXPECT_EQ(k3::mukai_divisibility(cfg, mv(0, 1, 0)), 2 * g - 2);
    EXPECT_EQ(k3::mukai_divisibility(cfg, mv(1, 0, 0)), 1);
  }
}

TEST(Mukai, Effectiveness) {
  const auto cfg = K3Config::picard_rank_one(2);
  EXPECT_TRUE(k3::is_effective(cfg, mv(1, -5, -3)));
  EXPECT_TRUE(k3::is_effective(cfg, mv(0, 1, -7)));
  EXPECT_FALSE(k3::is_effective(cfg, mv(0, -1, 3)));
  EXPECT_TRUE(k3::is_effective(cfg, mv(0, 0, 1)));
  EXPECT_FALSE(k3::is_effective(cfg, mv(-1, 0, 1)));
}

TEST(ModuliInvariants, GenusThreeExamples) {
  const auto cfg = K3Config::picard_rank_one(3);
  const auto a = k3::moduli_invariants(cfg, mv(0, 1, -2));
  EXPECT_EQ(a.n, 3);
  EXPECT_EQ(a.div_v, 2);
  EXPECT_EQ(a.crs, 2);
  EXPECT_EQ(a.disc_t_x, 4);
  EXPECT_EQ(a.gluing_order, 2);
  EXPECT_EQ(a.disc_ns_x, 4);
  EXPECT_EQ(a.disc_ns_x_complement, 4);
  EXPECT_EQ(a.index_m, 2);
  EXPECT_FALSE(a.fine);

  const auto b = k3::moduli_invariants(cfg, mv(0, 1, 0));
  EXPECT_EQ(b.n, 3);
  EXPECT_EQ(b.div_v, 4);
  EXPECT_EQ(b.gluing_order, 1);
  EXPECT_EQ(b.disc_ns_x, 1);
  EXPECT_EQ(b.index_m, 1);
}

TEST(ModuliInvariants, FineCase) {
  const auto cfg = K3Config::picard_rank_one(2);
  const auto a = k3::moduli_invariants(cfg, mv(1, 0, -1));
  EXPECT_EQ(a.n, 2);
  EXPECT_EQ(a.crs, 1);
  EXPECT_TRUE(a.fine);
  EXPECT_EQ(a.gluing_order, 2);
  // v⊥ = ⟨(1,0,1), (0,1,0)⟩ with Gram diag(-2, 2)
  EXPECT_EQ(a.disc_ns_x, 4);
}

TEST(ModuliInvariants, HigherPicardRank) {
  const auto cfg = K3Config::general(IntMatrix{{2, 3}, {3, 2}});
  EXPECT_EQ(cfg.disc_t(), 5);
  const auto a = k3::moduli_invariants(cfg, MukaiVector{1, {0, 0}, -1});
  EXPECT_EQ(a.crs, 1);
  EXPECT_EQ(a.gluing_order, 5);
  EXPECT_EQ(a.disc_ns_x, 10);
  EXPECT_EQ(a.disc_ns_x, complement_disc_by_enumeration(cfg, MukaiVector{1, {0, 0}, -1}));
}

TEST(ModuliInvariants, Errors) {
  const auto cfg = K3Config::picard_rank_one(3);
  EXPECT_THROW(k3::moduli_invariants(cfg, mv(0, 2, -4)), primitivity_error);
  EXPECT_THROW(k3::moduli_invariants(cfg, mv(0, 0, 0)), domain_error);
  EXPECT_THROW(k3::moduli_invariants(cfg, mv(1, 0, 0)), precondition_error);
  EXPECT_THROW(k3::moduli_invariants(cfg, mv(-1, 0, 1)), precondition_error);
  EXPECT_NO_THROW(k3::moduli_invariants(cfg, mv(-1, 0, 1), unchecked()));
  EXPECT_THROW(k3::moduli_invariants(cfg, MukaiVector{0, {1, 1}, 0}), shape_error);
}

TEST(ModuliInvariants, AgreesWithEnumerationOracle) {
  oracle::Rng rng(2026);
  int checked = 0;
  while (checked < 150) {
    const auto g = rng.uniform(2, 12);
    const auto cfg = K3Config::picard_rank_one(g);
    const MukaiVector v = mv(static_cast<int>(rng.uniform(-6, 6)), static_cast<int>(rng.uniform(-6, 6)),
                             static_cast<int>(rng.uniform(-6, 6)));
    if (gcd(v.coords()) != 1 || k3::mukai_square(cfg, v) < 2) continue;
    const auto inv = k3::moduli_invariants(cfg, v, unchecked());
    ASSERT_EQ(inv.disc_ns_x, complement_disc_by_enumeration(cfg, v)) << "g=" << g;
    ASSERT_EQ(inv.gluing_order * inv.crs, inv.disc_t_x);
    ++checked;
  }
}

TEST(ModuliInvariants, SignAndBaseChangeInvariance) {
  const auto cfg = K3Config::picard_rank_one(4);
  const MukaiVector v = mv(2, 1, -1);
  const auto a = k3::moduli_invariants(cfg, v, unchecked());
  const auto b = k3::moduli_invariants(cfg, -v, unchecked());
  EXPECT_EQ(a.crs, b.crs);
  EXPECT_EQ(a.disc_ns_x, b.disc_ns_x);

  // NS = [[2,1],[1,-2]] and the same lattice in the basis (e1, e1 + e2)
  const IntMatrix gram{{2, 1}, {1, -2}};
  const IntMatrix w{{1, 0}, {1, 1}};
  const auto c1 = K3Config::general(gram);
  const auto c2 = K3Config::general(w * gram * w.transpose());
  // c = (1, 1) in the old basis is 0·e1 + 1·(e1 + e2) in the new one
  const auto x = k3::moduli_invariants(c1, MukaiVector{1, {1, 1}, -1}, unchecked());
  const auto y = k3::moduli_invariants(c2, MukaiVector{1, {0, 1}, -1}, unchecked());
  EXPECT_EQ(x.v_square, y.v_square);
  EXPECT_EQ(x.crs, y.crs);
  EXPECT_EQ(x.gluing_order, y.gluing_order);
  EXPECT_EQ(x.disc_ns_x, y.disc_ns_x);
}

TEST(Isotropic, SurfaceExamples) {
  const auto g2 = K3Config::picard_rank_one(2);
  EXPECT_EQ(k3::surface_disc(g2, mv(1, 1, 1)), 2);
  EXPECT_EQ(k3::isotropic_quotient_disc(g2, mv(1, 1, 1)), 2);
  const auto g5 = K3Config::picard_rank_one(5);
  EXPECT_EQ(k3::mukai_divisibility(g5, mv(2, 1, 2)), 2);
  EXPECT_EQ(k3::surface_disc(g5, mv(2, 1, 2)), 2);
  EXPECT_EQ(k3::isotropic_quotient_disc(g5, mv(2, 1, 2)), 2);
  EXPECT_THROW(k3::surface_disc(g2, mv(1, 0, -1)), precondition_error);
}

TEST(Isotropic, FormulaMatchesQuotientLattice) {
  int checked = 0;
  for (int g = 2; g <= 20; ++g) {
    const auto cfg = K3Config::picard_rank_one(g);
    for (int r = 1; r <= 8; ++r)
      for (int d = -8; d <= 8; ++d) {
        // v² = d²(2g-2) - 2rs = 0
        const Integer num = Integer(d * d) * (2 * g - 2);
        if (num % (2 * r) != 0) continue;
        const MukaiVector v = MukaiVector::rank_one(r, d, num / (2 * r));
        if (gcd(v.coords()) != 1) continue;
        ASSERT_EQ(k3::surface_disc(cfg, v), k3::isotropic_quotient_disc(cfg, v)) << g << " " << r << " " << d;
        ++checked;
      }
  }
  EXPECT_GE(checked, 50);
}

TEST(Obstruction, Verdicts) {
  const auto cfg = K3Config::picard_rank_one(3);
  const auto o = k3::l_equivalence_obstruction(cfg, mv(0, 1, -2), mv(0, 1, 0));
  EXPECT_EQ(o.verdict, k3::Verdict::not_l_equivalent);
  EXPECT_FALSE(o.dimension_mismatch);
  const auto same = k3::l_equivalence_obstruction(cfg, mv(0, 1, -2), mv(0, 1, 2));
  EXPECT_EQ(same.verdict, k3::Verdict::inconclusive);
  const auto dims = k3::l_equivalence_obstruction(cfg, mv(0, 1, -2), mv(1, 0, -1));
  EXPECT_TRUE(dims.dimension_mismatch);
  EXPECT_STREQ(k3::to_string(k3::Verdict::not_l_equivalent), "NOT_L_EQUIVALENT");
  EXPECT_STREQ(k3::to_string(k3::Verdict::inconclusive), "INCONCLUSIVE");
}

TEST(Counterexample, GenusTwo) {
  const auto row = k3::counterexample_row(2);
  EXPECT_EQ(row.v, mv(0, 1, -1));
  EXPECT_EQ(row.u, mv(0, 1, 0));
  EXPECT_EQ(row.crs_v, 1);
  EXPECT_EQ(row.crs_u, 2);
  EXPECT_EQ(row.gluing_order_v, 2);
  EXPECT_EQ(row.gluing_order_u, 1);
  EXPECT_EQ(row.disc_ns_v, 4);
  EXPECT_EQ(row.disc_ns_u, 1);
  EXPECT_EQ(row.verdict, k3::Verdict::not_l_equivalent);
  EXPECT_EQ(row.d_equivalence, "cited");
}

TEST(Counterexample, GenusTen) {
  const auto row = k3::counterexample_row(10);
  EXPECT_EQ(row.crs_v, 9);
  EXPECT_EQ(row.crs_u, 18);
  EXPECT_EQ(row.gluing_order_v, 2);
  EXPECT_EQ(row.gluing_order_u, 1);
  EXPECT_EQ(row.disc_ns_v, 4);
  EXPECT_EQ(row.disc_ns_u, 1);
}

TEST(Counterexample, Ranges) {
  EXPECT_EQ(k3::counterexample_report(2, 5).size(), 4u);
  EXPECT_TRUE(k3::counterexample_report(5, 4).empty());
  EXPECT_THROW(k3::counterexample_report(1, 4), parameter_error);
}
