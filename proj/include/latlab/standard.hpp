#pragma once

#include "latlab/errors.hpp"
#include "latlab/lattice.hpp"

#include <string>

namespace latlab::standard {

// Hyperbolic plane U.
inline Lattice hyperbolic_plane() { return Lattice(IntMatrix{{0, 1}, {1, 0}}, "U"); }

// Positive-definite E8 (Cartan matrix, Bourbaki labelling: 1-3-4-5-6-7-8 with 2 on 4).
inline Lattice e8() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  const int edges[][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (const auto& e : edges) g(e[0], e[1]) = g(e[1], e[0]) = -1;
  return Lattice(g, "E8");
}

inline Lattice e8_minus() { return twist(e8(), Twist::minus).with_label("E8(-1)"); }

// Rank-one lattice <m>; m even and nonzero.
inline Lattice rank_one(const Integer& m) {
  if (m == 0 || m % 2 != 0) throw parameter_error("<m> needs m even and nonzero, got " + m.str());
  return Lattice(IntMatrix{{m}}, "<" + m.str() + ">");
}

// Λ_K3 = E8(-1)^2 ⊕ U^3.
inline Lattice k3() {
  return direct_sum(direct_sum_power(e8_minus(), 2), direct_sum_power(hyperbolic_plane(), 3)).with_label("K3");
}

// Extended K3 (Mukai) lattice E8(-1)^2 ⊕ U^4.
inline Lattice k3_extended() {
  return direct_sum(direct_sum_power(e8_minus(), 2), direct_sum_power(hyperbolic_plane(), 4)).with_label("K3_extended");
}

// H² of a hyperkähler manifold of K3^[n]-type: Λ_K3 ⊕ <2-2n>, n ≥ 2.
inline Lattice k3n(const Integer& n) {
  if (n < 2) throw parameter_error("K3^[n] lattice needs n >= 2, got " + n.str());
  return direct_sum(k3(), rank_one(2 - 2 * n)).with_label("K3n(" + n.str() + ")");
}

// N(S) = H⁰ ⊕ NS ⊕ H⁴ for a Picard-rank-one K3 of genus g (H² = 2g-2), basis (H⁰, H, H⁴).
inline Lattice ns_extended(const Integer& g) {
  if (g < 2) throw parameter_error("extended NS lattice needs genus g >= 2, got " + g.str());
  return Lattice(IntMatrix{{0, 0, -1}, {0, 2 * g - 2, 0}, {-1, 0, 0}}, "N(S) g=" + g.str());
}

enum class Name { U, E8_minus, A_one, K3, K3_extended, K3n, NS_extended };

// Dispatch by name; `param` is m for A_one, n for K3n, g for NS_extended.
inline Lattice make(Name name, const Integer& param = 0) {
  switch (name) {
    case Name::U: return hyperbolic_plane();
    case Name::E8_minus: return e8_minus();
    case Name::A_one: return rank_one(param);
    case Name::K3: return k3();
    case Name::K3_extended: return k3_extended();
    case Name::K3n: return k3n(param);
    case Name::NS_extended: return ns_extended(param);
  }
  throw parameter_error("unknown standard lattice");
}

}  // namespace latlab::standard
