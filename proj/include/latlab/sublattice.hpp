#pragma once

#include "latlab/errors.hpp"
#include "latlab/integer.hpp"
#include "latlab/lattice.hpp"
#include "latlab/linalg.hpp"
#include "latlab/matrix.hpp"

#include <cstddef>
#include <optional>
#include <utility>

namespace latlab {

// A sublattice N ⊂ L, given by the coordinates of a basis of N (rows) in the
// basis of L. The rows must be linearly independent; the induced form may be
// degenerate (as_lattice() rejects that case).
class Sublattice {
 public:
  Sublattice(Lattice ambient, IntMatrix basis) : ambient_(std::move(ambient)), basis_(std::move(basis)) {
    if (basis_.rows() == 0) basis_ = IntMatrix(0, ambient_.rank());
    if (basis_.cols() != ambient_.rank())
      throw dimension_error("sublattice basis has " + std::to_string(basis_.cols()) + " columns, ambient rank is " +
                            std::to_string(ambient_.rank()));
    if (latlab::rank(basis_) != basis_.rows()) throw dimension_error("sublattice basis rows are linearly dependent");
  }

  const Lattice& ambient() const { return ambient_; }
  const IntMatrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.rows(); }

  IntMatrix gram() const { return basis_ * ambient_.gram() * basis_.transpose(); }

  // The sublattice as an abstract lattice; degeneracy_error if the induced form is singular.
  Lattice as_lattice() const { return Lattice(gram()); }

  bool is_nondegenerate() const { return det_exact(gram()) != 0; }

 private:
  Lattice ambient_;
  IntMatrix basis_;
};

inline Sublattice whole_lattice(const Lattice& l) { return Sublattice(l, IntMatrix::identity(l.rank())); }

inline Sublattice span_of(const Lattice& l, const IntVector& v) {
  IntMatrix b(1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) b(0, j) = v[j];
  return Sublattice(l, b);
}

// True iff the quotient L/N is torsion-free, i.e. all elementary divisors of
// the basis matrix are 1.
inline bool is_primitive(const Sublattice& s) {
  for (const auto& d : snf(s.basis()).diagonal())
    if (d != 0 && d != 1) return false;
  return true;
}

// Smallest primitive sublattice containing s: (ℚ·N) ∩ L, in Hermite form.
inline Sublattice saturation(const Sublattice& s) {
  const std::size_t n = s.ambient().rank();
  if (s.rank() == 0) return s;
  // Right kernel of the basis, then its left annihilator.
  const IntMatrix right_kernel = kernel_basis(s.basis().transpose());
  if (right_kernel.rows() == 0) return Sublattice(s.ambient(), IntMatrix::identity(n));
  return Sublattice(s.ambient(), kernel_basis(right_kernel.transpose()));
}

// N⊥ = {x ∈ L : x·y = 0 for all y ∈ N}; always primitive.
inline Sublattice orthogonal_complement(const Sublattice& s) {
  const std::size_t n = s.ambient().rank();
  if (s.rank() == 0) return Sublattice(s.ambient(), IntMatrix::identity(n));
  return Sublattice(s.ambient(), kernel_basis(s.ambient().gram() * s.basis().transpose()));
}

// True iff every basis row of inner lies in the ℤ-span of outer.
inline bool contains(const Sublattice& outer, const Sublattice& inner) {
  if (!(outer.ambient() == inner.ambient())) throw containment_error("sublattices live in different ambient lattices");
  if (inner.rank() == 0) return true;
  if (outer.rank() == 0) return false;
  return integer_coordinates(inner.basis(), outer.basis()).has_value();
}

// [outer : inner] for inner ⊂ outer. nullopt signals infinite index (rank
// mismatch). containment_error if inner ⊄ outer.
inline std::optional<Integer> sublattice_index(const Sublattice& inner, const Sublattice& outer) {
  if (!(outer.ambient() == inner.ambient())) throw containment_error("sublattices live in different ambient lattices");
  if (inner.rank() != outer.rank()) {
    if (!contains(outer, inner)) throw containment_error("inner sublattice is not contained in outer");
    return std::nullopt;
  }
  if (inner.rank() == 0) return Integer(1);
  const auto c = integer_coordinates(inner.basis(), outer.basis());
  if (!c) throw containment_error("inner sublattice is not contained in outer");
  const Integer index = abs(det_exact(*c));
  // Cross-check against the Gram determinant ratio when both forms are nondegenerate.
  const Integer di = det_exact(inner.gram());
  const Integer dout = det_exact(outer.gram());
  if (dout != 0) check_invariant(di == index * index * dout, "sublattice_index: det ratio is not the squared index");
  return index;
}

// N ⊕ M as a sublattice (rows of both bases).
inline Sublattice internal_sum(const Sublattice& a, const Sublattice& b) {
  if (!(a.ambient() == b.ambient())) throw containment_error("sublattices live in different ambient lattices");
  return Sublattice(a.ambient(), vstack(a.basis(), b.basis()));
}

}  // namespace latlab
