#pragma once

#include "latlab/errors.hpp"
#include "latlab/integer.hpp"
#include "latlab/linalg.hpp"
#include "latlab/matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

namespace latlab {

// Even nondegenerate integral lattice, given by its Gram matrix in a fixed basis.
class Lattice {
 public:
  Lattice() : gram_(0, 0), det_(1) {}

  // Throws shape_error (not symmetric), evenness_error (odd diagonal) or
  // degeneracy_error (singular Gram).
  explicit Lattice(IntMatrix gram, std::optional<std::string> label = std::nullopt)
      : gram_(std::move(gram)), label_(std::move(label)) {
    if (!gram_.is_square()) throw shape_error("Gram matrix is not square");
    if (!gram_.is_symmetric()) throw shape_error("Gram matrix is not symmetric");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
      if (gram_(i, i) % 2 != 0) throw evenness_error("Gram matrix has an odd diagonal entry at " + std::to_string(i));
    det_ = det_exact(gram_);
    if (det_ == 0) throw degeneracy_error("Gram matrix is singular");
  }

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::optional<std::string>& label() const { return label_; }
  Lattice with_label(std::string label) const {
    Lattice l = *this;
    l.label_ = std::move(label);
    return l;
  }

  // Signed determinant of the Gram matrix.
  const Integer& determinant() const { return det_; }
  // |A_L| = |det|.
  Integer discriminant() const { return abs(det_); }
  bool is_unimodular() const { return discriminant() == 1; }

  Integer pair(const IntVector& x, const IntVector& y) const {
    check_vector(x);
    check_vector(y);
    return dot(x, gram_ * y);
  }
  Integer square(const IntVector& x) const { return pair(x, x); }

  // ℚ-extension of the form.
  Rational pair(const RatVector& x, const RatVector& y) const {
    if (x.size() != rank() || y.size() != rank()) throw dimension_error("vector length does not match lattice rank");
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) s += x[i] * Rational(gram_(i, j)) * y[j];
    return s;
  }

  void check_vector(const IntVector& x) const {
    if (x.size() != rank())
      throw dimension_error("vector of length " + std::to_string(x.size()) + " in a lattice of rank " +
                            std::to_string(rank()));
  }

  bool operator==(const Lattice& other) const { return gram_ == other.gram_; }

 private:
  IntMatrix gram_;
  std::optional<std::string> label_;
  Integer det_;
};

inline Lattice make_lattice(IntMatrix gram, std::optional<std::string> label = std::nullopt) {
  return Lattice(std::move(gram), std::move(label));
}

inline Lattice direct_sum(const Lattice& a, const Lattice& b) {
  std::optional<std::string> label;
  if (a.label() && b.label()) label = *a.label() + " + " + *b.label();
  return Lattice(block_diagonal(a.gram(), b.gram()), label);
}

inline Lattice direct_sum_power(const Lattice& a, std::size_t copies) {
  Lattice out;
  for (std::size_t i = 0; i < copies; ++i) out = (i == 0) ? a : direct_sum(out, a);
  return out;
}

enum class Twist : int { plus = 1, minus = -1 };

// L(-1) for Twist::minus; identity for Twist::plus.
inline Lattice twist(const Lattice& l, Twist sign) {
  if (sign == Twist::plus) return l;
  std::optional<std::string> label;
  if (l.label()) label = *l.label() + "(-1)";
  return Lattice(-l.gram(), label);
}

// gcd of x·y over y ∈ L, i.e. gcd of the entries of gram·x.
inline Integer divisibility(const Lattice& l, const IntVector& x) {
  l.check_vector(x);
  bool nonzero = false;
  for (const auto& c : x) nonzero = nonzero || c != 0;
  if (!nonzero) throw domain_error("divisibility of the zero vector");
  return gcd(l.gram() * x);
}

inline bool is_primitive_vector(const IntVector& x) { return gcd(x) == 1; }

}  // namespace latlab
