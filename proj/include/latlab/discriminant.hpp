#pragma once

#include "latlab/errors.hpp"
#include "latlab/integer.hpp"
#include "latlab/lattice.hpp"
#include "latlab/linalg.hpp"
#include "latlab/matrix.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace latlab {

// Invokes fn on every residue vector of ⊕ ℤ/d_i in mixed-radix order,
// starting at zero. Throws budget_error if the group has more than `budget`
// elements.
inline void for_each_residue(const IntVector& factors, const std::function<void(const IntVector&)>& fn,
                             const Integer& budget = 1000000) {
  Integer total = 1;
  for (const auto& d : factors) total *= d;
  if (total > budget) throw budget_error("group of order " + total.str() + " exceeds enumeration budget");
  IntVector cur(factors.size(), Integer(0));
  for (;;) {
    fn(cur);
    std::size_t i = 0;
    for (; i < cur.size(); ++i) {
      if (++cur[i] < factors[i]) break;
      cur[i] = 0;
    }
    if (i == cur.size()) return;
  }
}

// Order of the subgroup of ⊕ ℤ/d_i generated by the given residue vectors.
inline Integer subgroup_order(const IntVector& factors, const std::vector<IntVector>& gens) {
  const std::size_t k = factors.size();
  Integer total = 1;
  for (const auto& d : factors) total *= d;
  if (k == 0) return 1;
  IntMatrix rel(gens.size() + k, k);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) rel(i, j) = gens[i][j];
  for (std::size_t j = 0; j < k; ++j) rel(gens.size() + j, j) = factors[j];
  Integer quotient = 1;
  for (const auto& d : snf(rel).diagonal()) quotient *= d;
  return total / quotient;
}

// Discriminant group A_L = L*/L with its quadratic form q: A_L → ℚ/2ℤ.
//
// Elements are residue vectors with respect to the generators g_i = V·e_i / d_i,
// where U·G·V = D is the Smith form of the Gram matrix and d_i ranges over the
// nonunit diagonal entries. A functional f ∈ L* = Hom(L, ℤ) (dual coordinates)
// has class (U·f)_i mod d_i.
class FiniteQuadraticModule {
 public:
  explicit FiniteQuadraticModule(const Lattice& l) : gram_(l.gram()) {
    const auto s = snf(gram_);
    const std::size_t n = gram_.rows();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
      if (s.D(i, i) != 1) keep.push_back(i);
    class_map_ = IntMatrix(keep.size(), n);
    for (std::size_t a = 0; a < keep.size(); ++a) {
      const std::size_t i = keep[a];
      factors_.push_back(s.D(i, i));
      RatVector g(n);
      for (std::size_t r = 0; r < n; ++r) g[r] = Rational(s.V(r, i), s.D(i, i));
      generators_.push_back(std::move(g));
      for (std::size_t c = 0; c < n; ++c) class_map_(a, c) = s.U(i, c);
    }
    const std::size_t k = factors_.size();
    bilinear_ = RatMatrix(k, k);
    for (std::size_t a = 0; a < k; ++a) {
      q_values_.push_back(rational_mod(l.pair(generators_[a], generators_[a]), 2));
      for (std::size_t b = 0; b < k; ++b) bilinear_(a, b) = rational_mod(l.pair(generators_[a], generators_[b]), 1);
    }
  }

  const IntVector& invariant_factors() const { return factors_; }
  std::size_t num_generators() const { return factors_.size(); }
  Integer order() const {
    Integer o = 1;
    for (const auto& d : factors_) o *= d;
    return o;
  }
  bool is_trivial() const { return factors_.empty(); }

  // Representatives in L* ⊂ L⊗ℚ (lattice coordinates).
  const std::vector<RatVector>& generators() const { return generators_; }
  // q(g_i) in [0, 2).
  const std::vector<Rational>& q_values() const { return q_values_; }
  // b(g_i, g_j) in [0, 1).
  const RatMatrix& bilinear_values() const { return bilinear_; }
  const IntMatrix& gram() const { return gram_; }

  IntVector normalize(IntVector a) const {
    check_residues(a);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = floor_mod(a[i], factors_[i]);
    return a;
  }

  IntVector add(const IntVector& a, const IntVector& b) const {
    check_residues(a);
    check_residues(b);
    IntVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = floor_mod(a[i] + b[i], factors_[i]);
    return c;
  }

  IntVector scale(const IntVector& a, const Integer& k) const {
    IntVector c = a;
    for (auto& x : c) x *= k;
    return normalize(c);
  }

  bool is_zero(const IntVector& a) const {
    const auto n = normalize(a);
    for (const auto& x : n)
      if (x != 0) return false;
    return true;
  }

  // Class of a functional given by its values on the basis of L.
  IntVector classify_functional(const IntVector& f) const {
    if (f.size() != gram_.rows()) throw dimension_error("functional has wrong length");
    return normalize(class_map_ * f);
  }

  // Class of y ∈ L* given in lattice coordinates; domain_error if y ∉ L*.
  IntVector classify(const RatVector& y) const {
    const auto f = to_integer(to_rational(gram_) * y);
    if (!f) throw domain_error("vector is not in the dual lattice");
    return classify_functional(*f);
  }

  RatVector lift(const IntVector& a) const {
    check_residues(a);
    RatVector y(gram_.rows(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t r = 0; r < y.size(); ++r) y[r] += Rational(a[i]) * generators_[i][r];
    return y;
  }

  // q of a dual vector, in [0, 2).
  Rational q_of(const RatVector& y) const {
    if (!to_integer(to_rational(gram_) * y)) throw domain_error("vector is not in the dual lattice");
    return rational_mod(form(y, y), 2);
  }

  Rational q(const IntVector& a) const { return rational_mod(form(lift(a), lift(a)), 2); }

  // b(a, b) in [0, 1).
  Rational b(const IntVector& a, const IntVector& c) const { return rational_mod(form(lift(a), lift(c)), 1); }

  // Additive order of the class a.
  Integer element_order(const IntVector& a) const {
    const auto n = normalize(a);
    Integer o = 1;
    for (std::size_t i = 0; i < n.size(); ++i) o = lcm(o, factors_[i] / gcd(n[i], factors_[i]));
    return o;
  }

  Integer subgroup_order(const std::vector<IntVector>& gens) const { return latlab::subgroup_order(factors_, gens); }

 private:
  void check_residues(const IntVector& a) const {
    if (a.size() != factors_.size()) throw dimension_error("residue vector has wrong length");
  }

  Rational form(const RatVector& x, const RatVector& y) const {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * Rational(gram_(i, j)) * y[j];
    }
    return s;
  }

  IntMatrix gram_;
  IntVector factors_;
  std::vector<RatVector> generators_;
  IntMatrix class_map_;
  std::vector<Rational> q_values_;
  RatMatrix bilinear_;
};

inline FiniteQuadraticModule discriminant_module(const Lattice& l) { return FiniteQuadraticModule(l); }

}  // namespace latlab
