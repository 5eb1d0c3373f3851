#pragma once

#include "skewred/linalg.hpp"
#include "skewred/poly.hpp"

#include <memory>

namespace skewred {

// Element of a number field in the power basis 1, x, ..., x^{deg-1}.
using NFElement = std::vector<Rat>;

class NumberField {
public:
  // Monic integer minimal polynomial, constant term first.
  static std::shared_ptr<const NumberField> create(std::vector<Int> min_poly);
  static std::shared_ptr<const NumberField> rationals();

  const std::vector<Int> &min_poly() const { return min_poly_; }
  const QPoly &min_poly_q() const { return f_; }
  int degree() const { return deg_; }
  bool is_totally_real() const { return totally_real_; }
  bool is_cm() const { return cm_; }
  // roots: real ascending first, then conjugate pairs (positive imag first)
  const std::vector<std::complex<double>> &roots() const { return roots_; }

  // CM data: polynomial giving complex conjugation, the maximal totally
  // real subfield F0, a generator of F0 as an element here, and the
  // embedding matrix F0 -> F on power bases (degree x f0->degree columns).
  const QPoly &conj_poly() const;
  std::shared_ptr<const NumberField> fixed_field() const;
  const NFElement &fixed_field_generator() const;
  const QMat &fixed_field_embedding() const;

  NFElement zero() const { return NFElement(deg_); }
  NFElement one() const;
  NFElement gen() const; // the class of x
  NFElement from_rat(const Rat &c) const;

  NFElement add(const NFElement &a, const NFElement &b) const;
  NFElement sub(const NFElement &a, const NFElement &b) const;
  NFElement neg(const NFElement &a) const;
  NFElement mul(const NFElement &a, const NFElement &b) const;
  NFElement inv(const NFElement &a) const;
  NFElement conj(const NFElement &a) const; // CM fields only
  bool is_zero(const NFElement &a) const;
  bool is_rational(const NFElement &a) const;

  // Multiplication-by-a matrix acting on power-basis column vectors.
  QMat mult_matrix(const NFElement &a) const;

  std::complex<double> embed(const NFElement &a, int which_root) const;

private:
  NumberField() = default;

  std::vector<Int> min_poly_;
  QPoly f_;
  int deg_ = 0;
  bool totally_real_ = false;
  bool cm_ = false;
  std::vector<std::complex<double>> roots_;
  QPoly conj_poly_;
  std::shared_ptr<const NumberField> f0_;
  NFElement f0_gen_;
  QMat f0_embed_;
};

using NFPtr = std::shared_ptr<const NumberField>;

// (Nm(x), Tr(x)) via the regular representation.
std::pair<Rat, Rat> nf_norm_trace(const NumberField &field, const NFElement &x);

} // namespace skewred
