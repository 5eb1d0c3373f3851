#pragma once

#include "skewred/numberfield.hpp"

namespace skewred {

// Order in a number field: full-rank Z-lattice closed under multiplication
// and containing 1, stored in power-basis coordinates.
class NFOrder {
public:
  NFOrder(NFPtr field, QLattice lattice);

  const NFPtr &field() const { return field_; }
  const QLattice &lattice() const { return lattice_; }

  bool contains(const NFElement &x) const { return lattice_.contains(x); }

  // |disc| of the trace form Tr(b_i b_j) on the basis.
  Int disc_abs() const;

private:
  NFPtr field_;
  QLattice lattice_;
};

// Ideal given by a Z-basis, stable under multiplication by the order.
class NFIdeal {
public:
  NFIdeal(std::shared_ptr<const NFOrder> order, QLattice lattice);

  const std::shared_ptr<const NFOrder> &order() const { return order_; }
  const QLattice &lattice() const { return lattice_; }

  static NFIdeal principal(std::shared_ptr<const NFOrder> order,
                           const NFElement &g);

private:
  std::shared_ptr<const NFOrder> order_;
  QLattice lattice_;
};

using NFOrderPtr = std::shared_ptr<const NFOrder>;

// [order : ideal], a positive integer; requires the ideal to be full rank.
Int ideal_norm(const NFOrder &order, const NFIdeal &ideal);

// Largest ideal of `maximal` contained in `suborder`.
NFIdeal conductor(const NFOrder &suborder, NFOrderPtr maximal);

// Maximal order for fields of degree <= 2.
NFOrderPtr maximal_order(NFPtr field);

// covol(I*M)/covol(M) for a torsion-free module M of rank n over the
// order, M given as a lattice in coordinates of F^n (n * degree rationals).
// Asserts the ratio equals Nm(I)^n; throws "GCI hypothesis violated" when
// the equality fails (non-invertible ideal over a non-maximal order).
Rat scaled_covolume(const NFIdeal &ideal, const QLattice &module, int rank_n);

// The sublattice I*M itself.
QLattice ideal_module_product(const NFIdeal &ideal, const QLattice &module,
                              int rank_n);

} // namespace skewred
