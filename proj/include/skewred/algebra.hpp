#pragma once

#include "skewred/nforder.hpp"

namespace skewred {

enum class AlbertType { III, IV };
enum class AlgKind { Quaternion, MatrixCM, Generic };

using AlgElement = std::vector<Rat>;

// Semisimple Q-algebra with positive involution. Coordinates:
//  - quaternion over F0 (deg e): index u*e + q is x^q * unit_u, units 1,i,j,k
//  - matrix algebra M_d(F) (deg 2e):  index (r*d + c)*2e + p is x^p * E_{rc}
//  - generic: raw structure constants.
class Algebra {
public:
  static std::shared_ptr<const Algebra>
  make_quaternion(NFPtr f0, const NFElement &a, const NFElement &b);
  static std::shared_ptr<const Algebra> make_matrix_cm(NFPtr f, int d);
  static std::shared_ptr<const Algebra>
  make_generic(std::vector<QMat> left_mult_of_basis, QMat involution,
               AlbertType type, int d, int e);

  AlgKind kind() const { return kind_; }
  AlbertType albert_type() const { return type_; }
  int d() const { return d_; }
  int e() const { return e_; }
  int dimq() const { return dimq_; }
  // F (type IV) or F0 (type III)
  const NFPtr &center_field() const { return center_; }
  // totally real F0 for both types
  NFPtr f0_field() const;
  // quaternion parameters i^2, j^2
  const NFElement &quat_a() const { return qa_; }
  const NFElement &quat_b() const { return qb_; }

  AlgElement zero() const { return AlgElement(dimq_); }
  AlgElement one() const;
  AlgElement basis_elem(int i) const;
  bool is_zero(const AlgElement &x) const;

  AlgElement add(const AlgElement &a, const AlgElement &b) const;
  AlgElement sub(const AlgElement &a, const AlgElement &b) const;
  AlgElement neg(const AlgElement &a) const;
  AlgElement scale(const AlgElement &a, const Rat &c) const;
  AlgElement mul(const AlgElement &a, const AlgElement &b) const;
  AlgElement dag(const AlgElement &a) const;
  AlgElement inv(const AlgElement &a) const;

  QMat left_mult_matrix(const AlgElement &a) const;

  // center embedding: scalar c -> c * 1  (c in the center field)
  AlgElement from_center(const NFElement &c) const;
  // quaternion scalars from F0; for type IV routes through F
  AlgElement from_f0(const NFElement &c) const;
  AlgElement from_rat(const Rat &c) const;
  // coordinates of F0 * 1 inside D (dimq x [F0:Q] matrix)
  QMat f0_embedding_matrix() const;

  Rat trd_q(const AlgElement &a) const;  // Trd_{D/Q}
  Rat tr_q(const AlgElement &a) const;   // Tr_{D/Q} = d * Trd
  Rat nrd_q(const AlgElement &a) const;  // Nrd_{D/Q}, signed, exact
  Rat dnorm2(const AlgElement &a) const; // |a|_D^2 = Trd_{D/Q}(a a†)
  double dnorm(const AlgElement &a) const;

  // a = plus + minus with plus† = plus, minus† = -minus
  std::pair<AlgElement, AlgElement> antisym_split(const AlgElement &a) const;
  // basis (rows) of D^- = {a : a† = -a} as a lattice over Q
  QMat antisym_basis() const;

  // matrix-CM entry access (F-elements)
  NFElement mat_entry(const AlgElement &a, int r, int c) const;
  void set_mat_entry(AlgElement &a, int r, int c, const NFElement &v) const;
  // quaternion component access (F0-elements, u in {0,1,2,3})
  NFElement quat_comp(const AlgElement &a, int u) const;
  void set_quat_comp(AlgElement &a, int u, const NFElement &v) const;

private:
  Algebra() = default;
  void finalize_checks() const;

  AlgKind kind_ = AlgKind::Generic;
  AlbertType type_ = AlbertType::IV;
  int d_ = 1, e_ = 1, dimq_ = 0;
  NFPtr center_;
  NFElement qa_, qb_;
  std::vector<QMat> sc_; // generic only: left multiplication by e_i
  QMat inv_mat_;         // generic only: column j = e_j†
};

using AlgPtr = std::shared_ptr<const Algebra>;

// (Trd(x), |Nrd(x)|) as in the published API shape.
std::pair<Rat, Rat> reduced_trace_norm(const Algebra &alg, const AlgElement &x);

class AlgOrder {
public:
  AlgOrder(AlgPtr alg, QLattice lattice);

  const AlgPtr &algebra() const { return alg_; }
  const QLattice &lattice() const { return lattice_; }
  bool contains(const AlgElement &x) const { return lattice_.contains(x); }

private:
  AlgPtr alg_;
  QLattice lattice_;
};

using AlgOrderPtr = std::shared_ptr<const AlgOrder>;

// |disc R| = |det Tr_{D/Q}(b_i b_j†)|; asserts the lower bound and the
// covolume identity.
Int order_disc(const AlgOrder &order);

// R* = {a : Trd_{D/Q}(a b) in Z for all b in R}
QLattice dual_lattice(const AlgOrder &order);

// Stab_D(L) for a full lattice L < D^m (coordinates: m blocks of dimq)
AlgOrderPtr stabilizer_order(AlgPtr alg, const QLattice &lattice);

// smallest divisor eta of disc_l with eta * R† contained in R
Int eta_for(const AlgOrder &order, const Int &disc_l);

// ascending divisors of n (trial division; large leftover kept as an atom)
std::vector<Int> sorted_divisors(const Int &n);

// R cap F0 as an order of the totally real field (degree <= 2 here)
NFOrderPtr order_intersect_f0(const AlgOrder &R);

// S = O_{F0} R, the O_{F0}-saturation of R
AlgOrderPtr s_order(const AlgOrder &R);

// largest ideal I of O_{F0} with I * S^* contained in S
NFIdeal stable_ideal(const AlgOrder &S);

// image of an F0-lattice under the embedding F0 -> D
QLattice f0_lattice_in_alg(const Algebra &alg, const QLattice &f0_lat);

// product lattice A*B generated by pairwise products inside D
QLattice lattice_product(const Algebra &alg, const QLattice &a,
                         const QLattice &b);

} // namespace skewred
