#pragma once

#include "skewred/hermforms.hpp"

#include <utility>

namespace skewred {

// Exact upper bound for gamma_n^n (Hermite's constant to the n-th power):
// the known values for n <= 8, Mordell/Blichfeldt upper bounds beyond.
Rat hermite_pow(int n);

// lhs^{lhs_exp} <= prod base_i^{exp_i}, decided exactly over Q after
// clearing the exponent denominators. All bases and lhs must be positive
// (lhs = 0 counts as true).
bool power_product_le(const Rat &lhs, const Rat &lhs_exp,
                      const std::vector<std::pair<Rat, Rat>> &rhs);

// All integer vectors v != 0 with v^T G v <= bound, sorted by value then
// lexicographically. Float Cholesky guides the enumeration; membership is
// decided exactly.
std::vector<std::vector<Int>> shortest_vectors(const QMat &gram,
                                               const Rat &bound);

// Lattice L in V = D^m with integral trace form, together with the acting
// order and the involution denominator eta.
struct LatticeInstance {
  AlgPtr alg;
  SkewForm form;
  QLattice lattice; // rows: Z-basis in Q^{m dimq}
  AlgOrderPtr order;
  Int disc_l;
  Int eta;
};

// Validates all invariants; order == nullptr -> stabilizer of L,
// eta <= 0 -> smallest divisor of disc_l that works.
LatticeInstance make_instance(AlgPtr alg, SkewForm form, QLattice lattice,
                              AlgOrderPtr order = nullptr, Int eta = 0);

// The eight bound constants, as (base, exponent) for the multiplicative
// one and exact rational exponents on eta, |disc R|, |disc L|.
struct Constants {
  AlbertType type;
  int d = 0, e = 0, m = 0;
  Int index_mult_base;
  Rat index_mult_exp;
  Rat index_eta, index_R, index_L;
  Int psi_mult_base;
  Rat psi_mult_exp;
  Rat psi_eta, psi_R, psi_L;
};

Constants constants_table(AlbertType type, int d, int e, int m);

// Greedy D-independent successive minima of L under the norm; asserts the
// Minkowski product bound against the norm covolume.
std::vector<std::vector<Rat>> minkowski_dbasis(const LatticeInstance &inst,
                                               const NormModel &norm);

// Lexicographically first (i, j), 0-based, with
//  |w_i||w_j| <= (prod |w_k|)^{2/m}, psi(w_i, w_j) != 0,
//  and psi(w_i, w_i) = 0 whenever i != j.
std::pair<int, int> select_pair(const std::vector<std::vector<Rat>> &w,
                                const SkewForm &form, const NormModel &norm);

// Nonzero antisymmetric omega with omega R* <= R and R* omega <= R,
// shortest vector of the ideal-scaled saturation; the norm bound of the
// construction is asserted.
AlgElement omega_antisym(const AlgOrder &order, const Int &eta);

// From an isotropic w_i paired with w_j, produce (v1, v2) in R w_i + R w_j
// with psi(v1, v2) = 0 and psi(v1, v1) = -psi(v2, v2) both invertible.
std::pair<std::vector<Rat>, std::vector<Rat>>
hyperbolic_split(const LatticeInstance &inst, const std::vector<Rat> &wi,
                 const std::vector<Rat> &wj, const AlgElement &omega);

// Low-rank split-off submodule: tag 'a'/'c' for the rank-1 cases
// (III resp. IV) and 'b'/'d' for the rank-2 cases.
struct PreInduction {
  char tag = 0;
  int r = 0;
  QLattice M;
  std::vector<std::vector<Rat>> vectors;
  Int index = 1; // [M : R v1 + R v2] when r = 2
};

PreInduction pre_induction(const LatticeInstance &inst);

struct ReductionCertificate {
  std::vector<std::vector<Rat>> basis;
  std::vector<std::vector<AlgElement>> pairings;
  Int index;
  Constants bounds;
  Int eta, disc_l, disc_r;
  bool in_lattice = false;
  bool weakly_unitary = false;
  bool index_ok = false;
  bool psi_ok = false;
  std::vector<std::string> notes;
  bool pass() const {
    return in_lattice && weakly_unitary && index_ok && psi_ok;
  }
};

// Inductive construction of a weakly unitary basis inside L with index
// and pairing bounds from the constants table.
ReductionCertificate weakly_unitary_basis(const LatticeInstance &inst);

// End-to-end: stabilizer order, eta from the discriminant, reduction.
ReductionCertificate height_bound_reduce(AlgPtr alg, const SkewForm &form,
                                         const QLattice &lattice);

// Recompute everything a certificate claims from scratch.
bool verify_certificate(const LatticeInstance &inst,
                        const ReductionCertificate &cert);

} // namespace skewred
