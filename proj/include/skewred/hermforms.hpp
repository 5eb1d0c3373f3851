#pragma once

#include "skewred/algebra.hpp"

namespace skewred {

// Left D-module structure on Q^n: action matrices for each algebra basis
// element. The standard structure is block-diagonal left multiplication
// on D^m.
struct DModule {
  AlgPtr alg;
  int m = 0; // D-rank when free; n = ambient dimension
  int n = 0;
  std::vector<QMat> action; // per algebra basis element

  static DModule standard(AlgPtr alg, int m);
  static DModule from_action(AlgPtr alg, std::vector<QMat> action, int m);

  std::vector<Rat> act(const AlgElement &a, const std::vector<Rat> &x) const;
};

// Skew-Hermitian form on V = D^m given by its Gram array over the
// standard D-basis: gram[j][i] = -gram[i][j]†.
class SkewForm {
public:
  SkewForm(AlgPtr alg, std::vector<std::vector<AlgElement>> gram);

  const AlgPtr &algebra() const { return alg_; }
  int m() const { return m_; }
  int qdim() const { return m_ * alg_->dimq(); }
  const AlgElement &gram(int i, int j) const { return gram_[i][j]; }

  // psi(x, y) for x, y in Q^{m * dimq} coordinates
  AlgElement eval(const std::vector<Rat> &x, const std::vector<Rat> &y) const;

  // a * x (componentwise left multiplication)
  std::vector<Rat> mod_mul(const AlgElement &a, const std::vector<Rat> &x) const;

  // Gram array rewritten on a new D-basis (rows = coordinates of basis)
  SkewForm on_basis(const std::vector<std::vector<Rat>> &basis) const;

private:
  AlgPtr alg_;
  int m_;
  std::vector<std::vector<AlgElement>> gram_;
};

// Compatible symplectic trace form phi = Trd o psi on the induced Q-basis.
QMat trd_form(const SkewForm &form);

// Inverse direction: the unique skew-Hermitian psi with Trd o psi = phi,
// described on the given D-basis of the module. Throws
// "not (D,†)-compatible" when phi fails compatibility.
SkewForm form_from_symplectic(const DModule &module, const QMat &phi,
                              const std::vector<std::vector<Rat>> &d_basis);

// Solve Trd(z b_i†) = vals[i] over the algebra basis.
AlgElement solve_trd_functional(const Algebra &alg,
                                const std::vector<Rat> &vals);

bool is_nondegenerate(const SkewForm &form);

// y with psi(x, y) = target; x must be nonzero and the form nondegenerate.
std::vector<Rat> solve_functional(const SkewForm &form,
                                  const std::vector<Rat> &x,
                                  const AlgElement &target);

// D-basis u_1..u_m of V with psi(u_i, u_j) = 0 for i != j, by exact
// Gram-Schmidt over the division algebra.
std::vector<std::vector<Rat>> unitary_d_basis(const SkewForm &form);

// Positive definite inner product on V used to guide enumeration. The
// Gram matrix is an exact rational snapshot of a floating-point
// construction; all certificate arithmetic downstream treats it as exact.
struct NormModel {
  QMat gram;
  Rat norm2(const std::vector<Rat> &x) const;
  double norm(const std::vector<Rat> &x) const;
  // Gram determinant is covol^2
  Rat covol2() const { return gram.det(); }
};

// Norm adapted to the form: |psi(x,y)|_D <= |x||y| and |ax| <= |a|_D|x|
// up to the built-in slack factor.
NormModel adapted_norm(const SkewForm &form);

// Discriminant of R v_1 + ... + R v_m under the trace form when the
// Gram of the v_i is supported on a single permutation sigma; both sides
// of the permuted-diagonal formula are computed and compared.
Rat disc_weak_diag(const AlgOrder &order, const SkewForm &form,
                   const std::vector<std::vector<Rat>> &basis,
                   const std::vector<int> &sigma);

// Lattice sum R v_1 + ... + R v_m as a lattice in Q^{m dimq}.
QLattice order_span(const AlgOrder &order,
                    const std::vector<std::vector<Rat>> &vectors);

// |disc| of a full lattice under the trace form Trd o psi (Gram det).
Rat form_disc(const SkewForm &form, const QLattice &lattice);

} // namespace skewred
