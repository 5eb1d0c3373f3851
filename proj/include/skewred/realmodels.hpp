#pragma once

#include "skewred/hermforms.hpp"

#include <Eigen/Dense>
#include <complex>

namespace skewred {

using CMat = Eigen::MatrixXcd;
// element of one real component of D_R: 2x2 complex (type III, the
// quaternions sit inside M_2(C)) or dxd complex (type IV)
using CompVec = std::vector<CMat>; // vector in one component of V_R, m blocks
using DRealElem = std::vector<CMat>; // element of D_R, e components

// Numeric model of D_R = H^e or M_d(C)^e with the canonical involution.
class RealModel {
public:
  static RealModel build(AlgPtr alg); // throws "model unavailable"

  const AlgPtr &algebra() const { return alg_; }
  int comps() const { return e_; }
  int bdim() const { return bdim_; } // matrix size of one component

  CMat component(const AlgElement &a, int comp) const;
  DRealElem alpha(const AlgElement &a) const;
  AlgElement alpha_inv(const DRealElem &v) const; // least-squares pullback
  double residual() const { return residual_; }

  // |x|_D evaluated on a real-model element
  static double dreal_norm(AlbertType type, const DRealElem &v);

private:
  AlgPtr alg_;
  int e_ = 0, bdim_ = 0;
  double residual_ = 0;
  // per component, images of the algebra basis
  std::vector<std::vector<CMat>> basis_img_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pullback_;
};

using Signature = std::vector<int>;

// e x m array of d-vectors with entries +1/-1 standing for +-i.
struct SignMatrix {
  int d = 1, e = 1, m = 1;
  std::vector<std::vector<std::vector<int>>> eps; // [comp][j][l]
  int plus_count(int comp) const;
};

// r_i = #(eigenvalues with positive imaginary part) of the component Gram
Signature signature_of(const SkewForm &form, const RealModel &model);

// psi_comp(x, y) on one real component
CMat comp_eval(const SkewForm &form, const RealModel &model, int comp,
               const CompVec &x, const CompVec &y);

struct Normalization {
  std::vector<DRealElem> s; // per basis vector
  SignMatrix sign;
};

// scalars s_i with s_i^{-1} v_i an alpha(eps)-unitary basis;
// |s_i|_D <= (2ke)^{1/4} |psi(v_i,v_i)|_D^{1/2}
Normalization alpha_eps_normalize(const SkewForm &form,
                                  const std::vector<std::vector<Rat>> &weak_basis,
                                  const RealModel &model);

// smallest t with n + t*m positive definite, plus margin 1
double posdef_shift(const CMat &n, const CMat &m);

// z in one component with psi_comp(z,z) invertible, given psi_comp(x,y) = I
CompVec invertible_value(const SkewForm &form, const RealModel &model,
                         int comp, const CompVec &x, const CompVec &y);

struct SympRBasis {
  // per component: the normalized D_0-basis vectors
  std::vector<std::vector<CompVec>> vectors;
  std::vector<CMat> aunits; // orthonormal units a_r of one component
  Eigen::MatrixXd gram;          // Trd o psi on the flat basis {a_r v_j}
  // pairs (r, r', sign): gram[r][r'] = sign, gram[r'][r] = -sign, rest 0
  std::vector<std::array<int, 3>> pairs;
  SignMatrix sign;
};

SympRBasis symplectic_rbasis(const SkewForm &form, const RealModel &model,
                             const SignMatrix &sign);

// Exact rational representation of D_0 = M_d(Q(i))^e or (Hamilton)^e in
// M_{2g}(Q), commuting with the block symplectic matrix j.
struct Iota0 {
  int g = 0;
  int k = 0; // dim_Q of one component of D_0
  std::vector<QMat> images; // per Q-basis generator of D_0
  QMat j;
  // structure constants: images follow generator order
  // IV: ((p*d+q)*2+c) + comp*2d^2, c=0 -> E_pq, c=1 -> i E_pq
  // III: u + comp*4, units 1,i,j,k
};

Iota0 iota0_embed(AlbertType type, int d, int e, int m, const Signature &sig);

} // namespace skewred
