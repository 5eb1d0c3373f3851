#include "skewred/realmodels.hpp"

#include <random>
#include <stdexcept>

namespace skewred {

namespace {

using Cpx = std::complex<double>;

CMat quat_unit(int u) {
  // H inside M_2(C): 1, i, j, k
  CMat m = CMat::Zero(2, 2);
  switch (u) {
  case 0:
    m(0, 0) = 1;
    m(1, 1) = 1;
    break;
  case 1:
    m(0, 0) = Cpx(0, 1);
    m(1, 1) = Cpx(0, -1);
    break;
  case 2:
    m(0, 1) = 1;
    m(1, 0) = -1;
    break;
  default:
    m(0, 1) = Cpx(0, 1);
    m(1, 0) = Cpx(0, 1);
  }
  return m;
}

double comp_norm2(AlbertType type, const CMat &m) {
  double f = m.squaredNorm();
  return type == AlbertType::IV ? 2 * f : f;
}

double trd_real(AlbertType type, const CMat &m) {
  double t = m.trace().real();
  return type == AlbertType::IV ? 2 * t : t;
}

AlgElement vec_block(const Algebra &alg, const std::vector<Rat> &x, int t) {
  AlgElement a(alg.dimq());
  for (int i = 0; i < alg.dimq(); i++)
    a[i] = x[size_t(t) * alg.dimq() + i];
  return a;
}

} // namespace

RealModel RealModel::build(AlgPtr alg) {
  RealModel m;
  m.alg_ = alg;
  m.e_ = alg->e();
  if (alg->kind() == AlgKind::Quaternion) {
    m.bdim_ = 2;
    const NumberField &f0 = *alg->center_field();
    for (int t = 0; t < m.e_; t++) {
      double root = f0.roots()[t].real();
      double a = alg->quat_a().empty() ? 0 : f0.embed(alg->quat_a(), t).real();
      double b = alg->quat_b().empty() ? 0 : f0.embed(alg->quat_b(), t).real();
      if (a >= 0 || b >= 0)
        throw std::runtime_error("model unavailable");
      double sa = std::sqrt(-a), sb = std::sqrt(-b);
      CMat units[4] = {quat_unit(0), sa * quat_unit(1), sb * quat_unit(2),
                       sa * sb * quat_unit(3)};
      std::vector<CMat> img(alg->dimq());
      double xp = 1;
      for (int q = 0; q < f0.degree(); q++) {
        for (int u = 0; u < 4; u++)
          img[u * f0.degree() + q] = xp * units[u];
        xp *= root;
      }
      m.basis_img_.push_back(std::move(img));
    }
  } else if (alg->kind() == AlgKind::MatrixCM) {
    int d = alg->d();
    m.bdim_ = d;
    const NumberField &f = *alg->center_field();
    for (int t = 0; t < m.e_; t++) {
      int root = 2 * t; // positive-imaginary representative of the pair
      std::vector<CMat> img(alg->dimq());
      for (int r = 0; r < d; r++)
        for (int c = 0; c < d; c++) {
          Cpx zp = 1;
          for (int p = 0; p < 2 * m.e_; p++) {
            CMat mat = CMat::Zero(d, d);
            mat(r, c) = zp;
            img[(r * d + c) * 2 * m.e_ + p] = mat;
            zp *= f.roots()[root];
          }
        }
      m.basis_img_.push_back(std::move(img));
    }
  } else {
    throw std::runtime_error("model unavailable");
  }

  // pullback: real coordinates of all components as a linear map
  int rows = m.e_ * 2 * m.bdim_ * m.bdim_;
  Eigen::MatrixXd A(rows, alg->dimq());
  for (int k = 0; k < alg->dimq(); k++) {
    int r = 0;
    for (int t = 0; t < m.e_; t++)
      for (int i = 0; i < m.bdim_; i++)
        for (int j = 0; j < m.bdim_; j++) {
          A(r++, k) = m.basis_img_[t][k](i, j).real();
          A(r++, k) = m.basis_img_[t][k](i, j).imag();
        }
  }
  m.pullback_.compute(A);

  double res = 0;
  for (int i = 0; i < alg->dimq(); i++)
    for (int j = 0; j < alg->dimq(); j++) {
      DRealElem prod = m.alpha(alg->mul(alg->basis_elem(i), alg->basis_elem(j)));
      for (int t = 0; t < m.e_; t++)
        res = std::max(res, (prod[t] - m.basis_img_[t][i] * m.basis_img_[t][j])
                                .cwiseAbs()
                                .maxCoeff());
    }
  for (int i = 0; i < alg->dimq(); i++) {
    DRealElem dg = m.alpha(alg->dag(alg->basis_elem(i)));
    for (int t = 0; t < m.e_; t++)
      res = std::max(
          res, (dg[t] - CMat(m.basis_img_[t][i].adjoint())).cwiseAbs().maxCoeff());
  }
  m.residual_ = res;
  if (res > 1e-9)
    throw std::runtime_error("model unavailable");
  return m;
}

CMat RealModel::component(const AlgElement &a, int comp) const {
  CMat out = CMat::Zero(bdim_, bdim_);
  for (int k = 0; k < alg_->dimq(); k++)
    if (a[k] != 0)
      out += a[k].get_d() * basis_img_[comp][k];
  return out;
}

DRealElem RealModel::alpha(const AlgElement &a) const {
  DRealElem out;
  for (int t = 0; t < e_; t++)
    out.push_back(component(a, t));
  return out;
}

AlgElement RealModel::alpha_inv(const DRealElem &v) const {
  Eigen::VectorXd b(e_ * 2 * bdim_ * bdim_);
  int r = 0;
  for (int t = 0; t < e_; t++)
    for (int i = 0; i < bdim_; i++)
      for (int j = 0; j < bdim_; j++) {
        b(r++) = v[t](i, j).real();
        b(r++) = v[t](i, j).imag();
      }
  Eigen::VectorXd x = pullback_.solve(b);
  AlgElement out(alg_->dimq());
  for (int k = 0; k < alg_->dimq(); k++)
    out[k] = rationalize(x(k), 1ul << 40);
  return out;
}

double RealModel::dreal_norm(AlbertType type, const DRealElem &v) {
  double s = 0;
  for (auto &m : v)
    s += comp_norm2(type, m);
  return std::sqrt(s);
}

int SignMatrix::plus_count(int comp) const {
  int n = 0;
  for (auto &col : eps[comp])
    for (int s : col)
      if (s > 0)
        n++;
  return n;
}

CMat comp_eval(const SkewForm &form, const RealModel &model, int comp,
               const CompVec &x, const CompVec &y) {
  int d = model.bdim();
  CMat acc = CMat::Zero(d, d);
  for (int s = 0; s < form.m(); s++)
    for (int t = 0; t < form.m(); t++)
      acc += x[s] * model.component(form.gram(s, t), comp) * y[t].adjoint();
  return acc;
}

Signature signature_of(const SkewForm &form, const RealModel &model) {
  if (form.algebra()->albert_type() != AlbertType::IV)
    throw std::invalid_argument("signature is defined for type IV only");
  int d = model.bdim(), m = form.m();
  Signature sig;
  for (int t = 0; t < model.comps(); t++) {
    CMat B(m * d, m * d);
    for (int i = 0; i < m; i++)
      for (int j = 0; j < m; j++)
        B.block(i * d, j * d, d, d) = model.component(form.gram(i, j), t);
    // B is skew-Hermitian, so -iB is Hermitian; count positive eigenvalues
    CMat H = Cpx(0, -1) * B;
    H = (H + CMat(H.adjoint())) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMat> es(H);
    double scale = 1 + es.eigenvalues().cwiseAbs().maxCoeff();
    int r = 0;
    for (int k = 0; k < m * d; k++) {
      if (std::abs(es.eigenvalues()(k)) < 1e-7 * scale)
        throw std::runtime_error("indeterminate signature");
      if (es.eigenvalues()(k) > 0)
        r++;
    }
    sig.push_back(r);
  }
  return sig;
}

Normalization alpha_eps_normalize(const SkewForm &form,
                                  const std::vector<std::vector<Rat>> &weak_basis,
                                  const RealModel &model) {
  const Algebra &alg = *form.algebra();
  AlbertType type = alg.albert_type();
  int d = model.bdim(), e = model.comps();
  int m = (int)weak_basis.size();

  Normalization out;
  out.sign.d = type == AlbertType::IV ? alg.d() : 1;
  out.sign.e = e;
  out.sign.m = m;
  out.sign.eps.assign(e, std::vector<std::vector<int>>(
                             m, std::vector<int>(out.sign.d, 1)));

  for (int i = 0; i < m; i++) {
    AlgElement A = form.eval(weak_basis[i], weak_basis[i]);
    DRealElem s(e);
    for (int t = 0; t < e; t++) {
      CMat M = model.component(A, t);
      if (type == AlbertType::III) {
        double a = M(0, 0).imag(), b = M(0, 1).real(), c = M(0, 1).imag();
        double nrm = std::sqrt(a * a + b * b + c * c);
        // x = sqrt(a^2+b^2+c^2) + a + c j - b k, then x y x† = |x|^2 nrm i
        double q0 = nrm + a;
        double xn2 = q0 * q0 + c * c + b * b;
        if (xn2 < 1e-12 * (1 + nrm)) {
          // y is a negative multiple of i; rotate with j instead
          s[t] = std::sqrt(nrm) * quat_unit(2);
        } else {
          CMat X = q0 * quat_unit(0) + c * quat_unit(2) - b * quat_unit(3);
          double aij = xn2 * nrm;
          s[t] = (std::sqrt(aij) / xn2) * CMat(X.adjoint());
        }
      } else {
        CMat H = Cpx(0, -1) * M;
        H = (H + CMat(H.adjoint())) / 2.0;
        Eigen::SelfAdjointEigenSolver<CMat> es(H);
        double scale = 1 + es.eigenvalues().cwiseAbs().maxCoeff();
        CMat T = CMat::Zero(d, d);
        for (int l = 0; l < d; l++) {
          double lam = es.eigenvalues()(l);
          if (std::abs(lam) < 1e-9 * scale)
            throw std::runtime_error("degenerate diagonal value");
          T(l, l) = std::sqrt(std::abs(lam));
          out.sign.eps[t][i][l] = lam > 0 ? 1 : -1;
        }
        s[t] = es.eigenvectors() * T;
      }

      // check s^{-1} A_t s^{-dag} = alpha(eps) on this component
      CMat sinv = s[t].inverse();
      CMat got = sinv * M * sinv.adjoint();
      CMat want = CMat::Zero(d, d);
      if (type == AlbertType::III)
        want = quat_unit(1);
      else
        for (int l = 0; l < d; l++)
          want(l, l) = Cpx(0, out.sign.eps[t][i][l]);
      if ((got - want).cwiseAbs().maxCoeff() > 1e-9 * (1 + M.cwiseAbs().maxCoeff()))
        throw std::runtime_error("normalization failed");
    }

    double k = type == AlbertType::III ? 1 : alg.d();
    double bound = std::pow(2 * k * e, 0.25) * std::sqrt(alg.dnorm(A));
    if (RealModel::dreal_norm(type, s) > bound * (1 + 1e-9))
      throw std::runtime_error("normalization bound violated");
    out.s.push_back(std::move(s));
  }
  return out;
}

double posdef_shift(const CMat &n, const CMat &m) {
  Eigen::SelfAdjointEigenSolver<CMat> en(n), em(m);
  double lmin = em.eigenvalues().minCoeff();
  if (lmin <= 0)
    throw std::invalid_argument("shift target not positive definite");
  double t = (n.rows() ? en.eigenvalues().cwiseAbs().maxCoeff() : 0) / lmin + 1;
  Eigen::LLT<CMat> llt(((n + t * m) + CMat((n + t * m).adjoint())) / 2.0);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("shift failed");
  return t;
}

CompVec invertible_value(const SkewForm &form, const RealModel &model,
                         int comp, const CompVec &x, const CompVec &y) {
  int d = model.bdim();
  auto smin = [&](const CMat &m) {
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues().minCoeff();
  };
  auto scalar_mul = [&](const CMat &a, const CompVec &v) {
    CompVec out;
    for (auto &b : v)
      out.push_back(a * b);
    return out;
  };

  CMat pair = comp_eval(form, model, comp, x, y);
  if ((pair - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-7)
    throw std::invalid_argument("invertible_value: psi(x,y) != I");

  CMat P0 = comp_eval(form, model, comp, x, x);
  if (smin(P0) > 1e-9 * (1 + P0.cwiseAbs().maxCoeff()))
    return x;

  // diagonalize psi(y,y) and sort eigenvalues: +i, then -i, then 0
  CMat R0 = comp_eval(form, model, comp, y, y);
  CMat H = Cpx(0, -1) * R0;
  H = (H + CMat(H.adjoint())) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  double scale = 1 + es.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<int> pos, negv, zero;
  for (int l = 0; l < d; l++) {
    double lam = es.eigenvalues()(l);
    if (std::abs(lam) < 1e-9 * scale)
      zero.push_back(l);
    else
      (lam > 0 ? pos : negv).push_back(l);
  }
  std::vector<int> order = pos;
  order.insert(order.end(), negv.begin(), negv.end());
  order.insert(order.end(), zero.begin(), zero.end());
  int r = (int)(pos.size() + negv.size());
  int rp = (int)pos.size();

  CMat Q = CMat::Zero(d, d);
  for (int row = 0; row < d; row++) {
    double lam = es.eigenvalues()(order[row]);
    double f = std::abs(lam) > 1e-9 * scale ? 1 / std::sqrt(std::abs(lam)) : 1;
    Q.row(row) = f * es.eigenvectors().col(order[row]).adjoint();
  }

  CompVec X = scalar_mul(CMat(Q.adjoint()).inverse(), x);
  CompVec Y = scalar_mul(Q, y);
  CMat R = comp_eval(form, model, comp, Y, Y);
  CMat P = comp_eval(form, model, comp, X, X);
  if (r == d)
    return Y;
  if (smin(P) > 1e-9 * (1 + P.cwiseAbs().maxCoeff()))
    return X;

  CMat S = P.block(r, r, d - r, d - r); // skew-Hermitian corner
  CMat C = -S / 2.0;
  CMat Dblk = -C - Cpx(0, 0.5) * CMat::Identity(d - r, d - r);
  CMat P1 = P.block(0, 0, r, r);
  CMat P2 = P.block(0, r, r, d - r);
  CMat A1 = P1.block(0, 0, rp, rp);
  CMat A2 = P1.block(0, rp, rp, r - rp);
  CMat A3 = P1.block(rp, rp, r - rp, r - rp);

  double t = 1 + P.cwiseAbs().maxCoeff();
  for (int attempt = 0; attempt < 6; attempt++, t *= 10) {
    CMat K3 = A3 / 2.0 + Cpx(0, t) * CMat::Identity(r - rp, r - rp);
    CMat iK3d = Cpx(0, 1) * CMat(K3.adjoint());
    CMat K2 = A2 * (iK3d + CMat::Identity(r - rp, r - rp)).inverse();
    CMat S1 = A1 + Cpx(0, 1) * K2 * K2.adjoint();
    CMat K1 = S1 / 2.0 - Cpx(0, t) * CMat::Identity(rp, rp);
    CMat U = CMat::Zero(d, d);
    U.block(0, 0, rp, rp) = K1;
    U.block(0, rp, rp, r - rp) = K2;
    U.block(rp, rp, r - rp, r - rp) = K3;
    U.block(0, r, r, d - r) = P2;
    U.block(r, r, d - r, d - r) = Dblk;

    CompVec UY = scalar_mul(U, Y);
    CompVec z = X;
    for (int b = 0; b < (int)z.size(); b++)
      z[b] += UY[b];
    CMat Z = comp_eval(form, model, comp, z, z);
    if (smin(Z) > 1e-9 * (1 + Z.cwiseAbs().maxCoeff()))
      return z;
  }
  throw std::runtime_error("invertible value search failed");
}

SympRBasis symplectic_rbasis(const SkewForm &form, const RealModel &model,
                             const SignMatrix &sign) {
  const Algebra &alg = *form.algebra();
  AlbertType type = alg.albert_type();
  int d = model.bdim(), e = model.comps(), m = form.m();

  std::vector<std::vector<Rat>> weak = unitary_d_basis(form);
  Normalization nrm = alpha_eps_normalize(form, weak, model);
  for (int t = 0; t < e; t++)
    if (type == AlbertType::IV && nrm.sign.plus_count(t) != sign.plus_count(t))
      throw std::invalid_argument("sign matrix mismatch");

  SympRBasis out;
  out.sign = nrm.sign;
  for (int t = 0; t < e; t++) {
    std::vector<CompVec> vecs;
    for (int j = 0; j < m; j++) {
      CompVec v;
      for (int b = 0; b < m; b++)
        v.push_back(model.component(vec_block(alg, weak[j], b), t));
      CMat sinv = nrm.s[j][t].inverse();
      for (auto &blk : v)
        blk = sinv * blk;
      vecs.push_back(std::move(v));
    }
    out.vectors.push_back(std::move(vecs));
  }

  // orthonormal units of one component
  if (type == AlbertType::III) {
    int ord[4] = {0, 1, 3, 2}; // 1, i, k, j
    for (int u = 0; u < 4; u++)
      out.aunits.push_back(quat_unit(ord[u]) / std::sqrt(2.0));
  } else {
    for (int p = 0; p < d; p++)
      for (int q = 0; q < d; q++) {
        CMat b = CMat::Zero(d, d);
        b(p, q) = 1 / std::sqrt(2.0);
        out.aunits.push_back(b);
        out.aunits.push_back(Cpx(0, 1) * b);
      }
  }

  int k = (int)out.aunits.size();
  int n = e * m * k;
  out.gram = Eigen::MatrixXd::Zero(n, n);
  auto flat = [&](int comp, int j, int r) { return (comp * m + j) * k + r; };
  for (int t = 0; t < e; t++)
    for (int j = 0; j < m; j++)
      for (int r = 0; r < k; r++)
        for (int j2 = 0; j2 < m; j2++)
          for (int r2 = 0; r2 < k; r2++) {
            CompVec a, b;
            for (int blk = 0; blk < m; blk++) {
              a.push_back(out.aunits[r] * out.vectors[t][j][blk]);
              b.push_back(out.aunits[r2] * out.vectors[t][j2][blk]);
            }
            out.gram(flat(t, j, r), flat(t, j2, r2)) =
                trd_real(type, comp_eval(form, model, t, a, b));
          }

  // read off the symplectic pairing structure
  for (int r = 0; r < n; r++) {
    int partner = -1;
    for (int c = 0; c < n; c++) {
      double v = out.gram(r, c);
      if (std::abs(v) > 0.5) {
        if (partner >= 0 || std::abs(std::abs(v) - 1) > 1e-9)
          throw std::runtime_error("basis is not symplectic");
        partner = c;
      } else if (std::abs(v) > 1e-9) {
        throw std::runtime_error("basis is not symplectic");
      }
    }
    if (partner < 0)
      throw std::runtime_error("basis is not symplectic");
    if (r < partner)
      out.pairs.push_back({r, partner, out.gram(r, partner) > 0 ? 1 : -1});
  }
  return out;
}

Iota0 iota0_embed(AlbertType type, int d, int e, int m, const Signature &sig) {
  Iota0 out;
  if (type == AlbertType::III) {
    if (d != 2)
      throw std::invalid_argument("type III has d = 2");
    out.k = 4;
    out.g = 2 * e * m;
    int n = 2 * out.g;
    // quaternion units as 4x4 rational matrices
    int phi[4][4][4] = {};
    auto set = [&](int u, std::initializer_list<std::array<int, 3>> entries) {
      for (auto &en : entries)
        phi[u][en[0]][en[1]] = en[2];
    };
    set(0, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {3, 3, 1}});
    set(1, {{0, 1, 1}, {1, 0, -1}, {2, 3, 1}, {3, 2, -1}});
    set(2, {{0, 2, 1}, {1, 3, -1}, {2, 0, -1}, {3, 1, 1}});
    set(3, {{0, 3, 1}, {1, 2, 1}, {2, 1, -1}, {3, 0, -1}});
    for (int comp = 0; comp < e; comp++)
      for (int u = 0; u < 4; u++) {
        QMat img(n, n);
        for (int copy = 0; copy < m; copy++) {
          int off = comp * 4 * m + copy * 4;
          for (int r = 0; r < 4; r++)
            for (int c = 0; c < 4; c++)
              img.at(off + r, off + c) = phi[u][r][c];
        }
        out.images.push_back(std::move(img));
      }
    // J commuting with the image: [[0, I2], [-I2, 0]] per 4x4 block
    out.j = QMat(n, n);
    for (int blk = 0; blk < n / 4; blk++) {
      int off = 4 * blk;
      out.j.at(off + 0, off + 2) = 1;
      out.j.at(off + 1, off + 3) = 1;
      out.j.at(off + 2, off + 0) = -1;
      out.j.at(off + 3, off + 1) = -1;
    }
  } else {
    if ((int)sig.size() != e)
      throw std::invalid_argument("signature has wrong length");
    for (int r : sig)
      if (r < 0 || r > d * m)
        throw std::invalid_argument("signature out of range");
    out.k = 2 * d * d;
    out.g = d * d * e * m;
    int n = 2 * out.g;
    // generator (comp, p, q, c): c=0 -> E_pq, c=1 -> i E_pq
    for (int comp = 0; comp < e; comp++)
      for (int p = 0; p < d; p++)
        for (int q = 0; q < d; q++)
          for (int c = 0; c < 2; c++) {
            QMat img(n, n);
            int base = comp * 2 * d * d * m; // this component's 2d x (md) strip
            for (int copy = 0; copy < m * d; copy++) {
              bool conj = copy >= sig[comp];
              int off = base + copy * 2 * d;
              // tilde block of entry (p,q) = x + iy with x = (c==0), y = (c==1)
              int x = c == 0 ? 1 : 0, y = c == 1 ? 1 : 0;
              int yy = conj ? -y : y;
              img.at(off + 2 * p, off + 2 * q) = x;
              img.at(off + 2 * p, off + 2 * q + 1) = -yy;
              img.at(off + 2 * p + 1, off + 2 * q) = yy;
              img.at(off + 2 * p + 1, off + 2 * q + 1) = x;
            }
            out.images.push_back(std::move(img));
          }
    // J: [[0,1],[-1,0]] per coordinate pair
    out.j = QMat(n, n);
    for (int p = 0; p < out.g; p++) {
      out.j.at(2 * p, 2 * p + 1) = 1;
      out.j.at(2 * p + 1, 2 * p) = -1;
    }
  }
  return out;
}

NormModel adapted_norm(const SkewForm &form) {
  const Algebra &alg = *form.algebra();
  AlbertType type = alg.albert_type();
  RealModel model = RealModel::build(form.algebra());
  int n = form.qdim(), dq = alg.dimq(), e = model.comps(), bd = model.bdim();

  std::vector<std::vector<Rat>> weak = unitary_d_basis(form);
  int m = (int)weak.size();
  Normalization nrm = alpha_eps_normalize(form, weak, model);

  // exact change of basis: ambient coords -> D-coordinates along weak basis
  QMat W(n, n);
  for (int j = 0; j < m; j++)
    for (int i = 0; i < dq; i++) {
      std::vector<Rat> col = form.mod_mul(alg.basis_elem(i), weak[j]);
      for (int r = 0; r < n; r++)
        W.at(r, j * dq + i) = col[r];
    }
  auto Winv = W.inverse();
  if (!Winv)
    throw std::runtime_error("weak basis is singular");

  // real coordinate map: |x|^2 = sum_j |x_j s_j|_{D_R}^2
  int per = 2 * bd * bd; // real dims of one component
  Eigen::MatrixXd T(e * m * per, n);
  for (int c = 0; c < n; c++) {
    std::vector<Rat> unit(n);
    unit[c] = 1;
    std::vector<Rat> co = Winv->apply(unit);
    int row = 0;
    for (int j = 0; j < m; j++) {
      AlgElement xj(dq);
      for (int i = 0; i < dq; i++)
        xj[i] = co[j * dq + i];
      for (int t = 0; t < e; t++) {
        CMat cj = model.component(xj, t) * nrm.s[j][t];
        double f = type == AlbertType::IV ? std::sqrt(2.0) : 1.0;
        for (int p = 0; p < bd; p++)
          for (int q = 0; q < bd; q++) {
            T(row++, c) = f * cj(p, q).real();
            T(row++, c) = f * cj(p, q).imag();
          }
      }
    }
  }
  Eigen::MatrixXd Gf = T.transpose() * T;

  NormModel nm;
  nm.gram = QMat(n, n);
  Rat slack = Rat(1000001, 1000000);
  unsigned long max_den = 1ul << 40;
  for (int i = 0; i < n; i++)
    for (int j = i; j < n; j++) {
      Rat v = rationalize((Gf(i, j) + Gf(j, i)) / 2, max_den) * slack;
      nm.gram.at(i, j) = v;
      nm.gram.at(j, i) = v;
    }

  // exact positive definiteness: leading principal minors
  for (int k = 1; k <= n; k++) {
    QMat lead(k, k);
    for (int i = 0; i < k; i++)
      for (int j = 0; j < k; j++)
        lead.at(i, j) = nm.gram.at(i, j);
    if (lead.det() <= 0)
      throw std::runtime_error("adapted norm not positive definite");
  }

  // sample adaptedness exactly
  std::mt19937_64 rng(0x5eedull);
  auto rnd_vec = [&](int len) {
    std::vector<Rat> v(len);
    for (auto &c : v)
      c = Rat((long)(rng() % 7) - 3);
    return v;
  };
  for (int it = 0; it < 24; it++) {
    std::vector<Rat> x = rnd_vec(n), y = rnd_vec(n);
    Rat nx = nm.norm2(x), ny = nm.norm2(y);
    if (alg.dnorm2(form.eval(x, y)) > nx * ny)
      throw std::logic_error("adapted norm violation (pairing)");
    AlgElement a = rnd_vec(dq);
    if (nm.norm2(form.mod_mul(a, x)) > alg.dnorm2(a) * nx)
      throw std::logic_error("adapted norm violation (scaling)");
  }
  return nm;
}

} // namespace skewred
