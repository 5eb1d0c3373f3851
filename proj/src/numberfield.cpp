#include "skewred/numberfield.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace skewred {

namespace {

NFElement reduce_to_elem(const QPoly &p, const QPoly &f, int deg) {
  QPoly r = poly_mod(p, f);
  NFElement e(deg);
  for (size_t i = 0; i < r.size(); ++i)
    e[i] = r[i];
  return e;
}

QPoly elem_to_poly(const NFElement &a) {
  return poly_normalize(QPoly(a.begin(), a.end()));
}

} // namespace

std::shared_ptr<const NumberField> NumberField::rationals() {
  return create({Int(0), Int(1)});
}

std::shared_ptr<const NumberField> NumberField::create(std::vector<Int> min_poly) {
  auto nf = std::shared_ptr<NumberField>(new NumberField());
  nf->min_poly_ = std::move(min_poly);
  nf->f_ = poly_from_int(nf->min_poly_);
  nf->deg_ = poly_deg(nf->f_);
  if (nf->deg_ < 1)
    throw std::invalid_argument("minimal polynomial must be nonconstant");
  if (nf->f_.back() != 1)
    throw std::invalid_argument("minimal polynomial must be monic");
  if (!poly_irreducible_monic(nf->min_poly_))
    throw std::invalid_argument("minimal polynomial reducible over Q");

  nf->roots_ = poly_roots(nf->f_);
  int real_roots = count_real_roots(nf->f_);
  int numeric_real = 0;
  for (auto &r : nf->roots_)
    if (r.imag() == 0.0)
      ++numeric_real;
  if (numeric_real != real_roots)
    throw std::runtime_error("root isolation disagrees with sign-change count");
  nf->totally_real_ = (real_roots == nf->deg_);

  if (!nf->totally_real_ && real_roots == 0 && nf->deg_ % 2 == 0) {
    // candidate CM field: look for an automorphism matching conjugation
    int n = nf->deg_;
    Eigen::MatrixXcd V(n, n);
    Eigen::VectorXcd rhs(n);
    for (int j = 0; j < n; ++j) {
      std::complex<double> p(1.0, 0.0);
      for (int i = 0; i < n; ++i) {
        V(j, i) = p;
        p *= nf->roots_[j];
      }
      rhs(j) = std::conj(nf->roots_[j]);
    }
    Eigen::VectorXcd c = V.fullPivLu().solve(rhs);
    bool plausible = true;
    QPoly g(n);
    for (int i = 0; i < n; ++i) {
      if (std::fabs(c(i).imag()) > 1e-6) {
        plausible = false;
        break;
      }
      Rat q = rationalize(c(i).real());
      if (std::fabs(to_double(q) - c(i).real()) > 1e-6) {
        plausible = false;
        break;
      }
      g[i] = q;
    }
    g = poly_normalize(g);
    if (plausible) {
      // exact checks: f(g(x)) = 0 mod f, g(g(x)) = x mod f, g != x
      QPoly fg = poly_compose_mod(nf->f_, g, nf->f_);
      QPoly gg = poly_compose_mod(g, g, nf->f_);
      QPoly x{Rat(0), Rat(1)};
      if (fg.empty() && gg == x && g != x) {
        nf->cm_ = true;
        nf->conj_poly_ = g;
      }
    }
    if (!nf->cm_)
      throw std::runtime_error(
          "totally imaginary field without detectable conjugation");
  }

  if (nf->cm_) {
    int n = nf->deg_, h = n / 2;
    QPoly x{Rat(0), Rat(1)};
    QPoly xg = poly_mod(poly_mul(x, nf->conj_poly_), nf->f_);
    std::vector<QPoly> cands{poly_add(x, nf->conj_poly_), xg,
                             poly_add(poly_add(x, nf->conj_poly_), xg)};
    bool found = false;
    for (const auto &tp : cands) {
      // powers of t in the power basis; first linear dependence
      NFElement t = reduce_to_elem(tp, nf->f_, n);
      std::vector<NFElement> pows;
      NFElement cur = nf->one();
      for (int k = 0; k <= h; ++k) {
        pows.push_back(cur);
        if (k < h)
          cur = nf->mul(cur, t);
      }
      QMat P(n, h + 1);
      for (int k = 0; k <= h; ++k)
        for (int i = 0; i < n; ++i)
          P.at(i, k) = pows[k][i];
      QMat K = P.kernel();
      if (K.rows() != 1)
        continue; // t generates a subfield smaller than F0
      // normalize: t^h + a_{h-1} t^{h-1} + ... = 0
      std::vector<Rat> rel = K.row(0);
      if (sgn(rel[h]) == 0)
        continue;
      QPoly m(h + 1);
      for (int k = 0; k <= h; ++k)
        m[k] = rel[k] / rel[h];
      // rescale the generator so its minimal polynomial is integral
      Int lambda = common_denominator(m);
      std::vector<Int> mscal(h + 1);
      for (int k = 0; k <= h; ++k) {
        Rat coeff = m[k] * pow_rat(Rat(lambda), h - k);
        if (coeff.get_den() != 1)
          throw std::runtime_error("generator rescaling failed");
        mscal[k] = coeff.get_num();
      }
      nf->f0_ = NumberField::create(mscal);
      nf->f0_gen_ = nf->mul(t, nf->from_rat(Rat(lambda)));
      nf->f0_embed_ = QMat(n, h);
      NFElement p = nf->one();
      for (int k = 0; k < h; ++k) {
        for (int i = 0; i < n; ++i)
          nf->f0_embed_.at(i, k) = p[i];
        p = nf->mul(p, nf->f0_gen_);
      }
      if (!nf->f0_->is_totally_real())
        throw std::runtime_error("fixed field of conjugation not totally real");
      found = true;
      break;
    }
    if (!found)
      throw std::runtime_error("no primitive element found for the fixed field");
  }

  return nf;
}

const QPoly &NumberField::conj_poly() const {
  if (!cm_)
    throw std::domain_error("conjugation only defined for CM fields");
  return conj_poly_;
}

std::shared_ptr<const NumberField> NumberField::fixed_field() const {
  if (!cm_)
    throw std::domain_error("fixed field only stored for CM fields");
  return f0_;
}

const NFElement &NumberField::fixed_field_generator() const {
  if (!cm_)
    throw std::domain_error("fixed field only stored for CM fields");
  return f0_gen_;
}

const QMat &NumberField::fixed_field_embedding() const {
  if (!cm_)
    throw std::domain_error("fixed field only stored for CM fields");
  return f0_embed_;
}

NFElement NumberField::one() const {
  NFElement e(deg_);
  e[0] = 1;
  return e;
}

NFElement NumberField::gen() const {
  NFElement e(deg_);
  if (deg_ == 1) {
    // x = -c0 in a degree-1 field
    e[0] = -Rat(min_poly_[0]);
  } else {
    e[1] = 1;
  }
  return e;
}

NFElement NumberField::from_rat(const Rat &c) const {
  NFElement e(deg_);
  e[0] = c;
  return e;
}

NFElement NumberField::add(const NFElement &a, const NFElement &b) const {
  NFElement r(deg_);
  for (int i = 0; i < deg_; ++i)
    r[i] = a[i] + b[i];
  return r;
}

NFElement NumberField::sub(const NFElement &a, const NFElement &b) const {
  NFElement r(deg_);
  for (int i = 0; i < deg_; ++i)
    r[i] = a[i] - b[i];
  return r;
}

NFElement NumberField::neg(const NFElement &a) const {
  NFElement r(deg_);
  for (int i = 0; i < deg_; ++i)
    r[i] = -a[i];
  return r;
}

NFElement NumberField::mul(const NFElement &a, const NFElement &b) const {
  return reduce_to_elem(poly_mul(elem_to_poly(a), elem_to_poly(b)), f_, deg_);
}

NFElement NumberField::inv(const NFElement &a) const {
  if (is_zero(a))
    throw std::domain_error("inverse of zero");
  auto sol = mult_matrix(a).solve(one());
  if (!sol)
    throw std::domain_error("non-invertible element");
  return *sol;
}

NFElement NumberField::conj(const NFElement &a) const {
  return reduce_to_elem(poly_compose_mod(elem_to_poly(a), conj_poly(), f_), f_,
                        deg_);
}

bool NumberField::is_zero(const NFElement &a) const {
  for (const auto &c : a)
    if (sgn(c) != 0)
      return false;
  return true;
}

bool NumberField::is_rational(const NFElement &a) const {
  for (int i = 1; i < deg_; ++i)
    if (sgn(a[i]) != 0)
      return false;
  return true;
}

QMat NumberField::mult_matrix(const NFElement &a) const {
  QMat m(deg_, deg_);
  NFElement col = a;
  for (int j = 0; j < deg_; ++j) {
    for (int i = 0; i < deg_; ++i)
      m.at(i, j) = col[i];
    if (j + 1 < deg_) {
      // multiply by x
      QPoly p = elem_to_poly(col);
      p.insert(p.begin(), Rat(0));
      col = reduce_to_elem(p, f_, deg_);
    }
  }
  return m;
}

std::complex<double> NumberField::embed(const NFElement &a, int which_root) const {
  std::complex<double> r = roots_.at(which_root);
  std::complex<double> v(0.0);
  std::complex<double> p(1.0);
  for (int i = 0; i < deg_; ++i) {
    v += to_double(a[i]) * p;
    p *= r;
  }
  return v;
}

std::pair<Rat, Rat> nf_norm_trace(const NumberField &field, const NFElement &x) {
  QMat m = field.mult_matrix(x);
  Rat tr(0);
  for (int i = 0; i < field.degree(); ++i)
    tr += m.at(i, i);
  return {m.det(), tr};
}

} // namespace skewred
