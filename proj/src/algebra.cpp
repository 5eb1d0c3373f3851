#include "skewred/algebra.hpp"

namespace skewred {

namespace {

// determinant over a number field by Gaussian elimination
NFElement nf_det(const NumberField &f, std::vector<std::vector<NFElement>> m) {
  int n = (int)m.size();
  NFElement det = f.one();
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (!f.is_zero(m[i][k])) {
        p = i;
        break;
      }
    if (p < 0)
      return f.zero();
    if (p != k) {
      std::swap(m[p], m[k]);
      det = f.neg(det);
    }
    det = f.mul(det, m[k][k]);
    NFElement inv = f.inv(m[k][k]);
    for (int i = k + 1; i < n; ++i) {
      NFElement fac = f.mul(m[i][k], inv);
      for (int j = k; j < n; ++j)
        m[i][j] = f.sub(m[i][j], f.mul(fac, m[k][j]));
    }
  }
  return det;
}

} // namespace

std::shared_ptr<const Algebra> Algebra::make_quaternion(NFPtr f0,
                                                        const NFElement &a,
                                                        const NFElement &b) {
  if (!f0->is_totally_real())
    throw std::invalid_argument("base field not totally real");
  for (int r = 0; r < f0->degree(); ++r) {
    if (f0->embed(a, r).real() >= 0 || f0->embed(b, r).real() >= 0)
      throw std::invalid_argument("not totally definite");
  }
  auto alg = std::shared_ptr<Algebra>(new Algebra());
  alg->kind_ = AlgKind::Quaternion;
  alg->type_ = AlbertType::III;
  alg->d_ = 2;
  alg->e_ = f0->degree();
  alg->dimq_ = 4 * alg->e_;
  alg->center_ = std::move(f0);
  alg->qa_ = a;
  alg->qb_ = b;
  alg->finalize_checks();
  return alg;
}

std::shared_ptr<const Algebra> Algebra::make_matrix_cm(NFPtr f, int d) {
  if (!f->is_cm())
    throw std::invalid_argument("not CM");
  if (d < 1)
    throw std::invalid_argument("d must be positive");
  auto alg = std::shared_ptr<Algebra>(new Algebra());
  alg->kind_ = AlgKind::MatrixCM;
  alg->type_ = AlbertType::IV;
  alg->d_ = d;
  alg->e_ = f->degree() / 2;
  alg->dimq_ = d * d * f->degree();
  alg->center_ = std::move(f);
  alg->finalize_checks();
  return alg;
}

std::shared_ptr<const Algebra>
Algebra::make_generic(std::vector<QMat> left_mult_of_basis, QMat involution,
                      AlbertType type, int d, int e) {
  auto alg = std::shared_ptr<Algebra>(new Algebra());
  alg->kind_ = AlgKind::Generic;
  alg->type_ = type;
  alg->d_ = d;
  alg->e_ = e;
  alg->dimq_ = (int)left_mult_of_basis.size();
  alg->sc_ = std::move(left_mult_of_basis);
  alg->inv_mat_ = std::move(involution);
  int n = alg->dimq_;
  int expect = (type == AlbertType::III) ? 4 * e : 2 * d * d * e;
  if (n != expect)
    throw std::invalid_argument("dimension does not match the Albert type");
  for (const auto &m : alg->sc_)
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("bad structure constants");
  if (alg->inv_mat_.rows() != n || alg->inv_mat_.cols() != n)
    throw std::invalid_argument("bad involution matrix");
  alg->finalize_checks();
  return alg;
}

void Algebra::finalize_checks() const {
  int n = dimq_;
  std::vector<AlgElement> basis(n);
  for (int i = 0; i < n; ++i)
    basis[i] = basis_elem(i);
  AlgElement id = one();
  // associativity on basis triples; involution axioms on pairs
  for (int i = 0; i < n; ++i) {
    if (dag(dag(basis[i])) != basis[i])
      throw std::invalid_argument("involution is not an involution");
    for (int j = 0; j < n; ++j) {
      AlgElement ij = mul(basis[i], basis[j]);
      if (dag(ij) != mul(dag(basis[j]), dag(basis[i])))
        throw std::invalid_argument("involution is not an anti-automorphism");
      for (int k = 0; k < n; ++k)
        if (mul(ij, basis[k]) != mul(basis[i], mul(basis[j], basis[k])))
          throw std::invalid_argument("structure constants not associative");
    }
  }
  if (mul(id, basis[0]) != basis[0] || mul(basis[0], id) != basis[0])
    throw std::invalid_argument("unit element failure");
  // positivity of the trace form Trd(a b†) via leading principal minors
  QMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g.at(i, j) = trd_q(mul(basis[i], dag(basis[j])));
  for (int k = 1; k <= n; ++k) {
    QMat lead(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        lead.at(i, j) = g.at(i, j);
    if (sgn(lead.det()) <= 0)
      throw std::invalid_argument("trace form not positive definite");
  }
}

NFPtr Algebra::f0_field() const {
  return type_ == AlbertType::III ? center_ : center_->fixed_field();
}

AlgElement Algebra::one() const {
  switch (kind_) {
  case AlgKind::Quaternion: {
    AlgElement x = zero();
    set_quat_comp(x, 0, center_->one());
    return x;
  }
  case AlgKind::MatrixCM: {
    AlgElement x = zero();
    for (int r = 0; r < d_; ++r)
      set_mat_entry(x, r, r, center_->one());
    return x;
  }
  case AlgKind::Generic: {
    // solve sum x_i L(e_i) = I
    int n = dimq_;
    QMat sys(n * n, n);
    std::vector<Rat> rhs(n * n);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          sys.at(r * n + c, i) = sc_[i].at(r, c);
    for (int r = 0; r < n; ++r)
      rhs[r * n + r] = 1;
    auto sol = sys.solve(rhs);
    if (!sol)
      throw std::invalid_argument("algebra has no unit");
    return *sol;
  }
  }
  throw std::logic_error("unreachable");
}

AlgElement Algebra::basis_elem(int i) const {
  AlgElement x = zero();
  x[i] = 1;
  return x;
}

bool Algebra::is_zero(const AlgElement &x) const {
  for (const auto &c : x)
    if (sgn(c) != 0)
      return false;
  return true;
}

AlgElement Algebra::add(const AlgElement &a, const AlgElement &b) const {
  AlgElement r(dimq_);
  for (int i = 0; i < dimq_; ++i)
    r[i] = a[i] + b[i];
  return r;
}

AlgElement Algebra::sub(const AlgElement &a, const AlgElement &b) const {
  AlgElement r(dimq_);
  for (int i = 0; i < dimq_; ++i)
    r[i] = a[i] - b[i];
  return r;
}

AlgElement Algebra::neg(const AlgElement &a) const {
  AlgElement r(dimq_);
  for (int i = 0; i < dimq_; ++i)
    r[i] = -a[i];
  return r;
}

AlgElement Algebra::scale(const AlgElement &a, const Rat &c) const {
  AlgElement r(dimq_);
  for (int i = 0; i < dimq_; ++i)
    r[i] = a[i] * c;
  return r;
}

NFElement Algebra::quat_comp(const AlgElement &a, int u) const {
  return NFElement(a.begin() + u * e_, a.begin() + (u + 1) * e_);
}

void Algebra::set_quat_comp(AlgElement &a, int u, const NFElement &v) const {
  for (int q = 0; q < e_; ++q)
    a[u * e_ + q] = v[q];
}

NFElement Algebra::mat_entry(const AlgElement &a, int r, int c) const {
  int deg = center_->degree();
  int off = (r * d_ + c) * deg;
  return NFElement(a.begin() + off, a.begin() + off + deg);
}

void Algebra::set_mat_entry(AlgElement &a, int r, int c,
                            const NFElement &v) const {
  int deg = center_->degree();
  int off = (r * d_ + c) * deg;
  for (int p = 0; p < deg; ++p)
    a[off + p] = v[p];
}

AlgElement Algebra::mul(const AlgElement &a, const AlgElement &b) const {
  const NumberField &F = *center_;
  switch (kind_) {
  case AlgKind::Quaternion: {
    NFElement a0 = quat_comp(a, 0), a1 = quat_comp(a, 1), a2 = quat_comp(a, 2),
              a3 = quat_comp(a, 3);
    NFElement b0 = quat_comp(b, 0), b1 = quat_comp(b, 1), b2 = quat_comp(b, 2),
              b3 = quat_comp(b, 3);
    auto M = [&](const NFElement &x, const NFElement &y) { return F.mul(x, y); };
    auto A = [&](const NFElement &x, const NFElement &y) { return F.add(x, y); };
    auto S = [&](const NFElement &x, const NFElement &y) { return F.sub(x, y); };
    const NFElement &al = qa_, &be = qb_;
    NFElement ab = M(al, be);
    NFElement c0 =
        S(A(M(a0, b0), A(M(al, M(a1, b1)), M(be, M(a2, b2)))), M(ab, M(a3, b3)));
    NFElement c1 =
        A(A(M(a0, b1), M(a1, b0)), M(be, S(M(a3, b2), M(a2, b3))));
    NFElement c2 =
        A(A(M(a0, b2), M(a2, b0)), M(al, S(M(a1, b3), M(a3, b1))));
    NFElement c3 = A(A(M(a0, b3), M(a3, b0)), S(M(a1, b2), M(a2, b1)));
    AlgElement r = zero();
    set_quat_comp(r, 0, c0);
    set_quat_comp(r, 1, c1);
    set_quat_comp(r, 2, c2);
    set_quat_comp(r, 3, c3);
    return r;
  }
  case AlgKind::MatrixCM: {
    AlgElement r = zero();
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) {
        NFElement s = F.zero();
        for (int k = 0; k < d_; ++k)
          s = F.add(s, F.mul(mat_entry(a, i, k), mat_entry(b, k, j)));
        set_mat_entry(r, i, j, s);
      }
    return r;
  }
  case AlgKind::Generic: {
    AlgElement r = zero();
    for (int i = 0; i < dimq_; ++i) {
      if (sgn(a[i]) == 0)
        continue;
      auto col = sc_[i].apply(b);
      for (int t = 0; t < dimq_; ++t)
        r[t] += a[i] * col[t];
    }
    return r;
  }
  }
  throw std::logic_error("unreachable");
}

AlgElement Algebra::dag(const AlgElement &a) const {
  const NumberField &F = *center_;
  switch (kind_) {
  case AlgKind::Quaternion: {
    AlgElement r = zero();
    set_quat_comp(r, 0, quat_comp(a, 0));
    for (int u = 1; u < 4; ++u)
      set_quat_comp(r, u, F.neg(quat_comp(a, u)));
    return r;
  }
  case AlgKind::MatrixCM: {
    AlgElement r = zero();
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j)
        set_mat_entry(r, i, j, F.conj(mat_entry(a, j, i)));
    return r;
  }
  case AlgKind::Generic:
    return inv_mat_.apply(a);
  }
  throw std::logic_error("unreachable");
}

AlgElement Algebra::inv(const AlgElement &a) const {
  auto sol = left_mult_matrix(a).solve(one());
  if (!sol)
    throw std::domain_error("element not invertible");
  return *sol;
}

QMat Algebra::left_mult_matrix(const AlgElement &a) const {
  QMat m(dimq_, dimq_);
  for (int j = 0; j < dimq_; ++j) {
    AlgElement col = mul(a, basis_elem(j));
    for (int i = 0; i < dimq_; ++i)
      m.at(i, j) = col[i];
  }
  return m;
}

AlgElement Algebra::from_center(const NFElement &c) const {
  switch (kind_) {
  case AlgKind::Quaternion: {
    AlgElement x = zero();
    set_quat_comp(x, 0, c);
    return x;
  }
  case AlgKind::MatrixCM: {
    AlgElement x = zero();
    for (int r = 0; r < d_; ++r)
      set_mat_entry(x, r, r, c);
    return x;
  }
  case AlgKind::Generic:
    throw std::domain_error("generic algebras have no center coordinates");
  }
  throw std::logic_error("unreachable");
}

AlgElement Algebra::from_f0(const NFElement &c) const {
  if (type_ == AlbertType::III)
    return from_center(c);
  // route through the CM field
  const QMat &emb = center_->fixed_field_embedding();
  return from_center(emb.apply(c));
}

AlgElement Algebra::from_rat(const Rat &c) const { return scale(one(), c); }

QMat Algebra::f0_embedding_matrix() const {
  int edeg = f0_field()->degree();
  QMat m(dimq_, edeg);
  for (int p = 0; p < edeg; ++p) {
    NFElement b = f0_field()->zero();
    b[p] = 1;
    AlgElement col = from_f0(b);
    for (int i = 0; i < dimq_; ++i)
      m.at(i, p) = col[i];
  }
  return m;
}

Rat Algebra::trd_q(const AlgElement &a) const {
  const NumberField &F = *center_;
  switch (kind_) {
  case AlgKind::Quaternion: {
    NFElement t = F.add(quat_comp(a, 0), quat_comp(a, 0));
    return nf_norm_trace(F, t).second;
  }
  case AlgKind::MatrixCM: {
    NFElement t = F.zero();
    for (int r = 0; r < d_; ++r)
      t = F.add(t, mat_entry(a, r, r));
    return nf_norm_trace(F, t).second;
  }
  case AlgKind::Generic: {
    QMat m = left_mult_matrix(a);
    Rat tr(0);
    for (int i = 0; i < dimq_; ++i)
      tr += m.at(i, i);
    return tr / Rat(d_);
  }
  }
  throw std::logic_error("unreachable");
}

Rat Algebra::tr_q(const AlgElement &a) const { return Rat(d_) * trd_q(a); }

Rat Algebra::nrd_q(const AlgElement &a) const {
  const NumberField &F = *center_;
  switch (kind_) {
  case AlgKind::Quaternion: {
    // Nrd_{D/F0} = a0^2 - alpha a1^2 - beta a2^2 + alpha beta a3^2
    NFElement a0 = quat_comp(a, 0), a1 = quat_comp(a, 1), a2 = quat_comp(a, 2),
              a3 = quat_comp(a, 3);
    NFElement n = F.sub(F.mul(a0, a0), F.mul(qa_, F.mul(a1, a1)));
    n = F.sub(n, F.mul(qb_, F.mul(a2, a2)));
    n = F.add(n, F.mul(F.mul(qa_, qb_), F.mul(a3, a3)));
    return nf_norm_trace(F, n).first;
  }
  case AlgKind::MatrixCM: {
    std::vector<std::vector<NFElement>> m(d_, std::vector<NFElement>(d_));
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j)
        m[i][j] = mat_entry(a, i, j);
    return nf_norm_trace(F, nf_det(F, m)).first;
  }
  case AlgKind::Generic: {
    Rat nm = left_mult_matrix(a).det();
    auto root = exact_root(abs(nm), d_);
    if (!root)
      throw std::domain_error("Nrd unavailable, use |Nm|^{1/d} bound");
    if (d_ % 2 == 1 && sgn(nm) < 0)
      return -*root;
    return *root;
  }
  }
  throw std::logic_error("unreachable");
}

Rat Algebra::dnorm2(const AlgElement &a) const { return trd_q(mul(a, dag(a))); }

double Algebra::dnorm(const AlgElement &a) const {
  return std::sqrt(to_double(dnorm2(a)));
}

std::pair<AlgElement, AlgElement>
Algebra::antisym_split(const AlgElement &a) const {
  AlgElement da = dag(a);
  AlgElement plus = scale(add(a, da), Rat(1, 2));
  AlgElement minus = scale(sub(a, da), Rat(1, 2));
  return {plus, minus};
}

QMat Algebra::antisym_basis() const {
  // kernel of (dagger + id)
  QMat m(dimq_, dimq_);
  for (int j = 0; j < dimq_; ++j) {
    AlgElement col = dag(basis_elem(j));
    for (int i = 0; i < dimq_; ++i)
      m.at(i, j) = col[i] + (i == j ? Rat(1) : Rat(0));
  }
  return m.kernel();
}

std::pair<Rat, Rat> reduced_trace_norm(const Algebra &alg, const AlgElement &x) {
  return {alg.trd_q(x), abs(alg.nrd_q(x))};
}

} // namespace skewred
