#include "skewred/linalg.hpp"

#include <algorithm>

namespace skewred {

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i)
    m.at(i, i) = 1;
  return m;
}

QMat QMat::from_rows(const std::vector<std::vector<Rat>> &rows) {
  if (rows.empty())
    return QMat();
  QMat m((int)rows.size(), (int)rows[0].size());
  for (int i = 0; i < m.rows(); ++i) {
    assert((int)rows[i].size() == m.cols());
    for (int j = 0; j < m.cols(); ++j)
      m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Rat> QMat::row(int i) const {
  std::vector<Rat> v(c_);
  for (int j = 0; j < c_; ++j)
    v[j] = at(i, j);
  return v;
}

void QMat::set_row(int i, const std::vector<Rat> &v) {
  assert((int)v.size() == c_);
  for (int j = 0; j < c_; ++j)
    at(i, j) = v[j];
}

QMat QMat::transpose() const {
  QMat t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      t.at(j, i) = at(i, j);
  return t;
}

QMat QMat::operator*(const QMat &o) const {
  assert(c_ == o.r_);
  QMat p(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Rat &a = at(i, k);
      if (sgn(a) == 0)
        continue;
      for (int j = 0; j < o.c_; ++j)
        p.at(i, j) += a * o.at(k, j);
    }
  return p;
}

QMat QMat::operator+(const QMat &o) const {
  assert(r_ == o.r_ && c_ == o.c_);
  QMat s(r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      s.at(i, j) = at(i, j) + o.at(i, j);
  return s;
}

QMat QMat::operator-(const QMat &o) const {
  assert(r_ == o.r_ && c_ == o.c_);
  QMat s(r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      s.at(i, j) = at(i, j) - o.at(i, j);
  return s;
}

QMat QMat::scaled(const Rat &c) const {
  QMat s(r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      s.at(i, j) = at(i, j) * c;
  return s;
}

std::vector<Rat> QMat::apply(const std::vector<Rat> &v) const {
  assert((int)v.size() == c_);
  std::vector<Rat> out(r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      out[i] += at(i, j) * v[j];
  return out;
}

std::vector<Rat> QMat::apply_left(const std::vector<Rat> &v) const {
  assert((int)v.size() == r_);
  std::vector<Rat> out(c_);
  for (int i = 0; i < r_; ++i) {
    if (sgn(v[i]) == 0)
      continue;
    for (int j = 0; j < c_; ++j)
      out[j] += v[i] * at(i, j);
  }
  return out;
}

bool QMat::is_zero() const {
  for (const auto &x : a_)
    if (sgn(x) != 0)
      return false;
  return true;
}

namespace {

struct Rref {
  QMat m;
  std::vector<int> pivot_col; // per pivot row
};

Rref rref(QMat m) {
  Rref out;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int i = row; i < m.rows(); ++i)
      if (sgn(m.at(i, col)) != 0) {
        p = i;
        break;
      }
    if (p < 0)
      continue;
    if (p != row)
      for (int j = 0; j < m.cols(); ++j)
        swap(m.at(p, j), m.at(row, j));
    Rat inv = 1 / m.at(row, col);
    for (int j = col; j < m.cols(); ++j)
      m.at(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || sgn(m.at(i, col)) == 0)
        continue;
      Rat f = m.at(i, col);
      for (int j = col; j < m.cols(); ++j)
        m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  out.m = std::move(m);
  out.pivot_col = std::move(pivots);
  return out;
}

} // namespace

Rat QMat::det() const {
  assert(r_ == c_);
  if (r_ == 0)
    return Rat(1);
  // clear denominators per row, Bareiss on the integer part
  ZMat z(r_, c_);
  Rat scale(1);
  for (int i = 0; i < r_; ++i) {
    std::vector<Rat> rv = row(i);
    Int d = common_denominator(rv);
    scale /= Rat(d);
    for (int j = 0; j < c_; ++j) {
      Rat e = rv[j] * Rat(d);
      z.at(i, j) = e.get_num();
    }
  }
  return Rat(z.det()) * scale;
}

std::optional<QMat> QMat::inverse() const {
  assert(r_ == c_);
  QMat aug(r_, 2 * c_);
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j)
      aug.at(i, j) = at(i, j);
    aug.at(i, c_ + i) = 1;
  }
  Rref rr = rref(std::move(aug));
  if ((int)rr.pivot_col.size() != r_ || (r_ > 0 && rr.pivot_col.back() >= c_))
    return std::nullopt;
  for (int k = 0; k < r_; ++k)
    if (rr.pivot_col[k] != k)
      return std::nullopt;
  QMat inv(r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      inv.at(i, j) = rr.m.at(i, c_ + j);
  return inv;
}

int QMat::rank() const { return (int)rref(*this).pivot_col.size(); }

std::optional<std::vector<Rat>> QMat::solve(const std::vector<Rat> &b) const {
  assert((int)b.size() == r_);
  QMat aug(r_, c_ + 1);
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j)
      aug.at(i, j) = at(i, j);
    aug.at(i, c_) = b[i];
  }
  Rref rr = rref(std::move(aug));
  std::vector<Rat> x(c_);
  for (size_t k = 0; k < rr.pivot_col.size(); ++k) {
    if (rr.pivot_col[k] == c_)
      return std::nullopt; // inconsistent
    x[rr.pivot_col[k]] = rr.m.at((int)k, c_);
  }
  return x;
}

QMat QMat::kernel() const {
  Rref rr = rref(*this);
  std::vector<bool> is_pivot(c_, false);
  for (int p : rr.pivot_col)
    is_pivot[p] = true;
  std::vector<std::vector<Rat>> rows;
  for (int j = 0; j < c_; ++j) {
    if (is_pivot[j])
      continue;
    std::vector<Rat> v(c_);
    v[j] = 1;
    for (size_t k = 0; k < rr.pivot_col.size(); ++k)
      v[rr.pivot_col[k]] = -rr.m.at((int)k, j);
    rows.push_back(std::move(v));
  }
  if (rows.empty())
    return QMat(0, c_);
  return QMat::from_rows(rows);
}

ZMat ZMat::identity(int n) {
  ZMat m(n, n);
  for (int i = 0; i < n; ++i)
    m.at(i, i) = 1;
  return m;
}

QMat ZMat::to_q() const {
  QMat q(r_, c_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      q.at(i, j) = Rat(at(i, j));
  return q;
}

ZMat ZMat::operator*(const ZMat &o) const {
  assert(c_ == o.r_);
  ZMat p(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Int &a = at(i, k);
      if (sgn(a) == 0)
        continue;
      for (int j = 0; j < o.c_; ++j)
        p.at(i, j) += a * o.at(k, j);
    }
  return p;
}

Int ZMat::det() const {
  assert(r_ == c_);
  int n = r_;
  if (n == 0)
    return 1;
  ZMat m = *this;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (sgn(m.at(k, k)) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (sgn(m.at(i, k)) != 0) {
          p = i;
          break;
        }
      if (p < 0)
        return 0;
      for (int j = 0; j < n; ++j)
        swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

namespace {

// In-place row HNF over the leading `lead` columns; pivot positions are
// recorded. Rows beyond the pivot rows have zeros in the leading columns.
void hnf_rows(ZMat &m, int lead, std::vector<int> &pivot_cols) {
  int row = 0;
  for (int col = 0; col < lead && row < m.rows(); ++col) {
    // gcd-eliminate entries below `row` in this column
    while (true) {
      int best = -1;
      for (int i = row; i < m.rows(); ++i)
        if (sgn(m.at(i, col)) != 0 &&
            (best < 0 || mpz_cmpabs(m.at(i, col).get_mpz_t(),
                                    m.at(best, col).get_mpz_t()) < 0))
          best = i;
      if (best < 0)
        break;
      if (best != row)
        for (int j = 0; j < m.cols(); ++j)
          swap(m.at(best, j), m.at(row, j));
      bool done = true;
      for (int i = row + 1; i < m.rows(); ++i) {
        if (sgn(m.at(i, col)) == 0)
          continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m.at(i, col).get_mpz_t(),
                   m.at(row, col).get_mpz_t());
        for (int j = 0; j < m.cols(); ++j)
          m.at(i, j) -= q * m.at(row, j);
        if (sgn(m.at(i, col)) != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (sgn(m.at(row, col)) == 0)
      continue;
    if (sgn(m.at(row, col)) < 0)
      for (int j = 0; j < m.cols(); ++j)
        m.at(row, j) = -m.at(row, j);
    // reduce the rows above
    for (int i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m.at(i, col).get_mpz_t(),
                 m.at(row, col).get_mpz_t());
      if (sgn(q) == 0)
        continue;
      for (int j = 0; j < m.cols(); ++j)
        m.at(i, j) -= q * m.at(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }
}

} // namespace

ZMat row_hnf(const ZMat &m) {
  ZMat w = m;
  std::vector<int> pivots;
  hnf_rows(w, w.cols(), pivots);
  ZMat out((int)pivots.size(), m.cols());
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j)
      out.at(i, j) = w.at(i, j);
  return out;
}

ZMat int_kernel(const ZMat &m) {
  // HNF of [m^T | I]; rows with zero leading block give the kernel.
  int r = m.rows(), c = m.cols();
  ZMat w(c, r + c);
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < r; ++j)
      w.at(i, j) = m.at(j, i);
    w.at(i, r + i) = 1;
  }
  std::vector<int> pivots;
  hnf_rows(w, r, pivots);
  int lead_rank = (int)pivots.size();
  ZMat ker(c - lead_rank, c);
  for (int i = lead_rank; i < c; ++i)
    for (int j = 0; j < c; ++j)
      ker.at(i - lead_rank, j) = w.at(i, r + j);
  return ker;
}

QLattice QLattice::from_generators(const QMat &gen) {
  if (gen.rows() == 0)
    return QLattice(QMat(0, gen.cols()));
  Int den = 1;
  for (int i = 0; i < gen.rows(); ++i) {
    Int d = common_denominator(gen.row(i));
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  ZMat z(gen.rows(), gen.cols());
  for (int i = 0; i < gen.rows(); ++i)
    for (int j = 0; j < gen.cols(); ++j) {
      Rat e = gen.at(i, j) * Rat(den);
      z.at(i, j) = e.get_num();
    }
  ZMat h = row_hnf(z);
  QMat b = h.to_q().scaled(Rat(1, den));
  return QLattice(std::move(b));
}

std::optional<std::vector<Rat>>
QLattice::coords_in_span(const std::vector<Rat> &v) const {
  // solve basis^T x = v
  return basis_.transpose().solve(v);
}

bool QLattice::contains(const std::vector<Rat> &v) const {
  auto c = coords_in_span(v);
  if (!c)
    return false;
  for (const auto &x : *c)
    if (x.get_den() != 1)
      return false;
  return true;
}

bool QLattice::contains(const QLattice &other) const {
  for (int i = 0; i < other.basis_.rows(); ++i)
    if (!contains(other.basis_.row(i)))
      return false;
  return true;
}

QLattice QLattice::scaled(const Rat &c) const {
  return QLattice(basis_.scaled(c));
}

QLattice QLattice::sum(const QLattice &other) const {
  assert(ambient_dim() == other.ambient_dim());
  QMat stack(rank() + other.rank(), ambient_dim());
  for (int i = 0; i < rank(); ++i)
    stack.set_row(i, basis_.row(i));
  for (int i = 0; i < other.rank(); ++i)
    stack.set_row(rank() + i, other.basis_.row(i));
  return from_generators(stack);
}

QLattice QLattice::intersect(const QLattice &other) const {
  assert(ambient_dim() == other.ambient_dim());
  int rl = rank(), rm = other.rank(), n = ambient_dim();
  if (rl == 0 || rm == 0)
    return QLattice(QMat(0, n));
  // integer relations a B_L = b B_M after a common rescale
  QMat stack(rl + rm, n);
  for (int i = 0; i < rl; ++i)
    stack.set_row(i, basis_.row(i));
  for (int i = 0; i < rm; ++i) {
    auto r = other.basis_.row(i);
    for (auto &x : r)
      x = -x;
    stack.set_row(rl + i, r);
  }
  Int den = 1;
  for (int i = 0; i < stack.rows(); ++i) {
    Int d = common_denominator(stack.row(i));
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  ZMat zt(n, rl + rm); // transpose of the scaled stack
  for (int i = 0; i < rl + rm; ++i)
    for (int j = 0; j < n; ++j) {
      Rat e = stack.at(i, j) * Rat(den);
      zt.at(j, i) = e.get_num();
    }
  ZMat ker = int_kernel(zt);
  if (ker.rows() == 0)
    return QLattice(QMat(0, n));
  QMat gens(ker.rows(), n);
  for (int i = 0; i < ker.rows(); ++i) {
    std::vector<Rat> a(rl);
    for (int j = 0; j < rl; ++j)
      a[j] = Rat(ker.at(i, j));
    gens.set_row(i, basis_.apply_left(a));
  }
  return from_generators(gens);
}

Rat QLattice::index_over(const QLattice &sub) const {
  assert(rank() == sub.rank());
  int r = rank();
  QMat C(r, r);
  for (int i = 0; i < r; ++i) {
    auto c = coords_in_span(sub.basis_.row(i));
    if (!c)
      throw std::domain_error("index_over: spans differ");
    C.set_row(i, *c);
  }
  Rat d = C.det();
  if (sgn(d) == 0)
    throw std::domain_error("index_over: degenerate sublattice");
  return abs(d);
}

QLattice QLattice::preimage(const QMat &M) const {
  int n = M.rows(), k = M.cols();
  assert(n == ambient_dim());
  if (M.rank() != k)
    throw std::domain_error("preimage: map not injective");
  int rho = rank();
  // kernel of [M | -B^T] gives pairs (x, c) with Mx = B^T c
  QMat aug(n, k + rho);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j)
      aug.at(i, j) = M.at(i, j);
    for (int j = 0; j < rho; ++j)
      aug.at(i, k + j) = -basis_.at(j, i);
  }
  QMat K = aug.kernel();
  int s = K.rows();
  if (s == 0)
    return QLattice(QMat(0, k));
  QMat C(rho, s); // columns: coordinate parts c_j
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < rho; ++i)
      C.at(i, j) = K.at(j, k + i);
  // lattice {t : C t integral} = preimage of (Z^rho cap colspan C)
  QLattice zr(QMat::identity(rho));
  QLattice W = zr.intersect_subspace(C);
  std::vector<std::vector<Rat>> rows;
  for (int i = 0; i < W.rank(); ++i) {
    auto t = C.solve(W.basis().row(i));
    assert(t);
    std::vector<Rat> x(k);
    for (int j = 0; j < s; ++j)
      for (int a = 0; a < k; ++a)
        x[a] += (*t)[j] * K.at(j, a);
    rows.push_back(std::move(x));
  }
  if (rows.empty())
    return QLattice(QMat(0, k));
  return from_generators(QMat::from_rows(rows));
}

QLattice QLattice::intersect_subspace(const QMat &S) const {
  assert(S.rows() == ambient_dim());
  // annihilator of colspan(S): kernel of S^T
  QMat V = S.transpose().kernel(); // rows v with S^T v = 0
  if (V.rows() == 0)
    return *this;
  // y B V^T = 0 over integers
  QMat BVt = basis_ * V.transpose(); // rank x V.rows()
  Int den = 1;
  for (int i = 0; i < BVt.rows(); ++i) {
    Int d = common_denominator(BVt.row(i));
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  ZMat zt(BVt.cols(), BVt.rows());
  for (int i = 0; i < BVt.rows(); ++i)
    for (int j = 0; j < BVt.cols(); ++j) {
      Rat e = BVt.at(i, j) * Rat(den);
      zt.at(j, i) = e.get_num();
    }
  ZMat ker = int_kernel(zt);
  if (ker.rows() == 0)
    return QLattice(QMat(0, ambient_dim()));
  QMat gens(ker.rows(), ambient_dim());
  for (int i = 0; i < ker.rows(); ++i) {
    std::vector<Rat> y(rank());
    for (int j = 0; j < rank(); ++j)
      y[j] = Rat(ker.at(i, j));
    gens.set_row(i, basis_.apply_left(y));
  }
  return from_generators(gens);
}

Rat gram_det(const QMat &B) { return (B * B.transpose()).det(); }

} // namespace skewred
