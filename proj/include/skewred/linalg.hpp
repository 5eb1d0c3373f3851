#pragma once

#include "skewred/rational.hpp"

#include <cassert>
#include <optional>
#include <vector>

namespace skewred {

// Dense rational matrix, row-major.
class QMat {
public:
  QMat() : r_(0), c_(0) {}
  QMat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols) {}

  static QMat identity(int n);
  static QMat from_rows(const std::vector<std::vector<Rat>> &rows);

  int rows() const { return r_; }
  int cols() const { return c_; }

  Rat &at(int i, int j) { return a_[size_t(i) * c_ + j]; }
  const Rat &at(int i, int j) const { return a_[size_t(i) * c_ + j]; }

  std::vector<Rat> row(int i) const;
  void set_row(int i, const std::vector<Rat> &v);

  QMat transpose() const;
  QMat operator*(const QMat &o) const;
  QMat operator+(const QMat &o) const;
  QMat operator-(const QMat &o) const;
  QMat scaled(const Rat &c) const;
  bool operator==(const QMat &o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  std::vector<Rat> apply(const std::vector<Rat> &v) const;      // M v
  std::vector<Rat> apply_left(const std::vector<Rat> &v) const; // v^T M

  bool is_zero() const;
  Rat det() const;                  // square only
  std::optional<QMat> inverse() const;
  int rank() const;
  // Solve M x = b; nullopt when inconsistent. Returns one solution.
  std::optional<std::vector<Rat>> solve(const std::vector<Rat> &b) const;
  // Basis of the right kernel {x : M x = 0}, rows of the result.
  QMat kernel() const;

private:
  int r_, c_;
  std::vector<Rat> a_;
};

// Integer matrix, row-major.
class ZMat {
public:
  ZMat() : r_(0), c_(0) {}
  ZMat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols) {}

  static ZMat identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }

  Int &at(int i, int j) { return a_[size_t(i) * c_ + j]; }
  const Int &at(int i, int j) const { return a_[size_t(i) * c_ + j]; }

  QMat to_q() const;
  ZMat operator*(const ZMat &o) const;

  Int det() const; // Bareiss, square only

private:
  int r_, c_;
  std::vector<Int> a_;
};

// Row-style Hermite normal form: returns a matrix whose rows are a basis
// of the row lattice of m (zero rows dropped).
ZMat row_hnf(const ZMat &m);

// Basis (rows) of the integer kernel {x in Z^c : m x^T = 0}. Saturated.
ZMat int_kernel(const ZMat &m);

// Full-rank lattice in Q^n given by basis rows. Rank may be < n.
class QLattice {
public:
  QLattice() {}
  explicit QLattice(QMat basis) : basis_(std::move(basis)) {}

  // Lattice generated by the rows of gen (rational entries allowed).
  static QLattice from_generators(const QMat &gen);

  const QMat &basis() const { return basis_; }
  int rank() const { return basis_.rows(); }
  int ambient_dim() const { return basis_.cols(); }

  bool contains(const std::vector<Rat> &v) const;
  bool contains(const QLattice &other) const;
  // Coordinates of v in this basis if v lies in the spanned Q-subspace.
  std::optional<std::vector<Rat>> coords_in_span(const std::vector<Rat> &v) const;

  QLattice scaled(const Rat &c) const;
  QLattice sum(const QLattice &other) const;
  QLattice intersect(const QLattice &other) const;

  // [this : other] as a rational when both have equal rank and span;
  // integer iff other <= this.
  Rat index_over(const QLattice &sub) const;

  // {x : M x in this}, M a (ambient x k) rational matrix with full column
  // rank k; the result lives in Q^k. Requires this to have full rank in
  // the relevant directions (uses ambient containments only).
  QLattice preimage(const QMat &M) const;

  // Intersection with the column span of a rational matrix S (ambient x k),
  // as a lattice in the ambient space.
  QLattice intersect_subspace(const QMat &S) const;

private:
  QMat basis_;
};

// Gram determinant of rows of B under the standard inner product.
Rat gram_det(const QMat &B);

} // namespace skewred
