#include "skewred/algebra.hpp"

#include <algorithm>

namespace skewred {

AlgOrder::AlgOrder(AlgPtr alg, QLattice lattice)
    : alg_(std::move(alg)), lattice_(std::move(lattice)) {
  int n = alg_->dimq();
  if (lattice_.rank() != n || lattice_.ambient_dim() != n)
    throw std::invalid_argument("order basis must have full rank");
  if (!lattice_.contains(alg_->one()))
    throw std::invalid_argument("order must contain 1");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      AlgElement p =
          alg_->mul(lattice_.basis().row(i), lattice_.basis().row(j));
      if (!lattice_.contains(p))
        throw std::invalid_argument("order not multiplicatively closed");
    }
}

Int order_disc(const AlgOrder &order) {
  const Algebra &A = *order.algebra();
  int n = A.dimq();
  QMat g(n, n), gd(n, n); // Tr(b_i b_j†) and Trd(b_i b_j†)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      AlgElement p = A.mul(order.lattice().basis().row(i),
                           A.dag(order.lattice().basis().row(j)));
      gd.at(i, j) = A.trd_q(p);
      g.at(i, j) = Rat(A.d()) * gd.at(i, j);
    }
  Rat disc = abs(g.det());
  if (sgn(disc) == 0)
    throw std::invalid_argument("not an order");
  if (disc.get_den() != 1)
    throw std::logic_error("order discriminant not integral");
  // lower bound d^{2d^2 e} (IV) resp. d^{d^2 e} (III)
  unsigned long expo = (A.albert_type() == AlbertType::IV)
                           ? 2ul * A.d() * A.d() * A.e()
                           : (unsigned long)(A.d() * A.d() * A.e());
  if (disc < Rat(pow_int(Int(A.d()), expo)))
    throw std::logic_error("discriminant below the structural lower bound");
  // covolume identity: |disc| = d^{expo} covol^2 with covol^2 = det Trd-Gram
  Rat covol2 = gd.det();
  if (sgn(covol2) <= 0)
    throw std::logic_error("degenerate norm Gram matrix");
  if (disc != Rat(pow_int(Int(A.d()), expo)) * abs(covol2))
    throw std::logic_error("discriminant-covolume identity failed");
  return disc.get_num();
}

QLattice dual_lattice(const AlgOrder &order) {
  const Algebra &A = *order.algebra();
  int n = A.dimq();
  QMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g.at(i, j) = A.trd_q(A.mul(order.lattice().basis().row(i),
                                 order.lattice().basis().row(j)));
  auto gi = g.inverse();
  if (!gi)
    throw std::logic_error("degenerate trace pairing");
  return QLattice(*gi * order.lattice().basis());
}

AlgOrderPtr stabilizer_order(AlgPtr alg, const QLattice &lattice) {
  int n = alg->dimq();
  if (lattice.ambient_dim() % n != 0)
    throw std::invalid_argument("lattice is not in a D-power");
  int m = lattice.ambient_dim() / n;
  int rho = lattice.rank();
  if (rho != lattice.ambient_dim())
    throw std::invalid_argument("lattice not full rank");
  QMat M(rho * m * n, n);
  for (int k = 0; k < n; ++k) {
    QMat lk = alg->left_mult_matrix(alg->basis_elem(k));
    for (int r = 0; r < rho; ++r) {
      std::vector<Rat> x = lattice.basis().row(r);
      for (int t = 0; t < m; ++t) {
        AlgElement xt(x.begin() + t * n, x.begin() + (t + 1) * n);
        AlgElement y = lk.apply(xt);
        for (int i = 0; i < n; ++i)
          M.at(r * m * n + t * n + i, k) = y[i];
      }
    }
  }
  // target: rho copies of the lattice
  QMat big(rho * lattice.rank(), rho * m * n);
  for (int blk = 0; blk < rho; ++blk)
    for (int i = 0; i < lattice.rank(); ++i)
      for (int c = 0; c < m * n; ++c)
        big.at(blk * lattice.rank() + i, blk * m * n + c) =
            lattice.basis().at(i, c);
  QLattice target = QLattice::from_generators(big);
  QLattice stab = target.preimage(M);
  return std::make_shared<AlgOrder>(alg, stab);
}

std::vector<Int> sorted_divisors(const Int &n) {
  Int m = abs(n);
  if (sgn(m) == 0)
    throw std::domain_error("divisors of zero");
  std::vector<std::pair<Int, int>> fac;
  Int bound = 1000000;
  for (Int p = 2; p * p <= m && p <= bound; p += (p == 2 ? 1 : 2)) {
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (k)
      fac.push_back({p, k});
  }
  if (m > 1)
    fac.push_back({m, 1}); // prime or unfactored atom
  std::vector<Int> divs{Int(1)};
  for (auto &[p, k] : fac) {
    size_t base = divs.size();
    Int pk = 1;
    for (int i = 1; i <= k; ++i) {
      pk *= p;
      for (size_t j = 0; j < base; ++j)
        divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

Int eta_for(const AlgOrder &order, const Int &disc_l) {
  const Algebra &A = *order.algebra();
  int n = A.dimq();
  for (const Int &eta : sorted_divisors(disc_l)) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      AlgElement x = A.scale(A.dag(order.lattice().basis().row(i)), Rat(eta));
      if (!order.contains(x))
        ok = false;
    }
    if (ok)
      return eta;
  }
  throw std::logic_error("no eta within disc(L) makes the dual integral");
}

QLattice f0_lattice_in_alg(const Algebra &alg, const QLattice &f0_lat) {
  QMat emb = alg.f0_embedding_matrix(); // dimq x e
  QMat gens(f0_lat.rank(), alg.dimq());
  for (int i = 0; i < f0_lat.rank(); ++i)
    gens.set_row(i, emb.apply(f0_lat.basis().row(i)));
  return QLattice::from_generators(gens);
}

QLattice lattice_product(const Algebra &alg, const QLattice &a,
                         const QLattice &b) {
  std::vector<std::vector<Rat>> gens;
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < b.rank(); ++j)
      gens.push_back(alg.mul(a.basis().row(i), b.basis().row(j)));
  return QLattice::from_generators(QMat::from_rows(gens));
}

NFOrderPtr order_intersect_f0(const AlgOrder &R) {
  const Algebra &A = *R.algebra();
  NFPtr f0 = A.f0_field();
  QMat emb = A.f0_embedding_matrix();
  QLattice cap = R.lattice().intersect_subspace(emb);
  // express in F0 coordinates
  QMat coords(cap.rank(), f0->degree());
  for (int i = 0; i < cap.rank(); ++i) {
    auto c = emb.solve(cap.basis().row(i));
    if (!c)
      throw std::logic_error("intersection left the F0 line");
    coords.set_row(i, *c);
  }
  return std::make_shared<NFOrder>(f0, QLattice::from_generators(coords));
}

AlgOrderPtr s_order(const AlgOrder &R) {
  const Algebra &A = *R.algebra();
  NFOrderPtr maxo = maximal_order(A.f0_field());
  QLattice of0 = f0_lattice_in_alg(A, maxo->lattice());
  QLattice s = lattice_product(A, of0, R.lattice());
  return std::make_shared<AlgOrder>(R.algebra(), s);
}

NFIdeal stable_ideal(const AlgOrder &S) {
  const Algebra &A = *S.algebra();
  NFPtr f0 = A.f0_field();
  int edeg = f0->degree(), n = A.dimq();
  NFOrderPtr maxo = maximal_order(f0);
  QLattice sdual = dual_lattice(S);
  QMat emb = A.f0_embedding_matrix();
  // alpha in F0 with alpha * s*_r in S for all dual basis vectors
  int rho = sdual.rank();
  QMat M(rho * n, edeg);
  for (int p = 0; p < edeg; ++p) {
    NFElement bp = f0->zero();
    bp[p] = 1;
    QMat lp = A.left_mult_matrix(A.from_f0(bp));
    for (int r = 0; r < rho; ++r) {
      AlgElement y = lp.apply(sdual.basis().row(r));
      for (int i = 0; i < n; ++i)
        M.at(r * n + i, p) = y[i];
    }
  }
  QMat big(rho * S.lattice().rank(), rho * n);
  for (int blk = 0; blk < rho; ++blk)
    for (int i = 0; i < S.lattice().rank(); ++i)
      for (int c = 0; c < n; ++c)
        big.at(blk * S.lattice().rank() + i, blk * n + c) =
            S.lattice().basis().at(i, c);
  QLattice target = QLattice::from_generators(big);
  QLattice pre = target.preimage(M);
  QLattice ideal_lat = pre.intersect(maxo->lattice());
  return NFIdeal(maxo, ideal_lat);
}

} // namespace skewred

