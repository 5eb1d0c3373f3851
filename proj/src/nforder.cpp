#include "skewred/nforder.hpp"

namespace skewred {

NFOrder::NFOrder(NFPtr field, QLattice lattice)
    : field_(std::move(field)), lattice_(std::move(lattice)) {
  int n = field_->degree();
  if (lattice_.rank() != n || lattice_.ambient_dim() != n)
    throw std::invalid_argument("order basis must have full rank");
  if (!lattice_.contains(field_->one()))
    throw std::invalid_argument("order must contain 1");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      NFElement p = field_->mul(lattice_.basis().row(i), lattice_.basis().row(j));
      if (!lattice_.contains(p))
        throw std::invalid_argument("order not multiplicatively closed");
    }
}

Int NFOrder::disc_abs() const {
  int n = field_->degree();
  QMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      NFElement p = field_->mul(lattice_.basis().row(i), lattice_.basis().row(j));
      g.at(i, j) = nf_norm_trace(*field_, p).second;
    }
  Rat d = abs(g.det());
  if (d.get_den() != 1)
    throw std::logic_error("order discriminant not integral");
  return d.get_num();
}

NFIdeal::NFIdeal(std::shared_ptr<const NFOrder> order, QLattice lattice)
    : order_(std::move(order)), lattice_(std::move(lattice)) {
  const auto &f = order_->field();
  for (int i = 0; i < order_->lattice().rank(); ++i)
    for (int j = 0; j < lattice_.rank(); ++j) {
      NFElement p = f->mul(order_->lattice().basis().row(i),
                           lattice_.basis().row(j));
      if (!lattice_.contains(p))
        throw std::invalid_argument("not an ideal: not order-stable");
    }
}

NFIdeal NFIdeal::principal(std::shared_ptr<const NFOrder> order,
                           const NFElement &g) {
  const auto &f = order->field();
  int n = f->degree();
  QMat gens(order->lattice().rank(), n);
  for (int i = 0; i < order->lattice().rank(); ++i)
    gens.set_row(i, f->mul(g, order->lattice().basis().row(i)));
  return NFIdeal(order, QLattice::from_generators(gens));
}

Int ideal_norm(const NFOrder &order, const NFIdeal &ideal) {
  if (ideal.lattice().rank() != order.lattice().rank())
    throw std::domain_error("ideal not full rank");
  Rat idx = order.lattice().index_over(ideal.lattice());
  if (idx.get_den() != 1)
    throw std::domain_error("ideal not contained in order");
  return idx.get_num();
}

NFIdeal conductor(const NFOrder &suborder, NFOrderPtr maximal) {
  const auto &f = suborder.field();
  int n = f->degree();
  if (!maximal->lattice().contains(suborder.lattice()))
    throw std::invalid_argument("suborder not contained in maximal order");
  // alpha with alpha * b_j in suborder for every basis element b_j of the
  // maximal order; stack the multiplication maps and take a preimage.
  QMat M(n * n, n);
  for (int j = 0; j < n; ++j) {
    QMat mj = f->mult_matrix(maximal->lattice().basis().row(j));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        M.at(j * n + r, c) = mj.at(r, c);
  }
  // target: direct sum of n copies of the suborder lattice
  QMat big(n * n, n * n);
  for (int blk = 0; blk < n; ++blk)
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < n; ++c)
        big.at(blk * n + i, blk * n + c) = suborder.lattice().basis().at(i, c);
  QLattice target(QLattice::from_generators(big));
  QLattice cond = target.preimage(M);
  return NFIdeal(maximal, cond);
}

NFOrderPtr maximal_order(NFPtr field) {
  int n = field->degree();
  if (n == 1)
    return std::make_shared<NFOrder>(field, QLattice(QMat::identity(1)));
  if (n != 2)
    throw std::domain_error("maximal order computation limited to degree <= 2");
  // x^2 + b x + c; disc = b^2 - 4c = s^2 d0 with d0 squarefree
  Int b = field->min_poly()[1], c = field->min_poly()[0];
  Int disc = b * b - 4 * c;
  Int s = 1, d0 = disc;
  for (Int p = 2; p * p <= abs(d0); ++p) {
    while (d0 % (p * p) == 0) {
      d0 /= p * p;
      s *= p;
    }
  }
  // sqrt(d0) = (2x + b)/s
  NFElement sqrt_d0(2);
  sqrt_d0[0] = Rat(b, s);
  sqrt_d0[1] = Rat(2, s);
  sqrt_d0[0].canonicalize();
  sqrt_d0[1].canonicalize();
  NFElement omega;
  Int rem;
  mpz_mod_ui(rem.get_mpz_t(), d0.get_mpz_t(), 4);
  if (rem == 1) {
    omega = {(Rat(1) + sqrt_d0[0]) / 2, sqrt_d0[1] / 2};
  } else {
    omega = sqrt_d0;
  }
  QMat basis(2, 2);
  basis.at(0, 0) = 1;
  basis.at(1, 0) = omega[0];
  basis.at(1, 1) = omega[1];
  return std::make_shared<NFOrder>(field, QLattice(basis));
}

QLattice ideal_module_product(const NFIdeal &ideal, const QLattice &module,
                              int rank_n) {
  const auto &f = ideal.order()->field();
  int deg = f->degree();
  if (module.ambient_dim() != rank_n * deg)
    throw std::invalid_argument("module coordinates must be F^n");
  std::vector<std::vector<Rat>> gens;
  for (int i = 0; i < ideal.lattice().rank(); ++i) {
    NFElement a = ideal.lattice().basis().row(i);
    for (int j = 0; j < module.rank(); ++j) {
      std::vector<Rat> m = module.basis().row(j), out(rank_n * deg);
      for (int k = 0; k < rank_n; ++k) {
        NFElement comp(m.begin() + k * deg, m.begin() + (k + 1) * deg);
        NFElement prod = f->mul(a, comp);
        for (int t = 0; t < deg; ++t)
          out[k * deg + t] = prod[t];
      }
      gens.push_back(std::move(out));
    }
  }
  return QLattice::from_generators(QMat::from_rows(gens));
}

Rat scaled_covolume(const NFIdeal &ideal, const QLattice &module, int rank_n) {
  QLattice im = ideal_module_product(ideal, module, rank_n);
  if (im.rank() != module.rank())
    throw std::domain_error("degenerate module");
  Rat ratio = module.index_over(im); // covol(IM)/covol(M)
  Int nm = ideal_norm(*ideal.order(), ideal);
  Rat expected = pow_rat(Rat(nm), rank_n);
  if (ratio != expected)
    throw std::runtime_error("GCI hypothesis violated");
  return ratio;
}

} // namespace skewred
