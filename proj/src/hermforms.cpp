#include "skewred/hermforms.hpp"

#include <stdexcept>

namespace skewred {

namespace {

AlgElement block_of(const Algebra &alg, const std::vector<Rat> &x, int t) {
  AlgElement a(alg.dimq());
  for (int i = 0; i < alg.dimq(); i++)
    a[i] = x[size_t(t) * alg.dimq() + i];
  return a;
}

void set_block(const Algebra &alg, std::vector<Rat> &x, int t,
               const AlgElement &a) {
  for (int i = 0; i < alg.dimq(); i++)
    x[size_t(t) * alg.dimq() + i] = a[i];
}

} // namespace

DModule DModule::standard(AlgPtr alg, int m) {
  DModule mod;
  mod.alg = alg;
  mod.m = m;
  mod.n = m * alg->dimq();
  for (int i = 0; i < alg->dimq(); i++) {
    QMat lm = alg->left_mult_matrix(alg->basis_elem(i));
    QMat big(mod.n, mod.n);
    for (int t = 0; t < m; t++)
      for (int r = 0; r < alg->dimq(); r++)
        for (int c = 0; c < alg->dimq(); c++)
          big.at(t * alg->dimq() + r, t * alg->dimq() + c) = lm.at(r, c);
    mod.action.push_back(std::move(big));
  }
  return mod;
}

DModule DModule::from_action(AlgPtr alg, std::vector<QMat> action, int m) {
  DModule mod;
  mod.alg = alg;
  mod.m = m;
  mod.action = std::move(action);
  if ((int)mod.action.size() != alg->dimq())
    throw std::invalid_argument("module: wrong number of action matrices");
  mod.n = mod.action[0].rows();

  auto combo = [&](const AlgElement &a) {
    QMat s(mod.n, mod.n);
    for (int i = 0; i < alg->dimq(); i++)
      if (a[i] != 0)
        s = s + mod.action[i].scaled(a[i]);
    return s;
  };
  if (!(combo(alg->one()) == QMat::identity(mod.n)))
    throw std::invalid_argument("module: unit does not act as identity");
  for (int i = 0; i < alg->dimq(); i++)
    for (int j = 0; j < alg->dimq(); j++) {
      AlgElement p = alg->mul(alg->basis_elem(i), alg->basis_elem(j));
      if (!(mod.action[i] * mod.action[j] == combo(p)))
        throw std::invalid_argument("module: action is not multiplicative");
    }
  return mod;
}

std::vector<Rat> DModule::act(const AlgElement &a,
                              const std::vector<Rat> &x) const {
  std::vector<Rat> out(n);
  for (int i = 0; i < alg->dimq(); i++) {
    if (a[i] == 0)
      continue;
    std::vector<Rat> part = action[i].apply(x);
    for (int r = 0; r < n; r++)
      out[r] += a[i] * part[r];
  }
  return out;
}

SkewForm::SkewForm(AlgPtr alg, std::vector<std::vector<AlgElement>> gram)
    : alg_(std::move(alg)), m_((int)gram.size()), gram_(std::move(gram)) {
  for (auto &row : gram_)
    if ((int)row.size() != m_)
      throw std::invalid_argument("skew form: gram is not square");
  for (int i = 0; i < m_; i++)
    for (int j = 0; j < m_; j++) {
      AlgElement want = alg_->neg(alg_->dag(gram_[i][j]));
      if (gram_[j][i] != want)
        throw std::invalid_argument("skew form: not skew-Hermitian");
    }
}

AlgElement SkewForm::eval(const std::vector<Rat> &x,
                          const std::vector<Rat> &y) const {
  if ((int)x.size() != qdim() || (int)y.size() != qdim())
    throw std::invalid_argument("skew form: bad vector length");
  AlgElement acc = alg_->zero();
  for (int s = 0; s < m_; s++) {
    AlgElement xs = block_of(*alg_, x, s);
    if (alg_->is_zero(xs))
      continue;
    for (int t = 0; t < m_; t++) {
      AlgElement yt = block_of(*alg_, y, t);
      if (alg_->is_zero(yt))
        continue;
      acc = alg_->add(acc,
                      alg_->mul(alg_->mul(xs, gram_[s][t]), alg_->dag(yt)));
    }
  }
  return acc;
}

std::vector<Rat> SkewForm::mod_mul(const AlgElement &a,
                                   const std::vector<Rat> &x) const {
  std::vector<Rat> out(qdim());
  for (int t = 0; t < m_; t++)
    set_block(*alg_, out, t, alg_->mul(a, block_of(*alg_, x, t)));
  return out;
}

SkewForm SkewForm::on_basis(const std::vector<std::vector<Rat>> &basis) const {
  int mm = (int)basis.size();
  std::vector<std::vector<AlgElement>> g(mm, std::vector<AlgElement>(mm));
  for (int i = 0; i < mm; i++)
    for (int j = 0; j < mm; j++)
      g[i][j] = eval(basis[i], basis[j]);
  return SkewForm(alg_, std::move(g));
}

QMat trd_form(const SkewForm &form) {
  const Algebra &alg = *form.algebra();
  int dq = alg.dimq(), n = form.qdim();
  QMat phi(n, n);
  for (int s = 0; s < form.m(); s++)
    for (int t = 0; t < form.m(); t++) {
      const AlgElement &g = form.gram(s, t);
      for (int i = 0; i < dq; i++) {
        AlgElement left = alg.mul(alg.basis_elem(i), g);
        for (int j = 0; j < dq; j++)
          phi.at(s * dq + i, t * dq + j) =
              alg.trd_q(alg.mul(left, alg.dag(alg.basis_elem(j))));
      }
    }
  return phi;
}

AlgElement solve_trd_functional(const Algebra &alg,
                                const std::vector<Rat> &vals) {
  int dq = alg.dimq();
  // M[i][k] = Trd(e_k e_i†); positive involution makes this invertible
  QMat M(dq, dq);
  for (int i = 0; i < dq; i++) {
    AlgElement di = alg.dag(alg.basis_elem(i));
    for (int k = 0; k < dq; k++)
      M.at(i, k) = alg.trd_q(alg.mul(alg.basis_elem(k), di));
  }
  auto z = M.solve(vals);
  if (!z)
    throw std::runtime_error("trace pairing degenerate");
  return *z;
}

SkewForm form_from_symplectic(const DModule &module, const QMat &phi,
                              const std::vector<std::vector<Rat>> &d_basis) {
  const Algebra &alg = *module.alg;
  int n = module.n, dq = alg.dimq(), m = (int)d_basis.size();
  if (phi.rows() != n || phi.cols() != n)
    throw std::invalid_argument("phi has wrong size");
  if (!(phi.transpose() == phi.scaled(Rat(-1))))
    throw std::invalid_argument("not (D,\xe2\x80\xa0)-compatible");
  // phi(a x, y) = phi(x, a† y) for every basis a of D
  for (int i = 0; i < dq; i++) {
    AlgElement di = alg.dag(alg.basis_elem(i));
    QMat act_dag(n, n);
    for (int k = 0; k < dq; k++)
      if (di[k] != 0)
        act_dag = act_dag + module.action[k].scaled(di[k]);
    if (!(module.action[i].transpose() * phi == phi * act_dag))
      throw std::invalid_argument("not (D,\xe2\x80\xa0)-compatible");
  }

  auto pair_phi = [&](const std::vector<Rat> &x, const std::vector<Rat> &y) {
    std::vector<Rat> px = phi.apply_left(x);
    Rat s;
    for (int r = 0; r < n; r++)
      s += px[r] * y[r];
    return s;
  };

  std::vector<std::vector<AlgElement>> gram(m, std::vector<AlgElement>(m));
  for (int s = 0; s < m; s++)
    for (int t = 0; t < m; t++) {
      // Trd(psi(v_s, v_t) b†) = phi(v_s, b v_t)
      std::vector<Rat> vals(dq);
      for (int i = 0; i < dq; i++)
        vals[i] = pair_phi(d_basis[s], module.act(alg.basis_elem(i), d_basis[t]));
      gram[s][t] = solve_trd_functional(alg, vals);
    }
  SkewForm psi(module.alg, std::move(gram));

  // sanity: {e_i v_t} must be a Q-basis and reproduce phi exactly
  QMat base(n, n);
  int row = 0;
  for (int t = 0; t < m; t++)
    for (int i = 0; i < dq; i++)
      base.set_row(row++, module.act(alg.basis_elem(i), d_basis[t]));
  if (base.rank() != n)
    throw std::invalid_argument("d_basis does not span the module");
  for (int s = 0; s < m; s++)
    for (int i = 0; i < dq; i++)
      for (int t = 0; t < m; t++) {
        AlgElement left = alg.mul(alg.basis_elem(i), psi.gram(s, t));
        for (int j = 0; j < dq; j++) {
          Rat want = pair_phi(base.row(s * dq + i), base.row(t * dq + j));
          if (alg.trd_q(alg.mul(left, alg.dag(alg.basis_elem(j)))) != want)
            throw std::invalid_argument("not (D,\xe2\x80\xa0)-compatible");
        }
      }
  return psi;
}

bool is_nondegenerate(const SkewForm &form) {
  return trd_form(form).det() != 0;
}

std::vector<Rat> solve_functional(const SkewForm &form,
                                  const std::vector<Rat> &x,
                                  const AlgElement &target) {
  const Algebra &alg = *form.algebra();
  int n = form.qdim(), dq = alg.dimq();
  bool zero = true;
  for (auto &c : x)
    if (c != 0)
      zero = false;
  if (zero)
    throw std::invalid_argument("solve_functional: x is zero");
  // psi(x, y) is Q-linear in y
  QMat M(dq, n);
  for (int c = 0; c < n; c++) {
    std::vector<Rat> unit(n);
    unit[c] = 1;
    AlgElement col = form.eval(x, unit);
    for (int r = 0; r < dq; r++)
      M.at(r, c) = col[r];
  }
  auto y = M.solve(target);
  if (!y)
    throw std::runtime_error("solve_functional: no solution");
  return *y;
}

std::vector<std::vector<Rat>> unitary_d_basis(const SkewForm &form) {
  const Algebra &alg = *form.algebra();
  int n = form.qdim(), dq = alg.dimq();

  auto invertible = [&](const AlgElement &a) {
    return !alg.is_zero(a) && alg.nrd_q(a) != 0;
  };

  std::vector<std::vector<Rat>> work;
  AlgElement unit = alg.one();
  for (int t = 0; t < form.m(); t++) {
    std::vector<Rat> v(n);
    for (int r = 0; r < dq; r++)
      v[t * dq + r] = unit[r]; // 1 * v_t
    work.push_back(std::move(v));
  }

  std::vector<std::vector<Rat>> out;
  while (!work.empty()) {
    std::optional<std::vector<Rat>> pivot;
    for (auto &w : work)
      if (invertible(form.eval(w, w))) {
        pivot = w;
        break;
      }
    if (!pivot) {
      for (size_t s = 0; s < work.size() && !pivot; s++)
        for (size_t t = 0; t < work.size() && !pivot; t++) {
          if (s == t)
            continue;
          for (int i = 0; i < dq && !pivot; i++) {
            std::vector<Rat> z = work[s];
            std::vector<Rat> add = form.mod_mul(alg.basis_elem(i), work[t]);
            for (int r = 0; r < n; r++)
              z[r] += add[r];
            if (invertible(form.eval(z, z)))
              pivot = z;
          }
        }
    }
    if (!pivot)
      throw std::runtime_error("no invertible pivot (degenerate form?)");

    AlgElement piv_inv = alg.inv(form.eval(*pivot, *pivot));
    // project the rest into the orthogonal complement, then keep a
    // D-independent subset (the pivot may have been a combination)
    std::vector<std::vector<Rat>> rest;
    std::vector<std::vector<Rat>> span_rows;
    for (auto &w : work) {
      AlgElement coef = alg.mul(form.eval(w, *pivot), piv_inv);
      std::vector<Rat> proj = form.mod_mul(coef, *pivot);
      std::vector<Rat> red(n);
      bool nonzero = false;
      for (int r = 0; r < n; r++) {
        red[r] = w[r] - proj[r];
        if (red[r] != 0)
          nonzero = true;
      }
      if (!nonzero)
        continue;
      std::vector<std::vector<Rat>> probe = span_rows;
      probe.push_back(red);
      if (QMat::from_rows(probe).rank() == (int)span_rows.size())
        continue; // already in the D-span of what we kept
      rest.push_back(red);
      for (int i = 0; i < dq; i++)
        span_rows.push_back(form.mod_mul(alg.basis_elem(i), red));
    }
    out.push_back(*pivot);
    work = std::move(rest);
  }
  return out;
}

Rat NormModel::norm2(const std::vector<Rat> &x) const {
  std::vector<Rat> gx = gram.apply(x);
  Rat s;
  for (size_t i = 0; i < x.size(); i++)
    s += x[i] * gx[i];
  return s;
}

double NormModel::norm(const std::vector<Rat> &x) const {
  return std::sqrt(norm2(x).get_d());
}

QLattice order_span(const AlgOrder &order,
                    const std::vector<std::vector<Rat>> &vectors) {
  const Algebra &alg = *order.algebra();
  int dq = alg.dimq();
  int n = (int)vectors.at(0).size();
  int m = n / dq;
  QMat gen((int)vectors.size() * order.lattice().rank(), n);
  int row = 0;
  for (auto &v : vectors)
    for (int b = 0; b < order.lattice().rank(); b++) {
      AlgElement ob = order.lattice().basis().row(b);
      std::vector<Rat> g(n);
      for (int t = 0; t < m; t++)
        set_block(alg, g, t, alg.mul(ob, block_of(alg, v, t)));
      gen.set_row(row++, g);
    }
  return QLattice::from_generators(gen);
}

Rat form_disc(const SkewForm &form, const QLattice &lattice) {
  QMat B = lattice.basis();
  QMat G = B * trd_form(form) * B.transpose();
  Rat d = G.det();
  return d < 0 ? Rat(-d) : d;
}

Rat disc_weak_diag(const AlgOrder &order, const SkewForm &form,
                   const std::vector<std::vector<Rat>> &basis,
                   const std::vector<int> &sigma) {
  const Algebra &alg = *order.algebra();
  int m = (int)basis.size();
  if ((int)sigma.size() != m)
    throw std::invalid_argument("sigma has wrong length");
  std::vector<int> seen(m);
  for (int i = 0; i < m; i++) {
    if (sigma[i] < 0 || sigma[i] >= m || seen[sigma[i]]++)
      throw std::invalid_argument("not permutation-supported");
    for (int j = 0; j < m; j++) {
      bool nz = !alg.is_zero(form.eval(basis[i], basis[j]));
      if (nz != (j == sigma[i]))
        throw std::invalid_argument("not permutation-supported");
    }
  }

  Rat lhs = form_disc(form, order_span(order, basis));

  Int disc = order_disc(order);
  Rat rhs(1);
  // one factor of k per summand: disc is multiplicative over the
  // orthogonal decomposition R v_1 + ... + R v_m
  if (alg.albert_type() == AlbertType::III) {
    Int den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 4ul * alg.e() * m);
    rhs = Rat(Int(1), den);
    rhs.canonicalize();
  } else {
    Int dd(alg.d()), den;
    mpz_pow_ui(den.get_mpz_t(), dd.get_mpz_t(),
               2ul * alg.d() * alg.d() * alg.e() * m);
    rhs = Rat(Int(1), den);
    rhs.canonicalize();
  }
  rhs *= pow_rat(Rat(disc), m);
  for (int i = 0; i < m; i++) {
    Rat nm = alg.left_mult_matrix(form.eval(basis[i], basis[sigma[i]])).det();
    rhs *= nm < 0 ? Rat(-nm) : nm;
  }

  if (lhs != rhs)
    throw std::logic_error("permuted-diagonal discriminant mismatch");
  return lhs;
}

} // namespace skewred
