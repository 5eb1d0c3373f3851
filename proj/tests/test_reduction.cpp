#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "skewred/reduction.hpp"

#include <random>

using namespace skewred;

namespace {

NFPtr gauss_field() { return NumberField::create({Int(1), Int(0), Int(1)}); }

AlgPtr hamilton() {
  auto q = NumberField::rationals();
  return Algebra::make_quaternion(q, {Rat(-1)}, {Rat(-1)});
}

AlgPtr gauss_alg() { return Algebra::make_matrix_cm(gauss_field(), 1); }

AlgElement elem(const Algebra &A, std::vector<long> coords) {
  AlgElement x = A.zero();
  for (size_t i = 0; i < coords.size(); i++)
    x[i] = coords[i];
  return x;
}

SkewForm rank1(AlgPtr A, const AlgElement &g) { return SkewForm(A, {{g}}); }

SkewForm hyperbolic(AlgPtr A) {
  return SkewForm(A, {{A->zero(), A->one()}, {A->neg(A->one()), A->zero()}});
}

LatticeInstance std_instance(AlgPtr A, SkewForm form) {
  return make_instance(A, std::move(form),
                       QLattice(QMat::identity(A->dimq() * form.m())));
}

AlgElement rnd_int_elem(const Algebra &A, std::mt19937_64 &rng, long h) {
  AlgElement x = A.zero();
  for (int i = 0; i < A.dimq(); i++)
    x[i] = Rat((long)(rng() % (2 * h + 1)) - h);
  return x;
}

SkewForm rnd_int_form(AlgPtr A, int m, std::mt19937_64 &rng, long h) {
  std::vector<std::vector<AlgElement>> g(m, std::vector<AlgElement>(m));
  for (int i = 0; i < m; i++) {
    g[i][i] = A->antisym_split(
                   A->scale(rnd_int_elem(*A, rng, h), Rat(2)))
                  .second;
    for (int j = i + 1; j < m; j++) {
      g[i][j] = rnd_int_elem(*A, rng, h);
      g[j][i] = A->neg(A->dag(g[i][j]));
    }
  }
  return SkewForm(A, std::move(g));
}

} // namespace

TEST_CASE("enumeration of short vectors") {
  QMat id2 = QMat::identity(2);
  auto v = shortest_vectors(id2, Rat(1));
  REQUIRE(v.size() == 4);
  for (auto &x : v)
    CHECK(abs(x[0]) + abs(x[1]) == 1);

  QMat a2(2, 2);
  a2.at(0, 0) = 2;
  a2.at(0, 1) = 1;
  a2.at(1, 0) = 1;
  a2.at(1, 1) = 2;
  auto v2 = shortest_vectors(a2, Rat(2));
  CHECK(v2.size() == 6);

  QMat dg(2, 2);
  dg.at(0, 0) = 4;
  dg.at(1, 1) = 9;
  CHECK(shortest_vectors(dg, Rat(3)).empty());

  CHECK_THROWS_WITH_AS(shortest_vectors(id2, Rat(0)), "bound must be positive",
                       std::invalid_argument);

  // against exhaustive box search on well-conditioned random grams
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; it++) {
    int n = 2 + (int)(rng() % 3);
    ZMat a(n, n);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++)
        a.at(i, j) = (long)(rng() % 5) - 2;
    QMat g(n, n);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        Rat s = i == j ? 1 : 0;
        for (int k = 0; k < n; k++)
          s += Rat(a.at(k, i) * a.at(k, j));
        g.at(i, j) = s;
      }
    Rat bound(1 + (long)(rng() % 10));
    auto fast = shortest_vectors(g, bound);
    // G >= I so |x_i|^2 <= bound
    long c = 3;
    std::vector<std::vector<Int>> slow;
    std::vector<long> x(n, -c);
    while (true) {
      std::vector<Int> vv(x.begin(), x.end());
      bool zero = true;
      Rat val = 0;
      for (int i = 0; i < n; i++) {
        if (x[i] != 0)
          zero = false;
        for (int j = 0; j < n; j++)
          val += Rat(x[i]) * g.at(i, j) * Rat(x[j]);
      }
      if (!zero && val <= bound)
        slow.push_back(vv);
      int i = 0;
      while (i < n && x[i] == c)
        x[i++] = -c;
      if (i == n)
        break;
      x[i]++;
    }
    CHECK(fast.size() == slow.size());
    auto sorted = fast;
    std::sort(sorted.begin(), sorted.end());
    std::sort(slow.begin(), slow.end());
    CHECK(sorted == slow);
  }
}

TEST_CASE("bound constants") {
  Constants c = constants_table(AlbertType::IV, 1, 1, 2);
  CHECK(c.index_eta == Rat(6));
  CHECK(c.psi_eta == Rat(3));
  CHECK(c.psi_L == Rat(3, 2));
  CHECK(c.index_L == Rat(25, 2));
  CHECK(c.index_mult_base == 256);
  CHECK(c.index_mult_exp == Rat(40));

  Constants q = constants_table(AlbertType::III, 2, 1, 2);
  CHECK(q.psi_eta == Rat(7));
  CHECK(q.psi_L == Rat(3, 8));
  CHECK(q.index_eta == Rat(28));

  CHECK(constants_table(AlbertType::IV, 2, 1, 1).psi_R == Rat(49, 2));
  CHECK_THROWS_AS(constants_table(AlbertType::III, 1, 1, 1),
                  std::invalid_argument);

  CHECK(hermite_pow(1) == Rat(1));
  CHECK(hermite_pow(2) == Rat(4, 3));
  CHECK(hermite_pow(8) == Rat(256));
  CHECK(hermite_pow(9) > 0);
  CHECK(hermite_pow(9) <= pow_rat(Rat(4, 3), 36));

  CHECK(power_product_le(Rat(8), 1, {{Rat(2), Rat(3)}}));
  CHECK_FALSE(power_product_le(Rat(9), 1, {{Rat(2), Rat(3)}}));
  CHECK(power_product_le(Rat(2), 1, {{Rat(8), Rat(1, 3)}}));
  CHECK_FALSE(power_product_le(Rat(3), 1, {{Rat(8), Rat(1, 3)}}));
  CHECK(power_product_le(Rat(5), Rat(1, 2), {{Rat(25), Rat(1, 4)}}));
}

TEST_CASE("instances") {
  auto G = gauss_alg();
  LatticeInstance inst = std_instance(G, rank1(G, elem(*G, {0, 1})));
  CHECK(inst.disc_l == 4);
  CHECK(inst.eta == 1);
  CHECK(inst.order->contains(elem(*G, {0, 1})));

  CHECK_THROWS_WITH_AS(
      make_instance(G, rank1(G, elem(*G, {0, 1})),
                    QLattice(QMat::identity(2).scaled(Rat(1, 2)))),
      "trace form is not integral", std::invalid_argument);

  CHECK_THROWS_WITH_AS(std_instance(G, rank1(G, G->zero())), "degenerate form",
                       std::invalid_argument);
}

TEST_CASE("successive minima over the algebra") {
  auto G = gauss_alg();
  LatticeInstance i1 = std_instance(G, rank1(G, elem(*G, {0, 1})));
  NormModel n1 = adapted_norm(i1.form);
  auto w1 = minkowski_dbasis(i1, n1);
  REQUIRE(w1.size() == 1);
  CHECK(to_double(n1.norm2(w1[0])) == doctest::Approx(2.0).epsilon(1e-4)); // a unit of Z[i]

  LatticeInstance ih = std_instance(G, hyperbolic(G));
  NormModel nh = adapted_norm(ih.form);
  auto wh = minkowski_dbasis(ih, nh);
  REQUIRE(wh.size() == 2);
  for (auto &w : wh) {
    CHECK(ih.lattice.contains(w));
    CHECK(to_double(nh.norm2(w)) == doctest::Approx(2.0).epsilon(1e-4));
  }

  // scaled lattice: basis scales, norms scale by 4
  LatticeInstance i2 = make_instance(G, hyperbolic(G),
                                     QLattice(QMat::identity(4).scaled(Rat(2))));
  auto w2 = minkowski_dbasis(i2, nh);
  for (auto &w : w2)
    CHECK(to_double(nh.norm2(w)) == doctest::Approx(8.0).epsilon(1e-4));
}

TEST_CASE("pair selection") {
  auto G = gauss_alg();
  SkewForm f1 = rank1(G, elem(*G, {0, 1}));
  NormModel n1 = adapted_norm(f1);
  std::vector<std::vector<Rat>> w1 = {{Rat(1), Rat(0)}};
  CHECK(select_pair(w1, f1, n1) == std::pair<int, int>{0, 0});

  SkewForm fh = hyperbolic(G);
  NormModel nh = adapted_norm(fh);
  std::vector<std::vector<Rat>> wh = {{Rat(1), Rat(0), Rat(0), Rat(0)},
                                      {Rat(0), Rat(0), Rat(1), Rat(0)}};
  CHECK(select_pair(wh, fh, nh) == std::pair<int, int>{0, 1});

  // diagonal unitary gram with |w1| <= |w2|
  AlgElement i = elem(*G, {0, 1});
  SkewForm fd(G, {{i, G->zero()}, {G->zero(), G->scale(i, Rat(2))}});
  NormModel nd = adapted_norm(fd);
  CHECK(select_pair(wh, fd, nd) == std::pair<int, int>{0, 0});
}

TEST_CASE("antisymmetric absorber omega") {
  auto G = gauss_alg();
  AlgOrder zi(G, QLattice(QMat::identity(2)));
  AlgElement w = omega_antisym(zi, Int(1));
  CHECK(w[0] == 0);
  CHECK(abs(w[1]) == 2); // 2i up to sign
  CHECK(G->dnorm2(w) == Rat(8));

  auto H = hamilton();
  AlgOrder lip(H, QLattice(QMat::identity(4)));
  AlgElement wl = omega_antisym(lip, Int(1));
  CHECK(wl[0] == 0);
  CHECK(H->dag(wl) == H->neg(wl));
  CHECK(H->dnorm2(wl) > 0);
}

TEST_CASE("hyperbolic splitting") {
  auto G = gauss_alg();
  LatticeInstance inst = std_instance(G, hyperbolic(G));
  AlgElement omega = omega_antisym(*inst.order, inst.eta);
  std::vector<Rat> w1 = {Rat(1), Rat(0), Rat(0), Rat(0)};
  std::vector<Rat> w2 = {Rat(0), Rat(0), Rat(1), Rat(0)};
  auto [v1, v2] = hyperbolic_split(inst, w1, w2, omega);
  CHECK(G->is_zero(inst.form.eval(v1, v2)));
  AlgElement q1 = inst.form.eval(v1, v1);
  CHECK(q1 == G->neg(inst.form.eval(v2, v2)));
  // b = |disc R|^4 omega psi(w2,w1)^{-1} = -+512i, so v = w1 -+ 2 b w2
  CHECK(abs(v1[2 + 1]) == 1024);
  CHECK(inst.lattice.contains(v1));
  CHECK(inst.lattice.contains(v2));

  // scaling psi by 2 scales b by Nrd(2)^2 * 2^{-1} = 8
  SkewForm f2(G, {{G->zero(), G->from_rat(Rat(2))},
                  {G->from_rat(Rat(-2)), G->zero()}});
  LatticeInstance i2 = make_instance(G, f2, inst.lattice, inst.order, Int(1));
  auto [u1, u2] = hyperbolic_split(i2, w1, w2, omega);
  CHECK(abs(u1[2 + 1]) == 8 * 1024);

  auto H = hamilton();
  LatticeInstance ih = std_instance(H, hyperbolic(H));
  AlgElement oh = omega_antisym(*ih.order, ih.eta);
  std::vector<Rat> h1(8, Rat(0)), h2(8, Rat(0));
  h1[0] = 1;
  h2[4] = 1;
  auto [x1, x2] = hyperbolic_split(ih, h1, h2, oh);
  CHECK(H->is_zero(ih.form.eval(x1, x2)));
  CHECK(ih.lattice.contains(x1));

  CHECK_THROWS_AS(hyperbolic_split(inst, w1, w1, omega),
                  std::invalid_argument);
}

TEST_CASE("pre-induction submodule") {
  auto G = gauss_alg();
  LatticeInstance i1 = std_instance(G, rank1(G, elem(*G, {0, 1})));
  PreInduction p1 = pre_induction(i1);
  CHECK(p1.tag == 'c');
  CHECK(p1.r == 1);
  CHECK(p1.vectors.size() == 1);

  LatticeInstance ih = std_instance(G, hyperbolic(G));
  PreInduction ph = pre_induction(ih);
  CHECK(ph.tag == 'd');
  CHECK(ph.r == 2);
  REQUIRE(ph.vectors.size() == 2);
  CHECK(G->is_zero(ih.form.eval(ph.vectors[0], ph.vectors[1])));
  // index^2 = disc(Rv1+Rv2) / disc(M)
  QLattice sub = order_span(*ih.order, ph.vectors);
  CHECK(Rat(ph.index * ph.index) ==
        form_disc(ih.form, sub) / form_disc(ih.form, ph.M));

  auto H = hamilton();
  LatticeInstance ib = std_instance(H, hyperbolic(H));
  PreInduction pb = pre_induction(ib);
  CHECK(pb.tag == 'b');
  CHECK(pb.r == 2);
}

TEST_CASE("weakly unitary bases and certificates") {
  auto G = gauss_alg();
  LatticeInstance i1 = std_instance(G, rank1(G, elem(*G, {0, 1})));
  ReductionCertificate c1 = weakly_unitary_basis(i1);
  CHECK(c1.pass());
  CHECK(c1.index == 1);
  CHECK(G->dnorm2(c1.pairings[0][0]) == Rat(2));
  CHECK(verify_certificate(i1, c1));

  LatticeInstance ih = std_instance(G, hyperbolic(G));
  ReductionCertificate ch = weakly_unitary_basis(ih);
  CHECK(ch.pass());
  CHECK(verify_certificate(ih, ch));
  CHECK(G->is_zero(ch.pairings[0][1]));
  CHECK(ch.index == ih.lattice.index_over(order_span(*ih.order, ch.basis)));

  auto H = hamilton();
  LatticeInstance ib = std_instance(H, hyperbolic(H));
  ReductionCertificate cb = weakly_unitary_basis(ib);
  CHECK(cb.pass());
  CHECK(verify_certificate(ib, cb));

  // tampering is caught
  ReductionCertificate bad = ch;
  bad.index += 1;
  CHECK_FALSE(verify_certificate(ih, bad));
  ReductionCertificate bad2 = ch;
  for (auto &c : bad2.basis[0])
    c *= 2;
  CHECK_FALSE(verify_certificate(ih, bad2));
}

TEST_CASE("height-bound reduction end to end") {
  auto G = gauss_alg();
  ReductionCertificate c =
      height_bound_reduce(G, rank1(G, elem(*G, {0, 1})),
                          QLattice(QMat::identity(2)));
  CHECK(c.pass());
  CHECK(c.index == 1);
  CHECK(G->dnorm2(c.pairings[0][0]) == Rat(2)); // |psi|_D = sqrt(2)

  // random batches
  std::mt19937_64 rng(77);
  auto batch = [&](AlgPtr A, int m, int count) {
    int done = 0;
    while (done < count) {
      SkewForm f = rnd_int_form(A, m, rng, 2);
      if (!is_nondegenerate(f))
        continue;
      done++;
      QLattice L(QMat::identity(A->dimq() * m));
      ReductionCertificate cert = height_bound_reduce(A, f, L);
      CHECK(cert.pass());
      LatticeInstance inst = make_instance(A, f, L);
      CHECK(verify_certificate(inst, cert));
    }
  };
  batch(G, 2, 4);
  batch(hamilton(), 2, 3);

  // homogeneity under scaling the lattice
  SkewForm f = hyperbolic(G);
  ReductionCertificate cs =
      height_bound_reduce(G, f, QLattice(QMat::identity(4).scaled(Rat(2))));
  CHECK(cs.pass());
}
