#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "skewred/nforder.hpp"

#include <random>

using namespace skewred;

namespace {

NFPtr gauss_field() { return NumberField::create({Int(1), Int(0), Int(1)}); }
NFPtr sqrt2_field() { return NumberField::create({Int(-2), Int(0), Int(1)}); }

Rat frac(long p, long q) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

} // namespace

TEST_CASE("polynomial arithmetic basics") {
  QPoly a{Rat(1), Rat(2), Rat(1)}; // (x+1)^2
  QPoly b{Rat(1), Rat(1)};
  auto [q, r] = poly_divmod(a, b);
  CHECK(q == QPoly{Rat(1), Rat(1)});
  CHECK(r.empty());
  CHECK(poly_gcd(a, b) == QPoly{Rat(1), Rat(1)});
  CHECK(poly_eval(a, Rat(3)) == Rat(16));
  CHECK(!poly_is_squarefree(a));
  CHECK(poly_is_squarefree(QPoly{Rat(-2), Rat(0), Rat(1)}));
}

TEST_CASE("sturm real root counts") {
  CHECK(count_real_roots({Rat(-2), Rat(0), Rat(1)}) == 2);  // x^2-2
  CHECK(count_real_roots({Rat(1), Rat(0), Rat(1)}) == 0);   // x^2+1
  CHECK(count_real_roots({Rat(0), Rat(-1), Rat(0), Rat(1)}) == 3); // x^3-x
  CHECK(count_real_roots({Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)}) == 0);
  // x^4 - 10x^2 + 1 (totally real quartic)
  CHECK(count_real_roots({Rat(1), Rat(0), Rat(-10), Rat(0), Rat(1)}) == 4);
}

TEST_CASE("irreducibility detection") {
  CHECK(poly_irreducible_monic({Int(1), Int(0), Int(1)}));   // x^2+1
  CHECK(poly_irreducible_monic({Int(-2), Int(0), Int(1)}));  // x^2-2
  CHECK(!poly_irreducible_monic({Int(-1), Int(0), Int(1)})); // (x-1)(x+1)
  CHECK(!poly_irreducible_monic({Int(1), Int(2), Int(1)}));  // (x+1)^2
  // x^4+1 (cyclotomic, irreducible over Q, splits over R)
  CHECK(poly_irreducible_monic({Int(1), Int(0), Int(0), Int(0), Int(1)}));
  // x^4 - 10x^2 + 1 irreducible
  CHECK(poly_irreducible_monic({Int(1), Int(0), Int(-10), Int(0), Int(1)}));
  // x^4 + 4 = (x^2-2x+2)(x^2+2x+2)
  CHECK(!poly_irreducible_monic({Int(4), Int(0), Int(0), Int(0), Int(1)}));
  CHECK_THROWS(poly_irreducible_monic({Int(1), Int(2)})); // not monic
}

TEST_CASE("field flags") {
  auto qi = gauss_field();
  CHECK(qi->degree() == 2);
  CHECK(!qi->is_totally_real());
  CHECK(qi->is_cm());
  auto s2 = sqrt2_field();
  CHECK(s2->is_totally_real());
  CHECK(!s2->is_cm());
  auto q = NumberField::rationals();
  CHECK(q->degree() == 1);
  CHECK(q->is_totally_real());
  // cyclotomic Q(zeta_8): x^4+1, CM with fixed field Q(sqrt 2)
  auto z8 = NumberField::create({Int(1), Int(0), Int(0), Int(0), Int(1)});
  CHECK(z8->is_cm());
  auto f0 = z8->fixed_field();
  CHECK(f0->degree() == 2);
  CHECK(f0->is_totally_real());
  CHECK_THROWS(NumberField::create({Int(-1), Int(0), Int(1)})); // reducible
}

TEST_CASE("conjugation is an involution fixing the real subfield") {
  auto qi = gauss_field();
  NFElement i = qi->gen();
  NFElement ci = qi->conj(i);
  CHECK(ci == qi->neg(i));
  auto z8 = NumberField::create({Int(1), Int(0), Int(0), Int(0), Int(1)});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    NFElement a(4);
    for (auto &c : a)
      c = frac((long)(rng() % 9) - 4, 1 + (long)(rng() % 3));
    NFElement cc = z8->conj(z8->conj(a));
    CHECK(cc == a);
    // a * conj(a) has real embeddings under every root
    NFElement n = z8->mul(a, z8->conj(a));
    for (int e = 0; e < 4; ++e)
      CHECK(std::fabs(z8->embed(n, e).imag()) < 1e-8);
  }
  // the stored generator of the fixed field is conjugation-invariant
  CHECK(z8->conj(z8->fixed_field_generator()) == z8->fixed_field_generator());
}

TEST_CASE("norm and trace examples") {
  auto qi = gauss_field();
  NFElement one_plus_i = {Rat(1), Rat(1)};
  auto [nm, tr] = nf_norm_trace(*qi, one_plus_i);
  CHECK(nm == Rat(2));
  CHECK(tr == Rat(2));

  auto q = NumberField::rationals();
  auto [nm5, tr5] = nf_norm_trace(*q, {Rat(5)});
  CHECK(nm5 == Rat(5));
  CHECK(tr5 == Rat(5));

  auto s2 = sqrt2_field();
  NFElement x = {Rat(1), Rat(1)}; // 1 + sqrt2
  auto [nmx, trx] = nf_norm_trace(*s2, x);
  CHECK(nmx == Rat(-1));
  CHECK(trx == Rat(2));
}

TEST_CASE("norm multiplicative, trace additive on random elements") {
  auto z8 = NumberField::create({Int(1), Int(0), Int(0), Int(0), Int(1)});
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    NFElement a(4), b(4);
    for (int i = 0; i < 4; ++i) {
      a[i] = frac((long)(rng() % 7) - 3, 1 + (long)(rng() % 2));
      b[i] = frac((long)(rng() % 7) - 3, 1 + (long)(rng() % 2));
    }
    auto [na, ta] = nf_norm_trace(*z8, a);
    auto [nb, tb] = nf_norm_trace(*z8, b);
    auto [nab, tab] = nf_norm_trace(*z8, z8->mul(a, b));
    auto [ns, ts] = nf_norm_trace(*z8, z8->add(a, b));
    (void)nab;
    (void)ns;
    CHECK(nab == na * nb);
    CHECK(ts == ta + tb);
    (void)tab;
  }
}

TEST_CASE("field inverse") {
  auto qi = gauss_field();
  NFElement a = {Rat(3), Rat(4)};
  NFElement ia = qi->inv(a);
  CHECK(qi->mul(a, ia) == qi->one());
  CHECK_THROWS(qi->inv(qi->zero()));
}

TEST_CASE("ideal norms") {
  auto qi = gauss_field();
  auto zi = std::make_shared<NFOrder>(qi, QLattice(QMat::identity(2)));
  NFIdeal two = NFIdeal::principal(zi, {Rat(2), Rat(0)});
  CHECK(ideal_norm(*zi, two) == 4);
  NFIdeal opi = NFIdeal::principal(zi, {Rat(1), Rat(1)});
  CHECK(ideal_norm(*zi, opi) == 2);

  auto q = NumberField::rationals();
  auto z = std::make_shared<NFOrder>(q, QLattice(QMat::identity(1)));
  NFIdeal three = NFIdeal::principal(z, {Rat(3)});
  CHECK(ideal_norm(*z, three) == 3);
}

TEST_CASE("conductor examples and the norm bound") {
  auto q = NumberField::rationals();
  auto z = std::make_shared<NFOrder>(q, QLattice(QMat::identity(1)));
  NFIdeal c0 = conductor(*z, z);
  CHECK(ideal_norm(*z, c0) == 1);

  auto s2 = sqrt2_field();
  auto full = std::make_shared<NFOrder>(s2, QLattice(QMat::identity(2)));
  QMat sb(2, 2);
  sb.at(0, 0) = 1;
  sb.at(1, 1) = 2; // Z + 2Z*sqrt2
  NFOrder sub(s2, QLattice(sb));
  NFIdeal c = conductor(sub, full);
  CHECK(ideal_norm(*full, c) == 4);
  // conductor is contained in the suborder
  CHECK(sub.lattice().contains(c.lattice()));
  // 2*O_F generates it
  CHECK(c.lattice().contains({Rat(2), Rat(0)}));
  CHECK(c.lattice().contains({Rat(0), Rat(2)}));

  auto qi = gauss_field();
  auto zi = std::make_shared<NFOrder>(qi, QLattice(QMat::identity(2)));
  QMat zb(2, 2);
  zb.at(0, 0) = 1;
  zb.at(1, 1) = 3; // Z + 3Zi
  NFOrder z3i(qi, QLattice(zb));
  NFIdeal c3 = conductor(z3i, zi);
  CHECK(ideal_norm(*zi, c3) == 9);

  // L1: Nm(conductor) <= [max : sub]^2 on random suborders of Z[i], Z[sqrt2]
  std::mt19937_64 rng(29);
  for (int t = 0; t < 20; ++t) {
    long k = 1 + (long)(rng() % 6);
    QMat b(2, 2);
    b.at(0, 0) = 1;
    b.at(1, 0) = (long)(rng() % k);
    b.at(1, 1) = k;
    NFPtr f = (t % 2 == 0) ? gauss_field() : sqrt2_field();
    auto maxo = std::make_shared<NFOrder>(f, QLattice(QMat::identity(2)));
    NFOrder sub2(f, QLattice(b));
    Rat idx = maxo->lattice().index_over(sub2.lattice());
    NFIdeal cc = conductor(sub2, maxo);
    CHECK(Rat(ideal_norm(*maxo, cc)) <= idx * idx);
  }
}

TEST_CASE("maximal orders of small fields") {
  auto q = NumberField::rationals();
  CHECK(maximal_order(q)->lattice().contains({Rat(1)}));

  auto s2 = sqrt2_field();
  auto m2 = maximal_order(s2);
  CHECK(m2->lattice().contains({Rat(0), Rat(1)})); // sqrt2 integral
  CHECK(!m2->lattice().contains({Rat(0), Rat(1, 2)}));
  CHECK(m2->disc_abs() == 8);

  // x^2 - 5: maximal order Z[(1+sqrt5)/2], disc 5
  auto s5 = NumberField::create({Int(-5), Int(0), Int(1)});
  auto m5 = maximal_order(s5);
  CHECK(m5->lattice().contains({frac(1, 2), frac(1, 2)}));
  CHECK(m5->disc_abs() == 5);

  auto qi = gauss_field();
  CHECK(maximal_order(qi)->disc_abs() == 4);
}

TEST_CASE("scaled covolume follows the ideal norm") {
  auto q = NumberField::rationals();
  auto z = std::make_shared<NFOrder>(q, QLattice(QMat::identity(1)));
  NFIdeal two = NFIdeal::principal(z, {Rat(2)});
  CHECK(scaled_covolume(two, QLattice(QMat::identity(1)), 1) == Rat(2));
  CHECK(scaled_covolume(NFIdeal::principal(z, {Rat(3)}),
                        QLattice(QMat::identity(2)), 2) == Rat(9));

  auto qi = gauss_field();
  auto zi = std::make_shared<NFOrder>(qi, QLattice(QMat::identity(2)));
  NFIdeal opi = NFIdeal::principal(zi, {Rat(1), Rat(1)});
  CHECK(scaled_covolume(opi, QLattice(QMat::identity(2)), 1) == Rat(2));

  // random principal ideals of Z[i] and Z[sqrt2], random rank-2 modules
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    NFPtr f = (t % 2 == 0) ? gauss_field() : sqrt2_field();
    auto o = std::make_shared<NFOrder>(f, QLattice(QMat::identity(2)));
    NFElement g = {Rat((long)(rng() % 5) - 2), Rat(1 + (long)(rng() % 3))};
    if (f->is_zero(g))
      continue;
    NFIdeal id = NFIdeal::principal(o, g);
    QMat mb = QMat::identity(4);
    mb.at(0, 2) = (long)(rng() % 3);
    mb.at(1, 3) = (long)(rng() % 3);
    QLattice mod(mb);
    Int nm = ideal_norm(*o, id);
    CHECK(scaled_covolume(id, mod, 2) == pow_rat(Rat(nm), 2));
  }
}

TEST_CASE("disc of classical orders") {
  auto qi = gauss_field();
  NFOrder zi(qi, QLattice(QMat::identity(2)));
  CHECK(zi.disc_abs() == 4);
  auto s2 = sqrt2_field();
  NFOrder zs2(s2, QLattice(QMat::identity(2)));
  CHECK(zs2.disc_abs() == 8);
}
