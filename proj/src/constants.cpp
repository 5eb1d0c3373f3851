#include "skewred/reduction.hpp"

#include <cmath>

namespace skewred {

Rat hermite_pow(int n) {
  if (n <= 0)
    throw std::invalid_argument("hermite_pow: n must be positive");
  static const Rat known[] = {Rat(1),      Rat(4, 3), Rat(2),  Rat(4),
                              Rat(8),      Rat(64, 3), Rat(64), Rat(256)};
  if (n <= 8)
    return known[n - 1];
  // Mordell: gamma_n^n <= (4/3)^{n(n-1)/2}, always rational.
  Rat mordell = pow_rat(Rat(4, 3), (long)n * (n - 1) / 2);
  // Blichfeldt-style cap gamma_n <= (2/pi) Gamma(2 + n/2)^{2/n}, rounded up.
  double bl = 2.0 / M_PI * std::exp(std::lgamma(2.0 + n / 2.0) * 2.0 / n);
  Rat cap = pow_rat(rationalize(bl * (1 + 1e-9) + 1e-12, 1ul << 32), n);
  return mordell < cap ? mordell : cap;
}

namespace {

// q^{p} for integer p encoded as Int (must fit unsigned long in magnitude)
Rat pow_rat_i(const Rat &base, const Int &p) {
  if (base == 0)
    return p == 0 ? Rat(1) : Rat(0);
  bool neg = p < 0;
  Int a = abs(p);
  if (!a.fits_ulong_p())
    throw std::overflow_error("exponent too large");
  Rat r = 1;
  mpz_pow_ui(r.get_num_mpz_t(), (neg ? Rat(1 / base) : base).get_num().get_mpz_t(),
             a.get_ui());
  mpz_pow_ui(r.get_den_mpz_t(), (neg ? Rat(1 / base) : base).get_den().get_mpz_t(),
             a.get_ui());
  r.canonicalize();
  return r;
}

} // namespace

bool power_product_le(const Rat &lhs, const Rat &lhs_exp,
                      const std::vector<std::pair<Rat, Rat>> &rhs) {
  if (lhs == 0)
    return true;
  if (lhs < 0)
    throw std::invalid_argument("power_product_le: negative lhs");
  Int den = lhs_exp.get_den();
  for (auto &[b, ex] : rhs) {
    if (b <= 0)
      throw std::invalid_argument("power_product_le: nonpositive base");
    den = lcm(den, ex.get_den());
  }
  Rat left = pow_rat_i(lhs, lhs_exp.get_num() * (den / lhs_exp.get_den()));
  Rat right = 1;
  for (auto &[b, ex] : rhs)
    right *= pow_rat_i(b, ex.get_num() * (den / ex.get_den()));
  return left <= right;
}

Constants constants_table(AlbertType type, int d, int e, int m) {
  if (d < 1 || e < 1 || m < 1)
    throw std::invalid_argument("constants_table: bad parameters");
  if (type == AlbertType::III && d != 2)
    throw std::invalid_argument("constants_table: type III requires d = 2");
  Constants c;
  c.type = type;
  c.d = d;
  c.e = e;
  c.m = m;
  long dl = d, el = e, ml = m;
  if (type == AlbertType::III) {
    c.index_mult_base = 8 * el * ml * ml;
    c.index_mult_exp = Rat(5 * el * el * ml * (ml + 2));
    c.index_eta = Rat(14 * el * ml);
    c.index_R = Rat(ml * (ml + 16), 4) + Rat(24 * ml * (ml - 1) * el * el);
    c.index_L = Rat(ml - 1, 2) + Rat(4 * (ml + 1) * el);
    c.psi_mult_base = 4 * el * ml * ml;
    c.psi_mult_exp = Rat(el * (ml * (ml + 1) + 14));
    c.psi_eta = Rat(7);
    c.psi_R = Rat(el * (ml * (ml + 1) + 26), 16) + Rat(12 * el);
    c.psi_L = Rat(ml + 1, 8);
  } else {
    long d2 = dl * dl;
    c.index_mult_base = 64 * dl * d2 * el * ml * ml;
    c.index_mult_exp = Rat(5 * d2 * d2 * el * el * ml * (ml + 2));
    c.index_eta = Rat(3 * d2 * el * ml);
    c.index_R = Rat(ml * (ml + 8), 4) + Rat(14 * ml * (ml - 1) * dl * d2 * el * el);
    c.index_L = Rat(ml - 1, 2) + Rat(4 * (ml + 1) * d2 * el);
    c.psi_mult_base = 4 * d2 * el * ml * ml;
    c.psi_mult_exp = Rat(d2 * el * (ml * (ml + 1) + 14), 4);
    c.psi_eta = Rat(3);
    c.psi_R = Rat(el * ml * (ml + 1) + 24 * d2, 4);
    c.psi_L = Rat(ml + 1, 2);
  }
  for (Rat *v : {&c.index_mult_exp, &c.index_eta, &c.index_R, &c.index_L,
                 &c.psi_mult_exp, &c.psi_eta, &c.psi_R, &c.psi_L})
    v->canonicalize();
  return c;
}

} // namespace skewred
