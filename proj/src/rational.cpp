#include "skewred/rational.hpp"

#include <cmath>

namespace skewred {

Rat parse_rat(const std::string &s) {
  if (s.empty())
    throw std::invalid_argument("empty rational literal");
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string format_rat(const Rat &q) {
  if (q.get_den() == 1)
    return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rat &q) { return q.get_d(); }

static double log_abs_int(const Int &n) {
  signed long exp2;
  double m = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(exp2) * std::log(2.0);
}

double log_rat(const Rat &q) {
  if (sgn(q) <= 0)
    throw std::domain_error("log of nonpositive rational");
  return log_abs_int(q.get_num()) - log_abs_int(q.get_den());
}

Rat pow_rat(const Rat &base, long exp) {
  if (exp == 0)
    return Rat(1);
  bool inv = exp < 0;
  unsigned long k = inv ? -static_cast<unsigned long>(exp) : exp;
  if (inv && sgn(base) == 0)
    throw std::domain_error("0^negative");
  Rat r;
  mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), k);
  mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), k);
  r.canonicalize();
  if (inv)
    r = 1 / r;
  return r;
}

Int pow_int(const Int &base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Int isqrt(const Int &n) {
  if (sgn(n) < 0)
    throw std::domain_error("isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

static std::optional<Int> int_root(const Int &n, unsigned long d) {
  if (sgn(n) < 0 && d % 2 == 0)
    return std::nullopt;
  Int r;
  int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), d);
  if (!exact)
    return std::nullopt;
  return r;
}

std::optional<Rat> exact_sqrt(const Rat &q) { return exact_root(q, 2); }

std::optional<Rat> exact_root(const Rat &q, unsigned long d) {
  if (sgn(q) == 0)
    return Rat(0);
  auto num = int_root(q.get_num(), d);
  if (!num)
    return std::nullopt;
  auto den = int_root(q.get_den(), d);
  if (!den)
    return std::nullopt;
  Rat r(*num, *den);
  r.canonicalize();
  return r;
}

Rat rationalize(double x, unsigned long max_den) {
  if (!std::isfinite(x))
    throw std::domain_error("rationalize of non-finite value");
  bool neg = x < 0;
  double v = std::fabs(x);
  // continued fraction convergents p/q
  Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9e18)
      break;
    Int a(static_cast<long>(fl));
    Int p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > Int(max_den))
      break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15)
      break;
    frac = 1.0 / rem;
  }
  Rat r(p1, q1 == 0 ? Int(1) : q1);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

Int common_denominator(const std::vector<Rat> &v) {
  Int l = 1;
  for (const auto &q : v)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  return l;
}

} // namespace skewred
