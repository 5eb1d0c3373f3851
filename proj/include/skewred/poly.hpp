#pragma once

#include "skewred/rational.hpp"

#include <complex>
#include <vector>

namespace skewred {

// Polynomials over Q as coefficient vectors c0 + c1 x + ... Leading zeros
// are stripped by normalize(); the zero polynomial is the empty vector.
using QPoly = std::vector<Rat>;

QPoly poly_normalize(QPoly p);
int poly_deg(const QPoly &p); // -1 for zero
QPoly poly_add(const QPoly &a, const QPoly &b);
QPoly poly_sub(const QPoly &a, const QPoly &b);
QPoly poly_mul(const QPoly &a, const QPoly &b);
QPoly poly_scale(const QPoly &a, const Rat &c);
// quotient and remainder of a by b (b nonzero)
std::pair<QPoly, QPoly> poly_divmod(const QPoly &a, const QPoly &b);
QPoly poly_mod(const QPoly &a, const QPoly &b);
QPoly poly_derivative(const QPoly &p);
QPoly poly_monic(const QPoly &p);
QPoly poly_gcd(const QPoly &a, const QPoly &b); // monic
Rat poly_eval(const QPoly &p, const Rat &x);
std::complex<double> poly_eval(const QPoly &p, std::complex<double> x);
// p(g(x)) mod f
QPoly poly_compose_mod(const QPoly &p, const QPoly &g, const QPoly &f);

bool poly_is_squarefree(const QPoly &p);

// Number of distinct real roots, exact (Sturm).
int count_real_roots(const QPoly &p);

// All complex roots numerically (companion matrix + Newton polishing).
std::vector<std::complex<double>> poly_roots(const QPoly &p);

// Irreducibility over Q of a monic integer polynomial (degree <= 8):
// numeric factor search over root subsets, candidate factors verified by
// exact division.
bool poly_irreducible_monic(const std::vector<Int> &coeffs);

QPoly poly_from_int(const std::vector<Int> &coeffs);

} // namespace skewred
