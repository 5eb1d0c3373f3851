#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewred {

using Int = mpz_class;
using Rat = mpq_class;

// Parse "p/q" or "p"; throws on malformed input.
Rat parse_rat(const std::string &s);

// Canonical "p/q" (or "p" when q == 1).
std::string format_rat(const Rat &q);

double to_double(const Rat &q);

// Natural log of a positive rational, accurate for values far outside
// double range.
double log_rat(const Rat &q);

Rat pow_rat(const Rat &base, long exp);

Int pow_int(const Int &base, unsigned long exp);

// Floor of sqrt for nonnegative integers.
Int isqrt(const Int &n);

// sqrt of a rational if it is an exact square.
std::optional<Rat> exact_sqrt(const Rat &q);

// Exact d-th root of a rational when it exists.
std::optional<Rat> exact_root(const Rat &q, unsigned long d);

// Best rational approximation of x with denominator <= max_den
// (continued fractions).
Rat rationalize(double x, unsigned long max_den = 1000000);

// lcm of denominators of a vector of rationals.
Int common_denominator(const std::vector<Rat> &v);

} // namespace skewred
