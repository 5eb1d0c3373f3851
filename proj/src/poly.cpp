#include "skewred/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace skewred {

QPoly poly_normalize(QPoly p) {
  while (!p.empty() && sgn(p.back()) == 0)
    p.pop_back();
  return p;
}

int poly_deg(const QPoly &p) { return (int)p.size() - 1; }

QPoly poly_add(const QPoly &a, const QPoly &b) {
  QPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size())
      r[i] += a[i];
    if (i < b.size())
      r[i] += b[i];
  }
  return poly_normalize(r);
}

QPoly poly_sub(const QPoly &a, const QPoly &b) {
  QPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size())
      r[i] += a[i];
    if (i < b.size())
      r[i] -= b[i];
  }
  return poly_normalize(r);
}

QPoly poly_mul(const QPoly &a, const QPoly &b) {
  if (a.empty() || b.empty())
    return {};
  QPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0)
      continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] += a[i] * b[j];
  }
  return poly_normalize(r);
}

QPoly poly_scale(const QPoly &a, const Rat &c) {
  if (sgn(c) == 0)
    return {};
  QPoly r = a;
  for (auto &x : r)
    x *= c;
  return r;
}

std::pair<QPoly, QPoly> poly_divmod(const QPoly &a, const QPoly &b) {
  QPoly rem = poly_normalize(a);
  QPoly bb = poly_normalize(b);
  if (bb.empty())
    throw std::domain_error("poly division by zero");
  int db = poly_deg(bb);
  QPoly quot;
  if (poly_deg(rem) >= db)
    quot.assign(poly_deg(rem) - db + 1, Rat(0));
  Rat lead = 1 / bb.back();
  while (poly_deg(rem) >= db) {
    int k = poly_deg(rem) - db;
    Rat c = rem.back() * lead;
    quot[k] = c;
    for (int i = 0; i <= db; ++i)
      rem[k + i] -= c * bb[i];
    rem = poly_normalize(rem);
  }
  return {poly_normalize(quot), rem};
}

QPoly poly_mod(const QPoly &a, const QPoly &b) { return poly_divmod(a, b).second; }

QPoly poly_derivative(const QPoly &p) {
  QPoly r;
  for (size_t i = 1; i < p.size(); ++i)
    r.push_back(p[i] * Rat((long)i));
  return poly_normalize(r);
}

QPoly poly_monic(const QPoly &p) {
  QPoly q = poly_normalize(p);
  if (q.empty())
    return q;
  return poly_scale(q, 1 / q.back());
}

QPoly poly_gcd(const QPoly &a, const QPoly &b) {
  QPoly x = poly_normalize(a), y = poly_normalize(b);
  while (!y.empty()) {
    QPoly r = poly_mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return poly_monic(x);
}

Rat poly_eval(const QPoly &p, const Rat &x) {
  Rat v(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    v = v * x + *it;
  return v;
}

std::complex<double> poly_eval(const QPoly &p, std::complex<double> x) {
  std::complex<double> v(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    v = v * x + to_double(*it);
  return v;
}

QPoly poly_compose_mod(const QPoly &p, const QPoly &g, const QPoly &f) {
  QPoly acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = poly_mul(acc, g);
    acc = poly_add(acc, QPoly{*it});
    acc = poly_mod(acc, f);
  }
  return acc;
}

bool poly_is_squarefree(const QPoly &p) {
  return poly_deg(poly_gcd(p, poly_derivative(p))) <= 0;
}

int count_real_roots(const QPoly &p) {
  QPoly q = poly_normalize(p);
  if (poly_deg(q) <= 0)
    return 0;
  // work with the squarefree part
  QPoly g = poly_gcd(q, poly_derivative(q));
  if (poly_deg(g) > 0)
    q = poly_divmod(q, g).first;
  // Sturm chain; sign variations at -inf minus at +inf
  std::vector<QPoly> chain{q, poly_derivative(q)};
  while (poly_deg(chain.back()) > 0) {
    QPoly r = poly_mod(chain[chain.size() - 2], chain.back());
    for (auto &c : r)
      c = -c;
    if (r.empty())
      break;
    chain.push_back(std::move(r));
  }
  auto variations = [&](int at_inf) {
    int var = 0, prev = 0;
    for (const auto &f : chain) {
      if (f.empty())
        continue;
      int s = sgn(f.back());
      if (at_inf < 0 && poly_deg(f) % 2 == 1)
        s = -s;
      if (prev != 0 && s != 0 && s != prev)
        ++var;
      if (s != 0)
        prev = s;
    }
    return var;
  };
  return variations(-1) - variations(+1);
}

std::vector<std::complex<double>> poly_roots(const QPoly &p) {
  QPoly q = poly_monic(p);
  int n = poly_deg(q);
  if (n <= 0)
    return {};
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    C(i, n - 1) = -to_double(q[i]);
  for (int i = 1; i < n; ++i)
    C(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(C);
  std::vector<std::complex<double>> roots;
  QPoly dq = poly_derivative(q);
  for (int i = 0; i < n; ++i) {
    std::complex<double> r = es.eigenvalues()(i);
    // Newton polish
    for (int it = 0; it < 50; ++it) {
      std::complex<double> f = poly_eval(q, r);
      std::complex<double> fp = poly_eval(dq, r);
      if (std::abs(fp) < 1e-300)
        break;
      std::complex<double> step = f / fp;
      r -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(r)))
        break;
    }
    roots.push_back(r);
  }
  // snap near-real roots, order: real ascending, then conjugate pairs
  for (auto &r : roots)
    if (std::fabs(r.imag()) < 1e-9 * (1.0 + std::abs(r)))
      r = {r.real(), 0.0};
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    bool ra = a.imag() == 0.0, rb = b.imag() == 0.0;
    if (ra != rb)
      return ra;
    if (a.real() != b.real())
      return a.real() < b.real();
    return std::fabs(a.imag()) != std::fabs(b.imag())
               ? std::fabs(a.imag()) < std::fabs(b.imag())
               : a.imag() > b.imag();
  });
  return roots;
}

QPoly poly_from_int(const std::vector<Int> &coeffs) {
  QPoly p;
  for (const auto &c : coeffs)
    p.emplace_back(c);
  return poly_normalize(p);
}

bool poly_irreducible_monic(const std::vector<Int> &coeffs) {
  QPoly f = poly_from_int(coeffs);
  int n = poly_deg(f);
  if (n <= 0)
    throw std::domain_error("constant polynomial");
  if (f.back() != 1)
    throw std::domain_error("not monic");
  if (n == 1)
    return true;
  if (!poly_is_squarefree(f))
    return false;
  auto roots = poly_roots(f);
  // try all root subsets of size 1..n/2 as candidate monic factors
  for (int k = 1; k <= n / 2; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
      idx[i] = i;
    while (true) {
      std::vector<std::complex<double>> cand(1, {1.0, 0.0});
      for (int i : idx) {
        std::vector<std::complex<double>> next(cand.size() + 1);
        for (size_t j = 0; j < cand.size(); ++j) {
          next[j + 1] += cand[j];
          next[j] -= cand[j] * roots[i];
        }
        cand = std::move(next);
      }
      bool near_int = true;
      QPoly g(k + 1);
      for (int j = 0; j <= k; ++j) {
        double re = cand[j].real();
        double rd = std::round(re);
        if (std::fabs(cand[j].imag()) > 1e-4 || std::fabs(re - rd) > 1e-4 ||
            std::fabs(rd) > 1e15) {
          near_int = false;
          break;
        }
        g[j] = Rat((long)rd);
      }
      if (near_int) {
        auto [q, r] = poly_divmod(f, poly_normalize(g));
        (void)q;
        if (r.empty() && poly_deg(poly_normalize(g)) >= 1)
          return false;
      }
      // next combination
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i)
        --i;
      if (i < 0)
        break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j)
        idx[j] = idx[j - 1] + 1;
    }
  }
  return true;
}

} // namespace skewred
