#include "skewred/harness.hpp"

#include "json.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace skewred {

using nlohmann::json;

namespace {

const Rat kSlack(101, 100); // same headroom as the reducer's assertions

json rat_vec_json(const std::vector<Rat> &v) {
  json a = json::array();
  for (const Rat &x : v)
    a.push_back(format_rat(x));
  return a;
}

std::vector<Rat> rat_vec_parse(const json &a, int expect = -1) {
  if (!a.is_array())
    throw std::runtime_error("expected an array of rationals");
  std::vector<Rat> v;
  for (const auto &x : a) {
    if (!x.is_string())
      throw std::runtime_error("rationals must be quoted strings");
    v.push_back(parse_rat(x.get<std::string>()));
  }
  if (expect >= 0 && (int)v.size() != expect)
    throw std::runtime_error("wrong vector length in instance");
  return v;
}

json int_vec_json(const std::vector<Int> &v) {
  json a = json::array();
  for (const Int &x : v)
    a.push_back(x.get_str());
  return a;
}

std::vector<Int> int_vec_parse(const json &a) {
  std::vector<Int> v;
  for (const auto &x : a) {
    Rat q = parse_rat(x.get<std::string>());
    if (q.get_den() != 1)
      throw std::runtime_error("expected integers");
    v.push_back(q.get_num());
  }
  return v;
}

json lattice_json(const QLattice &lat) {
  json rows = json::array();
  for (int i = 0; i < lat.rank(); i++)
    rows.push_back(rat_vec_json(lat.basis().row(i)));
  return rows;
}

QLattice lattice_parse(const json &rows, int ambient) {
  std::vector<std::vector<Rat>> r;
  for (const auto &row : rows)
    r.push_back(rat_vec_parse(row, ambient));
  if (r.empty())
    throw std::runtime_error("lattice has no generators");
  return QLattice::from_generators(QMat::from_rows(r));
}

AlgPtr algebra_parse(const json &j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "matrix") {
    NFPtr f = NumberField::create(int_vec_parse(j.at("field")));
    return Algebra::make_matrix_cm(f, j.at("d").get<int>());
  }
  if (kind == "quaternion") {
    std::vector<Int> poly = int_vec_parse(j.at("f0"));
    NFPtr f0 = poly.size() <= 2 ? NumberField::rationals()
                                : NumberField::create(poly);
    return Algebra::make_quaternion(f0, rat_vec_parse(j.at("a"), f0->degree()),
                                    rat_vec_parse(j.at("b"), f0->degree()));
  }
  throw std::runtime_error("unknown algebra kind: " + kind);
}

json algebra_json(const Algebra &A) {
  json j;
  if (A.albert_type() == AlbertType::IV) {
    j["kind"] = "matrix";
    j["field"] = int_vec_json(A.center_field()->min_poly());
    j["d"] = A.d();
  } else {
    j["kind"] = "quaternion";
    j["f0"] = int_vec_json(A.f0_field()->min_poly());
    j["a"] = rat_vec_json(A.quat_a());
    j["b"] = rat_vec_json(A.quat_b());
  }
  return j;
}

Int rand_int(std::mt19937_64 &rng, long height) {
  std::uniform_int_distribution<long> dist(-height, height);
  return Int(dist(rng));
}

} // namespace

LatticeInstance Instance::to_lattice_instance() const {
  AlgOrderPtr ord;
  if (order_basis)
    ord = std::make_shared<AlgOrder>(alg, *order_basis);
  return make_instance(alg, form, lattice, ord);
}

Instance instance_from_json(const std::string &text) {
  json j = json::parse(text);
  AlgPtr alg = algebra_parse(j.at("algebra"));
  int m = j.at("m").get<int>();
  if (m < 1)
    throw std::runtime_error("m must be positive");
  const json &g = j.at("gram");
  if ((int)g.size() != m)
    throw std::runtime_error("gram has wrong shape");
  std::vector<std::vector<AlgElement>> gram(m);
  for (int i = 0; i < m; i++) {
    if ((int)g[i].size() != m)
      throw std::runtime_error("gram has wrong shape");
    for (int k = 0; k < m; k++)
      gram[i].push_back(rat_vec_parse(g[i][k], alg->dimq()));
  }
  SkewForm form(alg, gram);
  QLattice lat = lattice_parse(j.at("lattice"), form.qdim());
  Instance inst{alg, form, lat, std::nullopt, 0, 0};
  if (j.contains("order"))
    inst.order_basis = lattice_parse(j["order"], alg->dimq());
  if (j.contains("seed"))
    inst.seed = parse_rat(j["seed"].get<std::string>()).get_num();
  if (j.contains("height"))
    inst.height = j["height"].get<long>();
  return inst;
}

std::string instance_to_json(const Instance &inst) {
  json j;
  j["algebra"] = algebra_json(*inst.alg);
  int m = inst.form.m();
  j["m"] = m;
  json g = json::array();
  for (int i = 0; i < m; i++) {
    json row = json::array();
    for (int k = 0; k < m; k++)
      row.push_back(rat_vec_json(inst.form.gram(i, k)));
    g.push_back(row);
  }
  j["gram"] = g;
  j["lattice"] = lattice_json(inst.lattice);
  if (inst.order_basis)
    j["order"] = lattice_json(*inst.order_basis);
  if (inst.seed != 0)
    j["seed"] = inst.seed.get_str();
  if (inst.height != 0)
    j["height"] = inst.height;
  return j.dump(2);
}

Instance parse_instance(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Instance inst = instance_from_json(ss.str());
  inst.to_lattice_instance(); // validate up front
  return inst;
}

void write_instance(const Instance &inst, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << instance_to_json(inst) << "\n";
}

Instance gen_instance(AlbertType type, int d, int e, int m, long height,
                      unsigned long long seed) {
  if (height < 1)
    throw std::invalid_argument("height must be positive");
  if (m < 1 || d < 1 || e != 1)
    throw std::invalid_argument("unsupported parameters");
  if (type == AlbertType::III && d != 2)
    throw std::invalid_argument("type III requires d = 2");
  std::mt19937_64 rng(seed);

  AlgPtr alg;
  if (type == AlbertType::IV) {
    static const long cs[] = {1, 2, 3, 7, 11, 19};
    long c = cs[rng() % 6];
    alg = Algebra::make_matrix_cm(NumberField::create({Int(c), 0, 1}), d);
  } else {
    static const long as[] = {-1, -2, -3};
    static const long bs[] = {-1, -3, -5, -7, -11};
    NFPtr q = NumberField::rationals();
    alg = Algebra::make_quaternion(q, {Rat(as[rng() % 3])},
                                   {Rat(bs[rng() % 5])});
  }
  const Algebra &A = *alg;
  int n = m * A.dimq();

  for (int attempt = 0; attempt < 100; attempt++) {
    std::vector<std::vector<AlgElement>> gram(
        m, std::vector<AlgElement>(m, A.zero()));
    for (int i = 0; i < m; i++) {
      AlgElement x(A.dimq());
      for (int t = 0; t < A.dimq(); t++)
        x[t] = Rat(rand_int(rng, height));
      gram[i][i] = A.sub(x, A.dag(x));
      for (int k = i + 1; k < m; k++) {
        AlgElement y(A.dimq());
        for (int t = 0; t < A.dimq(); t++)
          y[t] = Rat(rand_int(rng, height));
        gram[i][k] = y;
        gram[k][i] = A.neg(A.dag(y));
      }
    }
    // unimodular distortion of the standard lattice
    QMat B = QMat::identity(n);
    for (int s = 0; s < std::min(n, 6); s++) {
      int i = rng() % n, k = rng() % n;
      if (i == k)
        continue;
      Rat c(rand_int(rng, height));
      for (int t = 0; t < n; t++)
        B.at(i, t) += c * B.at(k, t);
    }
    try {
      SkewForm form(alg, gram);
      QLattice lat = QLattice::from_generators(B);
      make_instance(alg, form, lat);
      return Instance{alg, form, lat, std::nullopt, Int((unsigned long)seed), height};
    } catch (const std::exception &) {
      // degenerate draw; retry
    }
  }
  throw std::runtime_error("failed to generate a usable instance");
}

Int index_of(const QLattice &sub, const QLattice &lattice) {
  if (sub.rank() != lattice.rank() || !lattice.contains(sub))
    throw std::runtime_error("not a sublattice");
  Rat idx = lattice.index_over(sub);
  if (idx.get_den() != 1)
    throw std::logic_error("index is not integral");
  return idx.get_num();
}

std::vector<std::vector<Int>> oracle_shortest(const QMat &gram,
                                              const Rat &bound) {
  int n = gram.rows();
  if (n < 1 || n > 6)
    throw std::invalid_argument("oracle handles rank 1..6 only");
  if (bound <= 0 || bound > 10)
    throw std::invalid_argument("oracle handles 0 < bound <= 10 only");
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++)
      G(i, j) = gram.at(i, j).get_d();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  double lmin = es.eigenvalues().minCoeff();
  if (lmin <= 0)
    throw std::invalid_argument("gram matrix is not positive definite");
  long box = (long)std::sqrt(bound.get_d() / lmin * (1 + 1e-9)) + 1;

  std::vector<std::vector<Int>> out;
  std::vector<Int> x(n, 0);
  std::vector<Rat> keys;
  auto walk = [&](auto &&self, int level) -> void {
    if (level == n) {
      bool zero = true;
      Rat val = 0;
      for (int i = 0; i < n; i++) {
        if (x[i] != 0)
          zero = false;
        for (int j = 0; j < n; j++)
          val += gram.at(i, j) * Rat(x[i]) * Rat(x[j]);
      }
      if (!zero && val <= bound) {
        out.push_back(x);
        keys.push_back(val);
      }
      return;
    }
    for (long t = -box; t <= box; t++) {
      x[level] = Int(t);
      self(self, level + 1);
    }
  };
  walk(walk, 0);
  std::vector<int> order(out.size());
  for (size_t i = 0; i < order.size(); i++)
    order[i] = (int)i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (keys[a] != keys[b])
      return keys[a] < keys[b];
    return out[a] < out[b];
  });
  std::vector<std::vector<Int>> sorted;
  for (int i : order)
    sorted.push_back(out[i]);
  return sorted;
}

Report verify_cert(const LatticeInstance &inst,
                   const ReductionCertificate &cert) {
  auto t0 = std::chrono::steady_clock::now();
  const SkewForm &form = inst.form;
  const Algebra &A = *inst.alg;
  int m = form.m(), n = form.qdim();
  if ((int)cert.basis.size() != m)
    throw std::invalid_argument("mismatched dimensions");
  for (auto &v : cert.basis)
    if ((int)v.size() != n)
      throw std::invalid_argument("mismatched dimensions");

  Report rep;
  rep.basis_in_lattice = true;
  for (auto &v : cert.basis)
    if (!inst.lattice.contains(v))
      rep.basis_in_lattice = false;

  std::vector<std::vector<Rat>> span_rows;
  for (auto &v : cert.basis)
    for (int t = 0; t < A.dimq(); t++)
      span_rows.push_back(form.mod_mul(A.basis_elem(t), v));
  rep.weakly_unitary = QMat::from_rows(span_rows).rank() == n;
  std::vector<std::vector<AlgElement>> pv(m, std::vector<AlgElement>(m));
  bool pairings_match = (int)cert.pairings.size() == m;
  for (int i = 0; i < m; i++) {
    if (pairings_match && (int)cert.pairings[i].size() != m)
      pairings_match = false;
    for (int j = 0; j < m; j++) {
      pv[i][j] = form.eval(cert.basis[i], cert.basis[j]);
      if (pairings_match && pv[i][j] != cert.pairings[i][j])
        pairings_match = false;
      if (i != j && !A.is_zero(pv[i][j]))
        rep.weakly_unitary = false;
    }
  }

  Constants C = constants_table(A.albert_type(), A.d(), A.e(), m);
  Rat disc_r(order_disc(*inst.order)), disc_l(inst.disc_l), eta(inst.eta);

  QLattice span = order_span(*inst.order, cert.basis);
  Rat idx = inst.lattice.index_over(span);
  rep.index_witness = idx.get_den() == 1 ? Int(idx.get_num()) : Int(0);
  rep.index_ok = idx.get_den() == 1 && idx > 0 && Rat(cert.index) == idx &&
                 power_product_le(idx, 1,
                                  {{Rat(C.index_mult_base), C.index_mult_exp},
                                   {eta, C.index_eta},
                                   {disc_r, C.index_R},
                                   {disc_l, C.index_L},
                                   {kSlack, 1}});

  rep.psi_ok = pairings_match;
  for (int i = 0; i < m; i++) {
    Rat n2 = A.dnorm2(pv[i][i]);
    rep.psi_norm2.push_back(n2);
    if (n2 == 0)
      rep.psi_ok = false;
    else if (!power_product_le(n2, 1,
                               {{Rat(C.psi_mult_base), C.psi_mult_exp * 2},
                                {eta, C.psi_eta * 2},
                                {disc_r, C.psi_R * 2},
                                {disc_l, C.psi_L * 2},
                                {kSlack, 1}}))
      rep.psi_ok = false;
  }
  rep.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

std::string certificate_to_json(const ReductionCertificate &cert) {
  json j;
  json basis = json::array();
  for (auto &v : cert.basis)
    basis.push_back(rat_vec_json(v));
  j["basis"] = basis;
  json pairings = json::array();
  for (auto &row : cert.pairings) {
    json r = json::array();
    for (auto &p : row)
      r.push_back(rat_vec_json(p));
    pairings.push_back(r);
  }
  j["pairings"] = pairings;
  j["index"] = cert.index.get_str();
  j["eta"] = cert.eta.get_str();
  j["disc_l"] = cert.disc_l.get_str();
  j["disc_r"] = cert.disc_r.get_str();
  j["clauses"] = {{"in_lattice", cert.in_lattice},
                  {"weakly_unitary", cert.weakly_unitary},
                  {"index_ok", cert.index_ok},
                  {"psi_ok", cert.psi_ok}};
  j["notes"] = cert.notes;
  return j.dump(2);
}

ReductionCertificate certificate_from_json(const std::string &text,
                                           const Instance &inst) {
  json j = json::parse(text);
  const Algebra &A = *inst.alg;
  int m = inst.form.m();
  ReductionCertificate cert;
  for (const auto &v : j.at("basis"))
    cert.basis.push_back(rat_vec_parse(v, inst.form.qdim()));
  for (const auto &row : j.at("pairings")) {
    std::vector<AlgElement> r;
    for (const auto &p : row)
      r.push_back(rat_vec_parse(p, A.dimq()));
    cert.pairings.push_back(r);
  }
  cert.index = Int(j.at("index").get<std::string>());
  cert.eta = Int(j.at("eta").get<std::string>());
  cert.disc_l = Int(j.at("disc_l").get<std::string>());
  cert.disc_r = Int(j.at("disc_r").get<std::string>());
  cert.bounds = constants_table(A.albert_type(), A.d(), A.e(), m);
  if (j.contains("clauses")) {
    const json &c = j["clauses"];
    cert.in_lattice = c.value("in_lattice", false);
    cert.weakly_unitary = c.value("weakly_unitary", false);
    cert.index_ok = c.value("index_ok", false);
    cert.psi_ok = c.value("psi_ok", false);
  }
  if (j.contains("notes"))
    for (const auto &note : j["notes"])
      cert.notes.push_back(note.get<std::string>());
  return cert;
}

std::string report_to_json(const Report &report) {
  json j;
  j["clauses"] = {{"basis_in_lattice", report.basis_in_lattice},
                  {"weakly_unitary", report.weakly_unitary},
                  {"index_ok", report.index_ok},
                  {"psi_ok", report.psi_ok}};
  j["index"] = report.index_witness.get_str();
  json norms = json::array();
  for (const Rat &q : report.psi_norm2)
    norms.push_back(format_rat(q));
  j["psi_norm2"] = norms;
  j["seconds"] = report.seconds;
  j["pass"] = report.pass();
  return j.dump(2);
}

} // namespace skewred
