#include "skewred/harness.hpp"
#include "skewred/realmodels.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

using namespace skewred;
using nlohmann::json;

namespace {

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AlbertType type_from(const std::string &s) {
  if (s == "III" || s == "3")
    return AlbertType::III;
  if (s == "IV" || s == "4")
    return AlbertType::IV;
  throw std::runtime_error("type must be III or IV");
}

int run_reduce(const std::vector<std::string> &paths, int parallel) {
  std::vector<std::string> out(paths.size());
  std::vector<int> codes(paths.size(), 0);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < paths.size();
         i = next.fetch_add(1)) {
      try {
        Instance inst = parse_instance(paths[i]);
        ReductionCertificate cert =
            height_bound_reduce(inst.alg, inst.form, inst.lattice);
        out[i] = certificate_to_json(cert);
        codes[i] = cert.pass() ? 0 : 1;
      } catch (const std::exception &e) {
        out[i] = std::string("error: ") + e.what();
        codes[i] = 2;
      }
    }
  };
  int n = std::max(1, parallel);
  std::vector<std::thread> pool;
  for (int t = 0; t < n; t++)
    pool.emplace_back(worker);
  for (auto &t : pool)
    t.join();
  int rc = 0;
  for (size_t i = 0; i < paths.size(); i++) {
    std::cout << out[i] << "\n";
    rc = std::max(rc, codes[i]);
  }
  return rc;
}

int run_verify(const std::string &inst_path, const std::string &cert_path) {
  Instance inst = parse_instance(inst_path);
  ReductionCertificate cert =
      certificate_from_json(slurp(cert_path), inst);
  Report rep = verify_cert(inst.to_lattice_instance(), cert);
  std::cout << report_to_json(rep) << "\n";
  return rep.pass() ? 0 : 1;
}

int run_signature(const std::string &inst_path, int precision) {
  Instance inst = parse_instance(inst_path);
  RealModel model = RealModel::build(inst.alg);
  Signature sig = signature_of(inst.form, model);
  json j;
  j["signature"] = sig;
  std::ostringstream res;
  res << std::setprecision(precision) << model.residual();
  j["model_residual"] = res.str();
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_gen(const std::string &type, int d, int e, int m, long height,
            unsigned long long seed, const std::string &out) {
  Instance inst = gen_instance(type_from(type), d, e, m, height, seed);
  if (out.empty())
    std::cout << instance_to_json(inst) << "\n";
  else
    write_instance(inst, out);
  return 0;
}

int run_constants(const std::string &type, int d, int e, int m) {
  Constants c = constants_table(type_from(type), d, e, m);
  json j;
  j["index_mult_base"] = c.index_mult_base.get_str();
  j["index_mult_exp"] = format_rat(c.index_mult_exp);
  j["index_eta"] = format_rat(c.index_eta);
  j["index_disc_R"] = format_rat(c.index_R);
  j["index_disc_L"] = format_rat(c.index_L);
  j["psi_mult_base"] = c.psi_mult_base.get_str();
  j["psi_mult_exp"] = format_rat(c.psi_mult_exp);
  j["psi_eta"] = format_rat(c.psi_eta);
  j["psi_disc_R"] = format_rat(c.psi_R);
  j["psi_disc_L"] = format_rat(c.psi_L);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_oracle_shortest(const std::string &gram_path, const std::string &b) {
  json g = json::parse(slurp(gram_path));
  int n = (int)g.size();
  QMat gram(n, n);
  for (int i = 0; i < n; i++)
    for (int k = 0; k < n; k++)
      gram.at(i, k) = parse_rat(g[i][k].get<std::string>());
  auto vs = oracle_shortest(gram, parse_rat(b));
  json out = json::array();
  for (auto &v : vs) {
    json row = json::array();
    for (auto &x : v)
      row.push_back(x.get_str());
    out.push_back(row);
  }
  std::cout << out.dump() << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Weakly unitary reduction of skew-Hermitian lattices"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned long long seed = 0;
  int precision = 10, parallel = 1;
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--precision", precision, "digits for printed floats");
  app.add_option("--parallel", parallel, "worker threads for batches");

  std::vector<std::string> reduce_paths;
  auto *reduce = app.add_subcommand("reduce", "emit certificates");
  reduce->add_option("instances", reduce_paths, "instance JSON files")
      ->required();

  std::string v_inst, v_cert;
  auto *verify = app.add_subcommand("verify", "check a certificate");
  verify->add_option("instance", v_inst)->required();
  verify->add_option("certificate", v_cert)->required();

  std::string s_inst;
  auto *sig = app.add_subcommand("signature", "signature of a type IV form");
  sig->add_option("instance", s_inst)->required();

  std::string g_type = "IV", g_out;
  int g_d = 1, g_e = 1, g_m = 1;
  long g_height = 10;
  auto *gen = app.add_subcommand("gen", "deterministic random instance");
  gen->add_option("--type", g_type);
  gen->add_option("--d", g_d);
  gen->add_option("--e", g_e);
  gen->add_option("--m", g_m);
  gen->add_option("--height", g_height);
  gen->add_option("-o,--output", g_out);

  std::string c_type = "IV";
  int c_d = 1, c_e = 1, c_m = 1;
  auto *cons = app.add_subcommand("constants", "bound constants table");
  cons->add_option("--type", c_type);
  cons->add_option("--d", c_d);
  cons->add_option("--e", c_e);
  cons->add_option("--m", c_m);

  auto *oracle = app.add_subcommand("oracle", "reference oracles");
  std::string o_gram, o_bound = "1";
  auto *oshort = oracle->add_subcommand("shortest", "box enumeration");
  oshort->add_option("gram", o_gram, "gram matrix JSON file")->required();
  oshort->add_option("bound", o_bound, "norm bound (rational)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*reduce)
      return run_reduce(reduce_paths, parallel);
    if (*verify)
      return run_verify(v_inst, v_cert);
    if (*sig)
      return run_signature(s_inst, precision);
    if (*gen)
      return run_gen(g_type, g_d, g_e, g_m, g_height, seed, g_out);
    if (*cons)
      return run_constants(c_type, c_d, c_e, c_m);
    if (*oracle) {
      if (*oshort)
        return run_oracle_shortest(o_gram, o_bound);
      throw std::runtime_error("unknown oracle");
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
