#pragma once

#include "skewred/reduction.hpp"

#include <string>

namespace skewred {

// Wire-format instance: everything needed to rebuild a LatticeInstance,
// plus generator metadata. Rationals travel as "p/q" strings, never floats.
struct Instance {
  AlgPtr alg;
  SkewForm form;
  QLattice lattice;
  std::optional<QLattice> order_basis; // override for Stab_D(L)
  Int seed = 0;
  long height = 0;

  LatticeInstance to_lattice_instance() const;
};

Instance parse_instance(const std::string &path);
Instance instance_from_json(const std::string &text);
std::string instance_to_json(const Instance &inst);
void write_instance(const Instance &inst, const std::string &path);

// Deterministic random instance over a canonical algebra for the given
// parameters (e = 1 lane; the centre is drawn from a small seeded pool).
Instance gen_instance(AlbertType type, int d, int e, int m, long height,
                      unsigned long long seed);

// [lattice : sub], exact; throws "not a sublattice".
Int index_of(const QLattice &sub, const QLattice &lattice);

// Exhaustive reference enumeration, rank <= 6 and bound <= 10 only.
std::vector<std::vector<Int>> oracle_shortest(const QMat &gram,
                                              const Rat &bound);

struct Report {
  bool basis_in_lattice = false; // clause (i)
  bool weakly_unitary = false;   // clause (ii)
  bool index_ok = false;         // clause (iii), includes witness match
  bool psi_ok = false;           // clause (iv), includes witness match
  Int index_witness;
  std::vector<Rat> psi_norm2; // diagonal pairing norms |psi(v_i,v_i)|_D^2
  double seconds = 0;
  bool pass() const {
    return basis_in_lattice && weakly_unitary && index_ok && psi_ok;
  }
};

Report verify_cert(const LatticeInstance &inst,
                   const ReductionCertificate &cert);

std::string certificate_to_json(const ReductionCertificate &cert);
ReductionCertificate certificate_from_json(const std::string &text,
                                           const Instance &inst);
std::string report_to_json(const Report &report);

} // namespace skewred
