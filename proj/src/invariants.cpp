#include "flasque/invariants.hpp"

#include <sstream>

#include "flasque/errors.hpp"

namespace flasque {

namespace {

const char* kHomogeneousSpaceNote =
    "the computed group receives Br_1 of a compactification modulo Br(k) injectively; equality needs a rational "
    "point or a number field, which the module-level computation cannot see";
const char* kCubicNote =
    "Br_1 of the variety modulo Br(k) maps to H^1(k, Pic) with cokernel inside H^3(k, kbar^*), which is zero over "
    "number fields; that term is field arithmetic and is not computed here";
const char* kTorusNote = "module-level computation: the Galois action is modeled by its finite image";

std::string dump_lattice(const std::string& label, const GLattice& m) {
  std::ostringstream out;
  out << label << ": " << describe(m) << "\n";
  const auto& gens = m.group()->generators();
  for (Element g : gens) out << "  g" << g << " -> " << m.action(g).to_string() << "\n";
  return out.str();
}

bool all_equal(const std::map<std::string, AbelianGroupStructure>& routes) {
  for (const auto& [name, value] : routes)
    if (!(value == routes.begin()->second)) return false;
  return true;
}

void finish(InvariantReport& report, const std::string& dump) {
  report.consistent = all_equal(report.routes);
  if (!report.consistent) throw ConsistencyError("routes disagree\n" + report.to_string() + dump);
}

}  // namespace

std::string InvariantReport::to_string() const {
  std::ostringstream out;
  out << "input: " << input << "\n";
  out << "brauer quotient: " << brauer_quotient.to_string() << "\n";
  for (const auto& [name, value] : routes) out << "  " << name << " = " << value.to_string() << "\n";
  out << "consistent: " << (consistent ? "yes" : "no") << "\n";
  for (const auto& n : notes) out << "note: " << n << "\n";
  return out.str();
}

InvariantReport brauer_torus_compactification(const GLattice& q) {
  InvariantReport report;
  report.input = describe(q);
  FlasqueResolution fr = flasque_resolution(q);
  report.brauer_quotient = h1(fr.flasque()).structure();
  report.routes["H1_of_F"] = report.brauer_quotient;

  // Shifted route through a second, independently shuffled resolution.
  ResolutionOptions other;
  other.shuffle_seed = 0x5eed;
  report.routes["sha2_Q_shifted"] = h2_shifted(q, flasque_resolution(q, other).extension());
  if (q.group()->order() <= max_bar_group_order()) report.routes["sha2_Q_direct"] = sha_omega(2, q);
  report.picard_fingerprint = similarity_fingerprint(fr.flasque());
  report.notes.push_back(kTorusNote);
  finish(report, dump_lattice("Q", q) + dump_lattice("F", fr.flasque()));
  return report;
}

InvariantReport brauer_homogeneous_space(const GLattice& t) {
  InvariantReport report;
  report.input = describe(t);
  report.brauer_quotient = sha_omega(1, t);
  report.routes["sha1_T"] = report.brauer_quotient;
  PicardClass pic = picard_flasque_class(t);
  report.routes["H1_of_F"] = h1(pic.flasque()).structure();
  report.picard_fingerprint = pic.fingerprint;
  report.notes.push_back(kHomogeneousSpaceNote);
  report.notes.push_back(kCubicNote);
  finish(report, dump_lattice("T", t) + dump_lattice("F", pic.flasque()));
  return report;
}

PicardClass picard_flasque_class(const GLattice& t) {
  LatticeExtension cover = flasque_cover(t);
  SimilarityFingerprint fp = similarity_fingerprint(cover.middle());
  return {std::move(cover), std::move(fp)};
}

InvariantReport verify_brauer_chain(const GLattice& t, const LatticeMap& surj) {
  const GLattice& p = surj.source();
  if (!(surj.target() == t)) throw PreconditionError("verify_brauer_chain: map does not end at T");
  if (!p.is_certified_permutation()) throw PreconditionError("verify_brauer_chain: source is not a certified permutation lattice");
  if (!cokernel_structure(surj.matrix()).is_trivial()) throw PreconditionError("verify_brauer_chain: map is not surjective");

  IntMatrix kernel = kernel_basis(surj.matrix());
  GLattice q = kernel.cols() == 0 ? trivial_lattice(t.group(), 0) : sublattice(p, kernel);
  LatticeExtension res_t(q, p, t, kernel, surj.matrix());
  LatticeExtension res_f = flasque_cover(t);
  FlasqueResolution fr(pullback_resolution(res_t, res_f));

  InvariantReport report;
  report.input = "surjection " + describe(p) + " -> " + describe(t);
  report.brauer_quotient = h1(fr.flasque()).structure();
  report.routes["H1_of_F"] = report.brauer_quotient;
  report.routes["sha1_T"] = sha_omega(1, t);
  report.routes["sha2_Q_shifted"] = h2_shifted(q, flasque_resolution(q).extension());
  if (t.group()->order() <= max_bar_group_order()) report.routes["sha2_Q_direct"] = sha_omega(2, q);
  report.picard_fingerprint = similarity_fingerprint(fr.flasque());
  report.notes.push_back(kTorusNote);
  finish(report, dump_lattice("T", t) + dump_lattice("P", p) + dump_lattice("Q", q) +
                     "P -> T: " + surj.matrix().to_string() + "\n" + dump_lattice("F", fr.flasque()));
  return report;
}

}  // namespace flasque
