#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "flasque/errors.hpp"
#include "flasque/invariants.hpp"
#include "flasque/problem.hpp"

using namespace flasque;
using Json = nlohmann::ordered_json;

namespace {

struct InputOptions {
  std::string path;
  std::string catalog;
};

struct Output {
  Json doc;
  std::ostringstream text;
};

Json integer_json(const Integer& v) { return v.fits_slong_p() ? Json(v.get_si()) : Json(v.get_str()); }

void put_structure(Json& j, const AbelianGroupStructure& s) {
  j["invariant_factors"] = Json::array();
  for (const auto& d : s.invariant_factors) j["invariant_factors"].push_back(integer_json(d));
  j["free_rank"] = s.free_rank;
  j["structure"] = s.to_string();
}

Json structure_json(const AbelianGroupStructure& s) {
  Json j;
  put_structure(j, s);
  return j;
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json lattice_json(const GLattice& m) {
  Json j;
  j["rank"] = m.rank();
  j["action"] = Json::array();
  for (Element g : m.group()->generators()) j["action"].push_back(matrix_json(m.action(g)));
  return j;
}

Json subgroup_json(const Subgroup& h) {
  Json j;
  j["elements"] = h.elements();
  j["order"] = h.order();
  return j;
}

std::string read_input_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ProblemSpec load_spec(const InputOptions& in) {
  if (!in.catalog.empty() && !in.path.empty()) throw InputError("give either an input file or --catalog, not both");
  if (!in.catalog.empty()) return catalog_problem(in.catalog);
  if (in.path.empty()) throw InputError("no input: give a problem file (or - for stdin) or --catalog NAME");
  return parse_problem(read_input_text(in.path));
}

std::string input_label(const InputOptions& in) { return in.catalog.empty() ? in.path : "catalog:" + in.catalog; }

void add_input(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.path, "Problem file (JSON), or - for standard input");
  cmd->add_option("--catalog", in.catalog, "Use a built-in catalog entry instead of a file");
}

void text_report(std::ostream& out, const InvariantReport& r) { out << r.to_string(); }

Json report_json(const InvariantReport& r) {
  Json j;
  put_structure(j, r.brauer_quotient);
  j["routes"] = Json::object();
  for (const auto& [name, value] : r.routes) j["routes"][name] = structure_json(value);
  j["consistent"] = r.consistent;
  j["notes"] = r.notes;
  return j;
}

Json check_json(const CohomologyCheck& c) {
  Json j;
  j["holds"] = c.holds;
  j["certificate"] = Json::array();
  for (const auto& s : c.certificate) {
    Json e = subgroup_json(s.subgroup);
    e["h1"] = structure_json(s.group);
    j["certificate"].push_back(std::move(e));
  }
  return j;
}

void text_check(std::ostream& out, const char* what, const CohomologyCheck& c, const char* lattice_label) {
  out << what << ": " << (c.holds ? "true" : "false") << "\n";
  for (const auto& s : c.certificate)
    out << "  H=" << s.subgroup.to_string() << " (order " << s.subgroup.order() << "): H^1(H, " << lattice_label
        << ") = " << s.group.to_string() << "\n";
}

void text_extension(std::ostream& out, const LatticeExtension& e, const char* a, const char* b, const char* c) {
  out << "0 -> " << a << " -> " << b << " -> " << c << " -> 0\n";
  out << "  " << a << ": " << describe(e.sub()) << "\n";
  out << "  " << b << ": " << describe(e.middle()) << "\n";
  out << "  " << c << ": " << describe(e.quotient()) << "\n";
  out << "  inject = " << e.inject().to_string() << "\n";
  out << "  project = " << e.project().to_string() << "\n";
}

Json extension_json(const LatticeExtension& e) {
  Json j;
  j["sub"] = lattice_json(e.sub());
  j["middle"] = lattice_json(e.middle());
  j["quotient"] = lattice_json(e.quotient());
  j["inject"] = matrix_json(e.inject());
  j["project"] = matrix_json(e.project());
  return j;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return 1;
  if (dynamic_cast<const PreconditionError*>(&e)) return 2;
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flasque resolutions, Tate-Shafarevich groups and Brauer-group invariants of integral G-lattices"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Print a machine-readable JSON document");

  InputOptions in;
  int degree = 1;
  std::string kind = "flasque";
  std::optional<std::uint64_t> seed;
  bool full_basis = false;
  std::string catalog_name;
  std::size_t node_limit = 200000;
  std::function<void(Output&)> action;

  auto* cohom = app.add_subcommand("cohomology", "H^n(G, M) for n = 0, 1, 2");
  add_input(cohom, in);
  cohom->add_option("--degree", degree, "Degree")->check(CLI::IsMember({0, 1, 2}))->required();
  cohom->callback([&] {
    action = [&](Output& out) {
      Problem p = build_problem(load_spec(in));
      FinitelyPresentedAbelianGroup h = cohomology(p.lattice, degree);
      put_structure(out.doc, h.structure());
      out.doc["degree"] = degree;
      out.text << "H^" << degree << "(G, M) = " << h.structure().to_string() << "\n";
    };
  });

  auto* sha = app.add_subcommand("sha-omega", "Sha^n_omega(G, M): classes vanishing on every cyclic subgroup");
  add_input(sha, in);
  sha->add_option("--degree", degree, "Degree")->check(CLI::IsMember({1, 2}))->required();
  sha->callback([&] {
    action = [&](Output& out) {
      Problem p = build_problem(load_spec(in));
      AbelianGroupStructure s = sha_omega(degree, p.lattice);
      put_structure(out.doc, s);
      out.doc["degree"] = degree;
      out.text << "Sha^" << degree << "_omega(G, M) = " << s.to_string() << "\n";
    };
  });

  auto* flasque = app.add_subcommand("flasque-check", "Is H^1(H, dual M) = 0 for every subgroup H?");
  add_input(flasque, in);
  flasque->callback([&] {
    action = [&](Output& out) {
      Problem p = build_problem(load_spec(in));
      CohomologyCheck c = is_flasque(p.lattice);
      out.doc = check_json(c);
      text_check(out.text, "flasque", c, "dual M");
    };
  });

  auto* coflasque = app.add_subcommand("coflasque-check", "Is H^1(H, M) = 0 for every subgroup H?");
  add_input(coflasque, in);
  coflasque->callback([&] {
    action = [&](Output& out) {
      Problem p = build_problem(load_spec(in));
      CohomologyCheck c = is_coflasque(p.lattice);
      out.doc = check_json(c);
      text_check(out.text, "coflasque", c, "M");
    };
  });

  auto* resolve = app.add_subcommand("resolve", "Flasque (0 -> M -> P -> F -> 0) or coflasque (0 -> C -> P -> M -> 0) resolution");
  add_input(resolve, in);
  resolve->add_option("--kind", kind, "flasque or coflasque")->check(CLI::IsMember({"flasque", "coflasque"}));
  resolve->add_option("--seed", seed, "Shuffle candidate generators with this seed");
  resolve->add_flag("--full-basis", full_basis, "Use one Z[G/H] per basis vector of M^H");
  resolve->callback([&] {
    action = [&](Output& out) {
      Problem p = build_problem(load_spec(in));
      ResolutionOptions opts;
      opts.shuffle_seed = seed;
      if (full_basis) opts.generators = ResolutionOptions::Generators::FullBasis;
      if (kind == "flasque") {
        FlasqueResolution fr = flasque_resolution(p.lattice, opts);
        out.doc["kind"] = kind;
        out.doc["extension"] = extension_json(fr.extension());
        out.doc["flasque_fingerprint"] = similarity_fingerprint(fr.flasque()).to_string();
        text_extension(out.text, fr.extension(), "M", "P", "F");
        out.text << "H^1(H, dual F) vanishes for all " << fr.flasque_certificate().size() << " subgroup classes\n";
      } else {
        LatticeExtension cr = coflasque_resolution(p.lattice, opts);
        out.doc["kind"] = kind;
        out.doc["extension"] = extension_json(cr);
        text_extension(out.text, cr, "C", "P", "M");
      }
    };
  });

  auto* torus = app.add_subcommand("brauer-torus", "Br of a smooth compactification of the torus with character lattice Q, modulo Br(k)");
  add_input(torus, in);
  torus->callback([&] {
    action = [&](Output& out) {
      Problem p = build_problem(load_spec(in));
      InvariantReport r = brauer_torus_compactification(p.lattice);
      out.doc = report_json(r);
      text_report(out.text, r);
    };
  });

  auto* homspace = app.add_subcommand("brauer-homspace", "Sha^1_omega(G, T) bound for a homogeneous space whose stabilizer has torus character lattice T");
  add_input(homspace, in);
  homspace->callback([&] {
    action = [&](Output& out) {
      Problem p = build_problem(load_spec(in));
      InvariantReport r = brauer_homogeneous_space(p.lattice);
      out.doc = report_json(r);
      text_report(out.text, r);
    };
  });

  auto* chain = app.add_subcommand("chain-check", "Cross-check H^1(G,F), Sha^1(T), Sha^2(Q) for the file's presentation P -> T");
  add_input(chain, in);
  chain->callback([&] {
    action = [&](Output& out) {
      Problem p = build_problem(load_spec(in));
      if (!p.presentation) throw InputError("problem has no \"presentation\" block");
      InvariantReport r = verify_brauer_chain(p.lattice, *p.presentation);
      out.doc = report_json(r);
      text_report(out.text, r);
    };
  });

  auto* split = app.add_subcommand("split-check", "Does the file's extension 0 -> A -> E -> C -> 0 split?");
  add_input(split, in);
  split->callback([&] {
    action = [&](Output& out) {
      Problem p = build_problem(load_spec(in));
      if (!p.extension) throw InputError("problem has no \"extension\" block");
      SplitResult s = is_split(*p.extension);
      ExtensionClass cls = extension_class(*p.extension);
      if (s.split != cls.vanishes()) throw ConsistencyError("split-check: section solver and extension class disagree");
      out.doc["split"] = s.split;
      out.doc["ext1"] = structure_json(cls.group.structure());
      out.doc["class_coordinates"] = Json::array();
      for (const auto& c : cls.coordinates) out.doc["class_coordinates"].push_back(integer_json(c));
      if (s.section) out.doc["section"] = matrix_json(*s.section);
      out.text << "split: " << (s.split ? "true" : "false") << "\n";
      out.text << "Ext^1(C, A) = " << cls.group.structure().to_string() << ", class coordinates " << to_string(cls.coordinates) << "\n";
      if (s.section) out.text << "equivariant section = " << s.section->to_string() << "\n";
    };
  });

  auto* fingerprint = app.add_subcommand("fingerprint", "Per subgroup class: rank M^H, H^1(H, M), H^1(H, dual M), M^H/N_H M");
  add_input(fingerprint, in);
  fingerprint->callback([&] {
    action = [&](Output& out) {
      Problem p = build_problem(load_spec(in));
      SimilarityFingerprint f = similarity_fingerprint(p.lattice);
      out.doc["entries"] = Json::array();
      for (const auto& e : f.entries) {
        Json j = subgroup_json(e.subgroup);
        j["fixed_rank"] = e.fixed_rank;
        j["h1"] = structure_json(e.h1);
        j["h1_dual"] = structure_json(e.h1_dual);
        j["tate_h0"] = structure_json(e.tate_h0);
        out.doc["entries"].push_back(std::move(j));
      }
      out.text << f.to_string();
    };
  });

  auto* detect = app.add_subcommand("permutation-check", "Search for a G-permuted Z-basis");
  add_input(detect, in);
  detect->add_option("--node-limit", node_limit, "Search budget");
  detect->callback([&] {
    action = [&](Output& out) {
      Problem p = build_problem(load_spec(in));
      PermutationDetection d = detect_permutation(p.lattice, node_limit);
      out.doc["status"] = to_string(d.status);
      out.doc["reason"] = d.reason;
      if (d.basis) out.doc["basis"] = matrix_json(*d.basis);
      out.text << to_string(d.status) << ": " << d.reason << "\n";
      if (d.basis) out.text << "basis (columns) = " << d.basis->to_string() << "\n";
    };
  });

  auto* cat = app.add_subcommand("catalog", "Print a built-in problem file, or list the entries");
  cat->add_option("--name", catalog_name, "Entry name");
  cat->callback([&] {
    action = [&](Output& out) {
      if (catalog_name.empty()) {
        out.doc["entries"] = Json::array();
        for (const auto& n : catalog_names()) {
          ProblemSpec s = catalog_problem(n);
          out.doc["entries"].push_back({{"name", n}, {"description", s.description}});
          out.text << n << "  " << s.description << "\n";
        }
        return;
      }
      std::string text = serialize_problem(catalog_problem(catalog_name));
      out.doc = Json::parse(text);
      out.text << text;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Output out;
    action(out);
    if (json) {
      if (!out.doc.is_object()) out.doc = Json::object();
      Json doc;
      doc["command"] = app.get_subcommands().front()->get_name();
      if (!in.path.empty() || !in.catalog.empty()) doc["input"] = input_label(in);
      for (auto& [k, v] : out.doc.items()) doc[k] = v;
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << out.text.str();
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "flasque-lab: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
