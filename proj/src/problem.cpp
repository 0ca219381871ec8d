#include "flasque/problem.hpp"

#include <functional>
#include <map>

#include <json.hpp>

#include "flasque/errors.hpp"

namespace flasque {

namespace {

using Json = nlohmann::ordered_json;
constexpr const char* kFormat = "flasque-lab/1";

// ---- reading ----

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError("problem file " + (where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& member(const Json& obj, const std::string& where, const char* key) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

const Json& array_at(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::size_t read_size(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::size_t>(j.get<long long>());
  fail(where, "expected a non-negative integer");
}

Integer read_integer(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    bool ok = s.size() > start;
    for (std::size_t i = start; i < s.size(); ++i) ok = ok && s[i] >= '0' && s[i] <= '9';
    if (!ok) fail(where, "\"" + s + "\" is not a decimal integer");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  fail(where, "expected an integer");
}

IntMatrix read_matrix(const Json& j, const std::string& where, std::size_t rows, std::optional<std::size_t> cols) {
  array_at(j, where);
  if (j.size() != rows) fail(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  std::size_t width = cols ? *cols : (rows == 0 ? 0 : array_at(j[0], where + "/0").size());
  IntMatrix m(rows, width);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rw = where + "/" + std::to_string(r);
    const Json& row = array_at(j[r], rw);
    if (row.size() != width) fail(rw, "expected " + std::to_string(width) + " entries, got " + std::to_string(row.size()));
    for (std::size_t c = 0; c < width; ++c) m(r, c) = read_integer(row[c], rw + "/" + std::to_string(c));
  }
  return m;
}

GroupSpec read_group(const Json& j, const std::string& where) {
  GroupSpec g;
  if (!j.is_object()) fail(where, "expected an object");
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail(where + "/name", "expected a string");
    g.name = j["name"].get<std::string>();
  }
  const bool table = j.contains("table");
  if (table == j.contains("degree")) fail(where, "give exactly one of \"degree\" (permutation generators) or \"table\"");
  const Json& gens = array_at(member(j, where, "generators"), where + "/generators");
  if (table) {
    const Json& t = array_at(j["table"], where + "/table");
    for (std::size_t r = 0; r < t.size(); ++r) {
      const std::string rw = where + "/table/" + std::to_string(r);
      std::vector<Element> row;
      for (std::size_t c = 0; c < array_at(t[r], rw).size(); ++c) row.push_back(read_size(t[r][c], rw + "/" + std::to_string(c)));
      g.table.push_back(std::move(row));
    }
    if (g.table.empty()) fail(where + "/table", "empty table");
    g.identity = read_size(member(j, where, "identity"), where + "/identity");
    for (std::size_t i = 0; i < gens.size(); ++i)
      g.table_generators.push_back(read_size(gens[i], where + "/generators/" + std::to_string(i)));
  } else {
    g.degree = read_size(j["degree"], where + "/degree");
    if (g.degree == 0) fail(where + "/degree", "degree must be positive");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string gw = where + "/generators/" + std::to_string(i);
      Permutation p;
      for (std::size_t k = 0; k < array_at(gens[i], gw).size(); ++k) p.push_back(read_size(gens[i][k], gw + "/" + std::to_string(k)));
      if (p.size() != g.degree) fail(gw, "expected " + std::to_string(g.degree) + " images");
      g.permutations.push_back(std::move(p));
    }
  }
  return g;
}

std::size_t generator_count(const GroupSpec& g) { return g.is_table() ? g.table_generators.size() : g.permutations.size(); }

LatticeSpec read_lattice(const Json& j, const std::string& where, std::size_t gens) {
  LatticeSpec l;
  l.rank = read_size(member(j, where, "rank"), where + "/rank");
  const Json& action = array_at(member(j, where, "action"), where + "/action");
  if (action.size() != gens)
    fail(where + "/action", "expected one matrix per generator (" + std::to_string(gens) + "), got " + std::to_string(action.size()));
  for (std::size_t i = 0; i < gens; ++i)
    l.action.push_back(read_matrix(action[i], where + "/action/" + std::to_string(i), l.rank, l.rank));
  return l;
}

// ---- writing ----

Json write_integer(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Json write_matrix(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(write_integer(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json write_lattice(const LatticeSpec& l) {
  Json out;
  out["rank"] = l.rank;
  out["action"] = Json::array();
  for (const auto& a : l.action) out["action"].push_back(write_matrix(a));
  return out;
}

Json write_group(const GroupSpec& g) {
  Json out;
  if (!g.name.empty()) out["name"] = g.name;
  if (g.is_table()) {
    out["table"] = g.table;
    out["identity"] = g.identity;
    out["generators"] = g.table_generators;
  } else {
    out["degree"] = g.degree;
    out["generators"] = g.permutations;
  }
  return out;
}

// ---- objects ----

GroupPtr build_group(const GroupSpec& g) {
  if (g.is_table()) return make_group(FiniteGroup::from_table(g.table, g.identity, g.table_generators, g.name));
  return make_group(group_from_permutations(g.degree, g.permutations, max_group_order(), g.name));
}

LatticeSpec lattice_spec(const GLattice& m) {
  LatticeSpec l;
  l.rank = m.rank();
  for (Element g : m.group()->generators()) l.action.push_back(m.action(g));
  return l;
}

Element evaluate_word(const FiniteGroup& g, const std::vector<std::size_t>& word, const std::string& where) {
  Element x = g.identity();
  for (std::size_t i : word) {
    if (i >= g.generators().size()) fail(where, "generator position " + std::to_string(i) + " out of range");
    x = g.multiply(x, g.generators()[i]);
  }
  return x;
}

GLattice block_sum(const GroupPtr& group, const std::vector<std::vector<std::vector<std::size_t>>>& blocks) {
  GLattice p = trivial_lattice(group, 0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::vector<Element> gens;
    for (std::size_t w = 0; w < blocks[b].size(); ++w)
      gens.push_back(evaluate_word(*group, blocks[b][w],
                                   "/presentation/blocks/" + std::to_string(b) + "/" + std::to_string(w)));
    GLattice block = permutation_lattice(group, generated_subgroup(group, gens));
    p = b == 0 ? block : direct_sum(p, block);
  }
  return p;
}

GLattice build_lattice(const GroupPtr& group, const LatticeSpec& l) {
  return GLattice::from_generator_action(group, l.rank, l.action);
}

// ---- catalog ----

using Catalog = std::map<std::string, std::function<ProblemSpec()>>;

Subgroup first_subgroup(const GroupPtr& g, std::size_t order, bool normal) {
  for (const auto& h : all_subgroups(g)) {
    if (h.order() != order) continue;
    bool is_normal = true;
    for (Element x = 0; x < g->order(); ++x) is_normal = is_normal && h.conjugate(x) == h;
    if (is_normal == normal) return h;
  }
  throw ConsistencyError("catalog: no suitable subgroup");
}

// Z[G/H] -> Z[G/H]/N, x -> (x_i - x_0)_{i>0}.
LatticeMap quotient_presentation(const GroupPtr& g, const Subgroup& h) {
  GLattice p = permutation_lattice(g, h);
  const std::size_t n = p.rank();
  IntMatrix map(n - 1, n);
  for (std::size_t i = 1; i < n; ++i) {
    map(i - 1, 0) = -1;
    map(i - 1, i) = 1;
  }
  return LatticeMap(p, norm_one_lattice(g, h), map);
}

// Z[G]^k -> I_G, sending e_{i, x} to x (s_i - 1) for the generators s_i.
LatticeMap augmentation_presentation(const GroupPtr& g) {
  const std::size_t n = g->order(), k = g->generators().size();
  GLattice reg = regular_lattice(g);
  GLattice p = reg;
  for (std::size_t i = 1; i < k; ++i) p = direct_sum(p, reg);
  IntMatrix map(n - 1, n * k);
  for (std::size_t i = 0; i < k; ++i)
    for (Element x = 0; x < n; ++x) {
      Element xs = g->multiply(x, g->generators()[i]);
      if (xs != g->identity()) map(xs - 1, i * n + x) += 1;
      if (x != g->identity()) map(x - 1, i * n + x) -= 1;
    }
  return LatticeMap(p, augmentation_lattice(g), map);
}

// Z[G/K] -> sign, K the kernel of the character.
LatticeMap sign_presentation(const GroupPtr& g, const std::vector<Element>& negated) {
  GLattice sign = sign_lattice(g, negated);
  std::vector<Element> kernel;
  for (Element x = 0; x < g->order(); ++x)
    if (sign.action(x)(0, 0) == 1) kernel.push_back(x);
  GLattice p = permutation_lattice(g, Subgroup(g, kernel));
  return LatticeMap(p, sign, IntMatrix{{1, -1}});
}

LatticeMap identity_presentation(const GLattice& p) { return LatticeMap(p, p, IntMatrix::identity(p.rank())); }

LatticeMap trivial_presentation(const GroupPtr& g, std::size_t rank) {
  GLattice z = permutation_lattice(g, whole_group(g));
  GLattice p = z;
  for (std::size_t i = 1; i < rank; ++i) p = direct_sum(p, z);
  return LatticeMap(p, trivial_lattice(g, rank), IntMatrix::identity(rank));
}

LatticeMap sum_presentation(const LatticeMap& a, const LatticeMap& b) {
  return LatticeMap(direct_sum(a.source(), b.source()), direct_sum(a.target(), b.target()),
                    block_diagonal(a.matrix(), b.matrix()));
}

ProblemSpec presented(const std::string& name, const std::string& description, const LatticeMap& pres) {
  return make_problem_spec(name, description, pres.target(), pres);
}

const Catalog& catalog() {
  static const Catalog entries = [] {
    Catalog c;
    auto g = [](const char* n) { return catalog_group(n); };
    c["trivial-C2-rank1"] = [=] { return presented("trivial-C2-rank1", "C2 acting trivially on Z", trivial_presentation(g("C2"), 1)); };
    c["trivial-S3-rank2"] = [=] { return presented("trivial-S3-rank2", "S3 acting trivially on Z^2", trivial_presentation(g("S3"), 2)); };
    c["sign-C2"] = [=] {
      GroupPtr c2 = g("C2");
      return presented("sign-C2", "C2 acting on Z by -1", sign_presentation(c2, {c2->generators()[0]}));
    };
    c["sign-C4"] = [=] {
      GroupPtr c4 = g("C4");
      return presented("sign-C4", "C4 acting on Z through its quotient of order 2", sign_presentation(c4, {c4->generators()[0]}));
    };
    c["sign-sum-V4"] = [=] {
      GroupPtr v4 = g("V4");
      return presented("sign-sum-V4", "V4 on Z^2, the two generators negating one coordinate each",
                       sum_presentation(sign_presentation(v4, {v4->generators()[0]}), sign_presentation(v4, {v4->generators()[1]})));
    };
    for (const char* grp : {"C3", "V4", "S3"}) {
      std::string name = std::string("regular-") + grp;
      c[name] = [=] { return presented(name, std::string("regular representation Z[") + grp + "]", identity_presentation(regular_lattice(g(grp)))); };
    }
    for (const char* grp : {"C3", "C4", "C6", "S3", "D4", "Q8", "A4"}) {
      std::string name = std::string("norm-one-") + grp;
      c[name] = [=] {
        GroupPtr gp = g(grp);
        return presented(name, std::string("Z[") + grp + "]/N, character lattice of the norm-one torus of a Galois extension with group " + grp,
                         quotient_presentation(gp, trivial_subgroup(gp)));
      };
    }
    c["norm-one-biquadratic"] = [=] {
      GroupPtr v4 = g("V4");
      return presented("norm-one-biquadratic", "Z[V4]/N, character lattice of the norm-one torus of a biquadratic extension",
                       quotient_presentation(v4, trivial_subgroup(v4)));
    };
    for (const char* grp : {"V4", "D4", "Q8"}) {
      std::string name = std::string("augmentation-") + (std::string(grp) == "V4" ? "biquadratic" : grp);
      c[name] = [=] { return presented(name, std::string("augmentation ideal of Z[") + grp + "], dual to Z[G]/N", augmentation_presentation(g(grp))); };
    }
    c["norm-one-S3-cubic"] = [=] {
      GroupPtr s3 = g("S3");
      return presented("norm-one-S3-cubic", "Z[S3/C2]/N, norm-one torus of a non-Galois cubic extension",
                       quotient_presentation(s3, first_subgroup(s3, 2, false)));
    };
    c["norm-one-D4-quartic"] = [=] {
      GroupPtr d4 = g("D4");
      return presented("norm-one-D4-quartic", "Z[D4/H]/N with H non-normal of order 2, norm-one torus of a D4 quartic",
                       quotient_presentation(d4, first_subgroup(d4, 2, false)));
    };
    c["norm-one-A4-quartic"] = [=] {
      GroupPtr a4 = g("A4");
      return presented("norm-one-A4-quartic", "Z[A4/C3]/N, norm-one torus of an A4 quartic",
                       quotient_presentation(a4, first_subgroup(a4, 3, false)));
    };
    c["norm-one-plus-regular-V4"] = [=] {
      GroupPtr v4 = g("V4");
      return presented("norm-one-plus-regular-V4", "Z[V4]/N + Z[V4]",
                       sum_presentation(quotient_presentation(v4, trivial_subgroup(v4)), identity_presentation(regular_lattice(v4))));
    };
    c["dual-norm-one-S3-cubic"] = [=] {
      GroupPtr s3 = g("S3");
      return make_problem_spec("dual-norm-one-S3-cubic", "dual of Z[S3/C2]/N",
                               dual(norm_one_lattice(s3, first_subgroup(s3, 2, false))));
    };
    c["sign-extension-C2"] = [=] {
      GroupPtr c2 = g("C2");
      GLattice sign = sign_lattice(c2, {c2->generators()[0]});
      LatticeExtension ext(sign, regular_lattice(c2), trivial_lattice(c2, 1), IntMatrix{{1}, {-1}}, IntMatrix{{1, 1}});
      return make_problem_spec("sign-extension-C2", "0 -> sign -> Z[C2] -> Z -> 0 (does not split)", sign, std::nullopt, ext);
    };
    c["split-extension-C2"] = [=] {
      GroupPtr c2 = g("C2");
      GLattice sign = sign_lattice(c2, {c2->generators()[0]});
      LatticeExtension ext = split_extension(sign, trivial_lattice(c2, 1));
      return make_problem_spec("split-extension-C2", "0 -> sign -> sign + Z -> Z -> 0", sign, std::nullopt, ext);
    };
    return c;
  }();
  return entries;
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("problem file: ") + e.what());
  }
  if (!j.is_object()) fail("", "expected an object");
  if (j.contains("format") && !(j["format"].is_string() && j["format"].get<std::string>() == kFormat))
    fail("/format", std::string("expected \"") + kFormat + "\"");
  ProblemSpec spec;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("/name", "expected a string");
    spec.name = j["name"].get<std::string>();
  }
  if (j.contains("description")) {
    if (!j["description"].is_string()) fail("/description", "expected a string");
    spec.description = j["description"].get<std::string>();
  }
  spec.group = read_group(member(j, "", "group"), "/group");
  const std::size_t gens = generator_count(spec.group);
  spec.lattice = read_lattice(member(j, "", "lattice"), "/lattice", gens);
  if (j.contains("presentation")) {
    const Json& p = j["presentation"];
    PresentationSpec pres;
    const Json& blocks = array_at(member(p, "/presentation", "blocks"), "/presentation/blocks");
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const std::string bw = "/presentation/blocks/" + std::to_string(b);
      std::vector<std::vector<std::size_t>> words;
      for (std::size_t w = 0; w < array_at(blocks[b], bw).size(); ++w) {
        const std::string ww = bw + "/" + std::to_string(w);
        std::vector<std::size_t> word;
        for (std::size_t k = 0; k < array_at(blocks[b][w], ww).size(); ++k) word.push_back(read_size(blocks[b][w][k], ww + "/" + std::to_string(k)));
        words.push_back(std::move(word));
      }
      pres.blocks.push_back(std::move(words));
    }
    pres.map = read_matrix(member(p, "/presentation", "map"), "/presentation/map", spec.lattice.rank, std::nullopt);
    spec.presentation = std::move(pres);
  }
  if (j.contains("extension")) {
    const Json& e = j["extension"];
    ExtensionSpec ext;
    ext.sub = read_lattice(member(e, "/extension", "sub"), "/extension/sub", gens);
    ext.middle = read_lattice(member(e, "/extension", "middle"), "/extension/middle", gens);
    ext.quotient = read_lattice(member(e, "/extension", "quotient"), "/extension/quotient", gens);
    ext.inject = read_matrix(member(e, "/extension", "inject"), "/extension/inject", ext.middle.rank, ext.sub.rank);
    ext.project = read_matrix(member(e, "/extension", "project"), "/extension/project", ext.quotient.rank, ext.middle.rank);
    spec.extension = std::move(ext);
  }
  return spec;
}

std::string serialize_problem(const ProblemSpec& spec) {
  Json j;
  j["format"] = kFormat;
  if (!spec.name.empty()) j["name"] = spec.name;
  if (!spec.description.empty()) j["description"] = spec.description;
  j["group"] = write_group(spec.group);
  j["lattice"] = write_lattice(spec.lattice);
  if (spec.presentation) {
    j["presentation"]["blocks"] = spec.presentation->blocks;
    j["presentation"]["map"] = write_matrix(spec.presentation->map);
  }
  if (spec.extension) {
    Json& e = j["extension"];
    e["sub"] = write_lattice(spec.extension->sub);
    e["middle"] = write_lattice(spec.extension->middle);
    e["quotient"] = write_lattice(spec.extension->quotient);
    e["inject"] = write_matrix(spec.extension->inject);
    e["project"] = write_matrix(spec.extension->project);
  }
  return j.dump(2) + "\n";
}

Problem build_problem(const ProblemSpec& spec) {
  GroupPtr group = build_group(spec.group);
  Problem out{group, build_lattice(group, spec.lattice), std::nullopt, std::nullopt};
  if (spec.presentation) {
    GLattice p = block_sum(group, spec.presentation->blocks);
    if (spec.presentation->map.cols() != p.rank())
      fail("/presentation/map", "expected " + std::to_string(p.rank()) + " columns for the permutation lattice, got " +
                                    std::to_string(spec.presentation->map.cols()));
    out.presentation.emplace(p, out.lattice, spec.presentation->map);
  }
  if (spec.extension) {
    const ExtensionSpec& e = *spec.extension;
    out.extension.emplace(build_lattice(group, e.sub), build_lattice(group, e.middle), build_lattice(group, e.quotient),
                          e.inject, e.project);
  }
  return out;
}

ProblemSpec make_problem_spec(const std::string& name, const std::string& description, const GLattice& lattice,
                              const std::optional<LatticeMap>& presentation,
                              const std::optional<LatticeExtension>& extension) {
  const FiniteGroup& g = *lattice.group();
  ProblemSpec spec;
  spec.name = name;
  spec.description = description;
  spec.group.name = g.name();
  if (!g.permutations().empty()) {
    spec.group.degree = g.permutations().front().size();
    for (Element x : g.generators()) spec.group.permutations.push_back(g.permutations()[x]);
  } else {
    spec.group.table = g.table();
    spec.group.identity = g.identity();
    spec.group.table_generators = g.generators();
  }
  spec.lattice = lattice_spec(lattice);
  if (presentation) {
    const GLattice& p = presentation->source();
    if (!p.is_certified_permutation()) throw PreconditionError("make_problem_spec: presentation source is not certified");
    PresentationSpec pres;
    for (const auto& block : p.permutation_certificate()->blocks) {
      // Greedy generating set of H, written as words.
      std::vector<Element> gens;
      std::vector<std::vector<std::size_t>> words;
      for (Element x : block.subgroup) {
        if (generated_subgroup(lattice.group(), gens).contains(x)) continue;
        gens.push_back(x);
        words.push_back(g.words()[x]);
      }
      pres.blocks.push_back(std::move(words));
    }
    pres.map = presentation->matrix();
    if (!(block_sum(lattice.group(), pres.blocks) == p))
      throw PreconditionError("make_problem_spec: presentation source is not a sum of Z[G/H] in standard coset order");
    spec.presentation = std::move(pres);
  }
  if (extension) {
    spec.extension = ExtensionSpec{lattice_spec(extension->sub()), lattice_spec(extension->middle()),
                                   lattice_spec(extension->quotient()), extension->inject(), extension->project()};
  }
  return spec;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : catalog()) names.push_back(name);
  return names;
}

ProblemSpec catalog_problem(const std::string& name) {
  auto it = catalog().find(name);
  if (it == catalog().end()) {
    std::string known;
    for (const auto& n : catalog_names()) known += "\n  " + n;
    throw InputError("unknown catalog entry '" + name + "'; available:" + known);
  }
  return it->second();
}

}  // namespace flasque
