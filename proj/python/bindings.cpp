#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flasque/errors.hpp"
#include "flasque/invariants.hpp"
#include "flasque/problem.hpp"

namespace py = pybind11;
using namespace flasque;

namespace {

py::int_ to_py(const Integer& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

Integer from_py(const py::handle& h) {
  if (!py::isinstance<py::int_>(h)) throw InputError("matrix entries must be integers");
  return Integer(py::str(h).cast<std::string>());
}

py::list matrix_to_py(const IntMatrix& m) {
  py::list rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    py::list row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.append(to_py(m(r, c)));
    rows.append(row);
  }
  return rows;
}

IntMatrix matrix_from_py(const py::sequence& rows, std::size_t n) {
  if (rows.size() != n) throw InputError("expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  IntMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    py::sequence row = rows[r].cast<py::sequence>();
    if (row.size() != n) throw InputError("expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = from_py(row[c]);
  }
  return m;
}

py::dict structure_to_py(const AbelianGroupStructure& s) {
  py::dict d;
  py::list factors;
  for (const auto& f : s.invariant_factors) factors.append(to_py(f));
  d["invariant_factors"] = factors;
  d["free_rank"] = s.free_rank;
  d["structure"] = s.to_string();
  return d;
}

py::dict report_to_py(const InvariantReport& r) {
  py::dict d = structure_to_py(r.brauer_quotient);
  py::dict routes;
  for (const auto& [name, value] : r.routes) routes[py::str(name)] = structure_to_py(value);
  d["routes"] = routes;
  d["consistent"] = r.consistent;
  d["notes"] = r.notes;
  d["input"] = r.input;
  return d;
}

py::list generator_action(const GLattice& m) {
  py::list out;
  for (Element g : m.group()->generators()) out.append(matrix_to_py(m.action(g)));
  return out;
}

py::dict extension_to_py(const LatticeExtension& e) {
  py::dict d;
  d["sub"] = e.sub();
  d["middle"] = e.middle();
  d["quotient"] = e.quotient();
  d["inject"] = matrix_to_py(e.inject());
  d["project"] = matrix_to_py(e.project());
  return d;
}

ResolutionOptions options(std::optional<std::uint64_t> seed, bool full_basis) {
  ResolutionOptions o;
  o.shuffle_seed = seed;
  if (full_basis) o.generators = ResolutionOptions::Generators::FullBasis;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Flasque resolutions and Tate-Shafarevich groups of integral G-lattices";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", base.ptr());
  auto pre = py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<SizeLimitError>(m, "SizeLimitError", pre.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());

  py::class_<GLattice>(m, "Lattice")
      .def_static(
          "from_catalog", [](const std::string& name) { return build_problem(catalog_problem(name)).lattice; },
          py::arg("name"))
      .def_static(
          "from_json", [](const std::string& text) { return build_problem(parse_problem(text)).lattice; }, py::arg("text"))
      .def_static(
          "from_generators",
          [](const std::string& group, std::size_t rank, const py::sequence& matrices) {
            GroupPtr g = catalog_group(group);
            std::vector<IntMatrix> action;
            for (const auto& mat : matrices) action.push_back(matrix_from_py(mat.cast<py::sequence>(), rank));
            return GLattice::from_generator_action(g, rank, action);
          },
          py::arg("group"), py::arg("rank"), py::arg("generator_matrices"),
          "Lattice over a catalog group (C2, V4, S3, ...) given one matrix per generator.")
      .def_static("trivial", [](const std::string& group, std::size_t rank) { return trivial_lattice(catalog_group(group), rank); })
      .def_static("regular", [](const std::string& group) { return regular_lattice(catalog_group(group)); })
      .def_static("norm_one", [](const std::string& group) { return norm_one_lattice(catalog_group(group)); })
      .def_static("augmentation", [](const std::string& group) { return augmentation_lattice(catalog_group(group)); })
      .def_property_readonly("rank", &GLattice::rank)
      .def_property_readonly("group_order", [](const GLattice& l) { return l.group()->order(); })
      .def_property_readonly("group_name", [](const GLattice& l) { return l.group()->name(); })
      .def_property_readonly("is_certified_permutation", &GLattice::is_certified_permutation)
      .def("generator_action", &generator_action)
      .def("dual", [](const GLattice& l) { return dual(l); })
      .def("__add__", [](const GLattice& a, const GLattice& b) { return direct_sum(a, b); })
      .def("__eq__", [](const GLattice& a, const GLattice& b) { return a == b; })
      .def("__repr__", [](const GLattice& l) { return "<Lattice " + describe(l) + ">"; });

  m.def("catalog_names", &catalog_names);
  m.def("catalog_json", [](const std::string& name) { return serialize_problem(catalog_problem(name)); }, py::arg("name"));

  m.def("cohomology", [](const GLattice& l, int degree) { return structure_to_py(cohomology(l, degree).structure()); },
        py::arg("lattice"), py::arg("degree"));
  m.def("sha_omega", [](const GLattice& l, int degree) { return structure_to_py(sha_omega(degree, l)); }, py::arg("lattice"),
        py::arg("degree"));
  m.def("is_flasque", [](const GLattice& l) { return is_flasque(l).holds; });
  m.def("is_coflasque", [](const GLattice& l) { return is_coflasque(l).holds; });

  m.def(
      "flasque_resolution",
      [](const GLattice& l, std::optional<std::uint64_t> seed, bool full_basis) {
        return extension_to_py(flasque_resolution(l, options(seed, full_basis)).extension());
      },
      py::arg("lattice"), py::arg("seed") = py::none(), py::arg("full_basis") = false,
      "0 -> M -> P -> F -> 0 as a dict with keys sub, middle, quotient, inject, project.");
  m.def(
      "coflasque_resolution",
      [](const GLattice& l, std::optional<std::uint64_t> seed, bool full_basis) {
        return extension_to_py(coflasque_resolution(l, options(seed, full_basis)));
      },
      py::arg("lattice"), py::arg("seed") = py::none(), py::arg("full_basis") = false);

  m.def("brauer_torus", [](const GLattice& q) { return report_to_py(brauer_torus_compactification(q)); });
  m.def("brauer_homspace", [](const GLattice& t) { return report_to_py(brauer_homogeneous_space(t)); });
  m.def(
      "chain_check",
      [](const std::string& catalog_name) {
        Problem p = build_problem(catalog_problem(catalog_name));
        if (!p.presentation) throw InputError("catalog entry '" + catalog_name + "' has no presentation");
        return report_to_py(verify_brauer_chain(p.lattice, *p.presentation));
      },
      py::arg("catalog_name"));
  m.def(
      "split_check",
      [](const std::string& catalog_name) {
        Problem p = build_problem(catalog_problem(catalog_name));
        if (!p.extension) throw InputError("catalog entry '" + catalog_name + "' has no extension");
        py::dict d;
        d["split"] = is_split(*p.extension).split;
        ExtensionClass cls = extension_class(*p.extension);
        d["ext1"] = structure_to_py(cls.group.structure());
        d["class_vanishes"] = cls.vanishes();
        return d;
      },
      py::arg("catalog_name"));
  m.def("fingerprint", [](const GLattice& l) {
    py::list out;
    for (const auto& e : similarity_fingerprint(l).entries) {
      py::dict d;
      d["subgroup"] = e.subgroup.elements();
      d["fixed_rank"] = e.fixed_rank;
      d["h1"] = structure_to_py(e.h1);
      d["h1_dual"] = structure_to_py(e.h1_dual);
      d["tate_h0"] = structure_to_py(e.tate_h0);
      out.append(d);
    }
    return out;
  });
}
