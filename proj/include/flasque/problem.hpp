#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flasque/extension.hpp"
#include "flasque/lattice.hpp"

namespace flasque {

/// Raw, unvalidated description of a group: permutations of {0..degree-1}
/// (0-based images), or a full multiplication table.
struct GroupSpec {
  std::string name;
  std::size_t degree = 0;
  std::vector<Permutation> permutations;
  std::vector<std::vector<Element>> table;
  Element identity = 0;
  std::vector<Element> table_generators;

  bool is_table() const noexcept { return !table.empty(); }
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

/// Rank plus one row-major matrix per group generator.
struct LatticeSpec {
  std::size_t rank = 0;
  std::vector<IntMatrix> action;
  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

/// P = sum of Z[G/H_i], each H_i given by generators written as words in the
/// group generators (lists of generator positions); map is the matrix P -> lattice.
struct PresentationSpec {
  std::vector<std::vector<std::vector<std::size_t>>> blocks;
  IntMatrix map;
  friend bool operator==(const PresentationSpec&, const PresentationSpec&) = default;
};

struct ExtensionSpec {
  LatticeSpec sub;
  LatticeSpec middle;
  LatticeSpec quotient;
  IntMatrix inject;
  IntMatrix project;
  friend bool operator==(const ExtensionSpec&, const ExtensionSpec&) = default;
};

struct ProblemSpec {
  std::string name;
  std::string description;
  GroupSpec group;
  LatticeSpec lattice;
  std::optional<PresentationSpec> presentation;
  std::optional<ExtensionSpec> extension;
  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// The validated objects described by a ProblemSpec.
struct Problem {
  GroupPtr group;
  GLattice lattice;
  /// P -> lattice with P certified permutation.
  std::optional<LatticeMap> presentation;
  std::optional<LatticeExtension> extension;
};

/// Throws InputError naming the offending location (line/column for syntax,
/// a JSON pointer for schema problems).
ProblemSpec parse_problem(const std::string& text);
std::string serialize_problem(const ProblemSpec& spec);

/// Builds and checks every object. Shape problems raise InputError; a
/// generator action that does not extend to a homomorphism, or a
/// non-equivariant map, raises PreconditionError.
Problem build_problem(const ProblemSpec& spec);

ProblemSpec make_problem_spec(const std::string& name, const std::string& description, const GLattice& lattice,
                              const std::optional<LatticeMap>& presentation = std::nullopt,
                              const std::optional<LatticeExtension>& extension = std::nullopt);

std::vector<std::string> catalog_names();
/// Throws InputError listing the available names for an unknown one.
ProblemSpec catalog_problem(const std::string& name);

}  // namespace flasque
