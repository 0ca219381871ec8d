#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flasque {

using Permutation = std::vector<std::size_t>;
using Element = std::size_t;

/// Closure cap for group construction. FLASQUE_LAB_MAX_GROUP_ORDER overrides.
std::size_t max_group_order();
/// Cap on |G| for direct bar-resolution H^2. FLASQUE_LAB_MAX_GROUP_ORDER overrides.
std::size_t max_bar_group_order();

/// A finite group given by its full multiplication table.
class FiniteGroup {
 public:
  /// Validates associativity, identity, inverses and that generators generate.
  static FiniteGroup from_table(std::vector<std::vector<Element>> table, Element identity,
                                std::vector<Element> generators, std::string name = {});

  std::size_t order() const noexcept { return table_.size(); }
  Element identity() const noexcept { return identity_; }
  const std::vector<Element>& generators() const noexcept { return generators_; }
  const std::string& name() const noexcept { return name_; }

  Element multiply(Element a, Element b) const { return table_[a][b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  Element power(Element a, long long exponent) const;
  std::size_t element_order(Element a) const;
  Element conjugate(Element g, Element x) const { return multiply(multiply(g, x), inverse(g)); }

  const std::vector<std::vector<Element>>& table() const noexcept { return table_; }
  /// Permutation images when the group was built from permutations; empty otherwise.
  const std::vector<Permutation>& permutations() const noexcept { return permutations_; }
  /// For every element, a word in generator positions whose product is that element.
  /// The identity has the empty word. Built breadth first, so words are shortest.
  const std::vector<std::vector<std::size_t>>& words() const noexcept { return words_; }

  bool is_abelian() const;
  bool is_cyclic() const;

 private:
  friend FiniteGroup group_from_permutations(std::size_t, const std::vector<Permutation>&, std::size_t,
                                             std::string);
  FiniteGroup() = default;
  void finish();

  std::vector<std::vector<Element>> table_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
  std::vector<Element> generators_;
  std::vector<Permutation> permutations_;
  std::vector<std::vector<std::size_t>> words_;
  std::string name_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Closure of the given permutations under composition, (p*q)(x) = p(q(x)).
/// Elements are indexed in lexicographic order of their images, so the
/// identity is element 0.
FiniteGroup group_from_permutations(std::size_t degree, const std::vector<Permutation>& generators,
                                    std::size_t max_order = max_group_order(), std::string name = {});

GroupPtr make_group(FiniteGroup group);

/// Same object, or the same multiplication table and identity.
bool same_group(const GroupPtr& a, const GroupPtr& b);

/// A subgroup as a sorted set of element indices of its parent.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<Element> elements);

  const GroupPtr& parent() const noexcept { return parent_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  bool contains(Element g) const;
  bool is_cyclic() const noexcept { return cyclic_generator_.has_value(); }
  /// Smallest-index element generating the subgroup, when cyclic.
  std::optional<Element> cyclic_generator() const noexcept { return cyclic_generator_; }
  bool is_trivial() const noexcept { return elements_.size() == 1; }
  bool is_whole_group() const noexcept { return elements_.size() == parent_->order(); }

  /// The subgroup as a standalone group; element k corresponds to elements()[k].
  GroupPtr as_group() const;
  /// Position of a parent element inside elements(), if present.
  std::optional<std::size_t> index_of(Element g) const;
  Subgroup conjugate(Element g) const;
  std::string to_string() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }
  friend bool operator<(const Subgroup& a, const Subgroup& b);

 private:
  GroupPtr parent_;
  std::vector<Element> elements_;
  std::optional<Element> cyclic_generator_;
};

Subgroup generated_subgroup(const GroupPtr& group, const std::vector<Element>& generators);
Subgroup whole_group(const GroupPtr& group);
Subgroup trivial_subgroup(const GroupPtr& group);

/// Every subgroup, sorted by (order, element set).
std::vector<Subgroup> all_subgroups(const GroupPtr& group);
/// The distinct subgroups <g>, sorted by (order, element set).
std::vector<Subgroup> cyclic_subgroups(const GroupPtr& group);

struct SubgroupClass {
  Subgroup representative;  // lexicographically least member of the class
  std::size_t size;
};

/// Subgroups up to conjugacy, sorted by (order, representative).
std::vector<SubgroupClass> subgroup_conjugacy_classes(const GroupPtr& group);
/// Conjugacy class representatives of cyclic subgroups only.
std::vector<Subgroup> cyclic_subgroup_class_representatives(const GroupPtr& group);

/// Built-in groups: C2, C3, C4, V4, C6, S3, D4, Q8, A4 (also Cn for n <= 12).
GroupPtr catalog_group(const std::string& name);
std::vector<std::string> catalog_group_names();

}  // namespace flasque
