#include "flasque/finite_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "flasque/errors.hpp"

namespace flasque {

namespace {

std::optional<std::size_t> env_group_cap() {
  const char* raw = std::getenv("FLASQUE_LAB_MAX_GROUP_ORDER");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0)
    throw InputError(std::string("FLASQUE_LAB_MAX_GROUP_ORDER is not a positive integer: ") + raw);
  return static_cast<std::size_t>(v);
}

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
  return r;
}

}  // namespace

std::size_t max_group_order() { return env_group_cap().value_or(512); }
std::size_t max_bar_group_order() { return env_group_cap().value_or(12); }

// ---------------------------------------------------------------------------
// FiniteGroup

void FiniteGroup::finish() {
  const std::size_t n = table_.size();
  inverse_.assign(n, n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (table_[a][b] == identity_) inverse_[a] = b;

  words_.assign(n, {});
  std::vector<bool> seen(n, false);
  seen[identity_] = true;
  std::deque<Element> queue{identity_};
  std::size_t reached = 1;
  while (!queue.empty()) {
    Element g = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < generators_.size(); ++k) {
      Element h = multiply(generators_[k], g);
      if (seen[h]) continue;
      seen[h] = true;
      ++reached;
      words_[h] = words_[g];
      words_[h].insert(words_[h].begin(), k);
      queue.push_back(h);
    }
  }
  if (reached != n) throw InputError("FiniteGroup: generators do not generate the group");
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Element>> table, Element identity,
                                    std::vector<Element> generators, std::string name) {
  const std::size_t n = table.size();
  if (n == 0) throw InputError("FiniteGroup: empty multiplication table");
  if (n > max_group_order())
    throw SizeLimitError("FiniteGroup: order " + std::to_string(n) + " exceeds cap " +
                         std::to_string(max_group_order()) +
                         " (set FLASQUE_LAB_MAX_GROUP_ORDER to raise it)");
  if (identity >= n) throw InputError("FiniteGroup: identity index out of range");
  for (const auto& row : table) {
    if (row.size() != n) throw InputError("FiniteGroup: multiplication table is not square");
    for (Element x : row)
      if (x >= n) throw InputError("FiniteGroup: table entry out of range");
  }
  for (Element a = 0; a < n; ++a)
    if (table[identity][a] != a || table[a][identity] != a)
      throw InputError("FiniteGroup: declared identity is not an identity");
  for (Element a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (Element b = 0; b < n && !has_inverse; ++b)
      has_inverse = table[a][b] == identity && table[b][a] == identity;
    if (!has_inverse) throw InputError("FiniteGroup: element " + std::to_string(a) + " has no inverse");
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw InputError("FiniteGroup: table is not associative");
  for (Element g : generators)
    if (g >= n) throw InputError("FiniteGroup: generator index out of range");

  FiniteGroup group;
  group.table_ = std::move(table);
  group.identity_ = identity;
  group.generators_ = std::move(generators);
  group.name_ = std::move(name);
  group.finish();
  return group;
}

Element FiniteGroup::power(Element a, long long exponent) const {
  if (exponent < 0) return power(inverse(a), -exponent);
  Element result = identity_;
  for (long long i = 0; i < exponent; ++i) result = multiply(result, a);
  return result;
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != identity_; x = multiply(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order(); ++a)
    for (Element b = 0; b < order(); ++b)
      if (multiply(a, b) != multiply(b, a)) return false;
  return true;
}

bool FiniteGroup::is_cyclic() const {
  for (Element a = 0; a < order(); ++a)
    if (element_order(a) == order()) return true;
  return false;
}

FiniteGroup group_from_permutations(std::size_t degree, const std::vector<Permutation>& generators,
                                    std::size_t max_order, std::string name) {
  for (const Permutation& p : generators) {
    if (p.size() != degree)
      throw InputError("group_from_permutations: generator has length " + std::to_string(p.size()) +
                       ", expected degree " + std::to_string(degree));
    std::vector<bool> hit(degree, false);
    for (std::size_t x : p) {
      if (x >= degree || hit[x]) throw InputError("group_from_permutations: generator is not a bijection");
      hit[x] = true;
    }
  }
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<Permutation> elements{id};
  std::deque<Permutation> queue{id};
  while (!queue.empty()) {
    Permutation g = queue.front();
    queue.pop_front();
    for (const Permutation& s : generators) {
      Permutation h = compose(s, g);
      if (elements.insert(h).second) {
        if (elements.size() > max_order)
          throw SizeLimitError("group_from_permutations: closure exceeds cap " + std::to_string(max_order) +
                               " (set FLASQUE_LAB_MAX_GROUP_ORDER to raise it)");
        queue.push_back(std::move(h));
      }
    }
  }
  std::vector<Permutation> sorted(elements.begin(), elements.end());
  std::map<Permutation, Element> index;
  for (Element i = 0; i < sorted.size(); ++i) index.emplace(sorted[i], i);

  FiniteGroup group;
  group.table_.assign(sorted.size(), std::vector<Element>(sorted.size()));
  for (Element a = 0; a < sorted.size(); ++a)
    for (Element b = 0; b < sorted.size(); ++b) group.table_[a][b] = index.at(compose(sorted[a], sorted[b]));
  group.identity_ = 0;
  for (const Permutation& s : generators) group.generators_.push_back(index.at(s));
  group.permutations_ = std::move(sorted);
  group.name_ = std::move(name);
  group.finish();
  return group;
}

GroupPtr make_group(FiniteGroup group) { return std::make_shared<const FiniteGroup>(std::move(group)); }

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(GroupPtr parent, std::vector<Element> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  const FiniteGroup& g = *parent_;
  if (!contains(g.identity())) throw InputError("Subgroup: identity missing");
  for (Element a : elements_) {
    if (a >= g.order()) throw InputError("Subgroup: element out of range");
    if (!contains(g.inverse(a))) throw InputError("Subgroup: not closed under inverses");
    for (Element b : elements_)
      if (!contains(g.multiply(a, b))) throw InputError("Subgroup: not closed under multiplication");
  }
  for (Element a : elements_) {
    if (g.element_order(a) == elements_.size()) {
      cyclic_generator_ = a;
      break;
    }
  }
}

bool same_group(const GroupPtr& a, const GroupPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->identity() == b->identity() && a->table() == b->table();
}

bool Subgroup::contains(Element g) const { return std::binary_search(elements_.begin(), elements_.end(), g); }

std::optional<std::size_t> Subgroup::index_of(Element g) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
  if (it == elements_.end() || *it != g) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

GroupPtr Subgroup::as_group() const {
  const std::size_t n = elements_.size();
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = *index_of(parent_->multiply(elements_[a], elements_[b]));
  // Generators: greedy, smallest indices first.
  std::vector<Element> gens;
  std::vector<Element> parent_gens;
  std::size_t reached = 1;
  for (std::size_t k = 0; k < n && reached < n; ++k) {
    if (elements_[k] == parent_->identity()) continue;
    std::vector<Element> trial = parent_gens;
    trial.push_back(elements_[k]);
    Subgroup span = generated_subgroup(parent_, trial);
    if (span.order() > reached) {
      reached = span.order();
      parent_gens = std::move(trial);
      gens.push_back(k);
    }
  }
  std::string name = parent_->name().empty() ? std::string() : parent_->name() + to_string();
  return make_group(FiniteGroup::from_table(std::move(table), *index_of(parent_->identity()), std::move(gens), name));
}

Subgroup Subgroup::conjugate(Element g) const {
  std::vector<Element> conj;
  conj.reserve(elements_.size());
  for (Element x : elements_) conj.push_back(parent_->conjugate(g, x));
  return Subgroup(parent_, std::move(conj));
}

std::string Subgroup::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(elements_[i]);
  }
  return s + "}";
}

bool operator<(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements() < b.elements();
}

namespace {

std::vector<Element> closure(const FiniteGroup& g, const std::vector<Element>& generators) {
  std::vector<bool> member(g.order(), false);
  member[g.identity()] = true;
  std::vector<Element> out{g.identity()};
  std::deque<Element> queue{g.identity()};
  while (!queue.empty()) {
    Element x = queue.front();
    queue.pop_front();
    for (Element s : generators) {
      Element y = g.multiply(s, x);
      if (!member[y]) {
        member[y] = true;
        out.push_back(y);
        queue.push_back(y);
      }
    }
  }
  return out;
}

}  // namespace

Subgroup generated_subgroup(const GroupPtr& group, const std::vector<Element>& generators) {
  for (Element s : generators)
    if (s >= group->order()) throw InputError("generated_subgroup: element out of range");
  return Subgroup(group, closure(*group, generators));
}

Subgroup whole_group(const GroupPtr& group) {
  std::vector<Element> all(group->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(group, std::move(all));
}

Subgroup trivial_subgroup(const GroupPtr& group) { return Subgroup(group, {group->identity()}); }

std::vector<Subgroup> cyclic_subgroups(const GroupPtr& group) {
  std::set<std::vector<Element>> seen;
  std::vector<Subgroup> out;
  for (Element g = 0; g < group->order(); ++g) {
    auto elems = closure(*group, {g});
    std::sort(elems.begin(), elems.end());
    if (seen.insert(elems).second) out.emplace_back(group, std::move(elems));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& group) {
  // Every subgroup is a join of cyclic subgroups: close the cyclic ones under
  // pairwise joins until nothing new appears.
  std::vector<std::vector<Element>> found;
  std::set<std::vector<Element>> seen;
  for (const Subgroup& c : cyclic_subgroups(group)) {
    seen.insert(c.elements());
    found.push_back(c.elements());
  }
  const std::size_t cyclic_count = found.size();
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < cyclic_count; ++j) {
      const auto& a = found[i];
      const auto& c = found[j];
      if (std::includes(a.begin(), a.end(), c.begin(), c.end())) continue;
      std::vector<Element> gens = a;
      gens.insert(gens.end(), c.begin(), c.end());
      auto join = closure(*group, gens);
      std::sort(join.begin(), join.end());
      if (seen.insert(join).second) found.push_back(std::move(join));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& elems : found) out.emplace_back(group, std::move(elems));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubgroupClass> subgroup_conjugacy_classes(const GroupPtr& group) {
  std::vector<SubgroupClass> classes;
  std::set<std::vector<Element>> assigned;
  for (const Subgroup& h : all_subgroups(group)) {
    if (assigned.count(h.elements())) continue;
    std::set<std::vector<Element>> members;
    for (Element g = 0; g < group->order(); ++g) members.insert(h.conjugate(g).elements());
    assigned.insert(members.begin(), members.end());
    // all_subgroups is sorted and members share an order, so the first
    // unassigned member met is the least one.
    classes.push_back({Subgroup(group, *members.begin()), members.size()});
  }
  std::sort(classes.begin(), classes.end(),
            [](const SubgroupClass& a, const SubgroupClass& b) { return a.representative < b.representative; });
  return classes;
}

std::vector<Subgroup> cyclic_subgroup_class_representatives(const GroupPtr& group) {
  std::vector<Subgroup> reps;
  for (const SubgroupClass& c : subgroup_conjugacy_classes(group))
    if (c.representative.is_cyclic()) reps.push_back(c.representative);
  return reps;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

Permutation cycle(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

GroupPtr quaternion_group() {
  // Element 2*u + s encodes (+/-) unit u with u in {1, i, j, k}, s = 1 for minus.
  static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const std::size_t unit_product[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  auto left_multiplication = [](std::size_t u) {
    Permutation p(8);
    for (std::size_t x = 0; x < 8; ++x) {
      std::size_t v = x / 2;
      int sign = (x % 2 == 0 ? 1 : -1) * unit_sign[u][v];
      p[x] = 2 * unit_product[u][v] + (sign < 0 ? 1 : 0);
    }
    return p;
  };
  return make_group(group_from_permutations(8, {left_multiplication(1), left_multiplication(2)}, max_group_order(), "Q8"));
}

}  // namespace

GroupPtr catalog_group(const std::string& name) {
  if (name == "V4") return make_group(group_from_permutations(4, {{1, 0, 3, 2}, {2, 3, 0, 1}}, max_group_order(), name));
  if (name == "S3") return make_group(group_from_permutations(3, {{1, 2, 0}, {1, 0, 2}}, max_group_order(), name));
  if (name == "D4") return make_group(group_from_permutations(4, {{1, 2, 3, 0}, {0, 3, 2, 1}}, max_group_order(), name));
  if (name == "Q8") return quaternion_group();
  if (name == "A4") return make_group(group_from_permutations(4, {{1, 2, 0, 3}, {1, 0, 3, 2}}, max_group_order(), name));
  if (name == "C1") return make_group(group_from_permutations(1, {}, max_group_order(), name));
  if (name.size() >= 2 && name[0] == 'C') {
    const std::string digits = name.substr(1);
    if (std::all_of(digits.begin(), digits.end(), ::isdigit) && digits.size() <= 2) {
      std::size_t n = std::stoul(digits);
      if (n >= 2 && n <= 12) return make_group(group_from_permutations(n, {cycle(n)}, max_group_order(), name));
    }
  }
  std::string known;
  for (const auto& n : catalog_group_names()) known += " " + n;
  throw InputError("unknown catalog group '" + name + "'; available:" + known + " (and Cn, n <= 12)");
}

std::vector<std::string> catalog_group_names() { return {"C1", "C2", "C3", "C4", "V4", "C6", "S3", "D4", "Q8", "A4"}; }

}  // namespace flasque
