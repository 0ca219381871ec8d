#include "flasque/cohomology.hpp"

#include <limits>
#include <optional>
#include <string>

#include "flasque/errors.hpp"

namespace flasque {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

Integer floor_mod(const Integer& a, const Integer& d) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return r;
}

IntVector exact_divide(IntVector v, const Integer& d) {
  for (auto& x : v) {
    if (!mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t())) throw ConsistencyError("Smith column not divisible by its pivot");
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  }
  return v;
}

// span(basis) / span(relations) inside Z^ambient, with relations inside span(basis).
// No basis means the whole ambient space. With torsion_only, the free part of the
// quotient is discarded and coordinates() rejects vectors outside its saturation.
FinitelyPresentedAbelianGroup quotient_group(std::size_t ambient, const std::optional<IntMatrix>& basis, const IntMatrix& relations,
                               bool torsion_only) {
  if (basis && basis->cols() == 0) {
    return FinitelyPresentedAbelianGroup(ambient, {}, {}, [ambient](const IntVector& z) {
      if (z.size() != ambient || !is_zero(z)) throw PreconditionError("vector is not in the cocycle lattice");
      return IntVector{};
    });
  }

  std::shared_ptr<const IntMatrix> inclusion;
  std::shared_ptr<const IntMatrix> retraction;
  IntMatrix x = relations;
  if (basis) {
    inclusion = std::make_shared<const IntMatrix>(*basis);
    retraction = std::make_shared<const IntMatrix>(left_inverse(*basis));
    x = *retraction * relations;
    if (!(*inclusion * x == relations)) throw ConsistencyError("relations leave the cocycle lattice");
  }
  const std::size_t dim = x.rows();
  auto smith = std::make_shared<const SmithReduction>(x);
  const auto& d = smith->diagonal();
  const std::size_t rank = d.size();

  std::vector<Integer> moduli;
  std::vector<IntVector> reps;
  std::vector<std::size_t> slots;
  auto embed = [&](IntVector v) { return inclusion ? *inclusion * v : v; };
  for (std::size_t i = 0; i < rank; ++i) {
    if (d[i] == 1) continue;
    moduli.push_back(d[i]);
    reps.push_back(embed(exact_divide(x * smith->column_transform().column(i), d[i])));
    slots.push_back(i);
  }
  if (!torsion_only && rank < dim) {
    IntMatrix u_inv = smith->row_transform().materialize_inverse();
    for (std::size_t i = rank; i < dim; ++i) {
      moduli.push_back(0);
      reps.push_back(embed(u_inv.column(i)));
      slots.push_back(i);
    }
  }

  auto coords = [ambient, inclusion, retraction, smith, slots, moduli, torsion_only, rank](const IntVector& z) {
    if (z.size() != ambient) throw PreconditionError("cochain has the wrong length");
    IntVector y = z;
    if (retraction) {
      y = *retraction * z;
      if (!(*inclusion * y == z)) throw PreconditionError("vector is not in the cocycle lattice");
    }
    smith->row_transform().apply(y);
    if (torsion_only) {
      for (std::size_t j = rank; j < y.size(); ++j)
        if (y[j] != 0) throw PreconditionError("cochain is not a cocycle");
    }
    IntVector out(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k)
      out[k] = moduli[k] == 0 ? y[slots[k]] : floor_mod(y[slots[k]], moduli[k]);
    return out;
  };
  return FinitelyPresentedAbelianGroup(ambient, std::move(moduli), std::move(reps), std::move(coords));
}

IntVector block(const IntVector& v, std::size_t index, std::size_t r) {
  return IntVector(v.begin() + static_cast<std::ptrdiff_t>(index * r),
                   v.begin() + static_cast<std::ptrdiff_t>((index + 1) * r));
}

// Values of a normalized cochain at arbitrary arguments.
struct Cochain1View {
  const IntVector& f;
  const std::vector<std::size_t>& pos;
  std::size_t r;
  IntVector at(Element g) const { return pos[g] == npos ? IntVector(r) : block(f, pos[g], r); }
};

struct Cochain2View {
  const IntVector& c;
  const std::vector<std::size_t>& pos;
  std::size_t r;
  std::size_t n;  // number of non-identity elements
  IntVector at(Element g, Element h) const {
    if (pos[g] == npos || pos[h] == npos) return IntVector(r);
    return block(c, pos[g] * n + pos[h], r);
  }
};

void add_into(IntVector& acc, const IntVector& v, int sign) {
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (sign > 0)
      acc[i] += v[i];
    else
      acc[i] -= v[i];
  }
}

void check_length(const IntVector& v, std::size_t expected, const char* what) {
  if (v.size() != expected) throw PreconditionError(std::string(what) + " has the wrong length");
}

void write_block(IntVector& out, std::size_t index, const IntVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) out[index * v.size() + i] = v[i];
}

// Restriction matrix of degree 1 or 2 from src = H^degree(G, M) to H^degree(C, M).
IntMatrix restriction_columns(const GLattice& m, const Subgroup& c, const FinitelyPresentedAbelianGroup& src,
                              const FinitelyPresentedAbelianGroup& tgt, int degree) {
  IntMatrix out(tgt.generator_count(), src.generator_count());
  for (std::size_t j = 0; j < src.generator_count(); ++j) {
    const IntVector& rep = src.representatives()[j];
    IntVector restricted = degree == 1 ? restrict_cochain1(m, c, rep) : restrict_cochain2(m, c, rep);
    out.set_column(j, tgt.coordinates(restricted));
  }
  return out;
}

}  // namespace

FinitelyPresentedAbelianGroup::FinitelyPresentedAbelianGroup(std::size_t ambient_dimension, std::vector<Integer> moduli,
                                 std::vector<IntVector> representatives, CoordinateMap coordinates)
    : ambient_dimension_(ambient_dimension),
      moduli_(std::move(moduli)),
      representatives_(std::move(representatives)),
      coordinates_(std::move(coordinates)),
      structure_(AbelianGroupStructure::from_cyclic_orders(moduli_)) {
  if (representatives_.size() != moduli_.size()) throw ConsistencyError("one representative per generator expected");
  for (const auto& rep : representatives_)
    if (rep.size() != ambient_dimension_) throw ConsistencyError("representative has the wrong length");
}

IntVector FinitelyPresentedAbelianGroup::coordinates(const IntVector& cocycle) const { return coordinates_(cocycle); }

CohomMap::CohomMap(FinitelyPresentedAbelianGroup source, FinitelyPresentedAbelianGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count())
    throw ConsistencyError("CohomMap matrix has the wrong shape");
  const auto& s = source_.moduli();
  const auto& t = target_.moduli();
  for (std::size_t j = 0; j < s.size(); ++j) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      Integer image = matrix_(i, j) * s[j];
      bool ok = t[i] == 0 ? image == 0 : mpz_divisible_p(image.get_mpz_t(), t[i].get_mpz_t()) != 0;
      if (!ok) throw ConsistencyError("CohomMap does not respect relations");
    }
  }
}

std::vector<std::size_t> nonidentity_positions(const FiniteGroup& g) {
  std::vector<std::size_t> pos(g.order(), npos);
  std::size_t next = 0;
  for (Element x = 0; x < g.order(); ++x)
    if (x != g.identity()) pos[x] = next++;
  return pos;
}

IntMatrix coboundary0_matrix(const GLattice& m) {
  const auto& g = *m.group();
  const std::size_t r = m.rank();
  auto pos = nonidentity_positions(g);
  IntMatrix out((g.order() - 1) * r, r);
  for (Element x = 0; x < g.order(); ++x) {
    if (pos[x] == npos) continue;
    const IntMatrix& a = m.action(x);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) out(pos[x] * r + i, j) = a(i, j) - (i == j ? 1 : 0);
  }
  return out;
}

IntMatrix coboundary1_matrix(const GLattice& m) {
  const auto& g = *m.group();
  const std::size_t r = m.rank();
  const std::size_t n = g.order() - 1;
  auto pos = nonidentity_positions(g);
  IntMatrix out(n * n * r, n * r);
  for (Element x = 0; x < g.order(); ++x) {
    if (pos[x] == npos) continue;
    const IntMatrix& a = m.action(x);
    for (Element y = 0; y < g.order(); ++y) {
      if (pos[y] == npos) continue;
      const std::size_t row0 = (pos[x] * n + pos[y]) * r;
      const Element xy = g.multiply(x, y);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) out(row0 + i, pos[y] * r + j) += a(i, j);
        if (pos[xy] != npos) out(row0 + i, pos[xy] * r + i) -= 1;
        out(row0 + i, pos[x] * r + i) += 1;
      }
    }
  }
  return out;
}

bool is_cocycle1(const GLattice& m, const IntVector& f) {
  const auto& g = *m.group();
  const std::size_t r = m.rank();
  auto pos = nonidentity_positions(g);
  check_length(f, (g.order() - 1) * r, "1-cochain");
  Cochain1View view{f, pos, r};
  for (Element x = 0; x < g.order(); ++x) {
    IntVector fx = view.at(x);
    for (Element y = 0; y < g.order(); ++y) {
      IntVector rhs = m.action(x) * view.at(y);
      add_into(rhs, fx, +1);
      if (rhs != view.at(g.multiply(x, y))) return false;
    }
  }
  return true;
}

bool is_cocycle2(const GLattice& m, const IntVector& c) {
  const auto& g = *m.group();
  const std::size_t r = m.rank();
  const std::size_t n = g.order() - 1;
  auto pos = nonidentity_positions(g);
  check_length(c, n * n * r, "2-cochain");
  Cochain2View view{c, pos, r, n};
  for (Element x = 0; x < g.order(); ++x) {
    for (Element y = 0; y < g.order(); ++y) {
      const Element xy = g.multiply(x, y);
      IntVector cxy = view.at(x, y);
      for (Element z = 0; z < g.order(); ++z) {
        IntVector v = m.action(x) * view.at(y, z);
        add_into(v, view.at(xy, z), -1);
        add_into(v, view.at(x, g.multiply(y, z)), +1);
        add_into(v, cxy, -1);
        if (!is_zero(v)) return false;
      }
    }
  }
  return true;
}

IntVector restrict_cochain1(const GLattice& m, const Subgroup& h, const IntVector& f) {
  const auto& g = *m.group();
  const std::size_t r = m.rank();
  auto pos = nonidentity_positions(g);
  check_length(f, (g.order() - 1) * r, "1-cochain");
  GroupPtr sub = h.as_group();
  auto sub_pos = nonidentity_positions(*sub);
  Cochain1View view{f, pos, r};
  IntVector out((sub->order() - 1) * r);
  for (std::size_t k = 0; k < sub->order(); ++k)
    if (sub_pos[k] != npos) write_block(out, sub_pos[k], view.at(h.elements()[k]));
  return out;
}

IntVector restrict_cochain2(const GLattice& m, const Subgroup& h, const IntVector& c) {
  const auto& g = *m.group();
  const std::size_t r = m.rank();
  const std::size_t n = g.order() - 1;
  auto pos = nonidentity_positions(g);
  check_length(c, n * n * r, "2-cochain");
  GroupPtr sub = h.as_group();
  auto sub_pos = nonidentity_positions(*sub);
  const std::size_t sn = sub->order() - 1;
  Cochain2View view{c, pos, r, n};
  IntVector out(sn * sn * r);
  for (std::size_t k = 0; k < sub->order(); ++k) {
    if (sub_pos[k] == npos) continue;
    for (std::size_t l = 0; l < sub->order(); ++l) {
      if (sub_pos[l] == npos) continue;
      write_block(out, sub_pos[k] * sn + sub_pos[l], view.at(h.elements()[k], h.elements()[l]));
    }
  }
  return out;
}

FinitelyPresentedAbelianGroup h0(const GLattice& m) {
  IntMatrix basis = fixed_sublattice(m, whole_group(m.group()));
  return quotient_group(m.rank(), basis, IntMatrix(m.rank(), 0), false);
}

FinitelyPresentedAbelianGroup h1(const GLattice& m) {
  FinitelyPresentedAbelianGroup out = quotient_group((m.group()->order() - 1) * m.rank(), std::nullopt, coboundary0_matrix(m), true);
  for (const auto& rep : out.representatives())
    if (!is_cocycle1(m, rep)) throw ConsistencyError("H^1 representative fails the cocycle identity");
  return out;
}

FinitelyPresentedAbelianGroup h2_bar(const GLattice& m, std::size_t max_order) {
  const std::size_t order = m.group()->order();
  if (order > max_order)
    throw SizeLimitError("bar-resolution H^2 needs |G| <= " + std::to_string(max_order) + ", got " +
                         std::to_string(order) + " (set FLASQUE_LAB_MAX_GROUP_ORDER to raise the cap)");
  const std::size_t n = order - 1;
  FinitelyPresentedAbelianGroup out = quotient_group(n * n * m.rank(), std::nullopt, coboundary1_matrix(m), true);
  for (const auto& rep : out.representatives())
    if (!is_cocycle2(m, rep)) throw ConsistencyError("H^2 representative fails the cocycle identity");
  return out;
}

FinitelyPresentedAbelianGroup cohomology(const GLattice& m, int degree, std::size_t max_order) {
  switch (degree) {
    case 0:
      return h0(m);
    case 1:
      return h1(m);
    case 2:
      return h2_bar(m, max_order);
    default:
      throw PreconditionError("cohomology degree must be 0, 1 or 2");
  }
}

FinitelyPresentedAbelianGroup tate_cyclic(const GLattice& m, const Subgroup& h, int degree) {
  if (!same_group(h.parent(), m.group())) throw InputError("subgroup of a different group");
  if (!h.is_cyclic()) throw PreconditionError("tate_cyclic needs a cyclic subgroup");
  const std::size_t r = m.rank();
  IntMatrix norm = norm_matrix(m, h);
  FinitelyPresentedAbelianGroup out = [&] {
    if (degree == 1) {
      IntMatrix shift = m.action(*h.cyclic_generator()) - IntMatrix::identity(r);
      return quotient_group(r, kernel_basis(norm), shift, false);
    }
    if (degree == 0 || degree == 2) return quotient_group(r, fixed_sublattice(m, h), norm, false);
    throw PreconditionError("tate_cyclic degree must be 0, 1 or 2");
  }();
  if (!out.structure().is_finite()) throw ConsistencyError("Tate cohomology of a lattice came out infinite");
  return out;
}

FinitelyPresentedAbelianGroup tate_h0(const GLattice& m, const Subgroup& h) {
  if (!same_group(h.parent(), m.group())) throw InputError("subgroup of a different group");
  return quotient_group(m.rank(), fixed_sublattice(m, h), norm_matrix(m, h), false);
}

CohomMap restriction_h1(const GLattice& m, const Subgroup& h) {
  if (!same_group(h.parent(), m.group())) throw InputError("subgroup of a different group");
  FinitelyPresentedAbelianGroup src = h1(m);
  FinitelyPresentedAbelianGroup tgt = h1(restrict(m, h));
  IntMatrix mat = restriction_columns(m, h, src, tgt, 1);
  return CohomMap(std::move(src), std::move(tgt), std::move(mat));
}

CohomMap restriction_h2(const GLattice& m, const Subgroup& h, std::size_t max_order) {
  if (!same_group(h.parent(), m.group())) throw InputError("subgroup of a different group");
  FinitelyPresentedAbelianGroup src = h2_bar(m, max_order);
  FinitelyPresentedAbelianGroup tgt = h2_bar(restrict(m, h), max_order);
  IntMatrix mat = restriction_columns(m, h, src, tgt, 2);
  return CohomMap(std::move(src), std::move(tgt), std::move(mat));
}

KernelGroup kernel_of_map(const std::vector<Integer>& source_moduli, const std::vector<Integer>& target_moduli,
                          const IntMatrix& map) {
  const std::size_t a = source_moduli.size();
  const std::size_t b = target_moduli.size();
  if (map.rows() != b || map.cols() != a) throw PreconditionError("kernel_of_map: matrix has the wrong shape");
  if (a == 0) return {AbelianGroupStructure::trivial(), IntMatrix(0, 0)};

  // L = {x in Z^a : map x in image diag(t)} contains diag(s); kernel = L / diag(s).
  IntMatrix lattice;
  if (b == 0) {
    lattice = IntMatrix::identity(a);
  } else {
    IntMatrix negated_t(b, b);
    for (std::size_t i = 0; i < b; ++i) negated_t(i, i) = -target_moduli[i];
    lattice = image_basis(kernel_basis(hstack(map, negated_t)).row_range(0, a));
  }
  if (lattice.cols() == 0) return {AbelianGroupStructure::trivial(), IntMatrix(a, 0)};

  auto rel = solve_integer(lattice, IntMatrix::diagonal(source_moduli));
  if (!rel) throw ConsistencyError("kernel_of_map: map does not respect source relations");
  SmithDecomposition sd = snf(*rel);
  IntMatrix u_inv = unimodular_inverse(sd.U);
  std::vector<Integer> orders;
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < lattice.cols(); ++i) {
    Integer d = i < sd.rank ? sd.S(i, i) : Integer(0);
    if (d == 1) continue;
    orders.push_back(d);
    gens.push_back(lattice * u_inv.column(i));
  }
  return {AbelianGroupStructure::from_cyclic_orders(orders), IntMatrix::from_columns(a, gens)};
}

AbelianGroupStructure sha_omega(int degree, const GLattice& m, std::size_t max_order) {
  if (degree != 1 && degree != 2) throw PreconditionError("sha_omega degree must be 1 or 2");
  FinitelyPresentedAbelianGroup src = degree == 1 ? h1(m) : h2_bar(m, max_order);
  if (src.is_trivial()) return AbelianGroupStructure::trivial();

  std::vector<Integer> target_moduli;
  IntMatrix stacked(0, src.generator_count());
  for (const Subgroup& c : cyclic_subgroup_class_representatives(m.group())) {
    if (c.is_trivial()) continue;
    GLattice res = restrict(m, c);
    FinitelyPresentedAbelianGroup tgt = degree == 1 ? h1(res) : h2_bar(res, max_order);
    if (tgt.is_trivial()) continue;
    IntMatrix block_rows = restriction_columns(m, c, src, tgt, degree);
    CohomMap checked(src, tgt, block_rows);
    stacked = vstack(stacked, checked.matrix());
    target_moduli.insert(target_moduli.end(), tgt.moduli().begin(), tgt.moduli().end());
  }
  return kernel_of_map(src.moduli(), target_moduli, stacked).structure;
}

AbelianGroupStructure h2_shifted(const GLattice& m, const LatticeExtension& resolution) {
  if (!(resolution.sub() == m)) throw PreconditionError("h2_shifted: resolution does not start at the given lattice");
  if (!resolution.middle().is_certified_permutation())
    throw PreconditionError("h2_shifted: middle term is not a certified permutation lattice");
  return sha_omega(1, resolution.quotient());
}

}  // namespace flasque
