#include "flasque/resolutions.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "flasque/errors.hpp"

namespace flasque {

namespace {

std::vector<Subgroup> class_representatives(const GroupPtr& g) {
  std::vector<Subgroup> reps;
  for (const auto& cls : subgroup_conjugacy_classes(g)) reps.push_back(cls.representative);
  return reps;
}

CohomologyCheck h1_vanishing(const GLattice& m) {
  CohomologyCheck out;
  for (const auto& h : class_representatives(m.group())) {
    AbelianGroupStructure s = h1(restrict(m, h)).structure();
    out.holds = out.holds && s.is_trivial();
    out.certificate.push_back({h, std::move(s)});
  }
  return out;
}

IntMatrix negated(const IntMatrix& m) { return IntMatrix(m.rows(), m.cols()) - m; }

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> factor(-2, 2);
  for (std::size_t step = 0; step < 4 * n; ++step) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const long f = factor(rng);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += f * u(j, c);
  }
  return u;
}

// Whether phi maps P^K onto M^K, given a basis of M^K.
bool fixed_points_onto(const GLattice& p, const IntMatrix& phi, const Subgroup& k, const IntMatrix& target_fixed) {
  if (target_fixed.cols() == 0) return true;
  if (p.rank() == 0) return false;
  IntMatrix image = phi * fixed_sublattice(p, k);
  auto coords = solve_integer(target_fixed, image);
  if (!coords) throw ConsistencyError("image of a fixed vector is not fixed");
  return cokernel_structure(*coords).is_trivial();
}

// Vectors of M^K (in M coordinates) generating the cokernel of P^K -> M^K.
IntMatrix cokernel_generators(const GLattice& p, const IntMatrix& phi, const Subgroup& k, const IntMatrix& target_fixed) {
  const std::size_t r = target_fixed.cols();
  if (r == 0) return target_fixed;
  if (p.rank() == 0) return target_fixed;
  auto coords = solve_integer(target_fixed, phi * fixed_sublattice(p, k));
  if (!coords) throw ConsistencyError("image of a fixed vector is not fixed");
  SmithReduction red(*coords);
  IntMatrix u_inv = red.row_transform().materialize_inverse();
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < r; ++i)
    if (i >= red.rank() || red.diagonal()[i] != 1) gens.push_back(target_fixed * u_inv.column(i));
  IntMatrix out(target_fixed.rows(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) out.set_column(j, gens[j]);
  return out;
}

// Matrix of Z[G/H] -> M sending the coset x_j H to x_j v.
IntMatrix coset_block_map(const GLattice& m, const GLattice& block, const IntVector& v) {
  const PermutationBlock& cert = block.permutation_certificate()->blocks.at(0);
  IntMatrix out(m.rank(), block.rank());
  for (std::size_t j = 0; j < cert.positions.size(); ++j)
    out.set_column(cert.positions[j], m.action(cert.coset_representatives[j]) * v);
  return out;
}

GLattice sublattice_or_zero(const GLattice& m, const IntMatrix& basis) {
  if (basis.cols() == 0) return trivial_lattice(m.group(), 0);
  return sublattice(m, basis);
}

}  // namespace

CohomologyCheck is_flasque(const GLattice& m) { return h1_vanishing(dual(m)); }
CohomologyCheck is_coflasque(const GLattice& m) { return h1_vanishing(m); }

LatticeExtension coflasque_resolution(const GLattice& m, const ResolutionOptions& options) {
  const GroupPtr& g = m.group();
  std::vector<Subgroup> reps = class_representatives(g);
  std::reverse(reps.begin(), reps.end());  // largest subgroups first

  std::optional<std::mt19937_64> rng;
  if (options.shuffle_seed) rng.emplace(*options.shuffle_seed);

  std::vector<IntMatrix> fixed;
  for (const auto& h : reps) fixed.push_back(fixed_sublattice(m, h));

  GLattice p = trivial_lattice(g, 0);
  IntMatrix phi(m.rank(), 0);
  const bool greedy = options.generators == ResolutionOptions::Generators::Greedy;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    IntMatrix candidates = greedy ? cokernel_generators(p, phi, reps[k], fixed[k]) : fixed[k];
    std::vector<std::size_t> order(candidates.cols());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (rng) {
      candidates = candidates * random_unimodular(*rng, candidates.cols());
      std::shuffle(order.begin(), order.end(), *rng);
    }
    for (std::size_t idx : order) {
      if (greedy && fixed_points_onto(p, phi, reps[k], fixed[k])) break;
      GLattice block = permutation_lattice(g, reps[k]);
      phi = hstack(phi, coset_block_map(m, block, candidates.column(idx)));
      p = direct_sum(p, block);
    }
  }
  for (std::size_t k = 0; k < reps.size(); ++k)
    if (!fixed_points_onto(p, phi, reps[k], fixed[k]))
      throw ConsistencyError("coflasque_resolution: P^H -> M^H is not onto for H = " + reps[k].to_string());

  IntMatrix kernel = kernel_basis(phi);
  GLattice c = sublattice_or_zero(p, kernel);
  LatticeExtension ext(c, p, m, kernel, phi);
  if (!is_coflasque(c).holds) throw ConsistencyError("coflasque_resolution: kernel is not coflasque");
  return ext;
}

FlasqueResolution::FlasqueResolution(LatticeExtension extension) : extension_(std::move(extension)) {
  if (!extension_.middle().is_certified_permutation() || !verify_permutation_certificate(extension_.middle()))
    throw PreconditionError("FlasqueResolution: middle term is not a certified permutation lattice");
  CohomologyCheck check = is_flasque(extension_.quotient());
  if (!check.holds) throw PreconditionError("FlasqueResolution: quotient is not flasque");
  flasque_certificate_ = std::move(check.certificate);
}

FlasqueResolution flasque_resolution(const GLattice& m, const ResolutionOptions& options) {
  LatticeExtension cof = coflasque_resolution(dual(m), options);
  GLattice p = dual(cof.middle());
  GLattice f = dual(cof.sub());
  try {
    return FlasqueResolution(LatticeExtension(m, p, f, cof.project().transpose(), cof.inject().transpose()));
  } catch (const PreconditionError& e) {
    throw ConsistencyError(std::string("flasque_resolution: ") + e.what());
  }
}

LatticeExtension flasque_cover(const GLattice& t, const ResolutionOptions& options) {
  LatticeExtension cof = coflasque_resolution(t, options);
  FlasqueResolution fr = flasque_resolution(cof.sub(), options);
  const GLattice& p0 = cof.middle();
  const GLattice& p1 = fr.permutation();

  // E = (P0 + P1) / {(i0 c, -i1 c)}
  QuotientLattice e = quotient_by_pure_sublattice(direct_sum(p0, p1),
                                                  vstack(cof.inject(), negated(fr.extension().inject())));
  IntMatrix inject = e.projection.matrix() * vstack(IntMatrix(p0.rank(), p1.rank()), IntMatrix::identity(p1.rank()));
  IntMatrix project = hstack(cof.project(), IntMatrix(t.rank(), p1.rank())) * e.section;
  LatticeExtension out(p1, e.lattice, t, inject, project);
  if (!is_flasque(out.middle()).holds) throw ConsistencyError("flasque_cover: push-out is not flasque");
  return out;
}

LatticeExtension pullback_resolution(const LatticeExtension& res_t, const LatticeExtension& res_f) {
  if (!(res_t.quotient() == res_f.quotient()))
    throw PreconditionError("pullback_resolution: the two extensions end at different lattices");
  const GLattice& q = res_t.sub();
  const GLattice& p = res_t.middle();
  const GLattice& p1 = res_f.sub();
  const GLattice& f = res_f.middle();
  if (!p.is_certified_permutation() || !p1.is_certified_permutation())
    throw PreconditionError("pullback_resolution: P and P1 must be certified permutation lattices");

  // E = ker (alpha, -beta) inside P + F.
  IntMatrix kernel = kernel_basis(hstack(res_t.project(), negated(res_f.project())));
  GLattice e = sublattice_or_zero(direct_sum(p, f), kernel);
  IntMatrix retract = kernel.cols() == 0 ? IntMatrix(0, p.rank() + f.rank()) : left_inverse(kernel);
  IntMatrix q_in = retract * vstack(res_t.inject(), IntMatrix(f.rank(), q.rank()));
  IntMatrix p1_in = retract * vstack(IntMatrix(p.rank(), p1.rank()), res_f.inject());
  IntMatrix to_p = hstack(IntMatrix::identity(p.rank()), IntMatrix(p.rank(), f.rank())) * kernel;
  IntMatrix to_f = hstack(IntMatrix(f.rank(), p.rank()), IntMatrix::identity(f.rank())) * kernel;

  LatticeExtension column(p1, e, p, p1_in, to_p);
  SplitResult split = is_split(column);
  if (!split.split) throw ConsistencyError("pullback_resolution: 0 -> P1 -> E -> P -> 0 does not split");

  IntMatrix phi = hstack(*split.section, p1_in);  // P + P1 -> E
  if (abs(determinant(phi)) != 1) throw ConsistencyError("pullback_resolution: splitting is not unimodular");
  IntMatrix phi_inv = unimodular_inverse(phi);
  GLattice middle = direct_sum(p, p1);
  if (!is_equivariant(middle, e, phi)) throw ConsistencyError("pullback_resolution: splitting is not equivariant");
  return LatticeExtension(q, middle, f, phi_inv * q_in, to_f * phi);
}

AbelianGroupStructure ext1(const GLattice& c, const GLattice& a) { return h1(hom_lattice(c, a)).structure(); }

ExtensionClass extension_class(const LatticeExtension& ext) {
  const GLattice& a = ext.sub();
  const GLattice& e = ext.middle();
  const GLattice& c = ext.quotient();
  const auto& g = *e.group();
  IntMatrix s0 = c.rank() == 0 ? IntMatrix(e.rank(), 0) : right_inverse(ext.project());
  IntMatrix retract = a.rank() == 0 ? IntMatrix(0, e.rank()) : left_inverse(ext.inject());
  GLattice hom = hom_lattice(c, a);
  const std::size_t block = hom.rank();
  auto pos = nonidentity_positions(g);

  IntVector cocycle((g.order() - 1) * block);
  for (Element x = 0; x < g.order(); ++x) {
    if (x == g.identity()) continue;
    IntMatrix diff = e.action(x) * s0 * c.action(g.inverse(x)) - s0;
    IntMatrix value = retract * diff;
    if (!(ext.inject() * value == diff)) throw ConsistencyError("extension_class: section defect leaves the kernel");
    for (std::size_t k = 0; k < block; ++k) cocycle[pos[x] * block + k] = value.entries()[k];
  }
  FinitelyPresentedAbelianGroup group = h1(hom);
  IntVector coords;
  try {
    coords = group.coordinates(cocycle);
  } catch (const PreconditionError& err) {
    throw ConsistencyError(std::string("extension_class: ") + err.what());
  }
  return {std::move(group), std::move(cocycle), std::move(coords)};
}

SplitResult is_split(const LatticeExtension& ext) {
  const GLattice& a = ext.sub();
  const GLattice& e = ext.middle();
  const GLattice& c = ext.quotient();
  const auto& g = *e.group();
  const std::size_t ra = a.rank(), rc = c.rank();
  IntMatrix s0 = rc == 0 ? IntMatrix(e.rank(), 0) : right_inverse(ext.project());
  IntMatrix retract = ra == 0 ? IntMatrix(0, e.rank()) : left_inverse(ext.inject());

  // s = s0 + inject * t; equivariance on generators reads
  // A(g) t - t C(g) = inject^-1 (s0 C(g) - E(g) s0).
  IntMatrix section = s0;
  if (ra > 0 && rc > 0 && !g.generators().empty()) {
    IntMatrix system(0, ra * rc);
    IntVector rhs;
    for (Element x : g.generators()) {
      system = vstack(system, kronecker(a.action(x), IntMatrix::identity(rc)) -
                                  kronecker(IntMatrix::identity(ra), c.action(x).transpose()));
      IntMatrix r = retract * (s0 * c.action(x) - e.action(x) * s0);
      rhs.insert(rhs.end(), r.entries().begin(), r.entries().end());
    }
    auto t = solve_integer(system, rhs);
    if (!t) return {};
    section = s0 + ext.inject() * IntMatrix(ra, rc, *t);
  }
  if (!(ext.project() * section == IntMatrix::identity(rc))) throw ConsistencyError("is_split: section is not a section");
  for (Element x = 0; x < g.order(); ++x)
    if (!(e.action(x) * section == section * c.action(x))) {
      if (ra == 0 || rc == 0) throw ConsistencyError("is_split: trivial extension without equivariant section");
      throw ConsistencyError("is_split: solved section is not equivariant");
    }
  return {true, section};
}

bool SimilarityFingerprint::same_h1_entries(const SimilarityFingerprint& other) const {
  if (entries.size() != other.entries.size()) return false;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& x = entries[i];
    const auto& y = other.entries[i];
    if (!(x.subgroup == y.subgroup) || !(x.h1 == y.h1) || !(x.h1_dual == y.h1_dual)) return false;
  }
  return true;
}

std::string SimilarityFingerprint::to_string() const {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << "H=" << e.subgroup.to_string() << " |H|=" << e.subgroup.order() << " rank M^H=" << e.fixed_rank
        << " H1=" << e.h1.to_string() << " H1(dual)=" << e.h1_dual.to_string() << " H0^=" << e.tate_h0.to_string()
        << "\n";
  }
  return out.str();
}

SimilarityFingerprint similarity_fingerprint(const GLattice& m) {
  SimilarityFingerprint out;
  GLattice d = dual(m);
  for (const auto& h : class_representatives(m.group())) {
    FingerprintEntry entry{h,
                           fixed_sublattice(m, h).cols(),
                           h1(restrict(m, h)).structure(),
                           h1(restrict(d, h)).structure(),
                           tate_h0(m, h).structure()};
    out.entries.push_back(std::move(entry));
  }
  return out;
}

std::string to_string(PermutationStatus status) {
  switch (status) {
    case PermutationStatus::Permutation:
      return "permutation";
    case PermutationStatus::NotPermutation:
      return "not permutation";
    case PermutationStatus::Unknown:
      return "unknown";
  }
  return "unknown";
}

PermutationDetection detect_permutation(const GLattice& m, std::size_t node_limit) {
  const std::size_t r = m.rank();
  const auto& g = *m.group();
  if (m.is_certified_permutation()) return {PermutationStatus::Permutation, IntMatrix::identity(r), "certified"};

  GLattice d = dual(m);
  for (const auto& h : class_representatives(m.group())) {
    auto s = h1(restrict(m, h)).structure();
    if (!s.is_trivial())
      return {PermutationStatus::NotPermutation, std::nullopt, "H^1(" + h.to_string() + ", M) = " + s.to_string()};
    auto sd = h1(restrict(d, h)).structure();
    if (!sd.is_trivial())
      return {PermutationStatus::NotPermutation, std::nullopt,
              "H^1(" + h.to_string() + ", dual M) = " + sd.to_string()};
  }
  // A permuted basis makes every trace a fixed-point count.
  std::vector<long> traces(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    Integer t = 0;
    for (std::size_t i = 0; i < r; ++i) t += m.action(x)(i, i);
    if (t < 0) return {PermutationStatus::NotPermutation, std::nullopt, "an element has negative trace"};
    traces[x] = t.get_si();
  }
  if (r > 6) return {PermutationStatus::Unknown, std::nullopt, "rank above 6"};

  // Candidate orbits of vectors with entries in [-2, 2].
  struct Orbit {
    std::vector<IntVector> vectors;
    std::vector<long> fixed_counts;
  };
  std::vector<Orbit> orbits;
  IntVector v(r, Integer(-2));
  auto in_box = [](const IntVector& w) {
    return std::all_of(w.begin(), w.end(), [](const Integer& x) { return x >= -2 && x <= 2; });
  };
  while (true) {
    if (!is_zero(v)) {
      std::vector<IntVector> orbit;
      for (Element x = 0; x < g.order(); ++x) orbit.push_back(m.action(x) * v);
      std::sort(orbit.begin(), orbit.end());
      orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
      if (orbit.front() == v && orbit.size() <= r && std::all_of(orbit.begin(), orbit.end(), in_box) &&
          rank(IntMatrix::from_columns(r, orbit)) == orbit.size()) {
        std::vector<long> counts(g.order(), 0);
        for (Element x = 0; x < g.order(); ++x)
          for (const auto& w : orbit)
            if (m.action(x) * w == w) ++counts[x];
        bool fits = true;
        for (Element x = 0; x < g.order(); ++x) fits = fits && counts[x] <= traces[x];
        if (fits) orbits.push_back({std::move(orbit), std::move(counts)});
      }
    }
    std::size_t i = 0;
    while (i < r && v[i] == 2) v[i++] = -2;
    if (i == r) break;
    v[i] += 1;
  }

  std::size_t nodes = 0;
  bool exhausted = false;
  std::vector<IntVector> chosen;
  std::vector<long> used(g.order(), 0);
  std::optional<IntMatrix> found;
  std::function<void(std::size_t)> search = [&](std::size_t start) {
    if (found || exhausted) return;
    if (chosen.size() == r) {
      if (used == traces) {
        IntMatrix b = IntMatrix::from_columns(r, chosen);
        if (abs(determinant(b)) == 1) found = b;
      }
      return;
    }
    for (std::size_t i = start; i < orbits.size() && !found && !exhausted; ++i) {
      if (++nodes > node_limit) {
        exhausted = true;
        return;
      }
      const Orbit& o = orbits[i];
      if (chosen.size() + o.vectors.size() > r) continue;
      bool fits = true;
      for (Element x = 0; x < g.order(); ++x) fits = fits && used[x] + o.fixed_counts[x] <= traces[x];
      if (!fits) continue;
      std::vector<IntVector> trial = chosen;
      trial.insert(trial.end(), o.vectors.begin(), o.vectors.end());
      if (rank(IntMatrix::from_columns(r, trial)) != trial.size()) continue;
      std::swap(chosen, trial);
      for (Element x = 0; x < g.order(); ++x) used[x] += o.fixed_counts[x];
      search(i + 1);
      for (Element x = 0; x < g.order(); ++x) used[x] -= o.fixed_counts[x];
      std::swap(chosen, trial);
    }
  };
  search(0);
  if (found) return {PermutationStatus::Permutation, found, "permuted basis of height <= 2"};
  if (exhausted) return {PermutationStatus::Unknown, std::nullopt, "search node limit reached"};
  return {PermutationStatus::Unknown, std::nullopt, "no permuted basis of height <= 2"};
}

}  // namespace flasque
