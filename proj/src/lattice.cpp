#include "flasque/lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "flasque/errors.hpp"

namespace flasque {

GLattice::GLattice(GroupPtr group, std::size_t rank, std::vector<IntMatrix> action,
                   std::optional<PermutationCertificate> certificate)
    : group_(std::move(group)), rank_(rank), action_(std::move(action)), certificate_(std::move(certificate)) {
  const FiniteGroup& g = *group_;
  if (action_.size() != g.order())
    throw InputError("GLattice: expected " + std::to_string(g.order()) + " action matrices, got " +
                     std::to_string(action_.size()));
  for (const IntMatrix& a : action_)
    if (a.rows() != rank_ || a.cols() != rank_) throw InputError("GLattice: action matrix has wrong shape");
  if (!action_[g.identity()].is_identity())
    throw PreconditionError("GLattice: identity does not act trivially");
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      if (action_[g.multiply(a, b)] != action_[a] * action_[b])
        throw PreconditionError("GLattice: action is not a homomorphism at (" + std::to_string(a) + "," +
                                std::to_string(b) + ")");
  // Homomorphism into a finite group of matrices: every action matrix has
  // finite order, so its determinant is a unit. Checked anyway.
  for (Element a = 0; a < g.order(); ++a) {
    Integer d = determinant(action_[a]);
    if (d != 1 && d != -1) throw PreconditionError("GLattice: action matrix is not unimodular");
  }
  if (certificate_ && !verify_permutation_certificate(*this))
    throw PreconditionError("GLattice: permutation certificate does not match the action");
}

GLattice GLattice::from_generator_action(GroupPtr group, std::size_t rank,
                                         const std::vector<IntMatrix>& generator_action) {
  const FiniteGroup& g = *group;
  if (generator_action.size() != g.generators().size())
    throw InputError("GLattice: expected one action matrix per generator (" + std::to_string(g.generators().size()) +
                     "), got " + std::to_string(generator_action.size()));
  for (const IntMatrix& a : generator_action)
    if (a.rows() != rank || a.cols() != rank) throw InputError("GLattice: generator matrix has wrong shape");
  std::vector<IntMatrix> action(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    IntMatrix m = IntMatrix::identity(rank);
    for (std::size_t k : g.words()[x]) m = m * generator_action[k];
    action[x] = std::move(m);
  }
  return GLattice(std::move(group), rank, std::move(action));
}

bool operator==(const GLattice& a, const GLattice& b) {
  return same_group(a.group_, b.group_) && a.rank_ == b.rank_ && a.action_ == b.action_;
}

bool is_equivariant(const GLattice& source, const GLattice& target, const IntMatrix& matrix) {
  if (!same_group(source.group(), target.group())) return false;
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank()) return false;
  for (Element g = 0; g < source.group()->order(); ++g)
    if (matrix * source.action(g) != target.action(g) * matrix) return false;
  return true;
}

LatticeMap::LatticeMap(GLattice source, GLattice target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!same_group(source_.group(), target_.group())) throw InputError("LatticeMap: lattices over different groups");
  if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
    throw InputError("LatticeMap: matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                     ", expected " + std::to_string(target_.rank()) + "x" + std::to_string(source_.rank()));
  if (!is_equivariant(source_, target_, matrix_)) throw PreconditionError("LatticeMap: matrix is not equivariant");
}

namespace {

/// Index j with rep_j^-1 x in H, or reps.size().
std::size_t coset_of(const FiniteGroup& g, const PermutationBlock& block, Element x) {
  const auto& h = block.subgroup;
  for (std::size_t j = 0; j < block.coset_representatives.size(); ++j)
    if (std::binary_search(h.begin(), h.end(), g.multiply(g.inverse(block.coset_representatives[j]), x))) return j;
  return block.coset_representatives.size();
}

}  // namespace

bool verify_permutation_certificate(const GLattice& m) {
  if (!m.permutation_certificate()) return false;
  const FiniteGroup& g = *m.group();
  std::vector<bool> covered(m.rank(), false);
  for (const PermutationBlock& block : m.permutation_certificate()->blocks) {
    const auto& reps = block.coset_representatives;
    if (!std::is_sorted(block.subgroup.begin(), block.subgroup.end())) return false;
    if (reps.size() * block.subgroup.size() != g.order() || block.positions.size() != reps.size()) return false;
    for (std::size_t p : block.positions) {
      if (p >= m.rank() || covered[p]) return false;
      covered[p] = true;
    }
    for (std::size_t j = 0; j < reps.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (coset_of(g, block, reps[j]) == i) return false;
    for (Element s = 0; s < g.order(); ++s) {
      const IntMatrix& a = m.action(s);
      for (std::size_t j = 0; j < reps.size(); ++j) {
        std::size_t k = coset_of(g, block, g.multiply(s, reps[j]));
        if (k == reps.size()) return false;
        for (std::size_t r = 0; r < m.rank(); ++r)
          if (a(r, block.positions[j]) != (r == block.positions[k] ? 1 : 0)) return false;
      }
    }
  }
  return std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
}

GLattice trivial_lattice(const GroupPtr& group, std::size_t rank) {
  PermutationCertificate cert;
  for (std::size_t i = 0; i < rank; ++i) {
    PermutationBlock block;
    block.subgroup = whole_group(group).elements();
    block.coset_representatives = {group->identity()};
    block.positions = {i};
    cert.blocks.push_back(std::move(block));
  }
  return GLattice(group, rank, std::vector<IntMatrix>(group->order(), IntMatrix::identity(rank)), std::move(cert));
}

GLattice permutation_lattice(const GroupPtr& group, const Subgroup& h) {
  if (!same_group(h.parent(), group)) throw InputError("permutation_lattice: subgroup of a different group");
  const FiniteGroup& g = *group;
  // Enumerate left cosets in order of their smallest element.
  std::vector<std::size_t> coset_index(g.order(), g.order());
  std::vector<Element> reps;
  for (Element x = 0; x < g.order(); ++x) {
    if (coset_index[x] != g.order()) continue;
    for (Element y : h.elements()) coset_index[g.multiply(x, y)] = reps.size();
    reps.push_back(x);
  }
  const std::size_t n = reps.size();
  std::vector<IntMatrix> action(g.order(), IntMatrix(n, n));
  for (Element s = 0; s < g.order(); ++s)
    for (std::size_t j = 0; j < n; ++j) action[s](coset_index[g.multiply(s, reps[j])], j) = 1;
  PermutationCertificate cert;
  std::vector<std::size_t> positions(n);
  for (std::size_t j = 0; j < n; ++j) positions[j] = j;
  cert.blocks.push_back({h.elements(), reps, positions});
  return GLattice(group, n, std::move(action), std::move(cert));
}

GLattice regular_lattice(const GroupPtr& group) { return permutation_lattice(group, trivial_subgroup(group)); }

GLattice sign_lattice(const GroupPtr& group, const std::vector<Element>& negated_generators) {
  std::vector<IntMatrix> gens;
  for (Element s : group->generators()) {
    bool negate = std::find(negated_generators.begin(), negated_generators.end(), s) != negated_generators.end();
    gens.push_back(IntMatrix{{negate ? -1L : 1L}});
  }
  return GLattice::from_generator_action(group, 1, gens);
}

GLattice dual(const GLattice& m) {
  const FiniteGroup& g = *m.group();
  std::vector<IntMatrix> action(g.order());
  for (Element s = 0; s < g.order(); ++s) action[s] = m.action(g.inverse(s)).transpose();
  // Permutation matrices are orthogonal, so the certificate survives verbatim.
  return GLattice(m.group(), m.rank(), std::move(action), m.permutation_certificate());
}

GLattice direct_sum(const GLattice& m, const GLattice& n) {
  if (!same_group(m.group(), n.group())) throw InputError("direct_sum: lattices over different groups");
  std::vector<IntMatrix> action(m.group()->order());
  for (Element s = 0; s < action.size(); ++s) action[s] = block_diagonal(m.action(s), n.action(s));
  std::optional<PermutationCertificate> cert;
  if (m.permutation_certificate() && n.permutation_certificate()) {
    cert = *m.permutation_certificate();
    for (PermutationBlock block : n.permutation_certificate()->blocks) {
      for (std::size_t& p : block.positions) p += m.rank();
      cert->blocks.push_back(std::move(block));
    }
  }
  return GLattice(m.group(), m.rank() + n.rank(), std::move(action), std::move(cert));
}

GLattice hom_lattice(const GLattice& m, const GLattice& n) {
  if (!same_group(m.group(), n.group())) throw InputError("hom_lattice: lattices over different groups");
  const FiniteGroup& g = *m.group();
  // vec(A X B) = (A kron B^T) vec(X) for row-major vec.
  std::vector<IntMatrix> action(g.order());
  for (Element s = 0; s < g.order(); ++s) action[s] = kronecker(n.action(s), m.action(g.inverse(s)).transpose());
  return GLattice(m.group(), m.rank() * n.rank(), std::move(action));
}

GLattice restrict(const GLattice& m, const Subgroup& h) {
  if (!same_group(h.parent(), m.group())) throw InputError("restrict: subgroup of a different group");
  GroupPtr sub = h.as_group();
  std::vector<IntMatrix> action;
  action.reserve(h.order());
  for (Element x : h.elements()) action.push_back(m.action(x));
  std::optional<PermutationCertificate> cert;
  if (m.permutation_certificate()) {
    // Each Z[G/K] block splits into H-orbits of cosets; the orbit through xK is
    // Z[H/Stab] with Stab = H ∩ xKx^-1. Indices below are standalone H indices.
    const FiniteGroup& g = *m.group();
    cert.emplace();
    for (const PermutationBlock& block : m.permutation_certificate()->blocks) {
      const std::size_t n = block.coset_representatives.size();
      std::vector<bool> done(n, false);
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j]) continue;
        PermutationBlock piece;
        for (std::size_t k = 0; k < h.order(); ++k) {
          std::size_t c = coset_of(g, block, g.multiply(h.elements()[k], block.coset_representatives[j]));
          if (c == j) piece.subgroup.push_back(k);
          if (!done[c]) {
            done[c] = true;
            piece.coset_representatives.push_back(k);
            piece.positions.push_back(block.positions[c]);
          }
        }
        cert->blocks.push_back(std::move(piece));
      }
    }
  }
  return GLattice(std::move(sub), m.rank(), std::move(action), std::move(cert));
}

IntMatrix fixed_sublattice(const GLattice& m, const Subgroup& h) {
  if (!same_group(h.parent(), m.group())) throw InputError("fixed_sublattice: subgroup of a different group");
  const std::size_t r = m.rank();
  IntMatrix stacked(0, r);
  const IntMatrix id = IntMatrix::identity(r);
  for (Element x : h.elements()) {
    if (x == m.group()->identity()) continue;
    stacked = vstack(stacked, m.action(x) - id);
  }
  return kernel_basis(stacked);
}

IntMatrix norm_matrix(const GLattice& m, const Subgroup& h) {
  IntMatrix n(m.rank(), m.rank());
  for (Element x : h.elements()) n = n + m.action(x);
  return n;
}

QuotientLattice quotient_by_pure_sublattice(const GLattice& m, const IntMatrix& basis) {
  if (basis.rows() != m.rank()) throw InputError("quotient_by_pure_sublattice: basis has wrong length");
  const std::size_t k = basis.cols();
  if (k > 0) {
    if (!is_saturated(basis))
      throw PreconditionError("quotient_by_pure_sublattice: columns are not a basis of a pure sublattice");
    for (Element g = 0; g < m.group()->order(); ++g)
      if (!solve_integer(basis, m.action(g) * basis))
        throw PreconditionError("quotient_by_pure_sublattice: sublattice is not G-stable");
  }
  // Complete the basis: U B V = [I; 0], so the last rows of U project onto the
  // quotient and the last columns of U^-1 give a section.
  SmithReduction reduction(basis);
  IntMatrix u = reduction.row_transform().materialize();
  IntMatrix u_inv = reduction.row_transform().materialize_inverse();
  const std::size_t q = m.rank() - k;
  IntMatrix projection = u.row_range(k, q);
  IntMatrix section = u_inv.column_range(k, q);
  std::vector<IntMatrix> action(m.group()->order());
  for (Element g = 0; g < action.size(); ++g) action[g] = projection * m.action(g) * section;
  GLattice quotient(m.group(), q, std::move(action));
  LatticeMap map(m, quotient, projection);
  return {quotient, map, section};
}

GLattice sublattice(const GLattice& m, const IntMatrix& saturated_basis) {
  IntMatrix left = left_inverse(saturated_basis);
  std::vector<IntMatrix> action(m.group()->order());
  for (Element g = 0; g < action.size(); ++g) {
    IntMatrix image = m.action(g) * saturated_basis;
    action[g] = left * image;
    if (saturated_basis * action[g] != image) throw PreconditionError("sublattice: span is not G-stable");
  }
  return GLattice(m.group(), saturated_basis.cols(), std::move(action));
}

GLattice norm_one_lattice(const GroupPtr& group, const Subgroup& h) {
  // x -> (x_i - x_0)_{i>0}: kernel Z*N, e_i -> e_i, e_0 -> -(1,...,1).
  GLattice p = permutation_lattice(group, h);
  const std::size_t n = p.rank();
  if (n == 0) throw InputError("norm_one_lattice: empty coset space");
  IntMatrix projection(n - 1, n);
  for (std::size_t i = 1; i < n; ++i) {
    projection(i - 1, 0) = -1;
    projection(i - 1, i) = 1;
  }
  IntMatrix section(n, n - 1);
  for (std::size_t i = 1; i < n; ++i) section(i, i - 1) = 1;
  std::vector<IntMatrix> action(group->order());
  for (Element g = 0; g < action.size(); ++g) action[g] = projection * p.action(g) * section;
  return GLattice(group, n - 1, std::move(action));
}

GLattice norm_one_lattice(const GroupPtr& group) { return norm_one_lattice(group, trivial_subgroup(group)); }

GLattice augmentation_lattice(const GroupPtr& group) {
  // Basis e_g - e_1 for g != 1.
  GLattice p = regular_lattice(group);
  const std::size_t n = p.rank();
  IntMatrix basis(n, n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    basis(0, i - 1) = -1;
    basis(i, i - 1) = 1;
  }
  return sublattice(p, basis);
}

std::string describe(const GLattice& m) {
  std::ostringstream out;
  out << "rank " << m.rank() << " lattice over " << (m.group()->name().empty() ? "G" : m.group()->name()) << " (order "
      << m.group()->order() << ")";
  if (m.is_certified_permutation()) out << ", certified permutation";
  return out.str();
}

}  // namespace flasque
