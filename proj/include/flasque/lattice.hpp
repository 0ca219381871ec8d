#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "flasque/finite_group.hpp"
#include "flasque/integer_matrix.hpp"

namespace flasque {

/// Witness that a lattice is a direct sum of permutation lattices Z[G/H]:
/// basis vector positions[j] of a block is the coset coset_representatives[j] * H.
/// Positions of all blocks partition 0..rank-1.
struct PermutationBlock {
  std::vector<Element> subgroup;  // sorted elements of H in the lattice's group
  std::vector<Element> coset_representatives;
  std::vector<std::size_t> positions;
};

struct PermutationCertificate {
  std::vector<PermutationBlock> blocks;
};

/// A free Z-module of finite rank with an action of a finite group by unimodular
/// matrices. The action is stored for every element and checked to be a
/// homomorphism on construction.
class GLattice {
 public:
  GLattice(GroupPtr group, std::size_t rank, std::vector<IntMatrix> action,
           std::optional<PermutationCertificate> certificate = std::nullopt);

  /// Extends an action given on the group's generators to every element and
  /// then runs the full homomorphism check.
  static GLattice from_generator_action(GroupPtr group, std::size_t rank, const std::vector<IntMatrix>& generator_action);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t rank() const noexcept { return rank_; }
  const IntMatrix& action(Element g) const { return action_.at(g); }
  const std::vector<IntMatrix>& actions() const noexcept { return action_; }
  const std::optional<PermutationCertificate>& permutation_certificate() const noexcept { return certificate_; }
  bool is_certified_permutation() const noexcept { return certificate_.has_value(); }

  /// Same action with the certificate dropped.
  GLattice without_certificate() const { return GLattice(group_, rank_, action_); }

  /// Same group, identical action matrices; certificates are not compared.
  friend bool operator==(const GLattice& a, const GLattice& b);

 private:
  GroupPtr group_;
  std::size_t rank_;
  std::vector<IntMatrix> action_;
  std::optional<PermutationCertificate> certificate_;
};

/// An equivariant homomorphism, checked on construction.
class LatticeMap {
 public:
  LatticeMap(GLattice source, GLattice target, IntMatrix matrix);

  const GLattice& source() const noexcept { return source_; }
  const GLattice& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

 private:
  GLattice source_;
  GLattice target_;
  IntMatrix matrix_;
};

bool is_equivariant(const GLattice& source, const GLattice& target, const IntMatrix& matrix);
bool verify_permutation_certificate(const GLattice& m);

GLattice trivial_lattice(const GroupPtr& group, std::size_t rank);
/// Z[G/H] on the left cosets of H, cosets ordered by their smallest element.
GLattice permutation_lattice(const GroupPtr& group, const Subgroup& h);
GLattice regular_lattice(const GroupPtr& group);
/// Z with the generators listed in `negated` acting by -1. Must define a character.
GLattice sign_lattice(const GroupPtr& group, const std::vector<Element>& negated_generators);
/// Hom_Z(M, Z): g acts by the transpose of the action of g^-1.
GLattice dual(const GLattice& m);
GLattice direct_sum(const GLattice& m, const GLattice& n);
/// Hom_Z(M, N) on row-major matrix coordinates: (g f) = g_N f g_M^-1.
GLattice hom_lattice(const GLattice& m, const GLattice& n);
/// Restriction to H, viewed over the standalone group H.as_group().
GLattice restrict(const GLattice& m, const Subgroup& h);
/// Saturated basis of M^H as columns.
IntMatrix fixed_sublattice(const GLattice& m, const Subgroup& h);
/// Sum of the action matrices over H.
IntMatrix norm_matrix(const GLattice& m, const Subgroup& h);

struct QuotientLattice {
  GLattice lattice;
  LatticeMap projection;
  /// Z-linear section of the projection (projection * section = I).
  IntMatrix section;
};

/// M / span(B) for a G-stable pure sublattice; both conditions are re-checked.
QuotientLattice quotient_by_pure_sublattice(const GLattice& m, const IntMatrix& basis);

/// Sublattice spanned by a saturated G-stable basis, with the induced action.
GLattice sublattice(const GLattice& m, const IntMatrix& saturated_basis);

/// Z[G]/Z*N with basis the images of e_g, g != 1. This is the character
/// lattice of the norm-one torus of a Galois extension with group G.
GLattice norm_one_lattice(const GroupPtr& group);
/// Z[G/H]/Z*N, the character lattice of the norm-one torus of the subextension fixed by H.
GLattice norm_one_lattice(const GroupPtr& group, const Subgroup& h);
/// Augmentation ideal I_G (kernel of Z[G] -> Z); dual to the norm-one lattice.
GLattice augmentation_lattice(const GroupPtr& group);

std::string describe(const GLattice& m);

}  // namespace flasque
