#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "flasque/extension.hpp"
#include "flasque/finite_group.hpp"
#include "flasque/integer_matrix.hpp"
#include "flasque/lattice.hpp"

namespace flasque {

/// A finitely generated abelian group realized as a subquotient of an ambient
/// cochain space. Generators are Smith-adapted: generator i has order
/// moduli()[i] (0 for a Z summand), so the relation matrix is diagonal.
/// representatives()[i] is a cochain in the ambient space; coordinates()
/// sends a cocycle to its class in these generators.
class FinitelyPresentedAbelianGroup {
 public:
  using CoordinateMap = std::function<IntVector(const IntVector&)>;

  FinitelyPresentedAbelianGroup(std::size_t ambient_dimension, std::vector<Integer> moduli, std::vector<IntVector> representatives,
                  CoordinateMap coordinates);

  const AbelianGroupStructure& structure() const noexcept { return structure_; }
  std::size_t generator_count() const noexcept { return moduli_.size(); }
  const std::vector<Integer>& moduli() const noexcept { return moduli_; }
  /// Presentation matrix on the generators: diag(moduli).
  IntMatrix relations() const { return IntMatrix::diagonal(moduli_); }
  const std::vector<IntVector>& representatives() const noexcept { return representatives_; }
  std::size_t ambient_dimension() const noexcept { return ambient_dimension_; }
  bool is_trivial() const noexcept { return structure_.is_trivial(); }

  /// Class of a cocycle, each coordinate reduced into [0, modulus) for finite summands.
  /// Throws PreconditionError when the input is not a cocycle of this complex.
  IntVector coordinates(const IntVector& cocycle) const;

 private:
  std::size_t ambient_dimension_;
  std::vector<Integer> moduli_;
  std::vector<IntVector> representatives_;
  CoordinateMap coordinates_;
  AbelianGroupStructure structure_;
};

/// A homomorphism of cohomology groups written on their generators. Checked
/// to send source relations into target relations.
class CohomMap {
 public:
  CohomMap(FinitelyPresentedAbelianGroup source, FinitelyPresentedAbelianGroup target, IntMatrix matrix);

  const FinitelyPresentedAbelianGroup& source() const noexcept { return source_; }
  const FinitelyPresentedAbelianGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

 private:
  FinitelyPresentedAbelianGroup source_;
  FinitelyPresentedAbelianGroup target_;
  IntMatrix matrix_;
};

// Cochain layout. Normalized n-cochains (value 0 whenever an argument is the
// identity) are stored with non-identity elements in increasing index order;
// a 1-cochain f is the concatenation of f(g) in Z^rank, a 2-cochain c that of
// c(g, h) with g major.

/// Position of each element among the non-identity elements (identity -> npos).
std::vector<std::size_t> nonidentity_positions(const FiniteGroup& g);

/// m -> (g m - m)_g.
IntMatrix coboundary0_matrix(const GLattice& m);
/// f -> ((g,h) -> g f(h) - f(gh) + f(g)) on normalized cochains.
IntMatrix coboundary1_matrix(const GLattice& m);

bool is_cocycle1(const GLattice& m, const IntVector& f);
bool is_cocycle2(const GLattice& m, const IntVector& c);

/// Restriction of a normalized cochain on G to the standalone group of h.
IntVector restrict_cochain1(const GLattice& m, const Subgroup& h, const IntVector& f);
IntVector restrict_cochain2(const GLattice& m, const Subgroup& h, const IntVector& c);

FinitelyPresentedAbelianGroup h0(const GLattice& m);
/// Crossed homomorphisms modulo principal ones. Since H^1 of a lattice is
/// finite, Z^1 is the saturation of B^1 and H^1 is the torsion of C^1 / B^1.
FinitelyPresentedAbelianGroup h1(const GLattice& m);
/// Normalized 2-cocycles modulo coboundaries, from the bar complex. As for
/// H^1, this is the torsion of C^2 / B^2. Throws SizeLimitError for |G| > max_order.
FinitelyPresentedAbelianGroup h2_bar(const GLattice& m, std::size_t max_order = max_bar_group_order());
/// H^degree(G, m) for degree 0, 1, 2.
FinitelyPresentedAbelianGroup cohomology(const GLattice& m, int degree, std::size_t max_order = max_bar_group_order());

/// Cohomology of a cyclic subgroup H = <s> from the periodic resolution:
/// degree 1 -> ker N / im(s - 1), degree 0 (Tate) and 2 -> M^H / N M.
/// Representatives are vectors of M.
FinitelyPresentedAbelianGroup tate_cyclic(const GLattice& m, const Subgroup& h, int degree);

/// Tate H^0(H, M) = M^H / N_H M for any subgroup H; representatives are vectors of M.
FinitelyPresentedAbelianGroup tate_h0(const GLattice& m, const Subgroup& h);

CohomMap restriction_h1(const GLattice& m, const Subgroup& h);
CohomMap restriction_h2(const GLattice& m, const Subgroup& h, std::size_t max_order = max_bar_group_order());

/// Kernel of a homomorphism between groups given by diagonal presentations.
struct KernelGroup {
  AbelianGroupStructure structure;
  /// Columns: generators of the kernel in source generator coordinates.
  IntMatrix generators;
};
KernelGroup kernel_of_map(const std::vector<Integer>& source_moduli, const std::vector<Integer>& target_moduli,
                          const IntMatrix& map);

/// Kernel of H^degree(G, m) -> prod over cyclic C of H^degree(C, m), degree 1 or 2,
/// using one cyclic subgroup per conjugacy class. Degree 2 is the direct bar
/// computation and is bounded by max_order.
AbelianGroupStructure sha_omega(int degree, const GLattice& m, std::size_t max_order = max_bar_group_order());

/// Sha^2_omega(G, M) computed as Sha^1_omega(G, F) from 0 -> M -> P -> F -> 0
/// with P a certified permutation lattice. No group-size bound.
AbelianGroupStructure h2_shifted(const GLattice& m, const LatticeExtension& resolution);

}  // namespace flasque
