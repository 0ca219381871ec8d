#pragma once

#include <optional>
#include <string>

#include "flasque/lattice.hpp"

namespace flasque {

/// A short exact sequence 0 -> A -> E -> C -> 0 of G-lattices. Exactness is
/// verified on construction: equivariance, inject saturated of full rank,
/// project surjective, project * inject = 0 and rank E = rank A + rank C
/// (together these force image(inject) = kernel(project)).
class LatticeExtension {
 public:
  LatticeExtension(GLattice sub, GLattice middle, GLattice quotient, IntMatrix inject, IntMatrix project);

  const GLattice& sub() const noexcept { return sub_; }
  const GLattice& middle() const noexcept { return middle_; }
  const GLattice& quotient() const noexcept { return quotient_; }
  const IntMatrix& inject() const noexcept { return inject_; }
  const IntMatrix& project() const noexcept { return project_; }

  /// Why the data fails to be an exact sequence, or nothing when it is one.
  static std::optional<std::string> defect(const GLattice& sub, const GLattice& middle, const GLattice& quotient,
                                           const IntMatrix& inject, const IntMatrix& project);

 private:
  GLattice sub_;
  GLattice middle_;
  GLattice quotient_;
  IntMatrix inject_;
  IntMatrix project_;
};

/// 0 -> A -> A + C -> C -> 0.
LatticeExtension split_extension(const GLattice& sub, const GLattice& quotient);

}  // namespace flasque
