#include "flasque/extension.hpp"

#include "flasque/errors.hpp"

namespace flasque {

std::optional<std::string> LatticeExtension::defect(const GLattice& sub, const GLattice& middle,
                                                    const GLattice& quotient, const IntMatrix& inject,
                                                    const IntMatrix& project) {
  if (!same_group(sub.group(), middle.group()) || !same_group(middle.group(), quotient.group()))
    return "lattices are over different groups";
  if (inject.rows() != middle.rank() || inject.cols() != sub.rank()) return "inject has the wrong shape";
  if (project.rows() != quotient.rank() || project.cols() != middle.rank()) return "project has the wrong shape";
  if (middle.rank() != sub.rank() + quotient.rank()) return "ranks are not additive";
  if (!is_equivariant(sub, middle, inject)) return "inject is not equivariant";
  if (!is_equivariant(middle, quotient, project)) return "project is not equivariant";
  if (!(project * inject).is_zero()) return "project * inject is not zero";
  if (sub.rank() > 0 && !is_saturated(inject)) return "inject is not injective onto a pure sublattice";
  if (quotient.rank() > 0 && !is_saturated(project.transpose())) return "project is not surjective";
  return std::nullopt;
}

LatticeExtension::LatticeExtension(GLattice sub, GLattice middle, GLattice quotient, IntMatrix inject,
                                   IntMatrix project)
    : sub_(std::move(sub)),
      middle_(std::move(middle)),
      quotient_(std::move(quotient)),
      inject_(std::move(inject)),
      project_(std::move(project)) {
  if (auto why = defect(sub_, middle_, quotient_, inject_, project_))
    throw PreconditionError("LatticeExtension: " + *why);
}

LatticeExtension split_extension(const GLattice& sub, const GLattice& quotient) {
  GLattice middle = direct_sum(sub, quotient);
  IntMatrix inject(middle.rank(), sub.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) inject(i, i) = 1;
  IntMatrix project(quotient.rank(), middle.rank());
  for (std::size_t i = 0; i < quotient.rank(); ++i) project(i, sub.rank() + i) = 1;
  return LatticeExtension(sub, middle, quotient, inject, project);
}

}  // namespace flasque
