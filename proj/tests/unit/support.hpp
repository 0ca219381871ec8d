#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// into the cohomology layer; the oracles rebuild cochain complexes from the
// definitions on un-normalized cochains.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "flasque/finite_group.hpp"
#include "flasque/integer_matrix.hpp"
#include "flasque/lattice.hpp"

namespace oracle {

using flasque::AbelianGroupStructure;
using flasque::Element;
using flasque::GLattice;
using flasque::IntMatrix;
using flasque::Integer;
using flasque::IntVector;

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

/// Product of random elementary matrices.
inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> factor(-3, 3);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    long f = factor(rng);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += f * u(j, c);
  }
  return u;
}

/// Laplace expansion; only for the tiny matrices the minor oracle needs.
inline Integer laplace_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    Integer term = m(0, j) * laplace_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  if (k > n) return;
  while (true) {
    out.push_back(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

/// Invariant factors from determinantal divisors d_k = gcd of k x k minors.
inline AbelianGroupStructure cokernel_by_minors(const IntMatrix& m) {
  std::vector<Integer> orders;
  Integer previous = 1;
  std::size_t rank = 0;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    combinations(m.rows(), k, rs);
    combinations(m.cols(), k, cs);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
        Integer d = laplace_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    orders.push_back(g / previous);
    previous = g;
    rank = k;
  }
  for (std::size_t i = rank; i < m.rows(); ++i) orders.push_back(0);
  return AbelianGroupStructure::from_cyclic_orders(orders);
}

/// span(relations) inside the lattice spanned by the saturated columns of basis:
/// structure of span(basis) / span(relations).
inline AbelianGroupStructure subquotient(const IntMatrix& basis, const IntMatrix& relations) {
  if (basis.cols() == 0) return {};
  auto coords = flasque::solve_integer(basis, relations);
  if (!coords) throw std::logic_error("relations outside basis span");
  return flasque::cokernel_structure(*coords);
}

// Full (un-normalized) cochains: a 1-cochain has |G| blocks, a 2-cochain |G|^2.

/// (d0 m)(g) = g m - m
inline IntMatrix full_d0(const GLattice& m) {
  const auto& g = *m.group();
  const std::size_t r = m.rank(), n = g.order();
  IntMatrix out(n * r, r);
  for (Element x = 0; x < n; ++x)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) out(x * r + i, j) = m.action(x)(i, j) - (i == j ? 1 : 0);
  return out;
}

/// (d1 f)(g, h) = g f(h) - f(gh) + f(g)
inline IntMatrix full_d1(const GLattice& m) {
  const auto& g = *m.group();
  const std::size_t r = m.rank(), n = g.order();
  IntMatrix out(n * n * r, n * r);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      std::size_t row = (x * n + y) * r;
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) out(row + i, y * r + j) += m.action(x)(i, j);
        out(row + i, g.multiply(x, y) * r + i) -= 1;
        out(row + i, x * r + i) += 1;
      }
    }
  return out;
}

/// (d2 c)(g, h, k) = g c(h, k) - c(gh, k) + c(g, hk) - c(g, h)
inline IntMatrix full_d2(const GLattice& m) {
  const auto& g = *m.group();
  const std::size_t r = m.rank(), n = g.order();
  IntMatrix out(n * n * n * r, n * n * r);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z) {
        std::size_t row = ((x * n + y) * n + z) * r;
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t j = 0; j < r; ++j) out(row + i, (y * n + z) * r + j) += m.action(x)(i, j);
          out(row + i, (g.multiply(x, y) * n + z) * r + i) -= 1;
          out(row + i, (x * n + g.multiply(y, z)) * r + i) += 1;
          out(row + i, (x * n + y) * r + i) -= 1;
        }
      }
  return out;
}

inline AbelianGroupStructure h1_full(const GLattice& m) {
  if (m.rank() == 0) return {};
  return subquotient(flasque::kernel_basis(full_d1(m)), full_d0(m));
}

inline AbelianGroupStructure h2_full(const GLattice& m) {
  if (m.rank() == 0) return {};
  return subquotient(flasque::kernel_basis(full_d2(m)), full_d1(m));
}

/// Ker N / (s - 1) M for a cyclic group with generator s.
inline AbelianGroupStructure cyclic_h1(const GLattice& m, Element s) {
  const auto& g = *m.group();
  const std::size_t r = m.rank();
  IntMatrix norm(r, r);
  IntMatrix power = IntMatrix::identity(r);
  for (std::size_t i = 0; i < g.element_order(s); ++i) {
    norm = norm + power;
    power = m.action(s) * power;
  }
  return subquotient(flasque::kernel_basis(norm), m.action(s) - IntMatrix::identity(r));
}

/// Sha^degree_omega from the definition on full cochains: cocycles whose
/// restriction to every cyclic subgroup is a coboundary there, modulo coboundaries.
inline AbelianGroupStructure sha_full(const GLattice& m, int degree) {
  const auto& g = *m.group();
  const std::size_t r = m.rank(), n = g.order();
  if (r == 0) return {};
  IntMatrix z = flasque::kernel_basis(degree == 1 ? full_d1(m) : full_d2(m));
  IntMatrix b = degree == 1 ? full_d0(m) : full_d1(m);
  if (z.cols() == 0) return {};

  std::vector<IntMatrix> restricted, local_d;
  std::size_t rows = 0, extra = 0;
  for (const auto& c : flasque::cyclic_subgroups(m.group())) {
    if (c.is_trivial()) continue;
    GLattice rm = flasque::restrict(m, c);
    const auto& e = c.elements();
    const std::size_t k = e.size();
    IntMatrix sel(degree == 1 ? k * r : k * k * r, z.rows());
    for (std::size_t a = 0; a < k; ++a) {
      if (degree == 1) {
        for (std::size_t i = 0; i < r; ++i) sel(a * r + i, e[a] * r + i) = 1;
        continue;
      }
      for (std::size_t a2 = 0; a2 < k; ++a2)
        for (std::size_t i = 0; i < r; ++i) sel((a * k + a2) * r + i, (e[a] * n + e[a2]) * r + i) = 1;
    }
    restricted.push_back(sel * z);
    local_d.push_back(degree == 1 ? full_d0(rm) : full_d1(rm));
    rows += sel.rows();
    extra += local_d.back().cols();
  }
  if (restricted.empty()) return subquotient(z, b);

  // [R_C Z | -d_C] x = 0 for all C at once; the Z-part of the kernel spans the cocycles we keep.
  IntMatrix big(rows, z.cols() + extra);
  std::size_t row0 = 0, col0 = z.cols();
  for (std::size_t t = 0; t < restricted.size(); ++t) {
    for (std::size_t i = 0; i < restricted[t].rows(); ++i) {
      for (std::size_t j = 0; j < z.cols(); ++j) big(row0 + i, j) = restricted[t](i, j);
      for (std::size_t j = 0; j < local_d[t].cols(); ++j) big(row0 + i, col0 + j) = -local_d[t](i, j);
    }
    row0 += restricted[t].rows();
    col0 += local_d[t].cols();
  }
  IntMatrix ker = flasque::kernel_basis(big);
  IntMatrix kept = flasque::image_basis(z * ker.row_range(0, z.cols()));
  return subquotient(kept, b);
}

inline std::uint64_t seed_from(const char* label) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char* p = label; *p; ++p) h = (h ^ static_cast<unsigned char>(*p)) * 1099511628211ULL;
  return h;
}

}  // namespace oracle
