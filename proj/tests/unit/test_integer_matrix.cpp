#include <doctest.h>

#include "flasque/errors.hpp"
#include "flasque/integer_matrix.hpp"
#include "support.hpp"

using namespace flasque;

namespace {

bool is_diagonal_chain(const SmithDecomposition& d) {
  for (std::size_t i = 0; i < d.S.rows(); ++i)
    for (std::size_t j = 0; j < d.S.cols(); ++j)
      if (i != j && d.S(i, j) != 0) return false;
  auto diag = d.diagonal();
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
    if (diag[i] < 0) return false;
    if (diag[i] == 0 && diag[i + 1] != 0) return false;
    if (diag[i] != 0 && !mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t())) return false;
  }
  return true;
}

void check_snf(const IntMatrix& m) {
  SmithDecomposition d = snf(m);
  CHECK(d.U * m * d.V == d.S);
  CHECK(abs(determinant(d.U)) == 1);
  CHECK(abs(determinant(d.V)) == 1);
  CHECK(is_diagonal_chain(d));
}

}  // namespace

TEST_SUITE("integer_matrix") {
  TEST_CASE("snf of the identity") {
    SmithDecomposition d = snf(IntMatrix::identity(2));
    CHECK(d.S == IntMatrix::identity(2));
    CHECK(d.diagonal() == std::vector<Integer>{1, 1});
  }

  TEST_CASE("snf of [[2,4],[6,8]] has diagonal (2,4)") {
    IntMatrix m{{2, 4}, {6, 8}};
    // determinantal divisors: gcd of entries 2, |det| = 8, so (2, 4)
    CHECK(oracle::cokernel_by_minors(m) == AbelianGroupStructure::from_cyclic_orders({2, 4}));
    SmithDecomposition d = snf(m);
    CHECK(d.diagonal() == std::vector<Integer>{2, 4});
    check_snf(m);
  }

  TEST_CASE("snf of a zero matrix is zero") {
    SmithDecomposition d = snf(IntMatrix(3, 2));
    CHECK(d.S.is_zero());
    CHECK(d.rank == 0);
  }

  TEST_CASE("snf is deterministic") {
    IntMatrix m{{6, 10, 15}, {4, -2, 8}, {0, 3, 9}};
    SmithDecomposition a = snf(m), b = snf(m);
    CHECK(a.U == b.U);
    CHECK(a.V == b.V);
    CHECK(a.S == b.S);
  }

  TEST_CASE("random snf matches determinantal divisors") {
    std::mt19937 rng(oracle::seed_from("snf-random"));
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
      IntMatrix m = oracle::random_matrix(rng, rows, cols, 6);
      if (trial % 5 == 0) m = m * oracle::random_matrix(rng, cols, cols, 2);  // force degeneracy sometimes
      check_snf(m);
      CHECK(cokernel_structure(m) == oracle::cokernel_by_minors(m));
    }
  }

  TEST_CASE("large entries stay exact") {
    IntMatrix m(2, 2);
    m(0, 0) = Integer("123456789012345678901234567890");
    m(0, 1) = Integer("987654321098765432109876543210");
    m(1, 0) = 7;
    m(1, 1) = 11;
    check_snf(m);
    CHECK(cokernel_structure(m) == oracle::cokernel_by_minors(m));
  }

  TEST_CASE("kernel_basis examples") {
    CHECK(kernel_basis(IntMatrix::identity(3)).cols() == 0);
    IntMatrix k = kernel_basis(IntMatrix{{1, 1}});
    REQUIRE(k.cols() == 1);
    CHECK(((k(0, 0) == 1 && k(1, 0) == -1) || (k(0, 0) == -1 && k(1, 0) == 1)));
    IntMatrix k2 = kernel_basis(IntMatrix{{2, 4}});
    REQUIRE(k2.cols() == 1);
    CHECK(((k2(0, 0) == 2 && k2(1, 0) == -1) || (k2(0, 0) == -2 && k2(1, 0) == 1)));
  }

  TEST_CASE("kernel_basis is annihilated and saturated") {
    std::mt19937 rng(oracle::seed_from("kernel-random"));
    for (int trial = 0; trial < 40; ++trial) {
      IntMatrix m = oracle::random_matrix(rng, 1 + rng() % 3, 2 + rng() % 4, 5);
      IntMatrix k = kernel_basis(m);
      CHECK((m * k).is_zero());
      CHECK(k.cols() == m.cols() - rank(m));
      if (k.cols() > 0) {
        CHECK(is_saturated(k));
        CHECK(saturate(k) == k);
      }
    }
  }

  TEST_CASE("cokernel_structure examples") {
    CHECK(cokernel_structure(IntMatrix::identity(3)).is_trivial());
    CHECK(cokernel_structure(IntMatrix{{2}}) == AbelianGroupStructure::from_cyclic_orders({2}));
    auto s = cokernel_structure(IntMatrix{{2, 0}, {0, 0}});
    CHECK(s.invariant_factors == std::vector<Integer>{2});
    CHECK(s.free_rank == 1);
    CHECK(s.to_string() == "Z/2 + Z");
  }

  TEST_CASE("cokernel_structure is invariant under unimodular changes") {
    std::mt19937 rng(oracle::seed_from("coker-invariance"));
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
      IntMatrix m = oracle::random_matrix(rng, rows, cols, 5);
      IntMatrix changed = oracle::random_unimodular(rng, rows) * m * oracle::random_unimodular(rng, cols);
      CHECK(cokernel_structure(changed) == cokernel_structure(m));
    }
  }

  TEST_CASE("solve_integer examples") {
    IntVector b{3, -4, 5};
    CHECK(solve_integer(IntMatrix::identity(3), b) == b);
    CHECK_FALSE(solve_integer(IntMatrix{{2}}, IntVector{1}).has_value());
    auto x = solve_integer(IntMatrix{{2, 3}}, IntVector{1});
    REQUIRE(x.has_value());
    CHECK(2 * (*x)[0] + 3 * (*x)[1] == 1);
    CHECK_THROWS_AS(solve_integer(IntMatrix{{1, 2}}, IntVector{1, 2}), InputError);
  }

  TEST_CASE("solve_integer succeeds iff b vanishes in the cokernel") {
    // b vanishes in coker iff appending it as a column leaves the cokernel unchanged.
    std::mt19937 rng(oracle::seed_from("solve-random"));
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
      IntMatrix m = oracle::random_matrix(rng, rows, cols, 4);
      IntVector b = oracle::random_matrix(rng, rows, 1, 6).column(0);
      auto x = solve_integer(m, b);
      IntMatrix extended = hstack(m, IntMatrix::from_columns(rows, {b}));
      bool vanishes = oracle::cokernel_by_minors(extended) == oracle::cokernel_by_minors(m);
      CHECK(x.has_value() == vanishes);
      if (x) CHECK(m * *x == b);
    }
  }

  TEST_CASE("saturate examples") {
    CHECK(saturate(IntMatrix{{1}, {0}}) == IntMatrix{{1}, {0}});
    IntMatrix s = saturate(IntMatrix{{2}, {0}});
    CHECK(((s(0, 0) == 1 || s(0, 0) == -1) && s(1, 0) == 0));
    // span{(2,2),(0,4)} has rank 2 in Z^2, so its saturation is all of Z^2
    IntMatrix full = saturate(IntMatrix{{2, 0}, {2, 4}});
    CHECK(abs(determinant(full)) == 1);
    CHECK_THROWS_AS(saturate(IntMatrix{{1, 2}, {1, 2}}), InputError);
  }

  TEST_CASE("saturate contains the span with the same rank") {
    std::mt19937 rng(oracle::seed_from("saturate-random"));
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t rows = 2 + rng() % 3;
      IntMatrix b = oracle::random_matrix(rng, rows, 1 + rng() % (rows - 1), 6);
      if (rank(b) != b.cols()) continue;
      IntMatrix s = saturate(b);
      CHECK(s.cols() == b.cols());
      CHECK(is_saturated(s));
      CHECK(solve_integer(s, b).has_value());
      // pure: Z^rows / span(s) is torsion-free
      CHECK(cokernel_structure(s).is_finite() == (s.cols() == rows));
      CHECK(cokernel_structure(s).invariant_factors.empty());
    }
  }

  TEST_CASE("inverses") {
    std::mt19937 rng(oracle::seed_from("inverses"));
    for (int trial = 0; trial < 20; ++trial) {
      IntMatrix u = oracle::random_unimodular(rng, 4);
      CHECK(u * unimodular_inverse(u) == IntMatrix::identity(4));
      IntMatrix basis = saturate(oracle::random_matrix(rng, 4, 2, 5));
      if (basis.cols() != 2) continue;
      CHECK(left_inverse(basis) * basis == IntMatrix::identity(2));
      IntMatrix t = basis.transpose();
      CHECK(t * right_inverse(t) == IntMatrix::identity(2));
    }
  }

  TEST_CASE("row operation log replays its matrix") {
    std::mt19937 rng(oracle::seed_from("row-log"));
    IntMatrix m = oracle::random_matrix(rng, 5, 3, 9);
    SmithReduction red(m);
    IntMatrix u = red.row_transform().materialize();
    CHECK(u * red.row_transform().materialize_inverse() == IntMatrix::identity(5));
    IntVector v = oracle::random_matrix(rng, 5, 1, 9).column(0);
    CHECK(red.apply_row_transform(v) == u * v);
  }

  TEST_CASE("abelian group structure normalization") {
    auto s = AbelianGroupStructure::from_cyclic_orders({6, 4, 1, 0});
    CHECK(s.invariant_factors == std::vector<Integer>{2, 12});
    CHECK(s.free_rank == 1);
    CHECK(AbelianGroupStructure::from_cyclic_orders({2, 3}) == AbelianGroupStructure::from_cyclic_orders({6}));
    CHECK(AbelianGroupStructure::trivial().to_string() == "0");
    CHECK(s.torsion_order() == 24);
  }
}
