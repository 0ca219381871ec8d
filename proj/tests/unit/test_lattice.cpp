#include <doctest.h>

#include "flasque/errors.hpp"
#include "flasque/lattice.hpp"
#include "support.hpp"

using namespace flasque;

namespace {

Subgroup order_two_subgroup(const GroupPtr& g) {
  for (const auto& h : all_subgroups(g))
    if (h.order() == 2) return h;
  throw std::logic_error("no subgroup of order 2");
}

Integer trace(const IntMatrix& m) {
  Integer t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("trivial lattices") {
    GLattice z = trivial_lattice(catalog_group("C2"), 1);
    CHECK(z.rank() == 1);
    CHECK(z.action(1) == IntMatrix::identity(1));
    CHECK(trivial_lattice(catalog_group("S3"), 0).rank() == 0);
    GLattice z2 = trivial_lattice(catalog_group("V4"), 2);
    for (const auto& a : z2.actions()) CHECK(a == IntMatrix::identity(2));
    CHECK(z2.is_certified_permutation());
  }

  TEST_CASE("construction rejects non-homomorphisms") {
    GroupPtr c2 = catalog_group("C2");
    CHECK_THROWS_AS(GLattice(c2, 1, {IntMatrix{{1}}, IntMatrix{{2}}}), PreconditionError);
    CHECK_THROWS_AS(GLattice(c2, 1, {IntMatrix{{-1}}, IntMatrix{{-1}}}), PreconditionError);
    GroupPtr c3 = catalog_group("C3");
    // swap has order 2, not compatible with a generator of order 3
    CHECK_THROWS_AS(GLattice::from_generator_action(c3, 2, {IntMatrix{{0, 1}, {1, 0}}}), PreconditionError);
  }

  TEST_CASE("permutation lattices") {
    GroupPtr s3 = catalog_group("S3");
    GLattice whole = permutation_lattice(s3, whole_group(s3));
    CHECK(whole.rank() == 1);
    CHECK(whole == trivial_lattice(s3, 1));
    GroupPtr c2 = catalog_group("C2");
    GLattice reg = regular_lattice(c2);
    CHECK(reg.action(1) == IntMatrix{{0, 1}, {1, 0}});
    GLattice cosets = permutation_lattice(s3, order_two_subgroup(s3));
    CHECK(cosets.rank() == 3);
    CHECK(verify_permutation_certificate(cosets));
    for (const auto& a : cosets.actions()) {
      // permutation matrix: one 1 per row
      for (std::size_t i = 0; i < 3; ++i) {
        Integer row_sum = 0;
        for (std::size_t j = 0; j < 3; ++j) {
          CHECK((a(i, j) == 0 || a(i, j) == 1));
          row_sum += a(i, j);
        }
        CHECK(row_sum == 1);
      }
    }
  }

  TEST_CASE("dual") {
    GroupPtr s3 = catalog_group("S3");
    CHECK(dual(trivial_lattice(s3, 2)) == trivial_lattice(s3, 2));
    GLattice p = permutation_lattice(s3, order_two_subgroup(s3));
    CHECK(dual(p) == p);
    GLattice sign = sign_lattice(catalog_group("C2"), {1});
    CHECK(dual(sign) == sign);
    for (const auto& name : {"C3", "V4", "S3", "D4", "Q8"}) {
      GLattice j = norm_one_lattice(catalog_group(name));
      CHECK(dual(dual(j)) == j);
      for (Element g = 0; g < j.group()->order(); ++g)
        CHECK(dual(j).action(g) == j.action(j.group()->inverse(g)).transpose());
    }
  }

  TEST_CASE("direct sums") {
    GroupPtr c2 = catalog_group("C2");
    GLattice sign = sign_lattice(c2, {1});
    CHECK(direct_sum(sign, trivial_lattice(c2, 0)) == sign);
    CHECK(direct_sum(trivial_lattice(c2, 1), trivial_lattice(c2, 1)) == trivial_lattice(c2, 2));
    GLattice s = direct_sum(regular_lattice(c2), sign);
    CHECK(s.rank() == 3);
    CHECK(s.action(1) == IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}});
    CHECK_FALSE(s.is_certified_permutation());
    GLattice both = direct_sum(regular_lattice(c2), trivial_lattice(c2, 1));
    CHECK(both.is_certified_permutation());
    CHECK(verify_permutation_certificate(both));
    CHECK_THROWS_AS(direct_sum(sign, trivial_lattice(catalog_group("C3"), 1)), InputError);
  }

  TEST_CASE("hom lattices") {
    GroupPtr s3 = catalog_group("S3");
    GLattice j = norm_one_lattice(s3);
    CHECK(hom_lattice(trivial_lattice(s3, 1), j) == j);
    CHECK(hom_lattice(j, trivial_lattice(s3, 1)) == dual(j));
    GroupPtr c2 = catalog_group("C2");
    GLattice sign = sign_lattice(c2, {1});
    CHECK(hom_lattice(sign, sign) == trivial_lattice(c2, 1));
  }

  TEST_CASE("restriction") {
    GroupPtr c4 = catalog_group("C4");
    GLattice sign = sign_lattice(c4, {c4->generators()[0]});
    Subgroup c2 = order_two_subgroup(c4);
    GLattice r = restrict(sign, c2);
    CHECK(r.group()->order() == 2);
    CHECK(r == trivial_lattice(r.group(), 1));
    GLattice to_trivial = restrict(norm_one_lattice(c4), trivial_subgroup(c4));
    CHECK(to_trivial.action(0) == IntMatrix::identity(3));
  }

  TEST_CASE("restricted permutation lattices stay certified") {
    for (const auto& name : {"V4", "S3", "D4", "Q8", "A4"}) {
      GroupPtr g = catalog_group(name);
      for (const auto& h : all_subgroups(g)) {
        GLattice p = permutation_lattice(g, h);
        for (const auto& k : all_subgroups(g)) {
          GLattice r = restrict(p, k);
          CHECK(r.is_certified_permutation());
          CHECK(verify_permutation_certificate(r));
        }
      }
    }
  }

  TEST_CASE("fixed sublattices") {
    GroupPtr c2 = catalog_group("C2");
    CHECK(fixed_sublattice(trivial_lattice(c2, 3), whole_group(c2)).cols() == 3);
    CHECK(fixed_sublattice(sign_lattice(c2, {1}), whole_group(c2)).cols() == 0);
    IntMatrix n = fixed_sublattice(regular_lattice(c2), whole_group(c2));
    REQUIRE(n.cols() == 1);
    CHECK(abs(n(0, 0)) == 1);
    CHECK(n(0, 0) == n(1, 0));
  }

  TEST_CASE("quotients") {
    GroupPtr c2 = catalog_group("C2");
    GLattice reg = regular_lattice(c2);
    QuotientLattice same = quotient_by_pure_sublattice(reg, IntMatrix(2, 0));
    CHECK(same.lattice.rank() == 2);
    CHECK(same.lattice == reg);
    QuotientLattice q = quotient_by_pure_sublattice(reg, IntMatrix{{1}, {1}});
    CHECK(q.lattice == sign_lattice(c2, {1}));
    CHECK(q.projection.matrix() * q.section == IntMatrix::identity(1));
    CHECK_THROWS_AS(quotient_by_pure_sublattice(reg, IntMatrix{{2}, {2}}), PreconditionError);
    CHECK_THROWS_AS(quotient_by_pure_sublattice(reg, IntMatrix{{1}, {0}}), PreconditionError);
  }

  TEST_CASE("norm-one lattices") {
    GroupPtr c2 = catalog_group("C2");
    CHECK(norm_one_lattice(c2) == sign_lattice(c2, {1}));
    GroupPtr c3 = catalog_group("C3");
    GLattice j3 = norm_one_lattice(c3);
    CHECK(j3.rank() == 2);
    IntMatrix s = j3.action(c3->generators()[0]);
    CHECK(trace(s) == -1);
    CHECK(s * s * s == IntMatrix::identity(2));
    CHECK_FALSE(s == IntMatrix::identity(2));
    CHECK(norm_one_lattice(catalog_group("V4")).rank() == 3);
    // agrees with the generic quotient of Z[G] by the norm vector, up to basis change: same traces
    for (const auto& name : {"C4", "V4", "S3", "Q8"}) {
      GroupPtr g = catalog_group(name);
      IntMatrix nvec(g->order(), 1);
      for (std::size_t i = 0; i < g->order(); ++i) nvec(i, 0) = 1;
      GLattice generic = quotient_by_pure_sublattice(regular_lattice(g), nvec).lattice;
      GLattice j = norm_one_lattice(g);
      for (Element x = 0; x < g->order(); ++x) CHECK(trace(generic.action(x)) == trace(j.action(x)));
    }
  }

  TEST_CASE("augmentation lattice is dual to the norm-one lattice") {
    for (const auto& name : {"C3", "V4", "S3"}) {
      GroupPtr g = catalog_group(name);
      GLattice i = augmentation_lattice(g);
      GLattice jd = dual(norm_one_lattice(g));
      CHECK(i.rank() == g->order() - 1);
      for (Element x = 0; x < g->order(); ++x) CHECK(trace(i.action(x)) == trace(jd.action(x)));
    }
  }

  TEST_CASE("lattice maps are checked") {
    GroupPtr c2 = catalog_group("C2");
    GLattice reg = regular_lattice(c2);
    GLattice z = trivial_lattice(c2, 1);
    CHECK_NOTHROW(LatticeMap(reg, z, IntMatrix{{1, 1}}));
    CHECK_THROWS_AS(LatticeMap(reg, z, IntMatrix{{1, 0}}), PreconditionError);
  }
}
