#include <doctest.h>

#include "flasque/errors.hpp"
#include "flasque/problem.hpp"

using namespace flasque;

namespace {

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

const char* kSignC2 = R"({
  "format": "flasque-lab/1",
  "group": {"degree": 2, "generators": [[1, 0]]},
  "lattice": {"rank": 1, "action": [[[-1]]]}
})";

}  // namespace

TEST_SUITE("problem") {
  TEST_CASE("catalog entries build and round-trip") {
    auto names = catalog_names();
    CHECK(names.size() >= 20);
    for (const auto& name : names) {
      CAPTURE(name);
      ProblemSpec spec = catalog_problem(name);
      CHECK(spec.name == name);
      Problem p = build_problem(spec);
      std::string text = serialize_problem(spec);
      ProblemSpec again = parse_problem(text);
      CHECK(again == spec);
      CHECK(serialize_problem(again) == text);
      Problem q = build_problem(again);
      CHECK(q.lattice == p.lattice);
      CHECK(same_group(q.group, p.group));
      if (p.presentation) {
        CHECK(p.presentation->source().is_certified_permutation());
        CHECK(cokernel_structure(p.presentation->matrix()).is_trivial());
      }
    }
  }

  TEST_CASE("catalog contents") {
    Problem j = build_problem(catalog_problem("norm-one-biquadratic"));
    CHECK(j.group->order() == 4);
    CHECK(j.lattice.rank() == 3);
    CHECK(j.lattice == norm_one_lattice(j.group));
    Problem s = build_problem(catalog_problem("sign-C2"));
    CHECK(s.lattice.action(s.group->generators()[0]) == IntMatrix{{-1}});
    Problem r = build_problem(catalog_problem("regular-C3"));
    CHECK(r.lattice == regular_lattice(r.group));
    Problem i = build_problem(catalog_problem("augmentation-biquadratic"));
    CHECK(i.lattice == augmentation_lattice(i.group));
    CHECK(i.presentation->source().rank() == 8);
    Problem e = build_problem(catalog_problem("sign-extension-C2"));
    REQUIRE(e.extension.has_value());
    CHECK(e.extension->middle() == regular_lattice(e.group));
    std::string msg = message_of([] { catalog_problem("no-such-entry"); });
    CHECK(msg.find("norm-one-biquadratic") != std::string::npos);
    CHECK_THROWS_AS(catalog_problem("no-such-entry"), InputError);
  }

  TEST_CASE("parsing a hand-written file") {
    ProblemSpec spec = parse_problem(kSignC2);
    Problem p = build_problem(spec);
    CHECK(p.group->order() == 2);
    CHECK(p.lattice == sign_lattice(p.group, {p.group->generators()[0]}));
    CHECK_FALSE(spec.presentation.has_value());
  }

  TEST_CASE("multiplication table groups") {
    const char* text = R"({
      "group": {"table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]], "identity": 0, "generators": [1]},
      "lattice": {"rank": 2, "action": [[[0, -1], [1, -1]]]}
    })";
    ProblemSpec spec = parse_problem(text);
    CHECK(spec.group.is_table());
    Problem p = build_problem(spec);
    CHECK(p.group->order() == 3);
    CHECK(parse_problem(serialize_problem(spec)) == spec);
  }

  TEST_CASE("large integers are carried as strings") {
    const char* text = R"({
      "group": {"degree": 2, "generators": [[1, 0]]},
      "lattice": {"rank": 2, "action": [[[1, "123456789012345678901234567890"], [0, -1]]]}
    })";
    ProblemSpec spec = parse_problem(text);
    CHECK(spec.lattice.action[0](0, 1) == Integer("123456789012345678901234567890"));
    std::string out = serialize_problem(spec);
    CHECK(out.find("\"123456789012345678901234567890\"") != std::string::npos);
    CHECK(parse_problem(out) == spec);
    build_problem(spec);
  }

  TEST_CASE("errors carry a location") {
    std::string syntax = message_of([] { parse_problem("{\"group\": [1, 2"); });
    CHECK(syntax.find("line") != std::string::npos);
    CHECK_THROWS_AS(parse_problem("{\"group\": [1, 2"), InputError);

    std::string missing = message_of([] { parse_problem(R"({"group": {"degree": 2, "generators": [[1, 0]]}})"); });
    CHECK(missing.find("lattice") != std::string::npos);

    const char* bad_row = R"({"group": {"degree": 2, "generators": [[1, 0]]},
                              "lattice": {"rank": 2, "action": [[[1, 0], [0]]]}})";
    std::string shape = message_of([&] { parse_problem(bad_row); });
    CHECK(shape.find("/lattice/action/0/1") != std::string::npos);

    const char* bad_int = R"({"group": {"degree": 2, "generators": [[1, 0]]},
                              "lattice": {"rank": 1, "action": [[["x1"]]]}})";
    CHECK(message_of([&] { parse_problem(bad_int); }).find("/lattice/action/0/0/0") != std::string::npos);

    const char* both = R"({"group": {"degree": 2, "table": [[0]], "generators": []}, "lattice": {"rank": 0, "action": []}})";
    CHECK_THROWS_AS(parse_problem(both), InputError);
    CHECK_THROWS_AS(parse_problem(R"({"format": "other", "group": {}, "lattice": {}})"), InputError);
  }

  TEST_CASE("semantic validation happens when building") {
    // C3 generator acting by -1 does not extend to a homomorphism
    const char* not_hom = R"({"group": {"degree": 3, "generators": [[1, 2, 0]]},
                              "lattice": {"rank": 1, "action": [[[-1]]]}})";
    CHECK_THROWS_AS(build_problem(parse_problem(not_hom)), PreconditionError);
    const char* singular = R"({"group": {"degree": 2, "generators": [[1, 0]]},
                               "lattice": {"rank": 1, "action": [[[2]]]}})";
    CHECK_THROWS_AS(build_problem(parse_problem(singular)), PreconditionError);
    // the map Z[C2] -> sign given by (1, 1) is not equivariant
    const char* bad_map = R"({"group": {"degree": 2, "generators": [[1, 0]]},
                              "lattice": {"rank": 1, "action": [[[-1]]]},
                              "presentation": {"blocks": [[]], "map": [[1, 1]]}})";
    CHECK_THROWS_AS(build_problem(parse_problem(bad_map)), PreconditionError);
    const char* wrong_width = R"({"group": {"degree": 2, "generators": [[1, 0]]},
                                  "lattice": {"rank": 1, "action": [[[-1]]]},
                                  "presentation": {"blocks": [[]], "map": [[1]]}})";
    CHECK_THROWS_AS(build_problem(parse_problem(wrong_width)), InputError);
    const char* bad_word = R"({"group": {"degree": 2, "generators": [[1, 0]]},
                               "lattice": {"rank": 1, "action": [[[-1]]]},
                               "presentation": {"blocks": [[[3]]], "map": [[1]]}})";
    CHECK(message_of([&] { build_problem(parse_problem(bad_word)); }).find("/presentation/blocks/0/0") != std::string::npos);
  }
}
