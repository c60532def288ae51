#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invrep/core.hpp"

using namespace invrep;

TEST_CASE("FitnessVector sorts descending and keeps identity maps") {
  FitnessVector fv({"a", "b", "c", "d"}, {0.3, 0.9, 0.1, 0.5});
  REQUIRE(fv.size() == 4);
  CHECK(fv.lambda(0) == 0.9);
  CHECK(fv.lambda(3) == 0.1);
  CHECK(fv.id(0) == "b");
  CHECK(fv.id(1) == "d");
  CHECK(fv.id(2) == "a");
  CHECK(fv.id(3) == "c");
  for (std::size_t orig = 0; orig < 4; ++orig)
    CHECK(fv.original_of_rank(fv.rank_of_original(orig)) == orig);
}

TEST_CASE("ties keep input order (stable sort)") {
  FitnessVector fv({"x", "y", "z"}, {0.5, 0.5, 0.5});
  CHECK(fv.id(0) == "x");
  CHECK(fv.id(1) == "y");
  CHECK(fv.id(2) == "z");
}

TEST_CASE("default ids are 1..N in input order") {
  FitnessVector fv(std::vector<double>{0.2, 0.8});
  CHECK(fv.id(0) == "2");
  CHECK(fv.id(1) == "1");
}

TEST_CASE("duplicate ids are rejected") {
  CHECK_THROWS_AS(FitnessVector({"a", "a"}, {1.0, 2.0}), ValidationError);
}

TEST_CASE("with_added re-sorts, restricted_to_ranks preserves order") {
  FitnessVector fv({"a", "b"}, {0.4, 0.8});
  auto grown = fv.with_added("c", 0.6);
  REQUIRE(grown.size() == 3);
  CHECK(grown.id(0) == "b");
  CHECK(grown.id(1) == "c");
  CHECK(grown.id(2) == "a");

  auto top2 = grown.restricted_to_ranks({0, 1});
  REQUIRE(top2.size() == 2);
  CHECK(top2.id(0) == "b");
  CHECK(top2.lambda(1) == 0.6);
}

TEST_CASE("sign predicates") {
  CHECK(FitnessVector(std::vector<double>{0.1, 0.2}).all_positive());
  CHECK_FALSE(FitnessVector(std::vector<double>{0.1, -0.2}).all_positive());
  CHECK(FitnessVector(std::vector<double>{-0.1, -0.2}).all_negative());
  CHECK_FALSE(FitnessVector(std::vector<double>{-0.1, 0.2}).all_negative());
}

TEST_CASE("invader-driven matrix has constant rows off the zero diagonal") {
  FitnessVector fv(std::vector<double>{0.7, 0.3, 0.5});
  auto m = build_invader_driven(fv);
  REQUIRE(m.dim() == 3);
  CHECK(m.structure_tag == MatrixStructure::invader_driven);
  for (Eigen::Index i = 0; i < 3; ++i) {
    CHECK(m.values(i, i) == 0.0);
    for (Eigen::Index j = 0; j < 3; ++j)
      if (i != j) CHECK(m.values(i, j) == fv.lambda(static_cast<std::size_t>(i)));
  }
}

TEST_CASE("mean fitness hand value") {
  FitnessVector fv(std::vector<double>{0.8, 0.4});
  Eigen::VectorXd z(2);
  z << 0.5, 0.5;
  CHECK(mean_fitness(SimplexState{z, 0.0}, fv) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("validate_simplex clamps tiny negatives and renormalizes") {
  Eigen::VectorXd raw(3);
  raw << 0.6, 0.4, -1e-10;
  auto st = validate_simplex(raw);
  CHECK(st.z[2] == 0.0);
  CHECK(st.z.sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("validate_simplex rejects bad inputs") {
  Eigen::VectorXd neg(2);
  neg << 1.1, -0.1;
  CHECK_THROWS_AS(validate_simplex(neg), ValidationError);

  Eigen::VectorXd off(2);
  off << 0.6, 0.6;
  CHECK_THROWS_AS(validate_simplex(off), ValidationError);
}
