#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibcf/mat2.hpp"
#include "support/generators.hpp"

#include <random>

using namespace fibcf;

TEST_CASE("content and reduce") {
  CHECK(content(Mat2Z(6, 10, 4, 8)) == 2);
  CHECK(content(Mat2Z(1, 1, 1, 0)) == 1);
  CHECK(content(Mat2Z(10, 12, 8, 10)) == 2);
  CHECK(reduce(Mat2Z(6, 10, 4, 8)) == Mat2Z(3, 5, 2, 4));
  CHECK(reduce(Mat2Z(10, 12, 8, 10)) == Mat2Z(5, 6, 4, 5));
  Mat2Z prim(3, 5, 2, 4);
  CHECK(reduce(prim) == prim);
  CHECK_THROWS_WITH_AS(content(Mat2Z()), "zero matrix has no content",
                       std::invalid_argument);
  CHECK_THROWS_AS(reduce(Mat2Z()), std::invalid_argument);
}

TEST_CASE("star product") {
  Mat2Z F(1, 1, 1, 0);
  CHECK(star(F, F) == Mat2Z(2, 1, 1, 1));
  CHECK(star(Mat2Z(4, 2, 3, 2), Mat2Z(2, 2, 1, 2)) == Mat2Z(5, 6, 4, 5));
  CHECK_THROWS_WITH_AS(star(Mat2Z(1, 1, 1, 1), F), "not in P", std::invalid_argument);

  bool flagged = false;
  CHECK(star(Mat2Z(2, 2, 2, 0), F, &flagged) == star(Mat2Z(1, 1, 1, 0), F));
  CHECK(flagged);
  flagged = true;
  star(F, F, &flagged);
  CHECK(!flagged);
}

TEST_CASE("inverse in P") {
  Mat2Z A(2, -2, -4, 3);
  CHECK(inverse_in_P(A) == Mat2Z(3, 2, 4, 2));
  Mat2Z p = star(A, inverse_in_P(A));
  CHECK((p == mat2_identity() || p == -mat2_identity()));
  CHECK(inverse_in_P(mat2_identity()) == mat2_identity());
  CHECK(inverse_in_P(Mat2Z(1, 1, 1, 0)) == Mat2Z(0, 1, 1, -1));
  CHECK_THROWS_AS(inverse_in_P(Mat2Z(2, 4, 1, 2)), std::invalid_argument);
}

TEST_CASE("norm, det, symmetry predicates") {
  CHECK(norm(Mat2Z(-5, 3, 2, 1)) == 5);
  CHECK(det(Mat2Z(1, 1, 1, 0)) == -1);
  CHECK(is_symmetric(Mat2Z(0, -2, -2, 2)));
  CHECK(is_skew_symmetric(Mat2Z(0, 1, -1, 0)));
  CHECK(!is_skew_symmetric(Mat2Z(1, 1, -1, 0)));
  CHECK(transpose(Mat2Z(1, 2, 3, 4)) == Mat2Z(1, 3, 2, 4));
}

TEST_CASE("canonical sign picks the first positive entry") {
  CHECK(canonical_sign(Mat2Z(0, -1, -1, 1)) == Mat2Z(0, 1, 1, -1));
  CHECK(canonical_sign(Mat2Z(2, -2, -4, 3)) == Mat2Z(2, -2, -4, 3));
  CHECK(canonical_sign(-mat2_identity()) == mat2_identity());
}

TEST_CASE("cone membership") {
  CHECK(in_S(Mat2Z(4, 3, 3, 2)));
  CHECK(in_S(Mat2Z(1, 1, 1, 0)));
  CHECK(!in_S(Mat2Z(2, 4, 1, 2)));
  CHECK(in_S1(Mat2Z(5, 3, 4, 2)));  // no det constraint in S1
  CHECK(!in_S(Mat2Z(5, 3, 4, 2)));

  ConeParams half{Rational(1, 2)};
  Mat2Z W3(5, 6, 4, 5);
  CHECK(in_Sr(W3, half));
  CHECK(!in_Sr(-W3, half));
  CHECK_THROWS_AS(ConeParams{Rational(2)}, std::invalid_argument);
  CHECK_THROWS_AS(ConeParams{Rational(0)}, std::invalid_argument);
}

TEST_CASE("star is associative on random primitive triples") {
  std::mt19937_64 rng(7151);
  for (int trial = 0; trial < 500; ++trial) {
    Mat2Z a = testing::random_primitive(rng);
    Mat2Z b = testing::random_primitive(rng);
    Mat2Z c = testing::random_primitive(rng);
    CHECK(star(star(a, b), c) == star(a, star(b, c)));
  }
}

TEST_CASE("reduce is idempotent and content divides the det product") {
  std::mt19937_64 rng(7152);
  for (int trial = 0; trial < 500; ++trial) {
    Mat2Z a = testing::random_primitive(rng);
    Mat2Z b = testing::random_primitive(rng);
    CHECK(reduce(reduce(a)) == reduce(a));
    Integer cc = content(a * b);
    Integer dd = det(a) * det(b);
    CHECK(dd % cc == 0);
  }
}

TEST_CASE("S1 is closed under product and transpose") {
  std::mt19937_64 rng(7153);
  for (int trial = 0; trial < 500; ++trial) {
    Mat2Z a = testing::random_in_S1(rng);
    Mat2Z b = testing::random_in_S1(rng);
    REQUIRE(in_S1(a));
    REQUIRE(in_S1(b));
    CHECK(in_S1(a * b));
    CHECK(in_S1(transpose(a)));
  }
}

TEST_CASE("S_r norm bound holds exactly on random pairs") {
  std::mt19937_64 rng(7154);
  ConeParams half{Rational(1, 2)};
  for (int trial = 0; trial < 500; ++trial) {
    Mat2Z a = testing::random_in_S_half(rng);
    Mat2Z b = testing::random_in_S_half(rng);
    CHECK(in_Sr(a * b, half));
    // ||AA'|| > r ||A|| ||A'|| compared as exact rationals
    CHECK(Rational(norm(a * b)) > Rational(1, 2) * Rational(norm(a) * norm(b)));
  }
}
