#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tempered/mesh.hpp"

using namespace tempered;

TEST_CASE("uniform mesh nodes") {
    GradedMesh m = build_graded_mesh(1.0, 4, 1.0);
    double expect[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int n = 0; n <= 4; ++n) CHECK(m.node(n) == doctest::Approx(expect[n]).epsilon(1e-15));
    CHECK(m.uniform());
}

TEST_CASE("quadratic grading") {
    GradedMesh m = build_graded_mesh(1.0, 4, 2.0);
    double expect[] = {0.0, 1.0 / 16, 0.25, 9.0 / 16, 1.0};
    for (int n = 0; n <= 4; ++n) CHECK(m.node(n) == doctest::Approx(expect[n]).epsilon(1e-15));
}

TEST_CASE("strong grading first step") {
    GradedMesh m = build_graded_mesh(1.0, 320, 3.0);
    CHECK(m.node(1) == doctest::Approx(std::pow(1.0 / 320, 3)).epsilon(1e-13));
    CHECK(m.node(320) == 1.0);
    for (int n = 1; n <= 320; ++n) CHECK(m.step(n) > 0.0);
    CHECK(m.min_step() == doctest::Approx(m.step(1)));
}

TEST_CASE("mesh domain errors") {
    CHECK_THROWS_AS(build_graded_mesh(0.0, 4, 1.0), std::domain_error);
    CHECK_THROWS_AS(build_graded_mesh(1.0, 0, 1.0), std::domain_error);
    CHECK_THROWS_AS(build_graded_mesh(1.0, 4, 0.5), std::domain_error);
}

TEST_CASE("optimal grading") {
    CHECK(optimal_grading(0.8, false) == doctest::Approx(1.5));
    CHECK(optimal_grading(0.8, true) == doctest::Approx(3.0));
    CHECK(optimal_grading(0.4, true) == doctest::Approx(8.0));
    CHECK_THROWS_AS(optimal_grading(1.2, true), std::domain_error);
    CHECK_THROWS_AS(optimal_grading(0.0, true), std::domain_error);
}

TEST_CASE("params invariants") {
    CHECK_THROWS_AS(TemperedParams(1.2, 0.0), std::domain_error);
    CHECK_THROWS_AS(TemperedParams(0.5, -0.1), std::domain_error);
    CHECK_NOTHROW(TemperedParams(1.0, 0.0));  // classical limit admitted
}
