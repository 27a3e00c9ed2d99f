#include <doctest.h>

#include <cmath>

#include "treewalk/martin.hpp"

#include "test_util.hpp"

using namespace treewalk;
using treewalk_test::code_of;

TEST_CASE("kernel ratios at pinned small cases") {
    for (std::int64_t n : {0, 2, 4, 10}) CHECK(kernel_ratio(graded_root(2), root_vertex(2), n) == 1);
    for (std::int64_t n : {3, 5, 11})
        CHECK(kernel_ratio(graded_root(2), make_vertex(2, {0}), n) == 1);
    CHECK(kernel_ratio(GradedVertex(1, make_vertex(2, {0})), root_vertex(2), 4) == BigRat(1, 3));
    CHECK(kernel_ratio(GradedVertex(2, root_vertex(2)), root_vertex(2), 4) == BigRat(1, 5));
}

TEST_CASE("kernel ratio domain errors") {
    const GradedVertex u(1, make_vertex(2, {0}));
    CHECK(code_of([&] { kernel_ratio(u, root_vertex(2), 5); }) == ErrorCode::ParityMismatch);
    CHECK(code_of([&] { kernel_ratio(u, root_vertex(2), 0); }) == ErrorCode::LevelOrder);
    CHECK(code_of([&] { kernel_ratio(GradedVertex(1, root_vertex(2)), root_vertex(2), 3); }) ==
          ErrorCode::ParityMismatch);
    CHECK(code_of([&] { kernel_ratio(GradedVertex(2, root_vertex(2)), make_vertex(2, {0, 1, 0, 1}), 2); }) ==
          ErrorCode::DivisionByZeroCount);
    CHECK(code_of([&] { kernel_ratio(graded_root(2), root_vertex(3), 2); }) ==
          ErrorCode::MismatchedTreeParams);
}

TEST_CASE("kernel sequences walk admissible levels") {
    const GradedVertex u(1, make_vertex(2, {0}));
    const auto seq = kernel_sequence(u, root_vertex(2), 12);
    REQUIRE(seq.values.size() == 6);
    CHECK(seq.values.front().first == 2);
    CHECK(seq.values[1].first == 4);
    CHECK(seq.values[1].second == BigRat(1, 3));
    for (const auto& [n, value] : seq.values) {
        CHECK(n % 2 == 0);
        CHECK(value > 0);
        CHECK(value <= 1);
    }
}

TEST_CASE("kernel limits settle numerically") {
    const auto trivial = sigma_kernel_estimate(graded_root(2), root_vertex(2), 20);
    CHECK(trivial.value == 1.0);
    CHECK(trivial.last_difference == 0.0);
    CHECK(trivial.tail_decreasing);

    const auto est = sigma_kernel_estimate(GradedVertex(1, make_vertex(2, {0})), root_vertex(2), 400);
    CHECK(est.tail_decreasing);
    CHECK(est.last_difference < 1e-3);
    CHECK(est.value > 0.0);
    CHECK(est.value < 1.0);

    CHECK(code_of([] { sigma_kernel_estimate(graded_root(2), root_vertex(2), 4); }) ==
          ErrorCode::OutOfRange);
}

TEST_CASE("kernels depend only on level and distance") {
    const auto a = kernel_sequence(GradedVertex(1, make_vertex(2, {0})), root_vertex(2), 40);
    const auto b = kernel_sequence(GradedVertex(1, make_vertex(2, {2})), root_vertex(2), 40);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i)
        CHECK(a.values[i].second == b.values[i].second);
}

TEST_CASE("two-step growth of walk counts") {
    CHECK(growth_ratio(2, 0, 2) == BigRat(15, 3));
    CHECK(std::abs(to_double(growth_ratio(1, 0, 200)) - 4.0) < 0.08);
    CHECK(std::abs(to_double(growth_ratio(2, 0, 400)) - 8.0) < 0.08);
    BigRat prev = growth_ratio(2, 0, 4);
    for (std::int64_t n = 6; n <= 400; n += 2) {
        const BigRat cur = growth_ratio(2, 0, n);
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK(code_of([] { growth_ratio(2, 1, 4); }) == ErrorCode::DivisionByZeroCount);
}
