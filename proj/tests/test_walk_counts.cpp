#include <doctest.h>

#include "treewalk/walk_counts.hpp"

#include "test_util.hpp"

using namespace treewalk;
using treewalk_test::code_of;

TEST_CASE("ballot numbers from the binomial difference") {
    for (std::int64_t n : {0, 1, 2, 5, 12})
        CHECK(ballot_number(n, n) == 1);
    CHECK(ballot_number(2, 0) == 1);
    CHECK(ballot_number(4, 2) == 3);
    CHECK(ballot_number(4, 0) == 2);
    CHECK(code_of([] { ballot_number(3, 0); }) == ErrorCode::ParityMismatch);
    CHECK(code_of([] { ballot_number(2, 4); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { ballot_number(-1, 1); }) == ErrorCode::OutOfRange);
}

TEST_CASE("ballot numbers match the reflection closed form") {
    for (std::int64_t n = 0; n <= 24; ++n)
        for (std::int64_t t = n % 2; t <= n; t += 2)
            CHECK(ballot_number(n, t) * (n + 1) == (t + 1) * binomial(n + 1, (n - t) / 2));
}

TEST_CASE("walk counts at pinned small cases") {
    CHECK(walk_count_formula(2, 2, 0) == 3);
    CHECK(walk_count_formula(2, 4, 0) == 15);
    CHECK(walk_count_formula(2, 3, 1) == 5);
    CHECK(walk_count_formula(1, 4, 0) == 6);
    CHECK(walk_count_formula(3, 1, 1) == 1);
    CHECK(walk_count_formula(2, 0, 0) == 1);
}

TEST_CASE("impossible configurations count zero walks") {
    CHECK(walk_count_formula(2, 3, 0) == 0);
    CHECK(walk_count_formula(2, 2, 5) == 0);
    CHECK(walk_count_dp(2, 3, 0) == 0);
    CHECK(walk_count_dp(2, 2, 5) == 0);
}

TEST_CASE("closed formula agrees with the transition recursion") {
    for (int q : {1, 2, 3, 5}) {
        const auto table = walk_count_dp_table(q, 30);
        for (std::int64_t n = 0; n <= 30; ++n)
            for (std::int64_t k = n % 2; k <= n; k += 2) {
                CHECK(walk_count_formula(q, n, k) ==
                      table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
                CHECK(walk_count_dp(q, n, k) ==
                      table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
            }
    }
}

TEST_CASE("two-term recurrence in the walk length") {
    for (int q : {1, 2, 3, 5})
        for (std::int64_t n = 0; n <= 30; ++n)
            for (std::int64_t k = n % 2; k <= n; k += 2)
                CHECK(walk_count_formula(q, n, k) ==
                      walk_count_formula(q, n, k + 2) +
                          pow_int(BigInt(q), (n - k) / 2) * ballot_number(n, k));
}

TEST_CASE("q=1 walks collapse to binomial coefficients") {
    for (std::int64_t n = 0; n <= 40; ++n)
        for (std::int64_t k = n % 2; k <= n; k += 2)
            CHECK(walk_count_formula(1, n, k) == binomial(n, (n - k) / 2));
}

TEST_CASE("graded path counts") {
    CHECK(dim_graded(graded_root(2), GradedVertex(1, make_vertex(2, {0}))) == 1);
    CHECK(dim_graded(graded_root(2), GradedVertex(2, root_vertex(2))) == 3);
    CHECK(dim_graded(GradedVertex(1, make_vertex(2, {0})), GradedVertex(3, make_vertex(2, {0}))) == 3);
    CHECK(code_of([] {
              dim_graded(GradedVertex(2, root_vertex(2)), GradedVertex(1, make_vertex(2, {0})));
          }) == ErrorCode::LevelOrder);
}

TEST_CASE("graded reachability matches positive path counts") {
    CHECK(GradedVertex(2, root_vertex(2)).is_valid());
    CHECK(!GradedVertex(1, root_vertex(2)).is_valid());
    CHECK(!GradedVertex(1, make_vertex(2, {0, 1})).is_valid());
    for (std::int64_t lvl = 0; lvl <= 5; ++lvl)
        for (const Word& w : {Word{}, Word{0}, Word{0, 1}, Word{2, 0, 2}}) {
            const GradedVertex y(lvl, make_vertex(2, w));
            CHECK((dim_from_root(y) > 0) == y.is_valid());
        }
}

TEST_CASE("cotransition weights are proportional to root path counts") {
    const GradedVertex w1(1, make_vertex(2, {1}));
    CHECK(cotransition(w1, graded_root(2)) == 1);

    const GradedVertex w2(2, root_vertex(2));
    for (const GradedVertex& v : graded_predecessors(w2))
        CHECK(cotransition(w2, v) == BigRat(1, 3));

    const GradedVertex w3(3, make_vertex(2, {0}));
    const auto preds = graded_predecessors(w3);
    REQUIRE(preds.size() == 3);
    BigRat total = 0;
    for (const GradedVertex& v : preds) {
        const BigRat p = cotransition(w3, v);
        total += p;
        if (v.site.is_root()) CHECK(p == BigRat(3, 5));
        else CHECK(p == BigRat(1, 5));
    }
    CHECK(total == 1);

    CHECK(code_of([&] { cotransition(w3, graded_root(2)); }) == ErrorCode::NotAdjacent);
    CHECK(code_of([&] { cotransition(w3, GradedVertex(2, make_vertex(2, {1}))); }) ==
          ErrorCode::NotAdjacent);
}
