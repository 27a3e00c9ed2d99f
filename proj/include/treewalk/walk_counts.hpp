#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treewalk/errors.hpp"
#include "treewalk/numeric.hpp"
#include "treewalk/tree.hpp"

namespace treewalk {

// Vertex of the dynamic graph over the tree: a tree site tagged with the
// level (walk length) at which it is reached. Reachable iff depth <= level
// and level - depth is even; dim_graded returns 0 otherwise, so validity
// is a query, not a construction constraint.
struct GradedVertex {
    std::int64_t level = 0;
    Vertex site;

    GradedVertex(std::int64_t lvl, Vertex s) : level(lvl), site(std::move(s)) {}

    bool is_valid() const {
        const auto d = static_cast<std::int64_t>(site.depth());
        return level >= d && (level - d) % 2 == 0;
    }

    friend bool operator==(const GradedVertex& a, const GradedVertex& b) {
        return a.level == b.level && a.site == b.site;
    }
};

inline GradedVertex graded_root(int q) { return GradedVertex(0, root_vertex(q)); }

// Number of monotone lattice walks of length n ending at height t that never
// dip below zero: C(n,(n-t)/2) - C(n,(n-t)/2-1), a ballot number.
inline BigInt ballot_number(std::int64_t n, std::int64_t t) {
    if (n < 0 || t < 0 || t > n)
        fail(ErrorCode::OutOfRange, "ballot_number needs 0 <= t <= n, got n=" + std::to_string(n) +
                                        " t=" + std::to_string(t));
    if ((n - t) % 2 != 0)
        fail(ErrorCode::ParityMismatch, "ballot_number needs n - t even, got n=" + std::to_string(n) +
                                            " t=" + std::to_string(t));
    const std::int64_t j = (n - t) / 2;
    return binomial(n, j) - binomial(n, j - 1);
}

// Number of walks of length n between two vertices at distance k in the
// (q+1)-homogeneous tree: sum over the height profile of the walk,
//   sum_{t in {k,k+2,...,n}} q^{(n-t)/2} * ballot(n,t).
// Impossible (n,k) configurations (parity mismatch, k > n) count 0 walks.
inline BigInt walk_count_formula(int q, std::int64_t n, std::int64_t k) {
    check_branching(q);
    if (n < 0 || k < 0 || k > n || (n - k) % 2 != 0) return 0;
    const std::int64_t jmax = (n - k) / 2;  // t = n - 2j runs down to k
    BigInt total = 0;
    BigInt c = 1;       // C(n, j)
    BigInt c_prev = 0;  // C(n, j-1)
    BigInt qpow = 1;    // q^j
    for (std::int64_t j = 0; j <= jmax; ++j) {
        total += qpow * (c - c_prev);
        if (j == jmax) break;
        c_prev = c;
        c *= n - j;
        c /= j + 1;
        qpow *= q;
    }
    return total;
}

// Independent oracle for the same counts: distance-from-target recursion
//   g(0,d) = [d=0],  g(m,0) = (q+1) g(m-1,1),  g(m,d) = g(m-1,d-1) + q g(m-1,d+1).
inline BigInt walk_count_dp(int q, std::int64_t n, std::int64_t k) {
    check_branching(q);
    if (n < 0 || k < 0 || k > n || (n - k) % 2 != 0) return 0;
    std::vector<BigInt> prev(static_cast<std::size_t>(n) + 2), cur(static_cast<std::size_t>(n) + 2);
    prev[0] = 1;
    for (std::int64_t m = 1; m <= n; ++m) {
        cur[0] = (q + 1) * prev[1];
        for (std::int64_t d = 1; d <= m; ++d)
            cur[static_cast<std::size_t>(d)] =
                prev[static_cast<std::size_t>(d - 1)] + q * prev[static_cast<std::size_t>(d + 1)];
        for (std::int64_t d = m + 1; d <= n + 1; ++d) cur[static_cast<std::size_t>(d)] = 0;
        std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(k)];
}

// Full oracle table g[m][d] for m,d <= n_max, one DP sweep.
inline std::vector<std::vector<BigInt>> walk_count_dp_table(int q, std::int64_t n_max) {
    check_branching(q);
    if (n_max < 0) fail(ErrorCode::OutOfRange, "negative table size");
    const auto size = static_cast<std::size_t>(n_max) + 1;
    std::vector<std::vector<BigInt>> g(size, std::vector<BigInt>(size + 1));
    g[0][0] = 1;
    for (std::size_t m = 1; m < size; ++m) {
        g[m][0] = (q + 1) * g[m - 1][1];
        for (std::size_t d = 1; d <= m; ++d)
            g[m][d] = g[m - 1][d - 1] + q * g[m - 1][d + 1];
    }
    return g;
}

// Number of paths in the dynamic graph from x up to y: walks of length
// level(y) - level(x) between the underlying tree sites.
inline BigInt dim_graded(const GradedVertex& x, const GradedVertex& y) {
    check_same_tree(x.site.q(), y.site.q());
    if (x.level > y.level)
        fail(ErrorCode::LevelOrder, "dim_graded needs level(x) <= level(y), got " +
                                        std::to_string(x.level) + " > " + std::to_string(y.level));
    return walk_count_formula(x.site.q(), y.level - x.level, distance(x.site, y.site));
}

inline BigInt dim_from_root(const GradedVertex& y) {
    return dim_graded(graded_root(y.site.q()), y);
}

// Level-(n) vertices below w (level n+1) that actually carry paths from the
// root, in canonical site order.
inline std::vector<GradedVertex> graded_predecessors(const GradedVertex& w) {
    if (w.level < 1) fail(ErrorCode::OutOfRange, "level-0 vertex has no predecessors");
    std::vector<GradedVertex> preds;
    for (const Vertex& u : neighbors(w.site)) {
        GradedVertex cand(w.level - 1, u);
        if (dim_from_root(cand) > 0) preds.push_back(std::move(cand));
    }
    return preds;
}

// Backward transition probability of the central cotransition system:
// proportional to the number of root paths into the predecessor.
inline BigRat cotransition(const GradedVertex& w, const GradedVertex& v) {
    check_same_tree(w.site.q(), v.site.q());
    if (w.level != v.level + 1 || distance(v.site, w.site) != 1)
        fail(ErrorCode::NotAdjacent, "cotransition needs v one level below w and sites adjacent");
    BigInt denom = 0;
    for (const Vertex& u : neighbors(w.site))
        denom += dim_from_root(GradedVertex(v.level, u));
    if (denom == 0)
        fail(ErrorCode::OutOfRange, "cotransition target is unreachable from the root");
    return BigRat(dim_from_root(v), denom);
}

}  // namespace treewalk
