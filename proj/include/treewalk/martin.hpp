#pragma once

#include <cstdint>
#include <vector>

#include "treewalk/errors.hpp"
#include "treewalk/numeric.hpp"
#include "treewalk/tree.hpp"
#include "treewalk/walk_counts.hpp"

namespace treewalk {

// Ratio of walk counts dim(u, (n,v)) / dim((n,v)) along the deterministic
// vertex sequence (n, v). By homogeneity it reduces to counts that depend
// only on level(u), n, d(site(u), v) and d(root, v).
inline BigRat kernel_ratio(const GradedVertex& u, const Vertex& v, std::int64_t n) {
    check_same_tree(u.site.q(), v.q());
    if (!u.is_valid())
        fail(ErrorCode::ParityMismatch, "base vertex violates the level/depth invariant");
    if (n < u.level) fail(ErrorCode::LevelOrder, "level precedes the base vertex");
    const auto target_depth = static_cast<std::int64_t>(v.depth());
    if ((n - target_depth) % 2 != 0)
        fail(ErrorCode::ParityMismatch, "level parity does not match the target depth");
    const BigInt denom = walk_count_formula(v.q(), n, target_depth);
    if (denom == 0) fail(ErrorCode::DivisionByZeroCount, "no walks reach the target at this level");
    const BigInt num = walk_count_formula(v.q(), n - u.level, distance(u.site, v));
    return BigRat(num, denom);
}

struct KernelSequence {
    GradedVertex base;
    Vertex target;
    std::vector<std::pair<std::int64_t, BigRat>> values;
};

inline std::int64_t first_admissible_level(const GradedVertex& u, const Vertex& v) {
    const auto target_depth = static_cast<std::int64_t>(v.depth());
    std::int64_t n = std::max(u.level, target_depth);
    if ((n - target_depth) % 2 != 0) ++n;
    return n;
}

// Levels run from the first one admitting a nonzero denominator, in steps
// of two (the walk-count parity constraint).
inline KernelSequence kernel_sequence(const GradedVertex& u, const Vertex& v, std::int64_t n_max) {
    check_same_tree(u.site.q(), v.q());
    if (!u.is_valid())
        fail(ErrorCode::ParityMismatch, "base vertex violates the level/depth invariant");
    KernelSequence seq{u, v, {}};
    for (std::int64_t n = first_admissible_level(u, v); n <= n_max; n += 2)
        seq.values.emplace_back(n, kernel_ratio(u, v, n));
    return seq;
}

struct SigmaEstimate {
    double value = 0.0;
    double last_difference = 0.0;
    bool tail_decreasing = false;
    std::size_t evaluations = 0;
};

// Numerical exhibition of the kernel limit attached to (u, v): evaluates
// the exact sequence up to n_max and reports the final value together with
// the final successive difference. tail_decreasing records whether the
// absolute differences over the last five evaluations are nonincreasing,
// the Cauchy diagnostic used by the acceptance suite.
inline SigmaEstimate sigma_kernel_estimate(const GradedVertex& u, const Vertex& v,
                                           std::int64_t n_max) {
    const KernelSequence seq = kernel_sequence(u, v, n_max);
    if (seq.values.size() < 4)
        fail(ErrorCode::OutOfRange, "need at least four admissible levels below n_max");
    std::vector<BigRat> diffs;
    diffs.reserve(seq.values.size() - 1);
    for (std::size_t i = 1; i < seq.values.size(); ++i)
        diffs.push_back(abs_rat(seq.values[i].second - seq.values[i - 1].second));
    SigmaEstimate est;
    est.evaluations = seq.values.size();
    est.value = to_double(seq.values.back().second);
    est.last_difference = to_double(diffs.back());
    est.tail_decreasing = true;
    const std::size_t tail = std::min<std::size_t>(diffs.size(), 4);
    for (std::size_t i = diffs.size() - tail + 1; i < diffs.size(); ++i)
        if (diffs[i] > diffs[i - 1]) est.tail_decreasing = false;
    return est;
}

// S_q(n+2, k) / S_q(n, k), the two-step growth of the walk counts; tends
// to 4q for fixed k.
inline BigRat growth_ratio(int q, std::int64_t k, std::int64_t n) {
    check_branching(q);
    const BigInt denom = walk_count_formula(q, n, k);
    if (denom == 0) fail(ErrorCode::DivisionByZeroCount, "no walks of length n end at depth k");
    return BigRat(walk_count_formula(q, n + 2, k), denom);
}

}  // namespace treewalk
