#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treewalk/errors.hpp"
#include "treewalk/numeric.hpp"
#include "treewalk/tree.hpp"
#include "treewalk/walk_counts.hpp"

namespace treewalk {

// Central Markov measure on the path space of the dynamic graph, directed
// at a boundary end: probability r on the edge toward the end, (1-r)/q on
// each of the q remaining edges, independently of the level.
struct CentralMeasure {
    CentralMeasure(End end_, BigRat r_) : end(std::move(end_)), r(std::move(r_)) {
        if (r < 0 || r > 1)
            fail(ErrorCode::ROutOfRange, "transition weight r must lie in [0,1], got " + format_rational(r));
    }

    int q() const noexcept { return end.q(); }

    End end;
    BigRat r;
};

struct TransitionEntry {
    GradedVertex target;
    BigRat probability;
    bool toward_end = false;
};

struct TransitionDistribution {
    GradedVertex source;
    std::vector<TransitionEntry> entries;  // q+1 entries, canonical site order

    BigRat total() const {
        BigRat s = 0;
        for (const auto& e : entries) s += e.probability;
        return s;
    }
};

inline TransitionDistribution transition_distribution(const CentralMeasure& m, const GradedVertex& v) {
    check_same_tree(m.q(), v.site.q());
    const Vertex directed = step_toward(v.site, m.end);
    const BigRat other = (BigRat(1) - m.r) / m.q();
    TransitionDistribution out{v, {}};
    out.entries.reserve(static_cast<std::size_t>(m.q()) + 1);
    for (Vertex& u : neighbors(v.site)) {
        const bool toward = u == directed;
        out.entries.push_back(TransitionEntry{GradedVertex(v.level + 1, std::move(u)),
                                              toward ? m.r : other, toward});
    }
    if (out.total() != 1) throw InvariantViolation("transition probabilities do not sum to 1");
    return out;
}

// Extremality in the simplex of central measures holds exactly on r >= 1/2.
inline bool is_ergodic(const CentralMeasure& m) { return 2 * m.r >= 1; }

// --------------------------------------------------------------------------
// Laplace eigenfunction bridge. Powers of the minimal harmonic function
// q^{-hor} stay eigenfunctions of the neighbor-averaging operator
// (1/(q+1)) sum_{u~v} f(u); exact arithmetic is available through the
// substitution x = q^{-alpha}, which makes f(v) = x^{hor(v)} rational.
// --------------------------------------------------------------------------

inline double eigenvalue_s(double alpha, int q) {
    check_branching_at_least_two(q);
    return (std::pow(q, alpha) + std::pow(q, 1.0 - alpha)) / (q + 1);
}

// Eigenvalue in exact rationals, parameterized by x = q^{-alpha} > 0.
inline BigRat eigenvalue_s_from_x(const BigRat& x, int q) {
    check_branching_at_least_two(q);
    if (x <= 0) fail(ErrorCode::NonpositiveX, "x = q^{-alpha} must be positive");
    return (BigRat(1) / x + q * x) / (q + 1);
}

inline double r_from_alpha(double alpha, int q) {
    check_branching_at_least_two(q);
    return 1.0 / (1.0 + std::pow(q, 1.0 - 2.0 * alpha));
}

// Exact toward-probability 1/(1 + q^{1-2 alpha}); available whenever
// 1 - 2 alpha is an integer (alpha with denominator 1 or 2).
inline std::optional<BigRat> r_from_alpha_exact(const BigRat& alpha, int q) {
    check_branching_at_least_two(q);
    const BigInt den = boost::multiprecision::denominator(alpha);
    if (den != 1 && den != 2) return std::nullopt;
    const BigRat expo = BigRat(1) - 2 * alpha;  // integral by the check above
    const auto e = boost::multiprecision::numerator(expo).convert_to<std::int64_t>();
    return BigRat(1) / (1 + pow_rat(BigRat(q), e));
}

inline double alpha_from_r(double r, int q) {
    check_branching_at_least_two(q);
    if (!(r > 0.0 && r < 1.0))
        fail(ErrorCode::OutOfOpenInterval, "alpha_from_r needs r in (0,1), got " + std::to_string(r));
    return (1.0 - std::log(1.0 / r - 1.0) / std::log(static_cast<double>(q))) / 2.0;
}

// Parameters of the eigenfunction f = q^{-alpha * hor} of the averaging
// operator, normalized to 1 at the root.
struct Eigenfunction {
    Eigenfunction(End end_, BigRat alpha_) : end(std::move(end_)), alpha(std::move(alpha_)) {}

    int q() const noexcept { return end.q(); }

    End end;
    BigRat alpha;
};

// The central measure whose transitions are f(w)/(f(v)(q+1)s). Exact when
// the toward-probability is rational in alpha; otherwise the IEEE value of
// r_alpha is kept exactly (every finite double is rational).
inline CentralMeasure measure_from_eigenfunction(const Eigenfunction& e) {
    if (auto exact = r_from_alpha_exact(e.alpha, e.q()))
        return CentralMeasure(e.end, std::move(*exact));
    return CentralMeasure(e.end, rat_from_double(r_from_alpha(to_double(e.alpha), e.q())));
}

namespace detail {
inline void check_graded_edge(const GradedVertex& v, const GradedVertex& w) {
    check_same_tree(v.site.q(), w.site.q());
    if (w.level != v.level + 1 || distance(v.site, w.site) != 1)
        fail(ErrorCode::NotAdjacent, "not an edge of the dynamic graph");
}
}  // namespace detail

// Edge probability f(site(w)) / (f(site(v)) (q+1) s) of the measure induced
// by the eigenfunction, in floating point for arbitrary real alpha.
inline double eigen_edge_probability(const Eigenfunction& e, const GradedVertex& v, const GradedVertex& w) {
    detail::check_graded_edge(v, w);
    const double alpha = to_double(e.alpha);
    const int q = e.q();
    const double delta = static_cast<double>(horofunction(w.site, e.end) - horofunction(v.site, e.end));
    return std::pow(q, -alpha * delta) / ((q + 1) * eigenvalue_s(alpha, q));
}

// Same edge probability in exact rationals. On a graded edge the horofunction
// shifts by +-1, so q^{-alpha delta}/(q^alpha + q^{1-alpha}) simplifies to
// 1/(1 + q^{1-2alpha}) toward the end and 1/(q^{2alpha} + q) away from it,
// rational whenever 2 alpha is an integer.
inline BigRat eigen_edge_probability_exact(const Eigenfunction& e, const GradedVertex& v,
                                           const GradedVertex& w) {
    detail::check_graded_edge(v, w);
    const BigRat doubled = 2 * e.alpha;
    if (boost::multiprecision::denominator(doubled) != 1)
        fail(ErrorCode::InvalidConfig, "exact edge probabilities need 2*alpha integral");
    const auto b = boost::multiprecision::numerator(doubled).convert_to<std::int64_t>();
    const std::int64_t delta = horofunction(w.site, e.end) - horofunction(v.site, e.end);
    const BigRat q(e.q());
    if (delta < 0) return 1 / (1 + pow_rat(q, 1 - b));
    return 1 / (pow_rat(q, b) + q);
}

// Max residual |(1/(q+1)) sum_{u~v} f(u) - s f(v)| of the eigen-equation for
// f(v) = x^{hor(v)} over the radius-R ball, in exact rationals. Zero for
// every positive rational x.
inline BigRat eigen_residual(const BigRat& x, int q, int radius, const End& omega) {
    check_branching_at_least_two(q);
    check_same_tree(q, omega.q());
    if (x <= 0) fail(ErrorCode::NonpositiveX, "eigen_residual needs x > 0");
    if (radius < 1) fail(ErrorCode::OutOfRange, "eigen_residual needs radius >= 1");
    const BigRat s = eigenvalue_s_from_x(x, q);
    BigRat worst = 0;
    std::vector<Vertex> frontier{root_vertex(q)};
    std::vector<Vertex> ball = frontier;
    for (int depth = 1; depth <= radius; ++depth) {
        std::vector<Vertex> next;
        for (const Vertex& v : frontier)
            for (Letter c = 0; c <= static_cast<Letter>(q); ++c) {
                if (!v.is_root() && c == v.letters().back()) continue;
                next.push_back(v.child(c));
            }
        ball.insert(ball.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    for (const Vertex& v : ball) {
        BigRat avg = 0;
        for (const Vertex& u : neighbors(v)) avg += pow_rat(x, horofunction(u, omega));
        avg /= q + 1;
        const BigRat residual = abs_rat(avg - s * pow_rat(x, horofunction(v, omega)));
        if (residual > worst) worst = residual;
    }
    return worst;
}

// --------------------------------------------------------------------------
// Harmonic measure and the ergodic decomposition of the r < 1/2 family.
// --------------------------------------------------------------------------

// Mass under the root-symmetric harmonic measure of the cylinder of ends
// extending a reduced prefix: uniform over the q+1 first letters, then
// uniform over q continuations at every later depth.
inline BigRat theta_cylinder(int q, const Word& prefix) {
    check_branching_at_least_two(q);
    for (Letter c : prefix)
        if (c > static_cast<Letter>(q)) fail(ErrorCode::OutOfAlphabet, "prefix letter out of alphabet");
    if (!word_is_reduced(prefix)) fail(ErrorCode::NotReduced, "prefix is not reduced");
    if (prefix.empty()) return 1;
    return BigRat(1, BigInt(q + 1) * pow_int(q, prefix.size() - 1));
}

// Harmonic mass of the set of ends whose confluence with a fixed end is
// exactly j: q/(q+1) at j = 0, (q-1)/((q+1)q^j) otherwise.
inline BigRat theta_confluence_class(int q, std::int64_t j) {
    check_branching_at_least_two(q);
    if (j < 0) fail(ErrorCode::OutOfRange, "confluence length must be nonnegative");
    if (j == 0) return BigRat(q, q + 1);
    return BigRat(q - 1, BigInt(q + 1) * pow_int(q, static_cast<std::uint64_t>(j)));
}

inline void check_subcritical(const BigRat& r) {
    if (r < 0 || 2 * r >= 1)
        fail(ErrorCode::ROutOfRange, "decomposition is defined for 0 <= r < 1/2, got " + format_rational(r));
}

// Density of the decomposing distribution against the harmonic measure, as
// a function of the confluence length with the directing end:
//   ((1-2r)(q+1)/(q - qr - r)) * (qr/(1-r))^l,  with 0^0 = 1.
inline BigRat decomposition_density(int q, const BigRat& r, std::int64_t confluence) {
    check_branching_at_least_two(q);
    check_subcritical(r);
    if (confluence < 0) fail(ErrorCode::OutOfRange, "confluence length must be nonnegative");
    const BigRat prefactor = (1 - 2 * r) * (q + 1) / (q - q * r - r);
    const BigRat ratio = q * r / (1 - r);
    return confluence == 0 ? prefactor : prefactor * pow_rat(ratio, confluence);
}

// Mass of a prefix cylinder under the decomposing distribution. Off the
// directing end the density is constant on the cylinder; along it the
// geometric tail sums in closed form to (q-1)(1-r)/(q-qr-r) * (r/(1-r))^m.
inline BigRat decomposition_cylinder_mass(const End& omega0, const BigRat& r, const Word& prefix) {
    const int q = omega0.q();
    check_subcritical(r);
    const BigRat theta = theta_cylinder(q, prefix);  // validates the prefix
    const std::size_t m = prefix.size();
    if (m == 0) return 1;
    const std::size_t agree = common_prefix_length(prefix, omega0);
    if (agree < m) return decomposition_density(q, r, static_cast<std::int64_t>(agree)) * theta;
    const BigRat gamma = r / (1 - r);
    return BigRat(q - 1) * (1 - r) / (q - q * r - r) * pow_rat(gamma, static_cast<std::int64_t>(m));
}

// Fraction of downward-biased walks on the integers that reach level k but
// never level k+1: (r/(1-r))^k - (r/(1-r))^{k+1}, with 0^0 = 1.
inline BigRat ruin_fraction(const BigRat& r, std::int64_t k) {
    check_subcritical(r);
    if (k < 0) fail(ErrorCode::OutOfRange, "ruin level must be nonnegative");
    const BigRat gamma = r / (1 - r);
    return pow_rat(gamma, k) - pow_rat(gamma, k + 1);
}

}  // namespace treewalk
