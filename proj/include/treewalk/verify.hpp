#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "treewalk/central_measures.hpp"
#include "treewalk/errors.hpp"
#include "treewalk/martin.hpp"
#include "treewalk/numeric.hpp"
#include "treewalk/simulator.hpp"
#include "treewalk/tree.hpp"
#include "treewalk/walk_counts.hpp"

// Property suite behind the `verify` subcommand: one named check per
// documented invariant, each returning pass/fail with a diagnostic.

namespace treewalk {

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace verify_detail {

class Check {
public:
    explicit Check(std::string name) : result_{std::move(name), true, "ok"} {}

    template <class A, class B>
    void equal(const A& a, const B& b, const std::string& what) {
        if (!(a == b)) record(what);
    }

    void require(bool cond, const std::string& what) {
        if (!cond) record(what);
    }

    void within(double value, double target, double tol, const std::string& what) {
        if (!(std::abs(value - target) <= tol)) {
            std::ostringstream os;
            os << what << ": " << value << " vs " << target << " (tol " << tol << ")";
            record(os.str());
        }
    }

    PropertyResult finish() && { return std::move(result_); }

private:
    void record(const std::string& what) {
        if (result_.passed) {
            result_.passed = false;
            result_.detail = what;
        }
    }

    PropertyResult result_;
};

inline std::vector<Vertex> ball_sites(int q, int radius) {
    std::vector<Vertex> out{root_vertex(q)};
    std::size_t begin = 0;
    for (int d = 0; d < radius; ++d) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (Letter c = 0; c <= static_cast<Letter>(q); ++c) {
                const Word& w = out[i].letters();
                if (!w.empty() && w.back() == c) continue;
                Word child = w;
                child.push_back(c);
                out.emplace_back(q, std::move(child));
            }
        begin = end;
    }
    return out;
}

inline std::vector<GradedVertex> graded_ball(int q, int max_level) {
    std::vector<GradedVertex> out;
    for (const Vertex& v : ball_sites(q, max_level))
        for (std::int64_t lvl = static_cast<std::int64_t>(v.depth()); lvl <= max_level; lvl += 2)
            out.emplace_back(lvl, v);
    return out;
}

inline double three_sigma(double r, double n) { return 3.0 * std::sqrt(r * (1.0 - r) / n); }

struct ZIncrements {
    std::vector<std::vector<int>> per_trajectory;  // entries are +1 / -1
};

inline ZIncrements z_increments(const EnsembleConfig& cfg) {
    validate(cfg);
    ZIncrements out;
    out.per_trajectory =
        ensemble_collect<std::vector<int>>(cfg.trajectories, cfg.threads, [&](std::size_t i) {
            const auto t = sample_path(cfg.measure, cfg.steps, trajectory_seed(cfg.master_seed, i));
            std::vector<int> inc;
            inc.reserve(cfg.steps);
            std::int64_t prev = 0;
            t.scan([&](std::size_t j, const Word& w, std::size_t confl) {
                const auto z = 2 * static_cast<std::int64_t>(confl) - static_cast<std::int64_t>(w.size());
                if (j > 0) inc.push_back(z > prev ? 1 : -1);
                prev = z;
            });
            return inc;
        });
    return out;
}

}  // namespace verify_detail

// --------------------------------------------------------------------------
// Tree geometry
// --------------------------------------------------------------------------

inline PropertyResult check_horofunction_steps() {
    verify_detail::Check c("tree.horofunction_steps");
    for (int q : {2, 3}) {
        const End omega = parse_end(q, "0:1,0");
        for (const Vertex& v : verify_detail::ball_sites(q, 4)) {
            const auto h = horofunction(v, omega);
            const Vertex toward = step_toward(v, omega);
            c.equal(horofunction(toward, omega), h - 1, "directed step must lower the horofunction");
            for (const Vertex& u : neighbors(v))
                if (!(u == toward))
                    c.equal(horofunction(u, omega), h + 1, "other neighbors must raise the horofunction");
        }
    }
    return std::move(c).finish();
}

inline PropertyResult check_distance_metric() {
    verify_detail::Check c("tree.distance_metric");
    const auto sites = verify_detail::ball_sites(2, 5);
    for (const Vertex& u : sites)
        for (const Vertex& v : sites) {
            const auto duv = distance(u, v);
            c.require(duv >= 0, "distance must be nonnegative");
            c.require((duv == 0) == (u == v), "distance vanishes exactly on the diagonal");
            c.equal(distance(v, u), duv, "distance must be symmetric");
        }
    for (const Vertex& u : sites)
        for (const Vertex& v : sites)
            for (const Vertex& w : sites)
                c.require(distance(u, w) <= distance(u, v) + distance(v, w),
                          "triangle inequality fails");
    return std::move(c).finish();
}

inline PropertyResult check_step_toward_geodesic() {
    verify_detail::Check c("tree.step_toward_geodesic");
    for (int q : {2, 3}) {
        const End omega = parse_end(q, "1:0,2");
        for (const Vertex& v : verify_detail::ball_sites(q, 4)) {
            Vertex cur = v;
            const std::size_t budget = v.depth();
            for (std::size_t i = 0; i < budget; ++i) {
                if (common_prefix_length(cur.letters(), omega) == cur.depth()) break;
                cur = step_toward(cur, omega);
            }
            c.require(common_prefix_length(cur.letters(), omega) == cur.depth(),
                      "directed steps must reach the ray within depth(v) moves");
            for (int i = 0; i < 4; ++i) {
                const Vertex next = step_toward(cur, omega);
                c.require(next.depth() == cur.depth() + 1 &&
                              common_prefix_length(next.letters(), omega) == next.depth(),
                          "once on the ray, directed steps must follow the end");
                cur = next;
            }
        }
    }
    return std::move(c).finish();
}

inline PropertyResult check_neighbor_structure() {
    verify_detail::Check c("tree.neighbor_structure");
    for (int q : {1, 2, 3}) {
        for (const Vertex& v : verify_detail::ball_sites(q, 4)) {
            const auto ns = neighbors(v);
            c.equal(ns.size(), static_cast<std::size_t>(q) + 1, "vertex degree must be q+1");
            for (const Vertex& u : ns) {
                c.equal(distance(u, v), std::int64_t{1}, "neighbors must be at distance 1");
                bool mutual = false;
                for (const Vertex& back : neighbors(u)) mutual = mutual || back == v;
                c.require(mutual, "neighbor relation must be symmetric");
            }
        }
    }
    return std::move(c).finish();
}

// --------------------------------------------------------------------------
// Walk counts
// --------------------------------------------------------------------------

inline PropertyResult check_formula_equals_dp() {
    verify_detail::Check c("walk_counts.formula_equals_dp");
    for (int q : {1, 2, 3, 5}) {
        const auto table = walk_count_dp_table(q, 60);
        for (std::int64_t n = 0; n <= 60; ++n)
            for (std::int64_t k = n % 2; k <= n; k += 2)
                c.equal(walk_count_formula(q, n, k), table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)],
                        "closed formula must match the transition-count recursion");
    }
    return std::move(c).finish();
}

inline PropertyResult check_q1_binomial() {
    verify_detail::Check c("walk_counts.q1_binomial");
    for (std::int64_t n = 0; n <= 60; ++n)
        for (std::int64_t k = n % 2; k <= n; k += 2)
            c.equal(walk_count_formula(1, n, k), binomial(n, (n - k) / 2),
                    "q=1 counts must telescope to binomial coefficients");
    return std::move(c).finish();
}

inline PropertyResult check_count_recurrence() {
    verify_detail::Check c("walk_counts.count_recurrence");
    for (int q : {1, 2, 3, 5})
        for (std::int64_t n = 0; n <= 60; ++n)
            for (std::int64_t k = n % 2; k <= n; k += 2)
                c.equal(walk_count_formula(q, n, k),
                        walk_count_formula(q, n, k + 2) +
                            pow_int(BigInt(q), (n - k) / 2) * ballot_number(n, k),
                        "two-term recurrence must hold");
    return std::move(c).finish();
}

inline PropertyResult check_cotransition_normalized() {
    verify_detail::Check c("walk_counts.cotransition_normalized");
    for (int q : {2, 3})
        for (const GradedVertex& w : verify_detail::graded_ball(q, 6)) {
            if (w.level == 0) continue;
            BigRat total = 0;
            for (const GradedVertex& v : graded_predecessors(w)) total += cotransition(w, v);
            c.equal(total, BigRat(1), "cotransition weights must sum to 1 at " + w.site.str());
        }
    return std::move(c).finish();
}

inline PropertyResult check_dim_iff_reachable() {
    verify_detail::Check c("walk_counts.dim_positive_iff_reachable");
    for (const Vertex& v : verify_detail::ball_sites(2, 8))
        for (std::int64_t lvl = 0; lvl <= 8; ++lvl) {
            const GradedVertex y(lvl, v);
            c.equal(dim_from_root(y) > 0, y.is_valid(),
                    "root walk count must be positive exactly on reachable pairs");
        }
    return std::move(c).finish();
}

// --------------------------------------------------------------------------
// Central measures
// --------------------------------------------------------------------------

inline PropertyResult check_decomposition_normalized() {
    verify_detail::Check c("central_measures.decomposition_normalized");
    for (int q : {2, 3, 5})
        for (const BigRat& r : {BigRat(0), BigRat(1, 10), BigRat(1, 4), BigRat(49, 100)}) {
            // Confluence-class masses are geometric from class 1 on with
            // ratio r/(1-r), so the full series has an exact closed sum.
            const BigRat ratio = r / (1 - r);
            const BigRat head = decomposition_density(q, r, 0) * theta_confluence_class(q, 0);
            const BigRat first = decomposition_density(q, r, 1) * theta_confluence_class(q, 1);
            c.equal(head + first / (1 - ratio), BigRat(1),
                    "decomposition must integrate to 1 at q=" + std::to_string(q) + ", r=" +
                        format_rational(r));
        }
    return std::move(c).finish();
}

inline PropertyResult check_eigen_measure_agrees() {
    verify_detail::Check c("central_measures.eigen_measure_agrees");
    for (int q : {2, 3}) {
        const End omega = parse_end(q, ":0,1");
        const auto vertices = verify_detail::graded_ball(q, 3);
        for (const BigRat& alpha : {BigRat(0), BigRat(1, 2), BigRat(1), BigRat(2)}) {
            const Eigenfunction e(omega, alpha);
            const CentralMeasure m = measure_from_eigenfunction(e);
            for (const GradedVertex& v : vertices) {
                if (!v.is_valid()) continue;
                for (const TransitionEntry& entry : transition_distribution(m, v).entries)
                    c.equal(eigen_edge_probability_exact(e, v, entry.target), entry.probability,
                            "eigenfunction edge weight must equal the measure transition");
            }
        }
        for (double alpha : {0.3, 0.77}) {
            const Eigenfunction e(omega, rat_from_double(alpha));
            const CentralMeasure m = measure_from_eigenfunction(e);
            for (const GradedVertex& v : vertices) {
                if (!v.is_valid()) continue;
                for (const TransitionEntry& entry : transition_distribution(m, v).entries)
                    c.within(eigen_edge_probability(e, v, entry.target), to_double(entry.probability),
                             1e-12, "eigenfunction edge weight (float path)");
            }
        }
    }
    return std::move(c).finish();
}

inline PropertyResult check_r_alpha_duality() {
    verify_detail::Check c("central_measures.r_alpha_duality");
    for (int q : {2, 3})
        for (int i = 0; i < 50; ++i) {
            const double alpha = -2.0 + 0.1 * i;
            c.within(r_from_alpha(1.0 - alpha, q), 1.0 - r_from_alpha(alpha, q), 1e-12,
                     "r(1-a) must equal 1-r(a)");
        }
    return std::move(c).finish();
}

inline PropertyResult check_eigen_residual_zero() {
    verify_detail::Check c("central_measures.eigen_residual_zero");
    for (int q : {2, 3}) {
        const End omega = parse_end(q, ":0,1");
        for (const BigRat& x :
             {BigRat(1, 5), BigRat(1, 3), BigRat(1, 2), BigRat(1), BigRat(2), BigRat(7, 3)})
            c.equal(eigen_residual(x, q, 8, omega), BigRat(0),
                    "averaging operator residual must vanish at x=" + format_rational(x));
    }
    return std::move(c).finish();
}

inline PropertyResult check_minimality_threshold() {
    verify_detail::Check c("central_measures.minimality_threshold");
    const End omega = parse_end(2, ":0,1");
    for (const BigRat& alpha : {BigRat(-1), BigRat(0), BigRat(1, 4), BigRat(49, 100), BigRat(1, 2),
                                BigRat(51, 100), BigRat(3, 4), BigRat(1), BigRat(2)}) {
        const bool ergodic = is_ergodic(measure_from_eigenfunction(Eigenfunction(omega, alpha)));
        c.equal(ergodic, alpha >= BigRat(1, 2),
                "ergodicity must match the minimality threshold at alpha=" + format_rational(alpha));
    }
    return std::move(c).finish();
}

inline PropertyResult check_transitions_normalized() {
    verify_detail::Check c("central_measures.transitions_normalized");
    for (int q : {2, 3}) {
        const End omega = parse_end(q, "2:0,1");
        for (const BigRat& r : {BigRat(0), BigRat(1, 3), BigRat(1, 2), BigRat(3, 4), BigRat(1)}) {
            const CentralMeasure m(omega, r);
            for (const GradedVertex& v : verify_detail::graded_ball(q, 3)) {
                if (!v.is_valid()) continue;
                const auto dist = transition_distribution(m, v);
                c.equal(dist.total(), BigRat(1), "transition weights must sum to 1");
                c.equal(dist.entries.size(), static_cast<std::size_t>(q) + 1,
                        "one transition per neighbor");
                for (const auto& e : dist.entries)
                    c.require(e.probability >= 0 && e.probability <= 1,
                              "transition weights must lie in [0,1]");
            }
        }
    }
    return std::move(c).finish();
}

// --------------------------------------------------------------------------
// Simulator
// --------------------------------------------------------------------------

inline PropertyResult check_steps_are_edges() {
    verify_detail::Check c("simulator.steps_are_edges");
    const CentralMeasure m(parse_end(2, ":0,1"), BigRat(3, 4));
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const auto t = sample_path(m, 300, seed);
        const auto sites = t.sites();
        for (std::size_t i = 1; i < sites.size(); ++i)
            c.equal(distance(sites[i - 1], sites[i]), std::int64_t{1},
                    "every sampled step must cross one edge");
    }
    return std::move(c).finish();
}

inline PropertyResult check_toward_frequency() {
    verify_detail::Check c("simulator.toward_frequency");
    struct Case {
        int q;
        BigRat r;
    };
    for (const Case& cs : {Case{2, BigRat(3, 4)}, Case{3, BigRat(3, 5)}}) {
        const EnsembleConfig cfg{CentralMeasure(parse_end(cs.q, ":0,1"), cs.r), 500, 200, 4242, 4, 1};
        const auto inc = verify_detail::z_increments(cfg);
        std::size_t plus = 0, total = 0;
        for (const auto& traj : inc.per_trajectory)
            for (int x : traj) {
                ++total;
                plus += x > 0;
            }
        const double r = to_double(cs.r);
        c.within(static_cast<double>(plus) / static_cast<double>(total), r,
                 verify_detail::three_sigma(r, static_cast<double>(total)),
                 "pooled directed-step frequency at q=" + std::to_string(cs.q));
    }
    return std::move(c).finish();
}

inline PropertyResult check_z_increments_iid() {
    verify_detail::Check c("simulator.z_increments_iid");
    struct Case {
        int q;
        BigRat r;
    };
    for (const Case& cs : {Case{2, BigRat(3, 4)}, Case{3, BigRat(3, 5)}}) {
        const EnsembleConfig cfg{CentralMeasure(parse_end(cs.q, ":0,1"), cs.r), 500, 200, 777, 4, 1};
        const auto inc = verify_detail::z_increments(cfg);
        const double r = to_double(cs.r);
        for (std::size_t len = 0; len <= 3; ++len)
            for (std::size_t pattern = 0; pattern < (std::size_t{1} << len); ++pattern) {
                std::size_t hits = 0, plus = 0;
                for (const auto& traj : inc.per_trajectory)
                    for (std::size_t i = len; i < traj.size(); ++i) {
                        bool match = true;
                        for (std::size_t j = 0; j < len; ++j)
                            if ((traj[i - len + j] > 0) != (((pattern >> j) & 1) != 0)) match = false;
                        if (!match) continue;
                        ++hits;
                        plus += traj[i] > 0;
                    }
                c.require(hits > 100, "pattern sample too small");
                c.within(static_cast<double>(plus) / static_cast<double>(hits), r,
                         verify_detail::three_sigma(r, static_cast<double>(hits)),
                         "conditional +1 frequency given a length-" + std::to_string(len) +
                             " pattern");
            }
    }
    return std::move(c).finish();
}

inline PropertyResult check_supercritical_prefix() {
    verify_detail::Check c("simulator.supercritical_prefix");
    const End omega = parse_end(2, ":0,1");
    const EnsembleConfig cfg{CentralMeasure(omega, BigRat(3, 4)), 5000, 400, 2024, 4, 5};
    const Word expected = omega.prefix(5);
    std::size_t agree = 0;
    for (const auto& s : ensemble_summaries(cfg))
        if (s.prefix_determined && s.prefix == expected) ++agree;
    c.require(agree >= 396, "limit direction must agree with the driving end for >= 99% of paths");
    return std::move(c).finish();
}

inline PropertyResult check_subcritical_spread() {
    verify_detail::Check c("simulator.subcritical_spread");
    const End omega = parse_end(2, ":0,1");
    const BigRat r(1, 4);
    const EnsembleConfig cfg{CentralMeasure(omega, r), 1500, 4000, 99, 4, 1};
    std::vector<std::size_t> counts(3, 0);
    std::size_t undetermined = 0;
    for (const auto& s : ensemble_summaries(cfg)) {
        if (s.prefix_determined) ++counts[s.prefix.front()];
        else ++undetermined;
    }
    const auto n = static_cast<double>(cfg.trajectories);
    c.require(static_cast<double>(undetermined) / n < 0.01, "limit direction rarely undetermined");
    for (Letter letter = 0; letter <= 2; ++letter) {
        const double mass = to_double(decomposition_cylinder_mass(omega, r, Word{letter}));
        const double freq = static_cast<double>(counts[letter]) / n;
        c.within(freq, mass, verify_detail::three_sigma(mass, n) + 0.005,
                 "depth-1 cylinder frequency for letter " + std::to_string(letter));
    }
    const double omega_freq = static_cast<double>(counts[omega.letter_at(0)]) / n;
    c.require(omega_freq < 0.3, "limit ends must not concentrate on the driving end");
    return std::move(c).finish();
}

inline PropertyResult check_last_exit_maxima_on_ray() {
    verify_detail::Check c("simulator.last_exit_maxima_on_ray");
    const CentralMeasure m(parse_end(2, ":0,1"), BigRat(3, 4));
    for (std::uint64_t seed : {5u, 6u, 7u, 8u}) {
        const auto t = sample_path(m, 2000, seed);
        std::int64_t best = 0;
        t.scan([&](std::size_t i, const Word& w, std::size_t confl) {
            const auto z = 2 * static_cast<std::int64_t>(confl) - static_cast<std::int64_t>(w.size());
            if (i > 0 && z > best) {
                c.require(confl == w.size() && static_cast<std::int64_t>(w.size()) == z,
                          "a fresh z maximum must happen on the ray vertex of that index");
                best = z;
            }
        });
    }
    return std::move(c).finish();
}

inline PropertyResult check_ruin_fractions() {
    verify_detail::Check c("simulator.ruin_fractions");
    const BigRat r(1, 3);
    const EnsembleConfig cfg{CentralMeasure(parse_end(2, ":0,1"), r), 800, 4000, 31337, 4, 1};
    std::vector<std::size_t> max_counts(6, 0);
    for (const auto& s : ensemble_summaries(cfg))
        if (s.max_z <= 5) ++max_counts[static_cast<std::size_t>(s.max_z)];
    const auto n = static_cast<double>(cfg.trajectories);
    for (std::int64_t k = 0; k <= 4; ++k) {
        const double expected = to_double(ruin_fraction(r, k));
        const double freq = static_cast<double>(max_counts[static_cast<std::size_t>(k)]) / n;
        c.within(freq, expected, verify_detail::three_sigma(expected, n),
                 "fraction peaking at z=" + std::to_string(k));
    }
    return std::move(c).finish();
}

// --------------------------------------------------------------------------
// Martin kernels
// --------------------------------------------------------------------------

inline PropertyResult check_kernel_range() {
    verify_detail::Check c("martin.kernel_range");
    const int q = 2;
    const auto bases = verify_detail::graded_ball(q, 4);
    const auto targets = verify_detail::ball_sites(q, 3);
    for (const GradedVertex& u : bases) {
        if (!u.is_valid()) continue;
        for (const Vertex& v : targets) {
            const std::int64_t start = first_admissible_level(u, v);
            const std::int64_t generic =
                u.level + static_cast<std::int64_t>(u.site.depth() + v.depth()) + 2;
            for (std::int64_t n = start; n <= start + 8; n += 2) {
                const BigRat k = kernel_ratio(u, v, n);
                c.require(k >= 0 && k <= 1, "kernel ratios must lie in [0,1]");
                if (u.level == 0)
                    c.equal(k, BigRat(1), "the root kernel is identically 1");
                else if (n >= generic)
                    c.require(k < 1, "away from degenerate levels only the root reaches 1");
            }
        }
    }
    return std::move(c).finish();
}

inline PropertyResult check_kernel_cauchy() {
    verify_detail::Check c("martin.kernel_cauchy");
    for (int q : {2, 3}) {
        const auto root = root_vertex(q);
        const Vertex v0 = make_vertex(q, {0});
        for (const GradedVertex& u :
             {GradedVertex(1, v0), GradedVertex(2, root), GradedVertex(4, make_vertex(q, {0, 1}))}) {
            for (const Vertex& v : {root, v0}) {
                const auto est = sigma_kernel_estimate(u, v, 200);
                c.require(est.tail_decreasing,
                          "kernel differences must shrink along the level sequence");
                c.require(est.last_difference < 1e-2, "kernel sequence must settle numerically");
            }
        }
    }
    return std::move(c).finish();
}

inline PropertyResult check_kernel_factorizes() {
    verify_detail::Check c("martin.kernel_factorizes");
    const int q = 2;
    struct Pair {
        GradedVertex a;
        GradedVertex b;
        Vertex v;
    };
    const std::vector<Pair> pairs{
        {GradedVertex(1, make_vertex(q, {0})), GradedVertex(1, make_vertex(q, {1})), root_vertex(q)},
        {GradedVertex(2, make_vertex(q, {0, 1})), GradedVertex(2, make_vertex(q, {2, 0})),
         root_vertex(q)},
        {GradedVertex(1, make_vertex(q, {1})), GradedVertex(1, make_vertex(q, {2})),
         make_vertex(q, {0})},
        {GradedVertex(3, make_vertex(q, {0, 1, 0})), GradedVertex(3, make_vertex(q, {0, 1, 2})),
         make_vertex(q, {0})},
    };
    for (const Pair& p : pairs) {
        c.equal(p.a.level, p.b.level, "test pairs share a level");
        c.equal(distance(p.a.site, p.v), distance(p.b.site, p.v), "test pairs share a distance");
        const std::int64_t start = first_admissible_level(p.a, p.v);
        for (std::int64_t n = start; n <= start + 20; n += 2)
            c.equal(kernel_ratio(p.a, p.v, n), kernel_ratio(p.b, p.v, n),
                    "kernels may depend on (level, distance) only");
    }
    return std::move(c).finish();
}

// --------------------------------------------------------------------------
// Cross-cutting determinism
// --------------------------------------------------------------------------

inline PropertyResult check_thread_determinism() {
    verify_detail::Check c("simulator.thread_determinism");
    EnsembleConfig a{CentralMeasure(parse_end(2, ":0,1"), BigRat(3, 4)), 400, 250, 555, 1, 3};
    EnsembleConfig b = a;
    b.threads = 8;
    const EnsembleStats sa = ensemble_run(a);
    const EnsembleStats sb = ensemble_run(b);
    const auto same_estimate = [](const Estimate& x, const Estimate& y) {
        return x.value == y.value && x.stderr_ == y.stderr_ && x.count == y.count;
    };
    c.require(same_estimate(sa.drift, sb.drift) && same_estimate(sa.toward_frequency, sb.toward_frequency) &&
                  same_estimate(sa.stabilization, sb.stabilization),
              "estimates must be identical for any thread budget");
    c.equal(sa.cylinders.size(), sb.cylinders.size(), "cylinder tables must be identical");
    for (std::size_t i = 0; i < std::min(sa.cylinders.size(), sb.cylinders.size()); ++i) {
        c.require(sa.cylinders[i].prefix == sb.cylinders[i].prefix &&
                      sa.cylinders[i].determined == sb.cylinders[i].determined &&
                      sa.cylinders[i].count == sb.cylinders[i].count &&
                      sa.cylinders[i].frequency == sb.cylinders[i].frequency,
                  "cylinder tables must be identical");
    }
    return std::move(c).finish();
}

inline std::vector<PropertyResult> run_property_suite() {
    std::vector<std::function<PropertyResult()>> checks{
        check_horofunction_steps,     check_distance_metric,
        check_step_toward_geodesic,   check_neighbor_structure,
        check_formula_equals_dp,      check_q1_binomial,
        check_count_recurrence,       check_cotransition_normalized,
        check_dim_iff_reachable,      check_decomposition_normalized,
        check_eigen_measure_agrees,   check_r_alpha_duality,
        check_eigen_residual_zero,    check_minimality_threshold,
        check_transitions_normalized, check_steps_are_edges,
        check_toward_frequency,       check_z_increments_iid,
        check_supercritical_prefix,   check_subcritical_spread,
        check_last_exit_maxima_on_ray, check_ruin_fractions,
        check_kernel_range,           check_kernel_cauchy,
        check_kernel_factorizes,      check_thread_determinism,
    };
    std::vector<PropertyResult> results;
    results.reserve(checks.size());
    for (const auto& check : checks) {
        try {
            results.push_back(check());
        } catch (const Error& e) {
            results.push_back(PropertyResult{"unexpected-domain-error", false, e.what()});
        } catch (const InvariantViolation& e) {
            results.push_back(PropertyResult{"unexpected-invariant-violation", false, e.what()});
        }
    }
    return results;
}

}  // namespace treewalk
