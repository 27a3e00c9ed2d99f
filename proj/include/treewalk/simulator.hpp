#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "treewalk/central_measures.hpp"
#include "treewalk/errors.hpp"
#include "treewalk/numeric.hpp"
#include "treewalk/rng.hpp"
#include "treewalk/tree.hpp"
#include "treewalk/walk_counts.hpp"

namespace treewalk {

// A sampled path in the dynamic graph. Sites are stored as the push/pop
// moves of the reduced word (letter >= 0 appends, kPop drops the last
// letter); levels are the step indices. Reconstruction of any prefix of
// the site sequence is a linear replay.
class Trajectory {
public:
    static constexpr std::int32_t kPop = -1;

    Trajectory(CentralMeasure measure, std::uint64_t seed, std::vector<std::int32_t> moves)
        : measure_(std::move(measure)), seed_(seed), moves_(std::move(moves)) {}

    const CentralMeasure& measure() const noexcept { return measure_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::size_t steps() const noexcept { return moves_.size(); }
    const std::vector<std::int32_t>& moves() const noexcept { return moves_; }

    // fn(step_index, word, confluence_with_end) for every position 0..steps.
    template <class Fn>
    void scan(Fn&& fn) const {
        Word w;
        std::size_t confl = 0;
        fn(std::size_t{0}, static_cast<const Word&>(w), confl);
        for (std::size_t i = 0; i < moves_.size(); ++i) {
            if (moves_[i] == kPop) {
                w.pop_back();
                confl = std::min(confl, w.size());
            } else {
                const auto c = static_cast<Letter>(moves_[i]);
                if (confl == w.size() && measure_.end.letter_at(w.size()) == c) ++confl;
                w.push_back(c);
            }
            fn(i + 1, static_cast<const Word&>(w), confl);
        }
    }

    Vertex site_at(std::size_t i) const {
        if (i > steps()) fail(ErrorCode::IndexBeyondTrajectory, "no step " + std::to_string(i));
        Word found;
        scan([&](std::size_t j, const Word& w, std::size_t) {
            if (j == i) found = w;
        });
        return Vertex(measure_.q(), std::move(found));
    }

    Vertex final_site() const { return site_at(steps()); }

    GradedVertex graded_at(std::size_t i) const {
        return GradedVertex(static_cast<std::int64_t>(i), site_at(i));
    }

    std::vector<Vertex> sites() const {
        std::vector<Vertex> out;
        out.reserve(steps() + 1);
        scan([&](std::size_t, const Word& w, std::size_t) { out.emplace_back(measure_.q(), w); });
        return out;
    }

private:
    CentralMeasure measure_;
    std::uint64_t seed_;
    std::vector<std::int32_t> moves_;
};

// Markov sampling of the directed central measure, one SplitMix64 stream
// per trajectory. A step consumes one draw for the toward/away decision
// and, when away, one more for the branch; r = 1 consumes none.
inline Trajectory sample_path(const CentralMeasure& m, std::size_t steps, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const bool deterministic = m.r == 1;
    std::uint64_t toward_threshold = 0;
    if (!deterministic) {
        // floor(r * 2^64): the per-step decision is a single 64-bit compare.
        const BigInt scaled = (boost::multiprecision::numerator(m.r) << 64) /
                              boost::multiprecision::denominator(m.r);
        toward_threshold = scaled.convert_to<std::uint64_t>();
    }
    const auto q = static_cast<Letter>(m.q());
    std::vector<std::int32_t> moves;
    moves.reserve(steps);
    Word w;
    std::size_t confl = 0;
    auto push = [&](Letter c) {
        if (confl == w.size() && m.end.letter_at(w.size()) == c) ++confl;
        w.push_back(c);
        moves.push_back(static_cast<std::int32_t>(c));
    };
    auto pop = [&] {
        w.pop_back();
        confl = std::min(confl, w.size());
        moves.push_back(Trajectory::kPop);
    };
    for (std::size_t i = 0; i < steps; ++i) {
        const bool on_ray = confl == w.size();
        const Letter toward_letter = on_ray ? m.end.letter_at(w.size()) : 0;
        const bool toward = deterministic || rng.next() < toward_threshold;
        if (toward) {
            if (on_ray) push(toward_letter);
            else pop();
            continue;
        }
        // Uniform among the q neighbors off the geodesic: the parent when it
        // is not the toward move, then child letters skipping the backtrack
        // letter and the toward letter.
        std::uint64_t idx = rng.next_below(q);
        if (!w.empty() && on_ray) {
            if (idx == 0) {
                pop();
                continue;
            }
            --idx;
        }
        for (Letter c = 0; c <= q; ++c) {
            if (!w.empty() && c == w.back()) continue;
            if (on_ray && c == toward_letter) continue;
            if (idx == 0) {
                push(c);
                break;
            }
            --idx;
        }
    }
    return Trajectory(m, seed, std::move(moves));
}

// Image of the trajectory under the negated horofunction of the directing
// end: a +-1 walk on the integers started at 0, with +1 exactly on the
// toward-steps.
inline std::vector<std::int64_t> z_projection(const Trajectory& t) {
    std::vector<std::int64_t> z;
    z.reserve(t.steps() + 1);
    t.scan([&](std::size_t, const Word& w, std::size_t confl) {
        z.push_back(2 * static_cast<std::int64_t>(confl) - static_cast<std::int64_t>(w.size()));
    });
    return z;
}

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::size_t count = 0;
};

namespace detail {
inline Estimate mean_with_stderr(std::span<const double> xs) {
    Estimate e;
    e.count = xs.size();
    for (double x : xs) e.value += x;
    e.value /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - e.value) * (x - e.value);
        e.stderr_ = std::sqrt(ss / (static_cast<double>(xs.size() - 1) * static_cast<double>(xs.size())));
    }
    return e;
}
}  // namespace detail

// Mean of d(root, final site)/steps over an ensemble sharing measure and
// length. Approaches |2r - 1| (and is exactly 1 when r = 1).
inline Estimate drift_estimate(std::span<const Trajectory> ensemble) {
    if (ensemble.empty()) fail(ErrorCode::EmptyEnsemble, "drift_estimate over an empty ensemble");
    const auto steps = ensemble.front().steps();
    if (steps == 0) fail(ErrorCode::InvalidConfig, "drift needs trajectories of positive length");
    std::vector<double> xs;
    xs.reserve(ensemble.size());
    for (const Trajectory& t : ensemble) {
        if (t.steps() != steps || !(t.measure().r == ensemble.front().measure().r &&
                                    t.measure().end == ensemble.front().measure().end))
            fail(ErrorCode::InvalidConfig, "ensemble trajectories must share measure and length");
        std::size_t final_depth = 0;
        t.scan([&](std::size_t i, const Word& w, std::size_t) {
            if (i == steps) final_depth = w.size();
        });
        xs.push_back(static_cast<double>(final_depth) / static_cast<double>(steps));
    }
    return detail::mean_with_stderr(xs);
}

// Largest index of a ray vertex the walk ever stands on, over the length of
// the trajectory. Equals max of the integer projection; converges to 2r-1
// above the critical point.
inline BigRat stabilization_rate(const Trajectory& t) {
    if (t.steps() == 0) return BigRat(0);
    std::int64_t best = 0;
    t.scan([&](std::size_t, const Word& w, std::size_t confl) {
        if (confl == w.size()) best = std::max(best, static_cast<std::int64_t>(w.size()));
    });
    return BigRat(best, static_cast<std::int64_t>(t.steps()));
}

// First m letters of the geodesic toward the trajectory's terminal site,
// provided the walk never backed below depth m over its final quarter;
// otherwise the limit direction is undetermined at this depth.
inline std::optional<Word> limit_end_prefix(const Trajectory& t, std::size_t m) {
    if (m < 1) fail(ErrorCode::OutOfRange, "prefix depth must be >= 1");
    const std::size_t n = t.steps();
    const std::size_t window_start = n - n / 4;
    bool stable = true;
    Word last;
    t.scan([&](std::size_t i, const Word& w, std::size_t) {
        if (i >= window_start && w.size() < m) stable = false;
        if (i == n) last = w;
    });
    if (!stable) return std::nullopt;
    last.resize(m);
    return last;
}

// Exact path-count ratio dim(endpoint(R), w_i)/dim(w_i) whose limit along
// typical trajectories is the product of the measure's transition
// probabilities along R. R is given by its tree sites from the root.
inline BigRat martingale_check(std::span<const Vertex> path, const Trajectory& t, std::size_t i) {
    const int q = t.measure().q();
    if (path.empty() || !path.front().is_root())
        fail(ErrorCode::InvalidConfig, "martingale path must start at the root");
    for (std::size_t j = 1; j < path.size(); ++j)
        if (distance(path[j - 1], path[j]) != 1)
            fail(ErrorCode::NotAdjacent, "martingale path is not a path of the dynamic graph");
    const auto k = static_cast<std::int64_t>(path.size() - 1);
    if (i > t.steps()) fail(ErrorCode::IndexBeyondTrajectory, "trajectory has no step " + std::to_string(i));
    if (static_cast<std::int64_t>(i) < k)
        fail(ErrorCode::LevelOrder, "index must reach the endpoint level of the path");
    const GradedVertex endpoint(k, path.back());
    const GradedVertex wi = t.graded_at(i);
    return BigRat(dim_graded(endpoint, wi), dim_from_root(wi));
}

// Edge form: dim(x, w_i)/dim(v, w_i) for an edge (v, x), limiting to the
// transition probability across that edge.
inline BigRat martingale_edge_ratio(const GradedVertex& v, const GradedVertex& x, const Trajectory& t,
                                    std::size_t i) {
    check_same_tree(v.site.q(), x.site.q());
    if (x.level != v.level + 1 || distance(v.site, x.site) != 1)
        fail(ErrorCode::NotAdjacent, "martingale edge form needs an edge (v,x)");
    if (i > t.steps()) fail(ErrorCode::IndexBeyondTrajectory, "trajectory has no step " + std::to_string(i));
    const GradedVertex wi = t.graded_at(i);
    const BigInt denom = dim_graded(v, wi);
    if (denom == 0) fail(ErrorCode::DivisionByZeroCount, "no paths from v to the trajectory vertex");
    return BigRat(dim_graded(x, wi), denom);
}

// Product of the measure's transition probabilities along a root path.
inline BigRat path_probability(const CentralMeasure& m, std::span<const Vertex> path) {
    if (path.empty() || !path.front().is_root())
        fail(ErrorCode::InvalidConfig, "path must start at the root");
    BigRat p = 1;
    for (std::size_t j = 1; j < path.size(); ++j) {
        if (distance(path[j - 1], path[j]) != 1)
            fail(ErrorCode::NotAdjacent, "not a path of the dynamic graph");
        p *= path[j] == step_toward(path[j - 1], m.end) ? m.r : (1 - m.r) / m.q();
    }
    return p;
}

// --------------------------------------------------------------------------
// Deterministic parallel ensembles. Work is distributed by an atomic index;
// every per-trajectory result lands in its own slot, and all reductions run
// sequentially over the slots, so the outcome is a pure function of the
// config regardless of the thread budget.
// --------------------------------------------------------------------------

struct EnsembleConfig {
    CentralMeasure measure;
    std::size_t steps = 0;
    std::size_t trajectories = 0;
    std::uint64_t master_seed = 0;
    unsigned threads = 1;
    std::size_t prefix_depth = 1;
};

inline void validate(const EnsembleConfig& c) {
    if (c.steps < 1) fail(ErrorCode::InvalidConfig, "--steps must be >= 1");
    if (c.trajectories < 1) fail(ErrorCode::InvalidConfig, "--trajectories must be >= 1");
    if (c.threads < 1) fail(ErrorCode::InvalidConfig, "--threads must be >= 1");
    if (c.prefix_depth < 1) fail(ErrorCode::InvalidConfig, "prefix depth must be >= 1");
}

template <class T, class Fn>
std::vector<T> ensemble_collect(std::size_t count, unsigned threads, Fn&& fn) {
    std::vector<T> out(count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            out[i] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(count));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

struct TrajectorySummary {
    std::int64_t final_depth = 0;
    std::int64_t toward_steps = 0;
    std::int64_t max_z = 0;
    bool prefix_determined = false;
    Word prefix;
};

inline TrajectorySummary summarize(const Trajectory& t, std::size_t prefix_depth) {
    TrajectorySummary s;
    const std::size_t n = t.steps();
    const std::size_t window_start = n - n / 4;
    bool stable = n > 0;
    std::int64_t prev_z = 0;
    Word last;
    t.scan([&](std::size_t i, const Word& w, std::size_t confl) {
        const auto z = 2 * static_cast<std::int64_t>(confl) - static_cast<std::int64_t>(w.size());
        if (i > 0 && z > prev_z) ++s.toward_steps;
        prev_z = z;
        s.max_z = std::max(s.max_z, z);
        if (i >= window_start && w.size() < prefix_depth) stable = false;
        if (i == n) last = w;
    });
    s.final_depth = static_cast<std::int64_t>(last.size());
    if (stable) {
        last.resize(prefix_depth);
        s.prefix_determined = true;
        s.prefix = std::move(last);
    }
    return s;
}

struct CylinderCount {
    Word prefix;            // empty with determined=false means "undetermined"
    bool determined = true;
    std::size_t count = 0;
    double frequency = 0.0;
};

struct EnsembleStats {
    std::size_t trajectories = 0;
    std::size_t steps = 0;
    std::uint64_t master_seed = 0;
    Estimate drift;
    Estimate toward_frequency;
    Estimate stabilization;
    std::vector<CylinderCount> cylinders;  // sorted by prefix, undetermined last
};

inline std::vector<TrajectorySummary> ensemble_summaries(const EnsembleConfig& c) {
    validate(c);
    return ensemble_collect<TrajectorySummary>(c.trajectories, c.threads, [&](std::size_t i) {
        return summarize(sample_path(c.measure, c.steps, trajectory_seed(c.master_seed, i)),
                         c.prefix_depth);
    });
}

inline EnsembleStats ensemble_run(const EnsembleConfig& c) {
    const auto summaries = ensemble_summaries(c);
    EnsembleStats stats;
    stats.trajectories = c.trajectories;
    stats.steps = c.steps;
    stats.master_seed = c.master_seed;
    const auto n = static_cast<double>(c.steps);
    std::vector<double> drift, toward, stab;
    drift.reserve(summaries.size());
    toward.reserve(summaries.size());
    stab.reserve(summaries.size());
    std::map<Word, std::size_t> cyl;
    std::size_t undetermined = 0;
    for (const auto& s : summaries) {
        drift.push_back(static_cast<double>(s.final_depth) / n);
        toward.push_back(static_cast<double>(s.toward_steps) / n);
        stab.push_back(static_cast<double>(s.max_z) / n);
        if (s.prefix_determined) ++cyl[s.prefix];
        else ++undetermined;
    }
    stats.drift = detail::mean_with_stderr(drift);
    stats.toward_frequency = detail::mean_with_stderr(toward);
    stats.stabilization = detail::mean_with_stderr(stab);
    for (const auto& [prefix, count] : cyl)
        stats.cylinders.push_back(CylinderCount{prefix, true, count,
                                                static_cast<double>(count) / static_cast<double>(c.trajectories)});
    if (undetermined > 0)
        stats.cylinders.push_back(CylinderCount{{}, false, undetermined,
                                                static_cast<double>(undetermined) /
                                                    static_cast<double>(c.trajectories)});
    return stats;
}

}  // namespace treewalk
