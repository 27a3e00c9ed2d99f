// Acceptance gate: one line per criterion, nonzero exit if any fails.
// argv[1] must be the path to the CLI binary (used by the determinism check).

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "treewalk/central_measures.hpp"
#include "treewalk/martin.hpp"
#include "treewalk/numeric.hpp"
#include "treewalk/simulator.hpp"
#include "treewalk/tree.hpp"
#include "treewalk/walk_counts.hpp"

namespace {

using namespace treewalk;

// Returns std::nullopt on success, otherwise a short failure description.
using Outcome = std::optional<std::string>;

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

double three_sigma(double p, double n) { return 3.0 * std::sqrt(p * (1.0 - p) / n); }

Outcome formula_matches_oracle() {
    for (int q : {1, 2, 3, 5}) {
        const auto table = walk_count_dp_table(q, 60);
        for (std::int64_t n = 0; n <= 60; ++n)
            for (std::int64_t k = n % 2; k <= n; k += 2) {
                const BigInt lhs = walk_count_formula(q, n, k);
                if (lhs != table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)])
                    return "formula != dp at q=" + std::to_string(q) + " n=" + std::to_string(n) +
                           " k=" + std::to_string(k);
                const BigInt tail = walk_count_formula(q, n, k + 2);
                const BigInt step = pow_int(BigInt(q), static_cast<std::uint64_t>((n - k) / 2)) *
                                    ballot_number(n, k);
                if (lhs != tail + step)
                    return "recurrence fails at q=" + std::to_string(q) + " n=" + std::to_string(n) +
                           " k=" + std::to_string(k);
            }
    }
    return std::nullopt;
}

Outcome line_graph_binomials() {
    for (std::int64_t n = 0; n <= 60; ++n)
        for (std::int64_t k = n % 2; k <= n; k += 2)
            if (walk_count_formula(1, n, k) != binomial(n, (n - k) / 2))
                return "S_1(" + std::to_string(n) + "," + std::to_string(k) + ") != binomial";
    return std::nullopt;
}

Outcome eigen_residual_vanishes() {
    const std::vector<BigRat> xs = {BigRat(1, 5), BigRat(1, 3), BigRat(1, 2),
                                    BigRat(1),    BigRat(2),    BigRat(7, 3)};
    for (int q : {2, 3}) {
        const End omega = parse_end(q, ":0,1");
        for (const BigRat& x : xs) {
            const BigRat res = eigen_residual(x, q, 8, omega);
            if (res != 0)
                return "residual " + format_rational(res) + " at q=" + std::to_string(q) +
                       " x=" + format_rational(x);
        }
    }
    return std::nullopt;
}

Outcome eigenfunction_measure_bijection() {
    const int q = 2;
    const End omega = parse_end(q, ":0,1");
    const Vertex root(q, {});
    std::vector<GradedVertex> bases;
    bases.emplace_back(0, root);
    for (Letter c = 0; c <= 2; ++c) bases.emplace_back(1, root.child(c));
    bases.emplace_back(2, root.child(0).child(1));
    // Rational path: 2*alpha integral, edge probabilities must agree exactly.
    for (const BigRat& alpha : {BigRat(0), BigRat(1, 2), BigRat(1), BigRat(2)}) {
        const Eigenfunction f(omega, alpha);
        const CentralMeasure direct(omega, *r_from_alpha_exact(alpha, q));
        const CentralMeasure bridged = measure_from_eigenfunction(f);
        if (bridged.r != direct.r) return "r mismatch at alpha=" + format_rational(alpha);
        for (const GradedVertex& v : bases)
            for (const auto& entry : transition_distribution(direct, v).entries)
                if (eigen_edge_probability_exact(f, v, entry.target) != entry.probability)
                    return "edge probability mismatch at alpha=" + format_rational(alpha);
    }
    // Float path.
    for (double alpha : {0.3, 0.77}) {
        const Eigenfunction f(omega, rat_from_double(alpha));
        const CentralMeasure direct(omega, rat_from_double(r_from_alpha(alpha, q)));
        for (const GradedVertex& v : bases)
            for (const auto& entry : transition_distribution(direct, v).entries)
                if (std::abs(eigen_edge_probability(f, v, entry.target) -
                             to_double(entry.probability)) > 1e-12)
                    return "edge probability drift at alpha=" + fmt(alpha);
    }
    // Duality r_{1-alpha} = 1 - r_alpha on a 50-point grid.
    for (int i = 0; i < 50; ++i) {
        const double alpha = -2.0 + 0.1 * i;
        if (std::abs(r_from_alpha(1.0 - alpha, q) - (1.0 - r_from_alpha(alpha, q))) > 1e-12)
            return "duality fails at alpha=" + fmt(alpha);
    }
    return std::nullopt;
}

Outcome drift_estimate_matches() {
    const End omega = parse_end(2, ":0,1");
    const EnsembleConfig cfg{CentralMeasure(omega, BigRat(3, 4)), 5000, 1000, 7, 8, 1};
    const EnsembleStats stats = ensemble_run(cfg);
    if (std::abs(stats.drift.value - 0.5) > 0.01)
        return "drift " + fmt(stats.drift.value) + " not within 0.01 of 0.5";
    std::vector<Trajectory> geodesics;
    for (std::uint64_t i = 0; i < 4; ++i)
        geodesics.push_back(sample_path(CentralMeasure(omega, BigRat(1)), 300, i));
    const Estimate exact = drift_estimate(geodesics);
    if (exact.value != 1.0 || exact.stderr_ != 0.0)
        return "r=1 drift is " + fmt(exact.value) + ", expected exactly 1";
    return std::nullopt;
}

Outcome projection_increments_iid() {
    struct Case {
        int q;
        BigRat r;
    };
    for (const Case& c : {Case{2, BigRat(3, 4)}, Case{3, BigRat(3, 5)}}) {
        const End omega = parse_end(c.q, ":0,1");
        const CentralMeasure m(omega, c.r);
        const double r = to_double(c.r);
        const std::size_t steps = 600, trajectories = 400;
        // counts[len][pattern] -> (occurrences, up-moves following the pattern)
        std::map<std::pair<int, unsigned>, std::pair<double, double>> counts;
        for (std::size_t i = 0; i < trajectories; ++i) {
            const Trajectory t = sample_path(m, steps, trajectory_seed(1234, i));
            const auto z = z_projection(t);
            std::vector<int> up(steps);
            for (std::size_t j = 0; j < steps; ++j) up[j] = z[j + 1] > z[j] ? 1 : 0;
            for (int len = 0; len <= 3; ++len)
                for (std::size_t j = static_cast<std::size_t>(len); j < steps; ++j) {
                    unsigned pattern = 0;
                    for (int b = 0; b < len; ++b)
                        pattern = pattern * 2 + static_cast<unsigned>(up[j - static_cast<std::size_t>(len) + static_cast<std::size_t>(b)]);
                    auto& cell = counts[{len, pattern}];
                    cell.first += 1.0;
                    cell.second += up[j];
                }
        }
        for (const auto& [key, cell] : counts) {
            const double freq = cell.second / cell.first;
            if (std::abs(freq - r) > three_sigma(r, cell.first))
                return "conditional frequency " + fmt(freq) + " off r=" + fmt(r) + " for pattern length " +
                       std::to_string(key.first) + " at q=" + std::to_string(c.q);
        }
    }
    return std::nullopt;
}

Outcome subcritical_decomposition() {
    const End omega = parse_end(2, ":0,1");
    const BigRat r(1, 4);
    const EnsembleConfig cfg{CentralMeasure(omega, r), 2000, 20000, 5, 8, 1};
    const auto summaries = ensemble_summaries(cfg);
    std::vector<std::size_t> counts(3, 0);
    std::size_t undetermined = 0;
    for (const auto& s : summaries) {
        if (s.prefix_determined && s.prefix.size() == 1)
            ++counts[s.prefix[0]];
        else
            ++undetermined;
    }
    for (Letter c = 0; c <= 2; ++c) {
        const double expected = to_double(decomposition_cylinder_mass(omega, r, {c}));
        const double freq = static_cast<double>(counts[c]) / static_cast<double>(cfg.trajectories);
        if (std::abs(freq - expected) > 0.02)
            return "cylinder [" + std::to_string(int(c)) + "] frequency " + fmt(freq) +
                   " not within 0.02 of " + fmt(expected);
    }
    if (undetermined > cfg.trajectories / 100)
        return "too many undetermined prefixes: " + std::to_string(undetermined);
    for (int q : {2, 3, 5})
        for (const BigRat& rr : {BigRat(0), BigRat(1, 10), BigRat(1, 4), BigRat(49, 100)}) {
            // Masses are geometric in the confluence level from level 1 on, so the
            // full series collapses to head + first/(1 - ratio), checked exactly.
            const BigRat head = decomposition_density(q, rr, 0) * theta_confluence_class(q, 0);
            const BigRat first = decomposition_density(q, rr, 1) * theta_confluence_class(q, 1);
            const BigRat ratio = rr / (1 - rr);
            const BigRat total = head + (first == 0 ? BigRat(0) : first / (1 - ratio));
            if (total != 1)
                return "density normalization " + format_rational(total) + " at q=" +
                       std::to_string(q) + " r=" + format_rational(rr);
        }
    return std::nullopt;
}

Outcome ruin_fractions_match() {
    const End omega = parse_end(2, ":0,1");
    const BigRat r(1, 3);
    const EnsembleConfig cfg{CentralMeasure(omega, r), 800, 4000, 424242, 8, 1};
    const auto summaries = ensemble_summaries(cfg);
    for (std::int64_t k = 0; k <= 4; ++k) {
        std::size_t hits = 0;
        for (const auto& s : summaries) hits += s.max_z == k;
        const double expected = to_double(ruin_fraction(r, k));
        const double freq = static_cast<double>(hits) / static_cast<double>(cfg.trajectories);
        if (std::abs(freq - expected) > three_sigma(expected, static_cast<double>(cfg.trajectories)))
            return "peak-height fraction " + fmt(freq) + " at k=" + std::to_string(k) +
                   " outside 3 sigma of " + fmt(expected);
    }
    return std::nullopt;
}

Outcome martingale_ratio_converges() {
    const End omega = parse_end(2, ":0,1");
    const CentralMeasure m(omega, BigRat(3, 4));
    const Trajectory t = sample_path(m, 400, 2);
    const std::vector<Vertex> path = {Vertex(2, {}), ray_vertex(omega, 1)};
    std::vector<double> tail;
    for (std::size_t i = 396; i <= 400; ++i)
        tail.push_back(to_double(martingale_check(path, t, i)));
    if (std::abs(tail.back() - 0.75) > 0.02)
        return "ratio " + fmt(tail.back()) + " at i=400 not within 0.02 of 3/4";
    double prev = -1.0;
    for (std::size_t i = 1; i < tail.size(); ++i) {
        const double diff = std::abs(tail[i] - tail[i - 1]);
        if (prev >= 0.0 && diff > prev)
            return "successive differences not decreasing over the last 5 levels";
        prev = diff;
    }
    return std::nullopt;
}

Outcome martin_diagnostics() {
    const int q = 2;
    const Vertex root(q, {});
    const GradedVertex origin(0, root);
    for (const Vertex& v : {root, root.child(0), root.child(0).child(1)})
        for (std::int64_t n = static_cast<std::int64_t>(v.depth()); n <= static_cast<std::int64_t>(v.depth()) + 20; n += 2)
            if (kernel_ratio(origin, v, n) != 1)
                return "kernel at the origin is not 1 for |v|=" + std::to_string(v.depth());
    const double growth = to_double(growth_ratio(q, 0, 400));
    if (std::abs(growth - 8.0) > 0.08)
        return "growth ratio " + fmt(growth) + " at n=400 not within 1% of 8";
    const GradedVertex u(1, root.child(0));
    const SigmaEstimate est = sigma_kernel_estimate(u, root, 400);
    if (!(est.last_difference < 1e-3))
        return "final Cauchy difference " + fmt(est.last_difference) + " not below 1e-3";
    if (!est.tail_decreasing) return "kernel differences not decreasing over the tail";
    return std::nullopt;
}

std::optional<std::string> capture(const std::string& command) {
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return std::nullopt;
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    if (status != 0) return std::nullopt;
    return out;
}

Outcome cli_thread_determinism(const std::string& cli) {
    if (cli.empty()) return "CLI binary path not supplied";
    const std::vector<std::string> invocations = {
        " drift --q 2 --r 3/4 --end :0,1 --steps 400 --trajectories 200 --seed 7 --format json --threads ",
        " ruin --q 2 --r 1/3 --end :0,1 --steps 500 --trajectories 400 --seed 9 --format json --threads ",
    };
    for (const std::string& inv : invocations) {
        const auto one = capture(cli + inv + "1");
        const auto eight = capture(cli + inv + "8");
        if (!one || !eight) return "CLI invocation failed:" + inv;
        if (*one != *eight) return "JSON differs between 1 and 8 threads:" + inv;
        if (one->empty()) return "CLI produced no output:" + inv;
    }
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    struct Criterion {
        std::string description;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"walk-count formula equals the dynamic-programming oracle and its recurrence (q in {1,2,3,5}, n <= 60)",
         formula_matches_oracle},
        {"q=1 walk counts collapse to binomial coefficients (n <= 60)", line_graph_binomials},
        {"averaging eigen-equation residual is exactly zero on radius-8 balls (q in {2,3}, six x values)",
         eigen_residual_vanishes},
        {"eigenfunction measures coincide with directly-parameterized measures; exponent duality holds",
         eigenfunction_measure_bijection},
        {"drift estimate within 0.01 of 1/2 at q=2, r=3/4 (1000 x 5000); r=1 drifts at exactly 1",
         drift_estimate_matches},
        {"projected +1-step frequencies match r within 3 sigma, including all conditioning patterns up to length 3",
         projection_increments_iid},
        {"subcritical limit-prefix frequencies match exact component masses; density normalization is exact",
         subcritical_decomposition},
        {"peak-height fractions of the projection match the exact ruin law within 3 sigma (k <= 4)",
         ruin_fractions_match},
        {"path-count martingale ratio approaches 3/4 along a fixed trajectory with shrinking increments",
         martingale_ratio_converges},
        {"kernel ratio at the origin is identically 1; growth ratio near 8; kernel sequence numerically Cauchy",
         martin_diagnostics},
        {"CLI JSON output is byte-identical across thread budgets 1 and 8",
         [&cli] { return cli_thread_determinism(cli); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].run();
        } catch (const std::exception& e) {
            outcome = std::string("exception: ") + e.what();
        }
        const bool ok = !outcome.has_value();
        failures += !ok;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << (i + 1) << ". " << criteria[i].description;
        if (!ok) std::cout << " -- " << *outcome;
        std::cout << "\n";
    }
    return failures == 0 ? 0 : 1;
}
