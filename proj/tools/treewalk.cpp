// Command-line front end: every subcommand delegates to the library and
// emits plain text, CSV, or schema-versioned JSON. Exit codes: 0 success,
// 2 invalid configuration or domain error, 3 internal invariant violation
// (including failed `verify` properties).

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treewalk/central_measures.hpp"
#include "treewalk/martin.hpp"
#include "treewalk/numeric.hpp"
#include "treewalk/simulator.hpp"
#include "treewalk/tree.hpp"
#include "treewalk/verify.hpp"
#include "treewalk/walk_counts.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace treewalk;

constexpr const char* kSchema = "treewalk/1";

std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

std::string csv_quote(const std::string& field) {
    if (field.find(',') == std::string::npos && field.find('"') == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

json rational_json(const BigRat& x) {
    return json{{"exact", format_rational(x)}, {"float", to_double(x)}};
}

json estimate_json(const Estimate& e) {
    return json{{"value", e.value}, {"stderr", e.stderr_}};
}

struct Report {
    json payload;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    std::string plain;
};

void emit(const Report& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.payload.dump() << "\n";
    } else if (format == "csv") {
        std::string line;
        for (std::size_t i = 0; i < report.csv_header.size(); ++i) {
            if (i) line += ',';
            line += csv_quote(report.csv_header[i]);
        }
        std::cout << line << "\n";
        for (const auto& row : report.csv_rows) {
            line.clear();
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) line += ',';
                line += csv_quote(row[i]);
            }
            std::cout << line << "\n";
        }
    } else {
        std::cout << report.plain;
    }
}

Word parse_site_word(const std::string& text) {
    if (text.empty() || text == "e") return {};
    Word w;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string tok = text.substr(pos, comma - pos);
        if (tok.empty()) fail(ErrorCode::InvalidConfig, "empty letter in site word '" + text + "'");
        std::size_t used = 0;
        unsigned long val = 0;
        try {
            val = std::stoul(tok, &used);
        } catch (const std::exception&) {
            fail(ErrorCode::InvalidConfig, "bad letter '" + tok + "' in site word");
        }
        if (used != tok.size()) fail(ErrorCode::InvalidConfig, "bad letter '" + tok + "' in site word");
        w.push_back(static_cast<Letter>(val));
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return w;
}

unsigned default_threads() {
    if (const char* env = std::getenv("TREEWALK_THREADS")) {
        try {
            const unsigned long v = std::stoul(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        fail(ErrorCode::InvalidConfig, "TREEWALK_THREADS must be a positive integer");
    }
    return 1;
}

struct MeasureArgs {
    int q = 2;
    std::string end_spec = ":0,1";
    std::string r_text;
    std::string alpha_text;

    CentralMeasure make() const {
        const End omega = parse_end(q, end_spec);
        if (!r_text.empty() && !alpha_text.empty())
            fail(ErrorCode::InvalidConfig, "--r and --alpha are mutually exclusive");
        if (!r_text.empty()) return CentralMeasure(omega, parse_rational(r_text));
        if (!alpha_text.empty())
            return measure_from_eigenfunction(Eigenfunction(omega, parse_rational(alpha_text)));
        fail(ErrorCode::InvalidConfig, "one of --r or --alpha is required");
    }

    json params_json() const {
        const CentralMeasure m = make();
        json out{{"q", q}, {"end", m.end.str()}, {"r", rational_json(m.r)}};
        if (!alpha_text.empty()) out["alpha"] = alpha_text;
        return out;
    }
};

void add_measure_options(CLI::App* cmd, MeasureArgs& args) {
    cmd->add_option("--q", args.q, "branching number (valency q+1)");
    cmd->add_option("--end", args.end_spec, "directing end as 'pre:PER' (default ':0,1')");
    cmd->add_option("--r", args.r_text, "transition weight toward the end, rational or decimal");
    cmd->add_option("--alpha", args.alpha_text, "eigenfunction exponent instead of --r");
}

Report run_count(int q, std::int64_t n, std::int64_t k) {
    const BigInt count = walk_count_formula(q, n, k);
    Report rep;
    rep.payload = json{{"schema", kSchema}, {"command", "count"}, {"q", q},
                       {"n", n},            {"k", k},             {"count", count.str()}};
    rep.csv_header = {"q", "n", "k", "count"};
    rep.csv_rows = {{std::to_string(q), std::to_string(n), std::to_string(k), count.str()}};
    rep.plain = count.str() + "\n";
    return rep;
}

Report run_dim(int q, std::int64_t from_level, const std::string& from_site, std::int64_t to_level,
               const std::string& to_site) {
    const GradedVertex x(from_level, make_vertex(q, parse_site_word(from_site)));
    const GradedVertex y(to_level, make_vertex(q, parse_site_word(to_site)));
    const BigInt d = dim_graded(x, y);
    Report rep;
    rep.payload = json{{"schema", kSchema},
                       {"command", "dim"},
                       {"q", q},
                       {"from", json{{"level", x.level}, {"site", x.site.str()}}},
                       {"to", json{{"level", y.level}, {"site", y.site.str()}}},
                       {"dim", d.str()}};
    rep.csv_header = {"q", "from_level", "from_site", "to_level", "to_site", "dim"};
    rep.csv_rows = {{std::to_string(q), std::to_string(x.level), x.site.str(),
                     std::to_string(y.level), y.site.str(), d.str()}};
    rep.plain = d.str() + "\n";
    return rep;
}

Report run_sample(const MeasureArgs& margs, std::size_t steps, std::uint64_t seed) {
    const CentralMeasure m = margs.make();
    const Trajectory t = sample_path(m, steps, seed);
    Report rep;
    rep.payload = json{{"schema", kSchema}, {"command", "sample"}};
    rep.payload.update(margs.params_json());
    rep.payload["steps"] = steps;
    rep.payload["seed"] = seed;
    json rows = json::array();
    rep.csv_header = {"step", "site", "depth", "z"};
    std::ostringstream plain;
    t.scan([&](std::size_t i, const Word& w, std::size_t confl) {
        const auto z = 2 * static_cast<std::int64_t>(confl) - static_cast<std::int64_t>(w.size());
        const Vertex site(m.q(), w);
        rows.push_back(json{{"step", i}, {"site", site.str()}, {"depth", w.size()}, {"z", z}});
        rep.csv_rows.push_back({std::to_string(i), site.str(), std::to_string(w.size()),
                                std::to_string(z)});
        plain << i << "  " << site.str() << "  z=" << z << "\n";
    });
    rep.payload["sites"] = std::move(rows);
    rep.plain = plain.str();
    return rep;
}

Report run_drift(const MeasureArgs& margs, std::size_t steps, std::size_t trajectories,
                 std::uint64_t seed, unsigned threads, std::size_t prefix_depth) {
    const EnsembleConfig cfg{margs.make(), steps, trajectories, seed, threads, prefix_depth};
    const EnsembleStats stats = ensemble_run(cfg);
    Report rep;
    rep.payload = json{{"schema", kSchema}, {"command", "drift"}};
    rep.payload.update(margs.params_json());
    rep.payload["steps"] = steps;
    rep.payload["trajectories"] = trajectories;
    rep.payload["seed"] = seed;
    rep.payload["drift"] = estimate_json(stats.drift);
    rep.payload["toward_frequency"] = estimate_json(stats.toward_frequency);
    rep.payload["stabilization"] = estimate_json(stats.stabilization);
    json cylinders = json::array();
    for (const auto& cyl : stats.cylinders)
        cylinders.push_back(json{{"prefix", cyl.determined ? Vertex(cfg.measure.q(), cyl.prefix).str()
                                                           : std::string("undetermined")},
                                 {"count", cyl.count},
                                 {"frequency", cyl.frequency}});
    rep.payload["cylinders"] = std::move(cylinders);
    rep.csv_header = {"trajectories", "steps", "seed", "drift", "drift_stderr",
                      "toward_frequency", "toward_stderr", "stabilization", "stabilization_stderr"};
    rep.csv_rows = {{std::to_string(trajectories), std::to_string(steps), std::to_string(seed),
                     format_double(stats.drift.value), format_double(stats.drift.stderr_),
                     format_double(stats.toward_frequency.value),
                     format_double(stats.toward_frequency.stderr_),
                     format_double(stats.stabilization.value),
                     format_double(stats.stabilization.stderr_)}};
    std::ostringstream plain;
    plain << "drift = " << stats.drift.value << " +- " << stats.drift.stderr_ << " ("
          << trajectories << " trajectories x " << steps << " steps, seed " << seed << ")\n"
          << "toward frequency = " << stats.toward_frequency.value << " +- "
          << stats.toward_frequency.stderr_ << "\n"
          << "stabilization = " << stats.stabilization.value << " +- "
          << stats.stabilization.stderr_ << "\n";
    rep.plain = plain.str();
    return rep;
}

Report run_zproj(const MeasureArgs& margs, std::size_t steps, std::uint64_t seed) {
    const CentralMeasure m = margs.make();
    const Trajectory t = sample_path(m, steps, seed);
    const auto z = z_projection(t);
    std::size_t plus = 0;
    for (std::size_t i = 1; i < z.size(); ++i) plus += z[i] > z[i - 1];
    Report rep;
    rep.payload = json{{"schema", kSchema}, {"command", "zproj"}};
    rep.payload.update(margs.params_json());
    rep.payload["steps"] = steps;
    rep.payload["seed"] = seed;
    rep.payload["plus_steps"] = plus;
    rep.payload["plus_frequency"] =
        steps == 0 ? 0.0 : static_cast<double>(plus) / static_cast<double>(steps);
    rep.payload["z"] = z;
    rep.csv_header = {"step", "z"};
    std::ostringstream plain;
    for (std::size_t i = 0; i < z.size(); ++i) {
        rep.csv_rows.push_back({std::to_string(i), std::to_string(z[i])});
        plain << i << "  " << z[i] << "\n";
    }
    rep.plain = plain.str();
    return rep;
}

Report run_ruin(const MeasureArgs& margs, std::size_t steps, std::size_t trajectories,
                std::uint64_t seed, unsigned threads, std::int64_t kmax) {
    const EnsembleConfig cfg{margs.make(), steps, trajectories, seed, threads, 1};
    check_subcritical(cfg.measure.r);
    if (kmax < 0) fail(ErrorCode::InvalidConfig, "--kmax must be nonnegative");
    const auto summaries = ensemble_summaries(cfg);
    std::vector<std::size_t> counts(static_cast<std::size_t>(kmax) + 1, 0);
    for (const auto& s : summaries)
        if (s.max_z >= 0 && s.max_z <= kmax) ++counts[static_cast<std::size_t>(s.max_z)];
    Report rep;
    rep.payload = json{{"schema", kSchema}, {"command", "ruin"}};
    rep.payload.update(margs.params_json());
    rep.payload["steps"] = steps;
    rep.payload["trajectories"] = trajectories;
    rep.payload["seed"] = seed;
    json rows = json::array();
    rep.csv_header = {"k", "expected_exact", "expected_float", "observed", "count"};
    std::ostringstream plain;
    for (std::int64_t k = 0; k <= kmax; ++k) {
        const BigRat expected = ruin_fraction(cfg.measure.r, k);
        const double observed =
            static_cast<double>(counts[static_cast<std::size_t>(k)]) / static_cast<double>(trajectories);
        rows.push_back(json{{"k", k},
                            {"expected", rational_json(expected)},
                            {"observed", observed},
                            {"count", counts[static_cast<std::size_t>(k)]}});
        rep.csv_rows.push_back({std::to_string(k), format_rational(expected),
                                format_double(to_double(expected)), format_double(observed),
                                std::to_string(counts[static_cast<std::size_t>(k)])});
        plain << "k=" << k << "  expected " << format_rational(expected) << " ("
              << to_double(expected) << ")  observed " << observed << "\n";
    }
    rep.payload["rows"] = std::move(rows);
    rep.plain = plain.str();
    return rep;
}

Report run_decompose(int q, const std::string& end_spec, const std::string& r_text,
                     std::size_t depth) {
    const End omega = parse_end(q, end_spec);
    const BigRat r = parse_rational(r_text);
    check_subcritical(r);
    std::vector<Word> prefixes{{}};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<Word> next;
        for (const Word& w : prefixes)
            for (Letter c = 0; c <= static_cast<Letter>(q); ++c) {
                if (!w.empty() && w.back() == c) continue;
                Word ext = w;
                ext.push_back(c);
                next.push_back(std::move(ext));
            }
        prefixes = std::move(next);
    }
    Report rep;
    rep.payload = json{{"schema", kSchema}, {"command", "decompose"}, {"q", q},
                       {"end", omega.str()}, {"r", rational_json(r)},  {"depth", depth}};
    json rows = json::array();
    rep.csv_header = {"prefix", "exact", "float"};
    std::ostringstream plain;
    BigRat total = 0;
    for (const Word& w : prefixes) {
        const BigRat mass = decomposition_cylinder_mass(omega, r, w);
        total += mass;
        const std::string name = Vertex(q, w).str();
        rows.push_back(json{{"prefix", name}, {"exact", format_rational(mass)}, {"float", to_double(mass)}});
        rep.csv_rows.push_back({name, format_rational(mass), format_double(to_double(mass))});
        plain << name << "  " << format_rational(mass) << "  (" << to_double(mass) << ")\n";
    }
    if (total != 1) throw InvariantViolation("cylinder masses of a fixed depth must sum to 1");
    rep.payload["rows"] = std::move(rows);
    rep.plain = plain.str();
    return rep;
}

Report run_eigen(int q, const std::string& x_text, int radius, const std::string& end_spec) {
    const End omega = parse_end(q, end_spec);
    const BigRat x = parse_rational(x_text);
    const BigRat s = eigenvalue_s_from_x(x, q);
    const BigRat residual = eigen_residual(x, q, radius, omega);
    Report rep;
    rep.payload = json{{"schema", kSchema}, {"command", "eigen"},          {"q", q},
                       {"end", omega.str()}, {"x", rational_json(x)},       {"s", rational_json(s)},
                       {"radius", radius},   {"residual", rational_json(residual)}};
    rep.csv_header = {"x", "s_exact", "s_float", "radius", "residual_exact", "residual_float"};
    rep.csv_rows = {{format_rational(x), format_rational(s), format_double(to_double(s)),
                     std::to_string(radius), format_rational(residual),
                     format_double(to_double(residual))}};
    std::ostringstream plain;
    plain << "s = " << format_rational(s) << " (" << to_double(s) << ")\n"
          << "residual over radius-" << radius << " ball = " << format_rational(residual) << "\n";
    rep.plain = plain.str();
    return rep;
}

Report run_martin(int q, std::int64_t level, const std::string& site, const std::string& target,
                  std::int64_t n_max) {
    const GradedVertex u(level, make_vertex(q, parse_site_word(site)));
    const Vertex v = make_vertex(q, parse_site_word(target));
    const KernelSequence seq = kernel_sequence(u, v, n_max);
    Report rep;
    rep.payload = json{{"schema", kSchema},
                       {"command", "martin"},
                       {"q", q},
                       {"base", json{{"level", u.level}, {"site", u.site.str()}}},
                       {"target", v.str()},
                       {"n_max", n_max}};
    json rows = json::array();
    rep.csv_header = {"n", "exact", "float"};
    std::ostringstream plain;
    for (const auto& [n, value] : seq.values) {
        rows.push_back(json{{"n", n}, {"exact", format_rational(value)}, {"float", to_double(value)}});
        rep.csv_rows.push_back({std::to_string(n), format_rational(value),
                                format_double(to_double(value))});
        plain << n << "  " << format_rational(value) << "  (" << to_double(value) << ")\n";
    }
    rep.payload["rows"] = std::move(rows);
    if (seq.values.size() >= 4) {
        const SigmaEstimate est = sigma_kernel_estimate(u, v, n_max);
        rep.payload["estimate"] = json{{"value", est.value},
                                       {"last_difference", est.last_difference},
                                       {"tail_decreasing", est.tail_decreasing},
                                       {"evaluations", est.evaluations}};
        plain << "estimate " << est.value << "  last difference " << est.last_difference << "\n";
    }
    rep.plain = plain.str();
    return rep;
}

Report run_verify() {
    const auto results = run_property_suite();
    Report rep;
    rep.payload = json{{"schema", kSchema}, {"command", "verify"}};
    json rows = json::array();
    rep.csv_header = {"property", "status", "detail"};
    std::ostringstream plain;
    bool all_passed = true;
    for (const auto& res : results) {
        all_passed = all_passed && res.passed;
        rows.push_back(json{{"property", res.name}, {"passed", res.passed}, {"detail", res.detail}});
        rep.csv_rows.push_back({res.name, res.passed ? "pass" : "fail", res.detail});
        plain << (res.passed ? "[PASS] " : "[FAIL] ") << res.name;
        if (!res.passed) plain << "  " << res.detail;
        plain << "\n";
    }
    rep.payload["results"] = std::move(rows);
    rep.payload["all_passed"] = all_passed;
    rep.plain = plain.str();
    if (!all_passed) {
        emit(rep, "plain");
        throw InvariantViolation("property suite failed");
    }
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and sampled random-walk boundary toolkit for homogeneous trees"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "plain";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "plain"}));

    int count_q = 2;
    std::int64_t count_n = 0, count_k = 0;
    auto* cmd_count = app.add_subcommand("count", "exact number of length-n walks to distance k");
    cmd_count->add_option("--q", count_q, "branching number")->required();
    cmd_count->add_option("--n", count_n, "walk length")->required();
    cmd_count->add_option("--k", count_k, "endpoint distance")->required();

    int dim_q = 2;
    std::int64_t dim_from_level = 0, dim_to_level = 0;
    std::string dim_from_site = "e", dim_to_site = "e";
    auto* cmd_dim = app.add_subcommand("dim", "path count between graded vertices");
    cmd_dim->add_option("--q", dim_q, "branching number")->required();
    cmd_dim->add_option("--from-level", dim_from_level, "base level (default 0)");
    cmd_dim->add_option("--from-site", dim_from_site, "base site word (default root)");
    cmd_dim->add_option("--level", dim_to_level, "target level")->required();
    cmd_dim->add_option("--site", dim_to_site, "target site word");

    MeasureArgs sample_args;
    std::size_t sample_steps = 10;
    std::uint64_t sample_seed = 0;
    auto* cmd_sample = app.add_subcommand("sample", "sample one trajectory of the directed measure");
    add_measure_options(cmd_sample, sample_args);
    cmd_sample->add_option("--steps", sample_steps, "trajectory length");
    cmd_sample->add_option("--seed", sample_seed, "seed (default 0)");

    MeasureArgs drift_args;
    std::size_t drift_steps = 1000, drift_traj = 100, drift_prefix = 1;
    std::uint64_t drift_seed = 0;
    unsigned drift_threads = 0;
    auto* cmd_drift = app.add_subcommand("drift", "ensemble drift and stabilization estimates");
    add_measure_options(cmd_drift, drift_args);
    cmd_drift->add_option("--steps", drift_steps, "steps per trajectory");
    cmd_drift->add_option("--trajectories", drift_traj, "ensemble size");
    cmd_drift->add_option("--seed", drift_seed, "master seed (default 0)");
    cmd_drift->add_option("--threads", drift_threads, "worker threads (default TREEWALK_THREADS or 1)");
    cmd_drift->add_option("--prefix-depth", drift_prefix, "limit-end prefix depth (default 1)");

    MeasureArgs zproj_args;
    std::size_t zproj_steps = 100;
    std::uint64_t zproj_seed = 0;
    auto* cmd_zproj = app.add_subcommand("zproj", "integer projection of one trajectory");
    add_measure_options(cmd_zproj, zproj_args);
    cmd_zproj->add_option("--steps", zproj_steps, "trajectory length");
    cmd_zproj->add_option("--seed", zproj_seed, "seed (default 0)");

    MeasureArgs ruin_args;
    std::size_t ruin_steps = 800, ruin_traj = 2000;
    std::uint64_t ruin_seed = 0;
    unsigned ruin_threads = 0;
    std::int64_t ruin_kmax = 4;
    auto* cmd_ruin = app.add_subcommand("ruin", "peak heights of the projection vs exact fractions");
    add_measure_options(cmd_ruin, ruin_args);
    cmd_ruin->add_option("--steps", ruin_steps, "steps per trajectory");
    cmd_ruin->add_option("--trajectories", ruin_traj, "ensemble size");
    cmd_ruin->add_option("--seed", ruin_seed, "master seed (default 0)");
    cmd_ruin->add_option("--threads", ruin_threads, "worker threads (default TREEWALK_THREADS or 1)");
    cmd_ruin->add_option("--kmax", ruin_kmax, "largest peak height to report");

    int dec_q = 2;
    std::string dec_end = ":0,1", dec_r;
    std::size_t dec_depth = 1;
    auto* cmd_dec = app.add_subcommand("decompose", "exact ergodic-component masses by cylinder");
    cmd_dec->add_option("--q", dec_q, "branching number");
    cmd_dec->add_option("--end", dec_end, "directing end");
    cmd_dec->add_option("--r", dec_r, "subcritical transition weight")->required();
    cmd_dec->add_option("--depth", dec_depth, "cylinder depth (default 1)");

    int eigen_q = 2, eigen_radius = 6;
    std::string eigen_x, eigen_end = ":0,1";
    auto* cmd_eigen = app.add_subcommand("eigen", "residual of the averaging eigen-equation");
    cmd_eigen->add_option("--q", eigen_q, "branching number");
    cmd_eigen->add_option("--x", eigen_x, "rational x = q^-alpha")->required();
    cmd_eigen->add_option("--radius", eigen_radius, "ball radius (default 6)");
    cmd_eigen->add_option("--end", eigen_end, "directing end");

    int martin_q = 2;
    std::int64_t martin_level = 0, martin_nmax = 200;
    std::string martin_site = "e", martin_target = "e";
    auto* cmd_martin = app.add_subcommand("martin", "kernel ratios along the level sequence");
    cmd_martin->add_option("--q", martin_q, "branching number");
    cmd_martin->add_option("--level", martin_level, "base level");
    cmd_martin->add_option("--site", martin_site, "base site word");
    cmd_martin->add_option("--target", martin_target, "target site word");
    cmd_martin->add_option("--nmax", martin_nmax, "largest level to evaluate");

    auto* cmd_verify = app.add_subcommand("verify", "run the full property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Report rep;
        if (cmd_count->parsed()) {
            rep = run_count(count_q, count_n, count_k);
        } else if (cmd_dim->parsed()) {
            rep = run_dim(dim_q, dim_from_level, dim_from_site, dim_to_level, dim_to_site);
        } else if (cmd_sample->parsed()) {
            rep = run_sample(sample_args, sample_steps, sample_seed);
        } else if (cmd_drift->parsed()) {
            rep = run_drift(drift_args, drift_steps, drift_traj, drift_seed,
                            drift_threads ? drift_threads : default_threads(), drift_prefix);
        } else if (cmd_zproj->parsed()) {
            rep = run_zproj(zproj_args, zproj_steps, zproj_seed);
        } else if (cmd_ruin->parsed()) {
            rep = run_ruin(ruin_args, ruin_steps, ruin_traj, ruin_seed,
                           ruin_threads ? ruin_threads : default_threads(), ruin_kmax);
        } else if (cmd_dec->parsed()) {
            rep = run_decompose(dec_q, dec_end, dec_r, dec_depth);
        } else if (cmd_eigen->parsed()) {
            rep = run_eigen(eigen_q, eigen_x, eigen_radius, eigen_end);
        } else if (cmd_martin->parsed()) {
            rep = run_martin(martin_q, martin_level, martin_site, martin_target, martin_nmax);
        } else if (cmd_verify->parsed()) {
            rep = run_verify();
        }
        emit(rep, format);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
