#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <optional>
#include <sstream>
#include <utility>

#include "poisson_approx/bounds.hpp"
#include "poisson_approx/discrete_dist.hpp"
#include "poisson_approx/distances.hpp"
#include "poisson_approx/hypo_tests.hpp"
#include "poisson_approx/lambda_opt.hpp"
#include "poisson_approx/monotonicity.hpp"
#include "poisson_approx/parallel.hpp"
#include "poisson_approx/version.hpp"

namespace poisson_approx::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

// Cell text matches the JSON serialization of the same value, so both
// formats carry identical numeric content.
std::string cell(const ordered_json& v) {
    if (v.is_string()) return csv_escape(v.get<std::string>());
    return csv_escape(v.dump());
}

bool is_flat_object(const ordered_json& j) {
    if (!j.is_object()) return false;
    for (const auto& item : j.items())
        if (item.value().is_object() || item.value().is_array()) return false;
    return true;
}

bool is_table(const ordered_json& j) {
    if (!j.is_array() || j.empty()) return false;
    for (const auto& row : j)
        if (!is_flat_object(row)) return false;
    return true;
}

void flatten(const ordered_json& j, const std::string& prefix,
             std::string& rows,
             std::vector<std::pair<std::string, const ordered_json*>>& tables) {
    if (j.is_object()) {
        for (const auto& item : j.items())
            flatten(item.value(), prefix.empty() ? item.key() : prefix + "." + item.key(),
                    rows, tables);
    } else if (is_table(j)) {
        tables.emplace_back(prefix, &j);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "." + std::to_string(i), rows, tables);
    } else {
        rows += csv_escape(prefix);
        rows += ',';
        rows += cell(j);
        rows += "\r\n";
    }
}

}  // namespace

ordered_json OutputEnvelope::to_json() const {
    ordered_json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["results"] = results;
    j["artifact_version"] = artifact_version;
    return j;
}

OutputEnvelope OutputEnvelope::from_json(const ordered_json& j) {
    OutputEnvelope env;
    env.command = j.at("command").get<std::string>();
    env.inputs = j.at("inputs");
    env.results = j.at("results");
    env.artifact_version = j.at("artifact_version").get<std::string>();
    return env;
}

std::string OutputEnvelope::to_csv() const {
    // The power curve is a plain (p, power) table.
    if (command == "power" && results.contains("curve") && is_table(results["curve"])) {
        std::string out = "p,power\r\n";
        for (const auto& row : results["curve"]) {
            out += cell(row.at("p"));
            out += ',';
            out += cell(row.at("power"));
            out += "\r\n";
        }
        return out;
    }
    std::string out;
    out += "command," + csv_escape(command) + "\r\n";
    out += "artifact_version," + csv_escape(artifact_version) + "\r\n";
    std::vector<std::pair<std::string, const ordered_json*>> tables;
    flatten(inputs, "input", out, tables);
    flatten(results, "result", out, tables);
    for (const auto& [path, table] : tables) {
        out += "\r\n";
        out += csv_escape(path);
        out += "\r\n";
        const ordered_json& first = (*table)[0];
        std::string header;
        for (const auto& item : first.items()) {
            if (!header.empty()) header += ',';
            header += csv_escape(item.key());
        }
        out += header + "\r\n";
        for (const auto& row : *table) {
            std::string line;
            for (const auto& item : first.items()) {
                if (!line.empty()) line += ',';
                line += cell(row.at(item.key()));
            }
            out += line + "\r\n";
        }
    }
    return out;
}

namespace {

int emit(const OutputEnvelope& env, const std::string& format, std::ostream& out) {
    if (format == "csv")
        out << env.to_csv();
    else
        out << env.to_json().dump(2) << "\n";
    return 0;
}

OutputEnvelope make_envelope(const std::string& command) {
    OutputEnvelope env;
    env.command = command;
    env.artifact_version = artifact_version;
    return env;
}

ordered_json report_json(const MonotonicityReport& rep) {
    ordered_json j;
    j["claim"] = to_string(rep.claim);
    j["grid_size"] = rep.grid_size;
    j["min_margin"] = rep.min_margin;
    j["violations"] = rep.violations;
    j["certified"] = rep.certified();
    return j;
}

ordered_json design_json(const TestDesign& d) {
    ordered_json j;
    j["direction"] = to_string(d.direction);
    j["n"] = d.n;
    j["p0"] = d.p0.text();
    j["alpha"] = d.alpha;
    if (d.direction == TestDirection::two_sided) {
        j["m1"] = d.m1;
        j["m2"] = d.m2;
    } else {
        j["m"] = d.m;
    }
    j["poisson_level"] = d.poisson_level;
    j["exact_binomial_level"] = d.exact_binomial_level;
    return j;
}

TestDesign design_from_json(const ordered_json& spec) {
    const ordered_json& j = spec.contains("results") ? spec["results"] : spec;
    TestDesign d;
    std::string dir = j.at("direction").get<std::string>();
    if (dir == "right") d.direction = TestDirection::right;
    else if (dir == "left") d.direction = TestDirection::left;
    else if (dir == "two-sided") d.direction = TestDirection::two_sided;
    else throw std::invalid_argument("power: unknown direction '" + dir + "'");
    d.n = j.at("n").get<std::int64_t>();
    d.p0 = DecimalProb::parse(j.at("p0").get<std::string>());
    if (j.contains("alpha")) d.alpha = j.at("alpha").get<double>();
    if (d.direction == TestDirection::two_sided) {
        d.m1 = j.at("m1").get<std::int64_t>();
        d.m2 = j.at("m2").get<std::int64_t>();
    } else {
        d.m = j.at("m").get<std::int64_t>();
    }
    if (j.contains("poisson_level")) d.poisson_level = j.at("poisson_level").get<double>();
    if (j.contains("exact_binomial_level"))
        d.exact_binomial_level = j.at("exact_binomial_level").get<double>();
    return d;
}

struct VerifyArgs {
    std::string claim;
    std::vector<double> lambdas;
    std::int64_t m_max = 12;
    std::int64_t n_max = 200;
    std::size_t count = 10000;
    std::uint64_t seed = 20250801;
    unsigned threads = 0;
};

int run_verify(const VerifyArgs& args, const std::string& format,
               std::ostream& out) {
    std::vector<double> lambdas =
        args.lambdas.empty() ? std::vector<double>{0.5, 1.0, 2.0, 5.0} : args.lambdas;

    std::vector<MonotonicityReport> reports;
    if (args.claim == "T1i") {
        reports.push_back(certify_theorem1(Theorem1Verdict::greater, args.count,
                                           args.seed, args.threads));
    } else if (args.claim == "T1ii") {
        reports.push_back(certify_theorem1(Theorem1Verdict::less, args.count,
                                           args.seed, args.threads));
    } else if (args.claim == "C1") {
        auto two = certify_corollary1(lambdas, args.m_max, args.n_max, args.threads);
        reports.insert(reports.end(), two.begin(), two.end());
    } else if (args.claim == "C2") {
        reports.push_back(
            certify_corollary2(lambdas, args.m_max, args.n_max, args.threads));
    } else if (args.claim == "T2") {
        auto two = certify_theorem2(lambdas, args.m_max, args.n_max, args.threads);
        reports.insert(reports.end(), two.begin(), two.end());
    } else if (args.claim == "MLR") {
        const MlrCase cases[] = {{1.0, 0.2}, {2.0, 0.3}, {0.5, 0.1}};
        reports.push_back(certify_mlr(cases, std::min<std::int64_t>(args.n_max, 40),
                                      args.n_max, args.threads));
    } else {
        throw std::invalid_argument("verify: unknown claim '" + args.claim + "'");
    }

    bool all_certified = true;
    ordered_json report_list = ordered_json::array();
    for (const auto& rep : reports) {
        all_certified = all_certified && rep.certified();
        report_list.push_back(report_json(rep));
    }

    OutputEnvelope env = make_envelope("verify");
    env.inputs["claim"] = args.claim;
    env.inputs["lambda"] = lambdas;
    env.inputs["m_max"] = args.m_max;
    env.inputs["n_max"] = args.n_max;
    env.inputs["count"] = args.count;
    env.inputs["seed"] = args.seed;
    env.results["reports"] = report_list;
    env.results["certified"] = all_certified;
    emit(env, format, out);
    return all_certified ? 0 : 1;
}

}  // namespace

namespace {

int run_impl(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{
        "poisson-approx: exact binomial/Poisson probabilities, "
        "total-variation and Kolmogorov distances, optimal Poisson rates, "
        "monotonicity certification, and conservative binomial tests"};
    app.require_subcommand(1);
    std::string format = "json";

    // distance
    auto* dist = app.add_subcommand(
        "distance", "TV and Kolmogorov distance between Binomial(n, p) and Poisson(lambda)");
    dist->alias("dist");
    std::int64_t d_n = 1;
    double d_p = 0.5, d_lambda = 1.0;
    dist->add_option("--n", d_n, "number of trials")->required();
    dist->add_option("--p", d_p, "success probability")->required();
    dist->add_option("--lambda", d_lambda, "Poisson rate")->required();

    // optimal-lambda
    auto* opt = app.add_subcommand(
        "optimal-lambda", "TV-optimal Poisson rate for a Bernoulli(p) law");
    double o_p = 0.5;
    opt->add_option("--p", o_p, "success probability in (0, 1)")->required();

    // bounds
    auto* bnd = app.add_subcommand(
        "bounds", "certified bound table: each bound next to the exact quantity");
    std::int64_t b_n = 1;
    double b_p = 0.5;
    std::optional<double> b_lambda;
    std::optional<std::int64_t> b_m;
    bnd->add_option("--n", b_n, "number of trials")->required();
    bnd->add_option("--p", b_p, "success probability")->required();
    bnd->add_option("--lambda", b_lambda, "rate for the triangle bound");
    bnd->add_option("--m", b_m, "tail threshold for the probability envelope");

    // verify
    auto* ver = app.add_subcommand(
        "verify", "certify a monotonicity claim over a sweep; exit 0 iff certified");
    VerifyArgs v_args;
    ver->add_option("--claim", v_args.claim, "one of T1i, T1ii, C1, C2, T2, MLR")
        ->required()
        ->check(CLI::IsMember({"T1i", "T1ii", "C1", "C2", "T2", "MLR"}));
    ver->add_option("--lambda", v_args.lambdas, "rates to sweep (default 0.5 1 2 5)");
    ver->add_option("--m-max", v_args.m_max, "largest threshold m (default 12)");
    ver->add_option("--n-max", v_args.n_max,
                    "largest n per sequence / MLR search cap (default 200)");
    ver->add_option("--count", v_args.count, "random tuples for T1 (default 10000)");
    ver->add_option("--seed", v_args.seed, "random sweep seed");
    ver->add_option("--threads", v_args.threads,
                    "sweep threads (default: POISSON_APPROX_THREADS or machine)");

    // test-design
    auto* tds = app.add_subcommand(
        "test-design", "conservative test of H0: p = p0 at a Poisson-tail level");
    std::string t_direction = "right";
    std::int64_t t_n = 1;
    std::string t_p0;
    double t_alpha = 0.05;
    tds->add_option("--direction", t_direction, "right, left, or two-sided")
        ->required()
        ->check(CLI::IsMember({"right", "left", "two-sided"}));
    tds->add_option("--n", t_n, "number of trials")->required();
    tds->add_option("--p0", t_p0, "null success probability (decimal literal)")
        ->required();
    tds->add_option("--alpha", t_alpha, "requested level")->required();

    // p-value
    auto* pvc = app.add_subcommand(
        "p-value", "conservative right-tail p-value for an observed count");
    std::int64_t p_n = 1, p_x = 0;
    std::string p_p0;
    pvc->add_option("--n", p_n, "number of trials")->required();
    pvc->add_option("--p0", p_p0, "null success probability (decimal literal)")
        ->required();
    pvc->add_option("--x", p_x, "observed count")->required();

    // power
    auto* pwr = app.add_subcommand(
        "power", "rejection probability of a designed test over a p grid");
    std::string w_design;
    double w_pmin = 0.01, w_pmax = 0.99;
    std::int64_t w_steps = 50;
    pwr->add_option("--design", w_design,
                    "TestDesign JSON: a file path or an inline object")
        ->required();
    pwr->add_option("--p-min", w_pmin, "grid start")->required();
    pwr->add_option("--p-max", w_pmax, "grid end")->required();
    pwr->add_option("--steps", w_steps, "number of grid points");

    for (auto* sc : {dist, opt, bnd, ver, tds, pvc, pwr})
        sc->add_option("--format", format, "output format (json or csv)")
            ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(dist)) {
            DistanceReport rep = distance_report({d_n, d_p}, {d_lambda});
            OutputEnvelope env = make_envelope("distance");
            env.inputs["n"] = d_n;
            env.inputs["p"] = d_p;
            env.inputs["lambda"] = d_lambda;
            env.results["tv"] = rep.tv;
            env.results["kolmogorov"] = rep.kolmogorov;
            return emit(env, format, out);
        }
        if (app.got_subcommand(opt)) {
            OutputEnvelope env = make_envelope("optimal-lambda");
            env.inputs["p"] = o_p;
            env.results["lambda_circ"] = lambda_circ(o_p);
            env.results["lambda_star"] = lambda_star(o_p);
            env.results["min_tv"] = min_tv_value(o_p);
            env.results["delta_p"] = delta_p(o_p);
            LambdaBreakpoints bp = breakpoints(o_p);
            ordered_json bpj;
            bpj["lambda1"] = bp.lambda1;
            if (bp.lambda2) bpj["lambda2"] = *bp.lambda2;
            if (bp.lambda3) bpj["lambda3"] = *bp.lambda3;
            env.results["breakpoints"] = bpj;
            return emit(env, format, out);
        }
        if (app.got_subcommand(bnd)) {
            auto table = bound_table(b_n, b_p, b_lambda, b_m);
            OutputEnvelope env = make_envelope("bounds");
            env.inputs["n"] = b_n;
            env.inputs["p"] = b_p;
            if (b_lambda) env.inputs["lambda"] = *b_lambda;
            if (b_m) env.inputs["m"] = *b_m;
            ordered_json rows = ordered_json::array();
            for (const auto& r : table) {
                ordered_json row;
                row["name"] = to_string(r.name);
                row["bound_value"] = r.bound_value;
                row["exact_value"] = r.exact_value;
                row["slack"] = r.slack;
                rows.push_back(row);
            }
            env.results["table"] = rows;
            return emit(env, format, out);
        }
        if (app.got_subcommand(ver)) return run_verify(v_args, format, out);
        if (app.got_subcommand(tds)) {
            DecimalProb p0 = DecimalProb::parse(t_p0);
            TestDesign d;
            if (t_direction == "right") d = design_right(t_n, p0, t_alpha);
            else if (t_direction == "left") d = design_left(t_n, p0, t_alpha);
            else d = design_two_sided(t_n, p0, t_alpha);
            OutputEnvelope env = make_envelope("test-design");
            env.inputs["direction"] = t_direction;
            env.inputs["n"] = t_n;
            env.inputs["p0"] = t_p0;
            env.inputs["alpha"] = t_alpha;
            env.results = design_json(d);
            return emit(env, format, out);
        }
        if (app.got_subcommand(pvc)) {
            DecimalProb p0 = DecimalProb::parse(p_p0);
            RightPValue pv = p_value_right(p_n, p0, p_x);
            OutputEnvelope env = make_envelope("p-value");
            env.inputs["n"] = p_n;
            env.inputs["p0"] = p_p0;
            env.inputs["x"] = p_x;
            env.results["p_value"] = pv.value;
            env.results["conservative"] = pv.conservative;
            return emit(env, format, out);
        }
        if (app.got_subcommand(pwr)) {
            ordered_json spec;
            if (!w_design.empty() && w_design.front() == '{') {
                spec = ordered_json::parse(w_design);
            } else {
                std::ifstream in(w_design);
                if (!in) throw std::invalid_argument("power: cannot open " + w_design);
                in >> spec;
            }
            TestDesign d = design_from_json(spec);
            if (w_steps < 1) throw std::invalid_argument("power: steps must be >= 1");
            if (!(w_pmin <= w_pmax))
                throw std::invalid_argument("power: need p-min <= p-max");
            std::vector<double> grid;
            grid.reserve(static_cast<std::size_t>(w_steps));
            for (std::int64_t i = 0; i < w_steps; ++i) {
                double t = w_steps == 1 ? 0.0
                                        : static_cast<double>(i) /
                                              static_cast<double>(w_steps - 1);
                grid.push_back(w_pmin + t * (w_pmax - w_pmin));
            }
            std::vector<double> power = power_curve(d, grid);
            OutputEnvelope env = make_envelope("power");
            env.inputs["design"] = design_json(d);
            env.inputs["p_min"] = w_pmin;
            env.inputs["p_max"] = w_pmax;
            env.inputs["steps"] = w_steps;
            ordered_json curve = ordered_json::array();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                ordered_json row;
                row["p"] = grid[i];
                row["power"] = power[i];
                curve.push_back(row);
            }
            env.results["curve"] = curve;
            return emit(env, format, out);
        }
    } catch (const InfeasibleDesign& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace

int run(int argc, const char* const* argv) {
    return run_impl(argc, argv, std::cout);
}

int run(const std::vector<std::string>& args, std::ostream& out) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("poisson-approx");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_impl(static_cast<int>(argv.size()), argv.data(), out);
}

int run(const std::vector<std::string>& args) {
    return run(args, std::cout);
}

}  // namespace poisson_approx::cli
