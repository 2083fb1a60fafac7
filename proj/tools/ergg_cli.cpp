// SPDX-License-Identifier: Apache-2.0
// Command-line front end: analytic tables, Monte Carlo estimates and the acceptance run.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ergg/acceptance.hpp"
#include "ergg/chain.hpp"
#include "ergg/hitting_time.hpp"
#include "ergg/monte_carlo.hpp"
#include "ergg/snapshot.hpp"

namespace {

using namespace ergg;
using json = nlohmann::ordered_json;

enum Exit : int { ok = 0, usage = 1, numerical = 2, verification = 3 };

struct Common {
    std::size_t n = 5;
    double p = 0.5;
    double r = 1.0;
    std::string lambda = "1";
    std::uint64_t seed = 20091012;
    std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
    std::string out;
    std::string format = "csv";
};

struct Cell {
    std::string text;
    std::optional<double> number;
};

Cell num(double v)
{
    char buf[32];
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof buf, "%.0f", v);
    } else {
        std::snprintf(buf, sizeof buf, "%.15g", v);
    }
    return {buf, v};
}

Cell num(std::size_t v) { return num(static_cast<double>(v)); }

Cell text(std::string s) { return {std::move(s), std::nullopt}; }

Cell blank() { return {"", std::nullopt}; }

/// A CSV table whose first `keys` columns identify a row. JSON output uses
/// `reports` when present and otherwise one report per numeric value cell.
struct Table {
    std::vector<std::string> columns;
    std::size_t keys = 1;
    std::vector<std::vector<Cell>> rows;
    std::vector<EstimateReport> reports;
};

json optional_number(std::optional<double> v)
{
    return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

json report_json(EstimateReport const& rep)
{
    json j;
    j["quantity"] = rep.quantity;
    j["value"] = optional_number(rep.insufficient ? std::nullopt : std::optional<double>(rep.value));
    j["se"] = rep.insufficient ? json(nullptr) : json(rep.se);
    j["target"] = optional_number(rep.target);
    j["z"] = optional_number(rep.z);
    return j;
}

/// Report for an analytic value: no sampling error, optional comparison target.
EstimateReport exact_report(std::string name, double value, std::optional<double> target = {})
{
    EstimateReport rep;
    rep.quantity = std::move(name);
    rep.value = value;
    rep.se = 0.0;
    rep.target = target;
    return rep;
}

json plain_report(std::string quantity, double value)
{
    return {{"quantity", std::move(quantity)}, {"value", value}, {"se", nullptr}, {"target", nullptr}, {"z", nullptr}};
}

std::string csv_field(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (char ch : s) {
        quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return quoted + "\"";
}

void emit(std::ostream& os, Table const& table, std::string const& command, std::string const& format)
{
    if (format == "csv") {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            os << (c ? "," : "") << csv_field(table.columns[c]);
        }
        os << '\n';
        for (auto const& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                os << (c ? "," : "") << csv_field(row[c].text);
            }
            os << '\n';
        }
        return;
    }
    json reports = json::array();
    if (!table.reports.empty()) {
        for (auto const& rep : table.reports) {
            reports.push_back(report_json(rep));
        }
    } else {
        for (auto const& row : table.rows) {
            std::string key;
            for (std::size_t c = 0; c < table.keys; ++c) {
                key += (c ? "," : "") + table.columns[c] + "=" + row[c].text;
            }
            for (std::size_t c = table.keys; c < row.size(); ++c) {
                if (row[c].number) {
                    reports.push_back(plain_report(table.columns[c] + "[" + key + "]", *row[c].number));
                }
            }
        }
    }
    json doc;
    doc["command"] = command;
    doc["reports"] = std::move(reports);
    os << doc.dump(2) << '\n';
}

void write_output(Common const& common, Table const& table, std::string const& command)
{
    if (common.out.empty()) {
        emit(std::cout, table, command, common.format);
        return;
    }
    std::ofstream file(common.out);
    if (!file) {
        throw ParameterError("cannot open output file '" + common.out + "'");
    }
    emit(file, table, command, common.format);
}

/// Integer grid: comma-separated numbers ("1e3") and inclusive ranges ("12..60").
std::vector<std::size_t> parse_grid(std::string const& spec)
{
    std::vector<std::size_t> grid;
    for (auto item : detail::split(spec, ',')) {
        auto dots = item.find("..");
        if (dots == std::string_view::npos) {
            grid.push_back(detail::parse_count(item));
            continue;
        }
        std::size_t const lo = detail::parse_count(item.substr(0, dots));
        std::size_t const hi = detail::parse_count(item.substr(dots + 2));
        if (lo > hi) {
            throw ParameterError("empty range '" + std::string(item) + "'");
        }
        for (std::size_t v = lo; v <= hi; ++v) {
            grid.push_back(v);
        }
    }
    if (grid.empty()) {
        throw ParameterError("empty grid");
    }
    return grid;
}

std::vector<double> parse_reals(std::string const& spec)
{
    std::vector<double> out;
    for (auto item : detail::split(spec, ',')) {
        out.push_back(detail::parse_double(item));
    }
    return out;
}

ModelParams make_params(Common const& c, std::size_t n, std::string const& lambda)
{
    ModelParams m{n, c.p, RateSpec::parse(lambda).expand(n), c.r};
    m.validate();
    return m;
}

ModelParams make_params(Common const& c) { return make_params(c, c.n, c.lambda); }

double scalar_rate(Common const& c)
{
    auto spec = RateSpec::parse(c.lambda);
    if (!spec.is_scalar()) {
        throw ParameterError("this command needs a scalar --lambda");
    }
    return spec.expand(1).front();
}

void check_normalized(std::vector<double> const& probs, std::string const& what)
{
    double const total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (!(std::abs(total - 1.0) <= 1e-9)) {
        throw NumericalError(what + " sums to " + num(total).text + ", not 1");
    }
}

RandomStream stream(Common const& c, std::uint64_t id) { return RandomStream(c.seed, id); }

// ---------------------------------------------------------------- chain

struct ChainArgs {
    bool limit = false;
    std::string n_grid = "2,5,10,20,50";
};

Table cmd_chain(Common const& c, ChainArgs const& a)
{
    Table t;
    if (a.limit) {
        t.columns = {"n", "pi1", "p11", "p21"};
        auto const grid = parse_grid(a.n_grid);
        for (auto const& row : limit_diagnostics(scalar_rate(c), c.r, c.p, grid)) {
            t.rows.push_back({num(row.n), num(row.pi1), num(row.p11), num(row.p21)});
        }
        return t;
    }
    auto const chain = transition_matrix(make_params(c));
    t.columns = {"state", "to_connected", "to_disconnected", "stationary"};
    char const* names[] = {"connected", "disconnected"};
    for (std::size_t i = 0; i < 2; ++i) {
        check_normalized({chain.matrix[i][0], chain.matrix[i][1]}, std::string("row ") + names[i]);
        t.rows.push_back({text(names[i]), num(chain.matrix[i][0]), num(chain.matrix[i][1]),
                          num(chain.stationary[i])});
    }
    check_normalized({chain.stationary[0], chain.stationary[1]}, "stationary law");
    return t;
}

// ---------------------------------------------------------------- components

Table cmd_components(Common const& c)
{
    auto const params = make_params(c);
    auto const chain = component_transition_matrix(params);
    auto const pi = component_stationary(chain);
    std::size_t const n = params.n;
    Table t;
    t.columns = {"from"};
    for (std::size_t j = 1; j <= n; ++j) {
        t.columns.push_back("to_" + std::to_string(j));
    }
    t.columns.insert(t.columns.end(), {"occupancy", "stationary", "defined"});
    check_normalized(chain.occupancy, "component occupancy");
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Cell> row{num(i + 1)};
        std::vector<double> probs;
        for (std::size_t j = 0; j < n; ++j) {
            probs.push_back(chain.matrix(i, j));
            row.push_back(chain.row_defined[i] ? num(chain.matrix(i, j)) : blank());
        }
        if (chain.row_defined[i]) {
            check_normalized(probs, "component row " + std::to_string(i + 1));
        }
        row.insert(row.end(), {num(chain.occupancy[i]), num(pi[i]), num(chain.row_defined[i] ? 1.0 : 0.0)});
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------- hitting

struct HittingArgs {
    std::size_t k_max = 10;
    double quad_tol = 1e-10;
    bool oracle = false;
    std::string mc;
};

Table cmd_hitting(Common const& c, HittingArgs const& a)
{
    auto const params = make_params(c);
    auto const rec = hitting_time_recursion(params, a.k_max, a.quad_tol);
    std::optional<HittingTimeDist> orc;
    if (a.oracle) {
        orc = hitting_time_oracle(params, a.k_max);
    }
    std::optional<HittingEstimate> mc;
    if (!a.mc.empty()) {
        mc = estimate_hitting_time(params, detail::parse_count(a.mc), a.k_max, stream(c, 1), c.workers);
    }
    Table t;
    t.columns = {"k", "recursion"};
    if (orc) {
        t.columns.push_back("oracle");
    }
    if (mc) {
        t.columns.insert(t.columns.end(), {"mc", "mc_se", "z"});
    }
    auto value_at = [](HittingTimeDist const& d, std::size_t k) {
        return k < d.tail.size() ? std::optional<double>(d.tail[k]) : std::nullopt;
    };
    for (std::size_t k = 0; k <= a.k_max; ++k) {
        auto const exact = value_at(rec, k);
        std::vector<Cell> row{num(k), exact ? num(*exact) : blank()};
        t.reports.push_back(exact_report("P(T>" + std::to_string(k) + ")", exact.value_or(0.0)));
        if (orc) {
            auto const v = value_at(*orc, k);
            row.push_back(v ? num(*v) : blank());
        }
        if (mc) {
            // past the truncation point the exact tail is below the cut
            auto rep = mc->tail_report(k, exact.value_or(0.0));
            rep.quantity += " mc";
            row.insert(row.end(), {num(rep.value), num(rep.se), num(*rep.z)});
            t.reports.push_back(rep);
        }
        t.rows.push_back(std::move(row));
    }
    t.reports.push_back(exact_report("E[T] lower", rec.expectation_lower));
    t.reports.push_back(exact_report("E[T] upper", rec.expectation_upper));
    std::cerr << "E[T] in [" << num(rec.expectation_lower).text << ", " << num(rec.expectation_upper).text
              << "], truncated at k = " << rec.truncation_k << (rec.converged ? "" : " (not converged)") << '\n';
    if (mc) {
        auto rep = mc->mean;
        if (std::isfinite(rec.expectation_upper)) {
            double const mid = 0.5 * (rec.expectation_lower + rec.expectation_upper);
            rep.target = mid;
            rep.z = rep.se > 0.0 ? (rep.value - mid) / rep.se : 0.0;
        }
        t.reports.push_back(rep);
        std::cerr << "MC E[T] = " << num(rep.value).text << " +- " << num(rep.se).text << ", censored "
                  << mc->censored << '\n';
    }
    return t;
}

// ---------------------------------------------------------------- snapshot

struct SnapshotArgs {
    std::string n_grid;
    std::string k = "1,2,3,4";
    std::size_t i = 1;
    std::size_t reps = 50;
    std::string y_grid;
    std::string mc;
};

Table cmd_connectivity(Common const& c, SnapshotArgs const& a)
{
    Table t;
    t.columns = {"n", "p_connected"};
    auto const grid = a.n_grid.empty() ? std::vector<std::size_t>{c.n} : parse_grid(a.n_grid);
    for (std::size_t n : grid) {
        t.rows.push_back({num(n), num(connectivity_probability(make_params(c, n, c.lambda)))});
    }
    return t;
}

Table cmd_component_pmf(Common const& c)
{
    auto const params = make_params(c);
    auto const psi = component_pmf(params);
    check_normalized(psi, "component pmf");
    Table t;
    t.columns = {"k", "psi", "equal_size"};
    for (std::size_t k = 1; k <= params.n; ++k) {
        auto const m = static_cast<long>(params.n / k);
        double const equal = params.n % k == 0 ? equal_size_components_probability(params, static_cast<long>(k), m) : 0.0;
        t.rows.push_back({num(k), num(psi[k - 1]), num(equal)});
    }
    return t;
}

Table cmd_figure2(Common const& c, SnapshotArgs const& a, bool lambda_given)
{
    std::string const rates = lambda_given ? c.lambda : "11:1,*:2";
    auto const grid = parse_grid(a.n_grid.empty() ? "12..60" : a.n_grid);
    auto const ks = parse_grid(a.k);
    Table t;
    t.columns = {"n"};
    for (std::size_t k : ks) {
        if (k == 0) {
            throw ParameterError("component counts start at 1");
        }
        t.columns.push_back("psi_" + std::to_string(k));
    }
    for (std::size_t n : grid) {
        auto const psi = component_pmf(make_params(c, n, rates));
        check_normalized(psi, "component pmf at n = " + std::to_string(n));
        std::vector<Cell> row{num(n)};
        for (std::size_t k : ks) {
            row.push_back(num(k <= n ? psi[k - 1] : 0.0));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table cmd_degree(Common const& c, SnapshotArgs const& a)
{
    auto const params = make_params(c);
    auto const closed = degree_pmf_closed_form(params, a.i);
    auto const exact = degree_pmf_exact(params.n, params.rates[1], params.r, a.i);
    check_normalized(exact.probs, "exact degree pmf");
    double const closed_total = std::accumulate(closed.probs.begin(), closed.probs.end(), 0.0);
    std::cerr << "closed-form degree pmf sums to " << num(closed_total).text << '\n';
    std::optional<SnapshotEstimate> mc;
    if (!a.mc.empty()) {
        mc = estimate_snapshot_stats(params, detail::parse_count(a.mc), stream(c, 2), c.workers);
    }
    Table t;
    t.columns = {"k", "closed_form", "exact", "class"};
    if (mc) {
        t.columns.insert(t.columns.end(), {"mc", "mc_se", "z"});
    }
    for (std::size_t k = 0; k < params.n; ++k) {
        std::vector<Cell> row{num(k), num(closed.probs[k]), num(exact.probs[k]), text(to_string(closed.classes[k]))};
        t.reports.push_back(exact_report("closed-form d_" + std::to_string(a.i) + "=" + std::to_string(k), closed.probs[k],
                                         exact.probs[k]));
        if (mc) {
            auto rep = mc->degree_report(a.i, k, exact.probs[k]);
            row.insert(row.end(), {num(rep.value), num(rep.se), num(*rep.z)});
            t.reports.push_back(rep);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table cmd_extremes(Common const& c, SnapshotArgs const& a)
{
    auto const grid = parse_grid(a.n_grid.empty() ? "1e2,1e3,1e4,1e5" : a.n_grid);
    auto const rows = strong_law_experiment(scalar_rate(c), grid, a.reps, stream(c, 3), c.workers);
    Table t;
    t.columns = {"n", "reps", "mean_c_ratio", "ci_c", "var_c", "mean_b_ratio", "ci_b", "var_b"};
    for (auto const& row : rows) {
        t.rows.push_back({num(row.n), num(row.replications), num(row.mean_c), num(row.ci_c), num(row.var_c),
                          num(row.mean_b), num(row.ci_b), num(row.var_b)});
    }
    return t;
}

Table cmd_distances(Common const& c, SnapshotArgs const& a)
{
    auto const params = make_params(c);
    std::vector<double> ys;
    if (a.y_grid.empty()) {
        double const top = connectivity_distance_quantile(params, 0.999);
        for (int s = 1; s <= 40; ++s) {
            ys.push_back(top * s / 40.0);
        }
    } else {
        ys = parse_reals(a.y_grid);
    }
    Table t;
    t.columns = {"y", "cdf_connectivity", "cdf_nearest_neighbor"};
    for (double y : ys) {
        t.rows.push_back({num(y), num(connectivity_distance_cdf(params, y)), num(nn_distance_cdf(params, y))});
    }
    return t;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::size_t steps = 1000;
    std::size_t burn_in = 0;
    bool transitions = false;
};

Table reports_table(std::vector<EstimateReport> reports)
{
    Table t;
    t.columns = {"quantity", "value", "se", "target", "z"};
    for (auto const& rep : reports) {
        t.rows.push_back({text(rep.quantity), rep.insufficient ? blank() : num(rep.value),
                          rep.insufficient ? blank() : num(rep.se), rep.target ? num(*rep.target) : blank(),
                          rep.z && std::isfinite(*rep.z) ? num(*rep.z) : blank()});
    }
    t.reports = std::move(reports);
    return t;
}

Table cmd_simulate(Common const& c, SimulateArgs const& a)
{
    auto const params = make_params(c);
    if (a.transitions) {
        auto const est = estimate_transitions(params, a.steps, a.burn_in, stream(c, 4));
        std::vector<EstimateReport> reports{est.p11, est.p21};
        auto const comp = est.component_reports(component_transition_matrix(params), c.seed);
        reports.insert(reports.end(), comp.begin(), comp.end());
        return reports_table(std::move(reports));
    }
    RandomStream rng = stream(c, 4);
    GapState state = sample_stationary(params, rng);
    for (std::size_t s = 0; s < a.burn_in; ++s) {
        step_inplace(state, params, rng);
    }
    Table t;
    t.columns = {"t", "components", "connected", "connectivity_distance", "nn_distance"};
    for (std::size_t s = 0; s < a.steps; ++s) {
        auto const ext = extreme_distances(state);
        t.rows.push_back({num(s), num(component_count(state, params.r)), num(is_connected(state, params.r) ? 1.0 : 0.0),
                          num(ext.connectivity), num(ext.nearest_neighbor)});
        step_inplace(state, params, rng);
    }
    return t;
}

// ---------------------------------------------------------------- verify

int cmd_verify(Common const& c)
{
    acceptance::Options opt;
    opt.seed = c.seed;
    opt.workers = c.workers;
    json criteria = json::array();
    bool all = true;
    acceptance::run_all(opt, [&](acceptance::CriterionResult const& res) {
        std::cerr << (res.passed ? "[PASS] " : "[FAIL] ") << res.id << ' ' << res.name << " ("
                  << num(res.seconds).text << " s)\n";
        all = all && res.passed;
        criteria.push_back({{"id", res.id}, {"name", res.name}, {"passed", res.passed}, {"detail", res.detail}});
    });
    json doc{{"command", "verify"}, {"seed", c.seed}, {"passed", all}, {"criteria", criteria}};
    if (c.out.empty()) {
        std::cout << doc.dump(2) << '\n';
    } else {
        std::ofstream file(c.out);
        if (!file) {
            throw ParameterError("cannot open output file '" + c.out + "'");
        }
        file << doc.dump(2) << '\n';
    }
    return all ? Exit::ok : Exit::verification;
}

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--n", c.n, "number of vertices")->capture_default_str();
    app->add_option("--p", c.p, "memory parameter, 0 <= p < 1")->capture_default_str();
    app->add_option("--r", c.r, "connection cutoff")->capture_default_str();
    app->add_option("--lambda", c.lambda, "rate: scalar or count:rate,... ('*' count fills the rest)")
        ->capture_default_str();
    app->add_option("--seed", c.seed, "random seed")->capture_default_str();
    app->add_option("--workers", c.workers, "worker threads; results do not depend on it")->capture_default_str();
    app->add_option("--out", c.out, "output file (default stdout)");
    app->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exponential random geometric graph process: analytics and simulation"};
    app.require_subcommand(1);
    Common common;
    ChainArgs chain_args;
    HittingArgs hitting_args;
    SnapshotArgs snap;
    SimulateArgs sim;

    auto* chain = app.add_subcommand("chain", "connectivity chain: transition matrix and stationary law");
    add_common(chain, common);
    chain->add_flag("--limit", chain_args.limit, "stationary connectivity along an n grid");
    chain->add_option("--n-grid", chain_args.n_grid, "grid for --limit")->capture_default_str();

    auto* components = app.add_subcommand("components", "component-count chain");
    add_common(components, common);

    auto* hitting = app.add_subcommand("hitting", "disconnection hitting-time tail");
    add_common(hitting, common);
    hitting->add_option("--k-max", hitting_args.k_max, "horizon K, 1..24")->capture_default_str();
    hitting->add_option("--quad-tol", hitting_args.quad_tol, "quadrature tolerance")->capture_default_str();
    hitting->add_flag("--oracle", hitting_args.oracle, "add the run-decomposition column");
    hitting->add_option("--mc", hitting_args.mc, "Monte Carlo replications (e.g. 1e6)");

    auto* snapshot = app.add_subcommand("snapshot", "stationary snapshot statistics");
    snapshot->require_subcommand(1);
    auto* connectivity = snapshot->add_subcommand("connectivity", "P_n(C) along n");
    auto* pmf = snapshot->add_subcommand("components", "component-count pmf and equal-size probabilities");
    auto* figure2 = snapshot->add_subcommand("figure2", "psi_n(k) against n");
    auto* degree = snapshot->add_subcommand("degree", "degree pmf of one vertex");
    auto* extremes = snapshot->add_subcommand("extremes", "normalised extreme distances");
    auto* distances = snapshot->add_subcommand("distances", "CDFs of the extreme distances");
    for (auto* sub : {connectivity, pmf, figure2, degree, extremes, distances}) {
        add_common(sub, common);
    }
    connectivity->add_option("--n-grid", snap.n_grid, "grid of n");
    figure2->add_option("--n-grid", snap.n_grid, "grid of n (default 12..60)");
    figure2->add_option("--k", snap.k, "component counts")->capture_default_str();
    degree->add_option("--i", snap.i, "vertex index, 1..n")->capture_default_str();
    degree->add_option("--mc", snap.mc, "Monte Carlo snapshots");
    extremes->add_option("--n-grid", snap.n_grid, "grid of n (default 1e2,1e3,1e4,1e5)");
    extremes->add_option("--reps", snap.reps, "replications per n")->capture_default_str();
    distances->add_option("--y-grid", snap.y_grid, "comma-separated distances");

    auto* simulate = app.add_subcommand("simulate", "simulate the gap process");
    add_common(simulate, common);
    simulate->add_option("--steps", sim.steps, "steps")->capture_default_str();
    simulate->add_option("--burn-in", sim.burn_in, "discarded initial steps")->capture_default_str();
    simulate->add_flag("--transitions", sim.transitions, "report transition estimates instead of the trajectory");

    auto* verify = app.add_subcommand("verify", "run the acceptance suite and emit a JSON report");
    add_common(verify, common);

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::usage;
    }

    try {
        if (common.workers == 0) {
            throw ParameterError("--workers must be positive");
        }
        if (verify->parsed()) {
            return cmd_verify(common);
        }
        Table table;
        std::string name;
        if (chain->parsed()) {
            table = cmd_chain(common, chain_args);
            name = "chain";
        } else if (components->parsed()) {
            table = cmd_components(common);
            name = "components";
        } else if (hitting->parsed()) {
            table = cmd_hitting(common, hitting_args);
            name = "hitting";
        } else if (simulate->parsed()) {
            table = cmd_simulate(common, sim);
            name = "simulate";
        } else if (connectivity->parsed()) {
            table = cmd_connectivity(common, snap);
            name = "snapshot connectivity";
        } else if (pmf->parsed()) {
            table = cmd_component_pmf(common);
            name = "snapshot components";
        } else if (figure2->parsed()) {
            table = cmd_figure2(common, snap, figure2->count("--lambda") > 0);
            name = "snapshot figure2";
        } else if (degree->parsed()) {
            table = cmd_degree(common, snap);
            name = "snapshot degree";
        } else if (extremes->parsed()) {
            table = cmd_extremes(common, snap);
            name = "snapshot extremes";
        } else {
            table = cmd_distances(common, snap);
            name = "snapshot distances";
        }
        write_output(common, table, name);
        return Exit::ok;
    } catch (ParameterError const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::usage;
    } catch (std::exception const& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return Exit::numerical;
    }
}
