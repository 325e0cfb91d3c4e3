// netgate command-line front end.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "netgate/bootstrap.hpp"
#include "netgate/clustering.hpp"
#include "netgate/csv.hpp"
#include "netgate/error.hpp"
#include "netgate/estimators.hpp"
#include "netgate/experiment_config.hpp"
#include "netgate/outcome_model.hpp"
#include "netgate/selection.hpp"
#include "netgate/simlab.hpp"

namespace fs = std::filesystem;
using namespace netgate;

namespace {

constexpr const char* kVersion = "0.4.0";

// Exit codes: 1 for usage or computation errors, 2 for unreadable input.
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out_dir;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "Base seed for every random stream")->capture_default_str();
    cmd->add_option("--threads", c.threads, "Worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--out-dir", c.out_dir, "Directory for output files (stdout when empty)");
}

void require_file(const std::string& path, const char* what) {
    if (!fs::is_regular_file(path)) throw InputError(std::string("cannot read ") + what + " '" + path + "'");
}

LoadedGraph read_graph(const std::string& path, bool lcc) {
    require_file(path, "edge list");
    LoadedGraph lg = load_edge_list_file(path);
    if (lg.self_loops_dropped || lg.duplicates_dropped)
        std::cerr << "note: dropped " << lg.self_loops_dropped << " self-loops and "
                  << lg.duplicates_dropped << " duplicate edges\n";
    if (lcc) {
        Subgraph sub = largest_connected_component(lg.graph);
        std::vector<std::string> labels;
        labels.reserve(sub.original_ids.size());
        for (NodeId i : sub.original_ids) labels.push_back(lg.labels[i]);
        if (sub.graph.num_nodes() < lg.graph.num_nodes())
            std::cerr << "note: kept the largest component (" << sub.graph.num_nodes() << " of "
                      << lg.graph.num_nodes() << " nodes)\n";
        lg.graph = std::move(sub.graph);
        lg.labels = std::move(labels);
    }
    return lg;
}

Eigen::VectorXd read_values(const std::string& path, const LoadedGraph& lg, const char* what) {
    require_file(path, what);
    return read_unit_values_file(path, lg.labels);
}

AssignmentVector read_assignment(const std::string& path, const LoadedGraph& lg, double p) {
    const Eigen::VectorXd v = read_values(path, lg, "assignment");
    AssignmentVector a;
    a.p = p;
    a.w.resize(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] != 0.0 && v[i] != 1.0)
            throw ParseError("assignment values must be 0 or 1 (node " + lg.labels[static_cast<std::size_t>(i)] + ")", 0);
        a.w[static_cast<std::size_t>(i)] = v[i] == 1.0;
    }
    return a;
}

// Opens out-dir/name, or returns stdout when no directory was given.
class Output {
public:
    Output(const Common& c, const std::string& name) {
        if (c.out_dir.empty()) return;
        fs::create_directories(c.out_dir);
        path_ = (fs::path(c.out_dir) / name).string();
        file_.open(path_);
        if (!file_) throw std::runtime_error("cannot write '" + path_ + "'");
    }
    std::ostream& stream() { return path_.empty() ? std::cout : file_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream file_;
};

SelectionConfig selection_config(int T, const std::string& aggs, const std::string& bases, bool open_scope) {
    SelectionConfig s;
    s.T = T;
    if (!aggs.empty()) s.aggs = parse_aggregator_list(aggs);
    if (!bases.empty()) s.features.bases = parse_base_feature_list(bases);
    s.features.edge_scope = open_scope ? EdgeScope::open : EdgeScope::closed;
    return s;
}

struct SelectionArgs {
    int T = 2;
    std::string aggs = "mean,variance";
    std::string bases;
    bool open_scope = false;
    void add(CLI::App* cmd) {
        cmd->add_option("--T", T, "Aggregation depth")->check(CLI::NonNegativeNumber)->capture_default_str();
        cmd->add_option("--aggs", aggs, "Aggregators (mean,variance,min,max,sum)")->capture_default_str();
        cmd->add_option("--bases", bases, "Base features (default: all four)");
        cmd->add_flag("--open-edges", open_scope, "Count only edges among neighbors in the edge-share features");
    }
    SelectionConfig config() const { return selection_config(T, aggs, bases, open_scope); }
};

struct BootstrapArgs {
    int B = 100;
    int ell = 3;
    double alpha = 0.1;
    int k = 0;
    void add(CLI::App* cmd) {
        cmd->add_option("--B", B, "Replicates per clustering")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--ell", ell, "Independent clusterings")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--alpha", alpha, "Miscoverage level")->capture_default_str();
        cmd->add_option("--k", k, "Clustering radius (0: selected depth + 1)")->capture_default_str();
    }
    BootstrapConfig config(int threads) const {
        BootstrapConfig b;
        b.B = B;
        b.ell = ell;
        b.alpha = alpha;
        if (k > 0) b.k_override = k;
        b.threads = threads;
        b.validate();
        return b;
    }
};

std::string sig(double v) { return std::isfinite(v) ? format_sig6(v) : "-"; }

struct Row {
    std::string method;
    double estimate = NAN;
    double se = NAN;
    double lower = NAN;
    double upper = NAN;
    std::string note;
};

void print_rows(std::ostream& out, const std::vector<Row>& rows) {
    out << std::left << std::setw(18) << "method" << std::right << std::setw(12) << "estimate"
        << std::setw(12) << "std.err" << std::setw(12) << "lower" << std::setw(12) << "upper" << "  note\n";
    for (const auto& r : rows)
        out << std::left << std::setw(18) << r.method << std::right << std::setw(12) << sig(r.estimate)
            << std::setw(12) << sig(r.se) << std::setw(12) << sig(r.lower) << std::setw(12) << sig(r.upper)
            << "  " << r.note << '\n';
}

void write_rows_csv(std::ostream& out, const std::vector<Row>& rows) {
    out << "method,estimate,std_err,lower,upper,note\n";
    auto f = [](double v) { return std::isfinite(v) ? format_full(v) : std::string(); };
    for (const auto& r : rows)
        out << r.method << ',' << f(r.estimate) << ',' << f(r.se) << ',' << f(r.lower) << ',' << f(r.upper)
            << ",\"" << r.note << "\"\n";
}

// ---- estimate -------------------------------------------------------------

struct EstimateArgs {
    Common common;
    std::string graph, assignment, outcome;
    std::vector<std::string> methods{"dm", "hajek1", "hajek2", "adjust:num", "adjust:frac", "refex-lasso",
                                     "post-refex-lasso"};
    double p = 0.5;
    double q = 0.8;
    bool lcc = false;
    bool no_bootstrap = false;
    SelectionArgs selection;
    BootstrapArgs bootstrap;
};

int cmd_estimate(const EstimateArgs& a) {
    const LoadedGraph lg = read_graph(a.graph, a.lcc);
    const AssignmentVector w = read_assignment(a.assignment, lg, a.p);
    const Eigen::VectorXd y = read_values(a.outcome, lg, "outcome");
    const Graph& g = lg.graph;
    const SelectionConfig sel = a.selection.config();
    const SeedStream root(a.common.seed);

    std::vector<Row> rows;
    for (const auto& m : a.methods) {
        Row row;
        row.method = m;
        try {
            if (m == "dm") {
                row.estimate = difference_in_means(w, y).value;
            } else if (m == "hajek1" || m == "hajek2") {
                row.estimate = hajek_fractional(g, w, y, a.p, a.q, m == "hajek1" ? 1 : 2).value;
            } else if (m == "adjust:num" || m == "adjust:frac") {
                const BaseFeature b = m == "adjust:num" ? BaseFeature::num_treated_nbrs : BaseFeature::frac_treated_nbrs;
                const std::vector<FeatureDescriptor> f{{b, {}}};
                row.estimate = adjusted_gate(g, w, y, f, sel.features.edge_scope).value;
            } else if (m == "refex-lasso" || m == "post-refex-lasso") {
                const bool refex = m == "refex-lasso";
                const SelectionResult s = refex ? refex_lasso(g, w, y, sel, root.child(1))
                                                : post_refex_lasso(g, w, y, sel, root.child(2));
                row.estimate = adjusted_gate(g, w, y, s.selected, sel.features.edge_scope).value;
                row.note = std::to_string(s.selected.size()) + " selected, depth " + std::to_string(s.t_star);
                if (!a.no_bootstrap) {
                    const BootstrapConfig bc = a.bootstrap.config(a.common.threads);
                    IntervalEstimate ci;
                    if (refex) {
                        ci = block_bootstrap_refex(g, w, y, s.t_star, bc, sel, root.child(3));
                    } else {
                        FeatureGenerations gens(g, w, sel.aggs, sel.features);
                        ci = block_bootstrap_post(g, w, y, gens.stacked(sel.T), s.t_star, bc, sel, root.child(4));
                    }
                    row.se = ci.standard_error();
                    row.lower = ci.lower;
                    row.upper = ci.upper;
                    row.note += ", k " + std::to_string(ci.k_used);
                    if (ci.discarded) row.note += ", " + std::to_string(ci.discarded) + " discarded";
                    if (ci.validity_warning) row.note += ", WARNING many discards";
                }
            } else {
                throw std::invalid_argument("unknown method");
            }
        } catch (const std::exception& e) {
            row.note = std::string("error: ") + e.what();
        }
        rows.push_back(row);
    }
    print_rows(std::cout, rows);
    if (!a.common.out_dir.empty()) {
        Output out(a.common, "estimate.csv");
        write_rows_csv(out.stream(), rows);
    }
    return 0;
}

// ---- ci -------------------------------------------------------------------

struct CiArgs {
    Common common;
    std::string graph, assignment, outcome;
    std::string method = "refex-lasso";
    double p = 0.5;
    bool lcc = false;
    std::string clusters = "khop";
    int iid_clusters = 5;
    SelectionArgs selection;
    BootstrapArgs bootstrap;
};

int cmd_ci(const CiArgs& a) {
    const LoadedGraph lg = read_graph(a.graph, a.lcc);
    const AssignmentVector w = read_assignment(a.assignment, lg, a.p);
    const Eigen::VectorXd y = read_values(a.outcome, lg, "outcome");
    const Graph& g = lg.graph;
    const SelectionConfig sel = a.selection.config();
    const SeedStream root(a.common.seed);
    BootstrapConfig bc = a.bootstrap.config(a.common.threads);
    if (a.clusters == "iid") {
        bc.scheme = ClusteringScheme::iid_random;
        bc.iid_clusters = a.iid_clusters;
    }

    double point = NAN;
    IntervalEstimate ci;
    if (a.method == "refex-lasso") {
        const SelectionResult s = refex_lasso(g, w, y, sel, root.child(1));
        point = adjusted_gate(g, w, y, s.selected, sel.features.edge_scope).value;
        ci = block_bootstrap_refex(g, w, y, s.t_star, bc, sel, root.child(3));
    } else if (a.method == "post-refex-lasso") {
        const SelectionResult s = post_refex_lasso(g, w, y, sel, root.child(2));
        point = adjusted_gate(g, w, y, s.selected, sel.features.edge_scope).value;
        FeatureGenerations gens(g, w, sel.aggs, sel.features);
        ci = block_bootstrap_post(g, w, y, gens.stacked(sel.T), s.t_star, bc, sel, root.child(4));
    } else if (a.method == "naive-refex") {
        const SelectionResult s = refex_lasso(g, w, y, sel, root.child(1));
        point = adjusted_gate(g, w, y, s.selected, sel.features.edge_scope).value;
        FeatureGenerations gens(g, w, sel.aggs, sel.features);
        ci = naive_bootstrap(g.num_nodes(), refex_replicate_estimator(gens, y, sel), bc.B * bc.ell, bc.alpha,
                             root.child(5), bc.threads);
    } else {
        throw CLI::ValidationError("--method", "unknown method '" + a.method + "'");
    }

    std::ostringstream table;
    table << "method,estimate,lower,upper,k_used,replicates,discarded,warning\n"
          << a.method << ',' << format_full(point) << ',' << format_full(ci.lower) << ','
          << format_full(ci.upper) << ',' << ci.k_used << ',' << ci.replicate_estimates.size() << ','
          << ci.discarded << ',' << (ci.validity_warning ? 1 : 0) << '\n';
    Output out(a.common, "ci.csv");
    out.stream() << table.str();
    if (!out.path().empty()) std::cout << table.str();
    return 0;
}

// ---- features -------------------------------------------------------------

struct FeaturesArgs {
    Common common;
    std::string graph, assignment;
    bool lcc = false;
    SelectionArgs selection;
};

int cmd_features(const FeaturesArgs& a) {
    const LoadedGraph lg = read_graph(a.graph, a.lcc);
    const AssignmentVector w = read_assignment(a.assignment, lg, 0.5);
    const SelectionConfig sel = a.selection.config();
    FeatureGenerations gens(lg.graph, w, sel.aggs, sel.features);
    Output out(a.common, "features.csv");
    write_feature_csv(out.stream(), gens.stacked(sel.T));
    return 0;
}

// ---- cluster --------------------------------------------------------------

struct ClusterArgs {
    Common common;
    std::string graph;
    int k = 1;
    bool lcc = false;
};

int cmd_cluster(const ClusterArgs& a) {
    const LoadedGraph lg = read_graph(a.graph, a.lcc);
    const Clustering c = k_hop_max(lg.graph, a.k, SeedStream(a.common.seed));
    const ClusterDiagnostics d = cluster_diagnostics(c);
    std::cerr << "clusters " << d.count << ", mean size " << format_sig6(d.mean_size) << ", max size "
              << d.max_size << ", moment/mean " << format_sig6(d.moment_to_mean)
              << (d.warning ? "  WARNING: too few or too unequal clusters" : "") << '\n';
    Output out(a.common, "clusters.csv");
    auto& s = out.stream();
    s << "node,center\n";
    for (NodeId i = 0; i < c.num_nodes(); ++i) s << lg.labels[i] << ',' << lg.labels[c.label_of[i]] << '\n';
    return 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
    Common common;
    std::string graph;
    std::string generator;
    std::string model = "model0";
    double p = 0.5;
    std::optional<double> noise_sd;
    bool lcc = false;
};

// "smallworld:n,degree,rewire" or "cliques:n,min,max".
Graph generate(const std::string& spec, const SeedStream& s) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const auto f = colon == std::string::npos ? std::vector<std::string>{} : split_fields(spec.substr(colon + 1), ',');
    if (kind == "smallworld" && f.size() == 3)
        return generate_small_world(std::stoul(f[0]), std::stoi(f[1]), std::stod(f[2]), s);
    if (kind == "cliques" && f.size() == 3)
        return generate_clique_graph(draw_clique_sizes(std::stoul(f[0]), std::stoi(f[1]), std::stoi(f[2]), s));
    throw CLI::ValidationError("--generate", "expected smallworld:n,degree,rewire or cliques:n,min,max");
}

int cmd_simulate(const SimulateArgs& a) {
    const SeedStream root(a.common.seed);
    LoadedGraph lg;
    if (!a.graph.empty()) {
        lg = read_graph(a.graph, a.lcc);
    } else {
        lg.graph = generate(a.generator, root.child(1));
        for (NodeId i = 0; i < lg.graph.num_nodes(); ++i) lg.labels.push_back(std::to_string(i));
    }
    OutcomeModelSpec m = preset_model(a.model);
    if (a.noise_sd) std::visit([&](auto& p) { p.noise_sd = *a.noise_sd; }, m.params);
    const AssignmentVector w = bernoulli_assign(lg.graph.num_nodes(), a.p, root.child(2));
    const Eigen::VectorXd y = simulate_outcomes(lg.graph, w, m, root.child(3));

    Common files = a.common;
    if (files.out_dir.empty()) files.out_dir = ".";
    {
        Output out(files, "assignment.csv");
        out.stream() << "node,w\n";
        for (NodeId i = 0; i < w.size(); ++i) out.stream() << lg.labels[i] << ',' << int(w.w[i]) << '\n';
    }
    {
        Output out(files, "outcome.csv");
        out.stream() << "node,y\n";
        for (NodeId i = 0; i < w.size(); ++i) out.stream() << lg.labels[i] << ',' << format_full(y[i]) << '\n';
    }
    if (a.graph.empty()) {
        Output out(files, "edges.csv");
        for (NodeId i = 0; i < lg.graph.num_nodes(); ++i)
            for (NodeId j : lg.graph.neighbors(i))
                if (i < j) out.stream() << i << ',' << j << '\n';
    }
    std::cout << "nodes " << lg.graph.num_nodes() << ", treated " << w.num_treated();
    if (m.is_linear()) std::cout << ", true GATE " << format_sig6(true_gate_linear(lg.graph, m));
    std::cout << '\n';
    return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
    Common common;
    std::string config;
};

int cmd_bench(const BenchArgs& a, bool seed_given, bool threads_given) {
    require_file(a.config, "config");
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    ExperimentConfig cfg = ExperimentConfig::load(a.config);
    if (seed_given) cfg.seed = a.common.seed;
    if (threads_given) cfg.threads = a.common.threads;

    nlohmann::json timings = nlohmann::json::array();
    std::vector<TrialReport> reports;
    for (std::size_t k = 0; k < cfg.graph.sizes.size(); ++k) {
        const auto s0 = clock::now();
        std::string desc;
        const Graph g = build_experiment_graph(cfg, k, &desc);
        const auto s1 = clock::now();
        reports.push_back(run_trials(cfg, g, desc));
        const auto s2 = clock::now();
        timings.push_back({{"graph", desc},
                           {"build_seconds", std::chrono::duration<double>(s1 - s0).count()},
                           {"trials_seconds", std::chrono::duration<double>(s2 - s1).count()}});
    }

    Common files = a.common;
    if (files.out_dir.empty()) files.out_dir = ".";
    std::vector<std::string> written;
    {
        Output out(files, cfg.name + ".csv");
        write_report_csv(out.stream(), reports);
        written.push_back(out.path());
    }
    {
        Output out(files, cfg.name + ".txt");
        write_report_text(out.stream(), reports);
        written.push_back(out.path());
    }
    {
        Output out(files, cfg.name + ".cfg");
        out.stream() << cfg.to_text();
        written.push_back(out.path());
    }
    write_report_text(std::cout, reports);

    nlohmann::json manifest{
        {"tool", "netgate"},
        {"version", kVersion},
        {"config_file", a.config},
        {"seed", cfg.seed},
        {"threads", cfg.threads},
        {"resolved_config", cfg.to_text()},
        {"timings", timings},
        {"total_seconds", std::chrono::duration<double>(clock::now() - t0).count()},
    };
    written.push_back((fs::path(files.out_dir) / "manifest.json").string());
    manifest["outputs"] = written;
    Output out(files, "manifest.json");
    out.stream() << manifest.dump(2) << '\n';
    return 0;
}

// ---- info -----------------------------------------------------------------

int cmd_info(const std::string& path, bool lcc) {
    const LoadedGraph lg = read_graph(path, lcc);
    const Graph& g = lg.graph;
    std::size_t isolated = 0, max_degree = 0;
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        isolated += g.degree(i) == 0;
        max_degree = std::max(max_degree, g.degree(i));
    }
    const auto comps = connected_components(g);
    std::size_t count = 0;
    for (auto c : comps) count = std::max<std::size_t>(count, c + 1);
    std::cout << "nodes " << g.num_nodes() << "\nedges " << g.num_edges() << "\nmean degree "
              << format_sig6(g.mean_degree()) << "\nmax degree " << max_degree << "\nisolated " << isolated
              << "\ncomponents " << count << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"netgate: global treatment effects under network interference"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    EstimateArgs est;
    auto* c_est = app.add_subcommand("estimate", "Point estimates (and bootstrap errors) from observed data");
    add_common(c_est, est.common);
    c_est->add_option("--graph", est.graph, "Edge list (whitespace or comma separated)")->required();
    c_est->add_option("--assignment", est.assignment, "Assignment CSV (node,w or one value per line)")->required();
    c_est->add_option("--outcome", est.outcome, "Outcome CSV (node,y or one value per line)")->required();
    c_est->add_option("--methods", est.methods, "dm, hajek1, hajek2, adjust:num, adjust:frac, refex-lasso, post-refex-lasso")
        ->delimiter(',');
    c_est->add_option("--p", est.p, "Design treatment probability")->capture_default_str();
    c_est->add_option("--q", est.q, "Exposure threshold for the Hajek estimators")->capture_default_str();
    c_est->add_flag("--lcc", est.lcc, "Restrict to the largest connected component");
    c_est->add_flag("--no-bootstrap", est.no_bootstrap, "Skip standard errors for the selection methods");
    est.selection.add(c_est);
    est.bootstrap.add(c_est);

    CiArgs ci;
    auto* c_ci = app.add_subcommand("ci", "Block-bootstrap confidence interval");
    add_common(c_ci, ci.common);
    c_ci->add_option("--graph", ci.graph)->required();
    c_ci->add_option("--assignment", ci.assignment)->required();
    c_ci->add_option("--outcome", ci.outcome)->required();
    c_ci->add_option("--method", ci.method, "refex-lasso, post-refex-lasso or naive-refex")->capture_default_str();
    c_ci->add_option("--p", ci.p)->capture_default_str();
    c_ci->add_option("--clusters", ci.clusters, "khop or iid")->check(CLI::IsMember({"khop", "iid"}))->capture_default_str();
    c_ci->add_option("--iid-clusters", ci.iid_clusters)->capture_default_str();
    c_ci->add_flag("--lcc", ci.lcc);
    ci.selection.add(c_ci);
    ci.bootstrap.add(c_ci);

    FeaturesArgs fe;
    auto* c_fe = app.add_subcommand("features", "Write generated features as CSV");
    add_common(c_fe, fe.common);
    c_fe->add_option("--graph", fe.graph)->required();
    c_fe->add_option("--assignment", fe.assignment)->required();
    c_fe->add_flag("--lcc", fe.lcc);
    fe.selection.add(c_fe);

    ClusterArgs cl;
    auto* c_cl = app.add_subcommand("cluster", "k-hop-max clustering as node,center CSV");
    add_common(c_cl, cl.common);
    c_cl->add_option("--graph", cl.graph)->required();
    c_cl->add_option("--k", cl.k, "Radius")->check(CLI::PositiveNumber)->capture_default_str();
    c_cl->add_flag("--lcc", cl.lcc);

    SimulateArgs si;
    auto* c_si = app.add_subcommand("simulate", "Draw an assignment and outcomes from a model");
    add_common(c_si, si.common);
    auto* g_opt = c_si->add_option("--graph", si.graph, "Edge list");
    auto* gen_opt = c_si->add_option("--generate", si.generator, "smallworld:n,degree,rewire or cliques:n,min,max");
    g_opt->excludes(gen_opt);
    c_si->add_option("--model", si.model, "Preset outcome model")->capture_default_str();
    c_si->add_option("--p", si.p)->capture_default_str();
    c_si->add_option("--noise-sd", si.noise_sd);
    c_si->add_flag("--lcc", si.lcc);

    BenchArgs be;
    auto* c_be = app.add_subcommand("bench", "Run a Monte Carlo experiment from a config file");
    add_common(c_be, be.common);
    c_be->add_option("config", be.config, "Experiment config (key = value)")->required();

    std::string info_graph;
    bool info_lcc = false;
    auto* c_in = app.add_subcommand("info", "Graph summary");
    c_in->add_option("graph", info_graph)->required();
    c_in->add_flag("--lcc", info_lcc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*c_est) return cmd_estimate(est);
        if (*c_ci) return cmd_ci(ci);
        if (*c_fe) return cmd_features(fe);
        if (*c_cl) return cmd_cluster(cl);
        if (*c_si) {
            if (si.graph.empty() && si.generator.empty()) throw CLI::ValidationError("simulate", "need --graph or --generate");
            return cmd_simulate(si);
        }
        if (*c_be) return cmd_bench(be, c_be->count("--seed") > 0, c_be->count("--threads") > 0);
        if (*c_in) return cmd_info(info_graph, info_lcc);
    } catch (const InputError& e) {
        std::cerr << "netgate: " << e.what() << '\n';
        return kExitInput;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "netgate: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
