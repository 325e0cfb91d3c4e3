#include "netgate/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "netgate/bootstrap.hpp"
#include "netgate/csv.hpp"
#include "netgate/error.hpp"
#include "netgate/estimators.hpp"
#include "netgate/parallel.hpp"
#include "netgate/selection.hpp"

namespace netgate {

double true_gate_monte_carlo(const Graph& g, const OutcomeModelSpec& model, int reps,
                             const SeedStream& stream) {
    if (reps < 1) throw std::invalid_argument("true_gate_monte_carlo: reps must be >= 1");
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    if (n == 0) throw std::invalid_argument("true_gate_monte_carlo: empty graph");
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n), zeros = Eigen::VectorXd::Zero(n);
    if (model.is_linear()) return (mean_outcomes(g, ones, model) - mean_outcomes(g, zeros, model)).mean();
    // Additive noise cancels in the contrast; only the individual effects are redrawn.
    std::normal_distribution<double> normal(0.0, 1.0);
    double total = 0.0;
    for (int r = 0; r < reps; ++r) {
        auto eng = stream.child(static_cast<std::uint64_t>(r)).engine();
        Eigen::VectorXd z(n);
        for (Eigen::Index i = 0; i < n; ++i) z[i] = normal(eng);
        total += (mean_outcomes(g, ones, model, &z) - mean_outcomes(g, zeros, model, &z)).mean();
    }
    return total / reps;
}

const EstimatorSummary& TrialReport::row(const std::string& name) const {
    for (const auto& r : rows)
        if (r.name == name) return r;
    throw std::out_of_range("TrialReport: no row '" + name + "'");
}

Graph build_experiment_graph(const ExperimentConfig& config, std::size_t size_index,
                             std::string* description) {
    const GraphSpec& gs = config.graph;
    const SeedStream gstream = SeedStream(config.seed).child(100, size_index);
    std::ostringstream desc;
    Graph g;
    switch (gs.source) {
        case GraphSource::small_world: {
            const std::size_t n = gs.sizes.at(size_index);
            g = generate_small_world(n, gs.mean_degree, gs.rewire_prob, gstream);
            desc << "smallworld(n=" << n << ",k=" << gs.mean_degree << ",p=" << gs.rewire_prob << ")";
            break;
        }
        case GraphSource::cliques: {
            const std::size_t n = gs.sizes.at(size_index);
            const auto sizes = draw_clique_sizes(n, gs.clique_min, gs.clique_max, gstream);
            g = generate_clique_graph(sizes);
            desc << "cliques(n=" << g.num_nodes() << ",size=" << gs.clique_min << ".." << gs.clique_max << ")";
            break;
        }
        case GraphSource::edge_list: {
            LoadedGraph lg = load_edge_list_file(gs.path);
            g = gs.largest_component ? largest_connected_component(lg.graph).graph : std::move(lg.graph);
            desc << "edgelist(" << gs.path << (gs.largest_component ? ",lcc" : "") << ")";
            break;
        }
    }
    if (description) *description = desc.str();
    return g;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Cell {
    double estimate = kNaN;
    bool interval = false;
    double lower = kNaN, upper = kNaN;
    bool flagged = false;
};

struct TrialOutput {
    std::vector<Cell> cells;  // estimators then intervals
    std::optional<std::size_t> refex_selected;
    std::optional<std::size_t> post_selected;
    std::size_t trails = 0;
    std::size_t violations = 0;
};

template <class F>
Cell guarded(F&& f) {
    try {
        return f();
    } catch (const EstimationError&) {
        return {};
    } catch (const std::invalid_argument&) {
        return {};
    }
}

Cell point(double v) {
    Cell c;
    c.estimate = v;
    return c;
}

Cell interval(const IntervalEstimate& iv, double center) {
    Cell c;
    c.interval = true;
    c.lower = iv.lower;
    c.upper = iv.upper;
    c.estimate = center;
    c.flagged = iv.validity_warning;
    return c;
}

TrialOutput run_one_trial(const ExperimentConfig& cfg, const Graph& g, std::size_t t) {
    const SeedStream ts = SeedStream(cfg.seed).child(200, t);
    const AssignmentVector w = bernoulli_assign(g.num_nodes(), cfg.p, ts.child(1));
    const Eigen::VectorXd y = simulate_outcomes(g, w, cfg.model, ts.child(2));
    const SelectionConfig& sel = cfg.selection;
    const EdgeScope scope = sel.features.edge_scope;

    FeatureGenerations gens(g, w, sel.aggs, sel.features);
    std::optional<SelectionResult> refex, post;
    std::optional<FeatureMatrix> post_candidates;
    TrialOutput out;
    auto get_refex = [&]() -> const SelectionResult& {
        if (!refex) {
            const auto rows = all_rows(g.num_nodes());
            refex = refex_lasso_on_rows(gens, y, rows, sel, ts.child(3));
            ++out.trails;
            if (!trail_is_nested(*refex)) ++out.violations;
            out.refex_selected = refex->selected.size();
        }
        return *refex;
    };
    auto get_post = [&]() -> const SelectionResult& {
        if (!post) {
            post_candidates = gens.stacked(sel.T);
            const auto rows = all_rows(g.num_nodes());
            post = post_refex_lasso_on_rows(*post_candidates, w, y, rows, sel, ts.child(4));
            ++out.trails;
            if (!trail_is_nested(*post)) ++out.violations;
            out.post_selected = post->selected.size();
        }
        return *post;
    };
    auto adjust = [&](const std::vector<FeatureDescriptor>& feats) {
        return adjusted_gate(g, w, y, feats, scope).value;
    };

    for (const auto& name : cfg.estimators) {
        out.cells.push_back(guarded([&]() -> Cell {
            if (name == "dm") return point(difference_in_means(w, y).value);
            if (name == "hajek") return point(hajek_fractional(g, w, y, cfg.p, cfg.q, 1).value);
            if (name == "hajek2") return point(hajek_fractional(g, w, y, cfg.p, cfg.q, 2).value);
            if (name == "adjust:frac") return point(adjust({{BaseFeature::frac_treated_nbrs, {}}}));
            if (name == "adjust:num") return point(adjust({{BaseFeature::num_treated_nbrs, {}}}));
            if (name == "adjust:oracle") {
                const auto feats = oracle_features(cfg.model);
                if (feats.empty()) throw EstimationError("no oracle features for a nonlinear model");
                return point(adjust(feats));
            }
            if (name == "refex-lasso") return point(adjust(get_refex().selected));
            if (name == "post-refex-lasso") return point(adjust(get_post().selected));
            throw std::invalid_argument("unknown estimator '" + name + "'");
        }));
    }

    BootstrapConfig bcfg = cfg.bootstrap;
    bcfg.threads = 1;
    for (std::size_t k = 0; k < cfg.intervals.size(); ++k) {
        const auto& name = cfg.intervals[k];
        const SeedStream is = ts.child(5, k);
        out.cells.push_back(guarded([&]() -> Cell {
            if (name == "block-refex" || name == "iid-refex") {
                const auto& r = get_refex();
                BootstrapConfig b = bcfg;
                if (name == "iid-refex") b.scheme = ClusteringScheme::iid_random;
                const double center = adjust(r.selected);
                return interval(block_bootstrap_refex(g, w, y, r.t_star, b, sel, is), center);
            }
            if (name == "block-post") {
                const auto& r = get_post();
                const double center = adjust(r.selected);
                return interval(block_bootstrap_post(g, w, y, *post_candidates, r.t_star, bcfg, sel, is), center);
            }
            if (name == "naive-refex") {
                const auto& r = get_refex();
                const double center = adjust(r.selected);
                const ReplicateEstimator est = refex_replicate_estimator(gens, y, sel);
                return interval(naive_bootstrap(g.num_nodes(), est, bcfg.B * bcfg.ell, bcfg.alpha, is), center);
            }
            throw std::invalid_argument("unknown interval '" + name + "'");
        }));
    }
    return out;
}

EstimatorSummary summarize(const std::string& name, const std::vector<const Cell*>& cells, double tau) {
    EstimatorSummary s;
    s.name = name;
    double sum = 0.0, sq = 0.0, covered = 0.0, length = 0.0;
    for (const Cell* c : cells) {
        if (std::isnan(c->estimate)) {
            ++s.failed;
            continue;
        }
        ++s.ok;
        sum += c->estimate;
        sq += (c->estimate - tau) * (c->estimate - tau);
        if (c->interval) {
            s.is_interval = true;
            covered += (c->lower <= tau && tau <= c->upper) ? 1.0 : 0.0;
            length += c->upper - c->lower;
            s.flagged += c->flagged;
        }
    }
    if (s.ok == 0) {
        s.mean_estimate = s.bias = s.rmse = s.variance = kNaN;
        s.coverage = s.mean_length = kNaN;
        return s;
    }
    const double m = static_cast<double>(s.ok);
    s.mean_estimate = sum / m;
    s.bias = s.mean_estimate - tau;
    s.rmse = std::sqrt(sq / m);
    double var = 0.0;
    for (const Cell* c : cells)
        if (!std::isnan(c->estimate)) var += (c->estimate - s.mean_estimate) * (c->estimate - s.mean_estimate);
    s.variance = var / m;
    if (s.is_interval) {
        s.coverage = covered / m;
        s.mean_length = length / m;
    } else {
        s.coverage = s.mean_length = kNaN;
    }
    return s;
}

}  // namespace

TrialReport run_trials(const ExperimentConfig& config, const Graph& g,
                       const std::string& graph_description) {
    if (config.trials == 0) throw std::invalid_argument("run_trials: trials must be >= 1");
    if (g.num_nodes() == 0) throw std::invalid_argument("run_trials: empty graph");
    TrialReport rep;
    rep.experiment = config.name;
    rep.model = config.model.name;
    rep.graph = graph_description;
    rep.nodes = g.num_nodes();
    rep.edges = g.num_edges();
    rep.trials = config.trials;
    rep.true_gate = config.model.is_linear()
                        ? true_gate_linear(g, config.model)
                        : true_gate_monte_carlo(g, config.model, config.mc_reps, SeedStream(config.seed).child(300));

    std::vector<TrialOutput> outputs(config.trials);
    parallel_for(config.trials, config.threads,
                 [&](std::size_t t) { outputs[t] = run_one_trial(config, g, t); });

    std::vector<std::string> names = config.estimators;
    names.insert(names.end(), config.intervals.begin(), config.intervals.end());
    rep.estimates.assign(names.size(), std::vector<double>(config.trials, kNaN));
    for (std::size_t r = 0; r < names.size(); ++r) {
        std::vector<const Cell*> cells;
        for (std::size_t t = 0; t < config.trials; ++t) {
            cells.push_back(&outputs[t].cells[r]);
            rep.estimates[r][t] = outputs[t].cells[r].estimate;
        }
        rep.rows.push_back(summarize(names[r], cells, rep.true_gate));
    }
    double refex_total = 0.0, post_total = 0.0;
    std::size_t refex_count = 0, post_count = 0;
    for (const auto& o : outputs) {
        rep.trails_checked += o.trails;
        rep.nestedness_violations += o.violations;
        if (o.refex_selected) {
            refex_total += static_cast<double>(*o.refex_selected);
            ++refex_count;
        }
        if (o.post_selected) {
            post_total += static_cast<double>(*o.post_selected);
            ++post_count;
        }
    }
    rep.mean_selected_refex = refex_count ? refex_total / static_cast<double>(refex_count) : kNaN;
    rep.mean_selected_post = post_count ? post_total / static_cast<double>(post_count) : kNaN;
    return rep;
}

std::vector<TrialReport> run_experiment(const ExperimentConfig& config) {
    if (config.trials == 0) throw std::invalid_argument("run_experiment: trials must be >= 1");
    std::vector<TrialReport> out;
    const std::size_t count = config.graph.source == GraphSource::edge_list ? 1 : config.graph.sizes.size();
    for (std::size_t s = 0; s < count; ++s) {
        std::string desc;
        const Graph g = build_experiment_graph(config, s, &desc);
        out.push_back(run_trials(config, g, desc));
    }
    return out;
}

namespace {

const char* kColumns[] = {"experiment", "model",    "graph",    "nodes",         "edges",
                          "true_gate",  "trials",   "estimator", "ok",           "failed",
                          "mean",       "bias",     "rmse",     "variance",      "coverage",
                          "mean_length", "flagged"};

std::vector<std::string> report_fields(const TrialReport& r, const EstimatorSummary& s,
                                       std::string (*fmt)(double)) {
    auto opt = [&](double v) { return std::isnan(v) ? std::string() : fmt(v); };
    return {r.experiment,
            r.model,
            r.graph,
            std::to_string(r.nodes),
            std::to_string(r.edges),
            fmt(r.true_gate),
            std::to_string(r.trials),
            s.name,
            std::to_string(s.ok),
            std::to_string(s.failed),
            opt(s.mean_estimate),
            opt(s.bias),
            opt(s.rmse),
            opt(s.variance),
            s.is_interval ? opt(s.coverage) : std::string(),
            s.is_interval ? opt(s.mean_length) : std::string(),
            s.is_interval ? std::to_string(s.flagged) : std::string()};
}

}  // namespace

void write_report_csv(std::ostream& out, std::span<const TrialReport> reports) {
    bool first = true;
    for (const char* c : kColumns) {
        out << (first ? "" : ",") << c;
        first = false;
    }
    out << '\n';
    for (const auto& r : reports) {
        for (const auto& s : r.rows) {
            const auto f = report_fields(r, s, &format_full);
            for (std::size_t k = 0; k < f.size(); ++k) {
                // The graph description may contain commas.
                const bool quote = f[k].find(',') != std::string::npos;
                out << (k ? "," : "") << (quote ? "\"" : "") << f[k] << (quote ? "\"" : "");
            }
            out << '\n';
        }
    }
}

void write_report_text(std::ostream& out, std::span<const TrialReport> reports) {
    for (const auto& r : reports) {
        out << r.experiment << ": model " << r.model << " on " << r.graph << " (" << r.nodes << " nodes, "
            << r.edges << " edges), " << r.trials << " trials, true GATE " << format_sig6(r.true_gate) << '\n';
        const std::vector<std::string> head{"estimator", "ok", "failed", "mean", "bias", "rmse", "coverage", "length"};
        std::vector<std::vector<std::string>> table{head};
        for (const auto& s : r.rows) {
            const auto f = report_fields(r, s, &format_sig6);
            table.push_back({f[7], f[8], f[9], f[10], f[11], f[12], f[14], f[15]});
        }
        std::vector<std::size_t> width(head.size(), 0);
        for (const auto& row : table)
            for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
        for (const auto& row : table) {
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (k == 0) out << std::left << std::setw(static_cast<int>(width[k])) << row[k];
                else out << "  " << std::right << std::setw(static_cast<int>(width[k])) << row[k];
            }
            out << '\n';
        }
        if (r.trails_checked)
            out << "nestedness violations: " << r.nestedness_violations << " of " << r.trails_checked << " trails\n";
        out << '\n';
    }
}

}  // namespace netgate
