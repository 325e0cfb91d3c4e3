#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "netgate/bootstrap.hpp"
#include "netgate/outcome_model.hpp"
#include "netgate/selection.hpp"

namespace netgate {

enum class GraphSource { small_world, cliques, edge_list };

struct GraphSpec {
    GraphSource source = GraphSource::small_world;
    std::vector<std::size_t> sizes{2000};  ///< one report per entry (generators only)
    int mean_degree = 20;
    double rewire_prob = 0.1;
    int clique_min = 3;
    int clique_max = 8;
    std::string path;                  ///< edge_list
    bool largest_component = true;     ///< edge_list
};

/// A Monte Carlo experiment, read from a flat "key = value" file.
///
/// Recognized keys (defaults in parentheses):
///   name, seed (1), trials (200), threads (1), p (0.5), q (0.8)
///   graph = smallworld | cliques | edgelist, graph.n (comma list allowed),
///   graph.mean_degree, graph.rewire, graph.clique_min, graph.clique_max,
///   graph.path, graph.lcc
///   model (preset name), model.noise_sd, model.mc_reps
///   model.alpha0, model.alpha1, model.xi0, model.xi1, model.gamma0, model.gamma1
///     (simple linear presets), model.alpha, model.beta, model.gamma, model.J
///     (truncated linear-in-means presets)
///   estimators (comma list of dm, hajek, hajek2, adjust:frac, adjust:num,
///               adjust:oracle, refex-lasso, post-refex-lasso)
///   intervals (comma list of block-refex, block-post, naive-refex, iid-refex)
///   T, aggregators, bases, edge_scope = closed | open
///   cv.folds, cv.grid, cv.min_ratio
///   bootstrap.B, bootstrap.ell, bootstrap.alpha, bootstrap.k, bootstrap.iid_clusters
/// '#' starts a comment. Unknown keys raise std::invalid_argument naming the key.
struct ExperimentConfig {
    std::string name = "experiment";
    std::uint64_t seed = 1;
    std::size_t trials = 200;
    int threads = 1;
    double p = 0.5;
    double q = 0.8;
    GraphSpec graph;
    OutcomeModelSpec model{"model0", SimpleLinearModel{0, 2, 0, 0, 0, 0, 1.0}};
    int mc_reps = 2000;
    std::vector<std::string> estimators{"dm", "hajek", "adjust:frac", "adjust:num",
                                        "post-refex-lasso", "refex-lasso"};
    std::vector<std::string> intervals;
    SelectionConfig selection;
    BootstrapConfig bootstrap;

    static ExperimentConfig parse(std::istream& in);
    static ExperimentConfig parse_string(const std::string& text);
    static ExperimentConfig load(const std::string& path);

    /// Canonical "key = value" rendering of every setting; parse(to_text()) round-trips.
    std::string to_text() const;
};

std::vector<std::string> known_estimators();
std::vector<std::string> known_intervals();

}  // namespace netgate
