#include "netgate/features.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "netgate/csv.hpp"

namespace netgate {

std::string_view to_string(BaseFeature b) {
    switch (b) {
        case BaseFeature::frac_treated_nbrs: return "frac_treated_nbrs";
        case BaseFeature::num_treated_nbrs: return "num_treated_nbrs";
        case BaseFeature::frac_tc_edges: return "frac_tc_edges";
        case BaseFeature::frac_tt_edges: return "frac_tt_edges";
    }
    throw std::invalid_argument("unknown base feature");
}

std::string_view to_string(Aggregator a) {
    switch (a) {
        case Aggregator::mean: return "mean";
        case Aggregator::variance: return "variance";
        case Aggregator::min: return "min";
        case Aggregator::max: return "max";
        case Aggregator::sum: return "sum";
    }
    throw std::invalid_argument("unknown aggregator");
}

std::optional<BaseFeature> parse_base_feature(std::string_view s) {
    for (auto b : kAllBaseFeatures)
        if (to_string(b) == s) return b;
    return std::nullopt;
}

std::optional<Aggregator> parse_aggregator(std::string_view s) {
    for (auto a : {Aggregator::mean, Aggregator::variance, Aggregator::min, Aggregator::max,
                   Aggregator::sum})
        if (to_string(a) == s) return a;
    return std::nullopt;
}

std::vector<Aggregator> parse_aggregator_list(std::string_view s) {
    std::vector<Aggregator> out;
    for (const auto& tok : split_fields(std::string(s), ',')) {
        if (tok.empty()) continue;
        auto a = parse_aggregator(tok);
        if (!a) throw std::invalid_argument("unknown aggregator '" + tok + "'");
        out.push_back(*a);
    }
    return out;
}

std::vector<BaseFeature> parse_base_feature_list(std::string_view s) {
    std::vector<BaseFeature> out;
    for (const auto& tok : split_fields(std::string(s), ',')) {
        if (tok.empty()) continue;
        auto b = parse_base_feature(tok);
        if (!b) throw std::invalid_argument("unknown base feature '" + tok + "'");
        out.push_back(*b);
    }
    return out;
}

std::string FeatureDescriptor::name() const {
    std::string out(to_string(base));
    for (auto a : chain) {
        out += '|';
        out += to_string(a);
    }
    return out;
}

FeatureDescriptor FeatureDescriptor::parse(std::string_view name) {
    const auto parts = split_fields(std::string(name), '|');
    FeatureDescriptor d;
    auto b = parse_base_feature(parts.front());
    if (!b) throw std::invalid_argument("unknown base feature '" + parts.front() + "'");
    d.base = *b;
    for (std::size_t k = 1; k < parts.size(); ++k) {
        auto a = parse_aggregator(parts[k]);
        if (!a) throw std::invalid_argument("unknown aggregator '" + parts[k] + "'");
        d.chain.push_back(*a);
    }
    return d;
}

FeatureDescriptor FeatureDescriptor::then(Aggregator a) const {
    FeatureDescriptor d = *this;
    d.chain.push_back(a);
    return d;
}

std::optional<std::size_t> FeatureMatrix::index_of(const FeatureDescriptor& d) const {
    auto it = std::find(descriptors_.begin(), descriptors_.end(), d);
    if (it == descriptors_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - descriptors_.begin());
}

void FeatureMatrix::append(FeatureDescriptor d, const Eigen::VectorXd& column) {
    if (descriptors_.empty() && values_.cols() == 0) values_.resize(column.size(), 0);
    if (column.size() != values_.rows())
        throw std::invalid_argument("FeatureMatrix: column length mismatch");
    if (index_of(d)) throw std::invalid_argument("FeatureMatrix: duplicate column " + d.name());
    values_.conservativeResize(Eigen::NoChange, values_.cols() + 1);
    values_.col(values_.cols() - 1) = column;
    descriptors_.push_back(std::move(d));
}

void FeatureMatrix::append(const FeatureMatrix& other) {
    for (std::size_t j = 0; j < other.cols(); ++j)
        append(other.descriptors_[j], other.values_.col(static_cast<Eigen::Index>(j)));
}

FeatureMatrix FeatureMatrix::select(std::span<const FeatureDescriptor> wanted) const {
    FeatureMatrix out(rows());
    for (const auto& d : wanted) {
        auto j = index_of(d);
        if (!j) throw std::invalid_argument("FeatureMatrix: no column " + d.name());
        out.append(d, values_.col(static_cast<Eigen::Index>(*j)));
    }
    return out;
}

namespace {

struct EdgeShares {
    Eigen::VectorXd tc;
    Eigen::VectorXd tt;
};

EdgeShares edge_shares(const Graph& g, const Eigen::VectorXd& w, EdgeScope scope) {
    const auto n = static_cast<NodeId>(g.num_nodes());
    EdgeShares out{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
    constexpr NodeId unmarked = std::numeric_limits<NodeId>::max();
    std::vector<NodeId> mark(n, unmarked);
    for (NodeId i = 0; i < n; ++i) {
        const auto nb = g.neighbors(i);
        if (nb.empty()) continue;
        for (NodeId j : nb) mark[j] = i;
        std::size_t total = 0, tc = 0, tt = 0;
        auto classify = [&](NodeId a, NodeId b) {
            ++total;
            const bool ta = w[a] != 0.0, tb = w[b] != 0.0;
            if (ta != tb) ++tc;
            else if (ta) ++tt;
        };
        if (scope == EdgeScope::closed)
            for (NodeId j : nb) classify(i, j);
        for (NodeId j : nb) {
            const auto nj = g.neighbors(j);
            for (auto it = std::upper_bound(nj.begin(), nj.end(), j); it != nj.end(); ++it)
                if (mark[*it] == i) classify(j, *it);
        }
        if (total > 0) {
            out.tc[i] = static_cast<double>(tc) / static_cast<double>(total);
            out.tt[i] = static_cast<double>(tt) / static_cast<double>(total);
        }
    }
    return out;
}

void check_assignment(const Graph& g, const Eigen::VectorXd& w) {
    if (static_cast<std::size_t>(w.size()) != g.num_nodes())
        throw std::invalid_argument("assignment length differs from node count");
}

}  // namespace

Eigen::VectorXd base_feature_column(const Graph& g, const Eigen::VectorXd& w, BaseFeature base,
                                    EdgeScope scope) {
    check_assignment(g, w);
    switch (base) {
        case BaseFeature::frac_treated_nbrs: return normalized_adjacency_apply(g, w);
        case BaseFeature::num_treated_nbrs: {
            Eigen::VectorXd out(w.size());
            for (NodeId i = 0; i < g.num_nodes(); ++i) {
                double s = 0.0;
                for (NodeId j : g.neighbors(i)) s += w[j];
                out[i] = s;
            }
            return out;
        }
        case BaseFeature::frac_tc_edges: return edge_shares(g, w, scope).tc;
        case BaseFeature::frac_tt_edges: return edge_shares(g, w, scope).tt;
    }
    throw std::invalid_argument("unknown base feature");
}

FeatureMatrix base_features(const Graph& g, const Eigen::VectorXd& w, const FeatureOptions& options) {
    check_assignment(g, w);
    FeatureMatrix out(g.num_nodes());
    std::optional<EdgeShares> shares;
    for (auto b : options.bases) {
        if (b == BaseFeature::frac_tc_edges || b == BaseFeature::frac_tt_edges) {
            if (!shares) shares = edge_shares(g, w, options.edge_scope);
            out.append({b, {}}, b == BaseFeature::frac_tc_edges ? shares->tc : shares->tt);
        } else {
            out.append({b, {}}, base_feature_column(g, w, b, options.edge_scope));
        }
    }
    return out;
}

FeatureMatrix base_features(const Graph& g, const AssignmentVector& w, const FeatureOptions& options) {
    return base_features(g, w.as_vector(), options);
}

Eigen::VectorXd aggregate_column(const Graph& g, const Eigen::VectorXd& f, Aggregator agg) {
    if (static_cast<std::size_t>(f.size()) != g.num_nodes())
        throw std::invalid_argument("aggregate_column: column length differs from node count");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(f.size());
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        const auto nb = g.neighbors(i);
        if (nb.empty()) continue;
        const double d = static_cast<double>(nb.size());
        switch (agg) {
            case Aggregator::sum:
            case Aggregator::mean: {
                double s = 0.0;
                for (NodeId j : nb) s += f[j];
                out[i] = agg == Aggregator::sum ? s : s / d;
                break;
            }
            case Aggregator::variance: {
                if (nb.size() < 2) break;
                double s = 0.0;
                for (NodeId j : nb) s += f[j];
                const double m = s / d;
                double ss = 0.0;
                for (NodeId j : nb) ss += (f[j] - m) * (f[j] - m);
                out[i] = ss / d;
                break;
            }
            case Aggregator::min: {
                double m = f[nb.front()];
                for (NodeId j : nb) m = std::min(m, f[j]);
                out[i] = m;
                break;
            }
            case Aggregator::max: {
                double m = f[nb.front()];
                for (NodeId j : nb) m = std::max(m, f[j]);
                out[i] = m;
                break;
            }
            default: throw std::invalid_argument("unknown aggregator");
        }
    }
    return out;
}

FeatureMatrix aggregate_generation(const Graph& g, const FeatureMatrix& prev,
                                   std::span<const Aggregator> aggs) {
    FeatureMatrix out(g.num_nodes());
    for (std::size_t j = 0; j < prev.cols(); ++j) {
        const Eigen::VectorXd col = prev.column(j);
        for (auto a : aggs) out.append(prev.descriptors()[j].then(a), aggregate_column(g, col, a));
    }
    return out;
}

std::vector<FeatureMatrix> generate_generations(const Graph& g, const AssignmentVector& w,
                                                std::span<const Aggregator> aggs, int T,
                                                const FeatureOptions& options) {
    std::vector<FeatureMatrix> gens;
    gens.push_back(base_features(g, w, options));
    for (int t = 1; t <= T; ++t) gens.push_back(aggregate_generation(g, gens.back(), aggs));
    return gens;
}

FeatureMatrix evaluate_features(const Graph& g, const Eigen::VectorXd& w,
                                std::span<const FeatureDescriptor> descriptors, EdgeScope scope) {
    check_assignment(g, w);
    std::map<FeatureDescriptor, Eigen::VectorXd> cache;
    std::optional<EdgeShares> shares;
    auto base_of = [&](BaseFeature b) -> Eigen::VectorXd {
        switch (b) {
            case BaseFeature::frac_tc_edges:
            case BaseFeature::frac_tt_edges:
                if (!shares) shares = edge_shares(g, w, scope);
                return b == BaseFeature::frac_tc_edges ? shares->tc : shares->tt;
            case BaseFeature::frac_treated_nbrs:
            case BaseFeature::num_treated_nbrs: return base_feature_column(g, w, b, scope);
        }
        throw std::invalid_argument("unknown feature descriptor");
    };
    FeatureMatrix out(g.num_nodes());
    for (const auto& d : descriptors) {
        FeatureDescriptor prefix{d.base, {}};
        auto it = cache.find(prefix);
        if (it == cache.end()) it = cache.emplace(prefix, base_of(d.base)).first;
        for (auto a : d.chain) {
            FeatureDescriptor next = prefix.then(a);
            auto nit = cache.find(next);
            if (nit == cache.end()) nit = cache.emplace(next, aggregate_column(g, it->second, a)).first;
            prefix = std::move(next);
            it = nit;
        }
        out.append(d, it->second);
    }
    return out;
}

FeatureMatrix counterfactual_features(const Graph& g,
                                      std::span<const FeatureDescriptor> descriptors, Arm arm,
                                      EdgeScope scope) {
    const double value = arm == Arm::all_treated ? 1.0 : 0.0;
    const Eigen::VectorXd w =
        Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g.num_nodes()), value);
    return evaluate_features(g, w, descriptors, scope);
}

void write_feature_csv(std::ostream& out, const FeatureMatrix& m) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m.descriptors()[j].name();
    out << '\n';
    const auto& v = m.values();
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        for (Eigen::Index j = 0; j < v.cols(); ++j) out << (j ? "," : "") << format_full(v(i, j));
        out << '\n';
    }
}

}  // namespace netgate
