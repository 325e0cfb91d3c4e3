#include "netgate/experiment_config.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "netgate/csv.hpp"
#include "netgate/error.hpp"

namespace netgate {

std::vector<std::string> known_estimators() {
    return {"dm", "hajek", "hajek2", "adjust:frac", "adjust:num", "adjust:oracle",
            "refex-lasso", "post-refex-lasso"};
}

std::vector<std::string> known_intervals() {
    return {"block-refex", "block-post", "naive-refex", "iid-refex"};
}

namespace {

template <class T>
T parse_number(const std::string& key, const std::string& v) {
    T out{};
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end)
        throw std::invalid_argument("config key '" + key + "': cannot parse '" + v + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<std::string> parse_list(const std::string& v) {
    std::vector<std::string> out;
    for (auto& f : split_fields(v, ','))
        if (!f.empty()) out.push_back(f);
    return out;
}

template <class Seq>
std::string join(const Seq& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += ',';
        out += s;
    }
    return out;
}

void set_noise(OutcomeModelSpec& m, double sd) {
    std::visit([sd](auto& p) { p.noise_sd = sd; }, m.params);
}

void check_member(const std::string& key, const std::string& value, const std::vector<std::string>& allowed) {
    if (std::find(allowed.begin(), allowed.end(), value) == allowed.end())
        throw std::invalid_argument("config key '" + key + "': unknown entry '" + value + "'");
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
    std::map<std::string, std::pair<std::string, std::size_t>> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
        std::string key = trim(std::string_view(t).substr(0, eq));
        std::string value = trim(std::string_view(t).substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", lineno);
        if (!kv.emplace(key, std::make_pair(value, lineno)).second)
            throw ParseError("duplicate key '" + key + "'", lineno);
    }

    ExperimentConfig c;
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second.first;
        kv.erase(it);
        return v;
    };
    // Model first so that model.* overrides apply to the chosen preset.
    if (auto v = take("model")) c.model = preset_model(*v);
    if (auto v = take("model.noise_sd")) set_noise(c.model, parse_number<double>("model.noise_sd", *v));
    {
        // Parameter overrides; keys of the other model family are rejected.
        auto* sm = std::get_if<SimpleLinearModel>(&c.model.params);
        auto* lm = std::get_if<TruncatedLimModel>(&c.model.params);
        SimpleLinearModel unused_s;
        TruncatedLimModel unused_l;
        auto param = [&](const std::string& key, auto& field, bool applies) {
            auto v = take(key);
            if (!v) return;
            if (!applies)
                throw std::invalid_argument("config key '" + key + "' does not apply to model '" +
                                            c.model.name + "'");
            field = parse_number<std::remove_reference_t<decltype(field)>>(key, *v);
        };
        SimpleLinearModel& s = sm ? *sm : unused_s;
        param("model.alpha0", s.alpha0, sm != nullptr);
        param("model.alpha1", s.alpha1, sm != nullptr);
        param("model.xi0", s.xi0, sm != nullptr);
        param("model.xi1", s.xi1, sm != nullptr);
        param("model.gamma0", s.gamma0, sm != nullptr);
        param("model.gamma1", s.gamma1, sm != nullptr);
        TruncatedLimModel& l = lm ? *lm : unused_l;
        param("model.alpha", l.alpha, lm != nullptr);
        param("model.beta", l.beta, lm != nullptr);
        param("model.gamma", l.gamma, lm != nullptr);
        param("model.J", l.J, lm != nullptr);
    }
    if (auto v = take("model.mc_reps")) c.mc_reps = parse_number<int>("model.mc_reps", *v);

    if (auto v = take("name")) c.name = *v;
    if (auto v = take("seed")) c.seed = parse_number<std::uint64_t>("seed", *v);
    if (auto v = take("trials")) c.trials = parse_number<std::size_t>("trials", *v);
    if (auto v = take("threads")) c.threads = parse_number<int>("threads", *v);
    if (auto v = take("p")) c.p = parse_number<double>("p", *v);
    if (auto v = take("q")) c.q = parse_number<double>("q", *v);

    if (auto v = take("graph")) {
        if (*v == "smallworld") c.graph.source = GraphSource::small_world;
        else if (*v == "cliques") c.graph.source = GraphSource::cliques;
        else if (*v == "edgelist") c.graph.source = GraphSource::edge_list;
        else throw std::invalid_argument("config key 'graph': unknown source '" + *v + "'");
    }
    if (auto v = take("graph.n")) {
        c.graph.sizes.clear();
        for (const auto& s : parse_list(*v)) c.graph.sizes.push_back(parse_number<std::size_t>("graph.n", s));
    }
    if (auto v = take("graph.mean_degree")) c.graph.mean_degree = parse_number<int>("graph.mean_degree", *v);
    if (auto v = take("graph.rewire")) c.graph.rewire_prob = parse_number<double>("graph.rewire", *v);
    if (auto v = take("graph.clique_min")) c.graph.clique_min = parse_number<int>("graph.clique_min", *v);
    if (auto v = take("graph.clique_max")) c.graph.clique_max = parse_number<int>("graph.clique_max", *v);
    if (auto v = take("graph.path")) c.graph.path = *v;
    if (auto v = take("graph.lcc")) c.graph.largest_component = parse_bool("graph.lcc", *v);

    if (auto v = take("estimators")) {
        c.estimators = parse_list(*v);
        for (const auto& e : c.estimators) check_member("estimators", e, known_estimators());
    }
    if (auto v = take("intervals")) {
        c.intervals = parse_list(*v);
        for (const auto& e : c.intervals) check_member("intervals", e, known_intervals());
    }

    if (auto v = take("T")) c.selection.T = parse_number<int>("T", *v);
    if (auto v = take("aggregators")) c.selection.aggs = parse_aggregator_list(*v);
    if (auto v = take("bases")) c.selection.features.bases = parse_base_feature_list(*v);
    if (auto v = take("edge_scope")) {
        if (*v == "closed") c.selection.features.edge_scope = EdgeScope::closed;
        else if (*v == "open") c.selection.features.edge_scope = EdgeScope::open;
        else throw std::invalid_argument("config key 'edge_scope': expected closed or open");
    }
    if (auto v = take("cv.folds")) c.selection.cv.folds = parse_number<int>("cv.folds", *v);
    if (auto v = take("cv.grid")) c.selection.cv.grid_size = parse_number<int>("cv.grid", *v);
    if (auto v = take("cv.min_ratio")) c.selection.cv.min_ratio = parse_number<double>("cv.min_ratio", *v);

    if (auto v = take("bootstrap.B")) c.bootstrap.B = parse_number<int>("bootstrap.B", *v);
    if (auto v = take("bootstrap.ell")) c.bootstrap.ell = parse_number<int>("bootstrap.ell", *v);
    if (auto v = take("bootstrap.alpha")) c.bootstrap.alpha = parse_number<double>("bootstrap.alpha", *v);
    if (auto v = take("bootstrap.k")) {
        if (*v == "auto") c.bootstrap.k_override.reset();
        else c.bootstrap.k_override = parse_number<int>("bootstrap.k", *v);
    }
    if (auto v = take("bootstrap.iid_clusters"))
        c.bootstrap.iid_clusters = parse_number<int>("bootstrap.iid_clusters", *v);

    if (!kv.empty()) {
        const auto& [key, where] = *kv.begin();
        throw ParseError("unknown config key '" + key + "'", where.second);
    }

    if (c.trials == 0) throw std::invalid_argument("config: trials must be >= 1");
    if (c.threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    if (!(c.p > 0.0 && c.p < 1.0)) throw std::invalid_argument("config: p must lie in (0, 1)");
    if (!(c.q >= 0.0 && c.q <= 1.0)) throw std::invalid_argument("config: q must lie in [0, 1]");
    if (c.graph.sizes.empty()) throw std::invalid_argument("config: graph.n is empty");
    if (c.graph.source == GraphSource::edge_list && c.graph.path.empty())
        throw std::invalid_argument("config: graph = edgelist needs graph.path");
    if (c.selection.T < 0) throw std::invalid_argument("config: T must be >= 0");
    if (c.mc_reps < 1) throw std::invalid_argument("config: model.mc_reps must be >= 1");
    validate(c.model);
    c.bootstrap.validate();
    return c;
}

ExperimentConfig ExperimentConfig::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file '" + path + "'");
    return parse(in);
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream o;
    auto num = [](double v) { return format_full(v); };
    o << "name = " << name << '\n'
      << "seed = " << seed << '\n'
      << "trials = " << trials << '\n'
      << "threads = " << threads << '\n'
      << "p = " << num(p) << '\n'
      << "q = " << num(q) << '\n';
    const char* src = graph.source == GraphSource::small_world ? "smallworld"
                      : graph.source == GraphSource::cliques   ? "cliques"
                                                               : "edgelist";
    std::vector<std::string> sizes;
    for (auto s : graph.sizes) sizes.push_back(std::to_string(s));
    o << "graph = " << src << '\n'
      << "graph.n = " << join(sizes) << '\n'
      << "graph.mean_degree = " << graph.mean_degree << '\n'
      << "graph.rewire = " << num(graph.rewire_prob) << '\n'
      << "graph.clique_min = " << graph.clique_min << '\n'
      << "graph.clique_max = " << graph.clique_max << '\n';
    if (!graph.path.empty()) o << "graph.path = " << graph.path << '\n';
    o << "graph.lcc = " << (graph.largest_component ? "true" : "false") << '\n'
      << "model = " << model.name << '\n'
      << "model.noise_sd = " << num(model.noise_sd()) << '\n';
    if (const auto* m = std::get_if<SimpleLinearModel>(&model.params))
        o << "model.alpha0 = " << num(m->alpha0) << '\n'
          << "model.alpha1 = " << num(m->alpha1) << '\n'
          << "model.xi0 = " << num(m->xi0) << '\n'
          << "model.xi1 = " << num(m->xi1) << '\n'
          << "model.gamma0 = " << num(m->gamma0) << '\n'
          << "model.gamma1 = " << num(m->gamma1) << '\n';
    if (const auto* m = std::get_if<TruncatedLimModel>(&model.params))
        o << "model.alpha = " << num(m->alpha) << '\n'
          << "model.beta = " << num(m->beta) << '\n'
          << "model.gamma = " << num(m->gamma) << '\n'
          << "model.J = " << m->J << '\n';
    o
      << "model.mc_reps = " << mc_reps << '\n'
      << "estimators = " << join(estimators) << '\n'
      << "intervals = " << join(intervals) << '\n'
      << "T = " << selection.T << '\n';
    std::vector<std::string> aggs, bases;
    for (auto a : selection.aggs) aggs.emplace_back(to_string(a));
    for (auto b : selection.features.bases) bases.emplace_back(to_string(b));
    o << "aggregators = " << join(aggs) << '\n'
      << "bases = " << join(bases) << '\n'
      << "edge_scope = " << (selection.features.edge_scope == EdgeScope::closed ? "closed" : "open") << '\n'
      << "cv.folds = " << selection.cv.folds << '\n'
      << "cv.grid = " << selection.cv.grid_size << '\n'
      << "cv.min_ratio = " << num(selection.cv.min_ratio) << '\n'
      << "bootstrap.B = " << bootstrap.B << '\n'
      << "bootstrap.ell = " << bootstrap.ell << '\n'
      << "bootstrap.alpha = " << num(bootstrap.alpha) << '\n'
      << "bootstrap.k = " << (bootstrap.k_override ? std::to_string(*bootstrap.k_override) : "auto") << '\n'
      << "bootstrap.iid_clusters = " << bootstrap.iid_clusters << '\n';
    return o.str();
}

}  // namespace netgate
