#include "netgate/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "netgate/csv.hpp"
#include "netgate/error.hpp"

namespace netgate {

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                        std::size_t* self_loops_dropped, std::size_t* duplicates_dropped) {
    std::vector<std::pair<NodeId, NodeId>> directed;
    directed.reserve(2 * edges.size());
    std::size_t loops = 0;
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) throw std::invalid_argument("edge endpoint out of range");
        if (a == b) {
            ++loops;
            continue;
        }
        directed.emplace_back(a, b);
        directed.emplace_back(b, a);
    }
    std::sort(directed.begin(), directed.end());
    const auto before = directed.size();
    directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

    if (self_loops_dropped) *self_loops_dropped = loops;
    if (duplicates_dropped) *duplicates_dropped = (before - directed.size()) / 2;

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (const auto& e : directed) ++g.offsets_[e.first + 1];
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.adjacency_.resize(directed.size());
    for (std::size_t k = 0; k < directed.size(); ++k) g.adjacency_[k] = directed[k].second;
    return g;
}

double Graph::mean_degree() const noexcept {
    const auto n = num_nodes();
    return n == 0 ? 0.0 : static_cast<double>(adjacency_.size()) / static_cast<double>(n);
}

bool Graph::has_edge(NodeId i, NodeId j) const noexcept {
    auto nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), j);
}

bool Graph::has_isolated_node() const noexcept {
    for (NodeId i = 0; i < num_nodes(); ++i)
        if (degree(i) == 0) return true;
    return false;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(num_edges());
    for (NodeId i = 0; i < num_nodes(); ++i)
        for (NodeId j : neighbors(i))
            if (i < j) out.emplace_back(i, j);
    return out;
}

namespace {

std::vector<std::string> tokenize(const std::string& line, EdgeListFormat format) {
    if (format == EdgeListFormat::csv ||
        (format == EdgeListFormat::automatic && line.find(',') != std::string::npos)) {
        auto fields = split_fields(line, ',');
        std::erase_if(fields, [](const std::string& s) { return s.empty(); });
        return fields;
    }
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        std::size_t end = pos;
        while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
        if (end > pos) out.emplace_back(line.substr(pos, end - pos));
        pos = end;
    }
    return out;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, EdgeListFormat format) {
    LoadedGraph out;
    std::unordered_map<std::string, NodeId> index;
    std::vector<std::pair<NodeId, NodeId>> edges;
    auto id_of = [&](const std::string& label) {
        auto [it, inserted] = index.try_emplace(label, static_cast<NodeId>(out.labels.size()));
        if (inserted) out.labels.push_back(label);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto tokens = tokenize(t, format);
        if (tokens.size() != 2)
            throw ParseError("expected two node labels, found " + std::to_string(tokens.size()),
                             line_no);
        const NodeId a = id_of(tokens[0]);
        const NodeId b = id_of(tokens[1]);
        edges.emplace_back(a, b);
    }
    if (edges.empty()) throw ParseError("edge list is empty", 0);
    out.graph = Graph::from_edges(out.labels.size(), edges, &out.self_loops_dropped,
                                  &out.duplicates_dropped);
    return out;
}

LoadedGraph load_edge_list_file(const std::string& path, EdgeListFormat format) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open edge list '" + path + "'");
    return load_edge_list(in, format);
}

void write_label_map(std::ostream& out, std::span<const std::string> labels) {
    out << "node,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
}

std::vector<std::size_t> connected_components(const Graph& g) {
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(g.num_nodes(), unset);
    std::vector<NodeId> stack;
    std::size_t next = 0;
    for (NodeId s = 0; s < g.num_nodes(); ++s) {
        if (comp[s] != unset) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : g.neighbors(u)) {
                if (comp[v] == unset) {
                    comp[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return comp;
}

Subgraph largest_connected_component(const Graph& g) {
    Subgraph out;
    if (g.num_nodes() == 0) return out;
    const auto comp = connected_components(g);
    const std::size_t count = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::size_t> sizes(count, 0);
    for (auto c : comp) ++sizes[c];
    // Components are numbered by smallest member, so the first maximum wins ties.
    const std::size_t best =
        static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

    std::vector<NodeId> new_id(g.num_nodes(), 0);
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        if (comp[i] == best) {
            new_id[i] = static_cast<NodeId>(out.original_ids.size());
            out.original_ids.push_back(i);
        }
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i : out.original_ids)
        for (NodeId j : g.neighbors(i))
            if (i < j) edges.emplace_back(new_id[i], new_id[j]);
    out.graph = Graph::from_edges(out.original_ids.size(), edges);
    return out;
}

BallSearch::BallSearch(const Graph& g) : graph_(&g), stamp_(g.num_nodes(), 0) {}

std::span<const NodeId> BallSearch::ball(NodeId i, int k) {
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    frontier_.clear();
    frontier_.push_back(i);
    stamp_[i] = epoch_;
    std::size_t level_begin = 0;
    for (int depth = 0; depth < k; ++depth) {
        const std::size_t level_end = frontier_.size();
        if (level_begin == level_end) break;
        for (std::size_t idx = level_begin; idx < level_end; ++idx) {
            for (NodeId v : graph_->neighbors(frontier_[idx])) {
                if (stamp_[v] != epoch_) {
                    stamp_[v] = epoch_;
                    frontier_.push_back(v);
                }
            }
        }
        level_begin = level_end;
    }
    return frontier_;
}

NodeSet k_hop_ball(const Graph& g, NodeId i, int k) {
    if (i >= g.num_nodes()) throw std::invalid_argument("k_hop_ball: node out of range");
    if (k < 1) throw std::invalid_argument("k_hop_ball: k must be positive");
    BallSearch search(g);
    auto b = search.ball(i, k);
    NodeSet out(b.begin(), b.end());
    std::sort(out.begin(), out.end());
    return out;
}

Eigen::VectorXd normalized_adjacency_apply(const Graph& g, const Eigen::VectorXd& v) {
    const auto n = g.num_nodes();
    if (static_cast<std::size_t>(v.size()) != n)
        throw std::invalid_argument("normalized_adjacency_apply: vector length differs from n");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (NodeId i = 0; i < n; ++i) {
        const auto d = g.degree(i);
        if (d == 0) continue;
        double s = 0.0;
        for (NodeId j : g.neighbors(i)) s += v[j];
        out[i] = s / static_cast<double>(d);
    }
    return out;
}

Graph generate_clique_graph(std::span<const int> sizes) {
    std::size_t n = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int s : sizes) {
        if (s < 1) throw std::invalid_argument("clique sizes must be positive");
        for (int a = 0; a < s; ++a)
            for (int b = a + 1; b < s; ++b)
                edges.emplace_back(static_cast<NodeId>(n + a), static_cast<NodeId>(n + b));
        n += static_cast<std::size_t>(s);
    }
    return Graph::from_edges(n, edges);
}

std::vector<int> draw_clique_sizes(std::size_t target_nodes, int min_size, int max_size,
                                   const SeedStream& stream) {
    if (min_size < 1 || max_size < min_size)
        throw std::invalid_argument("draw_clique_sizes: need 1 <= min_size <= max_size");
    auto eng = stream.engine();
    std::vector<int> sizes;
    std::size_t total = 0;
    const auto span = static_cast<std::uint64_t>(max_size - min_size + 1);
    while (total < target_nodes) {
        const int s = min_size + static_cast<int>(uniform_index(eng, span));
        sizes.push_back(s);
        total += static_cast<std::size_t>(s);
    }
    return sizes;
}

Graph generate_small_world(std::size_t n, int mean_degree, double rewire_prob,
                           const SeedStream& stream) {
    if (mean_degree < 0 || mean_degree % 2 != 0)
        throw std::invalid_argument("generate_small_world: mean_degree must be even");
    if (static_cast<std::size_t>(mean_degree) >= n)
        throw std::invalid_argument("generate_small_world: mean_degree must be below n");
    if (rewire_prob < 0.0 || rewire_prob > 1.0)
        throw std::invalid_argument("generate_small_world: rewire_prob must lie in [0,1]");
    auto eng = stream.engine();
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(n * static_cast<std::size_t>(mean_degree / 2));
    for (int offset = 1; offset <= mean_degree / 2; ++offset) {
        for (std::size_t i = 0; i < n; ++i) {
            NodeId target = static_cast<NodeId>((i + static_cast<std::size_t>(offset)) % n);
            if (uniform01(eng) < rewire_prob) {
                // Rewire to a uniform node other than i; duplicates are collapsed later.
                NodeId t;
                do {
                    t = static_cast<NodeId>(uniform_index(eng, n));
                } while (t == i);
                target = t;
            }
            edges.emplace_back(static_cast<NodeId>(i), target);
        }
    }
    return Graph::from_edges(n, edges);
}

}  // namespace netgate
