#include "lassospec/metric_graph.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace lassospec {

EdgeLength EdgeLength::pi_multiple(double coeff) {
    return EdgeLength(coeff * std::numbers::pi, coeff);
}

EdgeLength EdgeLength::operator+(const EdgeLength& other) const {
    if (is_pi_multiple() && other.is_pi_multiple())
        return pi_multiple(pi_coeff() + other.pi_coeff());
    return real(value_ + other.value_);
}

EdgeLength EdgeLength::scaled(double factor) const {
    if (is_pi_multiple()) return pi_multiple(pi_coeff() * factor);
    return real(value_ * factor);
}

namespace {

// Union-find over a fixed vertex set, used for component counting.
class DisjointSets {
public:
    explicit DisjointSets(const std::set<std::string>& names) {
        for (const auto& n : names) parent_[n] = n;
    }
    const std::string& find(const std::string& x) {
        std::string* p = &parent_.at(x);
        if (*p == x) return parent_.find(x)->first;
        const std::string& root = find(*p);
        *p = root;
        return root;
    }
    void unite(const std::string& a, const std::string& b) {
        const std::string ra = find(a), rb = find(b);
        if (ra != rb) parent_[rb] = ra;
    }
    int count_roots() const {
        int c = 0;
        for (const auto& [k, v] : parent_)
            if (k == v) ++c;
        return c;
    }

private:
    std::map<std::string, std::string> parent_;
};

}  // namespace

MetricGraph MetricGraph::create(std::set<std::string> vertices, std::vector<Edge> edges,
                                std::set<std::string> dirichlet, Connectivity connectivity) {
    if (edges.empty()) throw GraphError("graph has no edges");

    MetricGraph g;
    g.vertices_ = std::move(vertices);
    g.edges_ = std::move(edges);
    g.dirichlet_ = std::move(dirichlet);

    std::set<std::string> edge_ids;
    for (const Edge& e : g.edges_) {
        if (!edge_ids.insert(e.id).second) throw GraphError("duplicate edge id '" + e.id + "'");
        if (!(e.length.value() > 0.0))
            throw GraphError("nonpositive length on edge '" + e.id + "'");
        for (const std::string* v : {&e.from, &e.to})
            if (g.vertices_.count(*v) == 0)
                throw GraphError("unknown vertex '" + *v + "' referenced by edge '" + e.id + "'");
        g.degree_[e.from] += 1;
        g.degree_[e.to] += 1;
    }

    for (const std::string& v : g.vertices_)
        if (g.degree_.count(v) == 0) {
            if (connectivity == Connectivity::required)
                throw GraphError("disconnected graph: isolated vertex '" + v + "'");
            throw GraphError("isolated vertex '" + v + "'");
        }

    for (const std::string& d : g.dirichlet_) {
        if (g.vertices_.count(d) == 0) throw GraphError("unknown vertex '" + d + "' in dirichlet set");
        if (g.degree_.at(d) != 1)
            throw GraphError("dirichlet vertex not pendant: '" + d + "' has degree " +
                             std::to_string(g.degree_.at(d)));
    }

    DisjointSets ds(g.vertices_);
    for (const Edge& e : g.edges_) ds.unite(e.from, e.to);
    g.n_components_ = ds.count_roots();
    if (connectivity == Connectivity::required && g.n_components_ != 1)
        throw GraphError("disconnected graph");

    return g;
}

int MetricGraph::degree(const std::string& vertex) const {
    auto it = degree_.find(vertex);
    if (it == degree_.end()) throw GraphError("unknown vertex '" + vertex + "'");
    return it->second;
}

bool MetricGraph::is_neumann_pendant(const std::string& vertex) const {
    return degree(vertex) == 1 && !is_dirichlet(vertex);
}

const Edge* MetricGraph::find_edge(const std::string& edge_id) const {
    for (const Edge& e : edges_)
        if (e.id == edge_id) return &e;
    return nullptr;
}

double MetricGraph::total_length() const {
    double total = 0.0;
    for (const Edge& e : edges_) total += e.length.value();
    return total;
}

MetricGraph MetricGraph::with_scaled_edge(const std::string& edge_id, double factor) const {
    if (!(factor > 0.0)) throw GraphError("scale factor must be positive");
    if (find_edge(edge_id) == nullptr) throw GraphError("unknown edge '" + edge_id + "'");
    std::vector<Edge> edges = edges_;
    for (Edge& e : edges)
        if (e.id == edge_id) e.length = e.length.scaled(factor);
    return create(vertices_, std::move(edges), dirichlet_,
                  is_connected() ? Connectivity::required : Connectivity::relaxed);
}

GraphProfile graph_profile(const MetricGraph& g) {
    GraphProfile p;
    p.total_length = g.total_length();
    p.betti = g.betti();
    for (const std::string& v : g.vertices()) {
        const int d = g.degree(v);
        p.degree[v] = d;
        if (d == 1) {
            if (g.is_dirichlet(v))
                p.dirichlet_pendants.insert(v);
            else
                p.neumann_pendants.insert(v);
        }
    }
    p.n_dirichlet = static_cast<int>(p.dirichlet_pendants.size());
    p.n_neumann = static_cast<int>(p.neumann_pendants.size());
    return p;
}

namespace {

std::vector<std::string> split_plus(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '+') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// Canonical id for an edge merged out of several originals: the sorted
// '+'-join of all constituent ids, independent of merge order.
std::string merged_edge_id(const std::string& a, const std::string& b,
                           const std::set<std::string>& taken) {
    std::vector<std::string> parts = split_plus(a);
    for (auto& p : split_plus(b)) parts.push_back(p);
    std::sort(parts.begin(), parts.end());
    std::string id;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) id += '+';
        id += parts[i];
    }
    while (taken.count(id) > 0) id += '+';
    return id;
}

}  // namespace

MetricGraph suppress_degree_two(const MetricGraph& g) {
    std::set<std::string> vertices = g.vertices();
    std::vector<Edge> edges = g.edges();

    for (;;) {
        std::map<std::string, std::vector<size_t>> incident;  // distinct edge indices per vertex
        std::map<std::string, int> degree;
        for (size_t i = 0; i < edges.size(); ++i) {
            degree[edges[i].from] += 1;
            degree[edges[i].to] += 1;
            incident[edges[i].from].push_back(i);
            if (!edges[i].is_loop()) incident[edges[i].to].push_back(i);
        }

        // Suppressible: degree two realized by two distinct edges. Working from
        // the largest id down leaves the smallest vertex standing when the whole
        // graph is one cycle.
        std::string victim;
        for (const auto& [v, d] : degree)
            if (d == 2 && incident[v].size() == 2 && (victim.empty() || v > victim)) victim = v;
        if (victim.empty()) break;

        const size_t i1 = incident[victim][0], i2 = incident[victim][1];
        const Edge& e1 = edges[i1];
        const Edge& e2 = edges[i2];
        const std::string a = (e1.from == victim) ? e1.to : e1.from;
        const std::string b = (e2.from == victim) ? e2.to : e2.from;

        std::set<std::string> taken;
        for (size_t i = 0; i < edges.size(); ++i)
            if (i != i1 && i != i2) taken.insert(edges[i].id);

        Edge merged;
        merged.id = merged_edge_id(e1.id, e2.id, taken);
        merged.from = std::min(a, b);
        merged.to = std::max(a, b);
        merged.length = e1.length + e2.length;

        edges[std::min(i1, i2)] = merged;
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(std::max(i1, i2)));
        vertices.erase(victim);
    }

    return MetricGraph::create(std::move(vertices), std::move(edges), g.dirichlet(),
                               g.is_connected() ? MetricGraph::Connectivity::required
                                                : MetricGraph::Connectivity::relaxed);
}

bool is_loop_graph(const MetricGraph& g) {
    return g.edges().size() == 1 && g.edges()[0].is_loop();
}

bool is_cycle_exceptional(const MetricGraph& g) { return is_loop_graph(suppress_degree_two(g)); }

namespace {

// Bridges of a connected multigraph by iterative DFS low-link. Loops are
// never bridges; a parallel edge acts as a back edge for its twin.
std::vector<bool> find_bridges(const MetricGraph& g) {
    const auto& edges = g.edges();
    std::vector<bool> bridge(edges.size(), false);

    std::map<std::string, std::vector<std::pair<size_t, std::string>>> adj;
    for (size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].is_loop()) continue;
        adj[edges[i].from].emplace_back(i, edges[i].to);
        adj[edges[i].to].emplace_back(i, edges[i].from);
    }

    std::map<std::string, int> disc, low;
    int timer = 0;

    struct Frame {
        std::string vertex;
        size_t enter_edge;  // edge used to reach vertex; SIZE_MAX at the root
        size_t next = 0;    // adjacency cursor
    };

    for (const std::string& start : g.vertices()) {
        if (disc.count(start) > 0 || adj.count(start) == 0) continue;
        std::vector<Frame> stack;
        stack.push_back({start, static_cast<size_t>(-1)});
        disc[start] = low[start] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            auto& neighbors = adj[f.vertex];
            if (f.next < neighbors.size()) {
                auto [edge_idx, other] = neighbors[f.next++];
                if (edge_idx == f.enter_edge) continue;
                if (disc.count(other) > 0) {
                    low[f.vertex] = std::min(low[f.vertex], disc[other]);
                } else {
                    disc[other] = low[other] = timer++;
                    stack.push_back({other, edge_idx});
                }
            } else {
                if (f.enter_edge != static_cast<size_t>(-1)) {
                    const Frame& parent = stack[stack.size() - 2];
                    if (low[f.vertex] > disc[parent.vertex]) bridge[f.enter_edge] = true;
                    low[parent.vertex] = std::min(low[parent.vertex], low[f.vertex]);
                }
                stack.pop_back();
            }
        }
    }
    return bridge;
}

}  // namespace

CycleContraction contract_cycles(const MetricGraph& g) {
    if (!g.is_connected()) throw GraphError("contract_cycles requires a connected graph");
    const auto& edges = g.edges();
    std::vector<bool> bridge = find_bridges(g);

    DisjointSets ds(g.vertices());
    for (size_t i = 0; i < edges.size(); ++i)
        if (!bridge[i]) ds.unite(edges[i].from, edges[i].to);

    // Smallest member id names each contracted component.
    std::map<std::string, std::string> rep;
    for (const std::string& v : g.vertices()) {
        const std::string root = ds.find(v);
        auto it = rep.find(root);
        if (it == rep.end() || v < it->second) rep[root] = v;
    }

    CycleContraction out;
    std::map<std::string, int> tree_degree;
    for (const std::string& v : g.vertices()) out.vertices.insert(rep.at(ds.find(v)));
    for (size_t i = 0; i < edges.size(); ++i) {
        if (!bridge[i]) continue;
        Edge e = edges[i];
        e.from = rep.at(ds.find(e.from));
        e.to = rep.at(ds.find(e.to));
        tree_degree[e.from] += 1;
        tree_degree[e.to] += 1;
        out.edges.push_back(std::move(e));
    }

    if (out.edges.empty()) {
        out.pendant_count = 1;  // single-vertex tree convention
    } else {
        for (const std::string& v : out.vertices)
            if (tree_degree[v] == 1) out.pendant_count += 1;
    }
    return out;
}

bool is_lasso_tree(const MetricGraph& g) {
    if (!g.is_connected()) throw GraphError("is_lasso_tree requires a connected graph");
    const MetricGraph s = suppress_degree_two(g);
    if (is_loop_graph(s)) throw GraphError("exceptional: loop graph");

    int n_loops = 0;
    for (const Edge& e : s.edges()) {
        if (!e.is_loop()) continue;
        ++n_loops;
        if (s.degree(e.from) != 3) return false;
    }
    const int residual_betti =
        static_cast<int>(s.edges().size()) - n_loops - static_cast<int>(s.vertices().size()) + 1;
    return residual_betti == 0;
}

MetricGraph disjoint_union(const std::vector<MetricGraph>& parts) {
    if (parts.empty()) throw GraphError("empty union");

    std::set<std::string> vertices, dirichlet;
    std::vector<Edge> edges;
    for (size_t i = 0; i < parts.size(); ++i) {
        const std::string prefix = "u" + std::to_string(i) + ".";
        for (const std::string& v : parts[i].vertices()) vertices.insert(prefix + v);
        for (const std::string& d : parts[i].dirichlet()) dirichlet.insert(prefix + d);
        for (Edge e : parts[i].edges()) {
            e.id = prefix + e.id;
            e.from = prefix + e.from;
            e.to = prefix + e.to;
            edges.push_back(std::move(e));
        }
    }
    return MetricGraph::create(std::move(vertices), std::move(edges), std::move(dirichlet),
                               MetricGraph::Connectivity::relaxed);
}

}  // namespace lassospec
