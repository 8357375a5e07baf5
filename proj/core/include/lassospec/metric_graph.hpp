#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lassospec {

/// Raised on invalid graph input: bad file syntax, violated invariants,
/// disconnected graphs, and the like.
class GraphError : public std::runtime_error {
public:
    explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

/// Edge length that remembers whether it was given as a multiple of pi,
/// so serialization can emit `length_pi` again. Arithmetic keeps the
/// pi-multiple form when both operands carry it.
class EdgeLength {
public:
    static EdgeLength real(double value) { return EdgeLength(value, std::nullopt); }
    static EdgeLength pi_multiple(double coeff);

    double value() const { return value_; }
    bool is_pi_multiple() const { return pi_coeff_.has_value(); }
    double pi_coeff() const { return pi_coeff_.value(); }

    EdgeLength operator+(const EdgeLength& other) const;
    EdgeLength scaled(double factor) const;

    friend bool operator==(const EdgeLength&, const EdgeLength&) = default;

private:
    EdgeLength(double v, std::optional<double> c) : value_(v), pi_coeff_(c) {}
    double value_ = 0.0;
    std::optional<double> pi_coeff_;
};

struct Edge {
    std::string id;
    std::string from;
    std::string to;
    EdgeLength length = EdgeLength::real(1.0);

    bool is_loop() const { return from == to; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// A compact metric graph together with its set of Dirichlet pendant
/// vertices. Standard (continuity + Kirchhoff) conditions are implied at
/// every non-Dirichlet vertex. Immutable after construction; all
/// operations on it are pure functions, so instances may be shared
/// freely across threads.
class MetricGraph {
public:
    enum class Connectivity { required, relaxed };

    /// Validates and builds a graph. Throws GraphError on: empty edge set,
    /// nonpositive length, unknown endpoint, duplicate edge id, a Dirichlet
    /// vertex that is not pendant, or (unless relaxed) a disconnected graph.
    static MetricGraph create(std::set<std::string> vertices, std::vector<Edge> edges,
                              std::set<std::string> dirichlet,
                              Connectivity connectivity = Connectivity::required);

    const std::set<std::string>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::set<std::string>& dirichlet() const { return dirichlet_; }

    bool is_connected() const { return n_components_ == 1; }
    int component_count() const { return n_components_; }

    /// Vertex degree; a loop contributes two.
    int degree(const std::string& vertex) const;
    bool is_dirichlet(const std::string& vertex) const { return dirichlet_.count(vertex) > 0; }
    bool is_neumann_pendant(const std::string& vertex) const;

    const Edge* find_edge(const std::string& edge_id) const;

    double total_length() const;
    int betti() const { return static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) + n_components_; }

    /// Copy with one edge length multiplied by `factor` (> 0).
    MetricGraph with_scaled_edge(const std::string& edge_id, double factor) const;

    friend bool operator==(const MetricGraph& a, const MetricGraph& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.dirichlet_ == b.dirichlet_;
    }

private:
    MetricGraph() = default;

    std::set<std::string> vertices_;
    std::vector<Edge> edges_;
    std::set<std::string> dirichlet_;
    std::map<std::string, int> degree_;
    int n_components_ = 1;
};

/// Derived spectral invariants of a graph.
struct GraphProfile {
    double total_length = 0.0;
    int n_dirichlet = 0;
    int n_neumann = 0;
    int betti = 0;
    std::map<std::string, int> degree;
    std::set<std::string> dirichlet_pendants;
    std::set<std::string> neumann_pendants;
};

GraphProfile graph_profile(const MetricGraph& g);

/// Removes every vertex of degree two by merging its pair of distinct
/// incident edges into one edge carrying the summed length. A pure cycle
/// collapses to a loop graph keeping the smallest vertex identifier.
/// Total length, pendant sets and the Betti number are unchanged.
MetricGraph suppress_degree_two(const MetricGraph& g);

/// True iff g is a single loop edge on a single vertex.
bool is_loop_graph(const MetricGraph& g);

/// True iff suppress_degree_two(g) is a loop graph, the one case excluded
/// from the eigenvalue bounds.
bool is_cycle_exceptional(const MetricGraph& g);

/// Tree obtained by contracting each 2-edge-connected component of g to a
/// single vertex. Its edges are exactly the bridges of g. A contraction
/// with no edges left counts as having one pendant vertex.
struct CycleContraction {
    std::set<std::string> vertices;  ///< component representatives (smallest member id)
    std::vector<Edge> edges;         ///< the bridges, endpoints remapped
    int pendant_count = 0;
};

CycleContraction contract_cycles(const MetricGraph& g);

/// True iff, after degree-two suppression, removing all loop edges leaves a
/// tree and every loop sits at a vertex of degree exactly three.
/// Throws GraphError when the suppressed graph is a loop graph.
bool is_lasso_tree(const MetricGraph& g);

/// Identifier-renamed union of several graphs ("u0.", "u1.", ... prefixes).
/// The result is typically disconnected and intended to be consumed by the
/// surgery operations. Throws GraphError on an empty sequence.
MetricGraph disjoint_union(const std::vector<MetricGraph>& parts);

}  // namespace lassospec
