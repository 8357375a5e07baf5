#include "lassospec/surgery.hpp"

#include <cmath>
#include <numbers>

namespace lassospec {

namespace {

constexpr double kPi = std::numbers::pi;

ProfileCounts profile_counts(const MetricGraph& g) {
    const GraphProfile p = graph_profile(g);
    return {p.n_dirichlet, p.n_neumann, p.betti, p.total_length};
}

}  // namespace

SurgeryResult join_at_dirichlet(const std::vector<JoinItem>& items) {
    const size_t p = items.size();
    if (p < 2)
        throw std::invalid_argument(
            "join_at_dirichlet requires at least two graphs; joining one would merely change a "
            "boundary condition");
    const double lambda = items[0].lambda;
    for (const JoinItem& item : items) {
        if (std::abs(item.lambda - lambda) > 1e-9 * std::max(1.0, std::abs(lambda)))
            throw std::invalid_argument("join_at_dirichlet: items must share one eigenvalue");
        if (!item.graph.is_dirichlet(item.dirichlet_vertex))
            throw std::invalid_argument("'" + item.dirichlet_vertex +
                                        "' is not a Dirichlet vertex of its graph");
    }

    std::vector<MetricGraph> parts;
    parts.reserve(p);
    for (const JoinItem& item : items) parts.push_back(item.graph);
    const MetricGraph unionized = disjoint_union(parts);

    // The merged vertex keeps all source names, concatenated.
    std::string merged;
    std::vector<std::string> chosen;
    for (size_t i = 0; i < p; ++i) {
        chosen.push_back("u" + std::to_string(i) + "." + items[i].dirichlet_vertex);
        if (i) merged += "+";
        merged += chosen.back();
    }

    std::set<std::string> vertices = unionized.vertices();
    std::set<std::string> dirichlet = unionized.dirichlet();
    for (const std::string& c : chosen) {
        vertices.erase(c);
        dirichlet.erase(c);
    }
    vertices.insert(merged);

    std::vector<Edge> edges = unionized.edges();
    for (Edge& e : edges) {
        for (const std::string& c : chosen) {
            if (e.from == c) e.from = merged;
            if (e.to == c) e.to = merged;
        }
    }

    SurgeryResult result{
        MetricGraph::create(std::move(vertices), std::move(edges), std::move(dirichlet)),
        SurgeryPrediction{}};

    SurgeryPrediction& pred = result.prediction;
    pred.lambda = lambda;
    pred.first_index = 2 - static_cast<int>(p);
    pred.multiplicity = -1;
    for (const JoinItem& item : items) {
        const ProfileCounts c = profile_counts(item.graph);
        pred.profile.n_dirichlet += c.n_dirichlet;
        pred.profile.n_neumann += c.n_neumann;
        pred.profile.betti += c.betti;
        pred.profile.total_length += c.total_length;
        pred.first_index += item.index;
        pred.multiplicity += item.multiplicity;
    }
    pred.profile.n_dirichlet -= static_cast<int>(p);
    return result;
}

SurgeryResult attach_loop(const MetricGraph& g, const std::string& neumann_vertex, double lambda,
                          int harmonic, int index, int multiplicity) {
    if (!(lambda > 0.0)) throw std::invalid_argument("attach_loop: lambda must be positive");
    if (harmonic < 1) throw std::invalid_argument("attach_loop: harmonic must be >= 1");
    if (g.vertices().count(neumann_vertex) == 0)
        throw GraphError("unknown vertex '" + neumann_vertex + "'");
    if (!g.is_neumann_pendant(neumann_vertex))
        throw std::invalid_argument("'" + neumann_vertex + "' is not a Neumann pendant vertex");

    Edge loop;
    loop.id = "loop:" + neumann_vertex;
    while (g.find_edge(loop.id) != nullptr) loop.id += "+";
    loop.from = neumann_vertex;
    loop.to = neumann_vertex;
    loop.length = EdgeLength::pi_multiple(2.0 * harmonic / std::sqrt(lambda));

    std::vector<Edge> edges = g.edges();
    edges.push_back(std::move(loop));

    SurgeryResult result{MetricGraph::create(g.vertices(), std::move(edges), g.dirichlet()),
                         SurgeryPrediction{}};
    const ProfileCounts before = profile_counts(g);
    result.prediction.lambda = lambda;
    result.prediction.first_index = index + 2 * harmonic - 1;
    result.prediction.multiplicity = multiplicity + 1;
    result.prediction.profile = {before.n_dirichlet, before.n_neumann - 1, before.betti + 1,
                                 before.total_length + 2.0 * harmonic * kPi / std::sqrt(lambda)};
    return result;
}

SharpSequenceEntry predicted_sharp_sequence(int n_neumann, int n_dirichlet, int betti, int j) {
    if (n_neumann < 0 || n_dirichlet < 0 || betti < 0)
        throw std::invalid_argument("pendant and cycle counts must be nonnegative");
    if (n_neumann + n_dirichlet + betti < 2)
        throw std::invalid_argument("construction requires N + D + beta >= 2");
    if (j < 1) throw std::invalid_argument("sequence index j must be >= 1");

    const int nb = n_neumann + betti;  // Neumann-Dirichlet interval count
    SharpSequenceEntry e;
    e.lambda = static_cast<double>(2 * j - 1) * (2 * j - 1);
    e.multiplicity = n_neumann + n_dirichlet + 2 * betti - 1;
    // Join of nb + D intervals, then beta loop attachments with harmonic 2j - 1.
    e.first_index = 2 - nb - 2 * n_dirichlet + (nb + 2 * n_dirichlet) * j + betti * (4 * j - 3);
    e.paper_formula_first_index =
        2 - (n_neumann + 4 * betti) + (n_neumann + 4 * betti + 2 * n_dirichlet) * j;
    return e;
}

LassoTreeConstruction construct_lasso_tree(int n_neumann, int n_dirichlet, int betti,
                                           int sequence_length) {
    if (n_neumann < 0 || n_dirichlet < 0 || betti < 0)
        throw std::invalid_argument("pendant and cycle counts must be nonnegative");
    if (n_neumann + n_dirichlet + betti < 2)
        throw std::invalid_argument("construction requires N + D + beta >= 2");
    if (sequence_length < 1) throw std::invalid_argument("sequence_length must be >= 1");

    // Shared eigenvalue lambda = 1 (j = 1): index 1 in both interval types.
    std::vector<JoinItem> items;
    for (int i = 1; i <= n_neumann + betti; ++i) {
        const std::string n = "n" + std::to_string(i);
        const std::string d = "d" + std::to_string(i);
        Edge e{"nd" + std::to_string(i), n, d, EdgeLength::pi_multiple(0.5)};
        items.push_back({MetricGraph::create({n, d}, {e}, {d}), d, 1.0, 1, 1});
    }
    for (int i = 1; i <= n_dirichlet; ++i) {
        const std::string a = "p" + std::to_string(i);
        const std::string b = "q" + std::to_string(i);
        Edge e{"dd" + std::to_string(i), a, b, EdgeLength::pi_multiple(1.0)};
        items.push_back({MetricGraph::create({a, b}, {e}, {a, b}), b, 1.0, 1, 1});
    }

    SurgeryResult current = join_at_dirichlet(items);
    for (int b = 0; b < betti; ++b) {
        const std::string pendant = "u" + std::to_string(b) + ".n" + std::to_string(b + 1);
        current = attach_loop(current.graph, pendant, 1.0, 1, current.prediction.first_index,
                              current.prediction.multiplicity);
    }

    LassoTreeConstruction out{std::move(current.graph), {}};
    for (int j = 1; j <= sequence_length; ++j)
        out.predictions.push_back(predicted_sharp_sequence(n_neumann, n_dirichlet, betti, j));
    return out;
}

}  // namespace lassospec
