#include "lassospec/secular.hpp"

#include <cmath>
#include <stdexcept>

namespace lassospec {

namespace {

struct EdgeEnd {
    size_t edge;    // index into g.edges()
    bool at_start;  // x = 0 end (the `from` endpoint)
};

// f_e evaluated at the end: (cos, sin) coefficients for (a_e, b_e).
inline void add_value(Eigen::MatrixXd& m, Eigen::Index row, const EdgeEnd& end, double k,
                      double len, double sign) {
    if (end.at_start) {
        m(row, static_cast<Eigen::Index>(2 * end.edge)) += sign;
    } else {
        m(row, static_cast<Eigen::Index>(2 * end.edge)) += sign * std::cos(k * len);
        m(row, static_cast<Eigen::Index>(2 * end.edge + 1)) += sign * std::sin(k * len);
    }
}

// Oriented derivative at the end, divided by k: f'(0)/k = b at the start and
// -f'(len)/k = a sin(k len) - b cos(k len) at the far end.
inline void add_derivative(Eigen::MatrixXd& m, Eigen::Index row, const EdgeEnd& end, double k,
                           double len) {
    if (end.at_start) {
        m(row, static_cast<Eigen::Index>(2 * end.edge + 1)) += 1.0;
    } else {
        m(row, static_cast<Eigen::Index>(2 * end.edge)) += std::sin(k * len);
        m(row, static_cast<Eigen::Index>(2 * end.edge + 1)) += -std::cos(k * len);
    }
}

}  // namespace

SecularSystem assemble_secular_system(const MetricGraph& g, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("spectral parameter k must be positive");

    const auto& edges = g.edges();
    const Eigen::Index dim = static_cast<Eigen::Index>(2 * edges.size());

    // Incident edge ends per vertex, in edge order, start end before far end.
    std::map<std::string, std::vector<EdgeEnd>> ends;
    for (size_t i = 0; i < edges.size(); ++i) {
        ends[edges[i].from].push_back({i, true});
        ends[edges[i].to].push_back({i, false});
    }

    SecularSystem sys;
    sys.k = k;
    sys.matrix = Eigen::MatrixXd::Zero(dim, dim);
    sys.column_edges.reserve(edges.size());
    for (const Edge& e : edges) sys.column_edges.push_back(e.id);

    Eigen::Index row = 0;
    for (const std::string& v : g.vertices()) {
        const auto& ve = ends.at(v);
        for (size_t j = 0; j + 1 < ve.size(); ++j) {
            add_value(sys.matrix, row, ve[j], k, edges[ve[j].edge].length.value(), +1.0);
            add_value(sys.matrix, row, ve[j + 1], k, edges[ve[j + 1].edge].length.value(), -1.0);
            sys.row_kinds.push_back(RowKind::continuity);
            ++row;
        }
        if (g.is_dirichlet(v)) {
            add_value(sys.matrix, row, ve[0], k, edges[ve[0].edge].length.value(), +1.0);
            sys.row_kinds.push_back(RowKind::dirichlet);
        } else {
            for (const EdgeEnd& end : ve)
                add_derivative(sys.matrix, row, end, k, edges[end.edge].length.value());
            sys.row_kinds.push_back(RowKind::kirchhoff);
        }
        ++row;
    }
    if (row != dim) throw std::logic_error("secular system is not square");

    constexpr double kNormalizationFloor = 0.5;
    for (Eigen::Index r = 0; r < dim; ++r) {
        const double norm = sys.matrix.row(r).cwiseAbs().maxCoeff();
        if (norm >= kNormalizationFloor) sys.matrix.row(r) /= norm;
    }
    return sys;
}

Eigen::VectorXd secular_singular_values(const MetricGraph& g, double k) {
    const SecularSystem sys = assemble_secular_system(g, k);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix);
    return svd.singularValues();
}

double sigma_min(const MetricGraph& g, double k) {
    const Eigen::VectorXd sv = secular_singular_values(g, k);
    return sv(sv.size() - 1);
}

}  // namespace lassospec
