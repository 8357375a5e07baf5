#pragma once

#include <string>
#include <vector>

#include "lassospec/metric_graph.hpp"

namespace lassospec {

struct ProfileCounts {
    int n_dirichlet = 0;
    int n_neumann = 0;
    int betti = 0;
    double total_length = 0.0;
};

/// Bookkeeping predicted by the two sharpness-preserving operations: where
/// the shared eigenvalue lands in the new spectrum and what the new profile
/// looks like. To be verified against the solver.
struct SurgeryPrediction {
    double lambda = 0.0;
    int first_index = 1;
    int multiplicity = 1;
    ProfileCounts profile;
};

struct SurgeryResult {
    MetricGraph graph;
    SurgeryPrediction prediction;
};

struct JoinItem {
    MetricGraph graph;
    std::string dirichlet_vertex;
    double lambda = 0.0;
    int index = 1;         // smallest index of lambda in this graph's spectrum
    int multiplicity = 1;  // its multiplicity there
};

/// Merges one chosen Dirichlet pendant of each input graph into a single
/// vertex with standard conditions. Requires at least two items sharing the
/// same lambda. Predicted placement: first index 2 - p + sum(n_i),
/// multiplicity sum(m_i) - 1; profile (sum D_i - p, sum N_i, sum beta_i).
SurgeryResult join_at_dirichlet(const std::vector<JoinItem>& items);

/// Attaches a loop of length 2 j pi / sqrt(lambda) at a Neumann pendant,
/// which becomes a standard vertex of degree three. Predicted placement:
/// first index n + 2j - 1, multiplicity m + 1; profile (D, N - 1, beta + 1).
SurgeryResult attach_loop(const MetricGraph& g, const std::string& neumann_vertex, double lambda,
                          int harmonic, int index, int multiplicity);

struct SharpSequenceEntry {
    double lambda = 0.0;
    int first_index = 1;
    int multiplicity = 1;
    /// The published closed-form index for the same entry. It disagrees
    /// with the composed first_index whenever D > 0 or beta > 0; both are
    /// reported and the composed value is the one the solver confirms.
    int paper_formula_first_index = 1;
};

struct LassoTreeConstruction {
    MetricGraph graph;
    std::vector<SharpSequenceEntry> predictions;  // j = 1, 2, ...
};

/// Builds a lasso tree with prescribed Neumann pendants, Dirichlet pendants
/// and Betti number (N + D + B >= 2): N + B Neumann-Dirichlet intervals of
/// length pi/2 and D Dirichlet-Dirichlet intervals of length pi joined at
/// one Dirichlet vertex each, then B loops of length 2 pi attached to
/// distinct Neumann pendants. The result carries the sharp sequence
/// lambda_j = (2j - 1)^2 with multiplicity N + D + 2B - 1.
LassoTreeConstruction construct_lasso_tree(int n_neumann, int n_dirichlet, int betti,
                                           int sequence_length = 3);

/// The j-th entry of the predicted sharp sequence for the constructed
/// lasso tree, composed from the two index formulas:
///   first_index = 2 - (N+B) - 2D + (N+B+2D) j + B (4j - 3).
SharpSequenceEntry predicted_sharp_sequence(int n_neumann, int n_dirichlet, int betti, int j);

}  // namespace lassospec
