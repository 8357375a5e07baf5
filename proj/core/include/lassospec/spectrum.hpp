#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "lassospec/metric_graph.hpp"

namespace lassospec {

class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Two eigenvalue dips fell inside one scan cell and could not be told
/// apart; rerun with a smaller grid_step.
class UnresolvedClusterError : public SolverError {
public:
    explicit UnresolvedClusterError(const std::string& what) : SolverError(what) {}
};

struct SpectrumEntry {
    double lambda = 0.0;
    int multiplicity = 1;
    int first_index = 1;  // 1-based position in the ascending eigenvalue sequence
};

struct Spectrum {
    std::vector<SpectrumEntry> entries;
    double k_max = 0.0;
    double weyl_expected = 0.0;  // L * k_max / pi
    int weyl_found = 0;          // eigenvalues found, counted with multiplicity
    bool weyl_ok = true;

    int total_count() const { return weyl_found; }
    /// Eigenvalue at 1-based index n; throws SolverError when out of range.
    double lambda_at(int n) const;
};

struct SolverOptions {
    double k_max = 0.0;
    double grid_step = 0.0;   // 0: default pi / (20 L)
    double rank_tol = 1e-7;   // relative singular-value threshold for nullity
    double refine_tol = 1e-12;  // bracket width target, scaled by max(1, k)
    int threads = 1;            // 0: hardware concurrency
};

/// All eigenvalues with lambda <= k_max^2 of the Laplacian on g, ascending,
/// with multiplicities from the numerical nullity of the secular system.
/// lambda = 0 is prepended exactly when the Dirichlet set is empty. The
/// found count is checked against the Weyl estimate L*k_max/pi with slack
/// |V| + beta + 2; a mismatch only flips weyl_ok.
Spectrum find_spectrum(const MetricGraph& g, const SolverOptions& opts);
Spectrum find_spectrum(const MetricGraph& g, double k_max);

/// find_spectrum, halving grid_step (up to `max_retries` times) when the
/// scan reports an unresolved cluster or fails the Weyl count check.
Spectrum find_spectrum_robust(const MetricGraph& g, const SolverOptions& opts, int max_retries = 3);

/// Numerical nullity of the secular system at k = sqrt(lambda); 0 means
/// lambda is not an eigenvalue. lambda = 0 follows the Dirichlet-empty rule.
int multiplicity_at(const MetricGraph& g, double lambda, double rank_tol = 1e-7);

struct EigenspaceBasis {
    double lambda = 0.0;
    std::vector<std::string> edge_ids;  ///< column order of the coefficient pairs
    /// Orthonormal null-space vectors; vectors[v][i] = (a, b) on edge_ids[i].
    std::vector<std::vector<std::array<double, 2>>> vectors;
    std::map<std::string, double> per_edge_support;  ///< max over vectors of hypot(a, b)
};

/// Orthonormal coefficient basis of the eigenspace at lambda.
/// Throws SolverError when lambda is not an eigenvalue.
EigenspaceBasis eigenspace_basis(const MetricGraph& g, double lambda, double rank_tol = 1e-7);

/// edge id -> (support above tol). If every edge maps to true, a generic
/// combination of the basis vanishes on no edge.
std::map<std::string, bool> edge_support_report(const EigenspaceBasis& basis, double tol);

enum class IntervalKind { NN, ND, DD };

/// Closed-form interval spectra: NN (pi/L)^2 (n-1)^2, ND (pi/L)^2 (n-1/2)^2,
/// DD (pi/L)^2 n^2.
double interval_spectrum(double length, IntervalKind bc, int n);

/// Closed-form loop spectrum: lambda_1 = 0, lambda_2j = lambda_2j+1 = (2j pi/L)^2.
double loop_spectrum(double length, int n);

/// The two deviation forms for the loop spectrum, written against the
/// general bounds: (pi/L)^2 (2j - 2 + 3/2 + 1/2)^2 for the even entries and
/// (pi/L)^2 (2j + 1 - 1/2 - 1/2)^2 for the odd ones. Both must agree with
/// loop_spectrum.
double loop_even_deviation(double length, int j);
double loop_odd_deviation(double length, int j);

struct ScalingReport {
    std::string edge_id;
    double rho = 1.0;
    int index = 1;
    double lambda_before = 0.0;
    double lambda_after = 0.0;
    bool sandwich_ok = false;  // min{1, rho^-2} l_n <= l_n(rho) <= max{1, rho^-2} l_n
    bool monotone_ok = false;  // rho <= 1 raises, rho >= 1 lowers
};

/// Recomputes the n-th eigenvalue after scaling one edge length by rho and
/// checks the continuity sandwich and the monotonicity direction.
ScalingReport eigenvalue_under_scaling(const MetricGraph& g, const std::string& edge_id, double rho,
                                       int n);

/// n-th eigenvalue (1-based), choosing k_max adaptively.
double nth_eigenvalue(const MetricGraph& g, int n);

}  // namespace lassospec
