#pragma once

#include <string>
#include <vector>

#include "lassospec/metric_graph.hpp"
#include "lassospec/spectrum.hpp"

namespace lassospec {

/// The suppressed graph is a loop graph, for which neither eigenvalue
/// estimate holds.
class ExceptionalGraphError : public std::runtime_error {
public:
    explicit ExceptionalGraphError(const std::string& what) : std::runtime_error(what) {}
};

/// The few invariants the eigenvalue estimates depend on.
struct BoundsProfile {
    double total_length = 0.0;
    int n_dirichlet = 0;
    int n_neumann = 0;
    int betti = 0;
    bool cycle_exceptional = false;

    /// After suppression, a graph with two pendants and no cycles is a
    /// single interval; the only shape admitting simple sharp eigenvalues.
    bool is_interval() const { return betti == 0 && n_dirichlet + n_neumann == 2; }
};

BoundsProfile bounds_profile(const MetricGraph& g);

/// Lower estimate for the n-th eigenvalue:
///   (pi/L)^2 n^2/4                  for n <  N + beta,
///   (pi/L)^2 (n - (N + beta)/2)^2   for n >= N + beta.
/// Defined for n >= 2, and for n = 1 only when there is a Dirichlet pendant
/// (otherwise lambda_1 = 0 and no bound is asserted).
double lower_bound(const BoundsProfile& p, int n);

/// Upper estimate (pi/L)^2 (n - 2 + D + (N + beta)/2 + beta)^2.
double upper_bound(const BoundsProfile& p, int n);

/// Multiplicity ceiling D + N + 2 beta - 1 from comparing the two estimates.
int max_multiplicity_upper(const BoundsProfile& p);

/// Multiplicity ceiling beta + P^T - 1, where P^T counts the pendants of
/// the cycle-contracted tree. Never larger than max_multiplicity_upper,
/// with equality exactly on lasso trees.
int max_multiplicity_contracted(const MetricGraph& g);

struct SharpnessEntry {
    double lambda = 0.0;
    int first_index = 1;
    int multiplicity = 1;
    bool lower_sharp = false;         // lambda attains the lower bound at its last index
    bool upper_sharp = false;         // lambda attains the upper bound at its first index
    bool sharp_degenerate = false;    // multiplicity >= 2 and both of the above
    bool simple_sharp = false;        // multiplicity == 1 and both of the above
    bool maximally_degenerate = false;  // multiplicity == max_multiplicity_upper
};

struct SharpnessReport {
    std::vector<SharpnessEntry> entries;
    bool characterization_ok = true;
    bool eq4_ok = true;
    std::vector<std::string> violations;
};

/// Flags each distinct eigenvalue of s against the bounds, with relative
/// tolerance tol for equality, then runs verify_characterization and stores
/// its outcome. Throws ExceptionalGraphError on loop graphs.
SharpnessReport classify_spectrum(const Spectrum& s, const BoundsProfile& p, double tol = 1e-6);

struct CharacterizationCheck {
    bool ok = true;
    bool characterization_ok = true;
    bool eq4_ok = true;
    std::vector<std::string> violations;
};

/// Checks a report for
///  (a) sharp <=> maximally degenerate on degenerate entries, and
///      simple-sharp flags only on intervals,
///  (b) lower_bound(n + m - 1) <= upper_bound(n) for every degenerate entry,
///  (c) strict monotonicity of both bound sequences over the report range,
///  (d) strict spectral gaps around sharp entries.
/// Violations are data, not errors.
CharacterizationCheck verify_characterization(const SharpnessReport& r, const BoundsProfile& p);

/// Profiles (D, N, beta) that admit simple sharp eigenvalues, from the
/// exhaustive case analysis; exactly the three interval types.
struct SimpleSharpProfile {
    int n_dirichlet = 0;
    int n_neumann = 0;
    int betti = 0;
    std::string case_label;
};

std::vector<SimpleSharpProfile> simple_sharp_profiles();

}  // namespace lassospec
