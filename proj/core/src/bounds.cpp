#include "lassospec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lassospec {

namespace {

constexpr double kPi = std::numbers::pi;

void require_regular(const BoundsProfile& p) {
    if (p.cycle_exceptional)
        throw ExceptionalGraphError("exceptional: loop graph (no eigenvalue estimates)");
}

bool near(double lambda, double bound, double tol) {
    return std::abs(lambda - bound) <= tol * std::max({1.0, std::abs(lambda), std::abs(bound)});
}

}  // namespace

BoundsProfile bounds_profile(const MetricGraph& g) {
    const GraphProfile prof = graph_profile(g);
    BoundsProfile p;
    p.total_length = prof.total_length;
    p.n_dirichlet = prof.n_dirichlet;
    p.n_neumann = prof.n_neumann;
    p.betti = prof.betti;
    p.cycle_exceptional = is_cycle_exceptional(g);
    return p;
}

double lower_bound(const BoundsProfile& p, int n) {
    require_regular(p);
    if (n < 1) throw std::invalid_argument("lower_bound: n must be >= 1");
    if (n == 1 && p.n_dirichlet == 0)
        throw std::invalid_argument(
            "lower_bound: undefined for n = 1 without Dirichlet vertices (lambda_1 = 0)");
    const double s = kPi / p.total_length;
    const int nb = p.n_neumann + p.betti;
    if (n < nb) return s * s * n * n / 4.0;
    const double base = n - nb / 2.0;
    return s * s * base * base;
}

double upper_bound(const BoundsProfile& p, int n) {
    require_regular(p);
    if (n < 1) throw std::invalid_argument("upper_bound: n must be >= 1");
    const double s = kPi / p.total_length;
    const double base = n - 2.0 + p.n_dirichlet + (p.n_neumann + p.betti) / 2.0 + p.betti;
    return s * s * base * base;
}

int max_multiplicity_upper(const BoundsProfile& p) {
    require_regular(p);
    const int m = p.n_dirichlet + p.n_neumann + 2 * p.betti - 1;
    if (m < 1)
        throw GraphError("inadmissible profile: D + N + 2 beta - 1 < 1");
    return m;
}

int max_multiplicity_contracted(const MetricGraph& g) {
    if (is_cycle_exceptional(g))
        throw ExceptionalGraphError("exceptional: loop graph (no eigenvalue estimates)");
    const CycleContraction c = contract_cycles(g);
    return g.betti() + c.pendant_count - 1;
}

SharpnessReport classify_spectrum(const Spectrum& s, const BoundsProfile& p, double tol) {
    require_regular(p);
    const int m_upper = max_multiplicity_upper(p);

    SharpnessReport report;
    for (const SpectrumEntry& e : s.entries) {
        SharpnessEntry se;
        se.lambda = e.lambda;
        se.first_index = e.first_index;
        se.multiplicity = e.multiplicity;
        const int last = e.first_index + e.multiplicity - 1;

        se.upper_sharp = near(e.lambda, upper_bound(p, e.first_index), tol);
        if (last == 1 && p.n_dirichlet == 0)
            se.lower_sharp = false;  // lambda_1 = 0 carries no lower estimate
        else
            se.lower_sharp = near(e.lambda, lower_bound(p, last), tol);

        se.sharp_degenerate = e.multiplicity >= 2 && se.lower_sharp && se.upper_sharp;
        se.simple_sharp = e.multiplicity == 1 && se.lower_sharp && se.upper_sharp;
        se.maximally_degenerate = e.multiplicity == m_upper;
        report.entries.push_back(se);
    }

    const CharacterizationCheck check = verify_characterization(report, p);
    report.characterization_ok = check.characterization_ok;
    report.eq4_ok = check.eq4_ok;
    report.violations = check.violations;
    return report;
}

CharacterizationCheck verify_characterization(const SharpnessReport& r, const BoundsProfile& p) {
    require_regular(p);
    CharacterizationCheck out;
    const int m_upper = max_multiplicity_upper(p);

    auto violation = [&out](bool* flag, const std::string& msg) {
        if (flag) *flag = false;
        out.violations.push_back(msg);
    };

    int max_last = 0;
    for (size_t i = 0; i < r.entries.size(); ++i) {
        const SharpnessEntry& e = r.entries[i];
        const int last = e.first_index + e.multiplicity - 1;
        max_last = std::max(max_last, last);

        if (e.multiplicity >= 2) {
            if (e.sharp_degenerate != (e.multiplicity == m_upper))
                violation(&out.characterization_ok,
                          "entry n=" + std::to_string(e.first_index) +
                              ": sharp and maximally degenerate flags disagree (m=" +
                              std::to_string(e.multiplicity) + ", m_U=" + std::to_string(m_upper) +
                              ")");
            const double lb = lower_bound(p, last);
            const double ub = upper_bound(p, e.first_index);
            if (lb > ub * (1.0 + 1e-12) + 1e-12)
                violation(&out.eq4_ok, "entry n=" + std::to_string(e.first_index) +
                                           ": lower bound at last index exceeds upper bound");
        } else if (e.simple_sharp && !p.is_interval()) {
            violation(&out.characterization_ok,
                      "entry n=" + std::to_string(e.first_index) +
                          ": simple sharp eigenvalue on a non-interval graph");
        }

        // Strict gaps around sharp entries.
        if (e.lower_sharp && i + 1 < r.entries.size() &&
            !(r.entries[i + 1].lambda > e.lambda * (1.0 + 1e-12)))
            violation(nullptr, "entry n=" + std::to_string(e.first_index) +
                                   ": lower sharp but not followed by a strictly larger eigenvalue");
        if (e.upper_sharp && i > 0 && !(r.entries[i - 1].lambda < e.lambda * (1.0 - 1e-12)))
            violation(nullptr, "entry n=" + std::to_string(e.first_index) +
                                   ": upper sharp but not preceded by a strictly smaller eigenvalue");
        if (i + 1 < r.entries.size() &&
            r.entries[i + 1].first_index != e.first_index + e.multiplicity)
            violation(nullptr, "entry n=" + std::to_string(r.entries[i + 1].first_index) +
                                   ": index range does not continue the previous entry");
    }

    // Both bound sequences must be strictly increasing over the report range.
    const int lb_start = p.n_dirichlet > 0 ? 1 : 2;
    for (int n = lb_start; n + 1 <= max_last; ++n)
        if (!(lower_bound(p, n) < lower_bound(p, n + 1)))
            violation(nullptr, "lower bound not strictly increasing at n=" + std::to_string(n));
    for (int n = 1; n + 1 <= max_last; ++n)
        if (!(upper_bound(p, n) < upper_bound(p, n + 1)))
            violation(nullptr, "upper bound not strictly increasing at n=" + std::to_string(n));

    out.ok = out.violations.empty();
    return out;
}

std::vector<SimpleSharpProfile> simple_sharp_profiles() {
    std::vector<SimpleSharpProfile> out;
    auto add = [&out](int d, int n, int b, const std::string& label) {
        for (auto& existing : out)
            if (existing.n_dirichlet == d && existing.n_neumann == n && existing.betti == b) {
                existing.case_label += "," + label;
                return;
            }
        out.push_back({d, n, b, label});
    };

    // Search window is generous; all constraints cap D, N, beta well below it.
    for (int d = 0; d <= 4; ++d)
        for (int n = 0; n <= 4; ++n)
            for (int b = 0; b <= 4; ++b) {
                const bool loop_graph = d == 0 && n == 0 && b == 1;
                // n >= 2 branch: equality of the bounds forces D + N + 2 beta = 2.
                if (d + n + 2 * b == 2 && !loop_graph) add(d, n, b, "ii");
                // n = 1, D = 0: lambda_1 = 0 = M_1 forces N + 3 beta = 2.
                if (d == 0 && n + 3 * b == 2) add(d, n, b, "iii");
                // n = 1, D != 0, 1 < N + beta: 2D + N + 3 beta = 3 (no solutions).
                if (d != 0 && n + b > 1 && 2 * d + n + 3 * b == 3) add(d, n, b, "iv");
                // n = 1, D != 0, 1 >= N + beta: D + N + 2 beta = 2.
                if (d != 0 && n + b <= 1 && d + n + 2 * b == 2) add(d, n, b, "v");
            }
    return out;
}

}  // namespace lassospec
