#include "lassospec/spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "lassospec/secular.hpp"

namespace lassospec {

namespace {

constexpr double kPi = std::numbers::pi;

void parallel_for(size_t n, int threads, const std::function<void(size_t)>& body) {
    if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const size_t t = std::min<size_t>(static_cast<size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (size_t w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += t) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double width_tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double invphi2 = 1.0 - invphi;
    double h = b - a;
    double c = a + invphi2 * h;
    double d = a + invphi * h;
    double fc = f(c);
    double fd = f(d);
    while (h > width_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            h = b - a;
            c = a + invphi2 * h;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            h = b - a;
            d = a + invphi * h;
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

struct Root {
    double k = 0.0;
    int multiplicity = 0;
    double residual = 0.0;      // sigma_min at k
    double next_singular = 1.0;  // smallest singular value above the null set
    double threshold = 0.0;      // nullity threshold used at k
};

// Reference scale for the nullity threshold. Rows are normalized to unit
// max-norm, so sigma_max >= 1 unless every row degenerates at once (a loop
// graph at resonance); never let the scale collapse below 1.
double nullity_threshold(const Eigen::VectorXd& sv, double rank_tol) {
    return rank_tol * std::max(sv(0), 1.0);
}

}  // namespace

double Spectrum::lambda_at(int n) const {
    for (const SpectrumEntry& e : entries)
        if (n >= e.first_index && n < e.first_index + e.multiplicity) return e.lambda;
    throw SolverError("eigenvalue index " + std::to_string(n) + " outside the computed range");
}

namespace {

// Samples sigma_min over [a, b], refines every bracketed local minimum by
// golden section and keeps those with positive nullity.
std::vector<Root> scan_segment(const MetricGraph& g, double a, double b, double step,
                               const SolverOptions& opts) {
    if (!(b > a)) return {};
    const size_t npts = static_cast<size_t>(std::ceil((b - a) / step)) + 1;
    if (npts < 3) return {};
    std::vector<double> ks(npts), sig(npts);
    for (size_t i = 0; i < npts; ++i) ks[i] = a + static_cast<double>(i) * step;
    parallel_for(npts, opts.threads, [&](size_t i) { sig[i] = sigma_min(g, ks[i]); });

    std::vector<size_t> minima;
    for (size_t i = 1; i + 1 < npts; ++i)
        if (sig[i - 1] > sig[i] && sig[i] <= sig[i + 1]) minima.push_back(i);

    std::vector<Root> candidates(minima.size());
    parallel_for(minima.size(), opts.threads, [&](size_t mi) {
        const size_t i = minima[mi];
        const double k_star =
            golden_section_min([&](double k) { return sigma_min(g, k); }, ks[i - 1], ks[i + 1],
                               opts.refine_tol * std::max(1.0, ks[i]));
        const Eigen::VectorXd sv = secular_singular_values(g, k_star);
        Root root;
        root.k = k_star;
        root.threshold = nullity_threshold(sv, opts.rank_tol);
        root.residual = sv(sv.size() - 1);
        for (Eigen::Index j = sv.size() - 1; j >= 0; --j) {
            if (sv(j) < root.threshold) {
                root.multiplicity += 1;
            } else {
                root.next_singular = sv(j);
                break;
            }
        }
        candidates[mi] = root;
    });

    std::vector<Root> roots;
    for (const Root& r : candidates)
        if (r.multiplicity > 0) roots.push_back(r);
    return roots;
}

// Merges new roots into a sorted list; refinements of one zero land within
// refine_tol of each other and collapse.
void merge_roots(std::vector<Root>& roots, std::vector<Root> extra, double refine_tol) {
    roots.insert(roots.end(), extra.begin(), extra.end());
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.k < b.k; });
    std::vector<Root> dedup;
    for (const Root& r : roots) {
        if (!dedup.empty() && std::abs(r.k - dedup.back().k) < 10.0 * refine_tol * std::max(1.0, r.k)) {
            if (r.residual < dedup.back().residual) dedup.back() = r;
        } else {
            dedup.push_back(r);
        }
    }
    roots = std::move(dedup);
}

}  // namespace

Spectrum find_spectrum(const MetricGraph& g, const SolverOptions& opts) {
    if (!g.is_connected()) throw SolverError("spectrum requires a connected graph");
    if (!(opts.k_max > 0.0)) throw SolverError("k_max must be positive");

    const double total_length = g.total_length();
    const double h = opts.grid_step > 0.0 ? opts.grid_step : kPi / (20.0 * total_length);
    // The first positive eigenvalue of any connected graph is at least
    // (pi / 2L)^2, so the scan can safely start at pi / 4L.
    const double k_lo = kPi / (4.0 * total_length);
    const double k_hi = opts.k_max + 2.0 * h;

    std::vector<Root> roots;
    if (k_hi > k_lo) {
        roots = scan_segment(g, k_lo, k_hi, h, opts);
        merge_roots(roots, {}, opts.refine_tol);

        // Two eigenvalues inside one grid cell produce a single sampled dip
        // and the second zero is lost. Around every known root, rescan a
        // window covering the blind zone of the previous resolution with a
        // 16x finer step; four passes bring the blind zone down to h/32768,
        // where the singular-value band check below takes over.
        double level_step = h;
        for (int level = 0; level < 4; ++level) {
            const double window = 2.0 * level_step;
            level_step /= 16.0;
            const std::vector<Root> snapshot = roots;
            for (const Root& r : snapshot) {
                std::vector<Root> local =
                    scan_segment(g, std::max(k_lo, r.k - window), std::min(k_hi, r.k + window),
                                 level_step, opts);
                merge_roots(roots, std::move(local), opts.refine_tol);
            }
        }

        // A barely-nonzero singular value at a root means another eigenvalue
        // close by. If no resolved neighbor accounts for it, the pair sits
        // below the zoom resolution yet above the nullity threshold.
        for (size_t i = 0; i < roots.size(); ++i) {
            const Root& r = roots[i];
            if (r.next_singular >= 50.0 * r.threshold) continue;
            const double neighbor_radius = 1e-3 * std::max(1.0, r.k);
            const bool explained =
                (i > 0 && r.k - roots[i - 1].k < neighbor_radius) ||
                (i + 1 < roots.size() && roots[i + 1].k - r.k < neighbor_radius);
            if (!explained)
                throw UnresolvedClusterError(
                    "unresolved eigenvalue cluster near k = " + std::to_string(r.k) +
                    "; rerun with a smaller grid_step");
        }

        const double k_accept = opts.k_max + 10.0 * opts.refine_tol * std::max(1.0, opts.k_max);
        std::erase_if(roots, [&](const Root& r) { return r.k > k_accept; });
    }

    Spectrum spectrum;
    spectrum.k_max = opts.k_max;
    int index = 1;
    if (g.dirichlet().empty()) {
        spectrum.entries.push_back({0.0, 1, index});
        index += 1;
    }
    for (const Root& r : roots) {
        spectrum.entries.push_back({r.k * r.k, r.multiplicity, index});
        index += r.multiplicity;
    }
    spectrum.weyl_found = index - 1;
    spectrum.weyl_expected = total_length * opts.k_max / kPi;
    const double slack = static_cast<double>(g.vertices().size()) + g.betti() + 2.0;
    spectrum.weyl_ok = std::abs(spectrum.weyl_found - spectrum.weyl_expected) <= slack;
    return spectrum;
}

Spectrum find_spectrum(const MetricGraph& g, double k_max) {
    SolverOptions opts;
    opts.k_max = k_max;
    return find_spectrum(g, opts);
}

Spectrum find_spectrum_robust(const MetricGraph& g, const SolverOptions& opts, int max_retries) {
    SolverOptions attempt = opts;
    if (attempt.grid_step <= 0.0) attempt.grid_step = kPi / (20.0 * g.total_length());
    for (int retry = 0;; ++retry) {
        try {
            Spectrum s = find_spectrum(g, attempt);
            if (s.weyl_ok || retry >= max_retries) return s;
        } catch (const UnresolvedClusterError&) {
            if (retry >= max_retries) throw;
        }
        attempt.grid_step /= 2.0;
    }
}

int multiplicity_at(const MetricGraph& g, double lambda, double rank_tol) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
    if (lambda == 0.0) return g.dirichlet().empty() ? 1 : 0;
    const double k = std::sqrt(lambda);
    if (k < kPi / (4.0 * g.total_length())) return 0;  // below the spectral gap
    const Eigen::VectorXd sv = secular_singular_values(g, k);
    const double thresh = nullity_threshold(sv, rank_tol);
    int nullity = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) < thresh) ++nullity;
    return nullity;
}

EigenspaceBasis eigenspace_basis(const MetricGraph& g, double lambda, double rank_tol) {
    EigenspaceBasis basis;
    basis.lambda = lambda;
    for (const Edge& e : g.edges()) basis.edge_ids.push_back(e.id);

    if (lambda <= 0.0) {
        if (lambda < 0.0 || !g.dirichlet().empty())
            throw SolverError("lambda is not an eigenvalue");
        // Constant eigenfunction: a_e = 1 on every edge, normalized.
        const double scale = 1.0 / std::sqrt(static_cast<double>(g.edges().size()));
        std::vector<std::array<double, 2>> constant;
        for (size_t i = 0; i < g.edges().size(); ++i) constant.push_back({scale, 0.0});
        basis.vectors.push_back(std::move(constant));
        for (const std::string& id : basis.edge_ids) basis.per_edge_support[id] = scale;
        return basis;
    }

    const double k = std::sqrt(lambda);
    const SecularSystem sys = assemble_secular_system(g, k);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double thresh = nullity_threshold(sv, rank_tol);
    int nullity = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) < thresh) ++nullity;
    if (nullity == 0) throw SolverError("lambda is not an eigenvalue");

    const Eigen::MatrixXd& v = svd.matrixV();
    for (Eigen::Index col = v.cols() - nullity; col < v.cols(); ++col) {
        std::vector<std::array<double, 2>> vec;
        for (size_t e = 0; e < g.edges().size(); ++e)
            vec.push_back({v(static_cast<Eigen::Index>(2 * e), col),
                           v(static_cast<Eigen::Index>(2 * e + 1), col)});
        basis.vectors.push_back(std::move(vec));
    }
    for (size_t e = 0; e < g.edges().size(); ++e) {
        double support = 0.0;
        for (const auto& vec : basis.vectors)
            support = std::max(support, std::hypot(vec[e][0], vec[e][1]));
        basis.per_edge_support[basis.edge_ids[e]] = support;
    }
    return basis;
}

std::map<std::string, bool> edge_support_report(const EigenspaceBasis& basis, double tol) {
    std::map<std::string, bool> report;
    for (const auto& [edge, support] : basis.per_edge_support) report[edge] = support > tol;
    return report;
}

double interval_spectrum(double length, IntervalKind bc, int n) {
    if (n < 1) throw std::invalid_argument("interval_spectrum: n must be >= 1");
    if (!(length > 0.0)) throw std::invalid_argument("interval_spectrum: length must be positive");
    const double s = kPi / length;
    switch (bc) {
        case IntervalKind::NN: return s * s * (n - 1.0) * (n - 1.0);
        case IntervalKind::ND: return s * s * (n - 0.5) * (n - 0.5);
        case IntervalKind::DD: return s * s * static_cast<double>(n) * n;
    }
    throw std::invalid_argument("interval_spectrum: unknown boundary kind");
}

double loop_spectrum(double length, int n) {
    if (n < 1) throw std::invalid_argument("loop_spectrum: n must be >= 1");
    if (!(length > 0.0)) throw std::invalid_argument("loop_spectrum: length must be positive");
    if (n == 1) return 0.0;
    const int j = n / 2;  // lambda_2j = lambda_2j+1
    const double x = 2.0 * j * kPi / length;
    return x * x;
}

double loop_even_deviation(double length, int j) {
    if (j < 1) throw std::invalid_argument("loop deviation: j must be >= 1");
    const double s = kPi / length;
    const double base = 2.0 * j - 2.0 + 1.5 + 0.5;
    return s * s * base * base;
}

double loop_odd_deviation(double length, int j) {
    if (j < 1) throw std::invalid_argument("loop deviation: j must be >= 1");
    const double s = kPi / length;
    const double base = 2.0 * j + 1.0 - 0.5 - 0.5;
    return s * s * base * base;
}

double nth_eigenvalue(const MetricGraph& g, int n) {
    if (n < 1) throw std::invalid_argument("eigenvalue index must be >= 1");
    const GraphProfile p = graph_profile(g);
    double k_max = kPi / p.total_length *
                   (n + p.n_dirichlet + p.n_neumann + 2.0 * p.betti + 2.0);
    for (int attempt = 0; attempt < 5; ++attempt) {
        SolverOptions opts;
        opts.k_max = k_max;
        const Spectrum s = find_spectrum_robust(g, opts);
        if (s.total_count() >= n) return s.lambda_at(n);
        k_max *= 1.5;
    }
    throw SolverError("could not reach eigenvalue index " + std::to_string(n));
}

ScalingReport eigenvalue_under_scaling(const MetricGraph& g, const std::string& edge_id, double rho,
                                       int n) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    if (g.find_edge(edge_id) == nullptr) throw GraphError("unknown edge '" + edge_id + "'");

    ScalingReport report;
    report.edge_id = edge_id;
    report.rho = rho;
    report.index = n;
    report.lambda_before = nth_eigenvalue(g, n);
    report.lambda_after = nth_eigenvalue(g.with_scaled_edge(edge_id, rho), n);

    const double inv2 = 1.0 / (rho * rho);
    const double lo = std::min(1.0, inv2) * report.lambda_before;
    const double hi = std::max(1.0, inv2) * report.lambda_before;
    constexpr double slack = 1e-7;
    constexpr double absolute = 1e-12;
    report.sandwich_ok = report.lambda_after >= lo * (1.0 - slack) - absolute &&
                         report.lambda_after <= hi * (1.0 + slack) + absolute;
    if (rho <= 1.0)
        report.monotone_ok = report.lambda_after >= report.lambda_before * (1.0 - slack) - absolute;
    else
        report.monotone_ok = report.lambda_after <= report.lambda_before * (1.0 + slack) + absolute;
    return report;
}

}  // namespace lassospec
