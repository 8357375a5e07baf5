// lassospec: Laplacian spectra, eigenvalue bounds and sharpness analysis
// for compact metric graphs with standard/Dirichlet vertex conditions.
//
// Exit codes: 0 ok, 1 property violation, 2 usage error, 3 input/solver
// failure, 4 exceptional loop graph.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "lassospec/bounds.hpp"
#include "lassospec/graph_io.hpp"
#include "lassospec/json_out.hpp"
#include "lassospec/metric_graph.hpp"
#include "lassospec/spectrum.hpp"
#include "lassospec/surgery.hpp"

namespace {

using namespace lassospec;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;
constexpr int kExitExceptional = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GraphError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GraphError("cannot write '" + path + "'");
    out << text << "\n";
}

struct CommonOptions {
    std::string output;
    std::string format = "json";
    double k_max = 0.0;
    double grid_step = 0.0;
    double rank_tol = 1e-7;
    double tol = 1e-6;
    int threads = -1;  // -1: unset, fall back to LASSOSPEC_THREADS, then 1
};

int resolved_threads(const CommonOptions& c) {
    if (c.threads >= 0) return c.threads;
    if (const char* env = std::getenv("LASSOSPEC_THREADS")) {
        try {
            return std::max(0, std::stoi(env));
        } catch (...) {
        }
    }
    return 1;
}

SolverOptions solver_options(const CommonOptions& c) {
    SolverOptions o;
    o.k_max = c.k_max;
    o.grid_step = c.grid_step;
    o.rank_tol = c.rank_tol;
    o.threads = resolved_threads(c);
    return o;
}

jout::Value spectrum_to_json(const Spectrum& s) {
    jout::Value out = jout::Value::object();
    jout::Value entries = jout::Value::array();
    for (const SpectrumEntry& e : s.entries) {
        jout::Value je = jout::Value::object();
        je["lambda"] = e.lambda;
        je["multiplicity"] = e.multiplicity;
        je["first_index"] = e.first_index;
        entries.push_back(std::move(je));
    }
    out["entries"] = std::move(entries);
    out["k_max"] = s.k_max;
    out["weyl_expected"] = s.weyl_expected;
    out["weyl_found"] = s.weyl_found;
    out["weyl_ok"] = s.weyl_ok;
    return out;
}

std::string spectrum_to_csv(const Spectrum& s) {
    std::string out = "first_index,lambda,multiplicity";
    for (const SpectrumEntry& e : s.entries) {
        out += "\n" + std::to_string(e.first_index) + "," + jout::format_double(e.lambda) + "," +
               std::to_string(e.multiplicity);
    }
    return out;
}

Spectrum spectrum_from_json(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SolverError(std::string("bad spectrum file: ") + e.what());
    }
    if (!root.is_object() || !root.contains("entries") || !root["entries"].is_array())
        throw SolverError("bad spectrum file: missing \"entries\"");
    Spectrum s;
    for (const auto& je : root["entries"]) {
        SpectrumEntry e;
        e.lambda = je.at("lambda").get<double>();
        e.multiplicity = je.at("multiplicity").get<int>();
        e.first_index = je.at("first_index").get<int>();
        s.entries.push_back(e);
    }
    if (root.contains("k_max")) s.k_max = root["k_max"].get<double>();
    for (const SpectrumEntry& e : s.entries) s.weyl_found += e.multiplicity;
    return s;
}

jout::Value report_to_json(const SharpnessReport& r) {
    jout::Value out = jout::Value::object();
    jout::Value entries = jout::Value::array();
    for (const SharpnessEntry& e : r.entries) {
        jout::Value je = jout::Value::object();
        je["lambda"] = e.lambda;
        je["n"] = e.first_index;
        je["m"] = e.multiplicity;
        je["lower_sharp"] = e.lower_sharp;
        je["upper_sharp"] = e.upper_sharp;
        je["sharp_degenerate"] = e.sharp_degenerate;
        je["simple_sharp"] = e.simple_sharp;
        je["maximally_degenerate"] = e.maximally_degenerate;
        entries.push_back(std::move(je));
    }
    out["entries"] = std::move(entries);
    out["characterization_ok"] = r.characterization_ok;
    out["eq4_ok"] = r.eq4_ok;
    jout::Value violations = jout::Value::array();
    for (const std::string& v : r.violations) violations.push_back(v);
    out["violations"] = std::move(violations);
    return out;
}

jout::Value prediction_to_json(const SurgeryPrediction& p) {
    jout::Value out = jout::Value::object();
    out["lambda"] = p.lambda;
    out["first_index"] = p.first_index;
    out["multiplicity"] = p.multiplicity;
    jout::Value profile = jout::Value::object();
    profile["n_dirichlet"] = p.profile.n_dirichlet;
    profile["n_neumann"] = p.profile.n_neumann;
    profile["betti"] = p.profile.betti;
    profile["total_length"] = p.profile.total_length;
    out["profile"] = std::move(profile);
    return out;
}

// Finds lambda in g's spectrum, returning (first index, multiplicity).
std::pair<int, int> locate_eigenvalue(const MetricGraph& g, double lambda,
                                      const CommonOptions& common) {
    const double k = std::sqrt(lambda);
    SolverOptions opts = solver_options(common);
    opts.k_max = k + 5.0 * std::numbers::pi / (20.0 * g.total_length());
    const Spectrum s = find_spectrum_robust(g, opts);
    for (const SpectrumEntry& e : s.entries)
        if (std::abs(e.lambda - lambda) <= common.tol * std::max(1.0, lambda))
            return {e.first_index, e.multiplicity};
    throw SolverError("lambda = " + jout::format_double(lambda) + " is not an eigenvalue of the graph");
}

int run_analyze(const std::string& graph_file, const CommonOptions& common) {
    const MetricGraph g = parse_graph(read_file(graph_file));
    const BoundsProfile p = bounds_profile(g);
    if (p.cycle_exceptional) throw ExceptionalGraphError("exceptional: loop graph");
    const CycleContraction contraction = contract_cycles(g);

    jout::Value out = jout::Value::object();
    out["betti"] = p.betti;
    out["n_dirichlet"] = p.n_dirichlet;
    out["n_neumann"] = p.n_neumann;
    out["total_length"] = p.total_length;
    out["m_U"] = max_multiplicity_upper(p);
    out["m_M"] = max_multiplicity_contracted(g);
    out["p_t"] = contraction.pendant_count;
    out["is_lasso_tree"] = is_lasso_tree(g);
    write_output(out.dump(), common.output);
    return kExitOk;
}

int run_spectrum(const std::string& graph_file, const CommonOptions& common) {
    const MetricGraph g = parse_graph(read_file(graph_file));
    const Spectrum s = find_spectrum(g, solver_options(common));
    if (common.format == "csv")
        write_output(spectrum_to_csv(s), common.output);
    else
        write_output(spectrum_to_json(s).dump(), common.output);
    return kExitOk;
}

int run_bounds(const std::string& graph_file, const std::string& spectrum_file, int count,
               const CommonOptions& common) {
    const MetricGraph g = parse_graph(read_file(graph_file));
    const BoundsProfile p = bounds_profile(g);

    if (!spectrum_file.empty()) {
        const Spectrum s = spectrum_from_json(read_file(spectrum_file));
        const SharpnessReport report = classify_spectrum(s, p, common.tol);
        write_output(report_to_json(report).dump(), common.output);
        return report.characterization_ok && report.eq4_ok ? kExitOk : kExitViolation;
    }

    jout::Value out = jout::Value::object();
    out["count"] = count;
    jout::Value lower = jout::Value::array();
    jout::Value upper = jout::Value::array();
    for (int n = 1; n <= count; ++n) {
        if (n == 1 && p.n_dirichlet == 0)
            lower.push_back(jout::Value());  // no lower estimate: lambda_1 = 0
        else
            lower.push_back(lower_bound(p, n));
        upper.push_back(upper_bound(p, n));
    }
    out["lower"] = std::move(lower);
    out["upper"] = std::move(upper);
    out["m_U"] = max_multiplicity_upper(p);
    out["m_M"] = max_multiplicity_contracted(g);
    write_output(out.dump(), common.output);
    return kExitOk;
}

int run_classify(const std::string& graph_file, const CommonOptions& common) {
    const MetricGraph g = parse_graph(read_file(graph_file));
    const BoundsProfile p = bounds_profile(g);
    if (p.cycle_exceptional) throw ExceptionalGraphError("exceptional: loop graph");
    const Spectrum s = find_spectrum_robust(g, solver_options(common));
    const SharpnessReport report = classify_spectrum(s, p, common.tol);
    write_output(report_to_json(report).dump(), common.output);
    return report.characterization_ok && report.eq4_ok ? kExitOk : kExitViolation;
}

int run_construct(int n_neumann, int n_dirichlet, int betti, int count,
                  const std::string& graph_out, const CommonOptions& common) {
    const LassoTreeConstruction c = construct_lasso_tree(n_neumann, n_dirichlet, betti, count);
    jout::Value out = jout::Value::object();
    out["graph"] = graph_to_json(c.graph);
    jout::Value preds = jout::Value::array();
    for (const SharpSequenceEntry& e : c.predictions) {
        jout::Value je = jout::Value::object();
        je["lambda"] = e.lambda;
        je["first_index"] = e.first_index;
        je["multiplicity"] = e.multiplicity;
        je["paper_formula_first_index"] = e.paper_formula_first_index;
        preds.push_back(std::move(je));
    }
    out["predictions"] = std::move(preds);
    if (!graph_out.empty()) write_output(serialize_graph(c.graph), graph_out);
    write_output(out.dump(), common.output);
    return kExitOk;
}

jout::Value surgery_to_json(const SurgeryResult& r) {
    jout::Value out = jout::Value::object();
    out["graph"] = graph_to_json(r.graph);
    out["prediction"] = prediction_to_json(r.prediction);
    out["paper_formula_first_index"] = r.prediction.first_index;
    return out;
}

int run_join(const std::vector<std::string>& graph_files, double lambda,
             const std::string& graph_out, const CommonOptions& common) {
    std::vector<JoinItem> items;
    for (const std::string& file : graph_files) {
        MetricGraph g = parse_graph(read_file(file));
        if (g.dirichlet().empty())
            throw SolverError("graph '" + file + "' has no Dirichlet vertex to join at");
        const std::string vertex = *g.dirichlet().begin();
        const auto [index, multiplicity] = locate_eigenvalue(g, lambda, common);
        items.push_back({std::move(g), vertex, lambda, index, multiplicity});
    }
    const SurgeryResult r = join_at_dirichlet(items);
    if (!graph_out.empty()) write_output(serialize_graph(r.graph), graph_out);
    write_output(surgery_to_json(r).dump(), common.output);
    return kExitOk;
}

int run_attach_loop(const std::string& graph_file, double lambda, int harmonic,
                    const std::string& graph_out, const CommonOptions& common) {
    const MetricGraph g = parse_graph(read_file(graph_file));
    const GraphProfile prof = graph_profile(g);
    if (prof.neumann_pendants.empty())
        throw SolverError("graph has no Neumann pendant vertex to attach at");
    const std::string vertex = *prof.neumann_pendants.begin();
    const auto [index, multiplicity] = locate_eigenvalue(g, lambda, common);
    const SurgeryResult r = attach_loop(g, vertex, lambda, harmonic, index, multiplicity);
    if (!graph_out.empty()) write_output(serialize_graph(r.graph), graph_out);
    write_output(surgery_to_json(r).dump(), common.output);
    return kExitOk;
}

int run_perturb(const std::string& graph_file, std::string edge_id, double rho, int index,
                const CommonOptions& common) {
    const MetricGraph g = parse_graph(read_file(graph_file));
    if (edge_id.empty()) edge_id = g.edges().front().id;
    const ScalingReport r = eigenvalue_under_scaling(g, edge_id, rho, index);
    jout::Value out = jout::Value::object();
    out["edge"] = r.edge_id;
    out["rho"] = r.rho;
    out["index"] = r.index;
    out["lambda_before"] = r.lambda_before;
    out["lambda_after"] = r.lambda_after;
    out["sandwich_ok"] = r.sandwich_ok;
    out["monotone_ok"] = r.monotone_ok;
    write_output(out.dump(), common.output);
    return r.sandwich_ok && r.monotone_ok ? kExitOk : kExitViolation;
}

void add_common(CLI::App* cmd, CommonOptions& common, bool with_solver) {
    cmd->add_option("-o,--output", common.output, "write the report here instead of stdout");
    if (with_solver) {
        cmd->add_option("--grid-step", common.grid_step, "k-scan step (default pi / (20 L))");
        cmd->add_option("--rank-tol", common.rank_tol, "relative nullity threshold");
        cmd->add_option("--threads", common.threads,
                        "parallel k-scan workers (or LASSOSPEC_THREADS; output is identical)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplacian spectra, eigenvalue bounds and sharp-eigenvalue analysis on metric graphs"};
    app.require_subcommand(1);

    CommonOptions common;

    auto* analyze = app.add_subcommand("analyze", "profile, multiplicity ceilings, lasso-tree test");
    std::string analyze_file;
    analyze->add_option("graph", analyze_file, "graph file")->required();
    add_common(analyze, common, false);

    auto* spectrum = app.add_subcommand("spectrum", "compute the Laplacian spectrum up to k_max^2");
    std::string spectrum_file;
    spectrum->add_option("graph", spectrum_file, "graph file")->required();
    spectrum->add_option("--k-max", common.k_max, "scan ceiling in k (lambda = k^2)")->required();
    spectrum->add_option("--format", common.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    add_common(spectrum, common, true);

    auto* bounds = app.add_subcommand("bounds", "bound table, or classify a stored spectrum");
    std::string bounds_graph, bounds_spectrum;
    int bounds_count = 20;
    bounds->add_option("graph", bounds_graph, "graph file")->required();
    bounds->add_option("spectrum", bounds_spectrum, "optional spectrum report to classify");
    bounds->add_option("--count", bounds_count, "table size (default 20)");
    bounds->add_option("--tol", common.tol, "relative tolerance for bound equality");
    add_common(bounds, common, false);

    auto* classify = app.add_subcommand("classify", "solve, then flag sharp eigenvalues");
    std::string classify_file;
    classify->add_option("graph", classify_file, "graph file")->required();
    classify->add_option("--k-max", common.k_max, "scan ceiling in k")->required();
    classify->add_option("--tol", common.tol, "relative tolerance for bound equality");
    add_common(classify, common, true);

    auto* construct = app.add_subcommand("construct", "build a lasso tree with a sharp sequence");
    int opt_neumann = 0, opt_dirichlet = 0, opt_beta = 0, construct_count = 3;
    std::string construct_graph_out;
    construct->add_option("--neumann", opt_neumann, "Neumann pendant count")->required();
    construct->add_option("--dirichlet", opt_dirichlet, "Dirichlet pendant count")->required();
    construct->add_option("--beta", opt_beta, "first Betti number")->required();
    construct->add_option("--count", construct_count, "predicted sequence length (default 3)");
    construct->add_option("--graph-out", construct_graph_out, "also write just the graph file here");
    add_common(construct, common, false);

    auto* join = app.add_subcommand("join", "merge graphs at one Dirichlet pendant each");
    std::vector<std::string> join_files;
    double join_lambda = 0.0;
    std::string join_graph_out;
    join->add_option("graphs", join_files, "two or more graph files")->required()->expected(-2);
    join->add_option("--lambda", join_lambda, "shared eigenvalue")->required();
    join->add_option("--tol", common.tol, "relative tolerance for locating lambda");
    join->add_option("--graph-out", join_graph_out, "also write just the graph file here");
    add_common(join, common, true);

    auto* attach = app.add_subcommand("attach-loop", "attach a resonant loop at a Neumann pendant");
    std::string attach_file, attach_graph_out;
    double attach_lambda = 0.0;
    int attach_harmonic = 1;
    attach->add_option("graph", attach_file, "graph file")->required();
    attach->add_option("--lambda", attach_lambda, "eigenvalue to preserve")->required();
    attach->add_option("--harmonic", attach_harmonic, "loop harmonic j (length 2 j pi / sqrt(lambda))");
    attach->add_option("--tol", common.tol, "relative tolerance for locating lambda");
    attach->add_option("--graph-out", attach_graph_out, "also write just the graph file here");
    add_common(attach, common, true);

    auto* perturb = app.add_subcommand("perturb", "scale one edge and check the eigenvalue sandwich");
    std::string perturb_file, perturb_edge;
    double perturb_rho = 1.0;
    int perturb_index = 1;
    perturb->add_option("graph", perturb_file, "graph file")->required();
    perturb->add_option("--rho", perturb_rho, "length scale factor")->required();
    perturb->add_option("--index", perturb_index, "eigenvalue index n")->required();
    perturb->add_option("--edge", perturb_edge, "edge id (default: first edge)");
    add_common(perturb, common, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*analyze) return run_analyze(analyze_file, common);
        if (*spectrum) return run_spectrum(spectrum_file, common);
        if (*bounds) return run_bounds(bounds_graph, bounds_spectrum, bounds_count, common);
        if (*classify) return run_classify(classify_file, common);
        if (*construct)
            return run_construct(opt_neumann, opt_dirichlet, opt_beta, construct_count,
                                 construct_graph_out, common);
        if (*join) return run_join(join_files, join_lambda, join_graph_out, common);
        if (*attach) return run_attach_loop(attach_file, attach_lambda, attach_harmonic,
                                            attach_graph_out, common);
        if (*perturb) return run_perturb(perturb_file, perturb_edge, perturb_rho, perturb_index, common);
    } catch (const ExceptionalGraphError& e) {
        std::cerr << e.what() << "\n";
        return kExitExceptional;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
