#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lassospec/spectrum.hpp"
#include "test_util.hpp"

using namespace lassospec;
using namespace testutil;

namespace {

constexpr double kPi = std::numbers::pi;

void check_spectrum_matches(const Spectrum& got, const std::vector<double>& lambdas,
                            const std::vector<int>& multiplicities, double rel = 1e-8) {
    REQUIRE(got.entries.size() >= lambdas.size());
    for (size_t i = 0; i < lambdas.size(); ++i) {
        CHECK(std::abs(got.entries[i].lambda - lambdas[i]) <= rel * std::max(1.0, lambdas[i]));
        CHECK(got.entries[i].multiplicity == multiplicities[i]);
    }
}

}  // namespace

TEST_CASE("interval closed forms") {
    CHECK(interval_spectrum(kPi, IntervalKind::DD, 3) == doctest::Approx(9.0));
    CHECK(interval_spectrum(kPi / 2.0, IntervalKind::ND, 1) == doctest::Approx(1.0));
    CHECK(interval_spectrum(0.7, IntervalKind::NN, 1) == 0.0);
    CHECK(interval_spectrum(2.0, IntervalKind::NN, 1) == 0.0);
    CHECK_THROWS_AS(interval_spectrum(1.0, IntervalKind::DD, 0), std::invalid_argument);
}

TEST_CASE("loop closed form and its deviation forms") {
    CHECK(loop_spectrum(2.0 * kPi, 1) == 0.0);
    CHECK(loop_spectrum(2.0 * kPi, 2) == doctest::Approx(1.0));
    CHECK(loop_spectrum(2.0 * kPi, 3) == doctest::Approx(1.0));
    CHECK(loop_spectrum(2.0 * kPi, 4) == doctest::Approx(4.0));
    CHECK_THROWS_AS(loop_spectrum(1.0, 0), std::invalid_argument);

    // (1/4)(2 - 2 + 2)^2 = 1 at j = 1, L = 2 pi
    CHECK(loop_even_deviation(2.0 * kPi, 1) == doctest::Approx(1.0));
    for (int j = 1; j <= 12; ++j) {
        for (double length : {1.0, 2.0 * kPi, 5.5}) {
            CHECK(std::abs(loop_even_deviation(length, j) - loop_spectrum(length, 2 * j)) <=
                  1e-12 * std::max(1.0, loop_spectrum(length, 2 * j)));
            CHECK(std::abs(loop_odd_deviation(length, j) - loop_spectrum(length, 2 * j + 1)) <=
                  1e-12 * std::max(1.0, loop_spectrum(length, 2 * j + 1)));
        }
    }
}

TEST_CASE("find_spectrum on the three interval types") {
    SUBCASE("NN of length pi up to k_max = 5.5") {
        const Spectrum s = find_spectrum(nn_interval(EdgeLength::pi_multiple(1.0)), 5.5);
        check_spectrum_matches(s, {0, 1, 4, 9, 16, 25}, {1, 1, 1, 1, 1, 1});
        CHECK(s.entries.size() == 6);
        CHECK(s.weyl_ok);
    }
    SUBCASE("ND of length pi/2 up to k_max = 7.5") {
        const Spectrum s = find_spectrum(nd_interval(EdgeLength::pi_multiple(0.5)), 7.5);
        check_spectrum_matches(s, {1, 9, 25, 49}, {1, 1, 1, 1});
        CHECK(s.entries.size() == 4);
    }
    SUBCASE("DD of length pi") {
        const Spectrum s = find_spectrum(dd_interval(EdgeLength::pi_multiple(1.0)), 4.5);
        check_spectrum_matches(s, {1, 4, 9, 16}, {1, 1, 1, 1});
        CHECK(s.entries[0].first_index == 1);  // no zero mode with Dirichlet ends
    }
}

TEST_CASE("find_spectrum on the loop graph") {
    const Spectrum s = find_spectrum(loop_graph(EdgeLength::pi_multiple(2.0)), 4.5);
    check_spectrum_matches(s, {0, 1, 4, 9, 16}, {1, 2, 2, 2, 2});
    CHECK(s.entries[1].first_index == 2);
    CHECK(s.entries[2].first_index == 4);
    CHECK(s.weyl_found == 9);
}

TEST_CASE("first_index chain invariant") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 8; ++trial) {
        const MetricGraph g = random_connected_graph(rng);
        const Spectrum s = find_spectrum(g, 8.0 / g.total_length() * kPi);
        int expected_index = 1;
        for (const SpectrumEntry& e : s.entries) {
            CHECK(e.first_index == expected_index);
            expected_index += e.multiplicity;
        }
        if (!s.entries.empty())
            CHECK((s.entries[0].lambda == 0.0) == g.dirichlet().empty());
        for (size_t i = 1; i < s.entries.size(); ++i)
            CHECK(s.entries[i].lambda > s.entries[i - 1].lambda);
        CHECK(s.weyl_ok);
    }
}

TEST_CASE("multiplicity_at") {
    CHECK(multiplicity_at(loop_graph(EdgeLength::pi_multiple(2.0)), 1.0) == 2);
    CHECK(multiplicity_at(dd_interval(EdgeLength::pi_multiple(1.0)), 2.0) == 0);
    CHECK(multiplicity_at(dd_interval(EdgeLength::pi_multiple(1.0)), 4.0) == 1);
    CHECK(multiplicity_at(nn_interval(EdgeLength::pi_multiple(1.0)), 0.0) == 1);
    CHECK(multiplicity_at(dd_interval(EdgeLength::pi_multiple(1.0)), 0.0) == 0);
    CHECK_THROWS_AS(multiplicity_at(dumbbell(), -1.0), std::invalid_argument);
}

TEST_CASE("eigenspace_basis") {
    SUBCASE("NN interval at lambda = 1 is cos up to sign") {
        const EigenspaceBasis basis = eigenspace_basis(nn_interval(EdgeLength::pi_multiple(1.0)), 1.0);
        REQUIRE(basis.vectors.size() == 1);
        CHECK(std::abs(basis.vectors[0][0][0]) == doctest::Approx(1.0));  // |a| = 1
        CHECK(std::abs(basis.vectors[0][0][1]) == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("loop at lambda = 1 spans cos and sin") {
        const EigenspaceBasis basis = eigenspace_basis(loop_graph(EdgeLength::pi_multiple(2.0)), 1.0);
        CHECK(basis.vectors.size() == 2);
        CHECK(basis.per_edge_support.at("e") > 0.5);
    }
    SUBCASE("Neumann lasso at lambda = 1: two vectors, support everywhere") {
        const EigenspaceBasis basis = eigenspace_basis(neumann_lasso(), 1.0);
        REQUIRE(basis.vectors.size() == 2);
        const auto report = edge_support_report(basis, 1e-6);
        CHECK(report.at("stick"));
        CHECK(report.at("loop"));
        // orthonormality of the coefficient vectors
        for (size_t i = 0; i < basis.vectors.size(); ++i)
            for (size_t j = i; j < basis.vectors.size(); ++j) {
                double dot = 0.0;
                for (size_t e = 0; e < basis.edge_ids.size(); ++e)
                    dot += basis.vectors[i][e][0] * basis.vectors[j][e][0] +
                           basis.vectors[i][e][1] * basis.vectors[j][e][1];
                CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-9);
            }
    }
    SUBCASE("non-eigenvalue throws") {
        CHECK_THROWS_AS(eigenspace_basis(dd_interval(EdgeLength::pi_multiple(1.0)), 2.0), SolverError);
        CHECK_THROWS_AS(eigenspace_basis(dd_interval(EdgeLength::pi_multiple(1.0)), 0.0), SolverError);
    }
}

TEST_CASE("edge_support_report flags a truncated basis") {
    // sin-only vector on the loop of a lasso: the stick edge has no support
    EigenspaceBasis truncated;
    truncated.lambda = 1.0;
    truncated.edge_ids = {"stick", "loop"};
    truncated.vectors = {{{0.0, 0.0}, {0.0, 1.0}}};
    truncated.per_edge_support["stick"] = 0.0;
    truncated.per_edge_support["loop"] = 1.0;
    const auto report = edge_support_report(truncated, 1e-6);
    CHECK_FALSE(report.at("stick"));
    CHECK(report.at("loop"));
}

TEST_CASE("spectrum invariant under degree-two suppression") {
    const MetricGraph g = MetricGraph::create({"a", "b", "c", "d"},
                                              {{"ab", "a", "b", EdgeLength::real(1.0)},
                                               {"bc", "b", "c", EdgeLength::real(1.0)},
                                               {"ca", "c", "a", EdgeLength::real(1.0)},
                                               {"cd", "c", "d", EdgeLength::real(0.5)}},
                                              {"d"});
    const MetricGraph s = suppress_degree_two(g);
    REQUIRE(s.edges().size() == 2);  // genuinely different systems
    const Spectrum full = find_spectrum(g, 6.0);
    const Spectrum suppressed = find_spectrum(s, 6.0);
    REQUIRE(full.entries.size() == suppressed.entries.size());
    for (size_t i = 0; i < full.entries.size(); ++i) {
        CHECK(std::abs(full.entries[i].lambda - suppressed.entries[i].lambda) <=
              1e-8 * std::max(1.0, full.entries[i].lambda));
        CHECK(full.entries[i].multiplicity == suppressed.entries[i].multiplicity);
    }
}

TEST_CASE("spectrum invariant under relabeling and orientation flips") {
    const MetricGraph g = star({0.8, 1.3, 0.6}, {2});
    // rename vertices, permute edges, flip orientations
    const MetricGraph relabeled = MetricGraph::create(
        {"center", "x", "y", "z"},
        {{"arm2", "y", "center", EdgeLength::real(1.3)},
         {"arm3", "z", "center", EdgeLength::real(0.6)},
         {"arm1", "center", "x", EdgeLength::real(0.8)}},
        {"z"});
    const Spectrum a = find_spectrum(g, 7.0);
    const Spectrum b = find_spectrum(relabeled, 7.0);
    REQUIRE(a.entries.size() == b.entries.size());
    for (size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(std::abs(a.entries[i].lambda - b.entries[i].lambda) <=
              1e-9 * std::max(1.0, a.entries[i].lambda));
        CHECK(a.entries[i].multiplicity == b.entries[i].multiplicity);
    }
}

TEST_CASE("thread partitioning does not change the result") {
    const MetricGraph g = dumbbell();
    SolverOptions serial;
    serial.k_max = 6.0;
    SolverOptions parallel = serial;
    parallel.threads = 4;
    const Spectrum a = find_spectrum(g, serial);
    const Spectrum b = find_spectrum(g, parallel);
    REQUIRE(a.entries.size() == b.entries.size());
    for (size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].lambda == b.entries[i].lambda);  // bitwise
        CHECK(a.entries[i].multiplicity == b.entries[i].multiplicity);
    }
}

TEST_CASE("near-coincident loop resonances") {
    auto two_loops = [](double eps) {
        return MetricGraph::create(
            {"a", "b"},
            {{"bridge", "a", "b", EdgeLength::real(1.3)},
             {"la", "a", "a", EdgeLength::real(2.0 * kPi)},
             {"lb", "b", "b", EdgeLength::real(2.0 * kPi * (1.0 + eps))}},
            {});
    };
    SUBCASE("the zoom passes resolve a split well below the base grid") {
        const Spectrum s = find_spectrum(two_loops(3e-6), 1.2);
        int near_one = 0;
        for (const SpectrumEntry& e : s.entries)
            if (std::abs(e.lambda - 1.0) < 1e-4) near_one += e.multiplicity;
        CHECK(near_one == 2);
        CHECK(s.weyl_found == 6);
    }
    SUBCASE("a split below the refinement scale is an unresolved cluster") {
        SolverOptions coarse;
        coarse.k_max = 1.2;
        coarse.rank_tol = 1e-6;
        coarse.refine_tol = 1e-7;  // dedup radius swallows the pair
        CHECK_THROWS_AS(find_spectrum(two_loops(5e-7), coarse), UnresolvedClusterError);
    }
}

TEST_CASE("eigenvalue_under_scaling") {
    SUBCASE("NN interval, rho = 2, n = 2") {
        const ScalingReport r =
            eigenvalue_under_scaling(nn_interval(EdgeLength::pi_multiple(1.0)), "e", 2.0, 2);
        CHECK(r.lambda_before == doctest::Approx(1.0));
        CHECK(r.lambda_after == doctest::Approx(0.25));
        CHECK(r.sandwich_ok);
        CHECK(r.monotone_ok);
    }
    SUBCASE("rho = 1 is the identity") {
        const ScalingReport r =
            eigenvalue_under_scaling(nn_interval(EdgeLength::pi_multiple(1.0)), "e", 1.0, 3);
        CHECK(r.lambda_after == doctest::Approx(r.lambda_before).epsilon(1e-10));
        CHECK(r.sandwich_ok);
        CHECK(r.monotone_ok);
    }
    SUBCASE("3-star, shrink the long edge") {
        const MetricGraph g = star({1.0, 1.0, 2.0}, {});
        const ScalingReport r = eigenvalue_under_scaling(g, "e2", 0.5, 2);
        CHECK(r.sandwich_ok);
        CHECK(r.monotone_ok);
        CHECK(r.lambda_after >= r.lambda_before * (1.0 - 1e-9));
    }
}
