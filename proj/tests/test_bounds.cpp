#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lassospec/bounds.hpp"
#include "lassospec/spectrum.hpp"
#include "test_util.hpp"

using namespace lassospec;
using namespace testutil;

namespace {

constexpr double kPi = std::numbers::pi;

BoundsProfile profile(double length, int d, int n, int b) {
    BoundsProfile p;
    p.total_length = length;
    p.n_dirichlet = d;
    p.n_neumann = n;
    p.betti = b;
    return p;
}

}  // namespace

TEST_CASE("lower_bound") {
    // DD interval of length pi: bound equals the spectrum
    CHECK(lower_bound(profile(kPi, 2, 0, 0), 2) == doctest::Approx(4.0));
    // branch n < N + beta
    CHECK(lower_bound(profile(kPi, 0, 3, 0), 2) == doctest::Approx(1.0));
    // the constructed (N, D, beta) = (2, 4, 2) graph, L = 10 pi
    CHECK(lower_bound(profile(10.0 * kPi, 4, 2, 2), 12) == doctest::Approx(1.0));
    CHECK(lower_bound(profile(10.0 * kPi, 4, 2, 2), 32) == doctest::Approx(9.0));

    CHECK_THROWS_AS(lower_bound(profile(1.0, 0, 2, 0), 1), std::invalid_argument);
    CHECK_NOTHROW(lower_bound(profile(1.0, 1, 1, 0), 1));
    BoundsProfile loop = profile(1.0, 0, 0, 1);
    loop.cycle_exceptional = true;
    CHECK_THROWS_AS(lower_bound(loop, 2), ExceptionalGraphError);
}

TEST_CASE("upper_bound") {
    // NN interval: M_1 = 0 = lambda_1
    CHECK(upper_bound(profile(2.2, 0, 2, 0), 1) == doctest::Approx(0.0));
    // DD interval of length pi: M_3 = 9
    CHECK(upper_bound(profile(kPi, 2, 0, 0), 3) == doctest::Approx(9.0));
    // (2, 4, 2) instance: M_4 = 1, M_24 = 9
    CHECK(upper_bound(profile(10.0 * kPi, 4, 2, 2), 4) == doctest::Approx(1.0));
    CHECK(upper_bound(profile(10.0 * kPi, 4, 2, 2), 24) == doctest::Approx(9.0));
}

TEST_CASE("max multiplicity ceilings") {
    CHECK(max_multiplicity_upper(profile(1.0, 4, 2, 2)) == 9);
    CHECK(max_multiplicity_upper(profile(kPi, 2, 0, 0)) == 1);  // DD interval
    CHECK(max_multiplicity_upper(profile(1.0, 0, 0, 2)) == 3);  // dumbbell profile

    CHECK(max_multiplicity_contracted(dumbbell()) == 3);       // beta + P^T - 1 = 2 + 2 - 1
    CHECK(max_multiplicity_contracted(theta_graph()) == 2);    // 2 + 1 - 1
    CHECK(max_multiplicity_contracted(figure_eight()) == 2);   // 2 + 1 - 1
    CHECK(max_multiplicity_contracted(star({1, 1, 1, 1}, {})) == 3);  // tree: p - 1
    CHECK_THROWS_AS(max_multiplicity_contracted(loop_graph(EdgeLength::real(1.0))),
                    ExceptionalGraphError);
}

TEST_CASE("bounds_profile detects the exceptional cycle after suppression") {
    const MetricGraph cycle = MetricGraph::create({"a", "b", "c"},
                                                  {{"ab", "a", "b", EdgeLength::real(1.0)},
                                                   {"bc", "b", "c", EdgeLength::real(1.0)},
                                                   {"ca", "c", "a", EdgeLength::real(1.0)}},
                                                  {});
    CHECK(bounds_profile(cycle).cycle_exceptional);
    CHECK_FALSE(bounds_profile(dumbbell()).cycle_exceptional);
    CHECK(bounds_profile(nn_interval(EdgeLength::real(1.0))).is_interval());
    CHECK_FALSE(bounds_profile(dumbbell()).is_interval());
}

TEST_CASE("soundness: computed spectra sit between the bounds") {
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 12; ++trial) {
        const MetricGraph g = random_connected_graph(rng);
        const BoundsProfile p = bounds_profile(g);
        const Spectrum s = find_spectrum(g, 10.0 / g.total_length() * kPi);
        for (const SpectrumEntry& e : s.entries) {
            for (int n = e.first_index; n < e.first_index + e.multiplicity; ++n) {
                if (!(n == 1 && p.n_dirichlet == 0))
                    CHECK(e.lambda >= lower_bound(p, n) * (1.0 - 1e-6) - 1e-9);
                CHECK(e.lambda <= upper_bound(p, n) * (1.0 + 1e-6) + 1e-9);
            }
        }
    }
}

TEST_CASE("classify_spectrum on the DD interval: everything simple sharp") {
    const MetricGraph g = dd_interval(EdgeLength::pi_multiple(1.0));
    const Spectrum s = find_spectrum(g, 5.5);
    const SharpnessReport r = classify_spectrum(s, bounds_profile(g), 1e-6);
    REQUIRE(r.entries.size() == 5);
    for (const SharpnessEntry& e : r.entries) {
        CHECK(e.simple_sharp);
        CHECK(e.lower_sharp);
        CHECK(e.upper_sharp);
        CHECK(e.maximally_degenerate);  // m_U = 1
        CHECK_FALSE(e.sharp_degenerate);
    }
    CHECK(r.characterization_ok);
    CHECK(r.eq4_ok);
}

TEST_CASE("classify_spectrum on the NN interval: lambda_1 = 0 is upper sharp only") {
    const MetricGraph g = nn_interval(EdgeLength::pi_multiple(1.0));
    const Spectrum s = find_spectrum(g, 3.5);
    const SharpnessReport r = classify_spectrum(s, bounds_profile(g), 1e-6);
    REQUIRE(!r.entries.empty());
    CHECK(r.entries[0].lambda == 0.0);
    CHECK(r.entries[0].upper_sharp);        // M_1 = 0
    CHECK_FALSE(r.entries[0].lower_sharp);  // no lower estimate at n = 1 without Dirichlet
    for (size_t i = 1; i < r.entries.size(); ++i) CHECK(r.entries[i].simple_sharp);
    CHECK(r.characterization_ok);
}

TEST_CASE("classify_spectrum rejects the loop graph") {
    const MetricGraph g = loop_graph(EdgeLength::pi_multiple(2.0));
    const Spectrum s = find_spectrum(g, 2.5);
    CHECK_THROWS_AS(classify_spectrum(s, bounds_profile(g), 1e-6), ExceptionalGraphError);
}

TEST_CASE("verify_characterization flags a forged report") {
    const BoundsProfile p = profile(10.0, 2, 2, 1);  // m_U = 5
    SharpnessReport forged;
    // claims sharpness at multiplicity m_U - 1
    SharpnessEntry e;
    e.lambda = 1.0;
    e.first_index = 2;
    e.multiplicity = max_multiplicity_upper(p) - 1;
    e.lower_sharp = e.upper_sharp = e.sharp_degenerate = true;
    forged.entries.push_back(e);
    const CharacterizationCheck check = verify_characterization(forged, p);
    CHECK_FALSE(check.ok);
    CHECK_FALSE(check.characterization_ok);
    REQUIRE(!check.violations.empty());

    // a maximally degenerate entry not flagged sharp is the converse violation
    SharpnessReport unflagged;
    e.multiplicity = max_multiplicity_upper(p);
    e.lower_sharp = e.upper_sharp = e.sharp_degenerate = false;
    unflagged.entries.push_back(e);
    CHECK_FALSE(verify_characterization(unflagged, p).characterization_ok);

    // simple sharp off an interval
    SharpnessReport off_interval;
    e.multiplicity = 1;
    e.lower_sharp = e.upper_sharp = e.simple_sharp = true;
    e.sharp_degenerate = false;
    off_interval.entries.push_back(e);
    CHECK_FALSE(verify_characterization(off_interval, p).characterization_ok);
}

TEST_CASE("bound sequences are strictly increasing (random profiles)") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> len(0.5, 20.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = std::uniform_int_distribution<int>(1, 5)(rng);
        const int n = std::uniform_int_distribution<int>(0, 5)(rng);
        const int b = std::uniform_int_distribution<int>(0, 4)(rng);
        const BoundsProfile p = profile(len(rng), d, n, b);
        for (int i = 1; i < 100; ++i) {
            CHECK(lower_bound(p, i) < lower_bound(p, i + 1));
            CHECK(upper_bound(p, i) < upper_bound(p, i + 1));
        }
    }
}

TEST_CASE("simple_sharp_profiles enumerates exactly the three interval types") {
    const auto profiles = simple_sharp_profiles();
    REQUIRE(profiles.size() == 3);
    for (const SimpleSharpProfile& p : profiles) {
        CHECK(p.betti == 0);
        CHECK(p.n_dirichlet + p.n_neumann == 2);
    }
    // NN, ND, DD each present
    int nn = 0, nd = 0, dd = 0;
    for (const SimpleSharpProfile& p : profiles) {
        if (p.n_dirichlet == 0) ++nn;
        if (p.n_dirichlet == 1) ++nd;
        if (p.n_dirichlet == 2) ++dd;
    }
    CHECK(nn == 1);
    CHECK(nd == 1);
    CHECK(dd == 1);
}
