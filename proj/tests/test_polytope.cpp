#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "pchain/coords.hpp"
#include "pchain/polytope.hpp"
#include "support.hpp"

using namespace pchain;
using namespace testing_support;

namespace {

const std::vector<ChainSpec>& specs()
{
    static const std::vector<ChainSpec> all = test_specs(is_positive, 25, 77);
    return all;
}

ChainSpec dilate(const ChainSpec& spec, int k)
{
    std::vector<int> l = spec.weights();
    for (auto& x : l)
        x *= k;
    return ChainSpec(l, spec.nonzero_twists());
}

}  // namespace

TEST(Polytope, MinMaxExamples)
{
    const MinMaxTable one = minmax_table(single(3));
    EXPECT_EQ(one.min, (std::vector<double>{0.0}));
    EXPECT_EQ(one.max, (std::vector<double>{3.0}));

    const MinMaxTable w = minmax_table(worked_spec());
    EXPECT_EQ(w.min, (std::vector<double>{0.0, 0.0}));
    EXPECT_EQ(w.max, (std::vector<double>{3.0, 5.0}));

    const MinMaxTable bad = minmax_table(ChainSpec({3, 5}, {{{2, 1}, 2}}));
    EXPECT_EQ(bad.min[1], -1.0);
}

TEST(Polytope, BoxRecursionMatchesExactUpToTwoStages)
{
    std::mt19937_64 rng(41);
    for (int k = 0; k < 300; ++k) {
        const ChainSpec spec = random_spec(rng, 2);
        const MinMaxTable exact = minmax_table(spec);
        const MinMaxTable box = box_minmax_table(spec);
        EXPECT_EQ(exact.min, box.min) << serialize(spec);
        EXPECT_EQ(exact.max, box.max) << serialize(spec);
    }
}

TEST(Polytope, BoxRecursionEnclosesExact)
{
    std::mt19937_64 rng(42);
    for (int k = 0; k < 300; ++k) {
        const ChainSpec spec = random_spec(rng, 5);
        const MinMaxTable exact = minmax_table(spec);
        const MinMaxTable box = box_minmax_table(spec);
        for (std::size_t j = 0; j < spec.length(); ++j) {
            EXPECT_LE(box.min[j], exact.min[j] + 1e-12);
            EXPECT_GE(box.max[j], exact.max[j] - 1e-12);
            EXPECT_LE(exact.min[j], exact.max[j]);
        }
    }
}

TEST(Polytope, ThreeStageChainWhereBoxRecursionIsLoose)
{
    // J_3 <= 6 - J_1 - J_2 with J_2 <= 5 - J_1: the two upper limits are never
    // reached together, so the upper limit of J_3 stays at least 1.
    const ChainSpec spec({3, 5, 6}, {{{2, 1}, 1}, {{3, 1}, 1}, {{3, 2}, 1}});
    EXPECT_TRUE(is_positive(spec));
    EXPECT_LT(box_minmax_table(spec).min[2], 0.0);
    EXPECT_EQ(minmax_table(spec).min[2], 0.0);
    EXPECT_EQ(lattice_points(spec).size(), brute_force_lattice(spec).size());
}

TEST(Polytope, ExtremaMatchSampledImage)
{
    // The moment image of the whole chain, sampled far out in every direction,
    // reaches the extrema and never leaves them.
    std::mt19937_64 rng(43);
    for (int k = 0; k < 60; ++k) {
        const ChainSpec spec = random_spec(rng, 3);
        const MinMaxTable table = minmax_table(spec);
        const std::size_t ell = spec.length();
        std::vector<double> lo(ell, 1e300);
        std::vector<double> hi(ell, -1e300);
        std::size_t corners = std::size_t{1} << ell;
        for (std::size_t code = 0; code < corners; ++code) {
            TildeCoords tt{std::vector<double>(ell)};
            for (std::size_t i = 0; i < ell; ++i)
                tt.tau_tilde[i] = (code >> i) & 1 ? 40.0 : -40.0;
            const ActionPoint p = coords::action_vars(spec, tt);
            for (std::size_t j = 0; j < ell; ++j) {
                lo[j] = std::min(lo[j], p.J[j]);
                hi[j] = std::max(hi[j], p.J[j]);
            }
        }
        for (std::size_t j = 0; j < ell; ++j) {
            EXPECT_NEAR(lo[j], table.min[j], 1e-9) << serialize(spec);
            EXPECT_NEAR(hi[j], table.max[j], 1e-9) << serialize(spec);
        }
    }
}

TEST(Polytope, PositivityExamples)
{
    EXPECT_TRUE(is_positive(single(3)));
    EXPECT_TRUE(is_positive(worked_spec()));
    EXPECT_FALSE(is_positive(ChainSpec({3, 5}, {{{2, 1}, 2}})));
    EXPECT_FALSE(is_positive(single(-1)));
    EXPECT_TRUE(TwistedCube(worked_spec()).positive());
}

TEST(Polytope, LatticeExamples)
{
    const auto three = lattice_points(single(2));
    ASSERT_EQ(three.size(), 3u);
    EXPECT_EQ(three[2].n, (std::vector<long long>{2}));
    EXPECT_EQ(lattice_points(worked_spec()).size(), 18u);
    EXPECT_EQ(lattice_points(ChainSpec({2, 2}, {})).size(), 9u);
    EXPECT_THROW(lattice_points(ChainSpec({3, 5}, {{{2, 1}, 2}})), NotPositiveError);
}

TEST(Polytope, LatticeMatchesBruteForceAndIsSorted)
{
    for (const auto& spec : specs()) {
        const auto pts = lattice_points(spec);
        EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
        std::set<std::vector<long long>> got;
        for (const auto& p : pts)
            got.insert(p.n);
        EXPECT_EQ(got.size(), pts.size());
        EXPECT_EQ(got, brute_force_lattice(spec)) << serialize(spec);
    }
}

TEST(Polytope, DilationCountsMatchBruteForce)
{
    for (std::size_t s = 0; s < 12; ++s)
        for (const int k : {2, 3}) {
            const ChainSpec big = dilate(specs()[s], k);
            EXPECT_EQ(lattice_points(big).size(), brute_force_lattice(big).size());
        }
}

TEST(Polytope, VertexExamples)
{
    using Points = std::vector<std::vector<double>>;
    EXPECT_EQ(vertices(single(3)), (Points{{0.0}, {3.0}}));
    EXPECT_EQ(vertices(worked_spec()), (Points{{0, 0}, {0, 5}, {3, 0}, {3, 2}}));
    EXPECT_EQ(vertices(ChainSpec({2, 2}, {})), (Points{{0, 0}, {0, 2}, {2, 0}, {2, 2}}));
    // Collapsed facet: J_2 <= 2 - J_1 shrinks to a point when J_1 = 2.
    EXPECT_EQ(vertices(ChainSpec({2, 2}, {{{2, 1}, 1}})), (Points{{0, 0}, {0, 2}, {2, 0}}));
    EXPECT_THROW(vertices(ChainSpec({3, 5}, {{{2, 1}, 2}})), NotPositiveError);
}

TEST(Polytope, VerticesAreFeasible)
{
    for (const auto& spec : specs()) {
        const TwistedCube cube(spec);
        const auto vs = vertices(spec);
        EXPECT_LE(vs.size(), std::size_t{1} << spec.length());
        for (const auto& v : vs)
            EXPECT_TRUE(cube.contains(v, 1e-9));
    }
}

TEST(Polytope, VolumeExamples)
{
    EXPECT_NEAR(volume(single(2), VolumeMethod::recursive_quadrature).value, 2.0, 1e-12);
    EXPECT_NEAR(volume(worked_spec(), VolumeMethod::recursive_quadrature).value, 10.5, 1e-8);
    const Estimate mc = volume(worked_spec(), VolumeMethod::monte_carlo, 1'000'000, 5);
    EXPECT_EQ(mc.samples, 1'000'000u);
    EXPECT_EQ(mc.seed, 5u);
    EXPECT_GT(mc.std_error, 0.0);
    EXPECT_LT(std::abs(mc.value - 10.5), 3.0 * mc.std_error);
    EXPECT_THROW(volume(ChainSpec({3, 5}, {{{2, 1}, 2}}), VolumeMethod::recursive_quadrature),
                 NotPositiveError);
}

TEST(Polytope, ProductVolumeIsProductOfWeights)
{
    EXPECT_NEAR(volume(ChainSpec({2, 3, 4}, {}), VolumeMethod::recursive_quadrature).value, 24.0,
                1e-8);
}

TEST(Polytope, QuadratureAndMonteCarloAgree)
{
    std::uint64_t seed = 900;
    for (const auto& spec : specs()) {
        const double q = volume(spec, VolumeMethod::recursive_quadrature).value;
        const Estimate mc = volume(spec, VolumeMethod::monte_carlo, 100'000, ++seed);
        EXPECT_GE(q, 0.0);
        EXPECT_LE(std::abs(q - mc.value), 4.0 * mc.std_error + 1e-12) << serialize(spec);
    }
}

TEST(Polytope, MonteCarloIsDeterministic)
{
    const Estimate a = volume(worked_spec(), VolumeMethod::monte_carlo, 10'000, 3);
    const Estimate b = volume(worked_spec(), VolumeMethod::monte_carlo, 10'000, 3);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Polytope, ConjugateMembershipExamples)
{
    const std::vector<double> center{1.0};
    const ConjugateResult r = conjugate_search(single(2), center);
    EXPECT_EQ(r.membership, Membership::interior);
    EXPECT_NEAR(r.maximizer[0], 0.0, 1e-8);

    const std::vector<double> inside{1.0, 2.0};
    EXPECT_EQ(conjugate_membership(worked_spec(), inside), Membership::interior);

    const std::vector<double> outside{3.0};
    const ConjugateResult out = conjugate_search(single(2), outside);
    EXPECT_EQ(out.membership, Membership::boundary_or_exterior);
    EXPECT_EQ(to_string(out.membership), "boundary-or-exterior");
    EXPECT_EQ(to_string(Membership::interior), "interior");
}

TEST(Polytope, ConjugateMaximizerReproducesPoint)
{
    // At the maximizer the action variables equal eta.
    const std::vector<double> eta{2.5, 0.5};
    const ConjugateResult r = conjugate_search(worked_spec(), eta);
    ASSERT_EQ(r.membership, Membership::interior);
    const ActionPoint j = coords::action_vars(
        worked_spec(), coords::tilde_from_tau(worked_spec(), TauCoords{r.maximizer}));
    EXPECT_NEAR(j.J[0], 2.5, 1e-8);
    EXPECT_NEAR(j.J[1], 0.5, 1e-8);
}

TEST(Polytope, ConjugateAgreesWithInequalities)
{
    std::mt19937_64 rng(44);
    for (std::size_t s = 0; s < specs().size(); s += 2) {
        const ChainSpec& spec = specs()[s];
        const TwistedCube cube(spec);
        std::vector<std::vector<double>> pts;
        scan_box(spec, 2, [&](const std::vector<long long>& n) {
            std::vector<double> x(n.begin(), n.end());
            if (std::abs(cube.slack(x)) >= 0.5)
                pts.push_back(std::move(x));
        });
        std::shuffle(pts.begin(), pts.end(), rng);
        pts.resize(std::min<std::size_t>(pts.size(), 60));
        for (const auto& x : pts) {
            const Membership expect =
                cube.slack(x) > 0.0 ? Membership::interior : Membership::boundary_or_exterior;
            EXPECT_EQ(conjugate_membership(spec, x), expect) << serialize(spec);
        }
    }
}

TEST(Polytope, CsvOutput)
{
    std::ostringstream out;
    write_points_csv(out, lattice_points(ChainSpec({1, 1}, {})), 2);
    EXPECT_EQ(out.str(), "n1,n2\n0,0\n0,1\n1,0\n1,1\n");
    std::ostringstream verts;
    write_points_csv(verts, vertices(single(3)), 1);
    EXPECT_EQ(verts.str(), "J1\n0\n3\n");
}
