#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pfsolve.hpp"

using namespace pfsolve;

namespace {

OrientedGraph path(std::size_t n) {
    auto g = OrientedGraph::with_size(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_arc(i, i + 1);
    return g;
}

std::vector<double> abs_weights(std::vector<double> w) {
    for (auto& x : w) x = std::abs(x);
    return w;
}

}  // namespace

TEST(IndPoly, WeightsForSpectrum) {
    EXPECT_EQ(weights_for_spectrum(gen_baxter(1, 3, 2.0, 0.5)), (VertexWeights{0.125, 8.0, 0.125}));
    const auto tc = gen_three_coupling(1, {1.0, 0.8, 1.2, 0.9, 1.1, 0.7});
    const auto w = weights_for_spectrum(tc);
    EXPECT_NEAR(w[tc.index_of("e1")], -std::pow(1.1, 3), 1e-14);
    EXPECT_NEAR(w[tc.index_of("b1")], std::pow(0.8, 3), 1e-14);
    const QuditDims d2(2, 1);
    EXPECT_EQ(weights_for_spectrum(Hamiltonian(d2, {{"x", WeylLabel(2, {1}, {0}), -1.5}})), VertexWeights{2.25});
    // (w^{1/2} X)^4 = w^2 = -1 for d = 4
    const QuditDims d4(4, 1);
    EXPECT_EQ(weights_for_spectrum(Hamiltonian(d4, {{"x", WeylLabel(4, {1}, {0}, 1), 2.0}})), VertexWeights{-16.0});
}

TEST(IndPoly, BruteForceExamples) {
    EXPECT_EQ(indpoly_bruteforce(OrientedGraph::with_size(1), {2.5}).coeffs, (std::vector<double>{1, 2.5}));
    EXPECT_EQ(indpoly_bruteforce(path(3), {1, 1, 1}).coeffs, (std::vector<double>{1, 3, 1}));
    auto k3 = OrientedGraph::with_size(3);
    k3.add_arc(0, 1);
    k3.add_arc(1, 2);
    k3.add_arc(0, 2);
    EXPECT_EQ(indpoly_bruteforce(k3, {1, 1, 1}).coeffs, (std::vector<double>{1, 3}));
    EXPECT_THROW(indpoly_bruteforce(path(3), {1, 0, 1}), PreconditionError);
    EXPECT_THROW(indpoly_bruteforce(path(3), {1, 1}), DimensionError);
}

TEST(IndPoly, ChordalExamples) {
    EXPECT_EQ(indpoly_chordal(path(3), {1, 1, 1}).coeffs, (std::vector<double>{1, 3, 1}));
    EXPECT_EQ(indpoly_chordal(path(5), {1, 1, 1, 1, 1}).coeffs, (std::vector<double>{1, 5, 6, 1}));
    const auto g = build_frustration_graph(gen_baxter(2, 3, 1.0, 1.0));
    EXPECT_EQ(independence_polynomial(g, weights_for_spectrum(gen_baxter(2, 3, 1.0, 1.0))).coeffs,
              (std::vector<double>{1, 5, 6, 1}));
    EXPECT_EQ(indpoly_chordal(OrientedGraph::with_size(3), {1, 1, 1}).coeffs, (std::vector<double>{1, 3, 3, 1}));
    auto c4 = OrientedGraph::with_size(4);
    for (std::size_t i = 0; i < 4; ++i) c4.add_arc(i, (i + 1) % 4);
    EXPECT_THROW(indpoly_chordal(c4, {1, 1, 1, 1}), PreconditionError);
    EXPECT_EQ(independence_polynomial(c4, {1, 1, 1, 1}).coeffs, (std::vector<double>{1, 4, 2}));
}

TEST(IndPoly, Evaluate) {
    const IndependencePolynomial z{{1, 3, 1}};
    EXPECT_EQ(evaluate(z, 0.0), cplx(1.0));
    EXPECT_EQ(evaluate(z, -1.0), cplx(-1.0));
    const IndependencePolynomial lin{{1, 4}};
    EXPECT_NEAR(std::abs(evaluate(lin, -0.25)), 0.0, 1e-15);
    EXPECT_EQ(z.derivative(2.0), cplx(7.0));
}

TEST(IndPoly, PathRecurrence) {
    // Z_{P_n} = Z_{P_{n-1}} + x w_n Z_{P_{n-2}}
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (std::size_t n = 1; n <= 15; ++n) {
        std::vector<double> w(n);
        for (auto& x : w) x = u(rng);
        std::vector<std::vector<double>> z{{1.0}, {1.0, w[0]}};
        for (std::size_t k = 2; k <= n; ++k) {
            auto next = z[k - 1];
            next.resize(k / 2 + 2, 0.0);
            for (std::size_t i = 0; i < z[k - 2].size(); ++i) next[i + 1] += w[k - 1] * z[k - 2][i];
            while (next.size() > 1 && next.back() == 0.0) next.pop_back();
            z.push_back(next);
        }
        const auto got = indpoly_chordal(path(n), w).coeffs;
        ASSERT_EQ(got.size(), z[n].size());
        for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], z[n][i], 1e-12 * std::max(1.0, std::abs(z[n][i])));
    }
}

TEST(IndPoly, ChordalMatchesBruteForceOnRandomChordalGraphs) {
    std::mt19937_64 rng(500);
    std::uniform_real_distribution<double> mag(0.05, 2.0);
    std::bernoulli_distribution sign(0.5);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 18);
        const auto g = oracle::random_chordal(rng, n);
        ASSERT_TRUE(perfect_elimination_ordering(g).has_value());
        std::vector<double> w(n);
        for (auto& x : w) x = (sign(rng) ? -1 : 1) * mag(rng);
        const auto chordal = indpoly_chordal(g, w).coeffs;
        const auto brute = indpoly_bruteforce(g, w).coeffs;
        const auto scale = indpoly_bruteforce(g, abs_weights(w)).coeffs;
        ASSERT_EQ(chordal.size(), brute.size());
        ASSERT_EQ(chordal.size(), independence_number(g) + 1);
        EXPECT_EQ(chordal[0], 1.0);
        for (std::size_t i = 0; i < brute.size(); ++i) worst = std::max(worst, std::abs(chordal[i] - brute[i]) / scale[i]);
    }
    EXPECT_LE(worst, 1e-9);
}

TEST(IndPoly, LinearCoefficientIsWeightSum) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
        const auto g = oracle::random_oriented(rng, 8, 0.4);
        std::vector<double> w(8);
        double s = 0;
        for (auto& x : w) s += (x = std::uniform_real_distribution<double>(0.5, 1.5)(rng));
        EXPECT_NEAR(independence_polynomial(g, w).coeffs.at(1), s, 1e-12);
    }
}
