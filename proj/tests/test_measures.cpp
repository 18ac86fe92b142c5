// test_measures.cpp — Süßmann linewidth, normalization, L1 and peaks

#include <gtest/gtest.h>

#include "raman/measures.hpp"
#include "raman/photon_spectra.hpp"

using namespace raman;

namespace {
SpectrumDensity sample(const FrequencyGrid& g, double (*f)(double)) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g[i]);
    return SpectrumDensity(g, std::move(v));
}
double lorentz(double x) { return lorentzian_line(1.0, x); }
double gauss(double x) { return std::exp(-0.5 * x * x / 0.09) / std::sqrt(2 * pi * 0.09); }
} // namespace

TEST(Suessmann, LorentzianIsGamma) {
    // Wide grid: Lorentzian tails carry mass ~2/(πH).
    const auto s = sample(FrequencyGrid::uniform(-4000, 4000, 400001), lorentz);
    EXPECT_NEAR(suessmann_linewidth(s), 1.0, 1e-3);
}

TEST(Suessmann, Boxcar) {
    const auto g = FrequencyGrid::uniform(0.0, 3.0, 301);
    const SpectrumDensity s(g, std::vector<double>(g.size(), 1.0 / 3.0));
    EXPECT_NEAR(suessmann_linewidth(s), 3.0 / pi, 1e-12);
}

TEST(Suessmann, Gaussian) {
    const auto s = sample(FrequencyGrid::uniform(-3, 3, 6001), gauss);
    EXPECT_NEAR(suessmann_linewidth(s), 2 * 0.3 / std::sqrt(pi), 1e-9);
}

TEST(Suessmann, ScaleCovariantAndHomogeneous) {
    const auto g = FrequencyGrid::uniform(-3, 3, 6001);
    const auto s = sample(g, gauss);
    std::vector<double> x2, y2, y3;
    for (std::size_t i = 0; i < g.size(); ++i) {
        x2.push_back(2.5 * g[i]);
        y2.push_back(s.values()[i] / 2.5);
        y3.push_back(7.0 * s.values()[i]);
    }
    const SpectrumDensity stretched(FrequencyGrid(x2), y2);
    EXPECT_NEAR(suessmann_linewidth(stretched), 2.5 * suessmann_linewidth(s), 1e-8);
    EXPECT_NEAR(suessmann_linewidth(SpectrumDensity(g, y3)), suessmann_linewidth(s), 1e-12);
}

TEST(Suessmann, EmptyRaises) {
    const auto g = FrequencyGrid::uniform(0, 1, 11);
    try {
        suessmann_linewidth(SpectrumDensity(g, std::vector<double>(11, 0.0)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EmptySpectrum);
    }
}

TEST(Normalize, IdempotentAndScaleInvariant) {
    const auto s = normalize(sample(FrequencyGrid::uniform(-3, 3, 601), gauss));
    const auto again = normalize(s);
    std::vector<double> doubled(s.values());
    for (auto& v : doubled) v *= 2;
    const auto d = normalize(SpectrumDensity(s.grid(), doubled));
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_NEAR(again.values()[i], s.values()[i], 1e-12);
        EXPECT_NEAR(d.values()[i], s.values()[i], 1e-12);
    }
    EXPECT_NEAR(s.mass(), 1.0, 1e-12);
}

TEST(Normalize, NarrowSpikeOnCoarseGrid) {
    const auto g = FrequencyGrid::uniform(-5, 5, 11);
    // A spike on the last node: one panel holds all the mass.
    std::vector<double> v(11, 0.0);
    v[10] = 1.0;
    try {
        normalize(SpectrumDensity(g, v));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnderResolved);
    }
}

TEST(Normalize, EmptyRaises) {
    EXPECT_THROW(normalize(SpectrumDensity(FrequencyGrid::uniform(0, 1, 3), {0, 0, 0})), Error);
}

TEST(L1, GridMismatch) {
    const auto a = sample(FrequencyGrid::uniform(-1, 1, 11), gauss);
    const auto b = sample(FrequencyGrid::uniform(-1, 1, 13), gauss);
    EXPECT_THROW(l1_distance(a, b), Error);
    EXPECT_DOUBLE_EQ(l1_distance(a, a), 0.0);
}

TEST(Peaks, SingleLorentzian) {
    const auto p = find_peaks(sample(FrequencyGrid::uniform(-10, 10, 2001), lorentz));
    ASSERT_EQ(p.size(), 1u);
    EXPECT_NEAR(p[0].position, 0.0, 1e-12);
    EXPECT_NEAR(p[0].fwhm, 1.0, 0.01);
    EXPECT_NEAR(p[0].height, 2.0 / pi, 1e-9);
}

TEST(Peaks, OffGridVertexRefinement) {
    const auto g = FrequencyGrid::uniform(-10, 10, 201);
    std::vector<double> v;
    for (double x : g.points()) v.push_back(lorentzian_line(1.0, x - 0.037));
    const auto p = find_peaks(SpectrumDensity(g, v));
    ASSERT_EQ(p.size(), 1u);
    EXPECT_NEAR(p[0].position, 0.037, 2e-3);
}

TEST(Peaks, MonotoneHasNone) {
    const auto g = FrequencyGrid::uniform(0, 5, 51);
    std::vector<double> v;
    for (double x : g.points()) v.push_back(std::exp(-x));
    EXPECT_TRUE(find_peaks(SpectrumDensity(g, v)).empty());
}
