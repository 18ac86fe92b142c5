// test_photon_spectra.cpp — closed-form single-photon spectra and N

#include <gtest/gtest.h>

#include "raman/photon_spectra.hpp"

using namespace raman;

namespace {
double value_at(const SpectrumDensity& s, double x) {
    const auto& p = s.grid().points();
    const auto it = std::lower_bound(p.begin(), p.end(), x - 1e-12);
    return s.values()[static_cast<std::size_t>(it - p.begin())];
}
} // namespace

TEST(PhotonSpectrum, LorentzResonantPeak) {
    const AtomThreeLevel atom(0.5, 0.5);
    const auto p = IncidentWavePacket::lorentzian(0.0, 1.0, 20.0);
    // Wide grid so the Lorentzian tails are kept in the normalization.
    const auto r = spectrum_lorentz(atom, p, FrequencyGrid::uniform(-2000, 2000, 400001));
    EXPECT_NEAR(value_at(r.spectrum, 0.0), 4.0 / pi, 2e-3);
    EXPECT_NEAR(r.success_probability, 0.5, 1e-15);
}

TEST(PhotonSpectrum, NarrowLorentzSuccess) {
    const AtomThreeLevel atom(0.5, 0.5);
    EXPECT_NEAR(success_probability_lorentz(atom, 0.0, 1e-4), 1.0 / (1.0 + 1e-4), 1e-15);
}

TEST(PhotonSpectrum, NumericMatchesLorentzClosedForm) {
    const AtomThreeLevel atom(0.3, 0.7);
    for (double w : {0.1, 1.0, 5.0})
        for (double d1 : {0.0, 2.0}) {
            const auto p = IncidentWavePacket::lorentzian(d1, w, 20.0 / w);
            EXPECT_NEAR(success_probability_numeric(atom, p), success_probability_lorentz(atom, d1, w), 1e-7);
        }
}

TEST(PhotonSpectrum, NoBackDecayNoPhoton) {
    const AtomThreeLevel atom(0.0, 1.0);
    EXPECT_EQ(success_probability_numeric(atom, IncidentWavePacket::gaussian(0, 1, 20)), 0.0);
    EXPECT_EQ(success_probability_lorentz(atom, 0.0, 1.0), 0.0);
}

TEST(PhotonSpectrum, ProbabilityBounded) {
    const AtomThreeLevel atom(0.5, 0.5);
    for (auto shape : {PacketShape::Rectangular, PacketShape::Gaussian, PacketShape::Lorentzian})
        for (double w : {0.03, 0.3, 3.0, 30.0}) {
            const double n = success_probability_numeric(atom, IncidentWavePacket::with_width(shape, 0.0, w, 20.0 / w));
            EXPECT_GE(n, 0.0);
            EXPECT_LE(n, 4 * atom.gamma1() * atom.gamma2() / 1.0 + 1e-9);
        }
}

TEST(PhotonSpectrum, MonochromaticLimitTracksCarrier) {
    const AtomThreeLevel atom(0.5, 0.5);
    for (auto shape : {PacketShape::Rectangular, PacketShape::Gaussian, PacketShape::Lorentzian}) {
        const auto p = IncidentWavePacket::with_width(shape, 3.0, 0.03, 20.0 / 0.03);
        const auto r = photon_spectrum(atom, p);
        const auto peaks = find_peaks(r.spectrum);
        ASSERT_FALSE(peaks.empty());
        const auto top = *std::max_element(peaks.begin(), peaks.end(),
                                           [](const Peak& a, const Peak& b) { return a.height < b.height; });
        EXPECT_NEAR(top.position, 3.0, 0.01) << to_string(shape);
        EXPECT_NEAR(r.spectrum.mass(), 1.0, 1e-9);
    }
}

TEST(PhotonSpectrum, BroadbandLimitIsAtomicLine) {
    const AtomThreeLevel atom(0.5, 0.5);
    const auto grid = FrequencyGrid::uniform(-8, 8, 4001);
    std::vector<double> line;
    for (double x : grid.points()) line.push_back(lorentzian_line(1.0, x));
    const auto atomic = normalize(SpectrumDensity(grid, line));
    for (auto shape : {PacketShape::Rectangular, PacketShape::Gaussian, PacketShape::Lorentzian}) {
        const auto r = photon_spectrum(atom, IncidentWavePacket::with_width(shape, 0.0, 100.0, 0.2), grid);
        EXPECT_LT(l1_distance(r.spectrum, atomic), 0.05) << to_string(shape);
    }
}

TEST(PhotonSpectrum, RectangularHasSideLobes) {
    const AtomThreeLevel atom(0.5, 0.5);
    const auto p = IncidentWavePacket::rectangular(0.0, 20.0, 10.0);
    const auto r = photon_spectrum(atom, p, FrequencyGrid::uniform(-2, 2, 4001));
    EXPECT_GE(find_peaks(r.spectrum).size(), 3u);
    // Zeros of the diffraction factor at multiples of 2π/T.
    const double peak = value_at(r.spectrum, 0.0);
    EXPECT_LT(value_at(r.spectrum, 2 * pi / 20.0 * 2), 1e-4 * peak);
}

TEST(PhotonSpectrum, GaussianShortDelayWarns) {
    const AtomThreeLevel atom(0.5, 0.5);
    const auto r = photon_spectrum(atom, IncidentWavePacket::gaussian(0, 1, 2.0), FrequencyGrid::uniform(-8, 8, 801));
    EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(PhotonSpectrum, ShapeMismatchRaises) {
    const AtomThreeLevel atom(0.5, 0.5);
    EXPECT_THROW(spectrum_gauss(atom, IncidentWavePacket::lorentzian(0, 1, 20), FrequencyGrid::uniform(-1, 1, 11)),
                 Error);
}

TEST(PhotonSpectrum, DefaultGridResolvesNarrowPacket) {
    const auto g = default_photon_grid(IncidentWavePacket::lorentzian(0, 0.01, 2000));
    EXPECT_LE(g[1] - g[0], 0.01 / 20.0 * 1.0001);
}
