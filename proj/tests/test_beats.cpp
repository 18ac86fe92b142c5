// test_beats.cpp — two-path quantum-beat spectra

#include <gtest/gtest.h>

#include "raman/beats.hpp"

using namespace raman;

TEST(BeatAtom, Validation) {
    EXPECT_NO_THROW(BeatAtom(0.03, 0.03, 0.94, 2.0));
    EXPECT_THROW(BeatAtom(0.03, 0.03, 0.94, 0.0), Error);
    EXPECT_THROW(BeatAtom(-0.1, 0.03, 0.94, 1.0), Error);
    const BeatAtom b(0.1, 0.2, 0.7, 2.0);
    EXPECT_DOUBLE_EQ(b.path(2).absorb_rate, 0.2);
    EXPECT_DOUBLE_EQ(b.path(2).emit_rate, 0.7);
    EXPECT_DOUBLE_EQ(b.path_detuning(2, -1.0), 1.0);
}

TEST(BeatPhoton, InterferenceIdentity) {
    const BeatAtom b(0.03, 0.03, 0.94, 2.0);
    const auto init = SuperpositionInit::from_phase(0.5, 0.7, 2.0);
    const auto p = IncidentWavePacket::lorentzian(-1.0, 0.5, 40.0);
    const auto pi_init = SuperpositionInit::from_phase(0.5, 0.7 + pi, 2.0);
    for (double d3 : {-2.0, -0.5, 0.0, 1.1}) {
        const auto a = beat_density_photon(b, init, p, d3);
        const auto c = beat_density_photon(b, pi_init, p, d3);
        // |u1 + u2|² + |u1 − u2|² = 2(|u1|² + |u2|²)
        EXPECT_NEAR(a.coherent + c.coherent, 2.0 * (a.path1 + a.path2), 1e-12 * (a.path1 + a.path2));
    }
}

TEST(BeatPhoton, NarrowPacketTwoPeaks) {
    const BeatAtom b(0.03, 0.03, 0.94, 2.0);
    const auto init = SuperpositionInit::from_phase(0.5, 0.0, 2.0);
    const auto p = IncidentWavePacket::lorentzian(-1.0, 0.1, 200.0);
    const auto s = beat_spectrum_photon(b, init, p, FrequencyGrid::uniform(-3, 3, 1201), 2);
    const auto peaks = find_peaks(s);
    ASSERT_EQ(peaks.size(), 2u);
    EXPECT_NEAR(peaks[0].position, -1.0, 0.01);
    EXPECT_NEAR(peaks[1].position, 1.0, 0.01);
}

TEST(BeatPhoton, ThreadCountInvariant) {
    const BeatAtom b(0.03, 0.03, 0.94, 1.0);
    const auto init = SuperpositionInit::from_phase(0.5, 0.0, 1.0);
    const auto p = IncidentWavePacket::lorentzian(-0.5, 2.0, 10.0);
    const auto g = FrequencyGrid::uniform(-6, 6, 241);
    const auto a = beat_spectrum_photon(b, init, p, g, 1);
    const auto c = beat_spectrum_photon(b, init, p, g, 4);
    EXPECT_EQ(a.values(), c.values());
}

TEST(BeatPhoton, SplitMismatchRaises) {
    const BeatAtom b(0.03, 0.03, 0.94, 1.0);
    EXPECT_THROW(beat_spectrum_photon(b, SuperpositionInit::from_phase(0.5, 0.0, 2.0),
                                      IncidentWavePacket::lorentzian(0, 1, 20), FrequencyGrid::uniform(-1, 1, 11)),
                 Error);
}

TEST(BeatLaser, SinglePathReducesToS0) {
    // c2 = 0 removes the second path entirely.
    const BeatAtom b(0.03, 0.03, 0.94, 2.0);
    const SuperpositionInit init(1.0, 0.0, 2.0);
    const LaserDrive d(1.0, -1.0);
    const auto g = FrequencyGrid::uniform(-6, 6, 241);
    const auto beat = beat_spectrum_laser(b, init, d, 0, g);
    const auto single = s0_spectrum(b.gamma_total(), d, g);
    EXPECT_LT(l1_distance(beat, single), 1e-10);
}

TEST(BeatLaser, InterferenceIdentityN1) {
    const BeatAtom b(0.03, 0.03, 0.94, 2.0);
    const auto i0 = SuperpositionInit::from_phase(0.5, 0.0, 2.0);
    const auto ipi = SuperpositionInit::from_phase(0.5, pi, 2.0);
    const LaserDrive d(1.0, -1.0);
    for (double d3 : {-1.0, 0.3}) {
        const auto a = beat_density_laser(b, i0, d, 1, d3);
        const auto c = beat_density_laser(b, ipi, d, 1, d3);
        EXPECT_NEAR(a.coherent + c.coherent, 2.0 * (a.path1 + a.path2), 1e-6 * (a.path1 + a.path2));
    }
}

TEST(BeatLaser, Weights) {
    const auto w = beat_success_probabilities(BeatAtom(0.03, 0.03, 0.94, 2.0), 2);
    EXPECT_NEAR(w[0], 0.94, 1e-15);
    EXPECT_NEAR(w[1], 0.94 * 0.06, 1e-15);
    EXPECT_NEAR(w[2], 0.94 * 0.0036, 1e-15);
}

TEST(BeatLaser, SumIsNormalized) {
    const BeatAtom b(0.03, 0.03, 0.94, 2.0);
    const auto init = SuperpositionInit::from_phase(0.5, 0.0, 2.0);
    const auto g = FrequencyGrid::uniform(-6, 6, 121);
    const auto s = beat_sum_spectrum(b, init, LaserDrive(1.0, -1.0), 1, g, QuadratureSpec{}, 2);
    EXPECT_NEAR(s.mass(), 1.0, 1e-12);
}
