// test_laser_spectra.cpp — dressed states, Stark shift, S_N and N_N

#include <gtest/gtest.h>

#include "raman/laser_spectra.hpp"

using namespace raman;

TEST(Dressed, ResonantValues) {
    const auto w = dressed_frequencies(1.0, LaserDrive(2.0, 0.0));
    EXPECT_NEAR(std::abs(w.plus - cplx(std::sqrt(15.0) / 4, -0.25)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(w.minus - cplx(-std::sqrt(15.0) / 4, -0.25)), 0.0, 1e-15);
}

TEST(Dressed, TraceAndProduct) {
    for (double om : {0.1, 0.5, 1.0, 4.0})
        for (double d1 : {-3.0, 0.0, 0.7, 2.0}) {
            const auto w = dressed_frequencies(1.0, LaserDrive(om, d1));
            EXPECT_NEAR(std::abs(w.plus + w.minus - cplx(d1, -0.5)), 0.0, 1e-14);
            EXPECT_NEAR(std::abs(w.plus * w.minus - cplx(-0.25 * om * om, -0.5 * d1)), 0.0, 1e-13);
            EXPECT_LE(w.plus.imag(), 1e-15);
            EXPECT_LE(w.minus.imag(), 1e-15);
        }
}

TEST(Stark, PolesMatchDressedPair) {
    for (double om : {0.5, 1.0, 4.0})
        for (double d1 : {-2.0, 1.0, 3.0}) {
            const LaserDrive d(om, d1);
            const auto s = stark_shift(1.0, d);
            const auto w = dressed_frequencies(1.0, d);
            const cplx a(d1 + s.delta_s, -0.5 * s.kappa), b(-s.delta_s, -0.5 * (1.0 - s.kappa));
            const double direct = std::abs(w.plus - a) + std::abs(w.minus - b);
            const double swapped = std::abs(w.plus - b) + std::abs(w.minus - a);
            EXPECT_LT(std::min(direct, swapped), 1e-12) << om << " " << d1;
            EXPECT_GT(s.kappa, 0.0);
            EXPECT_LT(s.kappa, 1.0);
            for (double x : {-3.0, 0.0, 1.3})
                EXPECT_NEAR(s0_density_stark(1.0, d, s, x), s0_density(1.0, w, om, x), 1e-12);
        }
}

TEST(Stark, WeakFarDetunedLimit) {
    // Δ_S → Ω²/(4Δ1) for Ω ≪ |Δ1|.
    const auto s = stark_shift(1.0, LaserDrive(0.1, 10.0));
    EXPECT_NEAR(s.delta_s, 0.01 / 40.0, 1e-6);
}

TEST(Stark, OverdampedResonanceDegenerate) {
    try {
        stark_shift(1.0, LaserDrive(0.25, 0.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateDressing);
    }
    std::vector<std::string> warnings;
    const auto s = s0_spectrum(1.0, LaserDrive(0.25, 0.0), default_laser_grid(LaserDrive(0.25, 0.0)), &warnings);
    EXPECT_EQ(warnings.size(), 1u);
    EXPECT_NEAR(s.mass(), 1.0, 1e-12);
}

TEST(S0, ReflectionSymmetry) {
    const auto g = FrequencyGrid::uniform(-10, 10, 2001);
    for (double om : {0.5, 1.0, 3.0}) {
        const auto a = s0_spectrum(1.0, LaserDrive(om, 1.5), g);
        const auto b = s0_spectrum(1.0, LaserDrive(om, -1.5), g);
        for (std::size_t i = 0; i < g.size(); ++i)
            EXPECT_NEAR(a.values()[i], b.values()[g.size() - 1 - i], 1e-12 * a.values()[i]);
    }
}

TEST(S0, ResonantDoubletAtStrongDrive) {
    const LaserDrive d(4.0, 0.0);
    const auto s = s0_spectrum(1.0, d, default_laser_grid(d));
    const auto peaks = find_peaks(s);
    ASSERT_EQ(peaks.size(), 2u);
    const double split = std::sqrt(16.0 - 0.25);
    EXPECT_NEAR(peaks[0].position, -0.5 * split, 0.05);
    EXPECT_NEAR(peaks[1].position, 0.5 * split, 0.05);
}

TEST(S0, ZeroDriveIsEmpty) {
    EXPECT_THROW(s0_spectrum(1.0, LaserDrive(0.0, 1.0), FrequencyGrid::uniform(-1, 1, 11)), Error);
}

TEST(S0, UnitAreaOnRealLine) {
    const LaserDrive d(1.3, 0.8);
    const auto w = dressed_frequencies(1.0, d);
    const double m = integrate([&](double x) { return s0_density(1.0, w, d.rabi, x); }, QuadratureSpec{},
                               {w.plus.real(), w.minus.real()});
    EXPECT_NEAR(m, 1.0, 1e-9);
}

TEST(SuccessProbabilities, GeometricWeights) {
    const auto n = success_probabilities(AtomThreeLevel(0.5, 0.5), 3);
    EXPECT_DOUBLE_EQ(n[0], 0.5);
    EXPECT_DOUBLE_EQ(n[1], 0.25);
    EXPECT_DOUBLE_EQ(n[2], 0.125);
    EXPECT_DOUBLE_EQ(n[3], 0.0625);
}

TEST(PartialSpectra, NumericWeightsMatchGeometric) {
    const AtomThreeLevel atom(0.5, 0.5);
    const LaserDrive d(1.0, 0.5);
    const auto expect = success_probabilities(atom, 2);
    for (int n = 0; n <= 1; ++n) EXPECT_NEAR(partial_success_probability(n, atom, d), expect[n], 1e-4) << n;
}

TEST(PartialSpectra, N0MatchesS0) {
    const AtomThreeLevel atom(0.5, 0.5);
    const LaserDrive d(1.0, 1.0);
    const auto g = FrequencyGrid::uniform(-8, 8, 801);
    EXPECT_LT(l1_distance(partial_spectrum(0, atom, d, g), s0_spectrum(atom, d, g)), 1e-10);
}

TEST(PartialSpectra, N1ShapeMatchesS0) {
    const AtomThreeLevel atom(0.5, 0.5);
    const LaserDrive d(2.0, 1.0);
    const auto g = FrequencyGrid::uniform(-8, 8, 321);
    EXPECT_LT(l1_distance(partial_spectrum(1, atom, d, g), s0_spectrum(atom, d, g)), 1e-6);
}

TEST(Amplitudes, FiniteTimeConvergesToAsymptotic) {
    const AtomThreeLevel atom(0.5, 0.5);
    const LaserPath path(atom, LaserDrive(1.0, 0.5));
    const double t = 200.0;
    for (double d2 : {-1.0, 0.2, 1.5}) {
        // Only moduli converge; the finite-t amplitude carries a global phase e^{−iΔ2 t}.
        EXPECT_NEAR(std::abs(amplitude_N0(t, path, d2)), std::abs(asymptotic_amplitude(path, d2, {})), 1e-8);
        EXPECT_NEAR(std::abs(amplitude_N1(t, path, d2, 0.3)), std::abs(asymptotic_amplitude(path, d2, {0.3})), 1e-8);
        EXPECT_NEAR(std::abs(amplitude_N2(t, path, d2, 0.3, -0.7)),
                    std::abs(asymptotic_amplitude(path, d2, {0.3, -0.7})), 1e-8);
    }
}

TEST(Amplitudes, ZeroAtTimeZero) {
    const LaserPath path(AtomThreeLevel(0.5, 0.5), LaserDrive(1.0, 0.5));
    EXPECT_LT(std::abs(amplitude_N0(0.0, path, 0.4)), 1e-14);
    EXPECT_LT(std::abs(amplitude_N1(0.0, path, 0.4, 0.1)), 1e-14);
    EXPECT_LT(std::abs(amplitude_N2(0.0, path, 0.4, 0.1, 0.2)), 1e-14);
}

TEST(Amplitudes, SingularGuardIsContinuous) {
    const LaserPath path(AtomThreeLevel(0.5, 0.5), LaserDrive(1.0, 0.5));
    const double t = 7.0;
    const double c = path.dressed.plus.real();
    const cplx at = amplitude_N1(t, path, 0.3, c);
    const cplx near = amplitude_N1(t, path, 0.3, c + 1e-4);
    EXPECT_LT(std::abs(at - near), 1e-2 * std::abs(at) + 1e-10);
    EXPECT_TRUE(std::isfinite(std::abs(amplitude_N2(t, path, 0.3, c, 0.0))));
}
