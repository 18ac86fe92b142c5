// test_oracle.cpp — discretized-continuum Schrödinger integration

#include <gtest/gtest.h>

#include "raman/laser_spectra.hpp"
#include "raman/oracle.hpp"
#include "raman/photon_spectra.hpp"

using namespace raman;

TEST(ModeGrid, Layout) {
    const ModeGrid m(10.0, 0.02);
    EXPECT_EQ(m.size(), 1001u);
    EXPECT_DOUBLE_EQ(m.detuning(0), -10.0);
    EXPECT_NEAR(m.detuning(1000), 10.0, 1e-12);
    EXPECT_THROW(ModeGrid(10.0, 0.03), Error);
}

TEST(ModeGrid, RecurrenceHorizon) {
    try {
        ModeGrid(10.0, 0.05).validate_for(1.0, 55.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::RecurrenceHorizon);
    }
    EXPECT_THROW(ModeGrid(10.0, 0.1).validate_for(1.0, 10.0), Error); // dω > Γ/20
}

TEST(Oracle, PhotonMatchesClosedForm) {
    const AtomThreeLevel atom(0.5, 0.5);
    const auto p = IncidentWavePacket::gaussian(0.0, 1.0, 5.0);
    const ModeGrid modes(40.0, 0.02);
    const auto o = oracle_photon_scattering(atom, p, modes, 55.0);
    const auto closed = photon_spectrum(atom, p, modes.frequency_grid());
    EXPECT_LT(l1_distance(o.spectrum, closed.spectrum), 0.01);
    EXPECT_NEAR(o.success_probability / o.input_mass, closed.success_probability, 5e-3);
    EXPECT_LT(o.norm_drift, 1e-5);
}

TEST(Oracle, NoBackDecayEmitsNothing) {
    const AtomThreeLevel atom(0.0, 1.0);
    try {
        oracle_photon_scattering(atom, IncidentWavePacket::gaussian(0.0, 1.0, 5.0), ModeGrid(10.0, 0.02), 55.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EmptySpectrum);
    }
}

TEST(Oracle, LaserMatchesS0) {
    const AtomThreeLevel atom(0.5, 0.5);
    // Resonant drive: both dressed lines have width Γ/2 and decay well before t_end.
    const LaserDrive d(1.0, 0.0);
    const ModeGrid modes(40.0, 0.02);
    const auto o = oracle_laser_n0(atom, d, modes, 55.0);
    EXPECT_LT(l1_distance(o.spectrum, s0_spectrum(atom, d, modes.frequency_grid())), 0.01);
    EXPECT_NEAR(o.success_probability, 0.5, 5e-3);
}

TEST(Oracle, WriteAmplitudes) {
    const AtomThreeLevel atom(0.5, 0.5);
    const auto o = oracle_laser_n0(atom, LaserDrive(1.0, 0.0), ModeGrid(2.5, 0.025), 50.0);
    std::ostringstream os;
    write_amplitudes(os, o);
    const auto text = os.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), static_cast<long>(o.modes.size() + 1));
}
