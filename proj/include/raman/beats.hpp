// beats.hpp — Quantum-beat spectra: an atom prepared in c1|g1⟩ + c2|g2⟩ with both
// ground states coupled to |e⟩, Raman photon emitted on the e → g3 leg.
//
// Path j absorbs on the g_j ↔ e transition (rate Γj, detuning Δ1 for j = 1 and
// Δ1 + δ for j = 2) and emits with rate Γ3; both share Γ = Γ1 + Γ2 + Γ3.

#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "raman/core.hpp"
#include "raman/kernel.hpp"
#include "raman/laser_spectra.hpp"
#include "raman/measures.hpp"
#include "raman/parallel.hpp"
#include "raman/quadrature.hpp"

namespace raman {

class BeatAtom {
public:
    BeatAtom(double gamma1, double gamma2, double gamma3, double splitting)
        : g1_(gamma1), g2_(gamma2), g3_(gamma3), splitting_(splitting) {
        for (double g : {gamma1, gamma2, gamma3})
            detail::require(g >= 0.0 && detail::finite(g), ErrorKind::NonPositiveDecay,
                            "decay rates must be finite and >= 0");
        detail::require(gamma1 + gamma2 + gamma3 > 0.0, ErrorKind::NonPositiveDecay, "total width must be > 0");
        detail::require(splitting > 0.0 && detail::finite(splitting), ErrorKind::InvalidParameter,
                        "splitting must be > 0");
    }

    double gamma1() const noexcept { return g1_; }
    double gamma2() const noexcept { return g2_; }
    double gamma3() const noexcept { return g3_; }
    double gamma_total() const noexcept { return g1_ + g2_ + g3_; }
    double splitting() const noexcept { return splitting_; }

    /// Λ path j ∈ {1, 2}: absorb on g_j ↔ e, emit on e → g3.
    RamanChannel path(int j) const {
        detail::require(j == 1 || j == 2, ErrorKind::InvalidParameter, "path index must be 1 or 2");
        return {j == 1 ? g1_ : g2_, g3_, gamma_total()};
    }
    /// Carrier or laser detuning seen by path j for a base detuning Δ1.
    double path_detuning(int j, double d1) const { return j == 1 ? d1 : d1 + splitting_; }

private:
    double g1_, g2_, g3_, splitting_;
};

/// Unnormalized emission densities at one Δ3: the coherent two-path result and
/// the two single-path contributions |c_j U_j|².
struct BeatDensity {
    double coherent;
    double path1;
    double path2;
};

namespace detail {

inline void require_matching_split(const BeatAtom& batom, const SuperpositionInit& init) {
    require(std::abs(batom.splitting() - init.splitting()) <= 1e-12 * batom.splitting(),
            ErrorKind::InvalidParameter, "superposition splitting differs from the atom's splitting");
}

template <class Eval>
SpectrumDensity beat_on_grid(const FrequencyGrid& grid, unsigned threads, Eval&& eval) {
    std::vector<double> v(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) { v[i] = eval(grid[i]); });
    return normalize(SpectrumDensity(grid, std::move(v)));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Single-photon excitation

/// Coherent sum c1 U1 + c2 U2 of the two asymptotic emission amplitudes for one
/// packet; the packet's carrier is the path-1 detuning Δ1. c1, c2 are taken at
/// the packet arrival time τ, so the free phase e^{−iδτ} the delayed packet
/// imprints on path 2 is removed.
inline BeatDensity beat_density_photon(const BeatAtom& batom, const SuperpositionInit& init,
                                       const IncidentWavePacket& packet, Detuning d3) {
    detail::require(packet.delay() > 0.0, ErrorKind::InvalidParameter, "beat spectra need a packet delay τ > 0");
    auto psi = [&](double x) { return packet.at_offset(x); };
    const cplx u1 = init.c1() * asymptotic_emission_amplitude(psi, batom.path(1), batom.path_detuning(1, packet.carrier()), d3);
    const cplx u2 = init.c2() * std::polar(1.0, batom.splitting() * packet.delay()) *
                    asymptotic_emission_amplitude(psi, batom.path(2), batom.path_detuning(2, packet.carrier()), d3);
    return {std::norm(u1 + u2), std::norm(u1), std::norm(u2)};
}

inline SpectrumDensity beat_spectrum_photon(const BeatAtom& batom, const SuperpositionInit& init,
                                            const IncidentWavePacket& packet, const FrequencyGrid& grid,
                                            unsigned threads = 1) {
    detail::require_matching_split(batom, init);
    return detail::beat_on_grid(grid, threads,
                                [&](double d3) { return beat_density_photon(batom, init, packet, d3).coherent; });
}

// ---------------------------------------------------------------------------
// Laser excitation

/// The two laser paths: same Ω, detunings Δ1 and Δ1 + δ, each with its own
/// dressed pair.
struct BeatLaserPaths {
    LaserPath first;
    LaserPath second;

    BeatLaserPaths(const BeatAtom& batom, const LaserDrive& drive)
        : first(batom.path(1), drive),
          second(batom.path(2), LaserDrive(drive.rabi, batom.path_detuning(2, drive.detuning))) {}

    std::vector<double> breakpoints() const { return intermediate_breakpoints({first.dressed, second.dressed}, 0.0); }
};

/// c1 U^(1) + c2 U^(2) at fixed intermediate-photon detunings q (t → ∞).
inline ComplexAmplitude beat_laser_amplitude(const BeatLaserPaths& paths, const SuperpositionInit& init, Detuning d3,
                                             std::initializer_list<double> q) {
    return init.c1() * asymptotic_amplitude(paths.first, d3, q) + init.c2() * asymptotic_amplitude(paths.second, d3, q);
}

/// Unnormalized partial beat density for N intermediate photons. The path
/// amplitudes are summed coherently at each intermediate frequency, squared,
/// then integrated; the single-path parts are integrated separately.
inline BeatDensity beat_density_laser(const BeatAtom& batom, const SuperpositionInit& init, const LaserDrive& drive,
                                      int n_photons, Detuning d3, const QuadratureSpec& quad = {}) {
    const BeatLaserPaths paths(batom, drive);
    const auto b = paths.breakpoints();
    auto coherent = [&](double d, std::initializer_list<double> q) { return beat_laser_amplitude(paths, init, d, q); };
    auto one = [&](double d, std::initializer_list<double> q) { return init.c1() * asymptotic_amplitude(paths.first, d, q); };
    auto two = [&](double d, std::initializer_list<double> q) { return init.c2() * asymptotic_amplitude(paths.second, d, q); };
    return {partial_density(n_photons, coherent, d3, b, quad), partial_density(n_photons, one, d3, b, quad),
            partial_density(n_photons, two, d3, b, quad)};
}

/// Partial beat spectrum S_N(Δ3), normalized on the grid.
inline SpectrumDensity beat_spectrum_laser(const BeatAtom& batom, const SuperpositionInit& init,
                                           const LaserDrive& drive, int n_photons, const FrequencyGrid& grid,
                                           const QuadratureSpec& quad = {}, unsigned threads = 1) {
    detail::require_matching_split(batom, init);
    detail::require(n_photons >= 0 && n_photons <= 2, ErrorKind::InvalidParameter, "N must be 0, 1 or 2");
    const BeatLaserPaths paths(batom, drive);
    const auto b = paths.breakpoints();
    auto coherent = [&](double d, std::initializer_list<double> q) { return beat_laser_amplitude(paths, init, d, q); };
    return detail::beat_on_grid(grid, threads,
                                [&](double d3) { return partial_density(n_photons, coherent, d3, b, quad); });
}

/// Weights N_N = (Γ3/Γ)((Γ1 + Γ2)/Γ)^N of the partial beat spectra.
inline std::vector<double> beat_success_probabilities(const BeatAtom& batom, int n_max) {
    detail::require(n_max >= 0, ErrorKind::InvalidParameter, "n_max must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    const double r = (batom.gamma1() + batom.gamma2()) / batom.gamma_total();
    double w = batom.gamma3() / batom.gamma_total();
    for (auto& v : out) {
        v = w;
        w *= r;
    }
    return out;
}

/// Σ_{N ≤ n_max} N_N S_N, renormalized on the grid. Partial spectra may be passed
/// in to avoid recomputing them.
inline SpectrumDensity beat_sum_spectrum(const BeatAtom& batom, const std::vector<SpectrumDensity>& partials) {
    detail::require(!partials.empty() && partials.size() <= 3, ErrorKind::InvalidParameter,
                    "need partial spectra for N = 0 … n_max with n_max <= 2");
    const auto w = beat_success_probabilities(batom, static_cast<int>(partials.size()) - 1);
    const auto& grid = partials.front().grid();
    std::vector<double> v(grid.size(), 0.0);
    for (std::size_t n = 0; n < partials.size(); ++n) {
        detail::require(partials[n].grid().points() == grid.points(), ErrorKind::GridMismatch,
                        "partial spectra must share a grid");
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[n] * partials[n].values()[i];
    }
    return normalize(SpectrumDensity(grid, std::move(v)));
}

inline SpectrumDensity beat_sum_spectrum(const BeatAtom& batom, const SuperpositionInit& init,
                                         const LaserDrive& drive, int n_max, const FrequencyGrid& grid,
                                         const QuadratureSpec& quad = {}, unsigned threads = 1) {
    detail::require(n_max >= 0 && n_max <= 2, ErrorKind::InvalidParameter, "n_max must be 0, 1 or 2");
    std::vector<SpectrumDensity> partials;
    for (int n = 0; n <= n_max; ++n) partials.push_back(beat_spectrum_laser(batom, init, drive, n, grid, quad, threads));
    return beat_sum_spectrum(batom, partials);
}

} // namespace raman
