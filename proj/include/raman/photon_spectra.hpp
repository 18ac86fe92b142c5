// photon_spectra.hpp — Emitted-photon spectra and success probabilities for
// single-photon excitation by rectangular, Gaussian and Lorentzian packets (t → ∞).

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "raman/core.hpp"
#include "raman/kernel.hpp"
#include "raman/measures.hpp"
#include "raman/quadrature.hpp"

namespace raman {

struct EmissionResult {
    SpectrumDensity spectrum;   // normalized on its grid
    double success_probability; // Raman photon creation probability N
    std::vector<std::string> warnings;
};

/// Atomic Lorentzian L(Δ) of FWHM Γ, unit area.
inline double lorentzian_line(double gamma_total, Detuning d) {
    return (gamma_total / (2.0 * pi)) / (d * d + 0.25 * gamma_total * gamma_total);
}
inline double lorentzian_line(const AtomThreeLevel& atom, Detuning d) { return lorentzian_line(atom.gamma_total(), d); }

/// Default output grid over ±max(8Γ, |Δ1| + 8Δω1): at least 4001 points and at
/// least 20 points per min(Γ, Δω1), capped at 400001.
inline FrequencyGrid default_photon_grid(const IncidentWavePacket& p, double gamma_total = 1.0,
                                         std::size_t points = 4001) {
    const double half = std::max(8.0 * gamma_total, std::abs(p.carrier()) + 8.0 * p.width());
    const double narrow = std::min(gamma_total, p.width()) / 20.0;
    const auto needed = std::min<std::size_t>(static_cast<std::size_t>(std::ceil(2.0 * half / narrow)) + 1, 400001);
    return FrequencyGrid::uniform(-half, half, std::max(points, needed | 1u));
}

/// Unnormalized emission density (2πΓ1Γ2/Γ) L(Δ2) |ψ(Δ2 − Δ1)|² at t → ∞.
inline double photon_emission_density(const RamanChannel& ch, const IncidentWavePacket& p, Detuning d2) {
    return 2.0 * pi * ch.absorb_rate * ch.emit_rate / ch.width * lorentzian_line(ch.width, d2) *
           p.power_at_offset(d2 - p.carrier());
}

/// N = ∫ P(ω2, t → ∞) dω2 over the whole axis, with P from the kernel pipeline.
inline double success_probability_numeric(const AtomThreeLevel& atom, const IncidentWavePacket& p,
                                          const QuadratureSpec& quad = {}) {
    if (atom.gamma1() == 0.0) return 0.0;
    auto density = [&](double d2) {
        return emission_density(p, atom, d2, KernelMode::asymptotic(), quad);
    };
    std::vector<double> breaks{0.0, p.carrier(), p.carrier() - p.width(), p.carrier() + p.width()};
    if (p.shape() == PacketShape::Rectangular) {
        // Sinc side lobes: seed the first few zeros.
        const double z = 2.0 * pi / p.duration();
        for (int k = 1; k <= 8; ++k) {
            breaks.push_back(p.carrier() + k * z);
            breaks.push_back(p.carrier() - k * z);
        }
    }
    auto spec = quad.with_window(-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
    return integrate(density, spec, breaks);
}

/// Closed-form success probability for a Lorentzian packet:
/// N = (Γ1Γ2/Γ)(Γ + Δω1) / (Δ1² + ((Γ + Δω1)/2)²).
inline double success_probability_lorentz(const AtomThreeLevel& atom, double carrier, double width) {
    const double g = atom.gamma_total();
    const double s = g + width;
    return atom.gamma1() * atom.gamma2() / g * s / (carrier * carrier + 0.25 * s * s);
}

namespace detail {

template <class Shape>
EmissionResult emission_on_grid(const AtomThreeLevel& atom, const FrequencyGrid& grid, Shape&& shape,
                                double probability, std::vector<std::string> warnings) {
    const double g = atom.gamma_total();
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = lorentzian_line(g, grid[i]) * shape(grid[i]);
    return {normalize(SpectrumDensity(grid, std::move(v))), probability, std::move(warnings)};
}

inline void require_shape(const IncidentWavePacket& p, PacketShape s) {
    require(p.shape() == s, ErrorKind::InvalidParameter,
            std::string("expected a ") + to_string(s) + " packet, got " + to_string(p.shape()));
    require(p.delay() > 0.0, ErrorKind::InvalidParameter, "closed-form spectra need a delay τ > 0");
}

} // namespace detail

/// S ∝ L(Δ2) (2π/T) (δ^{(T/2)}(Δ2 − Δ1))²
inline EmissionResult spectrum_rect(const AtomThreeLevel& atom, const IncidentWavePacket& p,
                                    const FrequencyGrid& grid, const QuadratureSpec& quad = {}) {
    detail::require_shape(p, PacketShape::Rectangular);
    const double T = p.duration();
    auto shape = [&](double d2) {
        const double d = diffraction_function(T / 2.0, d2 - p.carrier());
        return 2.0 * pi / T * d * d;
    };
    return detail::emission_on_grid(atom, grid, shape, success_probability_numeric(atom, p, quad), {});
}

/// S ∝ L(Δ2) exp(−2(Δ2 − Δ1)²/Δω1²). The closed form assumes τ ≫ 1/Δω1; a
/// warning is attached when τ < 10/Δω1.
inline EmissionResult spectrum_gauss(const AtomThreeLevel& atom, const IncidentWavePacket& p,
                                     const FrequencyGrid& grid, const QuadratureSpec& quad = {}) {
    detail::require_shape(p, PacketShape::Gaussian);
    std::vector<std::string> warnings;
    if (p.delay() < 10.0 / p.width())
        warnings.push_back("gaussian packet delay tau=" + std::to_string(p.delay()) +
                           " is below 10/linewidth; the far-field closed form may be inaccurate");
    const double w = p.width();
    auto shape = [&](double d2) {
        const double x = d2 - p.carrier();
        return std::sqrt(2.0 / (pi * w * w)) * std::exp(-2.0 * x * x / (w * w));
    };
    return detail::emission_on_grid(atom, grid, shape, success_probability_numeric(atom, p, quad),
                                    std::move(warnings));
}

/// S ∝ L(Δ2) (Δω1/2π)/((Δ2 − Δ1)² + (Δω1/2)²); N from its closed form.
inline EmissionResult spectrum_lorentz(const AtomThreeLevel& atom, const IncidentWavePacket& p,
                                       const FrequencyGrid& grid) {
    detail::require_shape(p, PacketShape::Lorentzian);
    const double w = p.width();
    auto shape = [&](double d2) {
        const double x = d2 - p.carrier();
        return (w / (2.0 * pi)) / (x * x + 0.25 * w * w);
    };
    return detail::emission_on_grid(atom, grid, shape, success_probability_lorentz(atom, p.carrier(), w), {});
}

/// Dispatch on the packet shape.
inline EmissionResult photon_spectrum(const AtomThreeLevel& atom, const IncidentWavePacket& p,
                                      const FrequencyGrid& grid, const QuadratureSpec& quad = {}) {
    switch (p.shape()) {
    case PacketShape::Rectangular: return spectrum_rect(atom, p, grid, quad);
    case PacketShape::Gaussian: return spectrum_gauss(atom, p, grid, quad);
    case PacketShape::Lorentzian: return spectrum_lorentz(atom, p, grid);
    }
    throw Error(ErrorKind::InvalidParameter, "unknown packet shape");
}

inline EmissionResult photon_spectrum(const AtomThreeLevel& atom, const IncidentWavePacket& p,
                                      const QuadratureSpec& quad = {}) {
    return photon_spectrum(atom, p, default_photon_grid(p, atom.gamma_total()), quad);
}

} // namespace raman
