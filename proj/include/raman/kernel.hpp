// kernel.hpp — Monochromatic Raman scattering amplitude u(t, Δ1, Δ2) and the
// wave-packet emission probability density built on it.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "raman/core.hpp"
#include "raman/quadrature.hpp"

namespace raman {

/// Observation time of the kernel: finite t, or the t → ∞ limit that keeps only
/// the undamped pole term.
class KernelMode {
public:
    static KernelMode finite_time(double t) {
        detail::require(t >= 0.0 && detail::finite(t), ErrorKind::InvalidParameter,
                        "kernel time must be finite and >= 0");
        return KernelMode(false, t);
    }
    static KernelMode asymptotic() { return KernelMode(true, 0.0); }

    bool is_asymptotic() const noexcept { return asymptotic_; }
    double time() const noexcept { return t_; }

private:
    KernelMode(bool a, double t) : asymptotic_(a), t_(t) {}
    bool asymptotic_;
    double t_;
};

namespace detail {

inline double sinc(double y) {
    if (std::abs(y) < 1e-4) return 1.0 - y * y / 6.0;
    return std::sin(y) / y;
}

// Divided difference (f(a) − f(b))/(a − b) of f(z) = e^{−izt}/(z + iγ), stable
// as a → b.
inline cplx pole_phase_difference(double a, double b, double t, double half_width) {
    const cplx ga = 1.0 / cplx(a, half_width);
    const cplx gb = 1.0 / cplx(b, half_width);
    const cplx phase_dd = -I * t * std::polar(1.0, -0.5 * (a + b) * t) * sinc(0.5 * (a - b) * t);
    return phase_dd * ga - std::polar(1.0, -b * t) * ga * gb;
}

} // namespace detail

/// u(t, Δ1, Δ2) for a single Raman path.
inline ComplexAmplitude kernel_u(const KernelMode& mode, const RamanChannel& ch, Detuning d1, Detuning d2) {
    const double pref = std::sqrt(ch.absorb_rate * ch.emit_rate) / (2.0 * pi);
    const double hw = 0.5 * ch.width;
    if (mode.is_asymptotic()) {
        detail::require(d1 != d2, ErrorKind::PoleOnGrid,
                        "asymptotic kernel evaluated on its pole Δ2 = Δ1");
        return pref / (cplx(d2, hw) * (d2 - d1));
    }
    const double t = mode.time();
    const cplx damped = std::exp(-hw * t) / (cplx(d1, hw) * cplx(d2, hw));
    return pref * (detail::pole_phase_difference(d2, d1, t, hw) + damped);
}

inline ComplexAmplitude kernel_u(const KernelMode& mode, const AtomThreeLevel& atom, Detuning d1, Detuning d2) {
    return kernel_u(mode, atom.channel(), d1, d2);
}

/// Time after which all transients of the finite-time kernel are damped by
/// e^{-25} for the given packet.
inline double asymptotic_time_threshold(const IncidentWavePacket& p, double gamma_total = 1.0) {
    return 50.0 / gamma_total + p.delay() + 10.0 / p.width();
}

/// Integration window for ∫dω ψ(ω) u(...), in carrier offsets: ±60·max(Δω1, Γ).
inline double packet_window_halfwidth(const IncidentWavePacket& p, double gamma_total, double factor = 60.0) {
    return factor * std::max(p.width(), gamma_total);
}

/// t → ∞ emission amplitude of a wave packet with spectral amplitude ψ(x) (x the
/// offset from the carrier d1): the τ > 0 contour evaluation of ∫dω ψ u gives
/// −i sqrt(Γa Γe) ψ(Δ2 − Δ1) / (Δ2 + iΓ/2), up to the common phase e^{−iΔ2 t}.
template <class Amplitude>
ComplexAmplitude asymptotic_emission_amplitude(Amplitude&& psi, const RamanChannel& ch, Detuning d1, Detuning d2) {
    return -I * std::sqrt(ch.absorb_rate * ch.emit_rate) * psi(d2 - d1) / cplx(d2, 0.5 * ch.width);
}

namespace detail {

// ψ(x) = Σ_j envelope_j(x) e^{i α_j x} with non-oscillating envelopes (valid
// away from x = 0 for the rectangular pulse).
struct PacketComponent {
    double frequency;
    cplx coefficient;
    int kind; // 0: c·ψ-envelope of the shape, 1: c / x
};

inline std::vector<PacketComponent> packet_components(const IncidentWavePacket& p) {
    switch (p.shape()) {
    case PacketShape::Rectangular: {
        const double T = p.duration();
        const cplx c = std::sqrt(2.0 * pi / T) / (2.0 * pi * I);
        return {{p.delay() + T, c, 1}, {p.delay(), -c, 1}};
    }
    case PacketShape::Gaussian:
    case PacketShape::Lorentzian: return {{p.delay(), 1.0, 0}};
    }
    return {};
}

inline cplx component_envelope(const IncidentWavePacket& p, const PacketComponent& c, double x) {
    if (c.kind == 1) return c.coefficient / x;
    const double w = p.width();
    if (p.shape() == PacketShape::Gaussian) return std::pow(2.0 / (pi * w * w), 0.25) * std::exp(-x * x / (w * w));
    return std::sqrt(w / (2.0 * pi)) / cplx(x, w / 2.0);
}

} // namespace detail

/// ∫dω ψ(ω) u(t, ω, Δ2) over the packet window. The neighbourhood of the pole
/// spike Δ1 = Δ2 (and of the carrier) is integrated directly with the stable
/// divided-difference kernel; the rest is split into envelope × e^{iβx} parts
/// and handled by the oscillatory rule.
inline ComplexAmplitude finite_time_emission_amplitude(const IncidentWavePacket& packet, const RamanChannel& ch,
                                                       Detuning d2, double t, const QuadratureSpec& quad = {},
                                                       double window_factor = 60.0) {
    const auto mode = KernelMode::finite_time(t);
    const double c = packet.carrier();
    const double w = packet_window_halfwidth(packet, ch.width, window_factor);
    const double spike = d2 - c;
    // Direct region: ±20 periods of e^{−iΔt} around the spike, at most ±2Γ.
    const double guard = t > 0.0 ? std::min(2.0, 20.0 * 2.0 * pi / t) : 2.0;
    const double near_lo = std::max(-w, std::min(0.0, spike) - guard);
    const double near_hi = std::min(w, std::max(0.0, spike) + guard);

    cplx total{};
    if (near_hi > near_lo) {
        auto direct = [&](double x) { return packet.at_offset(x) * kernel_u(mode, ch, c + x, d2); };
        std::vector<double> breaks{0.0, spike};
        if (t > 0.0) {
            const double s = 2.0 * pi / t;
            breaks.insert(breaks.end(), {spike - 4 * s, spike - s, spike + s, spike + 4 * s});
        }
        auto spec = quad.with_window(near_lo, near_hi);
        spec.max_subdivisions = std::max(spec.max_subdivisions, 20000);
        total += integrate(direct, spec, breaks);
    }

    const double pref = std::sqrt(ch.absorb_rate * ch.emit_rate) / (2.0 * pi);
    const double hw = 0.5 * ch.width;
    const cplx f2 = std::polar(1.0, -d2 * t) / cplx(d2, hw);
    const cplx damped = std::exp(-hw * t) / cplx(d2, hw);
    const cplx lead = std::polar(1.0, -c * t);
    auto far_spec = quad;
    far_spec.abs_tol *= 0.125;
    for (const auto& comp : detail::packet_components(packet)) {
        auto slow = [&](double x) {
            const double d1 = c + x;
            return detail::component_envelope(packet, comp, x) * pref *
                   (f2 / (d2 - d1) + damped / cplx(d1, hw));
        };
        auto fast = [&](double x) {
            const double d1 = c + x;
            return -detail::component_envelope(packet, comp, x) * pref * lead / (cplx(d1, hw) * (d2 - d1));
        };
        for (auto [a, b] : {std::pair{-w, near_lo}, std::pair{near_hi, w}}) {
            if (b <= a) continue;
            total += integrate_oscillatory(slow, comp.frequency, far_spec.with_window(a, b));
            total += integrate_oscillatory(fast, comp.frequency - t, far_spec.with_window(a, b));
        }
    }
    return total;
}

/// P(Δ2, t) = |∫dω ψ(ω) u(t, ω, Δ2)|². The asymptotic mode uses the contour
/// closed form and needs τ > 0.
inline double emission_density(const IncidentWavePacket& packet, const RamanChannel& ch, Detuning d2,
                               const KernelMode& mode, const QuadratureSpec& quad = {}) {
    if (mode.is_asymptotic()) {
        detail::require(packet.delay() > 0.0, ErrorKind::InvalidParameter,
                        "asymptotic emission density needs a packet delay τ > 0");
        return std::norm(asymptotic_emission_amplitude([&](double x) { return packet.at_offset(x); }, ch,
                                                       packet.carrier(), d2));
    }
    if (mode.time() == 0.0) return 0.0;
    return std::norm(finite_time_emission_amplitude(packet, ch, d2, mode.time(), quad));
}

inline double emission_density(const IncidentWavePacket& packet, const AtomThreeLevel& atom, Detuning d2,
                               const KernelMode& mode, const QuadratureSpec& quad = {}) {
    return emission_density(packet, atom.channel(), d2, mode, quad);
}

} // namespace raman
