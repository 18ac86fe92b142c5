// oracle.hpp — Brute-force check of the spectra: the emission (and absorption)
// continua are replaced by a finite comb of modes and the single-excitation
// Schrödinger equation is integrated directly with fixed-step RK4.
//
// Uses only the core types; no kernel or closed-form spectrum is consulted.

#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include "raman/core.hpp"

namespace raman {

/// Modes Δ_k = −W + k·dω, k = 0 … 2W/dω, shared by every channel.
class ModeGrid {
public:
    explicit ModeGrid(double half_width = 40.0, double spacing = 0.02) : half_width_(half_width), spacing_(spacing) {
        detail::require(half_width > 0.0 && spacing > 0.0 && detail::finite(half_width) && detail::finite(spacing),
                        ErrorKind::InvalidParameter, "mode grid needs W > 0 and dω > 0");
        const double ratio = half_width / spacing;
        detail::require(std::abs(ratio - std::round(ratio)) <= 1e-9 * ratio, ErrorKind::InvalidParameter,
                        "W/dω must be an integer");
        count_ = 2 * static_cast<std::size_t>(std::llround(ratio)) + 1;
    }

    double half_width() const noexcept { return half_width_; }
    double spacing() const noexcept { return spacing_; }
    std::size_t size() const noexcept { return count_; }
    double detuning(std::size_t k) const { return -half_width_ + spacing_ * static_cast<double>(k); }
    /// Per-mode coupling sqrt(Γ_j dω / 2π).
    double coupling(double rate) const { return std::sqrt(rate * spacing_ / (2.0 * pi)); }
    double recurrence_time() const { return 2.0 * pi / spacing_; }

    FrequencyGrid frequency_grid() const {
        std::vector<double> pts(count_);
        for (std::size_t k = 0; k < count_; ++k) pts[k] = detuning(k);
        return FrequencyGrid(std::move(pts), "modes W=" + std::to_string(half_width_) + " dw=" + std::to_string(spacing_));
    }

    /// Checks dω ≤ Γ/20 and 5·t_end ≤ 2π/dω.
    void validate_for(double gamma_total, double t_end) const {
        detail::require(spacing_ <= gamma_total / 20.0 * (1.0 + 1e-12), ErrorKind::InvalidParameter,
                        "mode spacing must satisfy dω <= Γ/20");
        detail::require(5.0 * t_end <= recurrence_time() * (1.0 + 1e-12), ErrorKind::RecurrenceHorizon,
                        "t_end = " + std::to_string(t_end) + " exceeds 1/5 of the recurrence time 2π/dω = " +
                            std::to_string(recurrence_time()));
    }

    /// RK4 step min(0.002/Γ, 0.05/W), shortened so that it divides t_end.
    std::size_t steps_for(double gamma_total, double t_end) const {
        const double dt = std::min(0.002 / gamma_total, 0.05 / half_width_);
        return static_cast<std::size_t>(std::ceil(t_end / dt));
    }

private:
    double half_width_;
    double spacing_;
    std::size_t count_{};
};

struct OracleResult {
    SpectrumDensity spectrum;          // |b_k|²/dω on the mode grid, normalized
    double success_probability;        // Σ|b_k|²
    double input_mass;                 // Σ|a_k(0)|² (photon case) or 1 (laser case)
    double norm_drift;                 // unitarity or loss-accounting residual
    std::vector<cplx> output_amplitudes;
    ModeGrid modes;
};

namespace detail {

using OracleState = std::vector<cplx>;

template <class Rhs, class Observer>
void integrate_fixed(Rhs&& rhs, OracleState& state, double t_end, std::size_t steps, Observer&& observe) {
    boost::numeric::odeint::runge_kutta4<OracleState> stepper;
    const double dt = t_end / static_cast<double>(steps);
    observe(state, 0.0);
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = dt * static_cast<double>(s);
        stepper.do_step(rhs, state, t, dt);
        observe(state, t + dt);
    }
}

inline double block_norm(const OracleState& x, std::size_t from, std::size_t n) {
    double s = 0.0;
    for (std::size_t k = from; k < from + n; ++k) s += std::norm(x[k]);
    return s;
}

inline OracleResult finish_oracle(const ModeGrid& modes, std::vector<cplx> b, double input_mass, double drift) {
    std::vector<double> v(b.size());
    double total = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
        total += std::norm(b[k]);
        v[k] = std::norm(b[k]) / modes.spacing();
    }
    require(total > 1e-14, ErrorKind::EmptySpectrum, "no Raman photon emitted");
    const double mass = trapezoid(modes.frequency_grid().points(), v);
    for (auto& x : v) x /= mass;
    return {SpectrumDensity(modes.frequency_grid(), std::move(v), true), total, input_mass, drift, std::move(b), modes};
}

} // namespace detail

/// Photon scattering |1, ψ⟩ → |2, ω2⟩ with discretized input (Γ1) and output (Γ2)
/// continua. State: a_k (input photon, atom in |1⟩), c_e, b_k (output photon).
/// Frequencies are measured from the bare transitions, so
///   i ȧ_k = Δ_k a_k + g1 c_e,  i ċ_e = g1 Σa + g2 Σb,  i ḃ_k = Δ_k b_k + g2 c_e.
inline OracleResult oracle_photon_scattering(const AtomThreeLevel& atom, const IncidentWavePacket& packet,
                                             const ModeGrid& modes, double t_end) {
    const double g = atom.gamma_total();
    detail::require(t_end >= 50.0 / g + packet.delay(), ErrorKind::InvalidParameter,
                    "photon oracle needs t_end >= 50/Γ + τ");
    detail::require(packet.width() <= 0.25 * modes.half_width(), ErrorKind::InvalidParameter,
                    "packet bandwidth must be well inside the mode window (Δω1 <= W/4)");
    modes.validate_for(g, t_end);

    const std::size_t n = modes.size();
    const double g1 = modes.coupling(atom.gamma1());
    const double g2 = modes.coupling(atom.gamma2());
    std::vector<double> det(n);
    for (std::size_t k = 0; k < n; ++k) det[k] = modes.detuning(k);

    detail::OracleState x(2 * n + 1, cplx{});
    const double amp = std::sqrt(modes.spacing());
    for (std::size_t k = 0; k < n; ++k) x[k] = amp * packet.at_offset(det[k] - packet.carrier());
    const double input = detail::block_norm(x, 0, n);

    auto rhs = [&](const detail::OracleState& s, detail::OracleState& ds, double) {
        const cplx ce = s[n];
        cplx sa{}, sb{};
        for (std::size_t k = 0; k < n; ++k) {
            sa += s[k];
            sb += s[n + 1 + k];
            ds[k] = -I * (det[k] * s[k] + g1 * ce);
            ds[n + 1 + k] = -I * (det[k] * s[n + 1 + k] + g2 * ce);
        }
        ds[n] = -I * (g1 * sa + g2 * sb);
    };
    double drift = 0.0;
    auto observe = [&](const detail::OracleState& s, double) {
        drift = std::max(drift, std::abs(detail::block_norm(s, 0, 2 * n + 1) - input));
    };
    detail::integrate_fixed(rhs, x, t_end, modes.steps_for(g, t_end), observe);
    detail::require(drift <= 1e-5, ErrorKind::NormDrift,
                    "unitarity violated: norm drift " + std::to_string(drift) + " > 1e-5");
    return detail::finish_oracle(modes, std::vector<cplx>(x.begin() + n + 1, x.end()), input, drift);
}

/// Laser-driven N = 0 emission: |1⟩ ↔ |e⟩ driven with Ω (detuning Δ1), |e⟩
/// decays into the discretized Γ2 continuum, and back-decay to |1⟩ is a loss
/// −iΓ1/2. In the drive frame
///   i ċ1 = Δ1 c1 + (Ω/2) c_e,  i ċ_e = (Ω/2) c1 − i(Γ1/2) c_e + g2 Σb,  i ḃ_k = Δ_k b_k + g2 c_e.
/// The loss is checked against Γ1 ∫|c_e|² dt.
inline OracleResult oracle_laser_n0(const AtomThreeLevel& atom, const LaserDrive& drive, const ModeGrid& modes,
                                    double t_end) {
    const double g = atom.gamma_total();
    detail::require(t_end >= 50.0 / g, ErrorKind::InvalidParameter, "laser oracle needs t_end >= 50/Γ");
    modes.validate_for(g, t_end);

    const std::size_t n = modes.size();
    const double g2 = modes.coupling(atom.gamma2());
    const double half_rabi = 0.5 * drive.rabi;
    const double loss = 0.5 * atom.gamma1();
    std::vector<double> det(n);
    for (std::size_t k = 0; k < n; ++k) det[k] = modes.detuning(k);

    detail::OracleState x(n + 2, cplx{});
    x[0] = 1.0;
    auto rhs = [&](const detail::OracleState& s, detail::OracleState& ds, double) {
        const cplx c1 = s[0];
        const cplx ce = s[1];
        cplx sb{};
        for (std::size_t k = 0; k < n; ++k) {
            sb += s[2 + k];
            ds[2 + k] = -I * (det[k] * s[2 + k] + g2 * ce);
        }
        ds[0] = -I * (drive.detuning * c1 + half_rabi * ce);
        ds[1] = -I * (half_rabi * c1 + g2 * sb) - loss * ce;
    };
    // Γ1 ∫|c_e|² dt by the trapezoid rule on the RK4 step points.
    double lost = 0.0, prev_pop = 0.0, prev_t = 0.0, drift = 0.0;
    auto observe = [&](const detail::OracleState& s, double t) {
        const double pop = std::norm(s[1]);
        lost += 0.5 * (t - prev_t) * (pop + prev_pop) * atom.gamma1();
        prev_pop = pop;
        prev_t = t;
        drift = std::max(drift, std::abs(1.0 - detail::block_norm(s, 0, n + 2) - lost));
    };
    detail::integrate_fixed(rhs, x, t_end, modes.steps_for(g, t_end), observe);
    detail::require(drift <= 1e-4, ErrorKind::NormDrift,
                    "loss accounting violated: |1 - norm - Γ1∫|ce|²| = " + std::to_string(drift) + " > 1e-4");
    return detail::finish_oracle(modes, std::vector<cplx>(x.begin() + 2, x.end()), 1.0, drift);
}

/// L1 change between an oracle run and one on a grid with dω halved (same W).
/// The fine grid contains every coarse mode; its density is compared there.
inline double oracle_refinement_l1(const OracleResult& coarse, const OracleResult& fine) {
    const auto& cm = coarse.modes;
    const auto& fm = fine.modes;
    detail::require(std::abs(cm.half_width() - fm.half_width()) <= 1e-12 * cm.half_width() &&
                        std::abs(cm.spacing() - 2.0 * fm.spacing()) <= 1e-12 * cm.spacing(),
                    ErrorKind::GridMismatch, "refinement check needs the same W and dω halved");
    std::vector<double> diff(cm.size());
    for (std::size_t k = 0; k < cm.size(); ++k)
        diff[k] = std::abs(coarse.spectrum.values()[k] - fine.spectrum.values()[2 * k]);
    return trapezoid(coarse.spectrum.grid().points(), diff);
}

/// Raw mode amplitudes as "detuning,re,im" lines.
inline void write_amplitudes(std::ostream& os, const OracleResult& r) {
    os << "detuning_gamma,re_amplitude,im_amplitude\n";
    os.precision(17);
    for (std::size_t k = 0; k < r.output_amplitudes.size(); ++k)
        os << r.modes.detuning(k) << ',' << r.output_amplitudes[k].real() << ',' << r.output_amplitudes[k].imag()
           << '\n';
}

} // namespace raman
