// laser_spectra.hpp — Laser-driven Raman emission: dressed states, AC Stark shift,
// the S_0 spectrum and the amplitudes with N = 0, 1, 2 intermediate photons.
//
// Amplitudes drop the global phase e^{iω1 t}; the drive phase only adds a global
// phase as well, so Ω is taken real and non-negative.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "raman/core.hpp"
#include "raman/measures.hpp"
#include "raman/quadrature.hpp"

namespace raman {

/// Complex eigenfrequencies of the driven {|1⟩, |e⟩} pair.
struct DressedPair {
    cplx plus;
    cplx minus;
};

/// ω± = ½(Δ1 − iΓ/2) ± ½ sqrt(Ω² + (Δ1 + iΓ/2)²), principal branch.
inline DressedPair dressed_frequencies(double width, const LaserDrive& drive) {
    const cplx base = 0.5 * cplx(drive.detuning, -0.5 * width);
    const cplx arg = drive.rabi * drive.rabi + cplx(drive.detuning, 0.5 * width) * cplx(drive.detuning, 0.5 * width);
    const cplx root = 0.5 * std::sqrt(arg);
    return {base + root, base - root};
}
inline DressedPair dressed_frequencies(const AtomThreeLevel& atom, const LaserDrive& drive) {
    return dressed_frequencies(atom.gamma_total(), drive);
}

struct StarkData {
    double delta_s;        // AC Stark shift Δ_S
    double kappa;          // width of the line at Δ1 + Δ_S; the other has Γ − κ
    double effective_rabi; // Ω̃
};

/// Δ_S = −Δ1/2 + sgn(Δ1)/(2√2) sqrt(Ω̃² − Γ²/4 + sqrt((Ω̃² − Γ²/4)² + Δ1²Γ²)),
/// sgn(0) := +1, and κ = ΓΔ_S/(Δ1 + 2Δ_S) with κ = Γ/2 at Δ1 = 0.
inline StarkData stark_shift(double width, const LaserDrive& drive) {
    const double d1 = drive.detuning;
    const double g = width;
    const double om = drive.effective_rabi();
    const double a = om * om - 0.25 * g * g;
    const double sgn = d1 < 0.0 ? -1.0 : 1.0;
    const double ds = -0.5 * d1 + sgn / (2.0 * std::sqrt(2.0)) * std::sqrt(a + std::sqrt(a * a + d1 * d1 * g * g));
    if (d1 == 0.0) {
        detail::require(ds != 0.0, ErrorKind::DegenerateDressing,
                        "overdamped dressing (Δ1 = 0, Ω <= Γ/2): the Stark-shift line widths are not Γ/2");
        return {ds, 0.5 * g, om};
    }
    return {ds, g * ds / (d1 + 2.0 * ds), om};
}
inline StarkData stark_shift(const AtomThreeLevel& atom, const LaserDrive& drive) {
    return stark_shift(atom.gamma_total(), drive);
}

/// Unnormalized S_0 profile (Ω²/4)(Γ/2π)/|(Δ2 − ω+)(Δ2 − ω−)|², which is area
/// normalized on the real line.
inline double s0_density(double width, const DressedPair& w, double rabi, Detuning d2) {
    return 0.25 * rabi * rabi * width / (2.0 * pi) / std::norm((d2 - w.plus) * (d2 - w.minus));
}

/// S_0 written with the Stark shift Δ_S and line width κ.
inline double s0_density_stark(double width, const LaserDrive& drive, const StarkData& s, Detuning d2) {
    const cplx a(d2 - drive.detuning - s.delta_s, 0.5 * s.kappa);
    const cplx b(d2 + s.delta_s, 0.5 * (width - s.kappa));
    return 0.25 * drive.rabi * drive.rabi * width / (2.0 * pi) / std::norm(a * b);
}

/// Default laser grid over ±max(8Γ, |Δ1| + 2Ω + 8Γ); at least 4001 points and
/// at least 10 points per width of the narrower dressed line.
inline FrequencyGrid default_laser_grid(const LaserDrive& drive, double width = 1.0, std::size_t points = 4001) {
    const double half = std::max(8.0 * width, std::abs(drive.detuning) + 2.0 * drive.rabi + 8.0 * width);
    const auto w = dressed_frequencies(width, drive);
    const double narrow = std::max(-2.0 * std::max(w.plus.imag(), w.minus.imag()), 1e-3 * width);
    const auto needed = static_cast<std::size_t>(std::ceil(2.0 * half / (0.1 * narrow))) + 1;
    return FrequencyGrid::uniform(-half, half, std::max(points, needed | 1u));
}

/// Normalized S_0 on the grid. The Stark-shift form is used when the dressing is
/// underdamped; in the overdamped resonant case (Δ1 = 0, Ω ≤ Γ/2) the identical
/// dressed-pair form is used and a warning is appended.
inline SpectrumDensity s0_spectrum(double width, const LaserDrive& drive, const FrequencyGrid& grid,
                                   std::vector<std::string>* warnings = nullptr) {
    detail::require(drive.rabi > 0.0, ErrorKind::EmptySpectrum, "no emission without drive (Ω = 0)");
    std::vector<double> v(grid.size());
    try {
        const auto s = stark_shift(width, drive);
        for (std::size_t i = 0; i < grid.size(); ++i) v[i] = s0_density_stark(width, drive, s, grid[i]);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateDressing) throw;
        if (warnings) warnings->push_back(e.what());
        const auto w = dressed_frequencies(width, drive);
        for (std::size_t i = 0; i < grid.size(); ++i) v[i] = s0_density(width, w, drive.rabi, grid[i]);
    }
    return normalize(SpectrumDensity(grid, std::move(v)));
}
inline SpectrumDensity s0_spectrum(const AtomThreeLevel& atom, const LaserDrive& drive, const FrequencyGrid& grid,
                                   std::vector<std::string>* warnings = nullptr) {
    return s0_spectrum(atom.gamma_total(), drive, grid, warnings);
}

/// Success probabilities N_N = (Γ2/Γ)(Γ1/Γ)^N for N = 0 … n_max.
inline std::vector<double> success_probabilities(const AtomThreeLevel& atom, int n_max) {
    detail::require(n_max >= 0, ErrorKind::InvalidParameter, "n_max must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    const double r = atom.gamma1() / atom.gamma_total();
    double w = atom.gamma2() / atom.gamma_total();
    for (auto& v : out) {
        v = w;
        w *= r;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Multi-photon amplitudes U_{f_N i}(t)

/// Path data shared by the amplitudes: rates, drive and its dressed pair.
struct LaserPath {
    RamanChannel channel;
    LaserDrive drive;
    DressedPair dressed;

    LaserPath(const RamanChannel& ch, const LaserDrive& d)
        : channel(ch), drive(d), dressed(dressed_frequencies(ch.width, d)) {}
    LaserPath(const AtomThreeLevel& atom, const LaserDrive& d) : LaserPath(atom.channel(), d) {}

    double g_emit() const { return std::sqrt(channel.emit_rate / (2.0 * pi)); }
    double g_back() const { return std::sqrt(channel.absorb_rate / (2.0 * pi)); }
};

namespace detail {

inline cplx n0_terms(const DressedPair& w, double t, double d2) {
    const cplx wp = w.plus, wm = w.minus;
    cplx s = std::polar(1.0, -d2 * t) / ((d2 - wp) * (d2 - wm));
    if (t > 0.0) {
        s += std::exp(-I * wp * t) / ((wm - wp) * (d2 - wp));
        s += std::exp(-I * wm * t) / ((wp - wm) * (d2 - wm));
    } else {
        s += 1.0 / ((wm - wp) * (d2 - wp)) + 1.0 / ((wp - wm) * (d2 - wm));
    }
    return s;
}

inline cplx n1_terms(const DressedPair& w, double t, double d2, double q) {
    const cplx wp = w.plus, wm = w.minus;
    const cplx e = d2 + q;
    cplx s = std::polar(1.0, -e.real() * t) / ((e - wp) * (e - wm) * (d2 - wp) * (d2 - wm));
    s += std::exp(-I * wp * t) / ((wp - e) * (wp - wm) * (-q) * (wp - wm - q));
    s += std::exp(-I * wm * t) / ((wm - e) * (wm - wp) * (wm - wp - q) * (-q));
    s += std::exp(-I * (wp + q) * t) / ((wp - d2) * q * (wp - wm + q) * (wp - wm));
    s += std::exp(-I * (wm + q) * t) / ((wm - d2) * (wm - wp + q) * q * (wm - wp));
    return s;
}

inline cplx n2_terms(const DressedPair& w, double t, double d2, double q1, double q2) {
    const cplx wp = w.plus, wm = w.minus;
    const double e2 = d2 + q1 + q2;
    const double e1 = d2 + q2;
    const double q12 = q1 + q2;
    cplx s = std::polar(1.0, -e2 * t) /
             ((e2 - wp) * (e2 - wm) * (e1 - wp) * (e1 - wm) * (d2 - wp) * (d2 - wm));
    s += std::exp(-I * wp * t) / ((wp - e2) * (wp - wm) * (-q1) * (wp - wm - q1) * (-q12) * (wp - wm - q12));
    s += std::exp(-I * wm * t) / ((wm - e2) * (wm - wp) * (wm - wp - q1) * (-q1) * (wm - wp - q12) * (-q12));
    s += std::exp(-I * (wp + q1) * t) /
         ((wp - d2 - q2) * q1 * (wp - wm + q1) * (wp - wm) * (-q2) * (wp - wm - q2));
    s += std::exp(-I * (wm + q1) * t) /
         ((wm - d2 - q2) * (wm - wp + q1) * q1 * (wm - wp) * (wm - wp - q2) * (-q2));
    s += std::exp(-I * (wp + q12) * t) / ((wp - d2) * q12 * q2 * (wp - wm + q12) * (wp - wm + q2) * (wp - wm));
    s += std::exp(-I * (wm + q12) * t) / ((wm - d2) * (wm - wp + q12) * q12 * (wm - wp + q2) * q2 * (wm - wp));
    return s;
}

// Smallest |factor| among the real-axis singular manifolds of the finite-t sums.
inline double singular_distance(const DressedPair& w, std::initializer_list<double> qs) {
    const cplx split = w.plus - w.minus;
    double m = std::numeric_limits<double>::infinity();
    for (double q : qs) {
        m = std::min(m, std::abs(q));
        m = std::min(m, std::abs(split - q));
        m = std::min(m, std::abs(split + q));
    }
    m = std::min(m, std::abs(split));
    return m;
}

// Symmetric offsets ±ε, ±2ε along `dir` combined by one Richardson step.
template <class F>
cplx richardson_offset(F&& f, double eps) {
    const cplx a1 = 0.5 * (f(eps) + f(-eps));
    const cplx a2 = 0.5 * (f(2.0 * eps) + f(-2.0 * eps));
    return (4.0 * a1 - a2) / 3.0;
}

inline constexpr double singular_guard = 1e-6;

} // namespace detail

/// U_{f0 i}(t): three-term sum; only the first term survives t → ∞.
inline ComplexAmplitude amplitude_N0(double t, const LaserPath& path, Detuning d2) {
    detail::require(t >= 0.0, ErrorKind::InvalidParameter, "t must be >= 0");
    return 0.5 * path.drive.rabi * path.g_emit() * detail::n0_terms(path.dressed, t, d2);
}

/// U_{f1 i}(t) with intermediate-photon detuning d1p = Δ1′ (relative to the laser).
inline ComplexAmplitude amplitude_N1(double t, const LaserPath& path, Detuning d2, Detuning d1p) {
    detail::require(t >= 0.0, ErrorKind::InvalidParameter, "t must be >= 0");
    const double pref = 0.25 * path.drive.rabi * path.drive.rabi * path.g_back() * path.g_emit();
    const double eps = detail::singular_guard * path.channel.width;
    const double dist = detail::singular_distance(path.dressed, {d1p});
    if (dist < eps)
        return pref * detail::richardson_offset(
                          [&](double h) { return detail::n1_terms(path.dressed, t, d2, d1p + h); }, eps);
    return pref * detail::n1_terms(path.dressed, t, d2, d1p);
}

/// U_{f2 i}(t) with intermediate detunings d1p = Δ1′ and d1pp = Δ1″.
inline ComplexAmplitude amplitude_N2(double t, const LaserPath& path, Detuning d2, Detuning d1p, Detuning d1pp) {
    detail::require(t >= 0.0, ErrorKind::InvalidParameter, "t must be >= 0");
    const double om = path.drive.rabi;
    const double pref = 0.125 * om * om * om * path.g_back() * path.g_back() * path.g_emit();
    const double eps = detail::singular_guard * path.channel.width;
    const double dist = detail::singular_distance(path.dressed, {d1p, d1pp, d1p + d1pp});
    if (dist < 4.0 * eps) {
        // Direction transverse to every manifold q1 = c, q2 = c, q1 + q2 = c.
        return pref * detail::richardson_offset(
                          [&](double h) {
                              return detail::n2_terms(path.dressed, t, d2, d1p + 2.3 * h, d1pp + 1.7 * h);
                          },
                          eps);
    }
    return pref * detail::n2_terms(path.dressed, t, d2, d1p, d1pp);
}

/// t → ∞ amplitude with N intermediate photons at detunings q (N = q.size() ≤ 2):
/// (Ω/2)^{N+1} g_back^N g_emit / Π_k D(Δ2 + s_k), D(z) = (z − ω+)(z − ω−),
/// s = {0, q_N, q_{N−1} + q_N, …}.
inline ComplexAmplitude asymptotic_amplitude(const LaserPath& path, Detuning d2, std::initializer_list<double> q) {
    detail::require(q.size() <= 2, ErrorKind::InvalidParameter, "only N <= 2 intermediate photons are implemented");
    const auto& w = path.dressed;
    auto D = [&](double z) { return (z - w.plus) * (z - w.minus); };
    const double half_rabi = 0.5 * path.drive.rabi;
    cplx amp = half_rabi * path.g_emit() / D(d2);
    double shift = 0.0;
    for (auto it = std::rbegin(q); it != std::rend(q); ++it) {
        shift += *it;
        amp *= half_rabi * path.g_back() / D(d2 + shift);
    }
    return amp;
}

/// Real parts of ω± shifted by −Δ2: where the intermediate integrand peaks.
inline std::vector<double> intermediate_breakpoints(const std::vector<DressedPair>& pairs, double d2) {
    std::vector<double> b{0.0};
    for (const auto& w : pairs) {
        b.push_back(w.plus.real() - d2);
        b.push_back(w.minus.real() - d2);
    }
    return b;
}

/// Intermediate-frequency integration window Δ1′, Δ1″ ∈ [−80Γ, 80Γ].
inline constexpr double intermediate_window = 80.0;

/// Unnormalized partial density P_N(Δ2) = ∫ |amp(Δ2, q)|² d^N q for N ∈ {0,1,2},
/// where `amp(d2, {q...})` is any asymptotic amplitude (single path or a
/// coherent path sum).
template <class Amp>
double partial_density(int n, Amp&& amp, double d2, const std::vector<double>& breaks_at_zero,
                       const QuadratureSpec& quad = {}) {
    detail::require(n >= 0 && n <= 2, ErrorKind::InvalidParameter, "N must be 0, 1 or 2");
    const double W = intermediate_window;
    auto breaks = [&](double shift) {
        std::vector<double> b;
        for (double x : breaks_at_zero) b.push_back(x - shift);
        b.push_back(0.0);
        return b;
    };
    if (n == 0) return std::norm(amp(d2, {}));
    auto spec = quad.with_window(-W, W);
    if (n == 1) {
        auto f = [&](double q) { return std::norm(amp(d2, {q})); };
        return integrate(f, spec, breaks(d2));
    }
    // N = 2: q″ couples to Δ2 alone, q′ to Δ2 + q″.
    auto outer = [&](double q2) {
        auto inner = [&](double q1) { return std::norm(amp(d2, {q1, q2})); };
        return integrate(inner, spec, breaks(d2 + q2));
    };
    auto outer_spec = spec;
    outer_spec.abs_tol *= 10.0;
    outer_spec.rel_tol = std::max(outer_spec.rel_tol, 1e-7);
    return integrate(outer, outer_spec, breaks(d2));
}

/// Partial spectrum S_N of a single Λ path on the grid, normalized on the grid.
inline SpectrumDensity partial_spectrum(int n, const AtomThreeLevel& atom, const LaserDrive& drive,
                                        const FrequencyGrid& grid, const QuadratureSpec& quad = {}) {
    const LaserPath path(atom, drive);
    auto amp = [&](double d2, std::initializer_list<double> q) { return asymptotic_amplitude(path, d2, q); };
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto b = intermediate_breakpoints({path.dressed}, 0.0);
        v[i] = partial_density(n, amp, grid[i], b, quad);
    }
    return normalize(SpectrumDensity(grid, std::move(v)));
}

/// N_N = ∫dΔ2 P_N(Δ2) over the whole axis by nested quadrature.
inline double partial_success_probability(int n, const AtomThreeLevel& atom, const LaserDrive& drive,
                                          const QuadratureSpec& quad = {}) {
    const LaserPath path(atom, drive);
    auto amp = [&](double d2, std::initializer_list<double> q) { return asymptotic_amplitude(path, d2, q); };
    const auto b = intermediate_breakpoints({path.dressed}, 0.0);
    auto inner_quad = quad.with_tolerances(quad.abs_tol * 0.01, quad.rel_tol);
    auto f = [&](double d2) { return partial_density(n, amp, d2, b, inner_quad); };
    auto spec = quad.with_window(-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
    spec.rel_tol = std::max(spec.rel_tol, 1e-7);
    return integrate(f, spec, b);
}

} // namespace raman
