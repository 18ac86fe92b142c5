// core.hpp — Domain types, unit conventions and validation for the Λ-atom model
//
// Units: every rate and detuning is measured in units of the total excited-state
// width Γ; every time in units of 1/Γ. Frequencies are always detunings from the
// respective atomic transition, integrals run over the whole real detuning axis.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace raman {

using cplx = std::complex<double>;

/// Complex transition amplitude (kernel values, beat sums).
using ComplexAmplitude = cplx;

/// Real frequency offset from the relevant atomic transition, units of Γ.
using Detuning = double;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorKind {
    NonPositiveDecay,
    InvalidParameter,
    PoleOnGrid,
    QuadratureFailure,
    DegenerateDressing,
    EmptySpectrum,
    UnderResolved,
    GridMismatch,
    NormDrift,
    RecurrenceHorizon,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::NonPositiveDecay: return "NonPositiveDecay";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::PoleOnGrid: return "PoleOnGrid";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::DegenerateDressing: return "DegenerateDressing";
    case ErrorKind::EmptySpectrum: return "EmptySpectrum";
    case ErrorKind::UnderResolved: return "UnderResolved";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::NormDrift: return "NormDrift";
    case ErrorKind::RecurrenceHorizon: return "RecurrenceHorizon";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

namespace detail {
inline void require(bool ok, ErrorKind kind, const std::string& what) {
    if (!ok) throw Error(kind, what);
}
inline bool finite(double x) { return std::isfinite(x); }
} // namespace detail

/// Rates entering one absorb-then-emit Raman path: the absorption leg, the
/// emission leg and the total width of the shared excited state.
struct RamanChannel {
    double absorb_rate{0.5};
    double emit_rate{0.5};
    double width{1.0};
};

/// Λ-system |1⟩ ↔ |e⟩ ↔ |2⟩ characterized by its two decay rates.
class AtomThreeLevel {
public:
    AtomThreeLevel(double gamma1, double gamma2) : gamma1_(gamma1), gamma2_(gamma2) {
        detail::require(detail::finite(gamma1) && detail::finite(gamma2),
                        ErrorKind::InvalidParameter, "decay rates must be finite");
        detail::require(gamma1 >= 0.0, ErrorKind::NonPositiveDecay, "gamma1 must be >= 0");
        detail::require(gamma2 > 0.0, ErrorKind::NonPositiveDecay, "gamma2 must be > 0");
    }

    double gamma1() const noexcept { return gamma1_; }
    double gamma2() const noexcept { return gamma2_; }
    double gamma_total() const noexcept { return gamma1_ + gamma2_; }

    /// Continuum coupling sqrt(Γ_j / 2π) of channel j ∈ {1, 2}.
    double coupling(int channel) const {
        detail::require(channel == 1 || channel == 2, ErrorKind::InvalidParameter,
                        "channel must be 1 or 2");
        return std::sqrt((channel == 1 ? gamma1_ : gamma2_) / (2.0 * pi));
    }

    RamanChannel channel() const noexcept { return {gamma1_, gamma2_, gamma_total()}; }

private:
    double gamma1_;
    double gamma2_;
};

inline AtomThreeLevel validate_atom(double gamma1, double gamma2) { return {gamma1, gamma2}; }

enum class PacketShape { Rectangular, Gaussian, Lorentzian };

inline const char* to_string(PacketShape s) {
    switch (s) {
    case PacketShape::Rectangular: return "rectangular";
    case PacketShape::Gaussian: return "gaussian";
    case PacketShape::Lorentzian: return "lorentzian";
    }
    return "unknown";
}

/// sin(x t) / (π x), continuous at x = 0. Tends to δ(x) as t → ∞.
inline double diffraction_function(double t, double x) {
    detail::require(t > 0.0, ErrorKind::InvalidParameter, "diffraction function needs t > 0");
    const double y = x * t;
    if (std::abs(y) < 1e-4) return t / pi * (1.0 - y * y / 6.0);
    return std::sin(y) / (pi * x);
}

/// Single-photon input state, described by its spectral amplitude ψ(ω).
/// Rectangular packets are parametrized by their duration T, the other shapes by
/// their linewidth Δω1. The delay τ places the packet front at distance cτ.
class IncidentWavePacket {
public:
    static IncidentWavePacket rectangular(Detuning carrier, double duration, double delay) {
        detail::require(duration > 0.0 && detail::finite(duration), ErrorKind::InvalidParameter,
                        "rectangular packet needs duration T > 0");
        return {PacketShape::Rectangular, carrier, 2.0 * std::sqrt(3.0) / duration, delay, duration};
    }
    static IncidentWavePacket gaussian(Detuning carrier, double width, double delay) {
        check_width(width);
        return {PacketShape::Gaussian, carrier, width, delay, 0.0};
    }
    static IncidentWavePacket lorentzian(Detuning carrier, double width, double delay) {
        check_width(width);
        return {PacketShape::Lorentzian, carrier, width, delay, 0.0};
    }
    /// Packet of the given shape with spectral linewidth Δω1; rectangular packets
    /// take T = 2√3/Δω1.
    static IncidentWavePacket with_width(PacketShape shape, Detuning carrier, double width,
                                         double delay) {
        check_width(width);
        switch (shape) {
        case PacketShape::Rectangular: return rectangular(carrier, 2.0 * std::sqrt(3.0) / width, delay);
        case PacketShape::Gaussian: return gaussian(carrier, width, delay);
        case PacketShape::Lorentzian: return lorentzian(carrier, width, delay);
        }
        throw Error(ErrorKind::InvalidParameter, "unknown packet shape");
    }

    PacketShape shape() const noexcept { return shape_; }
    Detuning carrier() const noexcept { return carrier_; }
    double width() const noexcept { return width_; }
    double delay() const noexcept { return delay_; }
    /// Pulse duration T; zero for non-rectangular packets.
    double duration() const noexcept { return duration_; }

    IncidentWavePacket with_carrier(Detuning carrier) const {
        IncidentWavePacket p = *this;
        p.carrier_ = carrier;
        return p;
    }

    /// ψ as a function of the offset x = ω − ω1 from the carrier, including the
    /// delay phase e^{ixτ} (and e^{ixT/2} for the rectangular pulse).
    cplx at_offset(double x) const {
        switch (shape_) {
        case PacketShape::Rectangular: {
            const double mag = std::sqrt(2.0 * pi / duration_) * diffraction_function(duration_ / 2.0, x);
            return mag * std::polar(1.0, x * (delay_ + duration_ / 2.0));
        }
        case PacketShape::Gaussian: {
            const double norm = std::pow(2.0 / (pi * width_ * width_), 0.25);
            return norm * std::exp(-x * x / (width_ * width_)) * std::polar(1.0, x * delay_);
        }
        case PacketShape::Lorentzian:
            return std::sqrt(width_ / (2.0 * pi)) / cplx(x, width_ / 2.0) * std::polar(1.0, x * delay_);
        }
        return 0.0;
    }

    /// Incident power spectrum |ψ|² at offset x, evaluated without the phase.
    double power_at_offset(double x) const {
        switch (shape_) {
        case PacketShape::Rectangular: {
            const double d = diffraction_function(duration_ / 2.0, x);
            return 2.0 * pi / duration_ * d * d;
        }
        case PacketShape::Gaussian:
            return std::sqrt(2.0 / (pi * width_ * width_)) * std::exp(-2.0 * x * x / (width_ * width_));
        case PacketShape::Lorentzian:
            return (width_ / (2.0 * pi)) / (x * x + width_ * width_ / 4.0);
        }
        return 0.0;
    }

private:
    IncidentWavePacket(PacketShape s, Detuning c, double w, double tau, double T)
        : shape_(s), carrier_(c), width_(w), delay_(tau), duration_(T) {
        detail::require(detail::finite(c), ErrorKind::InvalidParameter, "carrier detuning must be finite");
        detail::require(tau >= 0.0 && detail::finite(tau), ErrorKind::InvalidParameter,
                        "delay must be finite and >= 0");
    }
    static void check_width(double w) {
        detail::require(w > 0.0 && detail::finite(w), ErrorKind::InvalidParameter,
                        "packet linewidth must be > 0");
    }

    PacketShape shape_;
    Detuning carrier_;
    double width_;
    double delay_;
    double duration_;
};

/// ψ(ω) at detuning omega (same frame as the carrier detuning).
inline ComplexAmplitude wavepacket_amplitude(const IncidentWavePacket& p, Detuning omega) {
    return p.at_offset(omega - p.carrier());
}

/// Classical monochromatic drive of |1⟩ ↔ |e⟩.
struct LaserDrive {
    double rabi{1.0};
    Detuning detuning{0.0};

    LaserDrive() = default;
    LaserDrive(double rabi_, Detuning detuning_) : rabi(rabi_), detuning(detuning_) {
        detail::require(rabi >= 0.0 && detail::finite(rabi), ErrorKind::InvalidParameter,
                        "Rabi frequency must be real and >= 0");
        detail::require(detail::finite(detuning), ErrorKind::InvalidParameter,
                        "laser detuning must be finite");
    }
    /// Ω̃ = sqrt(Ω² + Δ1²)
    double effective_rabi() const { return std::hypot(rabi, detuning); }
};

/// Initial superposition c1|g1⟩ + c2|g2⟩ of two lower states split by δ.
class SuperpositionInit {
public:
    SuperpositionInit(cplx c1, cplx c2, double splitting) : c1_(c1), c2_(c2), splitting_(splitting) {
        detail::require(std::abs(std::norm(c1) + std::norm(c2) - 1.0) <= 1e-12,
                        ErrorKind::InvalidParameter, "|c1|^2 + |c2|^2 must equal 1");
        detail::require(splitting > 0.0 && detail::finite(splitting), ErrorKind::InvalidParameter,
                        "splitting must be > 0");
    }
    /// Population weight |c1|² and relative phase arg c1 − arg c2.
    static SuperpositionInit from_phase(double weight1, double phase, double splitting) {
        detail::require(weight1 >= 0.0 && weight1 <= 1.0, ErrorKind::InvalidParameter,
                        "weight must lie in [0, 1]");
        return {std::polar(std::sqrt(weight1), phase), cplx(std::sqrt(1.0 - weight1), 0.0), splitting};
    }

    cplx c1() const noexcept { return c1_; }
    cplx c2() const noexcept { return c2_; }
    double splitting() const noexcept { return splitting_; }

private:
    cplx c1_;
    cplx c2_;
    double splitting_;
};

/// Strictly increasing detuning grid.
class FrequencyGrid {
public:
    explicit FrequencyGrid(std::vector<Detuning> points, std::string description = {})
        : points_(std::move(points)), description_(std::move(description)) {
        detail::require(points_.size() >= 3, ErrorKind::InvalidParameter, "grid needs at least 3 points");
        for (std::size_t i = 0; i < points_.size(); ++i) {
            detail::require(detail::finite(points_[i]), ErrorKind::InvalidParameter, "grid point not finite");
            if (i > 0)
                detail::require(points_[i] > points_[i - 1], ErrorKind::InvalidParameter,
                                "grid must be strictly increasing");
        }
    }

    static FrequencyGrid uniform(double lo, double hi, std::size_t n) {
        detail::require(n >= 3 && hi > lo, ErrorKind::InvalidParameter, "bad uniform grid");
        std::vector<Detuning> pts(n);
        const double h = (hi - lo) / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) pts[i] = lo + h * static_cast<double>(i);
        pts.back() = hi;
        return FrequencyGrid(std::move(pts), "uniform [" + std::to_string(lo) + ", " +
                                                 std::to_string(hi) + "] n=" + std::to_string(n));
    }

    const std::vector<Detuning>& points() const noexcept { return points_; }
    const std::string& description() const noexcept { return description_; }
    std::size_t size() const noexcept { return points_.size(); }
    Detuning operator[](std::size_t i) const { return points_[i]; }
    Detuning front() const { return points_.front(); }
    Detuning back() const { return points_.back(); }

private:
    std::vector<Detuning> points_;
    std::string description_;
};

/// Trapezoidal integral of samples over a grid.
inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

/// Sampled power spectral density over a detuning grid (density per unit Γ).
/// The normalized flag is checked against the grid integral when set.
class SpectrumDensity {
public:
    SpectrumDensity(FrequencyGrid grid, std::vector<double> values, bool normalized = false)
        : grid_(std::move(grid)), values_(std::move(values)), normalized_(normalized) {
        detail::require(values_.size() == grid_.size(), ErrorKind::GridMismatch,
                        "spectrum values do not match grid size");
        for (double v : values_)
            detail::require(v >= 0.0 && detail::finite(v), ErrorKind::InvalidParameter,
                            "spectral density must be finite and >= 0");
        if (normalized_) {
            const double m = mass();
            detail::require(std::abs(m - 1.0) <= 1e-6, ErrorKind::InvalidParameter,
                            "spectrum flagged normalized but integrates to " + std::to_string(m));
        }
    }

    const FrequencyGrid& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    bool normalized() const noexcept { return normalized_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Trapezoidal integral over the grid.
    double mass() const { return trapezoid(grid_.points(), values_); }

private:
    FrequencyGrid grid_;
    std::vector<double> values_;
    bool normalized_;
};

} // namespace raman
