// measures.hpp — Süßmann linewidth, normalization and peak finding on gridded spectra

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "raman/core.hpp"

namespace raman {

namespace detail {

// Trapezoid on the full grid plus one Richardson step against the grid made of
// every other point. Falls back to the plain trapezoid when the coarse grid
// would not cover the same interval.
inline double richardson_trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    const double fine = trapezoid(x, y);
    if (x.size() < 5 || (x.size() - 1) % 2 != 0) return fine;
    double coarse = 0.0;
    for (std::size_t i = 2; i < x.size(); i += 2) coarse += 0.5 * (x[i] - x[i - 2]) * (y[i] + y[i - 2]);
    return (4.0 * fine - coarse) / 3.0;
}

} // namespace detail

/// Grid mass used by the width measures (trapezoid + Richardson step).
inline double spectral_mass(const SpectrumDensity& s) {
    return detail::richardson_trapezoid(s.grid().points(), s.values());
}

/// Effective linewidth Δω2 = (∫S)² / (π ∫S²) from the Süßmann measure.
inline double suessmann_linewidth(const SpectrumDensity& s) {
    const auto& x = s.grid().points();
    const auto& y = s.values();
    std::vector<double> sq(y.size());
    std::transform(y.begin(), y.end(), sq.begin(), [](double v) { return v * v; });
    const double m = detail::richardson_trapezoid(x, y);
    detail::require(m >= 1e-12, ErrorKind::EmptySpectrum, "spectrum carries no mass");
    const double m2 = detail::richardson_trapezoid(x, sq);
    return m * m / (pi * m2);
}

/// Rescale to unit trapezoidal area. Raises UnderResolved when a single grid
/// panel carries more than half of the mass, i.e. the line is narrower than the
/// grid can represent.
inline SpectrumDensity normalize(const SpectrumDensity& s) {
    const auto& x = s.grid().points();
    const auto& y = s.values();
    const double m = s.mass();
    detail::require(m >= 1e-12, ErrorKind::EmptySpectrum, "cannot normalize a spectrum without mass");
    double biggest = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        biggest = std::max(biggest, 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]));
    detail::require(biggest <= 0.5 * m, ErrorKind::UnderResolved,
                    "one grid panel holds more than half the spectral mass; refine the grid");
    std::vector<double> v(y.size());
    std::transform(y.begin(), y.end(), v.begin(), [m](double a) { return a / m; });
    return SpectrumDensity(s.grid(), std::move(v), true);
}

/// L1 distance ∫|a − b| of two spectra sampled on the same grid.
inline double l1_distance(const SpectrumDensity& a, const SpectrumDensity& b) {
    detail::require(a.grid().points() == b.grid().points(), ErrorKind::GridMismatch,
                    "L1 distance needs a common grid");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(a.values()[i] - b.values()[i]);
    return trapezoid(a.grid().points(), d);
}

struct Peak {
    double position;
    double height;
    double fwhm;
};

/// Interior local maxima, refined by a parabola through the three samples
/// around each maximum. FWHM from linear interpolation of the half-height
/// crossings; a side that never drops below half height is measured to the grid
/// edge.
inline std::vector<Peak> find_peaks(const SpectrumDensity& s) {
    const auto& x = s.grid().points();
    const auto& y = s.values();
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
        // Plateau: only report the left edge of a flat top.
        double pos = x[i];
        double height = y[i];
        const double h1 = x[i] - x[i - 1];
        const double h2 = x[i + 1] - x[i];
        const double d1 = (y[i] - y[i - 1]) / h1;
        const double d2 = (y[i + 1] - y[i]) / h2;
        const double curv = (d2 - d1) / (0.5 * (h1 + h2));
        if (curv < 0.0) {
            // Vertex of the interpolating parabola.
            const double slope_mid = d1 + curv * 0.5 * h1; // slope at x[i]
            const double shift = -slope_mid / curv;
            if (std::abs(shift) <= std::max(h1, h2)) {
                pos = x[i] + shift;
                height = y[i] + slope_mid * shift + 0.5 * curv * shift * shift;
            }
        }
        const double half = 0.5 * height;
        std::size_t l = i;
        while (l > 0 && y[l] > half) --l;
        double left = x[l];
        if (y[l] <= half && l < i) left = x[l] + (half - y[l]) * (x[l + 1] - x[l]) / (y[l + 1] - y[l]);
        std::size_t r = i;
        while (r + 1 < y.size() && y[r] > half) ++r;
        double right = x[r];
        if (y[r] <= half && r > i) right = x[r] - (half - y[r]) * (x[r] - x[r - 1]) / (y[r - 1] - y[r]);
        peaks.push_back({pos, height, right - left});
    }
    return peaks;
}

} // namespace raman
