// quadrature.hpp — Globally adaptive Gauss–Kronrod (10/21) integration
//
// Works for real and complex integrands, finite or infinite limits and optional
// interior breakpoints. Infinite tails are mapped onto (0, 1] with
// x = a ± (1 − s)/s before subdivision.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <sstream>
#include <type_traits>
#include <vector>

#include "raman/core.hpp"

namespace raman {

struct QuadratureSpec {
    double abs_tol{1e-10};
    double rel_tol{1e-8};
    int max_subdivisions{2000};
    double lo{-std::numeric_limits<double>::infinity()};
    double hi{std::numeric_limits<double>::infinity()};

    QuadratureSpec with_window(double a, double b) const {
        QuadratureSpec s = *this;
        s.lo = a;
        s.hi = b;
        return s;
    }
    QuadratureSpec with_tolerances(double abs, double rel) const {
        QuadratureSpec s = *this;
        s.abs_tol = abs;
        s.rel_tol = rel;
        return s;
    }

    void validate() const {
        detail::require(abs_tol > 0.0 && rel_tol > 0.0, ErrorKind::InvalidParameter,
                        "quadrature tolerances must be > 0");
        detail::require(max_subdivisions > 0, ErrorKind::InvalidParameter,
                        "max_subdivisions must be > 0");
        detail::require(!std::isnan(lo) && !std::isnan(hi) && lo < hi, ErrorKind::InvalidParameter,
                        "quadrature window must be ordered");
    }
};

/// Strict profile used by `--tolerance-profile strict`.
inline QuadratureSpec strict_quadrature() { return {1e-12, 1e-10, 4000}; }

template <class T>
struct QuadratureResult {
    T value{};
    double error{0.0};
    int subdivisions{0};
    bool converged{false};
};

namespace detail {

inline constexpr std::array<double, 11> gk21_nodes{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> gk21_kronrod{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478232, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> gk21_gauss{
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Panel {
    double a, b;
    int piece;
    T value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// How a panel's parameter s maps to x.
struct Piece {
    enum Kind { Finite, UpperTail, LowerTail } kind;
    double anchor;
};

template <class T, class F>
Panel<T> gk21(F&& f, const Piece& piece, double a, double b, int idx) {
    auto eval = [&](double s) -> T {
        switch (piece.kind) {
        case Piece::Finite: return f(s);
        case Piece::UpperTail: {
            const double x = piece.anchor + (1.0 - s) / s;
            return f(x) * (1.0 / (s * s));
        }
        case Piece::LowerTail: {
            const double x = piece.anchor - (1.0 - s) / s;
            return f(x) * (1.0 / (s * s));
        }
        }
        return T{};
    };

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<T, 21> fv;
    fv[10] = eval(center);
    for (int j = 0; j < 10; ++j) {
        const double dx = half * gk21_nodes[j];
        fv[j] = eval(center - dx);
        fv[20 - j] = eval(center + dx);
    }
    T kron = gk21_kronrod[10] * fv[10];
    T gauss{};
    double abs_sum = gk21_kronrod[10] * std::abs(fv[10]);
    for (int j = 0; j < 10; ++j) {
        const T pair = fv[j] + fv[20 - j];
        kron += gk21_kronrod[j] * pair;
        abs_sum += gk21_kronrod[j] * (std::abs(fv[j]) + std::abs(fv[20 - j]));
        if (j % 2 == 1) gauss += gk21_gauss[j / 2] * pair;
    }
    const T mean = kron * 0.5;
    double asc = gk21_kronrod[10] * std::abs(fv[10] - mean);
    for (int j = 0; j < 10; ++j)
        asc += gk21_kronrod[j] * (std::abs(fv[j] - mean) + std::abs(fv[20 - j] - mean));

    const double scale = std::abs(half);
    double err = std::abs((kron - gauss) * half);
    asc *= scale;
    abs_sum *= scale;
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * abs_sum, err);
    return {a, b, idx, kron * half, err};
}

} // namespace detail

/// Adaptive integration of f over [spec.lo, spec.hi] with optional interior
/// breakpoints (points outside the window are ignored). Never throws on
/// non-convergence; inspect `converged`.
template <class F>
auto try_integrate(F&& f, const QuadratureSpec& spec, std::vector<double> breakpoints = {})
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>> {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    using detail::Piece;
    spec.validate();

    std::vector<double> cuts;
    for (double b : breakpoints)
        if (std::isfinite(b) && b > spec.lo && b < spec.hi) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const bool lo_inf = std::isinf(spec.lo);
    const bool hi_inf = std::isinf(spec.hi);
    if (lo_inf && hi_inf && cuts.empty()) cuts.push_back(0.0);

    std::vector<double> edges;
    if (!lo_inf) edges.push_back(spec.lo);
    edges.insert(edges.end(), cuts.begin(), cuts.end());
    if (!hi_inf) edges.push_back(spec.hi);

    std::vector<Piece> pieces;
    std::vector<std::pair<double, double>> spans;
    if (lo_inf) {
        pieces.push_back({Piece::LowerTail, edges.front()});
        spans.emplace_back(0.0, 1.0);
    }
    for (std::size_t i = 1; i < edges.size(); ++i) {
        pieces.push_back({Piece::Finite, 0.0});
        spans.emplace_back(edges[i - 1], edges[i]);
    }
    if (hi_inf) {
        pieces.push_back({Piece::UpperTail, edges.back()});
        spans.emplace_back(0.0, 1.0);
    }

    std::priority_queue<detail::Panel<T>> heap;
    std::vector<detail::Panel<T>> frozen;
    T total{};
    double total_err = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        auto p = detail::gk21<T>(f, pieces[i], spans[i].first, spans[i].second, static_cast<int>(i));
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    QuadratureResult<T> out;
    int subdivisions = static_cast<int>(pieces.size());
    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (total_err > tolerance() && subdivisions < spec.max_subdivisions && !heap.empty()) {
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-15 * std::max(1.0, std::abs(mid))) {
            frozen.push_back(worst);
            continue;
        }
        auto left = detail::gk21<T>(f, pieces[worst.piece], worst.a, mid, worst.piece);
        auto right = detail::gk21<T>(f, pieces[worst.piece], mid, worst.b, worst.piece);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum to avoid drift from incremental updates.
    T sum{};
    double err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    for (const auto& p : frozen) {
        sum += p.value;
        err += p.error;
    }
    out.value = sum;
    out.error = err;
    out.subdivisions = subdivisions;
    out.converged = err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(sum));
    return out;
}

/// As try_integrate, but raises QuadratureFailure with the achieved error when
/// the tolerance is not met within the subdivision budget.
template <class F>
auto integrate(F&& f, const QuadratureSpec& spec, std::vector<double> breakpoints = {}) {
    auto r = try_integrate(std::forward<F>(f), spec, std::move(breakpoints));
    if (!r.converged) {
        std::ostringstream msg;
        msg << "achieved error " << r.error << " after " << r.subdivisions
            << " subdivisions (abs_tol " << spec.abs_tol << ", rel_tol " << spec.rel_tol << ")";
        throw Error(ErrorKind::QuadratureFailure, msg.str());
    }
    return r.value;
}


namespace detail {

// n-point Gauss–Legendre rule plus Legendre polynomial values at its nodes.
template <int N>
struct LegendreRule {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};
    std::array<std::array<double, N>, N> poly{}; // poly[k][j] = P_k(nodes[j])

    LegendreRule() {
        for (int i = 0; i < N; ++i) {
            double x = std::cos(pi * (i + 0.75) / (N + 0.5));
            double dp = 1.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= N; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        for (int j = 0; j < N; ++j) {
            poly[0][j] = 1.0;
            if (N > 1) poly[1][j] = nodes[j];
            for (int k = 2; k < N; ++k)
                poly[k][j] = ((2.0 * k - 1.0) * nodes[j] * poly[k - 1][j] - (k - 1.0) * poly[k - 2][j]) / k;
        }
    }
};

inline constexpr int filon_order = 16;

inline const LegendreRule<filon_order>& filon_rule() {
    static const LegendreRule<filon_order> rule;
    return rule;
}

// Spherical Bessel functions j_0 … j_{N−1} at x ≥ 0.
template <int N>
std::array<double, N> spherical_bessel(double x) {
    std::array<double, N> j{};
    if (x < 1.0) {
        double lead = 1.0; // x^k / (2k+1)!!
        for (int k = 0; k < N; ++k) {
            if (k > 0) lead *= x / (2.0 * k + 1.0);
            double term = 1.0, sum = 1.0;
            for (int m = 1; m < 30; ++m) {
                term *= -0.5 * x * x / (m * (2.0 * k + 2.0 * m + 1.0));
                sum += term;
                if (std::abs(term) < 1e-17 * std::abs(sum)) break;
            }
            j[k] = lead * sum;
        }
        return j;
    }
    const double s = std::sin(x), c = std::cos(x);
    if (x > N) {
        j[0] = s / x;
        if (N > 1) j[1] = s / (x * x) - c / x;
        for (int k = 1; k + 1 < N; ++k) j[k + 1] = (2.0 * k + 1.0) / x * j[k] - j[k - 1];
        return j;
    }
    // Miller's downward recurrence, normalized against the larger of j_0, j_1.
    const int start = N + 20 + static_cast<int>(x);
    double jp1 = 0.0, jk = 1e-30;
    for (int k = start; k > 0; --k) {
        const double jm1 = (2.0 * k + 1.0) / x * jk - jp1;
        jp1 = jk;
        jk = jm1;
        if (k - 1 < N) j[k - 1] = jk;
        if (std::abs(jk) > 1e250) {
            jk *= 1e-250;
            jp1 *= 1e-250;
            for (int m = k - 1; m < N; ++m)
                if (m >= 0) j[m] *= 1e-250;
        }
    }
    const double j0 = s / x;
    const double j1 = s / (x * x) - c / x;
    const double scale = std::abs(j0) > std::abs(j1) ? j0 / j[0] : j1 / j[1];
    for (auto& v : j) v *= scale;
    return j;
}

struct OscPanel {
    double a, b;
    cplx value;
    double error;
    bool operator<(const OscPanel& o) const { return error < o.error; }
};

// ∫_a^b h(x) e^{iβx} dx with h replaced by its Legendre interpolant; exact
// moments ∫P_k(s)e^{iΩs}ds = 2 i^k j_k(Ω).
template <class H>
OscPanel filon_panel(H& h, double beta, double a, double b) {
    const auto& rule = filon_rule();
    constexpr int n = filon_order;
    const double m = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    std::array<cplx, n> hv;
    for (int j = 0; j < n; ++j) hv[j] = h(m + r * rule.nodes[j]);

    const double omega = beta * r;
    const double aw = std::abs(omega);
    cplx sum{};
    std::array<double, n> coeff_abs{};
    const auto bessel = spherical_bessel<n>(aw);
    cplx ik{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        cplx ak{};
        for (int j = 0; j < n; ++j) ak += rule.weights[j] * rule.poly[k][j] * hv[j];
        ak *= (2.0 * k + 1.0) / 2.0;
        coeff_abs[k] = std::abs(ak);
        double jk = bessel[k];
        if (omega < 0.0 && (k % 2 == 1)) jk = -jk;
        sum += ak * (2.0 * ik * jk);
        ik *= I;
    }
    const cplx value = r * std::polar(1.0, beta * m) * sum;
    const double tail = coeff_abs[n - 1] + coeff_abs[n - 2] + 0.5 * coeff_abs[n - 3];
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double scale = 0.0;
    for (double c : coeff_abs) scale = std::max(scale, c);
    const double err = 2.0 * std::abs(r) * std::max(tail, 100.0 * eps * scale);
    return {a, b, value, err};
}

template <class H>
QuadratureResult<cplx> filon_adaptive(H& h, double beta, double a, double b, double abs_tol, double rel_tol,
                                      int max_panels) {
    std::priority_queue<OscPanel> heap;
    auto first = filon_panel(h, beta, a, b);
    cplx total = first.value;
    double err = first.error;
    heap.push(first);
    int panels = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total)) && panels < max_panels) {
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto l = filon_panel(h, beta, worst.a, mid);
        auto rr = filon_panel(h, beta, mid, worst.b);
        total += l.value + rr.value - worst.value;
        err += l.error + rr.error - worst.error;
        heap.push(l);
        heap.push(rr);
        ++panels;
    }
    QuadratureResult<cplx> out;
    while (!heap.empty()) {
        out.value += heap.top().value;
        out.error += heap.top().error;
        heap.pop();
    }
    out.subdivisions = panels;
    out.converged = out.error <= std::max(abs_tol, rel_tol * std::abs(out.value));
    return out;
}

} // namespace detail

/// Oscillatory integral ∫ h(x) e^{iβx} dx over [spec.lo, spec.hi] for a smooth,
/// non-oscillating envelope h (Filon-type rule, adaptive in panels). Infinite
/// limits are handled by geometrically growing panels, which converges for
/// envelopes decaying at least like 1/x when β ≠ 0.
template <class H>
QuadratureResult<cplx> try_integrate_oscillatory(H&& h, double beta, const QuadratureSpec& spec) {
    spec.validate();
    auto env = [&](double x) -> cplx { return h(x); };
    QuadratureResult<cplx> out;
    out.converged = true;
    auto add = [&](const QuadratureResult<cplx>& r) {
        out.value += r.value;
        out.error += r.error;
        out.subdivisions += r.subdivisions;
        out.converged = out.converged && r.converged;
    };

    const bool lo_inf = std::isinf(spec.lo);
    const bool hi_inf = std::isinf(spec.hi);
    double a = lo_inf ? (hi_inf ? -1.0 : spec.hi - 2.0) : spec.lo;
    double b = hi_inf ? (lo_inf ? 1.0 : std::max(spec.lo, 0.0) + 1.0) : spec.hi;
    if (lo_inf && !hi_inf) a = std::min(a, b - 1.0);
    if (b > a) add(detail::filon_adaptive(env, beta, a, b, spec.abs_tol, spec.rel_tol, spec.max_subdivisions));

    // Geometric panels towards ±∞; stop after three consecutive negligible ones.
    auto tail = [&](double start, double dir) {
        double len = std::max(1.0, std::abs(start));
        double x0 = start;
        int quiet = 0;
        for (int k = 0; k < 200 && quiet < 3; ++k) {
            const double x1 = x0 + dir * len;
            auto r = dir > 0 ? detail::filon_adaptive(env, beta, x0, x1, 0.1 * spec.abs_tol, spec.rel_tol,
                                                      spec.max_subdivisions)
                             : detail::filon_adaptive(env, beta, x1, x0, 0.1 * spec.abs_tol, spec.rel_tol,
                                                      spec.max_subdivisions);
            add(r);
            const bool small = std::abs(r.value) + r.error <= 0.1 * std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
            quiet = small ? quiet + 1 : 0;
            x0 = x1;
            len *= 2.0;
        }
        if (quiet < 3) out.converged = false;
    };
    if (hi_inf) tail(b, +1.0);
    if (lo_inf) tail(a, -1.0);
    return out;
}

template <class H>
cplx integrate_oscillatory(H&& h, double beta, const QuadratureSpec& spec) {
    auto r = try_integrate_oscillatory(std::forward<H>(h), beta, spec);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "oscillatory rule achieved error " << r.error << " after " << r.subdivisions << " panels";
        throw Error(ErrorKind::QuadratureFailure, msg.str());
    }
    return r.value;
}

} // namespace raman
