// temporal.hpp — Emission-time distributions: convolution, moments and the
// arrival-time statistics of the Raman photon after N intermediate scatterings.
//
// A TimeDistribution is a set of point masses p_k·h at t_k = t0 + k·h. Mass,
// mean and variance are then exactly additive under convolution.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "raman/core.hpp"
#include "raman/parallel.hpp"

namespace raman {

class TimeDistribution {
public:
    TimeDistribution(double start, double step, std::vector<double> density, bool normalized = false)
        : start_(start), step_(step), density_(std::move(density)), normalized_(normalized) {
        detail::require(step > 0.0 && detail::finite(step) && detail::finite(start), ErrorKind::InvalidParameter,
                        "time grid needs a finite start and step > 0");
        detail::require(!density_.empty(), ErrorKind::InvalidParameter, "time distribution needs samples");
        for (double v : density_)
            detail::require(v >= 0.0 && detail::finite(v), ErrorKind::InvalidParameter,
                            "time density must be finite and >= 0");
        if (normalized_)
            detail::require(std::abs(mass() - 1.0) <= 1e-9, ErrorKind::InvalidParameter,
                            "normalized flag set but mass differs from 1");
    }

    /// Samples f at the cell midpoints t0 + (k + ½)h, k < n.
    static TimeDistribution sample(const std::function<double(double)>& f, double start, double step, std::size_t n) {
        std::vector<double> v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = f(start + (static_cast<double>(k) + 0.5) * step);
        return {start + 0.5 * step, step, std::move(v)};
    }

    /// Exponential density λe^{−λt} on [0, cutoff), renormalized.
    static TimeDistribution exponential(double rate, double step, double cutoff) {
        detail::require(rate > 0.0, ErrorKind::InvalidParameter, "rate must be > 0");
        const auto n = static_cast<std::size_t>(std::ceil(cutoff / step));
        return sample([rate](double t) { return rate * std::exp(-rate * t); }, 0.0, step, n).normalized();
    }

    double start() const noexcept { return start_; }
    double step() const noexcept { return step_; }
    std::size_t size() const noexcept { return density_.size(); }
    double time(std::size_t k) const { return start_ + static_cast<double>(k) * step_; }
    const std::vector<double>& density() const noexcept { return density_; }
    bool is_normalized() const noexcept { return normalized_; }

    double mass() const {
        double s = 0.0;
        for (double v : density_) s += v;
        return s * step_;
    }

    TimeDistribution normalized() const {
        const double m = mass();
        detail::require(m >= 1e-12, ErrorKind::EmptySpectrum, "time distribution carries no mass");
        std::vector<double> v(density_);
        for (auto& x : v) x /= m;
        return {start_, step_, std::move(v), true};
    }

private:
    double start_;
    double step_;
    std::vector<double> density_;
    bool normalized_;
};

/// (a * b)(t) on the common spacing; the result starts at a.start + b.start.
inline TimeDistribution convolve(const TimeDistribution& a, const TimeDistribution& b) {
    detail::require(std::abs(a.step() - b.step()) <= 1e-12 * a.step(), ErrorKind::GridMismatch,
                    "convolution needs a common time step");
    const auto& x = a.density();
    const auto& y = b.density();
    std::vector<double> out(x.size() + y.size() - 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    }
    for (auto& v : out) v *= a.step();
    return {a.start() + b.start(), a.step(), std::move(out), a.is_normalized() && b.is_normalized()};
}

/// p_N = p_1 * … * p_1 (N factors), N ≥ 1.
inline TimeDistribution convolution_power(const TimeDistribution& p, int n) {
    detail::require(n >= 1, ErrorKind::InvalidParameter, "convolution power needs N >= 1");
    TimeDistribution out = p;
    for (int k = 1; k < n; ++k) out = convolve(out, p);
    return out;
}

struct TimeMoments {
    double mean;
    double spread; // sqrt of the second central moment
};

inline TimeMoments moments(const TimeDistribution& p) {
    const double m = p.mass();
    detail::require(m >= 1e-12, ErrorKind::EmptySpectrum, "time distribution carries no mass");
    double s1 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s1 += p.time(k) * p.density()[k];
    const double mean = s1 * p.step() / m;
    double s2 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double d = p.time(k) - mean;
        s2 += d * d * p.density()[k];
    }
    return {mean, std::sqrt(s2 * p.step() / m)};
}

/// Mean arrival time (N̄ + 1)⟨t⟩_1 and spread (N̄ + 1)(Δt)_1 with N̄ + 1 = Γ/Γ2.
inline TimeMoments raman_arrival_stats(const AtomThreeLevel& atom, const TimeMoments& first) {
    detail::require(atom.gamma2() > 0.0, ErrorKind::NonPositiveDecay, "no Raman photon without Γ2 > 0");
    const double k = atom.gamma_total() / atom.gamma2();
    return {k * first.mean, k * first.spread};
}
inline TimeMoments raman_arrival_stats(const AtomThreeLevel& atom, const TimeDistribution& first) {
    return raman_arrival_stats(atom, moments(first));
}

/// Moments of the compound sum of K ~ Geometric(Γ2/Γ) (K ≥ 1) i.i.d. first-photon
/// times: E = μ/p, Var = σ²/p + (1 − p)μ²/p². Differs from the linear spread law
/// unless σ = μ.
inline TimeMoments compound_arrival_stats(const AtomThreeLevel& atom, const TimeMoments& first) {
    detail::require(atom.gamma2() > 0.0, ErrorKind::NonPositiveDecay, "no Raman photon without Γ2 > 0");
    const double p = atom.gamma2() / atom.gamma_total();
    const double mu = first.mean;
    const double s = first.spread;
    return {mu / p, std::sqrt(s * s / p + (1.0 - p) * mu * mu / (p * p))};
}

/// Σ_{N ≤ n_max} N_N ⟨t⟩_{N+1} with N_N = (Γ2/Γ)(Γ1/Γ)^N and ⟨t⟩_{N+1} = (N+1)⟨t⟩_1.
/// The truncation error is bounded by the returned tail estimate.
struct TruncatedMean {
    double value;
    double tail_bound;
};
inline TruncatedMean geometric_weighted_mean(const AtomThreeLevel& atom, double first_mean, int n_max = 64) {
    detail::require(n_max >= 0, ErrorKind::InvalidParameter, "n_max must be >= 0");
    const double r = atom.gamma1() / atom.gamma_total();
    double w = atom.gamma2() / atom.gamma_total();
    double s = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        s += w * (n + 1) * first_mean;
        w *= r;
    }
    // Σ_{n ≥ m} (1−r) r^n (n+1) μ = μ r^m (m(1−r) + 1)/(1−r), m = n_max + 1.
    const double m = n_max + 1;
    const double tail = r < 1.0 ? first_mean * std::pow(r, m) * (m * (1.0 - r) + 1.0) / (1.0 - r)
                                : std::numeric_limits<double>::infinity();
    return {s, tail};
}

struct MonteCarloStats {
    double mean;
    double spread;
    std::uint64_t samples;
};

/// Compound Monte Carlo: each sample draws K ~ Geometric(Γ2/Γ) (K ≥ 1) and sums K
/// first-photon times from `draw`. Samples are split into fixed chunks with
/// seeds (seed, chunk) so the result is independent of the thread count.
template <class Draw>
MonteCarloStats compound_monte_carlo(const AtomThreeLevel& atom, Draw&& draw, std::uint64_t samples,
                                     std::uint64_t seed, unsigned threads = 1) {
    detail::require(samples >= 2, ErrorKind::InvalidParameter, "need at least 2 samples");
    detail::require(atom.gamma2() > 0.0, ErrorKind::NonPositiveDecay, "no Raman photon without Γ2 > 0");
    const double p = atom.gamma2() / atom.gamma_total();
    constexpr std::uint64_t chunk = 1u << 16;
    const std::size_t chunks = static_cast<std::size_t>((samples + chunk - 1) / chunk);
    struct Partial {
        double n = 0, mean = 0, m2 = 0;
    };
    std::vector<Partial> parts(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
        std::mt19937_64 rng(seq);
        std::geometric_distribution<int> extra(p); // failures before the Raman photon
        const std::uint64_t n = std::min<std::uint64_t>(chunk, samples - c * chunk);
        Partial acc;
        for (std::uint64_t i = 0; i < n; ++i) {
            const int k = extra(rng) + 1;
            double t = 0.0;
            for (int j = 0; j < k; ++j) t += draw(rng);
            acc.n += 1.0;
            const double d = t - acc.mean;
            acc.mean += d / acc.n;
            acc.m2 += d * (t - acc.mean);
        }
        parts[c] = acc;
    });
    // Chan's pairwise merge, in chunk order.
    Partial all;
    for (const auto& q : parts) {
        const double n = all.n + q.n;
        const double d = q.mean - all.mean;
        all.mean += d * q.n / n;
        all.m2 += q.m2 + d * d * all.n * q.n / n;
        all.n = n;
    }
    return {all.mean, std::sqrt(all.m2 / (all.n - 1.0)), samples};
}

/// Exponential first-photon times with the given rate.
inline MonteCarloStats compound_monte_carlo_exponential(const AtomThreeLevel& atom, double rate,
                                                        std::uint64_t samples, std::uint64_t seed,
                                                        unsigned threads = 1) {
    detail::require(rate > 0.0, ErrorKind::InvalidParameter, "rate must be > 0");
    return compound_monte_carlo(
        atom, [rate](std::mt19937_64& rng) { return std::exponential_distribution<double>(rate)(rng); }, samples,
        seed, threads);
}

/// Draws from a gridded distribution (point masses at its grid times).
inline MonteCarloStats compound_monte_carlo(const AtomThreeLevel& atom, const TimeDistribution& first,
                                            std::uint64_t samples, std::uint64_t seed, unsigned threads = 1) {
    std::vector<double> cdf(first.size());
    std::partial_sum(first.density().begin(), first.density().end(), cdf.begin());
    detail::require(cdf.back() > 0.0, ErrorKind::EmptySpectrum, "time distribution carries no mass");
    return compound_monte_carlo(
        atom,
        [&](std::mt19937_64& rng) {
            const double u = std::uniform_real_distribution<double>(0.0, cdf.back())(rng);
            const auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            return first.time(std::min(k, cdf.size() - 1));
        },
        samples, seed, threads);
}

} // namespace raman
