#ifndef SINKFP_ORACLES_HPP
#define SINKFP_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "sinkfp/bertalanffy.hpp"
#include "sinkfp/errors.hpp"

// Independent ground truth: a Crank-Nicolson solver for the sinked evolution
// equation with arbitrary (s, q, r), and an Euler-Maruyama Monte-Carlo
// simulator for the stochastic growth equation. Both exist to validate the
// spectral engine and share nothing with it.

namespace sinkfp {

enum class GridStretch { Uniform, Log, Sinh };

struct FDConfig {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_x = 2001;
    int n_t = 2000;
    GridStretch stretch = GridStretch::Uniform;
    double mollify_width = 0.0; // 0: use 2 * local dx
};

struct FDGrid {
    std::vector<double> x;
    std::vector<double> values;
    double t = 0.0;
    double mass = 0.0;
};

using CoefficientFn = std::function<double(double)>;

namespace detail {

inline std::vector<double> build_grid(const FDConfig& cfg) {
    if (cfg.n_x < 100) throw InvalidParam("fd_solve: n_x >= 100 required");
    std::vector<double> x(cfg.n_x);
    switch (cfg.stretch) {
    case GridStretch::Uniform:
        for (int i = 0; i < cfg.n_x; ++i)
            x[i] = cfg.x_min + (cfg.x_max - cfg.x_min) * i / double(cfg.n_x - 1);
        break;
    case GridStretch::Log: {
        if (!(cfg.x_min > 0.0))
            throw InvalidParam("fd_solve: Log stretch requires x_min > 0");
        double l0 = std::log(cfg.x_min), l1 = std::log(cfg.x_max);
        for (int i = 0; i < cfg.n_x; ++i)
            x[i] = std::exp(l0 + (l1 - l0) * i / double(cfg.n_x - 1));
        break;
    }
    case GridStretch::Sinh: {
        // nodes concentrate around the domain midpoint
        const double c = 4.0;
        double mid = 0.5 * (cfg.x_min + cfg.x_max);
        double amp = 0.5 * (cfg.x_max - cfg.x_min) / std::sinh(c);
        for (int i = 0; i < cfg.n_x; ++i) {
            double u = -1.0 + 2.0 * i / double(cfg.n_x - 1);
            x[i] = mid + amp * std::sinh(c * u);
        }
        break;
    }
    }
    return x;
}

inline double trapezoid_mass(const std::vector<double>& x, const std::vector<double>& v) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        m += 0.5 * (v[i] + v[i + 1]) * (x[i + 1] - x[i]);
    return m;
}

// Tridiagonal Thomas solve, in-place on rhs.
inline void thomas_solve(const std::vector<double>& lower,
                         const std::vector<double>& diag,
                         const std::vector<double>& upper,
                         std::vector<double>& rhs,
                         std::vector<double>& scratch) {
    std::size_t n = diag.size();
    scratch.resize(n);
    double beta = diag[0];
    rhs[0] /= beta;
    for (std::size_t i = 1; i < n; ++i) {
        scratch[i] = upper[i - 1] / beta;
        beta = diag[i] - lower[i] * scratch[i];
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] -= scratch[i + 1] * rhs[i + 1];
}

} // namespace detail

/// Crank-Nicolson evolution of dT/dt = dxx(s T) - dx(q T) - r T from a given
/// initial profile at t0, returning snapshots at each requested output time.
/// Absorbing (zero value) ends; boundary leakage above 1e-5 of the current
/// mass per unit time raises DomainTooSmall, negative lobes beyond 1e-3 of
/// the peak raise InstabilityDetected.
inline std::vector<FDGrid> fd_evolve(const CoefficientFn& s_fn, const CoefficientFn& q_fn,
                                     const CoefficientFn& r_fn,
                                     const std::vector<double>& x,
                                     std::vector<double> T, double t0,
                                     const std::vector<double>& t_out, int n_t) {
    std::size_t n = x.size();
    if (T.size() != n) throw InvalidParam("fd_evolve: profile/grid size mismatch");
    if (t_out.empty()) throw InvalidParam("fd_evolve: no output times");
    for (std::size_t i = 0; i + 1 < t_out.size(); ++i)
        if (!(t_out[i] < t_out[i + 1]))
            throw InvalidParam("fd_evolve: t_out must be increasing");
    if (!(t_out.front() >= t0)) throw InvalidParam("fd_evolve: t_out before t0");

    std::vector<double> s(n), q(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = s_fn(x[i]);
        q[i] = q_fn(x[i]);
        r[i] = r_fn(x[i]);
        if (!(s[i] > 0.0)) throw InvalidParam("fd_evolve: s(x) must be positive");
    }

    // interior operator L T = dxx(s T) - dx(q T) - r T on the nonuniform grid
    std::size_t ni = n - 2;
    std::vector<double> Lm(ni), Lc(ni), Lp(ni);
    for (std::size_t i = 0; i < ni; ++i) {
        double hm = x[i + 1] - x[i];
        double hp = x[i + 2] - x[i + 1];
        double d2m = 2.0 / (hm * (hm + hp));
        double d2c = -2.0 / (hm * hp);
        double d2p = 2.0 / (hp * (hm + hp));
        double d1m = -hp / (hm * (hm + hp));
        double d1c = (hp - hm) / (hm * hp);
        double d1p = hm / (hp * (hm + hp));
        Lm[i] = d2m * s[i] - d1m * q[i];
        Lc[i] = d2c * s[i + 1] - d1c * q[i + 1] - r[i + 1];
        Lp[i] = d2p * s[i + 2] - d1p * q[i + 2];
    }

    double t_end = t_out.back();
    double dt = (t_end - t0) / n_t;
    std::vector<double> lo(ni), di(ni), up(ni);
    for (std::size_t i = 0; i < ni; ++i) {
        lo[i] = -0.5 * dt * Lm[i];
        di[i] = 1.0 - 0.5 * dt * Lc[i];
        up[i] = -0.5 * dt * Lp[i];
    }

    T.front() = T.back() = 0.0;
    std::vector<FDGrid> out;
    std::vector<double> rhs(ni), scratch;
    double t = t0;
    std::size_t next_out = 0;
    auto snapshot = [&](double tt) {
        FDGrid g;
        g.x = x;
        g.values = T;
        g.t = tt;
        g.mass = detail::trapezoid_mass(x, T);
        out.push_back(std::move(g));
    };
    while (next_out < t_out.size() && t_out[next_out] <= t0 + 1e-15 * (1.0 + std::abs(t0)))
        snapshot(t_out[next_out++]);

    for (int step = 0; step < n_t; ++step) {
        for (std::size_t i = 0; i < ni; ++i)
            rhs[i] = T[i + 1] + 0.5 * dt * (Lm[i] * T[i] + Lc[i] * T[i + 1] + Lp[i] * T[i + 2]);
        detail::thomas_solve(lo, di, up, rhs, scratch);
        for (std::size_t i = 0; i < ni; ++i) T[i + 1] = rhs[i];
        T.front() = T.back() = 0.0;
        t = t0 + (step + 1) * dt;

        if (step % 16 == 0 || step + 1 == n_t) {
            double peak = 0.0, trough = 0.0;
            for (double v : T) { peak = std::max(peak, v); trough = std::min(trough, v); }
            if (trough < -1e-3 * peak)
                throw InstabilityDetected("fd_evolve: negative lobes exceed 1e-3 of peak");
            // outward probability current J = q T - d/dx(s T), sampled one
            // cell inside each absorbing wall; only outflow counts as leakage
            double mass = detail::trapezoid_mass(x, T);
            auto current = [&](std::size_t i) {
                return q[i] * T[i] -
                       (s[i + 1] * T[i + 1] - s[i - 1] * T[i - 1]) / (x[i + 1] - x[i - 1]);
            };
            double leak_rate = std::max(0.0, current(n - 2)) +
                               std::max(0.0, -current(1));
            if (mass > 1e-12 && leak_rate > 1e-5 * mass)
                throw DomainTooSmall("fd_evolve: boundary outflow above 1e-5 of mass per unit time");
        }

        while (next_out < t_out.size() && t >= t_out[next_out] - 0.5 * dt) {
            snapshot(t_out[next_out]);
            ++next_out;
        }
    }
    while (next_out < t_out.size()) snapshot(t_out[next_out++]);
    return out;
}

/// Crank-Nicolson solve started from a mollified delta at y (Gaussian of
/// width max(2 dx, cfg.mollify_width), normalised on the grid).
inline std::vector<FDGrid> fd_solve(const CoefficientFn& s_fn, const CoefficientFn& q_fn,
                                    const CoefficientFn& r_fn, double y,
                                    const std::vector<double>& t_out, const FDConfig& cfg) {
    std::vector<double> x = detail::build_grid(cfg);
    if (!(y > x.front() && y < x.back()))
        throw InvalidParam("fd_solve: y outside the truncated domain");
    // local spacing near y
    std::size_t iy = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (x[i] <= y && y <= x[i + 1]) { iy = i; break; }
    double dx_local = x[iy + 1] - x[iy];
    double w = std::max(2.0 * dx_local, cfg.mollify_width);
    std::vector<double> T(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double u = (x[i] - y) / w;
        T[i] = std::exp(-0.5 * u * u);
    }
    double norm = detail::trapezoid_mass(x, T);
    for (double& v : T) v /= norm;
    return fd_evolve(s_fn, q_fn, r_fn, x, std::move(T), 0.0, t_out, cfg.n_t);
}

// ---------------------------------------------------------------------------
// Monte-Carlo oracle
// ---------------------------------------------------------------------------

struct MCConfig {
    long n_paths = 100000;
    double dt = 1e-4;
    std::uint64_t seed = 1;
    int n_bins = 0;        // 0: Freedman-Diaconis
    int n_threads = 1;
};

struct Histogram {
    std::vector<double> edges;        // n_bins + 1
    std::vector<std::int64_t> counts; // n_bins
    long n_samples = 0;
    long n_blowups = 0;

    double density(int bin) const {
        double width = edges[bin + 1] - edges[bin];
        return counts[bin] / (width * double(n_samples));
    }
};

enum class MCScheme { TransformedXi, DirectX };

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based generator keyed by (seed, path, step): reproducible
// independent of thread scheduling.
inline void normal_pair(std::uint64_t seed, std::uint64_t path, std::uint64_t step,
                        double& n1, double& n2) {
    std::uint64_t k = splitmix64(seed ^ splitmix64(path * 0xA24BAED4963EE407ULL));
    k = splitmix64(k ^ splitmix64(step * 0x9FB21C651E98DF25ULL));
    std::uint64_t u1 = splitmix64(k);
    std::uint64_t u2 = splitmix64(k ^ 0xD6E8FEB86659FD93ULL);
    // u in (0, 1]; Box-Muller
    double a = (double(u1 >> 11) + 1.0) * 0x1.0p-53;
    double b = double(u2 >> 11) * 0x1.0p-53;
    double rad = std::sqrt(-2.0 * std::log(a));
    n1 = rad * std::cos(2.0 * kPi * b);
    n2 = rad * std::sin(2.0 * kPi * b);
}

} // namespace detail

/// Euler-Maruyama simulation of the stochastic growth equation to time t.
/// The default scheme integrates the exactly-linearised xi = x^{1-zeta}
/// process and maps back; DirectX integrates the original Ito equation.
/// Returns the end-time histogram; bit-identical for a fixed seed.
inline Histogram simulate_br(const BRSpec& br, double y, double t, const MCConfig& cfg,
                             MCScheme scheme = MCScheme::TransformedXi) {
    require_br(br);
    if (!(y > 0.0)) throw InvalidParam("simulate_br: y > 0 required");
    if (!(t > 0.0)) throw InvalidParam("simulate_br: t > 0 required");
    if (br.a > 0.0 && cfg.dt > 1e-3 / br.a + 1e-15)
        throw InvalidParam("simulate_br: dt must be <= 1e-3 / a");
    long n_steps = long(std::ceil(t / cfg.dt));
    double dt = t / double(n_steps);
    double sq = std::sqrt(br.Omega * dt);
    double zm1 = br.zeta - 1.0;

    std::vector<double> samples(cfg.n_paths);
    std::vector<std::uint8_t> dead(cfg.n_paths, 0);

    auto run_path = [&](long p) {
        double n1, n2;
        if (scheme == MCScheme::TransformedXi) {
            double xi = std::pow(y, 1.0 - br.zeta);
            for (long k = 0; k < n_steps; ++k) {
                detail::normal_pair(cfg.seed, std::uint64_t(p), std::uint64_t(k), n1, n2);
                xi += zm1 * ((br.b - br.a * xi) * dt + sq * (br.beta * n2 - br.alpha * xi * n1));
                if (!(xi > 0.0)) { dead[p] = 1; return; }
            }
            samples[p] = std::pow(xi, 1.0 / (1.0 - br.zeta));
        } else {
            double xv = y;
            for (long k = 0; k < n_steps; ++k) {
                detail::normal_pair(cfg.seed, std::uint64_t(p), std::uint64_t(k), n1, n2);
                double xz = std::pow(xv, br.zeta);
                xv += (br.a * xv - br.b * xz) * dt + sq * (br.alpha * xv * n1 - br.beta * xz * n2);
                if (!(xv > 0.0) || !std::isfinite(xv)) { dead[p] = 1; return; }
            }
            samples[p] = xv;
        }
    };

    int nt = std::max(1, cfg.n_threads);
    if (nt == 1) {
        for (long p = 0; p < cfg.n_paths; ++p) run_path(p);
    } else {
        std::vector<std::thread> pool;
        long chunk = (cfg.n_paths + nt - 1) / nt;
        for (int k = 0; k < nt; ++k) {
            long lo = k * chunk, hi = std::min(cfg.n_paths, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] { for (long p = lo; p < hi; ++p) run_path(p); });
        }
        for (auto& th : pool) th.join();
    }

    long blowups = 0;
    std::vector<double> live;
    live.reserve(cfg.n_paths);
    for (long p = 0; p < cfg.n_paths; ++p) {
        if (dead[p]) ++blowups;
        else live.push_back(samples[p]);
    }
    if (blowups > cfg.n_paths / 1000)
        throw PathBlowup("simulate_br: more than 0.1% of paths diverged (" +
                         std::to_string(blowups) + ")");

    Histogram hist;
    hist.n_samples = long(live.size());
    hist.n_blowups = blowups;
    std::vector<double> sorted = live;
    std::sort(sorted.begin(), sorted.end());
    double qlo = sorted[std::size_t(0.25 * (sorted.size() - 1))];
    double qhi = sorted[std::size_t(0.75 * (sorted.size() - 1))];
    double lo = sorted.front(), hi = sorted.back();
    int nb = cfg.n_bins;
    if (nb <= 0) {
        double width = 2.0 * (qhi - qlo) / std::cbrt(double(sorted.size()));
        if (!(width > 0.0)) width = (hi - lo > 0.0 ? hi - lo : 1.0);
        nb = std::max(1, int(std::ceil((hi - lo) / width)));
        nb = std::min(nb, 4096);
    }
    double span = hi - lo;
    if (span <= 0.0) { lo -= 0.5; hi += 0.5; span = 1.0; }
    hist.edges.resize(nb + 1);
    for (int i = 0; i <= nb; ++i) hist.edges[i] = lo + span * i / nb;
    hist.counts.assign(nb, 0);
    for (double v : live) {
        int bin = std::min(nb - 1, int((v - lo) / span * nb));
        bin = std::max(0, bin);
        ++hist.counts[bin];
    }
    return hist;
}

} // namespace sinkfp

#endif // SINKFP_ORACLES_HPP
