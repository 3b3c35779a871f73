#ifndef SINKFP_TEST_HELPERS_HPP
#define SINKFP_TEST_HELPERS_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "sinkfp/models.hpp"
#include "sinkfp/quadrature.hpp"
#include "sinkfp/specfun.hpp"

// Shared oracle machinery for the test suites. Everything here is
// independent of the spectral implementation paths it checks.

namespace testutil {

using sinkfp::Complex;
using sinkfp::ModelSpec;

// Apply the generator H f = s f'' + q f' - r f by 7-point central stencils
// with one Richardson extrapolation step (order-6 stencils, so the combined
// estimate removes the h^6 term).
template <typename F>
Complex apply_generator_fd(const ModelSpec& m, F&& f, double x) {
    auto second = [&](double h) {
        static const double w2[7] = {2, -27, 270, -490, 270, -27, 2};
        Complex acc(0, 0);
        for (int i = -3; i <= 3; ++i) acc += w2[i + 3] * f(x + i * h);
        return acc / (180.0 * h * h);
    };
    auto first = [&](double h) {
        static const double w1[7] = {-1, 9, -45, 0, 45, -9, 1};
        Complex acc(0, 0);
        for (int i = -3; i <= 3; ++i) acc += w1[i + 3] * f(x + i * h);
        return acc / (60.0 * h);
    };
    double h = std::max(1e-4, 1e-3 * std::abs(x));
    // keep the stencil inside the support of the half-line families
    if (!sinkfp::whole_line_support(m.kind)) h = std::min(h, x / 8.0);
    Complex d2 = (64.0 * second(0.5 * h) - second(h)) / 63.0;
    Complex d1 = (64.0 * first(0.5 * h) - first(h)) / 63.0;
    sinkfp::Coefficients co = sinkfp::coefficients(m, x);
    return co.s * d2 + co.q * d1 - co.r * f(x);
}

template <typename F>
double eigen_residual(const ModelSpec& m, F&& f, double x, double lambda) {
    Complex hf = apply_generator_fd(m, f, x);
    Complex want = -lambda * f(x);
    double scale = std::abs(want) + std::abs(lambda) * 1e-8 + 1e-12;
    return std::abs(hf - want) / scale;
}

// Weighted inner product int W(x) f(x) g(x) dx over the support, computed
// in the Liouville-like variable where tails decay exponentially. The
// window expands until the boundary integrand is negligible.
template <typename F, typename G>
Complex weighted_inner(const ModelSpec& m, F&& f, G&& g, double tol = 1e-11) {
    auto x_of = [&](double zv) {
        switch (m.kind) {
        case sinkfp::ModelKind::Laguerre: return 0.25 * zv * zv;
        case sinkfp::ModelKind::Bessel: return std::exp(zv);
        case sinkfp::ModelKind::FisherSnedecor: {
            double sh = std::sinh(0.5 * zv);
            return sh * sh;
        }
        default: return std::sinh(zv);
        }
    };
    auto dx_of = [&](double zv) {
        switch (m.kind) {
        case sinkfp::ModelKind::Laguerre: return 0.5 * zv;
        case sinkfp::ModelKind::Bessel: return std::exp(zv);
        case sinkfp::ModelKind::FisherSnedecor: return 0.5 * std::sinh(zv);
        default: return std::cosh(zv);
        }
    };
    auto integrand = [&](double zv) -> Complex {
        double xv = x_of(zv);
        if (!sinkfp::in_support(m, xv) || dx_of(zv) == 0.0) return {0.0, 0.0};
        double lw = sinkfp::log_weight(m, xv);
        if (lw < -700.0) return {0.0, 0.0};
        return std::exp(lw) * f(xv) * g(xv) * dx_of(zv);
    };
    bool whole = sinkfp::whole_line_support(m.kind) ||
                 m.kind == sinkfp::ModelKind::Bessel;
    double zlo = whole ? -2.0 : 1e-8, zhi = 2.0;
    double peak = 0.0;
    for (double zv = (whole ? -2.0 : 0.01); zv <= 2.0; zv += 0.1)
        peak = std::max(peak, std::abs(integrand(zv)));
    for (int it = 0; it < 60 && std::abs(integrand(zhi)) > 1e-18 * (peak + 1.0); ++it)
        zhi += 2.0;
    if (whole)
        for (int it = 0; it < 60 && std::abs(integrand(zlo)) > 1e-18 * (peak + 1.0); ++it)
            zlo -= 2.0;
    // absolute floor keyed to the integrand scale: orthogonal pairs integrate
    // to ~0 and a pure relative target would never be met
    double abs_tol = std::max(1e-15, tol * peak * (zhi - zlo));
    double re = sinkfp::integrate_adaptive(
        [&](double zv) { return integrand(zv).real(); }, zlo, zhi, tol, abs_tol, 20000);
    double im = sinkfp::integrate_adaptive(
        [&](double zv) { return integrand(zv).imag(); }, zlo, zhi, tol, abs_tol, 20000);
    return {re, im};
}

// Random valid model parameters per family.
inline ModelSpec random_model(sinkfp::ModelKind kind, std::mt19937& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    switch (kind) {
    case sinkfp::ModelKind::Laguerre: {
        double g = 3.0 * u01(rng);
        double s = -1.0 - 2.0 * g + 0.1 + 5.0 * u01(rng);
        return ModelSpec::laguerre(g, s);
    }
    case sinkfp::ModelKind::Bessel: {
        double s = -6.0 + 4.0 * u01(rng); // in (-6, -2)
        double g = 0.5 * (-s - 1.0) * 0.95 * u01(rng);
        return ModelSpec::bessel(g, s);
    }
    case sinkfp::ModelKind::FisherSnedecor: {
        double g = -3.0 + 2.4 * u01(rng); // in (-3, -0.6)
        double s1 = (u01(rng) < 0.5) ? std::min(g, -g - 1.0) - 0.05 - 2.0 * u01(rng)
                                     : std::max(g, -g - 1.0) + 0.05 + 2.0 * u01(rng);
        // g + s2 > -1 keeps the eigenfunctions square-integrable at 0
        double s2lo = std::max(0.3, -0.9 - g);
        double s2 = s2lo + 2.0 * u01(rng);
        return ModelSpec::fisher_snedecor(g, s1, s2);
    }
    default: {
        double g = -3.0 + 2.4 * u01(rng);
        double s1 = (u01(rng) < 0.5) ? std::min(g, -g - 1.0) - 0.05 - 2.0 * u01(rng)
                                     : std::max(g, -g - 1.0) + 0.05 + 2.0 * u01(rng);
        double s2 = -2.5 + 5.0 * u01(rng);
        return ModelSpec::romanovski(g, s1, s2);
    }
    }
}

inline double random_support_x(const ModelSpec& m, std::mt19937& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    if (sinkfp::whole_line_support(m.kind)) return -12.0 + 24.0 * u01(rng);
    return std::exp(std::log(0.08) + (std::log(12.0) - std::log(0.08)) * u01(rng));
}

} // namespace testutil

#endif // SINKFP_TEST_HELPERS_HPP
