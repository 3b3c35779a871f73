#ifndef SINKFP_BERTALANFFY_HPP
#define SINKFP_BERTALANFFY_HPP

#include <cmath>

#include "sinkfp/density.hpp"
#include "sinkfp/models.hpp"
#include "sinkfp/quadrature.hpp"

// The growth-process application: maps the stochastic growth-equation
// parameters onto the Laguerre (alpha = b = 0) and Fisher-Snedecor (b = 0)
// families and evaluates the transition densities in the original
// x-coordinates, via xi = x^{1-zeta} and z = xi^2 / omega.

namespace sinkfp {

struct BRSpec {
    double a = 0.0;      // linear growth rate
    double b = 0.0;      // decay coefficient
    double alpha = 0.0;  // growth-noise amplitude
    double beta = 0.0;   // decay-noise amplitude
    double zeta = 2.0;   // decay exponent, > 1
    double Omega = 1.0;  // noise variance
};

inline void require_br(const BRSpec& br) {
    if (!(br.zeta > 1.0)) throw InvalidParam("BR: zeta > 1 required");
    if (br.a < 0.0 || br.b < 0.0) throw InvalidParam("BR: a, b >= 0 required");
    if (!(br.Omega > 0.0)) throw InvalidParam("BR: Omega > 0 required");
}

struct LaguerreMapping {
    double sigma = 0.0;
    double omega_L = 0.0;
    double time_scale = 0.0; // tau / t
};

struct FisherMapping {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double omega_F = 0.0;
    double time_scale = 0.0; // tau / t
};

/// alpha = b = 0 regime -> Laguerre model constants.
inline LaguerreMapping map_laguerre(const BRSpec& br) {
    require_br(br);
    if (br.alpha != 0.0 || br.b != 0.0)
        throw WrongRegime("map_laguerre: requires alpha = 0 and b = 0");
    if (!(br.a > 0.0) || br.beta == 0.0)
        throw WrongRegime("map_laguerre: requires a > 0 and beta != 0");
    LaguerreMapping map;
    map.sigma = 1.0 / (2.0 * (br.zeta - 1.0));
    map.omega_L = br.Omega * (br.zeta - 1.0) * br.beta * br.beta / br.a;
    map.time_scale = br.a / map.sigma; // = 2 a (zeta - 1)
    return map;
}

/// b = 0 regime -> Fisher-Snedecor model constants; the induced model with
/// gamma = sigma1 (sink-free) must pass validation.
inline FisherMapping map_fisher(const BRSpec& br) {
    require_br(br);
    if (br.b != 0.0)
        throw WrongRegime("map_fisher: requires b = 0");
    if (br.alpha == 0.0 || br.beta == 0.0 || !(br.a > 0.0))
        throw WrongRegime("map_fisher: requires a > 0, alpha != 0, beta != 0");
    FisherMapping map;
    double den = 2.0 * br.Omega * (br.zeta - 1.0) * br.alpha * br.alpha;
    map.sigma1 = (br.Omega * (br.zeta - 0.5) * br.alpha * br.alpha - br.a) / den - 1.0;
    map.sigma2 = (br.Omega * (br.zeta - 0.5) * br.alpha * br.alpha + br.a) / den;
    map.omega_F = br.beta * br.beta / (br.alpha * br.alpha);
    map.time_scale = 2.0 * (br.zeta - 1.0) * br.a / (map.sigma2 - map.sigma1 - 1.0);
    ModelSpec fs = ModelSpec::fisher_snedecor(map.sigma1, map.sigma1, map.sigma2);
    ValidationReport rep = validate(fs);
    if (!rep.ok)
        throw InvalidMapping("map_fisher: induced Fisher-Snedecor model invalid: " +
                             rep.violations.front());
    return map;
}

// Exponent sign of the discrete terms in the Fisher-Snedecor growth density:
// exp(sign * tau * n (n + 2 sigma1 + 1)) with n (n + 2 sigma1 + 1) <= 0 for
// every admissible n, i.e. the printed sign already decays. Pinned by tests
// against the Monte-Carlo oracle.
inline constexpr double kFisherDiscreteExpSign = +1.0;

/// Closed-form growth density for the alpha = b = 0 regime (modified-Bessel
/// kernel in x^{-1/sigma} variables); integrates to 1 over the half line.
inline double br_density_laguerre(const BRSpec& br, double x, double t, double y) {
    LaguerreMapping map = map_laguerre(br);
    if (!(t > 0.0)) throw TimeTooSmall("br_density_laguerre: t > 0 required");
    if (!(x > 0.0) || !(y > 0.0))
        throw OutOfSupport("br_density_laguerre: x, y > 0 required");
    double s = map.sigma, wL = map.omega_L, a = br.a;
    double eat = std::exp(-a / s * t);
    double denom = -std::expm1(-a / s * t); // 1 - e^{-(a/sigma) t}
    double warg = 2.0 * std::pow(x * y, -0.5 / s) * std::exp(-0.5 * a / s * t) /
                  (wL * denom);
    double logT = -(std::pow(x, -1.0 / s) + eat * std::pow(y, -1.0 / s)) / (wL * denom) +
                  bessel_i_log(s, warg) -
                  (std::log(s * wL) + (1.5 + 1.0 / s) * std::log(x) -
                   0.5 * std::log(y) - 0.5 * a * t + std::log(denom));
    return std::exp(logT);
}

namespace detail {

// z(x) = x^{2(1-zeta)} / omega and |dz/dx|.
inline double br_z_of_x(double x, double zeta, double omega) {
    return std::pow(x, 2.0 * (1.0 - zeta)) / omega;
}
inline double br_jacobian(double x, double zeta, double omega) {
    return 2.0 * (zeta - 1.0) * std::pow(x, 1.0 - 2.0 * zeta) / omega;
}

} // namespace detail

/// Growth density for the b = 0 regime: discrete sum to floor(-sigma1-1/2)
/// plus continuum quadrature, assembled in the original x-coordinates.
inline double br_density_fisher(const BRSpec& br, double x, double t, double y,
                                const QuadratureSpec& q = {}) {
    FisherMapping map = map_fisher(br);
    if (!(x > 0.0) || !(y > 0.0))
        throw OutOfSupport("br_density_fisher: x, y > 0 required");
    double s1 = map.sigma1, s2 = map.sigma2, wF = map.omega_F, zeta = br.zeta;
    double tau = map.time_scale * t;
    if (tau < kTMin - 1e-15)
        throw TimeTooSmall("br_density_fisher: rescaled time below t_min");
    double zx = detail::br_z_of_x(x, zeta, wF);
    double zy = detail::br_z_of_x(y, zeta, wF);

    ModelSpec fs = ModelSpec::fisher_snedecor(s1, s1, s2);

    // prefactor 2(zeta-1) (x^{2(1-zeta)} + omega)^{sigma1-sigma2} /
    //           (omega^{2 sigma1 + 1} x^{2 zeta})
    double logpre = std::log(2.0 * (zeta - 1.0)) +
                    (s1 - s2) * std::log(std::pow(x, 2.0 * (1.0 - zeta)) + wF) -
                    (2.0 * s1 + 1.0) * std::log(wF) - 2.0 * zeta * std::log(x);

    double disc = 0.0;
    double bound = -s1 - 0.5;
    for (int n = 0; n + 1e-12 < bound; ++n) {
        double coef = (-2.0 * n - 1.0 - 2.0 * s1) * gamma_r(-n - s1 + s2) /
                      (std::tgamma(n + 1.0) * gamma_r(-n - 2.0 * s1) *
                       gamma_r(1.0 + n + s1 + s2));
        double expo = kFisherDiscreteExpSign * tau * n * (n + 2.0 * s1 + 1.0);
        disc += coef * std::exp(expo) * discrete_poly(fs, n, zx) * discrete_poly(fs, n, zy);
    }

    double mu_max = q.mu_max > 0.0 ? q.mu_max : std::sqrt(37.0 / tau);
    int panels = q.panels;
    double cont = 0.0, prev = 0.0;
    for (int k = 0; k <= q.max_doublings; ++k) {
        PanelRule rule = panel_rule(0.0, mu_max, panels, q.nodes_per_panel);
        std::vector<double> terms(rule.nodes.size());
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            double mu = std::max(rule.nodes[j], 1e-8);
            double lam = (s1 + 0.5) * (s1 + 0.5) + mu * mu;
            double rho = continuous_norm(fs, mu);
            // psi_F without the (z^2+z)^{(gamma-sigma1)/2} prefactor, which
            // is 1 in the sink-free gamma = sigma1 mapping
            double px = continuous_eig_fs(fs, mu, zx).real();
            double py = continuous_eig_fs(fs, mu, zy).real();
            terms[j] = rule.weights[j] * std::exp(-lam * tau) * rho * px * py;
        }
        cont = detail::pairwise_sum(terms);
        if (k > 0 && std::abs(cont - prev) < q.refine_tol * std::max(1.0, std::abs(cont)))
            break;
        prev = cont;
        panels *= 2;
        if (k == q.max_doublings)
            throw QuadratureFailure("br_density_fisher: mu quadrature did not settle");
    }

    return std::exp(logpre) * (disc + cont);
}

/// Location of the stationary-profile maximum in x-coordinates, found by
/// direct maximisation of the transformed weight (golden-section on the
/// log-profile).
inline double steady_state_peak(const BRSpec& br) {
    FisherMapping map = map_fisher(br);
    double s1 = map.sigma1, s2 = map.sigma2, wF = map.omega_F, zeta = br.zeta;
    auto logw = [&](double x) {
        return (s1 - s2) * std::log(std::pow(x, 2.0 * (1.0 - zeta)) + wF) -
               2.0 * zeta * std::log(x);
    };
    // bracket an interior maximum on a log-spaced scan
    const int n_scan = 400;
    double lo = std::log(1e-3), hi = std::log(1e3);
    int best = -1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n_scan; ++i) {
        double xl = lo + (hi - lo) * i / n_scan;
        double v = logw(std::exp(xl));
        if (v > best_val) { best_val = v; best = i; }
    }
    if (best <= 0 || best >= n_scan)
        throw NoInteriorMax("steady_state_peak: profile is monotone on the scan range");
    double a = std::exp(lo + (hi - lo) * (best - 1) / n_scan);
    double b = std::exp(lo + (hi - lo) * (best + 1) / n_scan);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::abs(b)); ++it) {
        if (logw(c) > logw(d)) { b = d; d = c; c = b - gr * (b - a); }
        else { a = c; c = d; d = a + gr * (b - a); }
    }
    return 0.5 * (a + b);
}

} // namespace sinkfp

#endif // SINKFP_BERTALANFFY_HPP
