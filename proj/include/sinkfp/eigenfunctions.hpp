#ifndef SINKFP_EIGENFUNCTIONS_HPP
#define SINKFP_EIGENFUNCTIONS_HPP

#include <cmath>
#include <complex>

#include "sinkfp/models.hpp"
#include "sinkfp/specfun.hpp"
#include "sinkfp/spectrum.hpp"

// Discrete eigenfunctions theta_n(x) (associated Laguerre / Bessel /
// Fisher-Snedecor / Romanovski functions) and the continuous-spectrum
// eigenfunctions psi_B, psi_F, chi_1, chi_2, all including the s(x)^varkappa
// prefactor. Continuation regions switch at 0.75 of the exact convergence
// radius; both branches agree on the overlap (enforced by tests).

namespace sinkfp {

enum class Branch { Direct, Continued };

struct EigenfunctionValue {
    Complex value;
    Branch branch_used = Branch::Direct;
};

namespace detail {

inline double prefactor_pow(const ModelSpec& m, double x) {
    // s(x)^varkappa
    switch (m.kind) {
    case ModelKind::Laguerre:
        return std::pow(x, m.gamma);
    case ModelKind::Bessel:
        return std::pow(x, m.gamma); // (x^2)^{gamma/2}
    case ModelKind::FisherSnedecor:
        return std::pow(x * x + x, 0.5 * (m.gamma - m.sigma1));
    case ModelKind::Romanovski:
        return std::pow(x * x + 1.0, 0.5 * (m.gamma - m.sigma1));
    }
    return 1.0;
}

inline int discrete_count(const ModelSpec& m) {
    double bound;
    switch (m.kind) {
    case ModelKind::Laguerre: return -1; // unbounded
    case ModelKind::Bessel: bound = -m.gamma - 0.5 * (m.sigma + 1.0); break;
    default: bound = -m.gamma - 0.5; break;
    }
    int cnt = 0;
    while (cnt + 1e-12 < bound) ++cnt;
    return cnt;
}

} // namespace detail

/// Polynomial part of the discrete eigenfunction (no s^varkappa prefactor).
inline double discrete_poly(const ModelSpec& m, int n, double x) {
    double g = m.gamma;
    Complex v;
    switch (m.kind) {
    case ModelKind::Laguerre: {
        double alpha = 2.0 * g + m.sigma;
        v = pochhammer(Complex(alpha + 1.0, 0.0), n) / std::tgamma(n + 1.0) *
            hyp1f1(Complex(-double(n), 0.0), Complex(alpha + 1.0, 0.0), x);
        break;
    }
    case ModelKind::Bessel:
        v = hyp2f0_poly(n, Complex(2.0 * g + m.sigma + n + 1.0, 0.0), x);
        break;
    case ModelKind::FisherSnedecor:
        v = pochhammer(Complex(g + m.sigma2 + 1.0, 0.0), n) *
            hyp2f1(Complex(-double(n), 0.0), Complex(2.0 * g + n + 1.0, 0.0),
                   Complex(g + m.sigma2 + 1.0, 0.0), Complex(-x, 0.0));
        break;
    case ModelKind::Romanovski: {
        Complex c(g + 1.0, 0.5 * m.sigma2);
        Complex den = pochhammer(Complex(n + 2.0 * g + 1.0, 0.0), n);
        if (std::abs(den) < 1e-280)
            throw InvalidModel("discrete_poly: degenerate Pochhammer denominator");
        Complex pre = std::pow(Complex(0.0, -2.0), n) * pochhammer(c, n) / den;
        v = pre * hyp2f1(Complex(-double(n), 0.0), Complex(2.0 * g + n + 1.0, 0.0),
                         c, Complex(0.5, -0.5 * x));
        break;
    }
    }
    if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
        throw NoConvergence("discrete_poly: lost reality of a real eigenfunction");
    return v.real();
}

/// Full discrete eigenfunction theta_n(x) = s(x)^varkappa * polynomial.
inline double discrete_eig(const ModelSpec& m, int n, double x) {
    require_valid(m);
    if (!in_support(m, x)) throw OutOfSupport("discrete_eig: x outside support");
    if (n < 0) throw OutOfSpectrum("discrete_eig: n < 0");
    int cnt = detail::discrete_count(m);
    if (cnt >= 0 && n >= cnt)
        throw OutOfSpectrum("discrete_eig: n outside the finite discrete spectrum");
    return detail::prefactor_pow(m, x) * discrete_poly(m, n, x);
}

/// Bessel continuum eigenfunction x^gamma psi_B(mu, x), always through the
/// convergent two-Kummer combination (the asymptotic 2F0 line is never used).
inline EigenfunctionValue continuous_eig_bessel_ex(const ModelSpec& m, double mu, double x) {
    require_valid(m);
    if (m.kind != ModelKind::Bessel)
        throw InvalidModel("continuous_eig_bessel: Bessel models only");
    if (!(x > 0.0)) throw OutOfSupport("continuous_eig_bessel: x > 0 required");
    if (!(mu > 0.0)) throw DegenerateMu("continuous_eig_bessel: mu > 0 required");
    double a = m.gamma + 0.5 * (m.sigma + 1.0);
    Complex i(0.0, 1.0);
    Complex coeff = std::exp(log_gamma(-2.0 * i * mu) - log_gamma(Complex(a, -mu)));
    Complex psi_tilde = std::exp(-Complex(a, mu) * std::log(x)) *
                        hyp1f1(Complex(a, mu), Complex(1.0, 2.0 * mu), 1.0 / x);
    double psi = 2.0 * (coeff * psi_tilde).real();
    return {Complex(std::pow(x, m.gamma) * psi, 0.0), Branch::Continued};
}

inline Complex continuous_eig_bessel(const ModelSpec& m, double mu, double x) {
    return continuous_eig_bessel_ex(m, mu, x).value;
}

/// Same function through Tricomi U; used as an internal cross-check.
inline Complex continuous_eig_bessel_u(const ModelSpec& m, double mu, double x) {
    double a = m.gamma + 0.5 * (m.sigma + 1.0);
    Complex u = tricomi_u(Complex(a, mu), Complex(1.0, 2.0 * mu), 1.0 / x);
    Complex psi = std::exp(-Complex(a, mu) * std::log(x)) * u;
    return std::pow(x, m.gamma) * psi;
}

/// Fisher-Snedecor continuum eigenfunction (x^2+x)^{(gamma-sigma1)/2} psi_F.
inline EigenfunctionValue continuous_eig_fs_branch(const ModelSpec& m, double mu,
                                                   double x, Branch branch) {
    require_valid(m);
    if (m.kind != ModelKind::FisherSnedecor)
        throw InvalidModel("continuous_eig_fs: Fisher-Snedecor models only");
    if (!(x > 0.0)) throw OutOfSupport("continuous_eig_fs: x > 0 required");
    if (!(mu > 0.0)) throw DegenerateMu("continuous_eig_fs: mu > 0 required");
    double g = m.gamma, s2 = m.sigma2;
    Complex psi;
    if (branch == Branch::Direct) {
        psi = hyp2f1(Complex(g + 0.5, mu), Complex(g + 0.5, -mu),
                     Complex(g + 1.0 + s2, 0.0), Complex(-x, 0.0));
    } else {
        Complex pi_p = detail::fs_pi_coefficient(m, mu);
        Complex tld = std::exp(-Complex(g + 0.5, mu) * std::log(x)) *
                      hyp2f1(Complex(g + 0.5, mu), Complex(0.5 - s2, mu),
                             Complex(1.0, 2.0 * mu), Complex(-1.0 / x, 0.0));
        Complex t = pi_p * tld;
        psi = 2.0 * t.real();
        if (std::abs(t) > 1e4 * std::abs(psi.real())) {
            // representation cancels exponentially (large mu, x inside the
            // unit interval); the direct form is robust there
            psi = hyp2f1(Complex(g + 0.5, mu), Complex(g + 0.5, -mu),
                         Complex(g + 1.0 + s2, 0.0), Complex(-x, 0.0));
        }
    }
    return {detail::prefactor_pow(m, x) * psi, branch};
}

inline EigenfunctionValue continuous_eig_fs_ex(const ModelSpec& m, double mu, double x) {
    // exact convergence radius of the direct 2F1(-x) series is |x| = 1
    Branch b = (x <= 0.75) ? Branch::Direct : Branch::Continued;
    return continuous_eig_fs_branch(m, mu, x, b);
}

inline Complex continuous_eig_fs(const ModelSpec& m, double mu, double x) {
    return continuous_eig_fs_ex(m, mu, x).value;
}

/// Romanovski continuum eigenfunctions (x^2+1)^{(gamma-sigma1)/2} chi_i,
/// i in {1, 2}; chi_2 is the complex conjugate of chi_1 at real x.
inline EigenfunctionValue continuous_eig_rom_branch(const ModelSpec& m, int i,
                                                    double mu, double x, Branch branch) {
    require_valid(m);
    if (m.kind != ModelKind::Romanovski)
        throw InvalidModel("continuous_eig_rom: Romanovski models only");
    if (i != 1 && i != 2) throw InvalidModel("continuous_eig_rom: i must be 1 or 2");
    if (!(mu > 0.0)) throw DegenerateMu("continuous_eig_rom: mu > 0 required");
    double g = m.gamma, s2 = m.sigma2;
    Complex chi;
    if (branch == Branch::Direct) {
        chi = hyp2f1(Complex(g + 0.5, mu), Complex(g + 0.5, -mu),
                     Complex(g + 1.0, 0.5 * s2), Complex(0.5, -0.5 * x));
    } else {
        // chi~(mu, x) = ((ix-1)/2)^{-g-1/2-i mu} 2F1(..., 2/(1-ix)); the
        // principal power has its cut on the negative real axis of the base,
        // crossed only at x = 0 which this branch never evaluates.
        auto chi_tilde = [&](double mm) {
            Complex base(-0.5, 0.5 * x);
            Complex expnt(-g - 0.5, -mm);
            Complex arg = 2.0 / Complex(1.0, -x);
            return std::pow(base, expnt) *
                   hyp2f1(Complex(g + 0.5, mm), Complex(0.5, mm - 0.5 * s2),
                          Complex(1.0, 2.0 * mm), arg);
        };
        Complex t1 = detail::rom_gamma_tilde(m, mu) * chi_tilde(mu);
        Complex t2 = detail::rom_gamma_tilde(m, -mu) * chi_tilde(-mu);
        chi = t1 + t2;
        if (std::abs(t1) + std::abs(t2) > 1e4 * std::abs(chi)) {
            // the two-term split cancels exponentially here (large mu near
            // |x| = sqrt(3)); the engine's Taylor continuation is stable
            chi = hyp2f1(Complex(g + 0.5, mu), Complex(g + 0.5, -mu),
                         Complex(g + 1.0, 0.5 * s2), Complex(0.5, -0.5 * x));
        }
    }
    if (i == 2) chi = std::conj(chi);
    return {detail::prefactor_pow(m, x) * chi, branch};
}

inline EigenfunctionValue continuous_eig_rom_ex(const ModelSpec& m, int i,
                                                double mu, double x) {
    // exact convergence radius of the direct series is |x| = sqrt(3)
    const double kSwitch = 0.75 * 1.7320508075688772;
    Branch b = (std::abs(x) <= kSwitch) ? Branch::Direct : Branch::Continued;
    return continuous_eig_rom_branch(m, i, mu, x, b);
}

inline Complex continuous_eig_rom(const ModelSpec& m, int i, double mu, double x) {
    return continuous_eig_rom_ex(m, i, mu, x).value;
}

/// Continuum eigenfunction dispatch (Romanovski returns chi_1).
inline Complex continuous_eig(const ModelSpec& m, double mu, double x) {
    switch (m.kind) {
    case ModelKind::Bessel: return continuous_eig_bessel(m, mu, x);
    case ModelKind::FisherSnedecor: return continuous_eig_fs(m, mu, x);
    case ModelKind::Romanovski: return continuous_eig_rom(m, 1, mu, x);
    default:
        throw InvalidModel("continuous_eig: purely discrete spectrum");
    }
}

} // namespace sinkfp

#endif // SINKFP_EIGENFUNCTIONS_HPP
