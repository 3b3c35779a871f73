#ifndef SINKFP_SPECTRUM_HPP
#define SINKFP_SPECTRUM_HPP

#include <cmath>
#include <optional>
#include <vector>

#include "sinkfp/models.hpp"
#include "sinkfp/specfun.hpp"

// Spectral classification (category I/II/III) and every eigenvalue and
// normalisation constant: discrete (lambda_n, rho_n), the continuum
// threshold Lambda, the continuous rho(mu) for Bessel/Fisher-Snedecor and
// the Romanovski Lambda_{i,j}(mu), rho_{i,j}(mu) pair.

namespace sinkfp {

enum class SpectralCategory { I, II, III };

struct DiscreteLevel {
    int n = 0;
    double lambda = 0.0;
    double rho = 0.0;
};

struct SpectrumDescriptor {
    SpectralCategory category = SpectralCategory::I;
    std::vector<DiscreteLevel> discrete;
    std::optional<double> Lambda;     // continuum threshold, if any
    bool discrete_infinite = false;   // Laguerre: discrete levels for all n
};

struct RomanovskiNorm {
    Complex lambda11;  // Lambda_{1,1} = conj(Lambda_{2,2})
    double lambda12 = 0.0;
    Complex rho11;     // rho_{1,1} = conj(rho_{2,2})
    double rho12 = 0.0;
};

inline constexpr int kLaguerreDefaultTruncation = 200;

/// Discrete eigenvalues and normalisation constants. For Laguerre the
/// spectrum is infinite and is truncated at `laguerre_truncation` levels;
/// the finite families list every admissible n (strictly below the bound).
inline std::vector<DiscreteLevel> discrete_spectrum(
    const ModelSpec& m, int laguerre_truncation = kLaguerreDefaultTruncation) {
    require_valid(m);
    std::vector<DiscreteLevel> out;
    double g = m.gamma;
    switch (m.kind) {
    case ModelKind::Laguerre: {
        double alpha = m.sigma + 2.0 * g;
        for (int n = 0; n < laguerre_truncation; ++n) {
            DiscreteLevel d;
            d.n = n;
            d.lambda = n + g;
            d.rho = std::exp(log_gamma(Complex(n + 1.0, 0.0)).real() -
                             log_gamma(Complex(n + alpha + 1.0, 0.0)).real());
            out.push_back(d);
        }
        break;
    }
    case ModelKind::Bessel: {
        double bound = -g - 0.5 * (m.sigma + 1.0);
        for (int n = 0; n + 1e-12 < bound; ++n) {
            DiscreteLevel d;
            d.n = n;
            d.lambda = -(g + n) * (g + m.sigma + n + 1.0);
            d.rho = (-2.0 * n - 2.0 * g - m.sigma - 1.0) /
                    (std::tgamma(n + 1.0) * gamma_r(-n - 2.0 * g - m.sigma));
            out.push_back(d);
        }
        break;
    }
    case ModelKind::FisherSnedecor: {
        double bound = -g - 0.5;
        for (int n = 0; n + 1e-12 < bound; ++n) {
            DiscreteLevel d;
            d.n = n;
            d.lambda = (m.sigma1 - g - n) * (g + m.sigma1 + n + 1.0);
            d.rho = (-2.0 * n - 1.0 - 2.0 * g) * gamma_r(-n - g + m.sigma2) /
                    (std::tgamma(n + 1.0) * gamma_r(-n - 2.0 * g) *
                     gamma_r(1.0 + n + g + m.sigma2));
            out.push_back(d);
        }
        break;
    }
    case ModelKind::Romanovski: {
        double bound = -g - 0.5;
        for (int n = 0; n + 1e-12 < bound; ++n) {
            DiscreteLevel d;
            d.n = n;
            d.lambda = (m.sigma1 - g - n) * (g + m.sigma1 + n + 1.0);
            d.rho = gamma_r(-n - 2.0 * g) *
                    abs_gamma_sq(Complex(-g - n, 0.5 * m.sigma2)) /
                    (std::pow(2.0, 2.0 * (n + g + 1.0)) * kPi *
                     std::tgamma(n + 1.0) * gamma_r(-2.0 * n - 2.0 * g - 1.0) *
                     gamma_r(-2.0 * n - 2.0 * g));
            out.push_back(d);
        }
        break;
    }
    }
    return out;
}

namespace detail {

struct BoundaryLimit {
    bool z_infinite = false;      // lim z(x) = +-inf at this boundary
    bool potential_infinite = false;
    double Lambda = 0.0;          // finite potential limit, when applicable
};

// Closed-form limits of z(x) and V along each natural boundary, read off
// the Liouville-transform rows: exponentially decaying terms drop out,
// polynomially growing ones dominate. `side` is +1 for the upper end of
// the support and -1 for the lower end.
inline BoundaryLimit boundary_limit(const ModelSpec& m, int side) {
    BoundaryLimit lim;
    switch (m.kind) {
    case ModelKind::Laguerre:
        if (side > 0) {
            lim.z_infinite = true;            // z = 2 sqrt(x)
            lim.potential_infinite = true;    // V ~ z^2/16
        } else {
            lim.z_infinite = false;           // z(0) = 0
        }
        break;
    case ModelKind::Bessel:
        lim.z_infinite = true;                // z = log x at both ends
        if (side > 0) {
            // e^{-z} and e^{-2z} vanish, the constant survives
            lim.potential_infinite = false;
            lim.Lambda = 0.25 * (m.sigma + 1.0) * (m.sigma + 1.0);
        } else {
            lim.potential_infinite = true;    // e^{-2z}/4 dominates
        }
        break;
    case ModelKind::FisherSnedecor:
        if (side > 0) {
            lim.z_infinite = true;            // z = 2 asinh(sqrt x)
            lim.potential_infinite = false;   // cosh z / sinh^2 z -> 0
            lim.Lambda = (m.sigma1 + 0.5) * (m.sigma1 + 0.5);
        } else {
            lim.z_infinite = false;           // z(0) = 0
        }
        break;
    case ModelKind::Romanovski:
        lim.z_infinite = true;                // z = asinh x
        lim.potential_infinite = false;       // sinh z / cosh^2 z -> 0
        lim.Lambda = (m.sigma1 + 0.5) * (m.sigma1 + 0.5);
        break;
    }
    return lim;
}

// Large-|x| probe of the closed-form limit; also checks the oscillation
// criterion z^2 (V - Lambda) > -1/4.
inline void probe_boundary(const ModelSpec& m, int side, const BoundaryLimit& lim) {
    double x_probe;
    if (side > 0) x_probe = 1e6;
    else x_probe = whole_line_support(m.kind) ? -1e6 : 1e-6;
    double z = z_of_x(m, x_probe);
    if (lim.z_infinite && std::abs(z) < 10.0)
        throw InvalidModel("classify: z(x) limit probe inconsistent");
    if (!lim.z_infinite) return;
    double V = liouville(m, z).potential;
    if (!lim.potential_infinite) {
        if (std::abs(V - lim.Lambda) > 1e-3 * (1.0 + std::abs(lim.Lambda)))
            throw InvalidModel("classify: potential limit probe inconsistent");
        if (z * z * (V - lim.Lambda) <= -0.25)
            throw InvalidModel("classify: non-oscillatory below threshold violated");
    } else if (std::abs(V) < 1e3) {
        throw InvalidModel("classify: divergent potential probe inconsistent");
    }
}

} // namespace detail

/// Classify the spectrum from the boundary behaviour of the Liouville
/// transform: no oscillatory boundary -> I, one -> II, two -> III.
inline SpectrumDescriptor classify(const ModelSpec& m) {
    require_valid(m);
    SpectrumDescriptor desc;
    int oscillatory = 0;
    std::optional<double> Lambda_up, Lambda_lo;
    for (int side : {-1, +1}) {
        detail::BoundaryLimit lim = detail::boundary_limit(m, side);
        detail::probe_boundary(m, side, lim);
        bool osc = lim.z_infinite && !lim.potential_infinite;
        if (osc) {
            ++oscillatory;
            (side > 0 ? Lambda_up : Lambda_lo) = lim.Lambda;
        }
    }
    if (oscillatory == 0) {
        desc.category = SpectralCategory::I;
    } else if (oscillatory == 1) {
        desc.category = SpectralCategory::II;
        desc.Lambda = Lambda_up ? *Lambda_up : *Lambda_lo;
    } else {
        if (std::abs(*Lambda_up - *Lambda_lo) > 1e-12)
            throw InvalidModel("classify: unequal thresholds at the two boundaries");
        desc.category = SpectralCategory::III;
        desc.Lambda = *Lambda_up;
    }
    desc.discrete = discrete_spectrum(m);
    desc.discrete_infinite = (m.kind == ModelKind::Laguerre);
    if (desc.Lambda) {
        for (const auto& d : desc.discrete)
            if (!(d.lambda < *desc.Lambda))
                throw InvalidModel("classify: discrete eigenvalue above threshold");
    }
    return desc;
}

/// Continuous-spectrum eigenvalue lambda(mu) = Lambda + mu^2.
inline double continuous_lambda(const ModelSpec& m, double mu) {
    switch (m.kind) {
    case ModelKind::Bessel:
        return 0.25 * (m.sigma + 1.0) * (m.sigma + 1.0) + mu * mu;
    case ModelKind::FisherSnedecor:
    case ModelKind::Romanovski:
        return (m.sigma1 + 0.5) * (m.sigma1 + 0.5) + mu * mu;
    default:
        throw InvalidModel("continuous_lambda: purely discrete spectrum");
    }
}

namespace detail {

inline Complex fs_pi_coefficient(const ModelSpec& m, double mu) {
    // Pi(mu) = Gamma(g+1+s2) Gamma(-2 i mu) / (Gamma(g+1/2-i mu) Gamma(1/2+s2-i mu))
    Complex i(0.0, 1.0);
    return std::exp(log_gamma(Complex(m.gamma + 1.0 + m.sigma2, 0.0)) +
                    log_gamma(-2.0 * i * mu) -
                    log_gamma(Complex(m.gamma + 0.5, -mu)) -
                    log_gamma(Complex(0.5 + m.sigma2, -mu)));
}

inline Complex rom_gamma_tilde(const ModelSpec& m, double mu) {
    Complex i(0.0, 1.0);
    return std::exp(log_gamma(Complex(m.gamma + 1.0, 0.5 * m.sigma2)) +
                    log_gamma(-2.0 * i * mu) -
                    log_gamma(Complex(m.gamma + 0.5, -mu)) -
                    log_gamma(Complex(0.5, 0.5 * m.sigma2 - mu)));
}

} // namespace detail

/// Continuous normalisation rho(mu) for the Bessel and Fisher-Snedecor
/// mixed spectra.
inline double continuous_norm(const ModelSpec& m, double mu) {
    require_valid(m);
    if (!(mu > 1e-10))
        throw DegenerateMu("continuous_norm: mu too close to 0");
    switch (m.kind) {
    case ModelKind::Bessel: {
        Complex top(m.gamma + 0.5 * (m.sigma + 1.0), mu);
        return abs_gamma_sq(top) /
               (2.0 * kPi * abs_gamma_sq(Complex(0.0, 2.0 * mu)));
    }
    case ModelKind::FisherSnedecor: {
        Complex pi_mu = detail::fs_pi_coefficient(m, mu);
        return 1.0 / (2.0 * kPi * std::norm(pi_mu));
    }
    default:
        throw InvalidModel("continuous_norm: defined for Bessel and Fisher-Snedecor");
    }
}

/// The Romanovski continuous normalisation matrix at mu: Lambda_{i,j} and
/// rho_{i,j} with the conjugation structure Lambda11 = conj(Lambda22),
/// Lambda12 = Lambda21 real.
inline RomanovskiNorm romanovski_norm(const ModelSpec& m, double mu) {
    require_valid(m);
    if (m.kind != ModelKind::Romanovski)
        throw InvalidModel("romanovski_norm: Romanovski models only");
    if (!(mu > 1e-10))
        throw DegenerateMu("romanovski_norm: mu too close to 0");
    double g = m.gamma, s2 = m.sigma2;
    Complex gt_p = detail::rom_gamma_tilde(m, mu);
    Complex gt_m = detail::rom_gamma_tilde(m, -mu);
    RomanovskiNorm r;
    r.lambda11 = std::pow(2.0, 2.0 * g + 3.0) * kPi * gt_p * gt_m *
                 std::cosh(0.5 * kPi * Complex(s2, -(2.0 * g + 1.0)));
    r.lambda12 = std::pow(2.0, 2.0 * g + 2.0) * kPi *
                 (std::norm(gt_p) * std::cosh(0.5 * kPi * (s2 + 2.0 * mu)) +
                  std::norm(gt_m) * std::cosh(0.5 * kPi * (s2 - 2.0 * mu)));
    double den = std::norm(r.lambda11) - r.lambda12 * r.lambda12;
    if (std::abs(den) < 1e-280)
        throw DegenerateMu("romanovski_norm: |Lambda11|^2 - Lambda12^2 vanished");
    r.rho11 = std::conj(r.lambda11) / den;
    r.rho12 = -r.lambda12 / den;
    return r;
}

} // namespace sinkfp

#endif // SINKFP_SPECTRUM_HPP
