#ifndef SINKFP_MODELS_HPP
#define SINKFP_MODELS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "sinkfp/errors.hpp"

// The four model families: canonical diffusion/drift/sink coefficients,
// weight functions, the s^varkappa eigenfunction decomposition and the
// Liouville transformation data.

namespace sinkfp {

enum class ModelKind { Laguerre, Bessel, FisherSnedecor, Romanovski };

inline const char* to_string(ModelKind k) {
    switch (k) {
    case ModelKind::Laguerre: return "laguerre";
    case ModelKind::Bessel: return "bessel";
    case ModelKind::FisherSnedecor: return "fisher-snedecor";
    case ModelKind::Romanovski: return "romanovski";
    }
    return "?";
}

struct ModelSpec {
    ModelKind kind = ModelKind::Laguerre;
    double gamma = 0.0;   // sink parameter
    double sigma = 0.0;   // Laguerre / Bessel
    double sigma1 = 0.0;  // Fisher-Snedecor / Romanovski
    double sigma2 = 0.0;  // Fisher-Snedecor / Romanovski

    static ModelSpec laguerre(double gamma, double sigma) {
        ModelSpec m; m.kind = ModelKind::Laguerre; m.gamma = gamma; m.sigma = sigma; return m;
    }
    static ModelSpec bessel(double gamma, double sigma) {
        ModelSpec m; m.kind = ModelKind::Bessel; m.gamma = gamma; m.sigma = sigma; return m;
    }
    static ModelSpec fisher_snedecor(double gamma, double sigma1, double sigma2) {
        ModelSpec m; m.kind = ModelKind::FisherSnedecor; m.gamma = gamma;
        m.sigma1 = sigma1; m.sigma2 = sigma2; return m;
    }
    static ModelSpec romanovski(double gamma, double sigma1, double sigma2) {
        ModelSpec m; m.kind = ModelKind::Romanovski; m.gamma = gamma;
        m.sigma1 = sigma1; m.sigma2 = sigma2; return m;
    }
};

struct Coefficients {
    double s = 0.0; // diffusion
    double q = 0.0; // drift
    double r = 0.0; // sink
};

struct BarredData {
    double varkappa = 0.0;
    double qbar_slope = 0.0;
    double qbar_intercept = 0.0;
    double rbar = 0.0;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Support is the positive half line for all families except Romanovski.
inline bool whole_line_support(ModelKind k) { return k == ModelKind::Romanovski; }

inline bool in_support(const ModelSpec& m, double x) {
    return whole_line_support(m.kind) ? std::isfinite(x) : x > 0.0;
}

/// Canonical (s, q, r) at x.
inline Coefficients coefficients(const ModelSpec& m, double x) {
    if (!in_support(m, x))
        throw OutOfSupport("coefficients: x outside the open support");
    Coefficients c;
    switch (m.kind) {
    case ModelKind::Laguerre:
        c.s = x;
        c.q = m.sigma + 1.0 - x;
        c.r = m.gamma * (m.gamma + m.sigma) / x;
        break;
    case ModelKind::Bessel:
        c.s = x * x;
        c.q = (m.sigma + 2.0) * x + 1.0;
        c.r = m.gamma / x;
        break;
    case ModelKind::FisherSnedecor:
        c.s = x * x + x;
        c.q = 2.0 * (m.sigma1 + 1.0) * x + m.sigma1 + m.sigma2 + 1.0;
        c.r = (m.gamma - m.sigma1) *
              (m.gamma + m.sigma1 + 2.0 * m.sigma2 * (1.0 + 2.0 * x)) /
              (4.0 * x * (x + 1.0));
        break;
    case ModelKind::Romanovski:
        c.s = x * x + 1.0;
        c.q = 2.0 * (m.sigma1 + 1.0) * x + m.sigma2;
        c.r = (m.sigma1 - m.gamma) * (m.gamma + m.sigma1 - m.sigma2 * x) /
              (x * x + 1.0);
        break;
    }
    return c;
}

inline double log_weight(const ModelSpec& m, double x) {
    if (!in_support(m, x))
        throw OutOfSupport("weight: x outside the open support");
    switch (m.kind) {
    case ModelKind::Laguerre:
        return m.sigma * std::log(x) - x;
    case ModelKind::Bessel:
        return m.sigma * std::log(x) - 1.0 / x;
    case ModelKind::FisherSnedecor:
        return (m.sigma1 + m.sigma2) * std::log(x) +
               (m.sigma1 - m.sigma2) * std::log(x + 1.0);
    case ModelKind::Romanovski:
        // arctan on the principal branch keeps W continuous on the whole line
        return m.sigma1 * std::log(x * x + 1.0) + m.sigma2 * std::atan(x);
    }
    return 0.0;
}

/// Weight function W(x) on the open support.
inline double weight(const ModelSpec& m, double x) {
    return std::exp(log_weight(m, x));
}

namespace detail {

inline BarredData barred_table(const ModelSpec& m) {
    BarredData b;
    switch (m.kind) {
    case ModelKind::Laguerre:
        b.varkappa = m.gamma;
        b.qbar_slope = -1.0;
        b.qbar_intercept = 2.0 * m.gamma + m.sigma + 1.0;
        b.rbar = m.gamma;
        break;
    case ModelKind::Bessel:
        b.varkappa = 0.5 * m.gamma;
        b.qbar_slope = 2.0 * m.gamma + m.sigma + 2.0;
        b.qbar_intercept = 1.0;
        b.rbar = -m.gamma * (m.gamma + m.sigma + 1.0);
        break;
    case ModelKind::FisherSnedecor:
        b.varkappa = 0.5 * (m.gamma - m.sigma1);
        b.qbar_slope = 2.0 * (m.gamma + 1.0);
        b.qbar_intercept = m.gamma + m.sigma2 + 1.0;
        b.rbar = (m.sigma1 - m.gamma) * (m.gamma + m.sigma1 + 1.0);
        break;
    case ModelKind::Romanovski:
        b.varkappa = 0.5 * (m.gamma - m.sigma1);
        b.qbar_slope = 2.0 * (m.gamma + 1.0);
        b.qbar_intercept = m.sigma2;
        b.rbar = (m.sigma1 - m.gamma) * (m.gamma + m.sigma1 + 1.0);
        break;
    }
    return b;
}

// s'(x) and s''(x) for the quadratic diffusion coefficients.
inline void diffusion_derivs(const ModelSpec& m, double x, double& s1, double& s2) {
    switch (m.kind) {
    case ModelKind::Laguerre: s1 = 1.0; s2 = 0.0; break;
    case ModelKind::Bessel: s1 = 2.0 * x; s2 = 2.0; break;
    case ModelKind::FisherSnedecor: s1 = 2.0 * x + 1.0; s2 = 2.0; break;
    case ModelKind::Romanovski: s1 = 2.0 * x; s2 = 2.0; break;
    }
}

} // namespace detail

/// Eigenfunction decomposition theta = s^varkappa * phi: exponent varkappa,
/// the linear qbar(x) and the constant rbar. The tabulated row is verified
/// against qbar = 2 varkappa s' + q and the rbar expression at sample points.
inline BarredData barred(const ModelSpec& m) {
    BarredData b = detail::barred_table(m);
    const double probes[] = {0.37, 1.13, 2.71};
    for (double x : probes) {
        Coefficients c = coefficients(m, x);
        double s1, s2;
        detail::diffusion_derivs(m, x, s1, s2);
        double qbar = 2.0 * b.varkappa * s1 + c.q;
        double rbar = c.r - b.varkappa *
            (s2 + ((b.varkappa - 1.0) * s1 * s1 + c.q * s1) / c.s);
        if (std::abs(qbar - (b.qbar_slope * x + b.qbar_intercept)) >
                1e-10 * (1.0 + std::abs(qbar)) ||
            std::abs(rbar - b.rbar) > 1e-10 * (1.0 + std::abs(rbar)))
            throw InvalidModel("barred: tabulated decomposition inconsistent");
    }
    if (b.rbar < -1e-12)
        throw NegativeRbar("barred: rbar = " + std::to_string(b.rbar) +
                           " < 0, operator not negative");
    return b;
}

struct LiouvillePoint {
    double x = 0.0;         // x(z)
    double potential = 0.0; // V(x(z))
    double amplitude = 0.0; // sqrt(W(x(z)) sqrt(s(x(z))))
};

/// z(x), the Liouville variable (closed forms of int dx/sqrt(s)).
inline double z_of_x(const ModelSpec& m, double x) {
    if (!in_support(m, x)) throw OutOfSupport("z_of_x: x outside the support");
    switch (m.kind) {
    case ModelKind::Laguerre: return 2.0 * std::sqrt(x);
    case ModelKind::Bessel: return std::log(x);
    case ModelKind::FisherSnedecor: return 2.0 * std::asinh(std::sqrt(x));
    case ModelKind::Romanovski: return std::asinh(x);
    }
    return 0.0;
}

/// The Liouville transformation triple at z: x(z), the potential and the
/// amplitude factor sqrt(W sqrt(s)).
inline LiouvillePoint liouville(const ModelSpec& m, double z) {
    LiouvillePoint p;
    double g = m.gamma, s = m.sigma, s1 = m.sigma1, s2 = m.sigma2;
    switch (m.kind) {
    case ModelKind::Laguerre: {
        if (z <= 0.0) throw OutOfSupport("liouville: z > 0 required");
        p.x = 0.25 * z * z;
        p.potential = z * z / 16.0 +
                      (4.0 * g * (s + g) + s * s - 0.25) / (z * z) -
                      0.5 * (s + 1.0);
        p.amplitude = std::pow(0.5 * z, s + 0.5) * std::exp(-z * z / 8.0);
        break;
    }
    case ModelKind::Bessel: {
        p.x = std::exp(z);
        p.potential = 0.5 * (s + 2.0 * g) * std::exp(-z) +
                      0.25 * std::exp(-2.0 * z) +
                      0.25 * (s + 1.0) * (s + 1.0);
        p.amplitude = std::exp(0.5 * (s + 1.0) * z - 0.5 * std::exp(-z));
        break;
    }
    case ModelKind::FisherSnedecor: {
        if (z <= 0.0) throw OutOfSupport("liouville: z > 0 required");
        double sh = std::sinh(0.5 * z);
        p.x = sh * sh;
        double shz = std::sinh(z);
        p.potential = (g * g + s2 * s2 - 0.25 + 2.0 * g * s2 * std::cosh(z)) /
                          (shz * shz) +
                      (s1 + 0.5) * (s1 + 0.5);
        p.amplitude = std::pow(0.5 * shz, s1 + 0.5) *
                      std::pow(std::tanh(0.5 * z), s2);
        break;
    }
    case ModelKind::Romanovski: {
        double sh = std::sinh(z), ch = std::cosh(z);
        p.x = sh;
        p.potential = (0.25 - g * g + 0.25 * s2 * s2 + g * s2 * sh) / (ch * ch) +
                      (s1 + 0.5) * (s1 + 0.5);
        p.amplitude = std::pow(ch, s1 + 0.5) *
                      std::exp(0.5 * s2 * std::atan(sh));
        break;
    }
    }
    return p;
}

/// Parameter restrictions per family; reports every violated inequality.
inline ValidationReport validate(const ModelSpec& m) {
    ValidationReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back(msg);
    };
    switch (m.kind) {
    case ModelKind::Laguerre:
        if (!(m.gamma >= 0.0)) fail("gamma >= 0 required");
        if (!(m.sigma + 2.0 * m.gamma > -1.0)) fail("sigma + 2*gamma > -1 required");
        break;
    case ModelKind::Bessel:
        if (!(m.gamma * (m.gamma + m.sigma + 1.0) <= 0.0))
            fail("gamma*(gamma+sigma+1) <= 0 required");
        if (!(m.sigma + 2.0 * m.gamma < -1.0)) fail("sigma + 2*gamma < -1 required");
        break;
    case ModelKind::FisherSnedecor:
        if (!((m.sigma1 - m.gamma) * (m.gamma + m.sigma1 + 1.0) >= 0.0))
            fail("(sigma1-gamma)*(gamma+sigma1+1) >= 0 required");
        if (!(2.0 * m.gamma < -1.0)) fail("2*gamma < -1 required");
        break;
    case ModelKind::Romanovski:
        if (!((m.sigma1 - m.gamma) * (m.gamma + m.sigma1 + 1.0) >= 0.0))
            fail("(sigma1-gamma)*(gamma+sigma1+1) >= 0 required");
        if (!(2.0 * m.gamma < -1.0)) fail("2*gamma < -1 required");
        break;
    }
    if (rep.ok) {
        BarredData b = detail::barred_table(m);
        if (b.rbar < -1e-12) fail("rbar >= 0 required (operator negativity)");
    }
    return rep;
}

inline void require_valid(const ModelSpec& m) {
    ValidationReport rep = validate(m);
    if (!rep.ok) {
        std::string msg;
        for (const auto& v : rep.violations) {
            if (!msg.empty()) msg += "; ";
            msg += v;
        }
        throw InvalidModel(std::string(to_string(m.kind)) + ": " + msg);
    }
}

} // namespace sinkfp

#endif // SINKFP_MODELS_HPP
