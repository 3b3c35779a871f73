#ifndef SINKFP_DENSITY_HPP
#define SINKFP_DENSITY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "sinkfp/eigenfunctions.hpp"
#include "sinkfp/models.hpp"
#include "sinkfp/quadrature.hpp"
#include "sinkfp/specfun.hpp"
#include "sinkfp/spectrum.hpp"

// Assembly of the time-dependent density T(x, t | y): discrete sums plus
// continuum quadrature over mu, the Laguerre closed form, mass integration
// and grid evaluation.

namespace sinkfp {

// Below this the continuum quadrature would need mu_max > 60 and the
// expansion loses accuracy; callers are pointed at the FD solver instead.
inline constexpr double kTMin = 0.01;

struct QuadratureSpec {
    double mu_max = 0.0;      // <= 0 selects sqrt(37 / t)
    int panels = 16;
    int nodes_per_panel = 32;
    int max_doublings = 3;
    double refine_tol = 1e-8;
};

struct DensityGrid {
    std::vector<double> x_nodes;
    std::vector<double> values;
    double t = 0.0;
    double y = 0.0;
    double mass = std::numeric_limits<double>::quiet_NaN();
    ModelSpec model;
    double min_before_clamp = 0.0; // smallest raw value before clamping
};

namespace detail {

// Generalised Laguerre sequence L_0..L_{nmax-1} by the three-term recurrence.
inline std::vector<double> laguerre_sequence(double alpha, double x, int nmax) {
    std::vector<double> L(nmax);
    if (nmax > 0) L[0] = 1.0;
    if (nmax > 1) L[1] = 1.0 + alpha - x;
    for (int n = 1; n + 1 < nmax; ++n)
        L[n + 1] = ((2.0 * n + 1.0 + alpha - x) * L[n] - (n + alpha) * L[n - 1]) /
                   (n + 1.0);
    return L;
}

inline double pairwise_sum(std::vector<double>& v) {
    std::size_t n = v.size();
    if (n == 0) return 0.0;
    while (n > 1) {
        std::size_t h = (n + 1) / 2;
        for (std::size_t i = 0; i + h < n; ++i) v[i] += v[i + h];
        n = h;
    }
    return v[0];
}

} // namespace detail

/// Laguerre density via the modified-Bessel closed form, evaluated in log
/// scale so that small t and large x stay representable.
inline double laguerre_closed_form(const ModelSpec& m, double x, double t, double y) {
    require_valid(m);
    if (m.kind != ModelKind::Laguerre)
        throw InvalidModel("laguerre_closed_form: Laguerre models only");
    if (!(t > 0.0)) throw TimeTooSmall("laguerre_closed_form: t > 0 required");
    if (!(x > 0.0) || !(y > 0.0))
        throw OutOfSupport("laguerre_closed_form: x, y > 0 required");
    double s = m.sigma;
    double emt = std::exp(-t);
    double denom = -std::expm1(-t); // 1 - e^{-t}
    double w = 2.0 * std::sqrt(x * y * emt) / denom;
    double logT = 0.5 * s * (std::log(x) - std::log(y)) + 0.5 * s * t -
                  (x + y * emt) / denom - std::log(denom) +
                  bessel_i_log(s + 2.0 * m.gamma, w);
    return std::exp(logT);
}

/// Truncated eigenfunction series for the Laguerre density (validation
/// route against the closed form).
inline double laguerre_series_density(const ModelSpec& m, double x, double t,
                                      double y, int n_terms) {
    require_valid(m);
    if (m.kind != ModelKind::Laguerre)
        throw InvalidModel("laguerre_series_density: Laguerre models only");
    double alpha = m.sigma + 2.0 * m.gamma;
    std::vector<double> Lx = detail::laguerre_sequence(alpha, x, n_terms);
    std::vector<double> Ly = detail::laguerre_sequence(alpha, y, n_terms);
    std::vector<double> terms(n_terms);
    double logw = log_weight(m, x);
    for (int n = 0; n < n_terms; ++n) {
        double rho = std::exp(log_gamma(Complex(n + 1.0, 0.0)).real() -
                              log_gamma(Complex(n + alpha + 1.0, 0.0)).real());
        terms[n] = std::exp(-(n + m.gamma) * t + logw) * rho *
                   std::pow(x, m.gamma) * Lx[n] * std::pow(y, m.gamma) * Ly[n];
    }
    return detail::pairwise_sum(terms);
}

/// Evaluates T(x, t | y) for a fixed model, time and start point; the
/// y-side eigenfunction data and the mu quadrature nodes are prepared once
/// so that grids reuse them. Thread-safe after construction.
class DensityEvaluator {
public:
    DensityEvaluator(const ModelSpec& m, double t, double y, QuadratureSpec q = {})
        : m_(m), t_(t), y_(y) {
        require_valid(m);
        if (t < kTMin - 1e-15)
            throw TimeTooSmall("density: t < " + std::to_string(kTMin) +
                               "; use the finite-difference oracle for smaller times");
        if (!in_support(m, y)) throw OutOfSupport("density: y outside support");

        if (m.kind == ModelKind::Laguerre) {
            int n_terms = kLaguerreDefaultTruncation;
            double alpha = m.sigma + 2.0 * m.gamma;
            std::vector<double> Ly = detail::laguerre_sequence(alpha, y, n_terms);
            disc_coeff_.resize(n_terms);
            for (int n = 0; n < n_terms; ++n) {
                double rho = std::exp(log_gamma(Complex(n + 1.0, 0.0)).real() -
                                      log_gamma(Complex(n + alpha + 1.0, 0.0)).real());
                disc_coeff_[n] = std::exp(-(n + m.gamma) * t) * rho *
                                 std::pow(y, m.gamma) * Ly[n];
            }
            return;
        }

        for (const DiscreteLevel& d : discrete_spectrum(m)) {
            disc_levels_.push_back(d);
            disc_coeff_.push_back(std::exp(-d.lambda * t) * d.rho *
                                  discrete_eig(m, d.n, y));
        }

        double mu_max = q.mu_max > 0.0 ? q.mu_max : std::sqrt(37.0 / t);
        int panels = q.panels;
        build_nodes(mu_max, panels, q.nodes_per_panel);
        double ref = continuum_at(y);
        for (int k = 0; k < q.max_doublings; ++k) {
            auto prev_mu = mu_;
            auto prev_r = coeff_r_;
            auto prev_c = coeff_c_;
            double prev_w = last_weight_;
            build_nodes(mu_max, 2 * panels, q.nodes_per_panel);
            double refined = continuum_at(y);
            double diff = std::abs(refined - ref);
            ref = refined;
            if (diff < q.refine_tol * std::max(1.0, std::abs(refined))) {
                // the coarse level already agrees; keep it for grid work
                mu_ = std::move(prev_mu);
                coeff_r_ = std::move(prev_r);
                coeff_c_ = std::move(prev_c);
                last_weight_ = prev_w;
                converged_ = true;
                break;
            }
            panels *= 2;
        }
        if (!converged_)
            throw QuadratureFailure("density: mu quadrature did not settle after doubling");
        panels_used_ = panels;
        // tail beyond mu_max, estimated from the damped integrand at the
        // last node; catches user-supplied mu_max cut too early
        if (!mu_.empty()) {
            double amp = (m_.kind == ModelKind::Romanovski
                              ? 2.0 * std::abs(coeff_c_.back())
                              : std::abs(coeff_r_.back())) / last_weight_;
            double tail = amp / (2.0 * mu_.back() * t_);
            if (tail > 1e-6 * std::max(1.0, std::abs(ref)))
                throw QuadratureFailure("density: mu_max too small, tail estimate " +
                                        std::to_string(tail));
        }
    }

    double t() const { return t_; }
    double y() const { return y_; }
    const ModelSpec& model() const { return m_; }
    int panels_used() const { return panels_used_; }

    /// Full density T(x, t | y).
    double operator()(double x) const {
        if (!in_support(m_, x)) throw OutOfSupport("density: x outside support");
        return std::exp(log_weight(m_, x)) * bracket(x);
    }

    /// The bracket sum(discrete) + integral(continuum), without W(x).
    double bracket(double x) const {
        if (m_.kind == ModelKind::Laguerre) return laguerre_bracket(x);
        std::vector<double> terms;
        terms.reserve(disc_levels_.size() + mu_.size());
        for (std::size_t j = 0; j < disc_levels_.size(); ++j)
            terms.push_back(disc_coeff_[j] * discrete_eig(m_, disc_levels_[j].n, x));
        if (m_.kind == ModelKind::Romanovski) {
            for (std::size_t k = 0; k < mu_.size(); ++k) {
                Complex chix = continuous_eig_rom_ex(m_, 1, mu_[k], x).value;
                terms.push_back(2.0 * (coeff_c_[k] * chix).real());
            }
        } else {
            for (std::size_t k = 0; k < mu_.size(); ++k) {
                double thx = continuous_eig(m_, mu_[k], x).real();
                terms.push_back(coeff_r_[k] * thx);
            }
        }
        return detail::pairwise_sum(terms);
    }

private:
    void build_nodes(double mu_max, int panels, int nodes_per_panel) {
        PanelRule rule = panel_rule(0.0, mu_max, panels, nodes_per_panel);
        mu_ = std::move(rule.nodes);
        last_weight_ = rule.weights.back();
        // keep nodes clear of the Gamma(-2 i mu) degeneracy at mu = 0
        for (double& mu : mu_)
            if (mu < 1e-8) mu = 1e-8;
        coeff_r_.clear();
        coeff_c_.clear();
        if (m_.kind == ModelKind::Romanovski) {
            coeff_c_.resize(mu_.size());
            for (std::size_t k = 0; k < mu_.size(); ++k) {
                double damp = std::exp(-continuous_lambda(m_, mu_[k]) * t_);
                RomanovskiNorm rn = romanovski_norm(m_, mu_[k]);
                Complex chiy = continuous_eig_rom_ex(m_, 1, mu_[k], y_).value;
                coeff_c_[k] = rule.weights[k] * damp *
                              (rn.rho11 * chiy + rn.rho12 * std::conj(chiy));
            }
        } else {
            coeff_r_.resize(mu_.size());
            for (std::size_t k = 0; k < mu_.size(); ++k) {
                double damp = std::exp(-continuous_lambda(m_, mu_[k]) * t_);
                double rho = continuous_norm(m_, mu_[k]);
                double thy = continuous_eig(m_, mu_[k], y_).real();
                coeff_r_[k] = rule.weights[k] * damp * rho * thy;
            }
        }
    }

    double continuum_at(double x) const {
        std::vector<double> terms;
        terms.reserve(mu_.size());
        if (m_.kind == ModelKind::Romanovski) {
            for (std::size_t k = 0; k < mu_.size(); ++k) {
                Complex chix = continuous_eig_rom_ex(m_, 1, mu_[k], x).value;
                terms.push_back(2.0 * (coeff_c_[k] * chix).real());
            }
        } else {
            for (std::size_t k = 0; k < mu_.size(); ++k)
                terms.push_back(coeff_r_[k] * continuous_eig(m_, mu_[k], x).real());
        }
        return detail::pairwise_sum(terms);
    }

    double laguerre_bracket(double x) const {
        double alpha = m_.sigma + 2.0 * m_.gamma;
        std::vector<double> Lx =
            detail::laguerre_sequence(alpha, x, int(disc_coeff_.size()));
        double xg = std::pow(x, m_.gamma);
        std::vector<double> terms;
        terms.reserve(disc_coeff_.size());
        double running = 0.0;
        int small_run = 0;
        for (std::size_t n = 0; n < disc_coeff_.size(); ++n) {
            double term = disc_coeff_[n] * xg * Lx[n];
            terms.push_back(term);
            running += term;
            if (std::abs(term) < 1e-16 * std::abs(running)) {
                if (++small_run >= 3) break;
            } else {
                small_run = 0;
            }
        }
        return detail::pairwise_sum(terms);
    }

    ModelSpec m_;
    double t_, y_;
    std::vector<DiscreteLevel> disc_levels_;
    std::vector<double> disc_coeff_;
    std::vector<double> mu_;
    std::vector<double> coeff_r_;
    std::vector<Complex> coeff_c_;
    double last_weight_ = 1.0;
    bool converged_ = false;
    int panels_used_ = 0;
};

/// Point evaluation of T(x, t | y). The Laguerre family dispatches to the
/// Hille-Hardy closed form.
inline double density(const ModelSpec& m, double x, double t, double y,
                      const QuadratureSpec& q = {}) {
    if (m.kind == ModelKind::Laguerre) {
        require_valid(m);
        return laguerre_closed_form(m, x, t, y);
    }
    DensityEvaluator ev(m, t, y, q);
    return ev(x);
}

/// Grid evaluation; x-nodes may be processed by several threads, the output
/// ordering and per-node values do not depend on the thread count.
inline DensityGrid density_grid(const ModelSpec& m, std::vector<double> x_nodes,
                                double t, double y, const QuadratureSpec& q = {},
                                int n_threads = 1) {
    DensityGrid grid;
    grid.model = m;
    grid.t = t;
    grid.y = y;
    grid.values.resize(x_nodes.size());

    if (m.kind == ModelKind::Laguerre) {
        require_valid(m);
        for (std::size_t i = 0; i < x_nodes.size(); ++i)
            grid.values[i] = laguerre_closed_form(m, x_nodes[i], t, y);
    } else {
        DensityEvaluator ev(m, t, y, q);
        auto worker = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) grid.values[i] = ev(x_nodes[i]);
        };
        int nt = std::max(1, n_threads);
        if (nt == 1 || x_nodes.size() < 8) {
            worker(0, x_nodes.size());
        } else {
            std::vector<std::thread> pool;
            std::size_t chunk = (x_nodes.size() + nt - 1) / nt;
            for (int k = 0; k < nt; ++k) {
                std::size_t lo = std::size_t(k) * chunk;
                std::size_t hi = std::min(x_nodes.size(), lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(worker, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
    }

    double mn = 0.0;
    for (double v : grid.values) mn = std::min(mn, v);
    grid.min_before_clamp = mn;
    for (double& v : grid.values)
        if (v < 0.0 && v >= -1e-8) v = 0.0;
    grid.x_nodes = std::move(x_nodes);
    return grid;
}

/// Total mass integral of T(., t | y) over the support, through a
/// compactifying substitution (u/(1-u) on the half line, tan v on the line).
inline double total_mass(const ModelSpec& m, double t, double y,
                         const QuadratureSpec& q = {}) {
    require_valid(m);
    if (m.kind == ModelKind::Laguerre) {
        auto f = [&](double u) {
            double om = 1.0 - u;
            double x = u / om;
            return laguerre_closed_form(m, x, t, y) / (om * om);
        };
        return integrate_adaptive(f, 0.0, 1.0, 1e-9);
    }
    DensityEvaluator ev(m, t, y, q);
    if (whole_line_support(m.kind)) {
        auto f = [&](double v) {
            double c = std::cos(v);
            return ev(std::tan(v)) / (c * c);
        };
        const double kHalfPi = 0.5 * kPi;
        return integrate_adaptive(f, -kHalfPi + 1e-12, kHalfPi - 1e-12, 1e-9);
    }
    auto f = [&](double u) {
        double om = 1.0 - u;
        double x = u / om;
        if (x <= 0.0) return 0.0;
        return ev(x) / (om * om);
    };
    return integrate_adaptive(f, 0.0, 1.0 - 1e-14, 1e-9);
}

} // namespace sinkfp

#endif // SINKFP_DENSITY_HPP
