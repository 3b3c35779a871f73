#ifndef SINKFP_QUADRATURE_HPP
#define SINKFP_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "sinkfp/errors.hpp"

namespace sinkfp {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

/// Equal-width Gauss-Legendre panels on [lo, hi]; nodes listed panel by panel.
struct PanelRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline PanelRule panel_rule(double lo, double hi, int panels, int nodes_per_panel) {
    const GaussRule& g = gauss_legendre(nodes_per_panel);
    PanelRule r;
    r.nodes.reserve(std::size_t(panels) * nodes_per_panel);
    r.weights.reserve(std::size_t(panels) * nodes_per_panel);
    double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = lo + p * width;
        double mid = a + 0.5 * width, half = 0.5 * width;
        for (int k = 0; k < nodes_per_panel; ++k) {
            r.nodes.push_back(mid + half * g.nodes[k]);
            r.weights.push_back(half * g.weights[k]);
        }
    }
    return r;
}

/// Deterministic pairwise sum of w[i]*f(x[i]).
template <typename F>
double panel_sum(const PanelRule& rule, F&& f) {
    std::vector<double> vals(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        vals[i] = rule.weights[i] * f(rule.nodes[i]);
    // pairwise reduction
    std::size_t n = vals.size();
    while (n > 1) {
        std::size_t h = (n + 1) / 2;
        for (std::size_t i = 0; i + h < n; ++i) vals[i] += vals[i + h];
        n = h;
    }
    return n ? vals[0] : 0.0;
}

namespace detail {

// Gauss-Kronrod 7-15 pair (QUADPACK dqk15 constants).
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <typename F>
void gk15(F&& f, double a, double b, double& kronrod, double& err) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double fc = f(mid);
    double resg = fc * kGaussWeights[3];
    double resk = fc * kKronrodWeights[7];
    for (int j = 0; j < 7; ++j) {
        double x = half * kKronrodNodes[j];
        double f1 = f(mid - x), f2 = f(mid + x);
        resk += kKronrodWeights[j] * (f1 + f2);
        if (j % 2 == 1) resg += kGaussWeights[j / 2] * (f1 + f2);
    }
    kronrod = resk * half;
    err = std::abs((resk - resg) * half);
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b].
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-10,
                          double abs_tol = 1e-14, int max_intervals = 4000) {
    struct Seg { double a, b, val, err; };
    std::vector<Seg> segs;
    double v, e;
    detail::gk15(f, a, b, v, e);
    segs.push_back({a, b, v, e});
    double total = v, total_err = e;
    int used = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (used >= max_intervals)
            throw QuadratureFailure("integrate_adaptive: interval budget exhausted");
        // split the segment with the largest error
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        Seg s = segs[worst];
        double m = 0.5 * (s.a + s.b);
        Seg left, right;
        left.a = s.a; left.b = m;
        right.a = m; right.b = s.b;
        detail::gk15(f, left.a, left.b, left.val, left.err);
        detail::gk15(f, right.a, right.b, right.val, right.err);
        total += left.val + right.val - s.val;
        total_err += left.err + right.err - s.err;
        segs[worst] = left;
        segs.push_back(right);
        ++used;
    }
    // deterministic pairwise re-sum of segment values
    std::vector<double> vals(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) vals[i] = segs[i].val;
    std::size_t n = vals.size();
    while (n > 1) {
        std::size_t h = (n + 1) / 2;
        for (std::size_t i = 0; i + h < n; ++i) vals[i] += vals[i + h];
        n = h;
    }
    return vals[0];
}

} // namespace sinkfp

#endif // SINKFP_QUADRATURE_HPP
