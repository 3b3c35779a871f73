#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "sinkfp/density.hpp"
#include "test_helpers.hpp"

using namespace sinkfp;
using Catch::Approx;

namespace {

const ModelSpec kRomFig2 = ModelSpec::romanovski(-0.6, -2.7, 2.1);
const ModelSpec kFS = ModelSpec::fisher_snedecor(-0.8, -1.0, 0.7);
const ModelSpec kBessel = ModelSpec::bessel(0.5, -4.0);

} // namespace

TEST_CASE("laguerre closed form against the truncated series") {
    ModelSpec m = ModelSpec::laguerre(0.5, 1.0);
    double closed = laguerre_closed_form(m, 1.3, 0.8, 0.7);
    CHECK(closed == Approx(0.20328240399099959).epsilon(1e-12)); // mp anchor
    CHECK(laguerre_series_density(m, 1.3, 0.8, 0.7, 150) ==
          Approx(closed).margin(1e-8));

    std::mt19937 rng(808);
    std::uniform_real_distribution<double> xd(0.2, 4.0), td(0.3, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        ModelSpec mm = testutil::random_model(ModelKind::Laguerre, rng);
        double x = xd(rng), y = xd(rng), t = td(rng);
        double c = laguerre_closed_form(mm, x, t, y);
        double s = laguerre_series_density(mm, x, t, y, 150);
        CHECK(std::abs(c - s) < 1e-8 * (1.0 + std::abs(c)));
    }
}

TEST_CASE("laguerre closed form long-time limit is the stationary weight") {
    // gamma = 0: T(x, t -> inf | y) -> x^sigma e^{-x} / Gamma(sigma+1)
    ModelSpec m = ModelSpec::laguerre(0.0, 1.4);
    for (double x : {0.4, 1.1, 2.7}) {
        double want = std::exp(log_weight(m, x)) / gamma_r(m.sigma + 1.0);
        CHECK(laguerre_closed_form(m, x, 30.0, 0.9) == Approx(want).margin(1e-6));
    }
}

TEST_CASE("laguerre detailed balance T(x,t|y)/W(x) symmetric") {
    ModelSpec m = ModelSpec::laguerre(0.7, 0.9);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> xd(0.2, 5.0), td(0.05, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        double x = xd(rng), y = xd(rng), t = td(rng);
        double a = laguerre_closed_form(m, x, t, y) / std::exp(log_weight(m, x));
        double b = laguerre_closed_form(m, y, t, x) / std::exp(log_weight(m, y));
        CHECK(std::abs(a - b) < 1e-9 * (std::abs(a) + 1e-30));
    }
}

TEST_CASE("sink-free Laguerre conserves mass") {
    ModelSpec m = ModelSpec::laguerre(0.0, 0.0);
    for (double t : {0.1, 1.0, 10.0}) {
        CHECK(total_mass(m, t, 0.8) == Approx(1.0).margin(1e-6));
    }
}

TEST_CASE("sinked Laguerre mass decreases") {
    ModelSpec m = ModelSpec::laguerre(0.8, 0.5);
    double prev = 1.0;
    for (double t : {0.1, 0.3, 0.8, 1.5}) {
        double mass = total_mass(m, t, 0.8);
        CHECK(mass < prev);
        prev = mass;
    }
    // leading decay rate e^{-gamma t} at late times
    double m1 = total_mass(m, 3.0, 0.8), m2 = total_mass(m, 4.0, 0.8);
    CHECK(std::log(m1 / m2) == Approx(m.gamma).epsilon(0.05));
}

TEST_CASE("delta initial condition: moments approach y and y^2") {
    ModelSpec m = ModelSpec::laguerre(0.0, 1.0);
    double y = 1.4;
    auto moment = [&](double t, int k) {
        return integrate_adaptive(
            [&](double u) {
                double om = 1.0 - u;
                double x = u / om;
                return std::pow(x, k) * laguerre_closed_form(m, x, t, y) / (om * om);
            },
            0.0, 1.0, 1e-10);
    };
    double c1 = std::abs(moment(0.05, 1) - y) / 0.05;
    double c2 = std::abs(moment(0.05, 2) - y * y) / 0.05;
    for (double t : {0.02, 0.01}) {
        CHECK(total_mass(m, t, y) == Approx(1.0).margin(1e-3));
        CHECK(std::abs(moment(t, 1) - y) < 2.0 * c1 * t + 1e-9);
        CHECK(std::abs(moment(t, 2) - y * y) < 2.0 * c2 * t + 1e-9);
    }
}

TEST_CASE("Romanovski Fig. 2 mass decays strictly and fast") {
    double prev = 1e300;
    std::vector<double> masses;
    for (double t : {0.1, 0.2, 0.3, 0.5}) {
        double mass = total_mass(kRomFig2, t, 0.0);
        CHECK(mass < prev);
        prev = mass;
        masses.push_back(mass);
    }
    CHECK(masses.back() < 0.25 * masses.front());
}

TEST_CASE("density evaluator guards") {
    CHECK_THROWS_AS(DensityEvaluator(kRomFig2, 0.005, 0.0), TimeTooSmall);
    QuadratureSpec q;
    q.mu_max = 1.5; // far too small for t = 0.1
    CHECK_THROWS_AS(DensityEvaluator(kRomFig2, 0.1, 0.0, q), QuadratureFailure);
    CHECK_THROWS_AS(density(ModelSpec::laguerre(-1.0, 0.0), 1.0, 1.0, 1.0),
                    InvalidModel);
}

TEST_CASE("detailed balance for the mixed-spectrum families") {
    // T(x,t|y) W(y) = T(y,t|x) W(x)
    std::mt19937 rng(23);
    for (const ModelSpec& m : {kBessel, kFS, kRomFig2}) {
        for (int trial = 0; trial < 4; ++trial) {
            double x = testutil::random_support_x(m, rng);
            double y = testutil::random_support_x(m, rng);
            double t = 0.15 + 0.4 * std::generate_canonical<double, 40>(rng);
            DensityEvaluator fwd(m, t, y), bwd(m, t, x);
            double a = fwd(x) * std::exp(log_weight(m, y));
            double b = bwd(y) * std::exp(log_weight(m, x));
            CHECK(std::abs(a - b) < 1e-8 * (std::abs(a) + std::abs(b) + 1e-12));
        }
    }
}

TEST_CASE("Chapman-Kolmogorov semigroup for the Laguerre closed form") {
    ModelSpec m = ModelSpec::laguerre(0.5, 1.0);
    double y = 0.9, t1 = 0.4, t2 = 0.3;
    for (double x : {0.5, 1.2, 2.5}) {
        double conv = integrate_adaptive(
            [&](double u) {
                double om = 1.0 - u;
                double zv = u / om;
                return laguerre_closed_form(m, x, t1, zv) *
                       laguerre_closed_form(m, zv, t2, y) / (om * om);
            },
            0.0, 1.0, 1e-9);
        double direct = laguerre_closed_form(m, x, t1 + t2, y);
        CHECK(std::abs(conv - direct) < 1e-3 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("Romanovski continuum combination is real") {
    // the full 2x2 complex sum rho_kl chi_k(x) chi_l(y) must be real; this is
    // the structural check of the normalisation matrix identities
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> mud(0.1, 5.0), xd(-6.0, 6.0);
    for (int trial = 0; trial < 60; ++trial) {
        double mu = mud(rng), x = xd(rng), y = xd(rng);
        RomanovskiNorm rn = romanovski_norm(kRomFig2, mu);
        Complex c1x = continuous_eig_rom(kRomFig2, 1, mu, x);
        Complex c1y = continuous_eig_rom(kRomFig2, 1, mu, y);
        Complex c2x = std::conj(c1x), c2y = std::conj(c1y);
        Complex s = rn.rho11 * c1x * c1y + std::conj(rn.rho11) * c2x * c2y +
                    rn.rho12 * (c1x * c2y + c2x * c1y);
        CHECK(std::abs(s.imag()) <= 1e-9 * (std::abs(s) + 1e-30));
    }
}

TEST_CASE("density grid clamps tiny negatives and reports the raw minimum") {
    std::vector<double> xs;
    for (int i = 0; i <= 160; ++i) xs.push_back(-8.0 + 0.1 * i);
    DensityGrid g = density_grid(kRomFig2, xs, 0.3, 0.0, {}, 2);
    CHECK(g.min_before_clamp <= 0.0);
    CHECK(g.min_before_clamp > -1e-8);
    for (double v : g.values) CHECK(v >= 0.0);
    // thread count does not change values
    DensityGrid g1 = density_grid(kRomFig2, xs, 0.3, 0.0, {}, 1);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(g.values[i] == g1.values[i]);
}
