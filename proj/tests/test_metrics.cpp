#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hypgraft/curvature.hpp"
#include "hypgraft/cutoff.hpp"
#include "hypgraft/grid.hpp"
#include "hypgraft/metrics.hpp"
#include "hypgraft/plumbing.hpp"

using namespace hypgraft;
using Catch::Approx;

TEST_CASE("fiber density closed forms") {
    complexd t(std::exp(-20.0), 0.0);
    double r = std::sqrt(std::abs(t));  // collar core, Theta = pi/2
    complexd z(r, 0.0);
    CHECK(fiber_density(z, t) == Approx(sq(pi / (r * std::log(std::abs(t))))).epsilon(1e-13));

    // Ratio to the cusp metric at Theta = 0.1 equals (Theta csc Theta)^2.
    CHECK(theta_series_ratio(0.1) == Approx(1.0033400).margin(1e-6));

    // t -> 0 recovers the cusp metric at fixed z; the gap closes like
    // (log|z| / log|t|)^2.
    complexd z0(0.05, 0.02);
    double target = zero_fiber_density(z0);
    double prev = std::abs(fiber_density(z0, complexd(std::exp(-30.0), 0)) - target);
    double next = std::abs(fiber_density(z0, complexd(std::exp(-300.0), 0)) - target);
    CHECK(next < prev);
    CHECK(next < 1e-3 * target);

    CHECK_THROWS_AS(fiber_density(complexd(1e-12, 0), t), std::domain_error);
    CHECK_THROWS_AS(fiber_density(complexd(1.5, 0), t), std::domain_error);
}

TEST_CASE("zero fiber density") {
    CHECK(zero_fiber_density(complexd(std::exp(-1.0), 0)) == Approx(std::exp(2.0)).epsilon(1e-13));
    // Rotation invariance.
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uth(0.0, two_pi);
    for (int k = 0; k < 20; ++k) {
        double th = uth(rng);
        complexd z = 0.3 * complexd(std::cos(th), std::sin(th));
        CHECK(zero_fiber_density(z) == Approx(zero_fiber_density(complexd(0.3, 0))).epsilon(1e-12));
    }
    CHECK_THROWS_AS(zero_fiber_density(complexd(1.0, 0)), std::domain_error);
    CHECK_THROWS_AS(zero_fiber_density(complexd(0.0, 0)), std::domain_error);
}

TEST_CASE("theta series ratio and truncation") {
    CHECK(theta_series_ratio(1e-8) == Approx(1.0).epsilon(1e-12));
    CHECK(theta_series_ratio(pi / 2) == Approx(sq(pi / 2)).epsilon(1e-13));
    CHECK(std::abs(theta_series_ratio(0.5) - theta_series_truncated(0.5)) < 2e-3);
    CHECK_THROWS_AS(theta_series_ratio(0.0), std::domain_error);
    CHECK_THROWS_AS(theta_series_ratio(pi), std::domain_error);

    // The remainder beyond fourth order decays like Theta^6.
    std::vector<std::pair<double, double>> samples;
    for (double th : {0.4, 0.2, 0.1, 0.05, 0.025})
        samples.emplace_back(th, theta_series_ratio(th) - theta_series_truncated(th));
    RateFit fit = fit_rate(samples);
    CHECK(fit.slope >= 5.8);
    CHECK(fit.r_squared >= 0.999);
}

TEST_CASE("cutoff profile") {
    CutoffProfile eta(-1.0);
    CHECK(eta.eta(-1.0) == 1.0);
    CHECK(eta.eta(0.0) == 0.0);
    CHECK(eta.eta(-0.5) == Approx(0.5).epsilon(1e-14));
    CHECK(eta.eta(-2.0) == 1.0);
    CHECK(eta.eta(0.5) == 0.0);
    CHECK(eta.eta_prime(-1.0) == 0.0);
    CHECK(eta.eta_prime(0.0) == 0.0);
    CHECK(eta.eta_second(-1.0) == 0.0);
    CHECK(eta.eta_second(0.0) == 0.0);

    // Monotone nonincreasing across the band.
    double prev = 1.0;
    for (int k = 1; k <= 100; ++k) {
        double v = eta.eta(-1.0 + k / 100.0);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }

    // Derivatives agree with central differences.
    double h = 1e-5;
    for (double a : {-0.85, -0.5, -0.21}) {
        double fd1 = (eta.eta(a + h) - eta.eta(a - h)) / (2 * h);
        double fd2 = (eta.eta(a + h) - 2 * eta.eta(a) + eta.eta(a - h)) / (h * h);
        CHECK(eta.eta_prime(a) == Approx(fd1).margin(1e-8));
        CHECK(eta.eta_second(a) == Approx(fd2).margin(1e-4));
    }
    CHECK_THROWS_AS(CutoffProfile(0.0), std::invalid_argument);
}

TEST_CASE("lambda profile") {
    CutoffProfile eta(-1.0);
    CHECK(lambda_profile(eta, -1.0) == 0.0);
    CHECK(lambda_profile(eta, -1.7) == 0.0);
    CHECK(lambda_profile(eta, 0.0) == 0.0);
    CHECK(lambda_profile(eta, 0.4) == 0.0);

    // Integral over the band telescopes to the boundary values of a^4 eta'.
    int n = 2000;
    double sum = 0.0, h = 1.0 / n;
    for (int k = 0; k < n; ++k) sum += lambda_profile(eta, -1.0 + (k + 0.5) * h) * h;
    CHECK(sum == Approx(0.0).margin(1e-8));

    // Pointwise value matches a finite difference of a^4 eta'.
    double a = -0.5, hh = 1e-6;
    auto flux = [&](double x) { return x * x * x * x * eta.eta_prime(x); };
    double fd = (flux(a + hh) - flux(a - hh)) / (2 * hh);
    CHECK(lambda_profile(eta, a) == Approx(fd).margin(1e-6));
}

TEST_CASE("grafted density interpolation") {
    PlumbingConfig cfg(complexd(std::exp(-20.0), 0.0));
    auto base = [](const complexd& z) { return std::log(zero_fiber_density(z)); };

    // Outside the band the graft is exactly the base metric.
    complexd z_out(0.5, 0.1);
    CHECK(graft_density(base, cfg, z_out) == Approx(zero_fiber_density(z_out)).epsilon(1e-14));

    // At the band midpoint the graft is the geometric mean.
    double u_mid = cfg.log_c() + cfg.cutoff.a0() / 2.0;
    complexd z_mid = std::exp(u_mid) * complexd(std::cos(0.4), std::sin(0.4));
    double expect = std::sqrt(zero_fiber_density(z_mid) * fiber_density(z_mid, cfg.t));
    CHECK(graft_density(base, cfg, z_mid) == Approx(expect).epsilon(1e-13));

    // In the collar interior the graft equals the fiber metric.
    complexd z_core(std::exp(-10.0), 0.0);
    CHECK(graft_density(base, cfg, z_core) == Approx(fiber_density(z_core, cfg.t)).epsilon(1e-14));

    CHECK_THROWS_AS(graft_density(base, cfg, complexd(1.2, 0.0)), std::domain_error);
}

TEST_CASE("plumbing config invariants") {
    CHECK_THROWS_AS(PlumbingConfig(complexd(0.0, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(PlumbingConfig(complexd(0.5, 0.0)), std::invalid_argument);  // |t| >= c^4
    CHECK_THROWS_AS(PlumbingConfig(complexd(1e-3, 0.0), 0.9, CutoffProfile(-4.0)),
                    std::invalid_argument);  // violates |t| <= e^{2 a0} c^2
    CHECK_NOTHROW(PlumbingConfig(complexd(1e-9, 1e-9)));
}

TEST_CASE("grafted metric sandwich on the collar") {
    PlumbingConfig cfg(complexd(std::exp(-30.0), 0.0));
    GraftedAnnulusMetric g(cfg);
    double ell = cfg.log_abs_t();
    for (int k = 1; k < 400; ++k) {
        double u = cfg.collar_lo() + (cfg.collar_hi() - cfg.collar_lo()) * k / 400.0;
        double lg = g.log_radial_density(u);
        double lt = radial::log_fiber(u, ell);
        double l0 = u <= ell / 2.0 ? radial::log_zero_z(ell - u) : radial::log_zero_z(u);
        CHECK(lg <= lt + 1e-13);
        CHECK(lg >= l0 - 1e-13);
        // Convex combination in log scale.
        CHECK(lg >= std::min(l0, lt) - 1e-13);
        CHECK(lg <= std::max(l0, lt) + 1e-13);
    }
}

TEST_CASE("core geodesic length") {
    CHECK(core_geodesic_length(complexd(std::exp(-100.0), 0.0)) == Approx(0.1973920880).margin(1e-9));
    CHECK(core_geodesic_length(complexd(std::exp(-2.0 * pi * pi), 0.0)) == Approx(1.0).epsilon(1e-13));
    CHECK(core_geodesic_length(complexd(1e-30, 0)) < core_geodesic_length(complexd(1e-10, 0)));
    CHECK_THROWS_AS(core_geodesic_length(complexd(1.0, 0.0)), std::domain_error);

    // Line-integral oracle along |z| = |t|^{1/2}.
    complexd t(std::exp(-100.0), 0.0);
    double r = std::sqrt(std::abs(t));
    int n = 256;
    double len = 0.0;
    for (int k = 0; k < n; ++k) {
        double th = two_pi * k / n;
        complexd z = r * complexd(std::cos(th), std::sin(th));
        len += std::sqrt(fiber_density(z, t)) * r * (two_pi / n);
    }
    CHECK(len == Approx(core_geodesic_length(t)).epsilon(1e-12));
}

TEST_CASE("discrete curvature of the model metrics") {
    double ell = -20.0;
    complexd t(std::exp(ell), 0.0);

    SECTION("fiber metric on the collar core window, 512 x 64") {
        LogPolarGrid grid(0.6 * ell, 0.4 * ell, 512, 64);
        auto field = sample_field(Chart::ZChart, grid,
                                  [&](const complexd& z) { return std::log(fiber_density(z, t)); });
        CHECK(max_abs_deviation(gaussian_curvature(field), -1.0) <= 1e-6);
    }
    SECTION("zero-fiber metric") {
        LogPolarGrid grid(-12.0, -8.0, 512, 16);
        auto field = sample_radial_field(Chart::ZChart, grid,
                                         [](double u) { return radial::log_zero_z(u) - 2.0 * u; });
        CHECK(max_abs_deviation(gaussian_curvature(field), -1.0) <= 1e-6);
    }
    SECTION("euclidean density is flat") {
        LogPolarGrid grid(-2.0, -1.0, 64, 16);
        auto field = sample_radial_field(Chart::ZChart, grid, [](double) { return 0.0; });
        CHECK(max_abs_deviation(gaussian_curvature(field), 0.0) <= 1e-10);
    }
    SECTION("richardson order is two") {
        LogPolarGrid grid(0.6 * ell, 0.4 * ell, 512, 8);
        double ratio = curvature_richardson_ratio(
            Chart::ZChart, grid, [&](double u) { return radial::log_fiber(u, ell) - 2.0 * u; },
            -1.0);
        CHECK(ratio >= 3.6);
        CHECK(ratio <= 4.4);
    }
    SECTION("degenerate grid rejected") {
        CHECK_THROWS_AS(LogPolarGrid(-2.0, -1.0, 2, 16), std::invalid_argument);
        ConformalMetricField f;
        f.grid = LogPolarGrid(-2.0, -1.0, 8, 8);
        f.log_density.assign(3, 0.0);
        CHECK_THROWS_AS(gaussian_curvature(f), std::invalid_argument);
    }
}

TEST_CASE("graft curvature expansion rate") {
    std::vector<PlumbingConfig> ladder;
    for (double L : {20.0, 40.0, 80.0, 160.0}) ladder.emplace_back(complexd(std::exp(-L), 0.0));
    auto result = graft_curvature_residual(ladder, 2049, 8);

    CHECK(result.fit.slope >= 3.8);
    CHECK(result.fit.r_squared >= 0.98);
    // Dropping the Lambda term leaves the quadratic error.
    CHECK(result.fit_no_lambda.slope == Approx(2.0).margin(0.35));
    for (const auto& p : result.points) CHECK(p.off_band_residual <= 1e-6);

    CHECK_THROWS_AS(graft_curvature_residual({ladder[0], ladder[1], ladder[2]}, 257, 8),
                    std::invalid_argument);
}

TEST_CASE("exact grafted curvature matches the discrete operator") {
    PlumbingConfig cfg(complexd(std::exp(-40.0), 0.0));
    GraftedAnnulusMetric g(cfg);
    LogPolarGrid grid(cfg.primary_band_lo() - 0.3, cfg.primary_band_hi() + 0.3, 4097, 8);
    auto field = sample_radial_field(Chart::ZChart, grid,
                                     [&](double u) { return g.log_radial_density(u) - 2.0 * u; });
    CurvatureField k = gaussian_curvature(field);
    for (std::size_t i = 0; i < k.interior_rows(); i += 97) {
        double u = grid.u(i + 1);
        CHECK(k.at(i, 0) == Approx(g.curvature_exact(u)).margin(5e-7));
    }
}
