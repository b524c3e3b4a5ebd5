#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hypgraft/eisenstein.hpp"
#include "hypgraft/emeld.hpp"
#include "hypgraft/geodesic.hpp"
#include "hypgraft/ratefit.hpp"
#include "hypgraft/truncation.hpp"

using namespace hypgraft;
using Catch::Approx;

namespace {

EisensteinEvaluator make_gamma_two(long long C = 200, double y_min = 0.15, double tol = 1e-3) {
    auto g2 = FuchsianGroupSpec::gamma_two();
    return EisensteinEvaluator(g2, g2.cusps[0], C, y_min, tol);
}

EisensteinEvaluator make_cylinder() {
    auto cyl = FuchsianGroupSpec::parabolic_cylinder();
    return EisensteinEvaluator(cyl, cyl.cusps[0], 1, 0.05, 1e-12);
}

// Hyperbolic Laplacian y^2 (d_xx + d_yy) by central differences.
template <typename F>
double laplacian_fd(F&& f, const complexd& zeta, double h) {
    double fx = f(zeta + complexd(h, 0)) + f(zeta - complexd(h, 0));
    double fy = f(zeta + complexd(0, h)) + f(zeta - complexd(0, h));
    return sq(zeta.imag()) * (fx + fy - 4.0 * f(zeta)) / (h * h);
}

}  // namespace

TEST_CASE("translate sums match brute force") {
    std::mt19937 rng(83);
    std::uniform_real_distribution<double> ux(-0.7, 1.3), uy(0.08, 6.0);
    for (int k = 0; k < 25; ++k) {
        double x = ux(rng), y = uy(rng);
        double brute = 0.0;
        for (int n = -4000; n <= 4000; ++n) brute += 1.0 / sq(sq(x + n) + y * y);
        // The brute sum itself truncates with a ~N^{-3} tail.
        double closed =
            detail::translate_sum_quartic(std::cos(two_pi * x), y, std::exp(-two_pi * y));
        CHECK(closed == Approx(brute).epsilon(1e-8));
    }

    std::uniform_real_distribution<double> uyc(0.1, 3.0);
    for (int k = 0; k < 10; ++k) {
        complexd w(ux(rng), uyc(rng));
        complexd brute(0, 0);
        for (int n = -3000; n <= 3000; ++n) {
            complexd q = w + static_cast<double>(n);
            complexd q2 = q * q;
            brute += 1.0 / (q2 * q2);
        }
        complexd closed = detail::translate_sum_weight4(std::sin(pi * w), std::cos(pi * w));
        CHECK(std::abs(closed - brute) < 1e-9 * (1.0 + std::abs(brute)));
    }
}

TEST_CASE("cylinder series is the pure mode") {
    auto ev = make_cylinder();
    for (complexd z : {complexd(0.2, 0.7), complexd(-1.4, 3.0), complexd(0.0, 0.11)}) {
        CHECK(ev.eval_E2(z) == Approx(sq(z.imag())).epsilon(1e-15));
        CHECK(ev.eval_e_hat(z) == 0.0);
        CHECK(ev.eval_Phi4(z) == complexd(1.0, 0.0));
    }
    CHECK(ev.tail_constant() == 0.0);
    CHECK_THROWS_AS(ev.eval_E2(complexd(0.0, -1.0)), std::domain_error);
}

TEST_CASE("level-two series: eigenfunction of the hyperbolic Laplacian") {
    auto ev = make_gamma_two(200);
    auto f = [&](const complexd& z) { return ev.eval_E2(z); };
    for (complexd z : {complexd(1.0 / 3.0, 1.0), complexd(0.1, 0.8), complexd(-0.27, 1.7),
                       complexd(0.55, 2.3), complexd(0.02, 1.2)}) {
        double resid = std::abs(laplacian_fd(f, z, 1e-3) - 2.0 * ev.eval_E2(z));
        CHECK(resid <= 1e-5);
    }
}

TEST_CASE("level-two series: periodicity, positivity, cutoff stability") {
    auto ev = make_gamma_two(200);
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(0.2, 9.0);
    for (int k = 0; k < 40; ++k) {
        complexd z(ux(rng), uy(rng));
        CHECK(ev.eval_E2(z + 1.0) == Approx(ev.eval_E2(z)).epsilon(1e-12));
        CHECK(ev.eval_e_hat(z) > 0.0);  // every coset term is positive
        complexd p1 = ev.eval_Phi4(z + 1.0), p0 = ev.eval_Phi4(z);
        CHECK(std::abs(p1 - p0) < 1e-10 * (1.0 + std::abs(p0)));
    }

    auto wide = make_gamma_two(400);
    for (complexd z : {complexd(0.0, 1.0), complexd(0.3, 0.5), complexd(0.9, 4.0)}) {
        CHECK(std::abs(ev.eval_E2(z) - wide.eval_E2(z)) <= ev.tail_bound(z.imag()));
        CHECK(std::abs(ev.eval_Phi4(z) - wide.eval_Phi4(z)) <= ev.phi_tail_bound(z.imag()));
    }
    // Declared constant really is the C^{-2} envelope on the region.
    CHECK(ev.tail_bound(0.15) * 200.0 * 200.0 == Approx(ev.tail_constant()));

    // Requesting more accuracy than the cutoff supports must fail loudly.
    auto g2 = FuchsianGroupSpec::gamma_two();
    EisensteinEvaluator coarse(g2, g2.cusps[0], 20, 0.15, 1e-3);
    CHECK_THROWS_AS(EisensteinEvaluator(g2, g2.cusps[0], 20, 0.15, 1e-9).eval_E2(complexd(0, 0.2)),
                    std::runtime_error);
    CHECK_NOTHROW(coarse.eval_E2(complexd(0, 1.0)));
}

TEST_CASE("remainder decays like 1/y") {
    auto ev = make_gamma_two(300);
    std::vector<std::pair<double, double>> samples;
    double bound = 0.0;
    for (double y : {2.0, 4.0, 8.0, 16.0}) {
        double estar = ev.eval_E_star(complexd(0.3, y));
        CHECK(estar > 0.0);
        samples.emplace_back(y, estar);
        bound = std::max(bound, estar * y);
    }
    RateFit fit = fit_rate(samples);
    CHECK(fit.slope <= -0.9);
    // |E*| y stays of one size across the ladder.
    for (auto [y, e] : samples) CHECK(e * y > 0.2 * bound);

    // Below the cusp region E* is E itself.
    CHECK(ev.eval_E_star(complexd(0.3, 0.8)) == Approx(ev.eval_E2(complexd(0.3, 0.8))));
}

TEST_CASE("theta average agrees with the pointwise remainder") {
    auto ev = make_gamma_two(300);
    double y = 3.0;
    int n = 64;
    double avg = 0.0;
    for (int k = 0; k < n; ++k)
        avg += ev.eval_E2(complexd(static_cast<double>(k) / n, y)) / n;
    // Nonconstant modes are exponentially small at this height.
    CHECK(std::abs((avg - y * y) - ev.eval_e_hat(complexd(0.123, y))) < 1e-6);
}

TEST_CASE("mean value property over hyperbolic circles") {
    auto ev = make_gamma_two(300);
    complexd p(0.31, 1.4);
    double r = 0.45;
    // Geodesic circle around p: pull tanh(r/2) e^{i phi} back through the
    // disc chart centered at p.
    int n = 96;
    double avg = 0.0;
    double rho = std::tanh(r / 2.0);
    for (int k = 0; k < n; ++k) {
        double phi = two_pi * k / n;
        complexd w = rho * complexd(std::cos(phi), std::sin(phi));
        complexd q = (p - std::conj(p) * w) / (1.0 - w);
        avg += ev.eval_E2(q) / n;
    }
    // Radial eigenfunction with eigenvalue 2 regular at the center: cosh(r).
    CHECK(avg / std::cosh(r) == Approx(ev.eval_E2(p)).epsilon(1e-7));
}

TEST_CASE("special truncation") {
    PlumbingConfig cfg(complexd(std::exp(-25.0), 0.0));
    auto cyl = make_cylinder();
    TruncationContext def{cfg, TruncationRole::DefiningCusp};

    auto zeta_at = [](double u, double x = 0.0) { return complexd(x, -u / two_pi); };

    // Away from the collar both factors are one: E^# = E.
    double u_out = -0.4;
    CHECK(truncate_sharp(cyl, def, zeta_at(u_out)) ==
          Approx(cyl.eval_E2(zeta_at(u_out))).epsilon(1e-14));

    // Inside the primary cutoff the mode is fully removed.
    double u_deep = cfg.log_c() + cfg.cutoff.a0() - 0.1;
    CHECK(truncate_sharp(cyl, def, zeta_at(u_deep)) == 0.0);

    // Midband value carries the chi weight.
    double u_mid = cfg.log_c() + cfg.cutoff.a0() / 2.0;
    CHECK(truncate_sharp(cyl, def, zeta_at(u_mid)) ==
          Approx(0.5 * sq(u_mid / two_pi)).epsilon(1e-13));

    // Remaining-cusp role cuts the whole series across the secondary band.
    TruncationContext rem{cfg, TruncationRole::RemainingCusp};
    double u_sec = 0.5 * (cfg.secondary_band_lo() + cfg.secondary_band_hi());
    double chi2 = cfg.cutoff.chi(detail::chi_secondary_arg(cfg, u_sec));
    CHECK(chi2 > 0.0);
    CHECK(chi2 < 1.0);
    CHECK(truncate_sharp(cyl, rem, zeta_at(u_sec)) ==
          Approx(chi2 * cyl.eval_E2(zeta_at(u_sec))).epsilon(1e-13));
    CHECK(truncate_sharp(cyl, rem, zeta_at(u_out)) ==
          Approx(cyl.eval_E2(zeta_at(u_out))).epsilon(1e-14));
}

TEST_CASE("melding on the model annulus") {
    PlumbingConfig cfg(std::polar(std::exp(-25.0), 0.4));
    auto cyl = make_cylinder();
    MeldedSeries m1(cfg, &cyl, MeldSide::Defining, nullptr, MeldSide::OffComponent);
    MeldedSeries m2(cfg, nullptr, MeldSide::OffComponent, &cyl, MeldSide::Defining);
    AnnulusMeldings closed{cfg};

    std::mt19937 rng(4);
    std::uniform_real_distribution<double> uu(cfg.collar_lo() + 0.05, cfg.collar_hi() - 0.05);
    std::uniform_real_distribution<double> uth(0.0, two_pi);
    for (int k = 0; k < 50; ++k) {
        double u = uu(rng), th = uth(rng);
        complexd z = std::exp(u) * complexd(std::cos(th), std::sin(th));
        double sum = m1.value_at_z(z) + m2.value_at_z(z);
        CHECK(sum == Approx(closed.sum_at(u)).margin(1e-13));
        // Chart overlap: the w-chart sees the same value.
        complexd w = cfg.t / z;
        CHECK(m1.value_at_z(z) == Approx(m1.value_at_w(w)).margin(1e-13));
    }

    // Collar core: both cutoffs vanish.
    CHECK(closed.sum_at(cfg.log_abs_t() / 2.0) == 0.0);

    // Off the identified annulus the melding is the z-side truncation alone.
    TruncationContext def{cfg, TruncationRole::DefiningCusp};
    double u_out = -0.7;
    complexd z_out(std::exp(u_out), 0.0);
    complexd zeta_out(0.0, -u_out / two_pi);
    CHECK(m1.value_at_z(z_out) == Approx(truncate_sharp(cyl, def, zeta_out)).margin(1e-14));

    CHECK_THROWS_AS(m1.value_at_z(complexd(1.5, 0.0)), std::domain_error);
    CHECK_THROWS_AS(MeldedSeries(cfg, nullptr, MeldSide::Defining, nullptr, MeldSide::OffComponent),
                    std::invalid_argument);
}

TEST_CASE("cylinder decomposition has no remainder term") {
    auto cyl = make_cylinder();
    std::vector<PlumbingConfig> ladder;
    for (double L : {20.0, 40.0, 80.0}) ladder.emplace_back(complexd(std::exp(-L), 0.0));
    emeld::GridSpec small;
    small.shallow_u = 96;
    small.shallow_x = 8;
    small.deep_u = 128;
    small.band_u = 256;
    auto res = emeld::residual_ladder(cyl, ladder, small);
    for (const auto& p : res.points) {
        CHECK(p.sup_c == 0.0);
        CHECK(p.sup_a > 0.0);
    }
    // B cancels the band profile to second order.
    CHECK(res.fit_b.slope >= 1.8);
}

TEST_CASE("geodesic segments") {
    SECTION("vertical segment with antiderivative oracle") {
        auto cyl = make_cylinder();
        auto seg = GeodesicSegment::vertical(0.25, 0.0, 1.0);
        double expect = (std::exp(2.0) - 1.0) / 2.0;
        double got = geodesic_line_integral(cyl, seg, GeodesicIntegrand::E_ds, 1e-10).real();
        CHECK(got == Approx(expect).epsilon(1e-9));
        // Phi = 1 pulls back to -(e^2 - 1)/2 along the same segment.
        complexd phi = geodesic_line_integral(cyl, seg, GeodesicIntegrand::Phi_over_ds, 1e-10);
        CHECK(phi.real() == Approx(-expect).epsilon(1e-9));
        CHECK(std::abs(phi.imag()) < 1e-9);
    }

    SECTION("axis parameterization is unit speed and invariant") {
        MoebiusMap m(1, 2, 2, 5);
        auto seg = GeodesicSegment::axis_of(m);
        double L = 2.0 * std::acosh(3.0);
        CHECK(seg.length() == Approx(L).epsilon(1e-13));
        for (double s : {-0.8, 0.0, 0.33, 1.2}) {
            complexd z = seg.point(s);
            CHECK(std::abs(z + 1.0) == Approx(std::sqrt(2.0)).epsilon(1e-12));  // on the semicircle
            CHECK(std::abs(seg.velocity(s)) == Approx(z.imag()).epsilon(1e-11));
            // The group element shifts the parameter by one period.
            complexd shifted = seg.point(s + L);
            CHECK(std::abs(m(z) - shifted) < 1e-10);
        }
        CHECK_THROWS_AS(GeodesicSegment::axis_of(MoebiusMap::translation(1.0)),
                        std::invalid_argument);
    }

    SECTION("doubling the period doubles the integrals") {
        auto ev = make_gamma_two(300, 0.3, 1e-2);
        auto one = GeodesicSegment::axis_of(MoebiusMap(1, 2, 2, 5), 1.0);
        auto two = GeodesicSegment::axis_of(MoebiusMap(1, 2, 2, 5), 2.0);
        double i1 = geodesic_line_integral(ev, one, GeodesicIntegrand::E_ds, 1e-9).real();
        double i2 = geodesic_line_integral(ev, two, GeodesicIntegrand::E_ds, 1e-9).real();
        // The two integrals truncate the coset sum at different points of
        // the orbit, so they agree only to the declared tail.
        double y_low = std::min(two.point(two.s0()).imag(), two.point(two.s1()).imag());
        double margin = 4.0 * two.length() * ev.tail_bound(y_low);
        CHECK(i2 == Approx(2.0 * i1).margin(margin));
    }

    SECTION("comparison identity along the closed geodesic") {
        auto ev = make_gamma_two(300, 0.4, 1e-4);
        auto seg = GeodesicSegment::axis_of(MoebiusMap(1, 2, 2, 5));
        auto rep = geodesic_identity_check(ev, seg, 1e-5);
        CAPTURE(rep.integral_E, rep.integral_Phi.real(), rep.integral_Phi.imag());
        CHECK(rep.mismatch <= 1e-4);
        CHECK(rep.imag_part <= 1e-4);
    }
}

TEST_CASE("pairing against the series") {
    auto cyl = make_cylinder();
    auto bump = [](const complexd& z) {
        double gx = std::exp(-20.0 * sq(z.real() - 0.5));
        double gy = std::exp(-20.0 * sq(z.imag() - 1.5));
        return complexd(gx * gy, 0.0);
    };
    auto zero = [](const complexd&) { return complexd(0.0, 0.0); };

    CHECK(std::abs(tz_pairing(cyl, zero, zero, 0.0, 1.0, 1.0, 2.0)) == 0.0);

    // For the cylinder the weight y^2 cancels the area element.
    complexd got = tz_pairing(cyl, bump, bump, 0.0, 1.0, 1.0, 2.0, 1e-10);
    double expect = quad::adaptive_2d(
        [&](double x, double y) { return std::norm(bump(complexd(x, y))); }, 0.0, 1.0, 1.0, 2.0,
        1e-12);
    CHECK(got.real() == Approx(expect).epsilon(1e-9));
    CHECK(std::abs(got.imag()) < 1e-14);

    // Conjugate symmetry for complex-valued coefficients.
    auto muc = [&](const complexd& z) { return bump(z) * complexd(0.6, 0.8); };
    auto nuc = [&](const complexd& z) { return bump(z) * complexd(-0.3, 1.1); };
    complexd ab = tz_pairing(cyl, muc, nuc, 0.0, 1.0, 1.0, 2.0, 1e-9);
    complexd ba = tz_pairing(cyl, nuc, muc, 0.0, 1.0, 1.0, 2.0, 1e-9);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
}

TEST_CASE("length correction coefficient") {
    auto cyl = make_cylinder();
    auto seg = GeodesicSegment::vertical(0.1, -0.5, 0.5);
    double integral = (std::exp(1.0) - std::exp(-1.0)) / 2.0;  // int y^2 ds in closed form

    double one_sided = length_correction_coefficient(&cyl, nullptr, seg);
    CHECK(one_sided == Approx(integral / 6.0).epsilon(1e-9));
    CHECK(one_sided > 0.0);

    double both = length_correction_coefficient(&cyl, &cyl, seg);
    CHECK(both == Approx(2.0 * one_sided).epsilon(1e-12));

    // Linear in the number of repeated periods.
    auto twice = GeodesicSegment::vertical(0.1, -0.5, 1.5);
    double rep2 = length_correction_coefficient(&cyl, nullptr, seg.subinterval(-0.5, 1.5));
    (void)twice;
    double direct = length_correction_coefficient(&cyl, nullptr,
                                                  GeodesicSegment::vertical(0.1, 0.5, 1.5));
    CHECK(rep2 == Approx(one_sided + direct).epsilon(1e-10));

    // Segments reaching into the collar region are rejected when bounded.
    CHECK_THROWS_AS(
        length_correction_coefficient(&cyl, nullptr, GeodesicSegment::vertical(0.0, 0.0, 3.0), 2.0),
        std::domain_error);
}
