#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "blognet/fits.hpp"
#include "blognet/samplers.hpp"
#include "blognet/util.hpp"

using namespace blognet;

namespace {

Distribution exact_powerlaw_table(double exponent, int nbins) {
    Distribution d;
    d.n = 1000;
    double lo = 1.0;
    for (int k = 0; k < nbins; ++k) {
        Bin b;
        b.lo = lo;
        b.hi = lo * kLogBinRatio;
        b.count = 5;
        b.pdf = std::pow(b.center(), -exponent);
        b.ccdf = 1.0;
        d.bins.push_back(b);
        lo = b.hi;
    }
    return d;
}

}  // namespace

TEST_CASE("qexp_eval matches direct substitution") {
    QExpFit p;
    p.q = 2.0;
    p.t_star = 1.0;
    p.prefactor = 1.0;
    CHECK(qexp_eval(p, 1.0) == doctest::Approx(0.5));
    CHECK(qexp_eval(p, 0.0) == 1.0);

    p.q = 1.5;
    p.t_star = 100.0;
    p.prefactor = 0.005;
    CHECK(qexp_eval(p, 0.0) == doctest::Approx(0.005));
    // tail slope 1/(q-1) = 2
    CHECK(p.tail_slope() == doctest::Approx(2.0));
}

TEST_CASE("qexp_eval takes the exponential limit near q=1") {
    QExpFit p;
    p.q = 1.0 + 1e-10;
    p.t_star = 30.0;
    p.prefactor = 2.0;
    for (double dt : {0.0, 5.0, 60.0, 300.0})
        CHECK(qexp_eval(p, dt) == doctest::Approx(2.0 * std::exp(-dt / 30.0)));
}

TEST_CASE("qexp_eval rejects domain violations") {
    QExpFit p;
    p.q = 0.5;
    p.t_star = 1.0;
    p.prefactor = 1.0;
    CHECK(qexp_eval(p, 1.0) > 0.0);         // inside bounded support
    CHECK_THROWS_AS(qexp_eval(p, 3.0), Error);  // base goes negative
    CHECK_THROWS_AS(qexp_eval(p, -1.0), Error);
    p.t_star = 0.0;
    CHECK_THROWS_AS(qexp_eval(p, 1.0), Error);
}

TEST_CASE("qexp_eval is monotone decreasing for q>1") {
    QExpFit p;
    p.q = 1.7;
    p.t_star = 10.0;
    p.prefactor = 3.0;
    double prev = qexp_eval(p, 0.0);
    for (double dt = 1.0; dt < 1000.0; dt *= 2.0) {
        const double cur = qexp_eval(p, dt);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("fit_qexp recovers parameters from its own samples") {
    Rng rng(201);
    std::vector<double> s(100000);
    for (auto& x : s) x = sample_qexp(rng, 1.5, 100.0);
    const QExpFit fit = fit_qexp(s);
    CHECK(fit.q == doctest::Approx(1.5).epsilon(0.034));         // +-0.05 absolute
    CHECK(fit.t_star == doctest::Approx(100.0).epsilon(0.10));   // +-10%
    // normalized density prefactor is (2-q)/t_star
    CHECK(fit.prefactor == doctest::Approx(0.005).epsilon(0.25));
    CHECK(fit.residual < 0.5);
}

TEST_CASE("fit_qexp on exponential samples lands at q near 1") {
    Rng rng(202);
    std::vector<double> s(100000);
    for (auto& x : s) x = sample_exponential(rng, 1.0 / 50.0);
    const QExpFit fit = fit_qexp(s);
    CHECK(std::abs(fit.q - 1.0) < 0.05);
    CHECK(fit.t_star == doctest::Approx(50.0).epsilon(0.15));
}

TEST_CASE("fit_qexp rejects tiny sample sets") {
    std::vector<double> s(999, 1.0);
    CHECK_THROWS_AS(fit_qexp(s), Error);
}

TEST_CASE("fit_qexp is deterministic") {
    Rng rng(203);
    std::vector<double> s(5000);
    for (auto& x : s) x = sample_qexp(rng, 1.3, 20.0);
    const QExpFit a = fit_qexp(s);
    const QExpFit b = fit_qexp(s);
    CHECK(a.q == b.q);
    CHECK(a.t_star == b.t_star);
    CHECK(a.prefactor == b.prefactor);
}

TEST_CASE("fit_powerlaw recovers an exact bin table to regression precision") {
    const auto d = exact_powerlaw_table(2.0, 40);
    const auto fit = fit_powerlaw(d, 0.5, 1e9);
    CHECK(std::abs(fit.exponent - 2.0) < 1e-6);
    CHECK(fit.residual < 1e-9);
    CHECK(fit.bins_used == 40);
}

TEST_CASE("fit_powerlaw on a flat table gives slope zero") {
    auto d = exact_powerlaw_table(0.0, 30);
    const auto fit = fit_powerlaw(d, 0.5, 1e9);
    CHECK(std::abs(fit.exponent) < 1e-9);
}

TEST_CASE("fit_powerlaw recovers the Pareto exponent from samples") {
    Rng rng(204);
    std::vector<double> s(1000000);
    for (auto& x : s) x = sample_pareto(rng, 2.5, 1.0);
    const auto d = make_distribution(s);
    const auto fit = fit_powerlaw(d);  // default [median, p99] window
    CHECK(std::abs(fit.exponent - 2.5) < 0.05);
    CHECK(fit.x_min == d.quantile(0.5));
    CHECK(fit.x_max == d.quantile(0.99));

    // the complementary CDF of the same data decays one power slower
    const auto cfit = fit_powerlaw(d, fit.x_min, fit.x_max, Column::Ccdf);
    CHECK(std::abs(cfit.exponent - 1.5) < 0.05);
}

TEST_CASE("fit_powerlaw validates its range and bin count") {
    const auto d = exact_powerlaw_table(2.0, 6);
    CHECK_THROWS_AS(fit_powerlaw(d, 5.0, 1.0), Error);       // inverted range
    CHECK_THROWS_AS(fit_powerlaw(d, 100.0, 200.0), Error);   // no bins in range
}

TEST_CASE("fit_line recovers an exact line") {
    std::vector<double> x = {0, 1, 2, 3, 4};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 - 2.0 * v);
    const auto f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(-2.0));
    CHECK(f.intercept == doctest::Approx(3.0));
    CHECK(f.residual < 1e-12);
    CHECK_THROWS_AS(fit_line({1.0}, {2.0}), Error);
    CHECK_THROWS_AS(fit_line({1.0, 1.0}, {2.0, 3.0}), Error);
}
