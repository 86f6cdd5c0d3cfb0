#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "zonalval/dspace.hpp"
#include "zonalval/io.hpp"

using namespace zonalval;
using dspace::ZonalDensity;

TEST_CASE("eval_f and eval_weighted") {
    auto f = ZonalDensity::power(0.5, 0.25);
    CHECK(f.eval_f(0.0) == doctest::Approx(1.0));
    CHECK(f.eval_weighted(0.0) == doctest::Approx(1.0));
    CHECK(f.eval_weighted(1.0) == doctest::Approx(0.0));
    CHECK(f.eval_weighted(-1.0) == doctest::Approx(0.0));

    auto g = ZonalDensity::poly(1.0, {0.0, 1.0});
    CHECK(g.eval_f(0.5) == doctest::Approx(0.5));
    CHECK(g.eval_weighted(0.5) == doctest::Approx(0.375));

    CHECK_THROWS_AS(f.eval_f(1.0), ValidationError);
    CHECK_THROWS_AS(f.eval_f(-1.5), ValidationError);
}

TEST_CASE("norm examples against the 1-D maximization oracle") {
    auto one = ZonalDensity::constant(1.0, 1.0);
    CHECK(one.norm_Da().value == doctest::Approx(2.0).epsilon(1e-9));

    // f(t) = t, a = 1: sup |t|(1-t^2) = 2/(3 sqrt 3), sup |int_0^s t dt| = 1/2
    auto lin = ZonalDensity::poly(1.0, {0.0, 1.0});
    double sup_g = oracles::brute_max([](double s) { return std::abs(s * (1 - s * s)); }, -1, 1);
    double sup_p = oracles::brute_max([](double s) { return 0.5 * s * s; }, -1, 1);
    CHECK(sup_g == doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-9));
    CHECK(lin.norm_Da().value == doctest::Approx(sup_g + sup_p).epsilon(1e-9));

    CHECK(ZonalDensity::zero(1.0).norm_Da().value == doctest::Approx(0.0));

    // power density: oracle both suprema
    auto pw = ZonalDensity::power(0.5, 0.25);
    double og = oracles::brute_max(
        [&pw](double s) { return std::abs(pw.eval_weighted(s)); }, -1, 1, 200001);
    double op = oracles::brute_max(
        [&pw](double s) { return std::abs(pw.partial_integral(s)); }, -1, 1, 20001);
    CHECK(pw.norm_Da().value == doctest::Approx(og + op).epsilon(1e-7));
}

TEST_CASE("norm is absolutely homogeneous and subadditive") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int t = 0; t < 12; ++t) {
        std::vector<double> c1 = {U(rng), U(rng), U(rng)};
        std::vector<double> c2 = {U(rng), 0.0, U(rng), U(rng)};
        auto f = ZonalDensity::poly(1.0, c1);
        auto g = ZonalDensity::poly(1.0, c2);
        std::vector<double> sum(4, 0.0);
        for (int i = 0; i < 3; ++i) sum[i] += c1[i];
        for (int i = 0; i < 4; ++i) sum[i] += c2[i];
        auto fg = ZonalDensity::poly(1.0, sum);
        double nf = f.norm_Da().value, ng = g.norm_Da().value, nfg = fg.norm_Da().value;
        CHECK(nfg <= nf + ng + 1e-8 * (nf + ng));
        double lam = U(rng);
        std::vector<double> cl = c1;
        for (auto& x : cl) x *= lam;
        CHECK(ZonalDensity::poly(1.0, cl).norm_Da().value ==
              doctest::Approx(std::abs(lam) * nf).epsilon(1e-8));
    }
}

TEST_CASE("partial integrals match the Simpson oracle") {
    auto pw = ZonalDensity::power(0.75, 0.3);
    for (double s : {0.3, -0.6, 0.95, -0.99}) {
        double oracle = oracles::simpson(
            [&pw](double t) { return pw.eval_f(t) * std::pow(1 - t * t, pw.a() - 1); }, 0.0, s);
        CHECK(pw.partial_integral(s) == doctest::Approx(oracle).epsilon(1e-9));
    }
    auto po = ZonalDensity::poly(1.5, {1.0, -0.5, 2.0, 0.25});
    for (double s : {0.4, -0.8}) {
        double oracle = oracles::simpson(
            [&po](double t) { return po.eval_f(t) * std::pow(1 - t * t, 0.5); }, 0.0, s);
        CHECK(po.partial_integral(s) == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("truncation") {
    auto one = ZonalDensity::constant(0.5, 1.0);
    auto oner = one.truncate(0.5);
    CHECK(oner.eval_f(0.9) == doctest::Approx(1.0));
    CHECK(oner.eval_f(-0.2) == doctest::Approx(1.0));

    auto lin = ZonalDensity::poly(1.0, {0.0, 1.0});
    CHECK(lin.truncate(0.5).eval_f(0.75) == doctest::Approx(0.5));
    CHECK(lin.truncate(0.5).eval_f(-0.75) == doctest::Approx(-0.5));

    // Lemma-2.5 style convergence: || f - f^r || decreasing along r = 1 - 2^{-k}
    // (the rate for this family is (1 - r^2)^{a - beta}, so slow but monotone)
    auto pw = ZonalDensity::power(0.5, 0.25);
    double prev = 1e300, first = 0.0;
    for (int k = 2; k <= 8; ++k) {
        double r = 1.0 - std::pow(2.0, -k);
        auto fr = pw.truncate(r);
        auto diff = ZonalDensity::derived(
            0.5, [pw, fr](double s) { return pw.eval_f(s) - fr.eval_f(s); }, {0.25, 0.25},
            "diff",
            [pw, fr](double s) { return pw.partial_integral(s) - fr.partial_integral(s); });
        double nd = diff.norm_Da().value;
        CHECK(nd < prev + 1e-12);
        if (k == 2) first = nd;
        prev = nd;
    }
    CHECK(prev < 0.5 * first);
    CHECK_THROWS_AS(pw.truncate(1.5), ValidationError);
}

TEST_CASE("membership diagnostics") {
    // exactly beta < a on a grid spanning (0, a + 1/2)
    for (double a : {0.5, 1.0, 1.5}) {
        for (int i = 1; i <= 12; ++i) {
            double beta = (a + 0.5) * i / 13.0;
            auto rep = ZonalDensity::power(a, beta).membership_check();
            CHECK(rep.limit_ok == (beta < a));
            CHECK(rep.integral_ok == (beta < a));
        }
    }
    auto border = ZonalDensity::power(0.5, 0.5).membership_check();
    CHECK_FALSE(border.limit_ok);
    // weighted form is identically 1 for beta = a
    CHECK(border.weighted_seq.back() == doctest::Approx(1.0));

    auto rep1 = ZonalDensity::constant(0.75, 1.0).membership_check();
    CHECK(rep1.limit_ok);
    CHECK(rep1.integral_ok);
}

TEST_CASE("integrability criterion") {
    // power densities: integrable iff beta < (n-j-1)/2
    CHECK(ZonalDensity::power(0.5, 0.25).integrability_check(3, 1));
    CHECK_FALSE(ZonalDensity::power(0.5, 0.5).integrability_check(3, 1));
    CHECK(ZonalDensity::constant(0.5, 1.0).integrability_check(3, 1));
    CHECK(ZonalDensity::poly(1.0, {0.0, 1.0}).integrability_check(4, 1));
    CHECK_THROWS_AS(ZonalDensity::constant(0.5, 1.0).integrability_check(3, 2),
                    ValidationError);
}

TEST_CASE("center projection") {
    // even densities unchanged
    auto pw = ZonalDensity::power(0.5, 0.25);
    auto pc = pw.center_project(3);
    CHECK(pc.eval_f(0.37) == doctest::Approx(pw.eval_f(0.37)));

    // linear densities are killed
    auto lin = ZonalDensity::poly(1.0, {0.0, 2.5});
    auto lc = lin.center_project(4);
    for (double s : {-0.8, -0.2, 0.5, 0.9}) CHECK(lc.eval_f(s) == doctest::Approx(0.0).epsilon(1e-12));

    // f(t) = t + 1, n = 3 -> 1
    auto aff = ZonalDensity::poly(1.0, {1.0, 1.0});
    auto ac = aff.center_project(3);
    for (double s : {-0.5, 0.25}) CHECK(ac.eval_f(s) == doctest::Approx(1.0).epsilon(1e-12));

    // idempotent, vanishing centered moment
    auto mix = ZonalDensity::poly(1.0, {0.5, -2.0, 1.0, 0.75});
    auto mc = mix.center_project(3);
    auto mc2 = mc.center_project(3);
    for (double s : {-0.7, 0.1, 0.6})
        CHECK(mc2.eval_f(s) == doctest::Approx(mc.eval_f(s)).epsilon(1e-12));
    double moment = oracles::simpson(
        [&mc](double t) { return mc.eval_f(t) * t; }, -1.0 + 1e-12, 1.0 - 1e-12);
    CHECK(moment == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("sampled densities") {
    dspace::SampledData d;
    for (int i = 0; i <= 40; ++i) {
        double s = std::sin(0.5 * M_PI * (-1.0 + 2.0 * i / 40.0)) * 0.99999;
        d.nodes.push_back(s);
        d.gvals.push_back((1 - s * s) * std::cos(s));  // g of f(t) = cos(t), a = 1
    }
    // tail-less samples rejected unless trusted
    CHECK_THROWS_AS(ZonalDensity::sampled(1.0, d, std::nullopt, false), ValidationError);
    auto f = ZonalDensity::sampled(1.0, d, std::make_pair(1.0, 1.0));
    CHECK(f.eval_f(0.33) == doctest::Approx(std::cos(0.33)).epsilon(1e-4));
    CHECK(f.eval_weighted(0.33) == doctest::Approx((1 - 0.33 * 0.33) * std::cos(0.33)).epsilon(1e-4));

    // bad inputs
    dspace::SampledData bad = d;
    std::swap(bad.nodes[3], bad.nodes[4]);
    CHECK_THROWS_AS(ZonalDensity::sampled(1.0, bad, std::make_pair(1.0, 1.0)), ValidationError);
    CHECK_THROWS_AS(ZonalDensity::sampled(1.0, d, std::make_pair(-1.0, 1.0)), ValidationError);

    // tail exponent fit on a power-law weighted form
    dspace::SampledData p;
    for (int i = 0; i <= 60; ++i) {
        double s = std::sin(0.5 * M_PI * (-1.0 + 2.0 * i / 60.0)) * 0.9999999;
        p.nodes.push_back(s);
        p.gvals.push_back(std::pow(1 - s * s, 0.25));
    }
    auto tails = dspace::fit_tail_exponents(p, 1.0);
    CHECK(tails.first == doctest::Approx(0.25).epsilon(0.05));
    CHECK(tails.second == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("density JSON and CSV") {
    auto f = io::density_from_json(R"({"a":0.5,"type":"power","beta":0.25})");
    CHECK(f.kind() == dspace::DensityKind::Power);
    auto f2 = io::density_from_json(io::density_to_json(f));
    CHECK(f2.eval_f(0.5) == doctest::Approx(f.eval_f(0.5)));

    auto g = io::density_from_spec("poly:[0,1]", 1.0);
    CHECK(g.eval_f(0.25) == doctest::Approx(0.25));

    auto csv = io::density_to_csv(f, {-0.5, 0.0, 0.5});
    auto tab = io::parse_csv(csv);
    REQUIRE(tab.rows.size() == 4);
    CHECK(std::stod(tab.rows[2][1]) == doctest::Approx(1.0));

    CHECK_THROWS_AS(io::density_from_json(R"({"type":"power","beta":0.1})"), ValidationError);
    CHECK_THROWS_AS(io::density_from_json(R"({"a":1.0,"type":"nope"})"), ValidationError);
}
