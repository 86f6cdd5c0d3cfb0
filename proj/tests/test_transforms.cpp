#include <doctest.h>

#include "oracles.hpp"
#include "zonalval/transforms.hpp"

using namespace zonalval;
using dspace::ZonalDensity;
using transforms::ConeProfile;

namespace {

// analytic profiles in the space C (u(1) = u(-1), |s| u bounded)
std::vector<std::pair<ConeProfile, double>> profile_family(double a) {
    std::vector<std::pair<ConeProfile, double>> out;
    out.emplace_back(ConeProfile::from_callable([](double) { return 1.0; }, 1, 1, 0, 1, "one"), a);
    out.emplace_back(ConeProfile::from_callable([](double s) { return 1.0 / std::abs(s); }, 1, 1,
                                                1, 1, "inv"),
                     a);
    out.emplace_back(
        ConeProfile::from_callable([](double s) { return s * (1 - s * s); }, 0, 0, 0, -1, "odd"),
        a);
    out.emplace_back(ConeProfile::from_callable([](double s) { return s * s + 2.0; }, 3, 3, 0, 1,
                                                "quad"),
                     a);
    out.emplace_back(ConeProfile::from_callable([](double s) { return std::cos(M_PI * s); }, -1,
                                                -1, 0, 1, "cos"),
                     a);
    out.emplace_back(ConeProfile::from_callable(
                         [](double s) { return std::pow(1 - s * s, 0.25) / std::abs(s); }, 0, 0,
                         1, 1, "frac"),
                     a);
    return out;
}

}  // namespace

TEST_CASE("I transform examples") {
    auto one = ZonalDensity::constant(1.0, 1.0);
    CHECK(transforms::transform_I_at(one, 0.5) == doctest::Approx(4.5).epsilon(1e-12));
    // endpoint value: 2a * int_{-1}^{1} f (1-t^2)^{a-1} dt  (continuity of I_a(f))
    CHECK(transforms::transform_I_at(one, 1.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(transforms::transform_I_at(one, -1.0) == doctest::Approx(4.0).epsilon(1e-12));

    // linear densities are annihilated (analytic path, 1e-12)
    for (double a : {0.5, 1.0, 1.5}) {
        auto lin = ZonalDensity::poly(a, {0.0, 1.0});
        for (double s : transforms::profile_grid(17))
            CHECK(std::abs(transforms::transform_I_at(lin, s)) <= 1e-12);
    }
}

TEST_CASE("I transform against the Simpson oracle") {
    // a = 1/2: the kernel (1-t^2)^{-1/2} is the arcsine weight, so the oracle
    // integrates the smooth function f(sin theta) instead
    auto f = ZonalDensity::poly(0.5, {1.0, 0.5, -0.25, 1.0});
    for (double s : {0.3, -0.7, 0.95}) {
        double sign = s > 0 ? 1 : -1;
        double inner = oracles::simpson(
            [&f](double th) {
                double t = std::clamp(std::sin(th), -1.0 + 1e-15, 1.0 - 1e-15);
                return f.eval_f(t);
            },
            -sign * 0.5 * M_PI, std::asin(s), 1e-13);
        double oracle = sign * (std::pow(1 - s * s, 0.5) * f.eval_f(s) / s + 1.0 * inner);
        CHECK(transforms::transform_I_at(f, s) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("I endpoints agree and parity is preserved") {
    for (double a : {0.5, 1.0}) {
        auto even = ZonalDensity::power(a, a / 2);
        auto odd = ZonalDensity::poly(a, {0.0, 1.0, 0.0, -0.5});
        auto ue = transforms::transform_I(even);
        auto uo = transforms::transform_I(odd);
        CHECK(std::abs(ue.endpoint() - ue.endpoint_minus()) <= 1e-10);
        CHECK(ue.parity() == 1);
        CHECK(uo.parity() == -1);
        for (double s : transforms::profile_grid(15)) {
            if (s <= 0) continue;
            CHECK(ue.eval(s) == doctest::Approx(ue.eval(-s)).epsilon(1e-10));
            CHECK(uo.eval(s) == doctest::Approx(-uo.eval(-s)).epsilon(1e-10));
        }
    }
}

TEST_CASE("J transform examples") {
    auto uc = ConeProfile::from_callable([](double) { return 3.0; }, 3, 3, 0, 1, "const");
    for (double a : {0.5, 1.0, 1.5}) {
        auto f = transforms::transform_J(uc, a);
        for (double s : {-0.9, -0.4, 0.2, 0.7})
            CHECK(f.eval_f(s) == doctest::Approx(3.0 * std::abs(s) / 2.0).epsilon(1e-10));
        CHECK(f.eval_f(0.0) == doctest::Approx(0.0));
    }
    auto uz = ConeProfile::from_callable([](double) { return 0.0; }, 0, 0, 0, 1, "zero");
    auto fz = transforms::transform_J(uz, 1.0);
    for (double s : {-0.5, 0.5}) CHECK(fz.eval_f(s) == doctest::Approx(0.0));
    // value at 0 is the limit of |t| u(t)
    auto ui = ConeProfile::from_callable([](double s) { return 2.0 / std::abs(s); }, 2, 2, 2.0, 1,
                                         "inv");
    CHECK(transforms::transform_J(ui, 0.5).eval_f(0.0) == doctest::Approx(2.0));
}

TEST_CASE("J rejects profiles outside C") {
    auto bad = ConeProfile::from_callable([](double s) { return s; }, 1, -1, 0, 0, "sign");
    CHECK_THROWS_AS(transforms::transform_J(bad, 1.0), ValidationError);
}

TEST_CASE("norm on C") {
    auto uc = ConeProfile::from_callable([](double) { return -2.5; }, -2.5, -2.5, 0, 1, "c");
    CHECK(transforms::norm_C(uc) == doctest::Approx(2.5).epsilon(1e-10));
    auto ui = ConeProfile::from_callable([](double s) { return 1.0 / std::abs(s); }, 1, 1, 1, 1,
                                         "inv");
    CHECK(transforms::norm_C(ui) == doctest::Approx(1.0).epsilon(1e-10));
    auto uz = ConeProfile::from_callable([](double) { return 0.0; }, 0, 0, 0, 1, "z");
    CHECK(transforms::norm_C(uz) == doctest::Approx(0.0));
}

TEST_CASE("roundtrip I(J(u)) = u") {
    for (double a : {0.5, 1.0, 1.5})
        for (auto& [u, aa] : profile_family(a))
            CHECK(transforms::roundtrip_IJ(u, aa).residual <= 1e-8);
}

TEST_CASE("roundtrip J(I(f)) with the even/odd structure") {
    for (double a : {0.5, 1.0, 1.5}) {
        auto even = ZonalDensity::power(a, a / 2);
        CHECK(transforms::roundtrip_JI(even).residual <= 1e-8);

        // pure linear density: correction constant is exactly 1, corrected residual 0
        auto lin = ZonalDensity::poly(a, {0.0, 1.0});
        auto r = transforms::roundtrip_JI(lin);
        CHECK(r.linear_correction == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.residual <= 1e-10);
        // raw difference is exactly the linear correction: J(I(t)) = 0
        auto jlin = transforms::transform_J(transforms::transform_I(lin), a);
        for (double s : {-0.6, 0.3}) CHECK(jlin.eval_f(s) == doctest::Approx(0.0).epsilon(1e-10));

        auto mixed = ZonalDensity::poly(a, {1.0, 0.5, -1.0, 0.25});
        CHECK(transforms::roundtrip_JI(mixed).residual <= 1e-8);
    }
}

TEST_CASE("continuity bound of I (1 + 4a with 5% slack)") {
    for (double a : {0.5, 1.0, 1.5}) {
        for (double frac : {0.25, 0.5, 0.75}) {
            auto f = ZonalDensity::power(a, frac * a);
            double nf = f.norm_Da().value;
            auto u = transforms::transform_I(f);
            CHECK(transforms::norm_C(u) <= 1.05 * (1 + 4 * a) * nf);
        }
    }
}

TEST_CASE("sampled profiles") {
    // sample u(s) = 1/|s| + s^2 on a grid with mandatory endpoint rows
    std::vector<double> ss = {-1.0}, uu = {2.0};
    for (double s : transforms::profile_grid(33)) {
        ss.push_back(s);
        uu.push_back(1.0 / std::abs(s) + s * s);
    }
    ss.push_back(1.0);
    uu.push_back(2.0);
    auto u = ConeProfile::from_samples(ss, uu, 1.0);
    CHECK(u.endpoint() == doctest::Approx(2.0));
    CHECK(u.eval(0.4) == doctest::Approx(1.0 / 0.4 + 0.16).epsilon(1e-3));
    auto mem = u.check_membership();
    CHECK(mem.endpoints_equal);
    CHECK(mem.limit_exists);

    // endpoint rows are mandatory
    std::vector<double> s2(ss.begin() + 1, ss.end());
    std::vector<double> u2(uu.begin() + 1, uu.end());
    CHECK_THROWS_AS(ConeProfile::from_samples(s2, u2, 1.0), ValidationError);
}
