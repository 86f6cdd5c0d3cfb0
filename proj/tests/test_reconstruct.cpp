#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "zonalval/io.hpp"
#include "zonalval/reconstruct.hpp"

using namespace zonalval;
using dspace::ZonalDensity;
using val::ValuationHandle;

namespace {

double weighted_roundtrip_error(const ZonalDensity& got, const ZonalDensity& want, int nodes) {
    double a = want.a();
    double err = 0.0;
    for (double s : transforms::profile_grid(nodes)) {
        double w = std::pow(1 - s * s, a);
        err = std::max(err, std::abs(w * (got.eval_f(s) - want.eval_f(s))));
    }
    return err;
}

}  // namespace

TEST_CASE("cone profile sampling of a builtin handle") {
    auto one = ZonalDensity::constant(0.5, 1.0);
    auto mu = ValuationHandle::builtin_phi(3, 1, one);
    auto sample = recon::sample_cone_profile(mu, {48, 1e-3});
    // endpoint rows are the disk
    CHECK(sample.phi.front() == doctest::Approx(M_PI * M_PI).epsilon(1e-12));
    CHECK(sample.phi.back() == doctest::Approx(M_PI * M_PI).epsilon(1e-12));
    // s = 1/sqrt(2) is the unit cone
    double target = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < sample.s.size(); ++i) {
        if (std::abs(sample.s[i] - target) < 2e-2) {
            double h = std::sqrt(1 - sq(sample.s[i])) / sample.s[i];
            CHECK(sample.phi[i] == doctest::Approx(val::phi_cone(3, 1, one, h)).epsilon(1e-12));
        }
    }
    // 0-limit estimates: omega_{n-1} f(0) from the truncated-cone route
    CHECK(sample.limit0_plus == doctest::Approx(M_PI).epsilon(1e-3));
    CHECK(sample.limit0_minus == doctest::Approx(M_PI).epsilon(1e-3));
    CHECK(std::abs(sample.limit0_plus - sample.limit0_minus) <= 1e-6);

    // CSV export round-trip shape
    auto csv = sample.to_csv();
    auto tab = io::parse_csv(csv);
    CHECK(tab.rows.size() == sample.s.size() + 1);

    // zero handle: all samples vanish
    auto zero = ValuationHandle::external(3, 1, [](const geom::ConvexBody&) { return 0.0; });
    auto zs = recon::sample_cone_profile(zero, {24, 1e-3});
    for (double v : zs.phi) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("reconstruction round trips (built-in valuations)") {
    // even power density: exact member of the canonical complement
    auto f = ZonalDensity::power(0.5, 0.25);
    auto mu = ValuationHandle::builtin_phi(3, 1, f);
    auto fr = recon::reconstruct_density(mu, {32, 1e-3});
    CHECK(weighted_roundtrip_error(fr, f.center_project(3), 32) <= 1e-6);
    CHECK(fr.has_samples());
    CHECK(fr.samples().nodes.size() == 32);

    // linear density: reconstruction returns (numerically) zero
    auto lin = ZonalDensity::poly(0.5, {0.0, 1.0});
    auto mul = ValuationHandle::builtin_phi(3, 1, lin);
    auto fl = recon::reconstruct_density(mul, {32, 1e-3});
    for (double s : transforms::profile_grid(16))
        CHECK(std::abs(fl.eval_f(s)) <= 1e-7);

    // odd density: reconstruction equals the centered projection
    auto odd = ZonalDensity::poly(0.5, {0.0, 0.4, 0.0, 1.0});
    auto muo = ValuationHandle::builtin_phi(3, 1, odd);
    auto fo = recon::reconstruct_density(muo, {32, 1e-3});
    CHECK(weighted_roundtrip_error(fo, odd.center_project(3), 32) <= 1e-7);
}

TEST_CASE("frustum identity residual vanishes for builtin handles") {
    auto f = ZonalDensity::power(1.0, 0.5);
    auto mu = ValuationHandle::builtin_phi(4, 1, f);
    for (double h : {0.5, 1.0, 2.0})
        for (double eps : {0.25, 0.5})
            CHECK(recon::frustum_identity_residual(mu, h, eps) <= 1e-9);
    // degenerate cuts: residual tends to zero at both ends
    CHECK(recon::frustum_identity_residual(mu, 1.0, 1e-6) <= 1e-6);
    CHECK(recon::frustum_identity_residual(mu, 1.0, 1.0 - 1e-9) <= 1e-6);
}

TEST_CASE("cylinder limit identity") {
    auto f = ZonalDensity::power(0.5, 0.25);
    auto mu = ValuationHandle::builtin_phi(3, 1, f);
    CHECK(recon::cylinder_limit(mu) == doctest::Approx(M_PI * f.eval_f(0.0)).epsilon(1e-12));

    // density vanishing at 0: limit 0
    auto f0 = ZonalDensity::poly(0.5, {0.0, 0.0, 1.0});
    auto mu0 = ValuationHandle::builtin_phi(3, 1, f0);
    CHECK(recon::cylinder_limit(mu0) == doctest::Approx(0.0).epsilon(1e-12));

    auto zero = ValuationHandle::external(3, 1, [](const geom::ConvexBody&) { return 0.0; });
    CHECK(recon::cylinder_limit(zero) == doctest::Approx(0.0));

    // cross-check against the profile's 0-limit route
    auto sample = recon::sample_cone_profile(mu, {48, 1e-3});
    CHECK(recon::cylinder_limit(mu) ==
          doctest::Approx(0.5 * (sample.limit0_plus + sample.limit0_minus)).epsilon(1e-3));
}

TEST_CASE("inconsistent handles are rejected with a diagnostic") {
    // one-sided limits of |s| phi disagree: not a translation-invariant valuation
    auto fake = ValuationHandle::external(3, 1, [](const geom::ConvexBody& K) {
        if (K.kind == geom::BodyKind::Cone)
            return (K.h >= 0 ? 1.0 : 2.0) * std::sqrt(1.0 + K.h * K.h);
        if (K.kind == geom::BodyKind::Disk) return 1.0;
        if (K.kind == geom::BodyKind::Revolution) {
            bool up = K.profile.back().second < K.profile.front().second;
            return (up ? 1.0 : 2.0) * (K.profile.back().first - K.profile.front().first + 1.0);
        }
        return 1.0;
    });
    CHECK_THROWS_AS(recon::reconstruct_density(fake, {32, 1e-3}), ValidationError);
}

TEST_CASE("external table handles reconstruct from the exact grid") {
    auto f = ZonalDensity::constant(0.5, 1.0);
    auto mu = ValuationHandle::builtin_phi(3, 1, f);
    recon::GridConfig grid{64, 1e-3};
    // build the CSV an external tool would supply
    std::ostringstream csv;
    for (const auto& K : recon::required_grid_bodies(3, grid))
        csv << io::body_key(K) << "," << fmt17(mu.evaluate(K).value) << "\n";
    auto handle = recon::handle_from_csv(3, 1, csv.str());
    CHECK(handle.is_table());
    CHECK(handle.evaluate(geom::make_disk(3, 1.0)).value ==
          doctest::Approx(M_PI * M_PI).epsilon(1e-12));
    auto fr = recon::reconstruct_density(handle, grid);
    // interpolation-backed route: coarser tolerance than the callable path
    CHECK(weighted_roundtrip_error(fr, f, 24) <= 2e-2);
    // missing rows are a capability error
    auto sparse = recon::handle_from_csv(3, 1, csv.str().substr(csv.str().find('\n') + 1));
    CHECK_THROWS_AS(recon::reconstruct_density(sparse, grid), CapabilityError);
}

TEST_CASE("norm bound transported through the cone profile") {
    // ||phi_mu||_C <= (1+4a) omega_{n-1} ||f||_{D^a} with 5% slack
    for (double beta : {0.125, 0.25}) {
        auto f = ZonalDensity::power(0.5, beta);
        auto mu = ValuationHandle::builtin_phi(3, 1, f);
        auto muc = mu;
        auto u = transforms::ConeProfile::from_callable(
            [muc](double s) {
                return muc.evaluate(recon::cone_for_s(3, s)).value;
            },
            mu.evaluate(geom::make_disk(3, 1.0)).value,
            mu.evaluate(geom::make_disk(3, 1.0)).value, M_PI * f.eval_f(0.0), 1, "phi_mu");
        double bound = (1 + 4 * 0.5) * M_PI * f.norm_Da().value;
        CHECK(transforms::norm_C(u) <= 1.05 * bound);
    }
}
