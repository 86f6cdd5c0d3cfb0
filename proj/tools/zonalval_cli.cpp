// zonalval: batch CLI for zonal valuations on convex bodies.
//
// Subcommands: eval, cone-table, transform, reconstruct, steiner-check,
// cap-bound, functional, minkowski. All MC-backed commands require --seed;
// output is byte-identical for identical (config, seed) across runs and
// thread counts. Floating-point output uses 17 significant digits.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "zonalval/functional.hpp"
#include "zonalval/io.hpp"
#include "zonalval/reconstruct.hpp"

using namespace zonalval;

namespace {

int log_level() {
    const char* env = std::getenv("ZONALVAL_LOG");
    return env ? std::atoi(env) : 0;
}

void logv(const std::string& msg) {
    if (log_level() > 0) std::cerr << "[zonalval] " << msg << "\n";
}

struct Common {
    int n = 3;
    int j = 1;
    std::string density;
    std::string body;
    double tol = 1e-6;
    std::uint64_t seed = 0;
    bool seed_set = false;
    long long samples = 1000000;
    int grid = 64;
    std::string out;
    std::string format = "json";
    int threads = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--n", c.n, "ambient dimension (>= 2)");
    cmd->add_option("--j", c.j, "degree of homogeneity");
    cmd->add_option("--density", c.density, "density spec (power:b | poly:[...] | file | JSON)");
    cmd->add_option("--body", c.body, "body spec (cone:h | ball:r | disk:r | cylinder:r:h | cube:s | file | JSON)");
    cmd->add_option("--tol", c.tol, "target tolerance");
    cmd->add_option("--seed", c.seed, "RNG seed (mandatory for MC commands)")
        ->each([&c](const std::string&) { c.seed_set = true; });
    cmd->add_option("--samples", c.samples, "MC sample count");
    cmd->add_option("--grid", c.grid, "grid size");
    cmd->add_option("--out", c.out, "output path (stdout when absent)");
    cmd->add_option("--format", c.format, "json|csv");
    cmd->add_option("--threads", c.threads, "worker cap (0 = hardware)");
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty())
        std::cout << text;
    else
        io::write_file(c.out, text);
}

void require_seed(const Common& c) {
    if (!c.seed_set)
        throw ValidationError("this command is MC-backed: --seed is mandatory (no implicit "
                              "entropy)");
}

double canonical_a(const Common& c) { return 0.5 * (c.n - c.j - 1); }

std::string result_json(double value, double err, const std::string& backend, const Common& c) {
    std::ostringstream os;
    os << "{\"value\":" << fmt17(value) << ",\"err\":" << fmt17(err) << ",\"backend\":\""
       << backend << "\",\"n\":" << c.n << ",\"j\":" << c.j << "}\n";
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"zonal translation-invariant valuations on convex bodies"};
    app.require_subcommand(1);

    Common c;

    auto* eval = app.add_subcommand(
        "eval", "evaluate the valuation induced by a density on a body (principal value)");
    add_common(eval, c);
    auto* cone_table = app.add_subcommand(
        "cone-table", "values of the valuation on the cone family over an h grid");
    add_common(cone_table, c);
    std::string h_spec = "-4:4:17";
    cone_table->add_option("--h-grid", h_spec, "h grid lo:hi:count");
    auto* transform = app.add_subcommand("transform", "apply the I or J integral transform");
    add_common(transform, c);
    std::string direction = "ia";
    transform->add_option("--dir", direction, "ia|ja");
    std::string profile_csv;
    transform->add_option("--profile", profile_csv, "cone-profile CSV (for ja)");
    auto* reconstruct = app.add_subcommand(
        "reconstruct", "recover the density of a zonal valuation from cone samples");
    add_common(reconstruct, c);
    std::string table_csv;
    reconstruct->add_option("--table", table_csv, "external valuation CSV (body JSON, value)");
    bool emit_bodies = false;
    reconstruct->add_flag("--emit-grid-bodies", emit_bodies,
                          "print the body list an external table must cover");
    auto* steiner = app.add_subcommand(
        "steiner-check", "Monte-Carlo local-Steiner area-measure estimate");
    add_common(steiner, c);
    auto* cap = app.add_subcommand("cap-bound", "spherical-cap masses and Firey ratios");
    add_common(cap, c);
    double cap_r = 0.5;
    cap->add_option("--r", cap_r, "cap parameter r in [0,1]");
    auto* functional = app.add_subcommand(
        "functional", "R-transform machinery for valuations on convex functions");
    add_common(functional, c);
    std::string fmode = "r";
    functional->add_option("--mode", fmode, "r|rinv|zeta");
    std::string fsamples_csv;
    functional->add_option("--samples-csv", fsamples_csv, "(t, phi) CSV for rinv/zeta");
    double support_R = 1.0;
    functional->add_option("--support", support_R, "support radius for analytic zeta");
    auto* minkowski = app.add_subcommand(
        "minkowski", "support-function candidate h(y) = c0 + sum Phi_j(f_j) + cn V_n");
    add_common(minkowski, c);
    double mk_c0 = 0.0, mk_cn = 0.0;
    minkowski->add_option("--c0", mk_c0);
    minkowski->add_option("--cn", mk_cn);
    std::vector<std::string> mk_densities;
    minkowski->add_option("--densities", mk_densities,
                          "density specs f_1..f_{n-1} (poly for j = n-1)");

    CLI11_PARSE(app, argc, argv);

    if (c.n < 2 || c.j < 1 || c.j > c.n - 1)
        throw ValidationError("need n >= 2 and 1 <= j <= n-1");

    if (eval->parsed()) {
        auto f = io::density_from_spec(c.density, canonical_a(c));
        auto K = io::body_from_spec(c.body, c.n);
        if (K.kind == geom::BodyKind::Polytope) require_seed(c);
        auto handle = val::ValuationHandle::builtin_phi(c.n, c.j, f);
        auto r = handle.evaluate(K, {c.samples, c.seed, c.tol, c.threads});
        logv("eval backend=" + r.backend);
        emit(c, result_json(r.value, r.error, r.backend, c));
        return 0;
    }

    if (cone_table->parsed()) {
        auto f = io::density_from_spec(c.density, canonical_a(c));
        double lo, hi;
        int count;
        if (std::sscanf(h_spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1)
            throw ValidationError("cone-table: bad --h-grid (lo:hi:count)");
        std::ostringstream os;
        os << "h,s,phi\n";
        for (int i = 0; i < count; ++i) {
            double h = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
            double s = h == 0 ? 1.0 : (h > 0 ? 1.0 : -1.0) / std::sqrt(1 + h * h);
            os << fmt17(h) << "," << fmt17(s) << "," << fmt17(val::phi_cone(c.n, c.j, f, h))
               << "\n";
        }
        emit(c, os.str());
        return 0;
    }

    if (transform->parsed()) {
        double a = canonical_a(c);
        if (direction == "ia") {
            auto f = io::density_from_spec(c.density, a);
            auto u = transforms::transform_I(f);
            std::ostringstream os;
            os << "s,u\n";
            os << fmt17(-1.0) << "," << fmt17(u.endpoint_minus()) << "\n";
            for (double s : transforms::profile_grid(c.grid))
                os << fmt17(s) << "," << fmt17(u.eval(s)) << "\n";
            os << fmt17(1.0) << "," << fmt17(u.endpoint()) << "\n";
            emit(c, os.str());
            return 0;
        }
        if (direction == "ja") {
            if (profile_csv.empty()) throw ValidationError("transform ja: --profile required");
            auto tab = io::parse_csv(io::read_file(profile_csv));
            std::vector<double> ss, uu;
            for (const auto& row : tab.rows) {
                if (row.size() < 2) continue;
                try {
                    ss.push_back(std::stod(row[0]));
                } catch (...) {
                    continue;  // header
                }
                uu.push_back(std::stod(row[1]));
            }
            double lim0 = 0.0;
            for (std::size_t i = 0; i + 1 < ss.size(); ++i)
                if (ss[i] < 0 && ss[i + 1] > 0)
                    lim0 = 0.5 * (std::abs(ss[i]) * uu[i] + std::abs(ss[i + 1]) * uu[i + 1]);
            auto u = transforms::ConeProfile::from_samples(ss, uu, lim0);
            auto f = transforms::transform_J(u, a);
            emit(c, io::density_to_csv(f, transforms::profile_grid(c.grid)));
            return 0;
        }
        throw ValidationError("transform: --dir must be ia or ja");
    }

    if (reconstruct->parsed()) {
        recon::GridConfig grid{c.grid, 1e-3};
        if (emit_bodies) {
            std::ostringstream os;
            for (const auto& K : recon::required_grid_bodies(c.n, grid))
                os << io::body_key(K) << "\n";
            emit(c, os.str());
            return 0;
        }
        val::ValuationHandle handle =
            table_csv.empty()
                ? val::ValuationHandle::builtin_phi(
                      c.n, c.j, io::density_from_spec(c.density, canonical_a(c)))
                : recon::handle_from_csv(c.n, c.j, io::read_file(table_csv));
        auto f = recon::reconstruct_density(handle, grid);
        if (c.format == "csv") {
            emit(c, io::density_to_csv(f, f.samples().nodes));
        } else {
            emit(c, io::density_to_json(f) + "\n");
        }
        return 0;
    }

    if (steiner->parsed()) {
        require_seed(c);
        auto K = io::body_from_spec(c.body, c.n);
        geom::BodyView view(K);
        measures::SteinerConfig cfg;
        cfg.band_edges = measures::default_bands();
        cfg.rho = measures::default_rho(view, c.n);
        cfg.samples = c.samples;
        cfg.seed = c.seed;
        cfg.threads = c.threads;
        auto est = measures::mc_steiner_estimate(view, cfg);
        emit(c, est.to_json() + "\n");
        return 0;
    }

    if (cap->parsed()) {
        auto K = io::body_from_spec(c.body, c.n);
        std::optional<measures::SteinerConfig> cfg;
        if (!measures::zonal_measure_of(K, c.j)) {
            require_seed(c);
            measures::SteinerConfig mc;
            mc.samples = c.samples;
            mc.seed = c.seed;
            mc.threads = c.threads;
            cfg = mc;
        }
        auto cm = measures::cap_mass(K, c.j, cap_r, cfg);
        double ratio = measures::firey_ratio(K, c.j, cap_r, cfg);
        std::ostringstream os;
        os << "{\"mass\":" << fmt17(cm.mass) << ",\"stderr\":" << fmt17(cm.stderr_)
           << ",\"firey_ratio\":" << fmt17(ratio) << ",\"backend\":\"" << cm.backend
           << "\",\"r\":" << fmt17(cap_r) << ",\"n\":" << c.n << ",\"j\":" << c.j << "}\n";
        emit(c, os.str());
        return 0;
    }

    if (functional->parsed()) {
        const int p = c.n - c.j;
        (void)p;
        if (fmode == "r") {
            // analytic example family: zeta(s) = (1-s)_+ scaled to --support
            double R = support_R;
            auto zeta = fnal::ZetaDensity::callable(
                [R](double s) { return std::max(0.0, 1.0 - s / R); }, R);
            std::ostringstream os;
            os << "t,R_zeta,v_star\n";
            for (int i = 0; i <= c.grid; ++i) {
                double t = R * 1.2 * i / c.grid;
                os << fmt17(t) << "," << fmt17(fnal::r_transform(zeta, c.n, c.j, t)) << ","
                   << fmt17(fnal::v_star_on_ut(zeta, c.n, c.j, t)) << "\n";
            }
            emit(c, os.str());
            return 0;
        }
        if (fmode == "rinv" || fmode == "zeta") {
            if (fsamples_csv.empty())
                throw ValidationError("functional " + fmode + ": --samples-csv required");
            auto tab = io::parse_csv(io::read_file(fsamples_csv));
            std::vector<double> t, phi;
            for (const auto& row : tab.rows) {
                if (row.size() < 2) continue;
                try {
                    t.push_back(std::stod(row[0]));
                } catch (...) {
                    continue;
                }
                phi.push_back(std::stod(row[1]));
            }
            std::ostringstream os;
            if (fmode == "rinv") {
                auto inv = fnal::r_inverse_sampled(t, phi, c.n, c.j);
                if (inv.noisy_derivative)
                    std::cerr << "[zonalval] warning: noisy derivative, oscillation "
                              << fmt17(inv.oscillation) << "\n";
                os << "t,zeta\n";
                for (std::size_t i = 0; i < inv.zeta.nodes().size(); ++i)
                    os << fmt17(inv.zeta.nodes()[i]) << "," << fmt17(inv.zeta.values()[i])
                       << "\n";
            } else {
                auto rec = fnal::reconstruct_zeta(t, phi, c.n, c.j);
                if (rec.compact_support_warning)
                    std::cerr << "[zonalval] warning: samples not eventually zero; handle may "
                                 "not be compactly supported\n";
                os << "{\"residual\":" << fmt17(rec.roundtrip_residual) << ",\"grid\":[";
                for (std::size_t i = 0; i < rec.zeta.nodes().size(); ++i)
                    os << (i ? "," : "") << fmt17(rec.zeta.nodes()[i]);
                os << "],\"zeta\":[";
                for (std::size_t i = 0; i < rec.zeta.values().size(); ++i)
                    os << (i ? "," : "") << fmt17(rec.zeta.values()[i]);
                os << "]}\n";
            }
            emit(c, os.str());
            return 0;
        }
        throw ValidationError("functional: --mode must be r, rinv or zeta");
    }

    if (minkowski->parsed()) {
        require_seed(c);
        auto K = io::body_from_spec(c.body, c.n);
        if (static_cast<int>(mk_densities.size()) != c.n - 1)
            throw ValidationError("minkowski: need exactly n-1 densities");
        std::vector<dspace::ZonalDensity> fs;
        for (int j = 1; j <= c.n - 1; ++j)
            fs.push_back(io::density_from_spec(mk_densities[j - 1], 0.5 * (c.n - j - 1) > 0
                                                                        ? 0.5 * (c.n - j - 1)
                                                                        : 0.5));
        auto grid = geom::sphere_grid(c.n, c.grid, c.seed);
        auto cand = val::minkowski_support_candidate(mk_c0, mk_cn, fs, K, grid,
                                                     {c.samples, c.seed, c.tol, c.threads});
        std::ostringstream os;
        os << "{\"subadditivity_violations\":" << cand.subadditivity_violations
           << ",\"worst_margin\":" << fmt17(cand.worst_margin) << ",\"h\":[";
        for (std::size_t i = 0; i < cand.h.size(); ++i) os << (i ? "," : "") << fmt17(cand.h[i]);
        os << "]}\n";
        emit(c, os.str());
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const CapabilityError& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
