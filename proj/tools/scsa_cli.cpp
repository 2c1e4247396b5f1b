// Command-line front end: generate test signals, inject noise, run the
// reconstruction at fixed h, sweep h, and compute noise-error bounds. Every
// run is fully determined by its flags; JSON artifacts embed a manifest with
// the tool version, the configuration, and input checksums.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scsa/scsa.hpp"

namespace {

using nlohmann::json;

scsa::Grid parse_grid_spec(const std::string& spec) {
    double a = 0.0;
    double b = 0.0;
    unsigned long m = 0;
    if (std::sscanf(spec.c_str(), "%lf,%lf,%lu", &a, &b, &m) != 3)
        throw scsa::DomainError("--grid expects a,b,M (e.g. 0,12,1201)");
    return scsa::make_grid(a, b, m);
}

std::vector<double> parse_h_grid(const std::string& spec) {
    double start = 0.0;
    double step = 0.0;
    double stop = 0.0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3)
        throw scsa::DomainError("--h-grid expects start:step:stop (e.g. 0.2:0.1:2.0)");
    if (!(step > 0.0) || !(start > 0.0) || !(stop >= start))
        throw scsa::DomainError("--h-grid values must be positive with stop >= start");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double h = start + step * i;
        if (h > stop + 1e-9 * step) break;
        out.push_back(h);
    }
    return out;
}

scsa::DiffScheme parse_scheme(const std::string& name) {
    if (name == "fourier") return scsa::DiffScheme::fourier_pseudospectral;
    if (name == "fourier-compat") return scsa::DiffScheme::fourier_pseudospectral_compat;
    if (name == "fd") return scsa::DiffScheme::central_fd_dirichlet;
    throw scsa::DomainError("--scheme must be fourier, fourier-compat, or fd");
}

void write_signal_artifact(const std::string& path_prefix, const std::string& name,
                           const scsa::SampledSignal& s, const std::string& format) {
    if (format == "csv") {
        scsa::write_signal_csv(path_prefix + "_" + name + ".csv", s);
        return;
    }
    json j;
    std::vector<double> xs(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) xs[i] = s.grid.x(i);
    j["x"] = xs;
    j["value"] = s.values;
    scsa::write_json(path_prefix + "_" + name + ".json", j);
}

// ---------------------------------------------------------------------------

int cmd_generate(const std::string& grid_spec, double center, std::optional<double> snr,
                 std::optional<double> sigma, double mu, std::uint64_t seed,
                 const std::string& out, const std::string& format) {
    const auto grid = parse_grid_spec(grid_spec);
    const auto clean = scsa::sech2_signal(grid, center);

    scsa::NoiseModel model;
    model.mean = mu;
    model.seed = seed;
    std::optional<double> target = snr;
    if (!snr && !sigma) target = 11.0;  // default run: 11 dB observation
    if (sigma) model.variance = *sigma * *sigma;

    const auto obs = scsa::add_noise(clean, model, target);

    write_signal_artifact(out, "clean", clean, format);
    write_signal_artifact(out, "noisy", obs.noisy, format);
    write_signal_artifact(out, "noise", obs.noise, format);

    json config = {{"grid", grid_spec}, {"center", center},  {"mu", mu},
                   {"seed", seed},      {"format", format}};
    if (target) config["snr"] = *target;
    if (sigma) config["sigma"] = *sigma;
    json manifest = scsa::make_manifest("generate", config, {});
    double noise_power = 0.0;
    for (double v : obs.noise.values) noise_power += v * v;
    if (noise_power > 0.0) manifest["realized_snr_db"] = scsa::snr_db(clean, obs.noise);
    manifest["realized_sigma"] =
        std::sqrt(noise_power / static_cast<double>(grid.M));
    scsa::write_json(out + "_manifest.json", manifest);
    std::printf("wrote %s_{clean,noisy,noise} and %s_manifest.json\n", out.c_str(),
                out.c_str());
    return 0;
}

int cmd_denoise(const std::string& in, double h, const std::string& scheme_name,
                std::optional<double> tol_neg, const std::string& out,
                const std::string& format) {
    const auto noisy = scsa::read_signal_csv(in);
    const auto d2 = scsa::make_d2(parse_scheme(scheme_name), noisy.grid.M, noisy.grid.dx);
    const auto spec = scsa::negative_spectrum(scsa::assemble(h, d2, noisy), tol_neg);
    const auto recon = scsa::reconstruct(spec);

    write_signal_artifact(out, "denoised", recon, format);

    json config = {{"in", in}, {"h", h}, {"scheme", scheme_name}, {"format", format}};
    if (tol_neg) config["tol_neg"] = *tol_neg;
    json report = scsa::spectrum_to_json(spec);
    report["manifest"] = scsa::make_manifest("denoise", config, {in});
    scsa::write_json(out + "_spectrum.json", report);
    std::printf("h=%g: N_h=%zu, wrote %s_denoised and %s_spectrum.json\n", h, spec.count(),
                out.c_str(), out.c_str());
    return 0;
}

int cmd_sweep(const std::string& in, const std::string& clean_path,
              const std::string& h_grid_spec, const std::string& scheme_name, double wc,
              std::optional<double> sigma, bool gaussian, double gamma, double mu,
              std::size_t threads, const std::string& out) {
    const auto noisy = scsa::read_signal_csv(in);
    std::optional<scsa::SampledSignal> clean;
    if (!clean_path.empty()) clean = scsa::read_signal_csv(clean_path);

    const auto d2 = scsa::make_d2(parse_scheme(scheme_name), noisy.grid.M, noisy.grid.dx);
    const auto h_grid = parse_h_grid(h_grid_spec);
    const auto filter = scsa::butterworth2(wc);

    scsa::SweepOptions options;
    options.threads = threads;
    if (sigma)
        options.bound_B = gaussian ? scsa::three_sigma_bound(*sigma).B
                                   : scsa::chebyshev_bound(mu, *sigma, gamma).B;

    const auto result = scsa::sweep(noisy, d2, h_grid, filter, clean, options);
    const auto sel = scsa::select_h(result);

    scsa::atomic_write(out + "_sweep.csv", scsa::sweep_to_csv(result));

    json config = {{"in", in},         {"h_grid", h_grid_spec}, {"scheme", scheme_name},
                   {"wc", wc},         {"gaussian", gaussian},  {"gamma", gamma},
                   {"mu", mu},         {"threads", threads}};
    if (!clean_path.empty()) config["clean"] = clean_path;
    if (sigma) config["sigma"] = *sigma;
    std::vector<std::string> inputs = {in};
    if (!clean_path.empty()) inputs.push_back(clean_path);
    json summary = scsa::sweep_summary_to_json(result, sel);
    summary["manifest"] = scsa::make_manifest("sweep", config, inputs);
    scsa::write_json(out + "_summary.json", summary);
    std::printf("recommended h = %g%s, wrote %s_sweep.csv and %s_summary.json\n",
                sel.recommended_h, sel.no_interior_minimum ? " (no interior minimum)" : "",
                out.c_str(), out.c_str());
    return 0;
}

int cmd_bound(const std::string& in, double h, const std::string& scheme_name, double sigma,
              double mu, double gamma, bool gaussian, const std::string& clean_path,
              const std::string& out) {
    const auto noisy = scsa::read_signal_csv(in);
    const auto d2 = scsa::make_d2(parse_scheme(scheme_name), noisy.grid.M, noisy.grid.dx);
    const auto noisy_spec = scsa::negative_spectrum(scsa::assemble(h, d2, noisy));

    const auto cheb =
        gaussian ? scsa::three_sigma_bound(sigma) : scsa::chebyshev_bound(mu, sigma, gamma);
    const auto bound = scsa::aposteriori_bound(noisy_spec, cheb.B, cheb.p);

    scsa::BoundReport report;
    report.h = h;
    report.n_h = noisy_spec.count();
    report.B = cheb.B;
    report.gamma = cheb.gamma;
    report.p = cheb.p;
    report.bound_value = bound.bound_value;
    report.per_mode_terms = bound.per_mode_terms;
    report.c5 = scsa::C5Status::unknown;

    if (!clean_path.empty()) {
        const auto clean = scsa::read_signal_csv(clean_path);
        scsa::require_same_grid(clean, noisy, "bound");
        const auto clean_spec = scsa::negative_spectrum(scsa::assemble(h, d2, clean));
        report.c5 = (clean_spec.count() == noisy_spec.count()) ? scsa::C5Status::satisfied
                                                               : scsa::C5Status::violated;
        if (report.c5 == scsa::C5Status::satisfied)
            report.c6_violation_modes = scsa::c6_violations(clean_spec, noisy_spec);
        report.empirical_error =
            scsa::l2_error(scsa::reconstruct(noisy_spec), scsa::reconstruct(clean_spec));
    }

    json config = {{"in", in},       {"h", h},         {"scheme", scheme_name},
                   {"sigma", sigma}, {"mu", mu},       {"gamma", gamma},
                   {"gaussian", gaussian}};
    if (!clean_path.empty()) config["clean"] = clean_path;
    std::vector<std::string> inputs = {in};
    if (!clean_path.empty()) inputs.push_back(clean_path);
    json j = scsa::bound_report_to_json(report);
    j["manifest"] = scsa::make_manifest("bound", config, inputs);
    scsa::write_json(out + "_bound.json", j);
    std::printf("h=%g: N_h=%zu, bound=%g, wrote %s_bound.json\n", h, report.n_h,
                report.bound_value, out.c_str());
    return 0;
}

int cmd_nh_profile(const std::string& in, const std::string& h_grid_spec,
                   const std::string& scheme_name, const std::string& out) {
    const auto signal = scsa::read_signal_csv(in);
    const auto d2 = scsa::make_d2(parse_scheme(scheme_name), signal.grid.M, signal.grid.dx);
    const auto profile = scsa::nh_profile(signal, d2, parse_h_grid(h_grid_spec));

    std::string csv = "h,N_h\n";
    json points = json::array();
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const auto& pt = profile[i];
        csv += scsa::format_full(pt.h) + "," + std::to_string(pt.n_h) + "\n";
        points.push_back({{"h", pt.h}, {"N_h", pt.n_h}});
        // only the existence of a smaller h' with N_{h'} >= N_h is guaranteed,
        // so count increases are logged, not rejected
        if (i > 0 && pt.n_h > profile[i - 1].n_h)
            std::fprintf(stderr, "note: N_h increased from %zu to %zu between h=%g and h=%g\n",
                         profile[i - 1].n_h, pt.n_h, profile[i - 1].h, pt.h);
    }
    scsa::atomic_write(out + "_profile.csv", csv);

    json config = {{"in", in}, {"h_grid", h_grid_spec}, {"scheme", scheme_name}};
    json j;
    j["points"] = std::move(points);
    j["manifest"] = scsa::make_manifest("nh-profile", config, {in});
    scsa::write_json(out + "_profile.json", j);
    std::printf("wrote %s_profile.csv and %s_profile.json\n", out.c_str(), out.c_str());
    return 0;
}

int cmd_d2_dump(const std::string& grid_spec, const std::string& scheme_name,
                const std::string& out) {
    const auto grid = parse_grid_spec(grid_spec);
    const auto d2 = scsa::make_d2(parse_scheme(scheme_name), grid.M, grid.dx);
    scsa::atomic_write(out, scsa::matrix_to_text(d2.entries));
    std::printf("wrote %zux%zu %s matrix to %s\n", d2.M, d2.M, scheme_name.c_str(),
                out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-classical signal analysis toolkit"};
    app.require_subcommand(1);
    // --h is a domain flag, so the help short name -h must not exist
    app.set_help_flag("--help", "print help");

    std::string grid_spec = "0,12,1201";
    std::string h_grid_spec = "0.2:0.1:2.0";
    std::string scheme = "fourier";
    std::string in_path;
    std::string clean_path;
    std::string out_prefix;
    std::string format = "csv";
    double center = 6.0;
    double h = 0.0;
    double wc = 0.01;
    double gamma = 3.0;
    double mu = 0.0;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    bool gaussian = false;
    std::optional<double> snr;
    std::optional<double> sigma;
    std::optional<double> tol_neg;

    auto* gen = app.add_subcommand("generate", "write a clean/noisy signal pair");
    gen->set_help_flag("--help", "print help");
    gen->add_option("--grid", grid_spec, "a,b,M sampling grid")->capture_default_str();
    gen->add_option("--center", center, "sech^2 center")->capture_default_str();
    gen->add_option("--snr", snr, "target SNR in dB (default 11 when --sigma is absent)");
    gen->add_option("--sigma", sigma, "noise standard deviation (ignored when --snr given)");
    gen->add_option("--mu", mu, "noise mean")->capture_default_str();
    gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
    gen->add_option("--out", out_prefix, "output prefix")->default_val("signal");
    gen->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* den = app.add_subcommand("denoise", "reconstruct at a fixed h");
    den->set_help_flag("--help", "print help");
    den->add_option("--in", in_path, "input signal CSV")->required();
    den->add_option("--h", h, "semi-classical parameter")->required();
    den->add_option("--scheme", scheme, "fourier, fourier-compat, or fd")
        ->capture_default_str();
    den->add_option("--tol-neg", tol_neg, "negative-eigenvalue gate override");
    den->add_option("--out", out_prefix, "output prefix")->default_val("denoise");
    den->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* sw = app.add_subcommand("sweep", "run the h grid search");
    sw->set_help_flag("--help", "print help");
    sw->add_option("--in", in_path, "noisy signal CSV")->required();
    sw->add_option("--clean", clean_path, "optional clean reference CSV");
    sw->add_option("--h-grid", h_grid_spec, "start:step:stop")->capture_default_str();
    sw->add_option("--scheme", scheme, "fourier, fourier-compat, or fd")
        ->capture_default_str();
    sw->add_option("--wc", wc, "Butterworth cutoff, radians/sample")->capture_default_str();
    sw->add_option("--sigma", sigma, "noise std; enables the bound column");
    sw->add_flag("--gaussian", gaussian, "use the three-sigma bound instead of Chebyshev");
    sw->add_option("--gamma", gamma, "Chebyshev gamma")->capture_default_str();
    sw->add_option("--mu", mu, "noise mean for the Chebyshev bound")->capture_default_str();
    sw->add_option("--threads", threads, "sweep worker threads (0 = auto)")
        ->capture_default_str();
    sw->add_option("--out", out_prefix, "output prefix")->default_val("sweep");

    auto* bnd = app.add_subcommand("bound", "a-posteriori noise-error bound at fixed h");
    bnd->set_help_flag("--help", "print help");
    bnd->add_option("--in", in_path, "noisy signal CSV")->required();
    bnd->add_option("--h", h, "semi-classical parameter")->required();
    bnd->add_option("--scheme", scheme, "fourier, fourier-compat, or fd")
        ->capture_default_str();
    bnd->add_option("--sigma", sigma, "noise standard deviation")->required();
    bnd->add_option("--mu", mu, "noise mean")->capture_default_str();
    bnd->add_option("--gamma", gamma, "Chebyshev gamma")->capture_default_str();
    bnd->add_flag("--gaussian", gaussian, "use the three-sigma bound (p = 0.997)");
    bnd->add_option("--clean", clean_path, "clean reference; enables the (C5) check");
    bnd->add_option("--out", out_prefix, "output prefix")->default_val("bound");

    auto* prof = app.add_subcommand("nh-profile", "negative-eigenvalue count along an h grid");
    prof->set_help_flag("--help", "print help");
    prof->add_option("--in", in_path, "input signal CSV")->required();
    prof->add_option("--h-grid", h_grid_spec, "start:step:stop")->capture_default_str();
    prof->add_option("--scheme", scheme, "fourier, fourier-compat, or fd")
        ->capture_default_str();
    prof->add_option("--out", out_prefix, "output prefix")->default_val("profile");

    auto* dump = app.add_subcommand("d2-dump", "write a differentiation matrix as text");
    dump->set_help_flag("--help", "print help");
    dump->add_option("--grid", grid_spec, "a,b,M sampling grid")->capture_default_str();
    dump->add_option("--scheme", scheme, "fourier, fourier-compat, or fd")
        ->capture_default_str();
    dump->add_option("--out", out_prefix, "output path")->default_val("d2.txt");

    try {
        app.parse(argc, argv);
        if (gen->parsed())
            return cmd_generate(grid_spec, center, snr, sigma, mu, seed, out_prefix, format);
        if (den->parsed())
            return cmd_denoise(in_path, h, scheme, tol_neg, out_prefix, format);
        if (sw->parsed())
            return cmd_sweep(in_path, clean_path, h_grid_spec, scheme, wc, sigma, gaussian,
                             gamma, mu, threads, out_prefix);
        if (bnd->parsed())
            return cmd_bound(in_path, h, scheme, *sigma, mu, gamma, gaussian, clean_path,
                             out_prefix);
        if (prof->parsed()) return cmd_nh_profile(in_path, h_grid_spec, scheme, out_prefix);
        if (dump->parsed()) return cmd_d2_dump(grid_spec, scheme, out_prefix);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const scsa::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const scsa::NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const scsa::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 3;
    }
}
