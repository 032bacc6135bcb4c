// Command-line surface: synth | noise | filter | psnr | hist | bench.
// Exit codes: 0 success, 2 parameter/usage errors, 3 I/O or parse errors.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noisebench/bench.hpp"
#include "noisebench/errors.hpp"
#include "noisebench/metrics.hpp"
#include "noisebench/version.hpp"

namespace {

using namespace noisebench;

struct NoiseFlags {
    std::optional<double> mu, sigma, density, salt_fraction, variance, peak, amplitude, phase, a, b;
    std::optional<int> cycles_x, cycles_y;

    void register_options(CLI::App* cmd) {
        cmd->add_option("--mu", mu, "gaussian: mean of the additive noise");
        cmd->add_option("--sigma", sigma, "gaussian: standard deviation of the additive noise");
        cmd->add_option("--density", density, "salt_pepper: replacement probability in [0,1]");
        cmd->add_option("--salt-fraction", salt_fraction, "salt_pepper: fraction of replacements that are 255");
        cmd->add_option("--variance", variance, "speckle: variance of the mean-1 multiplier");
        cmd->add_option("--peak", peak, "poisson: intensity mapped to this expected count");
        cmd->add_option("--amplitude", amplitude, "periodic: sinusoid amplitude");
        cmd->add_option("--cycles-x", cycles_x, "periodic: horizontal cycles across the image");
        cmd->add_option("--cycles-y", cycles_y, "periodic: vertical cycles across the image");
        cmd->add_option("--phase", phase, "periodic: sinusoid phase in radians");
        cmd->add_option("--a", a, "erlang/exponential/rayleigh: rate or offset parameter");
        cmd->add_option("--b", b, "erlang: integer shape; rayleigh: scale");
    }

    NoiseSpec build(NoiseKind kind, bool clip) const {
        NoiseSpec spec = make_noise_spec(kind, clip);
        std::vector<const char*> unused;
        auto claim = [&unused](const char* flag, const auto& opt, auto* target) {
            if (!opt)
                return;
            if (target == nullptr) {
                unused.push_back(flag);
                return;
            }
            *target = static_cast<std::decay_t<decltype(*target)>>(*opt);
        };
        std::visit(
            [&](auto& p) {
                using T = std::decay_t<decltype(p)>;
                GaussianNoise* g = nullptr;
                SaltPepperNoise* sp = nullptr;
                SpeckleNoise* sk = nullptr;
                PoissonNoise* po = nullptr;
                PeriodicNoise* pe = nullptr;
                ErlangNoise* er = nullptr;
                ExponentialNoise* ex = nullptr;
                RayleighNoise* ra = nullptr;
                if constexpr (std::is_same_v<T, GaussianNoise>)
                    g = &p;
                else if constexpr (std::is_same_v<T, SaltPepperNoise>)
                    sp = &p;
                else if constexpr (std::is_same_v<T, SpeckleNoise>)
                    sk = &p;
                else if constexpr (std::is_same_v<T, PoissonNoise>)
                    po = &p;
                else if constexpr (std::is_same_v<T, PeriodicNoise>)
                    pe = &p;
                else if constexpr (std::is_same_v<T, ErlangNoise>)
                    er = &p;
                else if constexpr (std::is_same_v<T, ExponentialNoise>)
                    ex = &p;
                else
                    ra = &p;
                claim("--mu", mu, g ? &g->mu : nullptr);
                claim("--sigma", sigma, g ? &g->sigma : nullptr);
                claim("--density", density, sp ? &sp->density : nullptr);
                claim("--salt-fraction", salt_fraction, sp ? &sp->salt_fraction : nullptr);
                claim("--variance", variance, sk ? &sk->variance : nullptr);
                claim("--peak", peak, po ? &po->peak : nullptr);
                claim("--amplitude", amplitude, pe ? &pe->amplitude : nullptr);
                claim("--cycles-x", cycles_x, pe ? &pe->cycles_x : nullptr);
                claim("--cycles-y", cycles_y, pe ? &pe->cycles_y : nullptr);
                claim("--phase", phase, pe ? &pe->phase : nullptr);
                double* a_target = er ? &er->a : (ex ? &ex->a : (ra ? &ra->a : nullptr));
                claim("--a", a, a_target);
                if (b) {
                    if (er) {
                        if (*b != std::floor(*b) || *b < 1.0 || *b > 1e6)
                            throw parameter_error("--b must be a positive integer for erlang noise, got " +
                                                  std::to_string(*b));
                        er->b = static_cast<int>(*b);
                    } else if (ra) {
                        ra->b = *b;
                    } else {
                        unused.push_back("--b");
                    }
                }
            },
            spec.params);
        if (!unused.empty()) {
            std::string msg = "flag(s) not applicable to noise kind ";
            msg += noise_name(kind);
            msg += ":";
            for (const char* flag : unused) {
                msg += ' ';
                msg += flag;
            }
            throw parameter_error(msg);
        }
        return spec;
    }
};

struct BenchOverrides {
    std::optional<double> gaussian_mu, gaussian_sigma;
    std::optional<double> sp_density, sp_salt_fraction;
    std::optional<double> speckle_variance;
    std::optional<double> poisson_peak;
    std::optional<double> periodic_amplitude, periodic_phase;
    std::optional<int> periodic_cycles_x, periodic_cycles_y;
    std::optional<double> erlang_a;
    std::optional<int> erlang_b;
    std::optional<double> exponential_a;
    std::optional<double> rayleigh_a, rayleigh_b;

    std::optional<int> median_window, mean_window, wiener_window;
    std::optional<double> wiener_noise_var, gaussian_filter_sigma, lowpass_cutoff, highpass_cutoff;
    std::optional<double> bilateral_sigma_s, bilateral_sigma_r;

    void register_options(CLI::App* cmd) {
        cmd->add_option("--gaussian-mu", gaussian_mu, "gaussian noise mean");
        cmd->add_option("--gaussian-sigma", gaussian_sigma, "gaussian noise standard deviation");
        cmd->add_option("--salt-pepper-density", sp_density, "salt_pepper replacement probability");
        cmd->add_option("--salt-pepper-salt-fraction", sp_salt_fraction, "salt_pepper fraction of 255 replacements");
        cmd->add_option("--speckle-variance", speckle_variance, "speckle multiplier variance");
        cmd->add_option("--poisson-peak", poisson_peak, "poisson peak count");
        cmd->add_option("--periodic-amplitude", periodic_amplitude, "periodic sinusoid amplitude");
        cmd->add_option("--periodic-cycles-x", periodic_cycles_x, "periodic horizontal cycles");
        cmd->add_option("--periodic-cycles-y", periodic_cycles_y, "periodic vertical cycles");
        cmd->add_option("--periodic-phase", periodic_phase, "periodic phase in radians");
        cmd->add_option("--erlang-a", erlang_a, "erlang rate");
        cmd->add_option("--erlang-b", erlang_b, "erlang integer shape");
        cmd->add_option("--exponential-a", exponential_a, "exponential rate");
        cmd->add_option("--rayleigh-a", rayleigh_a, "rayleigh offset");
        cmd->add_option("--rayleigh-b", rayleigh_b, "rayleigh scale");

        cmd->add_option("--filter-median-window", median_window, "median filter window");
        cmd->add_option("--filter-mean-window", mean_window, "mean filter window");
        cmd->add_option("--filter-wiener-window", wiener_window, "wiener filter window");
        cmd->add_option("--filter-wiener-noise-var", wiener_noise_var, "wiener noise variance (default: estimated)");
        cmd->add_option("--filter-gaussian-sigma", gaussian_filter_sigma, "gaussian filter sigma");
        cmd->add_option("--filter-lowpass-cutoff", lowpass_cutoff, "lowpass cutoff D0");
        cmd->add_option("--filter-highpass-cutoff", highpass_cutoff, "highpass cutoff D0");
        cmd->add_option("--filter-bilateral-sigma-s", bilateral_sigma_s, "bilateral spatial sigma");
        cmd->add_option("--filter-bilateral-sigma-r", bilateral_sigma_r, "bilateral range sigma");
    }

    void apply(BenchPlan& plan) const {
        auto assign = [](auto& field, const auto& opt) {
            if (opt)
                field = static_cast<std::decay_t<decltype(field)>>(*opt);
        };
        auto& g = std::get<GaussianNoise>(plan.noise_specs[0].params);
        assign(g.mu, gaussian_mu);
        assign(g.sigma, gaussian_sigma);
        auto& sp = std::get<SaltPepperNoise>(plan.noise_specs[1].params);
        assign(sp.density, sp_density);
        assign(sp.salt_fraction, sp_salt_fraction);
        assign(std::get<SpeckleNoise>(plan.noise_specs[2].params).variance, speckle_variance);
        assign(std::get<PoissonNoise>(plan.noise_specs[3].params).peak, poisson_peak);
        auto& pe = std::get<PeriodicNoise>(plan.noise_specs[4].params);
        assign(pe.amplitude, periodic_amplitude);
        assign(pe.cycles_x, periodic_cycles_x);
        assign(pe.cycles_y, periodic_cycles_y);
        assign(pe.phase, periodic_phase);
        auto& er = std::get<ErlangNoise>(plan.noise_specs[5].params);
        assign(er.a, erlang_a);
        assign(er.b, erlang_b);
        assign(std::get<ExponentialNoise>(plan.noise_specs[6].params).a, exponential_a);
        auto& ra = std::get<RayleighNoise>(plan.noise_specs[7].params);
        assign(ra.a, rayleigh_a);
        assign(ra.b, rayleigh_b);

        assign(std::get<MedianFilter>(plan.filter_specs[0]).window, median_window);
        assign(std::get<MeanFilter>(plan.filter_specs[1]).window, mean_window);
        auto& wf = std::get<WienerFilter>(plan.filter_specs[2]);
        assign(wf.window, wiener_window);
        if (wiener_noise_var)
            wf.noise_var = *wiener_noise_var;
        assign(std::get<GaussianFilter>(plan.filter_specs[3]).sigma, gaussian_filter_sigma);
        assign(std::get<LowpassFilter>(plan.filter_specs[4]).cutoff, lowpass_cutoff);
        assign(std::get<HighpassFilter>(plan.filter_specs[5]).cutoff, highpass_cutoff);
        auto& bf = std::get<BilateralFilter>(plan.filter_specs[6]);
        assign(bf.sigma_s, bilateral_sigma_s);
        assign(bf.sigma_r, bilateral_sigma_r);
    }
};

FilterSpec build_filter_spec(const std::string& kind_name, std::optional<int> window, std::optional<double> sigma,
                             std::optional<double> cutoff, std::optional<double> sigma_s,
                             std::optional<double> sigma_r, std::optional<double> noise_var) {
    const FilterKind kind = filter_kind_from_name(kind_name);
    auto reject = [&](const char* flag, bool set) {
        if (set)
            throw parameter_error(std::string(flag) + " does not apply to filter kind " +
                                  std::string(filter_name(kind)));
    };
    switch (kind) {
    case FilterKind::median: {
        reject("--sigma", sigma.has_value());
        reject("--cutoff", cutoff.has_value());
        reject("--sigma-s", sigma_s.has_value());
        reject("--sigma-r", sigma_r.has_value());
        reject("--noise-var", noise_var.has_value());
        MedianFilter f;
        if (window)
            f.window = *window;
        return f;
    }
    case FilterKind::mean: {
        reject("--sigma", sigma.has_value());
        reject("--cutoff", cutoff.has_value());
        reject("--sigma-s", sigma_s.has_value());
        reject("--sigma-r", sigma_r.has_value());
        reject("--noise-var", noise_var.has_value());
        MeanFilter f;
        if (window)
            f.window = *window;
        return f;
    }
    case FilterKind::wiener: {
        reject("--sigma", sigma.has_value());
        reject("--cutoff", cutoff.has_value());
        reject("--sigma-s", sigma_s.has_value());
        reject("--sigma-r", sigma_r.has_value());
        WienerFilter f;
        if (window)
            f.window = *window;
        if (noise_var)
            f.noise_var = *noise_var;
        return f;
    }
    case FilterKind::gaussian: {
        reject("--window", window.has_value());
        reject("--cutoff", cutoff.has_value());
        reject("--sigma-s", sigma_s.has_value());
        reject("--sigma-r", sigma_r.has_value());
        reject("--noise-var", noise_var.has_value());
        GaussianFilter f;
        if (sigma)
            f.sigma = *sigma;
        return f;
    }
    case FilterKind::lowpass:
    case FilterKind::highpass: {
        reject("--window", window.has_value());
        reject("--sigma", sigma.has_value());
        reject("--sigma-s", sigma_s.has_value());
        reject("--sigma-r", sigma_r.has_value());
        reject("--noise-var", noise_var.has_value());
        if (kind == FilterKind::lowpass) {
            LowpassFilter f;
            if (cutoff)
                f.cutoff = *cutoff;
            return f;
        }
        HighpassFilter f;
        if (cutoff)
            f.cutoff = *cutoff;
        return f;
    }
    case FilterKind::bilateral: {
        reject("--window", window.has_value());
        reject("--sigma", sigma.has_value());
        reject("--cutoff", cutoff.has_value());
        reject("--noise-var", noise_var.has_value());
        BilateralFilter f;
        if (sigma_s)
            f.sigma_s = *sigma_s;
        if (sigma_r)
            f.sigma_r = *sigma_r;
        return f;
    }
    case FilterKind::laplacian: {
        reject("--window", window.has_value());
        reject("--sigma", sigma.has_value());
        reject("--cutoff", cutoff.has_value());
        reject("--sigma-s", sigma_s.has_value());
        reject("--sigma-r", sigma_r.has_value());
        reject("--noise-var", noise_var.has_value());
        return LaplacianFilter{};
    }
    }
    throw parameter_error("unknown filter kind " + kind_name);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"noise-model and image-filtering laboratory"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    // synth
    CLI::App* synth_cmd = app.add_subcommand("synth", "write the deterministic 256x256 synthetic test image");
    std::string synth_out;
    synth_cmd->add_option("--out", synth_out, "output PGM path")->required();

    // noise
    CLI::App* noise_cmd = app.add_subcommand("noise", "corrupt an image with one of the eight noise models");
    std::string noise_in, noise_out, noise_kind;
    std::uint64_t noise_seed = 42;
    bool noise_no_clip = false;
    NoiseFlags noise_flags;
    noise_cmd->add_option("--in", noise_in, "input PGM path")->required();
    noise_cmd->add_option("--out", noise_out, "output PGM path")->required();
    noise_cmd->add_option("--kind", noise_kind,
                          "gaussian|salt_pepper|speckle|poisson|periodic|erlang|exponential|rayleigh")
        ->required();
    noise_cmd->add_option("--seed", noise_seed, "noise seed (default 42)");
    noise_cmd->add_flag("--no-clip", noise_no_clip, "keep out-of-range intensities (quantized only at PGM write)");
    noise_flags.register_options(noise_cmd);

    // filter
    CLI::App* filter_cmd = app.add_subcommand("filter", "denoise/enhance an image with one of the eight filters");
    std::string filter_in, filter_out, filter_kind;
    std::optional<int> filter_window;
    std::optional<double> filter_sigma, filter_cutoff, filter_sigma_s, filter_sigma_r, filter_noise_var;
    filter_cmd->add_option("--in", filter_in, "input PGM path")->required();
    filter_cmd->add_option("--out", filter_out, "output PGM path")->required();
    filter_cmd->add_option("--kind", filter_kind, "median|mean|wiener|gaussian|lowpass|highpass|bilateral|laplacian")
        ->required();
    filter_cmd->add_option("--window", filter_window, "median/mean/wiener: odd window size");
    filter_cmd->add_option("--sigma", filter_sigma, "gaussian: kernel sigma");
    filter_cmd->add_option("--cutoff", filter_cutoff, "lowpass/highpass: cutoff D0");
    filter_cmd->add_option("--sigma-s", filter_sigma_s, "bilateral: spatial sigma");
    filter_cmd->add_option("--sigma-r", filter_sigma_r, "bilateral: range sigma");
    filter_cmd->add_option("--noise-var", filter_noise_var, "wiener: noise variance (default: estimated)");

    // psnr
    CLI::App* psnr_cmd = app.add_subcommand("psnr", "print PSNR of an image against a reference");
    std::string psnr_in, psnr_ref;
    psnr_cmd->add_option("--in", psnr_in, "test image PGM path")->required();
    psnr_cmd->add_option("--ref", psnr_ref, "reference image PGM path")->required();

    // hist
    CLI::App* hist_cmd = app.add_subcommand("hist", "write the 256-bin histogram as CSV");
    std::string hist_in, hist_out;
    hist_cmd->add_option("--in", hist_in, "input PGM path")->required();
    hist_cmd->add_option("--out", hist_out, "output CSV path")->required();

    // bench
    CLI::App* bench_cmd = app.add_subcommand("bench", "run the full 8x8 noise/filter PSNR matrix");
    std::string bench_in, bench_out, bench_markdown, bench_dump;
    std::uint64_t bench_seed = 42;
    bool bench_no_clip = false;
    BenchOverrides overrides;
    bench_cmd->add_option("--in", bench_in, "clean input PGM path")->required();
    bench_cmd->add_option("--out", bench_out, "output CSV path")->required();
    bench_cmd->add_option("--seed", bench_seed, "master seed (default 42)");
    bench_cmd->add_flag("--no-clip", bench_no_clip, "skip all clipping (reaches the negative-PSNR regime)");
    bench_cmd->add_option("--markdown", bench_markdown, "also write the report as a Markdown table");
    bench_cmd->add_option("--dump-dir", bench_dump, "dump every noisy/filtered image as PGM into this directory");
    overrides.register_options(bench_cmd);

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForVersion& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return 2; // usage problems are parameter errors
        }

        if (*synth_cmd) {
            save_pgm(synth_out, synthetic_image());
        } else if (*noise_cmd) {
            const NoiseSpec spec = noise_flags.build(noise_kind_from_name(noise_kind), !noise_no_clip);
            const ImageGrid img = load_pgm(noise_in);
            save_pgm(noise_out, apply_noise(img, spec, noise_seed));
        } else if (*filter_cmd) {
            const FilterSpec spec = build_filter_spec(filter_kind, filter_window, filter_sigma, filter_cutoff,
                                                      filter_sigma_s, filter_sigma_r, filter_noise_var);
            const ImageGrid img = load_pgm(filter_in);
            save_pgm(filter_out, apply_filter(img, spec));
        } else if (*psnr_cmd) {
            const ImageGrid test = load_pgm(psnr_in);
            const ImageGrid ref = load_pgm(psnr_ref);
            std::cout << format_psnr_db(psnr(ref, test).db) << "\n";
        } else if (*hist_cmd) {
            save_text(hist_out, write_histogram_csv(histogram(load_pgm(hist_in))));
        } else if (*bench_cmd) {
            BenchPlan plan;
            plan.seed = bench_seed;
            plan.clip = !bench_no_clip;
            plan.image_id = std::filesystem::path(bench_in).stem().string();
            if (!bench_dump.empty())
                plan.dump_dir = bench_dump;
            overrides.apply(plan);
            const ImageGrid clean = load_pgm(bench_in);
            const BenchReport report = run_benchmark(clean, plan);
            save_text(bench_out, write_report_csv(report));
            if (!bench_markdown.empty())
                save_text(bench_markdown, write_report_markdown(report));
        }
        return 0;
    } catch (const parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const shape_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
