#include "noisebench/bench.hpp"

#include <charconv>
#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

#include "noisebench/errors.hpp"
#include "noisebench/metrics.hpp"
#include "noisebench/rng.hpp"
#include "noisebench/version.hpp"

namespace noisebench {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("?");
}

int thread_budget() {
    if (const char* env = std::getenv("NOISEBENCH_THREADS")) {
        int value = 0;
        const char* end = env;
        while (*end != '\0')
            ++end;
        const auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec != std::errc{} || ptr != end || value < 1)
            throw parameter_error(std::string("NOISEBENCH_THREADS must be a positive integer, got \"") + env + "\"");
        return value;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string cell_tag(NoiseKind noise, const FilterKind* filter) {
    std::string tag = "[" + std::string(noise_name(noise));
    if (filter)
        tag += std::string("/") + std::string(filter_name(*filter));
    return tag + "] ";
}

// Re-raise with the failing cell named, preserving the error type so CLI
// exit codes stay meaningful.
template <typename Fn>
auto in_cell(NoiseKind noise, const FilterKind* filter, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const parameter_error& e) {
        throw parameter_error(cell_tag(noise, filter) + e.what());
    } catch (const io_error& e) {
        throw io_error(cell_tag(noise, filter) + e.what());
    } catch (const numeric_error& e) {
        throw numeric_error(cell_tag(noise, filter) + e.what());
    } catch (const shape_error& e) {
        throw shape_error(cell_tag(noise, filter) + e.what());
    }
}

} // namespace

std::array<NoiseSpec, 8> default_noise_specs(bool clip) {
    std::array<NoiseSpec, 8> specs;
    for (std::size_t i = 0; i < kNoiseOrder.size(); ++i)
        specs[i] = make_noise_spec(kNoiseOrder[i], clip);
    return specs;
}

std::array<FilterSpec, 8> default_filter_specs() {
    return {MedianFilter{}, MeanFilter{},     WienerFilter{},    GaussianFilter{},
            LowpassFilter{}, HighpassFilter{}, BilateralFilter{}, LaplacianFilter{}};
}

FilterKind best_filter(const std::array<double, 8>& cells) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < cells.size(); ++j)
        if (cells[j] > cells[best])
            best = j;
    return kFilterOrder[best];
}

std::string describe_params(const NoiseSpec& spec) {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianNoise>)
                return "mu=" + fmt_double(p.mu) + " sigma=" + fmt_double(p.sigma);
            else if constexpr (std::is_same_v<T, SaltPepperNoise>)
                return "density=" + fmt_double(p.density) + " salt_fraction=" + fmt_double(p.salt_fraction);
            else if constexpr (std::is_same_v<T, SpeckleNoise>)
                return "variance=" + fmt_double(p.variance);
            else if constexpr (std::is_same_v<T, PoissonNoise>)
                return "peak=" + fmt_double(p.peak);
            else if constexpr (std::is_same_v<T, PeriodicNoise>)
                return "amplitude=" + fmt_double(p.amplitude) + " cycles_x=" + std::to_string(p.cycles_x) +
                       " cycles_y=" + std::to_string(p.cycles_y) + " phase=" + fmt_double(p.phase);
            else if constexpr (std::is_same_v<T, ErlangNoise>)
                return "a=" + fmt_double(p.a) + " b=" + std::to_string(p.b);
            else if constexpr (std::is_same_v<T, ExponentialNoise>)
                return "a=" + fmt_double(p.a);
            else
                return "a=" + fmt_double(p.a) + " b=" + fmt_double(p.b);
        },
        spec.params);
}

BenchReport run_benchmark(const ImageGrid& clean, const BenchPlan& plan) {
    std::array<NoiseSpec, 8> noise_specs = plan.noise_specs;
    for (std::size_t i = 0; i < noise_specs.size(); ++i) {
        noise_specs[i].clip = plan.clip;
        if (kind_of(noise_specs[i]) != kNoiseOrder[i])
            throw parameter_error("plan noise spec " + std::to_string(i) + " must be " +
                                  std::string(noise_name(kNoiseOrder[i])));
        validate(noise_specs[i]);
    }
    for (std::size_t j = 0; j < plan.filter_specs.size(); ++j) {
        if (kind_of(plan.filter_specs[j]) != kFilterOrder[j])
            throw parameter_error("plan filter spec " + std::to_string(j) + " must be " +
                                  std::string(filter_name(kFilterOrder[j])));
        validate(plan.filter_specs[j]);
    }
    if (plan.dump_dir) {
        std::error_code ec;
        std::filesystem::create_directories(*plan.dump_dir, ec);
        if (ec)
            throw io_error("cannot create dump directory " + plan.dump_dir->string() + ": " + ec.message());
    }

    BenchReport report;
    report.image_id = plan.image_id;
    report.seed = plan.seed;
    report.clip_mode = plan.clip;
    report.tool_version = kToolVersion;
    report.rows.resize(kNoiseOrder.size());

    auto run_row = [&](std::size_t i) {
        const NoiseKind kind = kNoiseOrder[i];
        const NoiseSpec& spec = noise_specs[i];
        const std::uint64_t row_seed = derive_substream(plan.seed, noise_name(kind));
        const ImageGrid noisy = in_cell(kind, nullptr, [&] { return apply_noise(clean, spec, row_seed); });
        if (plan.dump_dir)
            in_cell(kind, nullptr, [&] {
                save_pgm(*plan.dump_dir / (std::string(noise_name(kind)) + "_noisy.pgm"), noisy);
            });
        BenchRow row;
        row.noise = kind;
        row.params = describe_params(spec);
        for (std::size_t j = 0; j < plan.filter_specs.size(); ++j) {
            const FilterKind filter = kFilterOrder[j];
            ImageGrid filtered = in_cell(kind, &filter, [&] { return apply_filter(noisy, plan.filter_specs[j]); });
            if (plan.clip)
                filtered = clip_to_byte_range(filtered);
            row.psnr_db[j] = psnr(clean, filtered).db;
            if (plan.dump_dir)
                in_cell(kind, &filter, [&] {
                    save_pgm(*plan.dump_dir /
                                 (std::string(noise_name(kind)) + "_" + std::string(filter_name(filter)) + ".pgm"),
                             filtered);
                });
        }
        row.best = best_filter(row.psnr_db);
        report.rows[i] = std::move(row);
    };

    const int threads = thread_budget();
    if (threads <= 1) {
        for (std::size_t i = 0; i < kNoiseOrder.size(); ++i)
            run_row(i);
    } else {
        // Fixed-size batches keep peak concurrency at the budget; per-row
        // sub-streams make the outcome schedule-independent.
        for (std::size_t start = 0; start < kNoiseOrder.size(); start += static_cast<std::size_t>(threads)) {
            std::vector<std::future<void>> batch;
            const std::size_t stop = std::min(kNoiseOrder.size(), start + static_cast<std::size_t>(threads));
            for (std::size_t i = start; i < stop; ++i)
                batch.push_back(std::async(std::launch::async, run_row, i));
            for (auto& task : batch)
                task.get();
        }
    }
    return report;
}

} // namespace noisebench
