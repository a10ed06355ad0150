#include "relaxdiff/pipeline.hpp"

#include <cmath>
#include <fstream>

#include "relaxdiff/baselines.hpp"
#include "relaxdiff/image_io.hpp"

namespace relaxdiff {

namespace {

// Re-throws `e` with the stage prefixed, preserving its kind.
[[noreturn]] void rethrow_in_stage(const Error& e, const std::string& stage) {
    const std::string what = stage + ": " + e.what();
    if (const auto* solver = dynamic_cast<const SolverError*>(&e)) {
        throw SolverError(what, solver->residual(), solver->iterations());
    }
    if (const auto* inv = dynamic_cast<const InvariantError*>(&e)) {
        throw InvariantError(what, inv->cell(), inv->lambda_min(), inv->bound());
    }
    throw Error(e.kind(), what);
}

template <class Fn>
auto stage(const std::string& name, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        rethrow_in_stage(e, name);
    }
}

}  // namespace

void RunConfig::validate() const {
    if (input_path.empty()) throw ParameterError("--input is required");
    if (output_path.empty()) throw ParameterError("--output is required");
    params.validate(mode == FilterMode::Relax);
    if (mode == FilterMode::Catte && !(params.sigma > 0.0)) throw ParameterError("catte mode needs sigma > 0");
    if (!(noise.std >= 0.0)) throw ParameterError("noise std must be nonnegative");
    if (window < 3 || window % 2 == 0) throw ParameterError("window must be odd and >= 3");
    if (!(hi > lo)) throw ParameterError("rescale bounds need hi > lo");
}

PipelineReport run_pipeline(const RunConfig& config) {
    stage("config", [&] {
        config.validate();
        return 0;
    });

    const ImageField input = stage("load", [&] { return load_image(config.input_path); });
    const ImageField scaled = stage("rescale", [&] { return rescale(input, config.lo, config.hi); });
    const ImageField noisy = stage("noise", [&] { return add_noise(scaled, config.noise); });

    PipelineReport report;
    ImageField filtered = stage("filter", [&] {
        switch (config.mode) {
            case FilterMode::Relax: {
                const Tensor4Field h0 = init_H0(noisy, config.window, config.params.alpha);
                RunResult r = run(noisy, h0, config.params);
                report.trace = std::move(r.trace);
                return std::move(r.state.u);
            }
            case FilterMode::Catte:
            case FilterMode::PeronaMalik: {
                const BaselineKind kind =
                    config.mode == FilterMode::Catte ? BaselineKind::CatteRegularized : BaselineKind::PeronaMalik;
                BaselineResult r = run_baseline(noisy, config.params, kind);
                report.trace = std::move(r.trace);
                return std::move(r.u);
            }
        }
        throw ParameterError("unknown mode");
    });

    const ImageField output = unrescale(filtered, config.lo, config.hi);
    for (double v : output.values) {
        if (!std::isfinite(v)) throw InvariantError("save: filtered image has non-finite values", 0, 0.0, 0.0);
    }
    stage("save", [&] {
        save_image(output, config.output_path);
        return 0;
    });

    if (!config.trace_path.empty()) {
        stage("trace", [&] {
            std::ofstream out(config.trace_path, std::ios::trunc);
            if (!out) throw IoError(ErrorKind::IoWrite, "cannot open '" + config.trace_path + "' for writing");
            write_trace_csv(out, report.trace);
            if (!out) throw IoError(ErrorKind::IoWrite, "failed writing '" + config.trace_path + "'");
            return 0;
        });
    }

    ImageField clamped = output;
    for (double& v : clamped.values) v = std::clamp(v, 0.0, 1.0);
    report.psnr_vs_input = psnr(clamped, input);
    if (!config.reference_path.empty()) {
        const ImageField reference = stage("reference", [&] { return load_image(config.reference_path); });
        ImageField noisy_out = unrescale(noisy, config.lo, config.hi);
        for (double& v : noisy_out.values) v = std::clamp(v, 0.0, 1.0);
        stage("reference", [&] {
            report.psnr_vs_reference = psnr(clamped, reference);
            report.psnr_noisy_vs_reference = psnr(noisy_out, reference);
            return 0;
        });
    }
    return report;
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parameter:
        case ErrorKind::Range:
        case ErrorKind::Dimension:
            return 2;
        case ErrorKind::IoMissing:
        case ErrorKind::IoFormat:
        case ErrorKind::IoTruncated:
        case ErrorKind::IoWrite:
            return 3;
        case ErrorKind::Solver:
        case ErrorKind::Numerical:
            return 4;
        case ErrorKind::Invariant:
        case ErrorKind::Degenerate:
        case ErrorKind::Symmetry:
        case ErrorKind::Fit:
            return 5;
    }
    return 5;
}

}  // namespace relaxdiff
