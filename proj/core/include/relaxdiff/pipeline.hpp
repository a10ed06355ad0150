#ifndef RELAXDIFF_PIPELINE_HPP
#define RELAXDIFF_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "relaxdiff/error.hpp"
#include "relaxdiff/initialization.hpp"
#include "relaxdiff/integrator.hpp"

namespace relaxdiff {

enum class FilterMode { Relax, Catte, PeronaMalik };

struct RunConfig {
    std::string input_path;
    std::string output_path;
    std::string trace_path;      // empty: no trace
    std::string reference_path;  // empty: no clean reference
    FilterMode mode = FilterMode::Relax;
    FilterParams params{};
    NoiseSpec noise{};
    int window = 5;
    double lo = 0.0;  // intensity range mapped onto [-1, 1]
    double hi = 1.0;

    void validate() const;
};

struct PipelineReport {
    double psnr_vs_input = 0.0;
    std::optional<double> psnr_vs_reference;
    std::optional<double> psnr_noisy_vs_reference;
    std::vector<TraceRecord> trace;
};

/// load -> rescale -> add_noise -> init_H0 -> filter -> unrescale -> save,
/// writing the trace CSV when requested. Errors propagate as relaxdiff::Error
/// with the failing stage named in the message.
PipelineReport run_pipeline(const RunConfig& config);

/// 2 config, 3 I/O, 4 solver, 5 invariant violation.
int exit_code(ErrorKind kind);

}  // namespace relaxdiff

#endif  // RELAXDIFF_PIPELINE_HPP
