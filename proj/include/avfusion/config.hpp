#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "avfusion/fusion.hpp"
#include "avfusion/metrics.hpp"
#include "avfusion/synth.hpp"
#include "avfusion/visual.hpp"

namespace avfusion {

// Which ground-truth segment set evaluation runs against: the pooled union
// of both modalities, or a single modality.
enum class GtModality { pooled, audio, visual };

// Full pipeline configuration. Defaults apply when keys are absent; unknown
// keys are rejected.
struct RunConfig {
    DetectionConfig detector;
    double window_s = 2.0;  // audio inference window
    double stride_s = 1.0;  // audio inference stride
    FusionConfig fusion;
    EvalProtocol eval;
    GtModality gt_modality = GtModality::pooled;
    GeneratorConfig generator;
    DetectorModel model;
};

// Applies one `namespace.key = value` setting. Throws UsageError on unknown
// keys or unparseable values.
void apply_setting(RunConfig& config, const std::string& key,
                   const std::string& value);

// Flat key-value file: one `key = value` per line, `#` comments, blank
// lines ignored. Number parsing accepts scientific notation.
void load_config_file(RunConfig& config, const std::filesystem::path& path);

// Config assembly: file (when given), then `--set key=value` overrides in
// order. Validates the combined result.
RunConfig load_run_config(const std::optional<std::filesystem::path>& config_path,
                          const std::vector<std::string>& overrides);

void validate(const RunConfig& config);

}  // namespace avfusion
