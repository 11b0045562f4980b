#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "avfusion/config.hpp"
#include "avfusion/jsonl.hpp"

namespace avfusion {

// Pipeline commands behind the CLI. Each is deterministic given
// (inputs, config, seed); output files sort by video id and re-running
// produces byte-identical bytes.

// Writes meta.jsonl, scores_audio.jsonl, scores_visual.jsonl.
void cmd_synth(const RunConfig& config, const std::filesystem::path& out_dir);

// Fixed-length crop labeling over a deterministic offset grid; writes
// labels.jsonl and prints crop counts plus class weights.
void cmd_label(const RunConfig& config, const std::filesystem::path& meta_path,
               double target_len_s, double grid_stride_s,
               const std::filesystem::path& out_dir, std::ostream& out);

// Per-video detection scores: audio by sliding-window max-pooling, visual
// by the two-stage frame-score rule. Writes detections.jsonl.
void cmd_detect(const RunConfig& config, const std::filesystem::path& meta_path,
                const std::filesystem::path& audio_scores_path,
                const std::filesystem::path& visual_scores_path,
                const std::filesystem::path& out_dir);

// Frame scores to per-modality segments. Writes localizations.jsonl.
void cmd_localize(const RunConfig& config,
                  const std::filesystem::path& audio_scores_path,
                  const std::filesystem::path& visual_scores_path,
                  const std::filesystem::path& out_dir);

// Cross-modal fusion of detections and localizations. Writes
// predictions.jsonl.
void cmd_fuse(const RunConfig& config,
              const std::filesystem::path& detections_path,
              const std::filesystem::path& localizations_path,
              const std::filesystem::path& out_dir);

struct EvalReport {
    double auc = 0.0;
    double ap = 0.0;
    double ar = 0.0;
    double final = 0.0;
};

// Detection AUC plus localization AP/AR against metadata ground truth.
// Prints a key-value report and a machine-readable JSON line; writes
// report.json when out_dir is given.
EvalReport cmd_eval(const RunConfig& config,
                    const std::filesystem::path& predictions_path,
                    const std::filesystem::path& meta_path, std::ostream& out,
                    const std::optional<std::filesystem::path>& out_dir);

// Dataset statistics report; writes stats.txt when out_dir is given.
void cmd_stats(const std::filesystem::path& meta_path, std::ostream& out,
               const std::optional<std::filesystem::path>& out_dir);

// Ground-truth segment set for evaluation: per-modality lists or their
// pooled interval union.
std::vector<VideoGroundTruth> ground_truth_for(const std::vector<VideoMeta>& metas,
                                               GtModality gt_modality);

}  // namespace avfusion
