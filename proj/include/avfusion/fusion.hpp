#pragma once

#include <vector>

#include "avfusion/series.hpp"

namespace avfusion {

struct FusionConfig {
    double decision_threshold = 0.5;
    double merge_epsilon = 1e-6;
    // Minimum confidence kept in the reported localization; the default
    // drops exactly the zero-confidence intervals.
    double report_threshold = 1e-12;
};

void validate(const FusionConfig& cfg);

// Video-level score fusion: agreeing modalities are averaged; on
// disagreement the fake-predicting modality's score wins.
double fuse_detection(double audio_score, double visual_score,
                      const FusionConfig& cfg = {});

// Partition of [0, duration_s) at all segment endpoints, each interval
// carrying max(audio confidence, visual confidence) with absent modalities
// contributing zero. No merging or filtering.
std::vector<SegmentScore> fuse_localization_intervals(
    const std::vector<SegmentScore>& audio_segs,
    const std::vector<SegmentScore>& visual_segs, double duration_s);

// Coalesces adjacent intervals whose confidences stay within epsilon of the
// group's first confidence, which the merged segment carries.
std::vector<SegmentScore> merge_similar(const std::vector<SegmentScore>& segs,
                                        double epsilon);

// Full interval-partition localization fusion: partition + per-interval max,
// merge of similar neighbors, then report-threshold filtering.
std::vector<SegmentScore> fuse_localization(
    const std::vector<SegmentScore>& audio_segs,
    const std::vector<SegmentScore>& visual_segs, double duration_s,
    const FusionConfig& cfg = {});

}  // namespace avfusion
