#pragma once

#include <vector>

#include "avfusion/series.hpp"

namespace avfusion {

// Thresholds and stage constraints for frame-score video detection.
struct DetectionConfig {
    double binarize_threshold = 0.5;
    double c1 = 0.05;  // Stage I constraint: longest fake run vs n*c1
    double c2 = 0.02;  // Stage II constraint: remaining fake frames vs n*c2
    double decision_threshold = 0.5;  // used by fusion
};

// Throws std::invalid_argument unless 0 < c2 < c1 <= 1 and thresholds are
// probabilities.
void validate(const DetectionConfig& cfg);

// Two-stage video-level fake confidence from frame scores:
// Stage I returns the longest fake run's mean when that run has at least
// n*c1 frames; Stage II returns the mean over all remaining runs' frames
// when they total at least n*c2; otherwise the mean of all frame scores.
double detect_video(const FrameScoreSeries& series, const DetectionConfig& cfg);

// Frame-level localization output: fake runs as segments, unchanged.
std::vector<SegmentScore> localize_visual(const FrameScoreSeries& series,
                                          const DetectionConfig& cfg);

}  // namespace avfusion
