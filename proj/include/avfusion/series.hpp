#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "avfusion/interval.hpp"

namespace avfusion {

// Per-frame forgery probabilities at a fixed frame rate for one modality.
// Frame i covers [i/fps, (i+1)/fps).
struct FrameScoreSeries {
    double fps = 25.0;
    std::vector<double> scores;

    double duration_s() const {
        return static_cast<double>(scores.size()) / fps;
    }
};

// A time interval carrying a forgery confidence; the localization unit.
struct SegmentScore {
    TimeInterval interval;
    double confidence = 0.0;

    bool operator==(const SegmentScore&) const = default;
};

// Maximal run of consecutive frames with score >= threshold.
// score_sum accumulates left to right so means are order-stable.
struct FrameRun {
    std::size_t first = 0;
    std::size_t count = 0;
    double score_sum = 0.0;

    double mean() const { return score_sum / static_cast<double>(count); }
    std::size_t past_end() const { return first + count; }
};

// Number of frames needed to cover duration_s at fps (last frame may
// extend past duration_s).
std::size_t frame_count(double duration_s, double fps);

std::vector<FrameRun> extract_runs(std::span<const double> scores,
                                   double threshold);

// Maximal runs of frames >= threshold converted to time intervals, each
// carrying the arithmetic mean of the run's scores, in temporal order.
std::vector<SegmentScore> frames_to_intervals(const FrameScoreSeries& series,
                                              double threshold);

// Zero-order hold resampling: output frame j takes the score of the input
// frame containing j's midpoint. Output length = ceil(duration * target_fps).
FrameScoreSeries resample_series(const FrameScoreSeries& series,
                                 double target_fps);

// Throws std::invalid_argument if fps <= 0 or any score outside [0, 1].
void validate_series(const FrameScoreSeries& series);

}  // namespace avfusion
