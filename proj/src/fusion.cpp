#include "avfusion/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace avfusion {

void validate(const FusionConfig& cfg) {
    if (cfg.decision_threshold < 0.0 || cfg.decision_threshold > 1.0) {
        throw std::invalid_argument("FusionConfig: decision_threshold outside [0, 1]");
    }
    if (cfg.merge_epsilon < 0.0) {
        throw std::invalid_argument("FusionConfig: merge_epsilon must be >= 0");
    }
    if (cfg.report_threshold <= 0.0) {
        throw std::invalid_argument("FusionConfig: report_threshold must be > 0");
    }
}

double fuse_detection(double audio_score, double visual_score,
                      const FusionConfig& cfg) {
    if (audio_score < 0.0 || audio_score > 1.0 || visual_score < 0.0 ||
        visual_score > 1.0) {
        throw std::invalid_argument("fuse_detection: scores must be in [0, 1]");
    }
    bool audio_fake = audio_score >= cfg.decision_threshold;
    bool visual_fake = visual_score >= cfg.decision_threshold;
    if (audio_fake == visual_fake) {
        return 0.5 * (audio_score + visual_score);
    }
    // Disagreement biases toward the fake prediction.
    return audio_fake ? audio_score : visual_score;
}

namespace {

void check_in_range(const std::vector<SegmentScore>& segs, double duration_s,
                    const char* modality) {
    for (const SegmentScore& s : segs) {
        if (!s.interval.valid() || s.interval.start_s < 0.0 ||
            s.interval.end_s > duration_s + kTimeEps) {
            throw std::invalid_argument(std::string("fuse_localization: ") +
                                        modality + " segment out of range");
        }
        if (s.confidence < 0.0 || s.confidence > 1.0) {
            throw std::invalid_argument(std::string("fuse_localization: ") +
                                        modality + " confidence outside [0, 1]");
        }
    }
}

double max_confidence_over(const std::vector<SegmentScore>& segs,
                           const TimeInterval& interval) {
    double best = 0.0;
    for (const SegmentScore& s : segs) {
        if (overlaps(s.interval, interval)) {
            best = std::max(best, s.confidence);
        }
    }
    return best;
}

}  // namespace

std::vector<SegmentScore> fuse_localization_intervals(
    const std::vector<SegmentScore>& audio_segs,
    const std::vector<SegmentScore>& visual_segs, double duration_s) {
    check_in_range(audio_segs, duration_s, "audio");
    check_in_range(visual_segs, duration_s, "visual");

    std::vector<double> boundaries;
    boundaries.reserve(2 * (audio_segs.size() + visual_segs.size()));
    for (const auto* segs : {&audio_segs, &visual_segs}) {
        for (const SegmentScore& s : *segs) {
            boundaries.push_back(s.interval.start_s);
            boundaries.push_back(std::min(s.interval.end_s, duration_s));
        }
    }

    std::vector<SegmentScore> out;
    for (const TimeInterval& interval : partition_timeline(boundaries, duration_s)) {
        double fused = std::max(max_confidence_over(audio_segs, interval),
                                max_confidence_over(visual_segs, interval));
        out.push_back({interval, fused});
    }
    return out;
}

std::vector<SegmentScore> merge_similar(const std::vector<SegmentScore>& segs,
                                        double epsilon) {
    std::vector<SegmentScore> out;
    for (const SegmentScore& s : segs) {
        bool adjacent = !out.empty() && out.back().interval.end_s == s.interval.start_s;
        if (adjacent && std::abs(s.confidence - out.back().confidence) <= epsilon) {
            out.back().interval.end_s = s.interval.end_s;
        } else {
            out.push_back(s);
        }
    }
    return out;
}

std::vector<SegmentScore> fuse_localization(
    const std::vector<SegmentScore>& audio_segs,
    const std::vector<SegmentScore>& visual_segs, double duration_s,
    const FusionConfig& cfg) {
    validate(cfg);
    std::vector<SegmentScore> fused =
        fuse_localization_intervals(audio_segs, visual_segs, duration_s);
    fused = merge_similar(fused, cfg.merge_epsilon);

    std::vector<SegmentScore> out;
    for (const SegmentScore& s : fused) {
        if (s.confidence >= cfg.report_threshold) {
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace avfusion
