#pragma once

#include <span>
#include <string>
#include <vector>

#include "avfusion/interval.hpp"
#include "avfusion/series.hpp"

namespace avfusion {

// Temporal-localization evaluation protocol. The challenge's exact scripts
// are not public, so the protocol is explicit and configurable.
struct EvalProtocol {
    enum class FinalScoreRule { mean_of_three, mean_of_det_and_loc };

    std::vector<double> iou_thresholds = default_iou_thresholds();
    FinalScoreRule final_score_rule = FinalScoreRule::mean_of_three;

    static std::vector<double> default_iou_thresholds();  // 0.5:0.05:0.95
};

void validate(const EvalProtocol& protocol);

// ROC AUC as the Mann-Whitney rank statistic: fraction of (positive,
// negative) pairs ranked correctly, ties counting half.
// Throws std::invalid_argument on single-class input or length mismatch.
double auc(std::span<const int> labels, std::span<const double> scores);

// |a n b| / |a u b|, zero when disjoint.
double interval_iou(const TimeInterval& a, const TimeInterval& b);

struct VideoPredictions {
    std::string id;
    std::vector<SegmentScore> segments;
};

struct VideoGroundTruth {
    std::string id;
    std::vector<TimeInterval> segments;
};

// Detection-style AP: confidence-ordered greedy one-to-one matching per IoU
// threshold, all-point interpolated PR curve, averaged over thresholds.
double average_precision(const std::vector<VideoPredictions>& predictions,
                         const std::vector<VideoGroundTruth>& ground_truth,
                         const EvalProtocol& protocol = {});

// Mean over IoU thresholds of matched-ground-truth fraction under the same
// greedy matching.
double average_recall(const std::vector<VideoPredictions>& predictions,
                      const std::vector<VideoGroundTruth>& ground_truth,
                      const EvalProtocol& protocol = {});

double final_score(double auc_val, double ap_val, double ar_val,
                   const EvalProtocol& protocol = {});

}  // namespace avfusion
