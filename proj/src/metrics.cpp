#include "avfusion/metrics.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace avfusion {

std::vector<double> EvalProtocol::default_iou_thresholds() {
    std::vector<double> thresholds;
    for (int k = 0; k < 10; ++k) {
        thresholds.push_back(0.5 + 0.05 * k);
    }
    return thresholds;
}

void validate(const EvalProtocol& protocol) {
    if (protocol.iou_thresholds.empty()) {
        throw std::invalid_argument("EvalProtocol: need at least one IoU threshold");
    }
    double prev = 0.0;
    for (double t : protocol.iou_thresholds) {
        if (t <= prev || t > 1.0) {
            throw std::invalid_argument(
                "EvalProtocol: thresholds must be strictly increasing in (0, 1]");
        }
        prev = t;
    }
}

double auc(std::span<const int> labels, std::span<const double> scores) {
    if (labels.size() != scores.size()) {
        throw std::invalid_argument("auc: labels/scores length mismatch");
    }
    const std::size_t n = labels.size();
    std::size_t n_pos = 0;
    for (int y : labels) {
        if (y != 0 && y != 1) throw std::invalid_argument("auc: labels must be 0/1");
        n_pos += static_cast<std::size_t>(y);
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw std::invalid_argument("auc: both classes must be present");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] < scores[b];
    });

    // Average ranks over tie groups, summed for positives (Mann-Whitney).
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        double avg_rank = 0.5 * static_cast<double>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]] == 1) rank_sum_pos += avg_rank;
        }
        i = j + 1;
    }
    double pos = static_cast<double>(n_pos);
    double neg = static_cast<double>(n_neg);
    return (rank_sum_pos - pos * (pos + 1.0) / 2.0) / (pos * neg);
}

double interval_iou(const TimeInterval& a, const TimeInterval& b) {
    double inter = std::min(a.end_s, b.end_s) - std::max(a.start_s, b.start_s);
    if (inter <= 0.0) return 0.0;
    double uni = std::max(a.end_s, b.end_s) - std::min(a.start_s, b.start_s);
    return inter / uni;
}

namespace {

struct FlatPrediction {
    std::size_t video = 0;
    TimeInterval interval;
    double confidence = 0.0;
};

struct MatchProblem {
    std::vector<FlatPrediction> predictions;       // confidence-ordered
    std::vector<std::vector<TimeInterval>> gt;      // per video
    std::size_t total_gt = 0;
};

MatchProblem build_problem(const std::vector<VideoPredictions>& predictions,
                           const std::vector<VideoGroundTruth>& ground_truth) {
    std::unordered_map<std::string, std::size_t> index;
    MatchProblem problem;
    problem.gt.reserve(ground_truth.size());
    for (const VideoGroundTruth& g : ground_truth) {
        if (!index.emplace(g.id, problem.gt.size()).second) {
            throw std::invalid_argument("duplicate ground-truth video id: " + g.id);
        }
        problem.gt.push_back(g.segments);
        problem.total_gt += g.segments.size();
    }
    if (problem.total_gt == 0) {
        throw std::invalid_argument("no ground-truth segments at all");
    }

    for (const VideoPredictions& p : predictions) {
        auto it = index.find(p.id);
        if (it == index.end()) {
            throw std::invalid_argument("prediction for unknown video id: " + p.id);
        }
        for (const SegmentScore& s : p.segments) {
            problem.predictions.push_back({it->second, s.interval, s.confidence});
        }
    }
    std::sort(problem.predictions.begin(), problem.predictions.end(),
              [&](const FlatPrediction& a, const FlatPrediction& b) {
                  if (a.confidence != b.confidence) return a.confidence > b.confidence;
                  if (a.video != b.video) return a.video < b.video;
                  if (a.interval.start_s != b.interval.start_s) {
                      return a.interval.start_s < b.interval.start_s;
                  }
                  return a.interval.end_s < b.interval.end_s;
              });
    return problem;
}

// Greedy confidence-ordered matching at one IoU threshold. Returns per-
// prediction true-positive flags and the matched ground-truth count.
std::vector<char> greedy_match(const MatchProblem& problem, double threshold,
                               std::size_t* matched_out) {
    std::vector<std::vector<char>> used(problem.gt.size());
    for (std::size_t v = 0; v < problem.gt.size(); ++v) {
        used[v].assign(problem.gt[v].size(), 0);
    }
    std::vector<char> tp(problem.predictions.size(), 0);
    std::size_t matched = 0;
    for (std::size_t k = 0; k < problem.predictions.size(); ++k) {
        const FlatPrediction& pred = problem.predictions[k];
        const auto& candidates = problem.gt[pred.video];
        double best_iou = 0.0;
        std::size_t best = candidates.size();
        for (std::size_t g = 0; g < candidates.size(); ++g) {
            if (used[pred.video][g]) continue;
            double iou = interval_iou(pred.interval, candidates[g]);
            if (iou > best_iou) {
                best_iou = iou;
                best = g;
            }
        }
        if (best < candidates.size() && best_iou >= threshold) {
            tp[k] = 1;
            used[pred.video][best] = 1;
            ++matched;
        }
    }
    if (matched_out) *matched_out = matched;
    return tp;
}

// Area under the all-point interpolated PR curve.
double ap_from_flags(const std::vector<char>& tp, std::size_t total_gt) {
    const std::size_t n = tp.size();
    if (n == 0) return 0.0;
    std::vector<double> precision(n);
    std::vector<double> recall(n);
    double tp_cum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        tp_cum += tp[k];
        precision[k] = tp_cum / static_cast<double>(k + 1);
        recall[k] = tp_cum / static_cast<double>(total_gt);
    }
    double ap = 0.0;
    double envelope = 0.0;
    for (std::size_t k = n; k-- > 0;) {
        envelope = std::max(envelope, precision[k]);
        double prev_recall = k > 0 ? recall[k - 1] : 0.0;
        ap += (recall[k] - prev_recall) * envelope;
    }
    return ap;
}

}  // namespace

double average_precision(const std::vector<VideoPredictions>& predictions,
                         const std::vector<VideoGroundTruth>& ground_truth,
                         const EvalProtocol& protocol) {
    validate(protocol);
    MatchProblem problem = build_problem(predictions, ground_truth);
    double sum = 0.0;
    for (double threshold : protocol.iou_thresholds) {
        std::vector<char> tp = greedy_match(problem, threshold, nullptr);
        sum += ap_from_flags(tp, problem.total_gt);
    }
    return sum / static_cast<double>(protocol.iou_thresholds.size());
}

double average_recall(const std::vector<VideoPredictions>& predictions,
                      const std::vector<VideoGroundTruth>& ground_truth,
                      const EvalProtocol& protocol) {
    validate(protocol);
    MatchProblem problem = build_problem(predictions, ground_truth);
    double sum = 0.0;
    for (double threshold : protocol.iou_thresholds) {
        std::size_t matched = 0;
        greedy_match(problem, threshold, &matched);
        sum += static_cast<double>(matched) / static_cast<double>(problem.total_gt);
    }
    return sum / static_cast<double>(protocol.iou_thresholds.size());
}

double final_score(double auc_val, double ap_val, double ar_val,
                   const EvalProtocol& protocol) {
    if (protocol.final_score_rule == EvalProtocol::FinalScoreRule::mean_of_three) {
        return (auc_val + ap_val + ar_val) / 3.0;
    }
    return 0.5 * (auc_val + 0.5 * (ap_val + ar_val));
}

}  // namespace avfusion
