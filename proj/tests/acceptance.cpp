// Acceptance suite: end-to-end and oracle-equivalence gates for the whole
// pipeline, one pass/fail line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "avfusion/audio.hpp"
#include "avfusion/commands.hpp"
#include "avfusion/fusion.hpp"
#include "avfusion/metrics.hpp"
#include "avfusion/rng.hpp"
#include "avfusion/synth.hpp"
#include "avfusion/visual.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace avfusion;

namespace {

int g_failures = 0;

void report(int criterion, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion,
                name, detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "avfusion_acceptance" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream out;
    out << in.rdbuf();
    return out.str();
}

struct PipelineResult {
    EvalReport report;
    double seconds = 0.0;
};

PipelineResult run_pipeline(const RunConfig& config, const fs::path& dir) {
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream sink;
    cmd_synth(config, dir);
    cmd_detect(config, dir / "meta.jsonl", dir / "scores_audio.jsonl",
               dir / "scores_visual.jsonl", dir);
    cmd_localize(config, dir / "scores_audio.jsonl", dir / "scores_visual.jsonl",
                 dir);
    cmd_fuse(config, dir / "detections.jsonl", dir / "localizations.jsonl", dir);
    EvalReport report = cmd_eval(config, dir / "predictions.jsonl",
                                 dir / "meta.jsonl", sink, dir);
    auto t1 = std::chrono::steady_clock::now();
    return {report, std::chrono::duration<double>(t1 - t0).count()};
}

// --------------------------------------------------------------------------
// 1. Oracle end-to-end: synth(500) -> detect -> localize -> fuse -> eval
//    must score AUC = AP = AR = 1 exactly, in under 10 seconds.
// --------------------------------------------------------------------------
void criterion_1() {
    RunConfig config;
    config.generator.n_videos = 500;
    config.generator.seed = 20250808;
    PipelineResult result = run_pipeline(config, fresh_dir("oracle_e2e"));

    bool exact = std::abs(result.report.auc - 1.0) <= 1e-9 &&
                 std::abs(result.report.ap - 1.0) <= 1e-9 &&
                 std::abs(result.report.ar - 1.0) <= 1e-9;
    bool fast = result.seconds < 10.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "AUC=%.12g AP=%.12g AR=%.12g in %.2fs", result.report.auc,
                  result.report.ap, result.report.ar, result.seconds);
    report(1, "oracle end-to-end scores exactly 1.0", exact && fast, detail);
}

// --------------------------------------------------------------------------
// 2. Fusion direction: fused detection AUC strictly above both unimodal
//    AUCs; fused AP/AR at least both unimodal AP/ARs.
// --------------------------------------------------------------------------
void criterion_2() {
    GeneratorConfig gen;
    gen.n_videos = 400;
    gen.seed = 7;
    std::vector<VideoMeta> metas = sample_dataset(gen);

    RunConfig config;
    DetectorModel oracle_model;

    std::vector<int> labels;
    std::vector<double> audio_scores, visual_scores, fused_scores;
    std::vector<VideoPredictions> audio_preds, visual_preds, fused_preds;
    for (std::size_t i = 0; i < metas.size(); ++i) {
        const VideoMeta& meta = metas[i];
        labels.push_back(meta.is_fake() ? 1 : 0);

        auto audio_series = simulate_scores(meta, oracle_model, Modality::audio,
                                            gen.fps, derive_seed(gen.seed, 2 * i));
        auto visual_series = simulate_scores(meta, oracle_model, Modality::visual,
                                             gen.fps, derive_seed(gen.seed, 2 * i));

        std::vector<double> window_scores;
        for (const TimeInterval& window :
             sliding_windows(meta.duration_s, config.window_s, config.stride_s)) {
            window_scores.push_back(score_window(audio_series, window));
        }
        double audio_score = aggregate_max(window_scores);
        double visual_score = detect_video(visual_series, config.detector);
        audio_scores.push_back(audio_score);
        visual_scores.push_back(visual_score);
        fused_scores.push_back(fuse_detection(audio_score, visual_score, config.fusion));

        auto audio_segs =
            frames_to_intervals(audio_series, config.detector.binarize_threshold);
        auto visual_segs = localize_visual(visual_series, config.detector);
        audio_preds.push_back({meta.id, audio_segs});
        visual_preds.push_back({meta.id, visual_segs});
        fused_preds.push_back(
            {meta.id, fuse_localization(audio_segs, visual_segs, meta.duration_s,
                                        config.fusion)});
    }

    std::vector<VideoGroundTruth> gt = ground_truth_for(metas, GtModality::pooled);
    double auc_audio = auc(labels, audio_scores);
    double auc_visual = auc(labels, visual_scores);
    double auc_fused = auc(labels, fused_scores);
    double ap_audio = average_precision(audio_preds, gt, config.eval);
    double ap_visual = average_precision(visual_preds, gt, config.eval);
    double ap_fused = average_precision(fused_preds, gt, config.eval);
    double ar_audio = average_recall(audio_preds, gt, config.eval);
    double ar_visual = average_recall(visual_preds, gt, config.eval);
    double ar_fused = average_recall(fused_preds, gt, config.eval);

    bool pass = auc_fused > auc_audio && auc_fused > auc_visual &&
                ap_fused >= ap_audio && ap_fused >= ap_visual &&
                ar_fused >= ar_audio && ar_fused >= ar_visual;
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "AUC a/v/f=%.4f/%.4f/%.4f AP=%.4f/%.4f/%.4f AR=%.4f/%.4f/%.4f",
                  auc_audio, auc_visual, auc_fused, ap_audio, ap_visual, ap_fused,
                  ar_audio, ar_visual, ar_fused);
    report(2, "fusion beats both unimodal systems", pass, detail);
}

// --------------------------------------------------------------------------
// 3. Dynamic labeling agrees with a 1 ms raster brute force on >= 10,000
//    randomized crops.
// --------------------------------------------------------------------------
void criterion_3() {
    Rng rng(1003);
    long cases = 0;
    long mismatches = 0;
    while (cases < 10000) {
        double duration = rng.uniform(0.3, 10.0);
        ModalityAnnotation annotation;
        annotation.duration_s = duration;
        int want = static_cast<int>(rng.uniform_int(0, 3));
        for (int s = 0; s < want && duration > 0.02; ++s) {
            double len = rng.uniform(0.01, std::min(duration, 3.0));
            double start = rng.uniform(0.0, duration - len);
            TimeInterval seg{start, start + len};
            bool clear = true;
            for (const TimeInterval& other : annotation.forged) {
                if (overlaps(seg, other)) clear = false;
            }
            if (clear) annotation.forged.push_back(seg);
        }
        annotation.label =
            annotation.forged.empty() ? static_cast<int>(rng.uniform_int(0, 1)) : 1;

        const double target = 2.0;
        if (duration < target) {
            CropSpec crop = pad_and_crop(duration, target, 0.0);
            if (dynamic_label(annotation, crop).label !=
                oracle::raster_dynamic_label(annotation, 0, target)) {
                ++mismatches;
            }
            ++cases;
            continue;
        }
        auto max_tenths = static_cast<std::int64_t>(
            std::floor((duration - target) / 0.1 + kTimeEps));
        for (std::int64_t k = 0; k <= max_tenths && cases < 12000; ++k) {
            CropSpec crop =
                pad_and_crop(duration, target, 0.1 * static_cast<double>(k));
            if (dynamic_label(annotation, crop).label !=
                oracle::raster_dynamic_label(annotation, k, target)) {
                ++mismatches;
            }
            ++cases;
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "%ld cases, %ld mismatches", cases,
                  mismatches);
    report(3, "dynamic labeling matches the 1 ms raster oracle", mismatches == 0,
           detail);
}

// --------------------------------------------------------------------------
// 4. Two-stage detection: spec traces plus exact equality with an
//    independent scan re-implementation on 1,000 random series.
// --------------------------------------------------------------------------
void criterion_4() {
    DetectionConfig cfg;  // thr 0.5, c1 0.05, c2 0.02
    bool traces = true;

    FrameScoreSeries stage1{25.0, std::vector<double>(100, 0.1)};
    for (std::size_t i = 10; i < 20; ++i) stage1.scores[i] = 0.9;
    traces &= std::abs(detect_video(stage1, cfg) - 0.9) < 1e-12;

    FrameScoreSeries stage2{25.0, std::vector<double>(100, 0.1)};
    for (std::size_t i : {10u, 11u, 12u, 30u, 31u, 50u, 51u}) stage2.scores[i] = 0.8;
    traces &= std::abs(detect_video(stage2, cfg) - 0.8) < 1e-12;

    FrameScoreSeries fallback{25.0, std::vector<double>(100, 0.1)};
    traces &= std::abs(detect_video(fallback, cfg) - 0.1) < 1e-12;

    Rng rng(1004);
    long mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        DetectionConfig random_cfg;
        random_cfg.c2 = rng.uniform(0.002, 0.05);
        random_cfg.c1 = random_cfg.c2 + rng.uniform(0.002, 0.15);
        random_cfg.binarize_threshold = rng.uniform(0.1, 0.9);

        FrameScoreSeries series;
        series.fps = 25.0;
        auto n = static_cast<std::size_t>(rng.uniform_int(1, 10000));
        series.scores.reserve(n);
        while (series.scores.size() < n) {
            double value = rng.next_double();
            auto reps = static_cast<std::size_t>(rng.uniform_int(1, 40));
            for (std::size_t r = 0; r < reps && series.scores.size() < n; ++r) {
                series.scores.push_back(value);
            }
        }
        double mine = detect_video(series, random_cfg);
        double theirs =
            oracle::scan_detect_video(series.scores, series.fps, random_cfg);
        if (mine != theirs) ++mismatches;
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "traces %s, %ld mismatches in 1000 runs",
                  traces ? "ok" : "bad", mismatches);
    report(4, "two-stage detection equals the scan oracle exactly",
           traces && mismatches == 0, detail);
}

// --------------------------------------------------------------------------
// 5. AUC matches the O(n^2) pair-counting oracle on 500 random instances.
// --------------------------------------------------------------------------
void criterion_5() {
    Rng rng(1005);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        auto n = static_cast<std::size_t>(rng.uniform_int(2, 1000));
        std::vector<int> labels;
        std::vector<double> scores;
        bool has_pos = false, has_neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            int y = static_cast<int>(rng.uniform_int(0, 1));
            labels.push_back(y);
            has_pos |= y == 1;
            has_neg |= y == 0;
            double s = rng.next_double();
            if (rng.bernoulli(0.6)) s = std::round(s * 10.0) / 10.0;  // ties
            scores.push_back(s);
        }
        if (!has_pos) labels[0] = 1;
        if (!has_neg) labels[n - 1] = 0;
        worst = std::max(worst, std::abs(auc(labels, scores) -
                                         oracle::pair_count_auc(labels, scores)));
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max |delta| = %.3g", worst);
    report(5, "AUC matches pair counting within 1e-9", worst <= 1e-9, detail);
}

// --------------------------------------------------------------------------
// 6. Localization fusion: per-interval max, partition coverage, exact
//    symmetry over 1,000 random segment configurations.
// --------------------------------------------------------------------------
void criterion_6() {
    Rng rng(1006);
    long violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        double duration = rng.uniform(1.0, 30.0);
        auto draw = [&](std::vector<SegmentScore>& segs) {
            int n = static_cast<int>(rng.uniform_int(0, 6));
            for (int i = 0; i < n; ++i) {
                double len = rng.uniform(0.02, duration / 2);
                double start = rng.uniform(0.0, duration - len);
                SegmentScore seg{{start, start + len}, rng.next_double()};
                bool clear = true;
                for (const SegmentScore& other : segs) {
                    if (overlaps(seg.interval, other.interval)) clear = false;
                }
                if (clear) segs.push_back(seg);
            }
        };
        std::vector<SegmentScore> audio, visual;
        draw(audio);
        draw(visual);

        auto fused = fuse_localization_intervals(audio, visual, duration);
        if (fused.empty() || fused.front().interval.start_s != 0.0 ||
            fused.back().interval.end_s != duration) {
            ++violations;
        }
        for (std::size_t i = 0; i < fused.size(); ++i) {
            if (i && fused[i].interval.start_s != fused[i - 1].interval.end_s) {
                ++violations;
            }
            double a_conf = 0.0, v_conf = 0.0;
            for (const SegmentScore& s : audio) {
                if (overlaps(s.interval, fused[i].interval)) {
                    a_conf = std::max(a_conf, s.confidence);
                }
            }
            for (const SegmentScore& s : visual) {
                if (overlaps(s.interval, fused[i].interval)) {
                    v_conf = std::max(v_conf, s.confidence);
                }
            }
            if (fused[i].confidence != std::max(a_conf, v_conf)) ++violations;
            if (fused[i].confidence < a_conf || fused[i].confidence < v_conf) {
                ++violations;
            }
        }

        auto forward = fuse_localization(audio, visual, duration);
        auto swapped = fuse_localization(visual, audio, duration);
        if (forward != swapped) ++violations;
        for (std::size_t i = 0; i < forward.size(); ++i) {
            if (!forward[i].interval.valid() || forward[i].interval.start_s < 0.0 ||
                forward[i].interval.end_s > duration) {
                ++violations;
            }
            if (i && forward[i].interval.start_s < forward[i - 1].interval.end_s) {
                ++violations;
            }
        }
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "%ld violations in 1000 configurations",
                  violations);
    report(6, "localization fusion properties hold", violations == 0, detail);
}

// --------------------------------------------------------------------------
// 7. Generator statistics at n = 100,000: categories within +-1%, duration
//    bins within +-2% of their configured proportions.
// --------------------------------------------------------------------------
void criterion_7() {
    GeneratorConfig cfg;
    cfg.n_videos = 100000;
    cfg.seed = 123;
    DatasetStats stats = dataset_stats(sample_dataset(cfg));

    double worst_category = 0.0;
    for (int c = 0; c < 4; ++c) {
        double proportion = static_cast<double>(stats.category_counts[c]) /
                            static_cast<double>(stats.n_videos);
        worst_category =
            std::max(worst_category, std::abs(proportion - cfg.category_probs[c]));
    }

    double worst_bin = 0.0;
    for (int b = 0; b < 4; ++b) {
        double audio_prop = static_cast<double>(stats.audio_duration_bins[b]) /
                            static_cast<double>(stats.audio_partial_segments);
        double visual_prop = static_cast<double>(stats.visual_duration_bins[b]) /
                             static_cast<double>(stats.visual_partial_segments);
        worst_bin = std::max(worst_bin,
                             std::abs(audio_prop - cfg.duration_bins_audio[b]));
        worst_bin = std::max(worst_bin,
                             std::abs(visual_prop - cfg.duration_bins_visual[b]));
    }

    bool pass = worst_category <= 0.01 && worst_bin <= 0.02;
    char detail[96];
    std::snprintf(detail, sizeof(detail),
                  "max category delta %.4f, max bin delta %.4f", worst_category,
                  worst_bin);
    report(7, "generator reproduces the target distributions", pass, detail);
}

// --------------------------------------------------------------------------
// 8. Loss sanity: uniform 0.5 predictions give (1 + lambda) ln 2; a step
//    toward the label always reduces the loss.
// --------------------------------------------------------------------------
void criterion_8() {
    std::vector<double> half(16, 0.5);
    std::vector<std::uint8_t> labels{0, 1, 1, 0, 1, 0, 0, 1,
                                     1, 0, 1, 0, 0, 1, 1, 0};
    LossWeights weights;  // lambda 0.5, unit class weights
    double at_half = joint_loss(half, labels, half, labels, weights);
    double expected = (1.0 + weights.lambda_boundary) * std::log(2.0);
    bool closed_form = std::abs(at_half - expected) <= 1e-9;

    Rng rng(1008);
    bool monotone = true;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 16;
        std::vector<double> y_hat, b_hat;
        std::vector<std::uint8_t> y, b;
        for (std::size_t i = 0; i < n; ++i) {
            y_hat.push_back(rng.uniform(0.05, 0.95));
            b_hat.push_back(rng.uniform(0.05, 0.95));
            y.push_back(static_cast<std::uint8_t>(rng.uniform_int(0, 1)));
            b.push_back(static_cast<std::uint8_t>(rng.uniform_int(0, 1)));
        }
        double base = joint_loss(y_hat, y, b_hat, b, weights);
        auto i = static_cast<std::size_t>(rng.uniform_int(0, 15));
        std::vector<double> moved = y_hat;
        moved[i] += y[i] == 1 ? 1e-3 : -1e-3;
        if (joint_loss(moved, y, b_hat, b, weights) >= base) monotone = false;

        std::vector<double> b_moved = b_hat;
        b_moved[i] += b[i] == 1 ? 1e-3 : -1e-3;
        if (joint_loss(y_hat, y, b_moved, b, weights) >= base) monotone = false;
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "loss(0.5)=%.12f expected %.12f", at_half,
                  expected);
    report(8, "joint loss closed form and descent direction", closed_form && monotone,
           detail);
}

// --------------------------------------------------------------------------
// 9. Determinism: every command rerun on identical inputs produces
//    byte-identical outputs.
// --------------------------------------------------------------------------
void criterion_9() {
    RunConfig config;
    config.generator.n_videos = 60;
    config.generator.seed = 31337;
    config.model.mode = DetectorModel::Mode::noisy;
    config.model.score_noise_scale = 0.15;
    config.model.miss_rate = 0.08;
    config.model.false_alarm_rate = 0.04;

    auto run_all = [&](const fs::path& dir) {
        std::ostringstream out;
        cmd_synth(config, dir);
        cmd_label(config, dir / "meta.jsonl", 2.0, 1.0, dir, out);
        cmd_detect(config, dir / "meta.jsonl", dir / "scores_audio.jsonl",
                   dir / "scores_visual.jsonl", dir);
        cmd_localize(config, dir / "scores_audio.jsonl",
                     dir / "scores_visual.jsonl", dir);
        cmd_fuse(config, dir / "detections.jsonl", dir / "localizations.jsonl", dir);
        cmd_eval(config, dir / "predictions.jsonl", dir / "meta.jsonl", out, dir);
        cmd_stats(dir / "meta.jsonl", out, dir);
        return out.str();
    };

    fs::path first = fresh_dir("determinism_a");
    fs::path second = fresh_dir("determinism_b");
    std::string stream_a = run_all(first);
    std::string stream_b = run_all(second);

    static const char* kFiles[] = {"meta.jsonl",          "scores_audio.jsonl",
                                   "scores_visual.jsonl", "labels.jsonl",
                                   "detections.jsonl",    "localizations.jsonl",
                                   "predictions.jsonl",   "report.json",
                                   "stats.txt"};
    int differing = 0;
    for (const char* name : kFiles) {
        if (slurp(first / name) != slurp(second / name)) ++differing;
    }
    if (stream_a != stream_b) ++differing;
    char detail[64];
    std::snprintf(detail, sizeof(detail), "%d of %zu outputs differ", differing,
                  std::size(kFiles) + 1);
    report(9, "reruns are byte-identical", differing == 0, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
