#include "avfusion/commands.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "avfusion/audio.hpp"
#include "avfusion/errors.hpp"
#include "avfusion/fusion.hpp"
#include "avfusion/metrics.hpp"
#include "avfusion/rng.hpp"
#include "avfusion/visual.hpp"

namespace avfusion {

namespace {

void ensure_out_dir(const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw DataError("cannot create output directory " + out_dir.string());
    }
}

std::map<std::string, FrameScoreSeries> series_by_id(
    const std::vector<ScoreRecord>& records, const char* what) {
    std::map<std::string, FrameScoreSeries> out;
    for (const ScoreRecord& r : records) {
        if (!out.emplace(r.id, r.series).second) {
            throw DataError(std::string("duplicate ") + what + " score record: " + r.id);
        }
    }
    return out;
}

const FrameScoreSeries& series_for(
    const std::map<std::string, FrameScoreSeries>& scores, const std::string& id,
    const char* what) {
    auto it = scores.find(id);
    if (it == scores.end()) {
        throw DataError(std::string("missing ") + what + " scores for video " + id);
    }
    return it->second;
}

std::vector<VideoMeta> read_sorted_meta(const std::filesystem::path& path) {
    std::vector<VideoMeta> metas = read_meta_file(path);
    std::sort(metas.begin(), metas.end(),
              [](const VideoMeta& a, const VideoMeta& b) { return a.id < b.id; });
    return metas;
}

}  // namespace

void cmd_synth(const RunConfig& config, const std::filesystem::path& out_dir) {
    ensure_out_dir(out_dir);
    std::vector<VideoMeta> metas = sample_dataset(config.generator);

    std::vector<std::string> meta_lines;
    meta_lines.reserve(metas.size());
    for (const VideoMeta& meta : metas) {
        meta_lines.push_back(to_jsonl(meta));
    }
    write_lines(out_dir / "meta.jsonl", meta_lines);

    for (Modality modality : {Modality::audio, Modality::visual}) {
        std::vector<std::string> lines;
        lines.reserve(metas.size());
        for (std::size_t i = 0; i < metas.size(); ++i) {
            std::uint64_t seed = derive_seed(config.generator.seed, 2 * i);
            ScoreRecord record{metas[i].id, modality,
                               simulate_scores(metas[i], config.model, modality,
                                               config.generator.fps, seed)};
            lines.push_back(to_jsonl(record));
        }
        write_lines(out_dir / (std::string("scores_") + to_string(modality) + ".jsonl"),
                    lines);
    }
}

void cmd_label(const RunConfig& config, const std::filesystem::path& meta_path,
               double target_len_s, double grid_stride_s,
               const std::filesystem::path& out_dir, std::ostream& out) {
    if (target_len_s <= 0.0 || grid_stride_s <= 0.0) {
        throw UsageError("label: target length and stride must be > 0");
    }
    (void)config;
    ensure_out_dir(out_dir);
    std::vector<VideoMeta> metas = read_sorted_meta(meta_path);

    std::vector<std::string> lines;
    std::vector<LabeledCrop> crops;
    for (const VideoMeta& meta : metas) {
        ModalityAnnotation annotation = annotation_for(meta, Modality::audio);
        std::vector<double> offsets{0.0};
        for (std::size_t k = 1;; ++k) {
            double offset = static_cast<double>(k) * grid_stride_s;
            if (offset > meta.duration_s - target_len_s + kTimeEps) break;
            offsets.push_back(offset);
        }
        for (double offset : offsets) {
            CropSpec crop = pad_and_crop(meta.duration_s, target_len_s, offset);
            LabeledCrop labeled = dynamic_label(annotation, crop);
            crops.push_back(labeled);
            lines.push_back(to_jsonl(LabeledCropRecord{meta.id, labeled}));
        }
    }
    write_lines(out_dir / "labels.jsonl", lines);

    std::size_t fake = 0;
    for (const LabeledCrop& c : crops) fake += static_cast<std::size_t>(c.label);
    out << "crops " << crops.size() << "\n";
    out << "real_crops " << crops.size() - fake << "\n";
    out << "fake_crops " << fake << "\n";
    if (fake > 0 && fake < crops.size()) {
        LossWeights weights = class_weights(crops);
        out << "class_weight_real " << format_number(weights.class_weight_real) << "\n";
        out << "class_weight_fake " << format_number(weights.class_weight_fake) << "\n";
    }
}

void cmd_detect(const RunConfig& config, const std::filesystem::path& meta_path,
                const std::filesystem::path& audio_scores_path,
                const std::filesystem::path& visual_scores_path,
                const std::filesystem::path& out_dir) {
    ensure_out_dir(out_dir);
    std::vector<VideoMeta> metas = read_sorted_meta(meta_path);
    auto audio = series_by_id(read_scores_file(audio_scores_path), "audio");
    auto visual = series_by_id(read_scores_file(visual_scores_path), "visual");

    std::vector<std::string> lines;
    lines.reserve(metas.size());
    for (const VideoMeta& meta : metas) {
        const FrameScoreSeries& audio_series = series_for(audio, meta.id, "audio");
        std::vector<double> window_scores;
        for (const TimeInterval& window :
             sliding_windows(meta.duration_s, config.window_s, config.stride_s)) {
            window_scores.push_back(score_window(audio_series, window));
        }
        DetectionRecord record;
        record.id = meta.id;
        record.audio_score = aggregate_max(window_scores);
        record.visual_score =
            detect_video(series_for(visual, meta.id, "visual"), config.detector);
        lines.push_back(to_jsonl(record));
    }
    write_lines(out_dir / "detections.jsonl", lines);
}

void cmd_localize(const RunConfig& config,
                  const std::filesystem::path& audio_scores_path,
                  const std::filesystem::path& visual_scores_path,
                  const std::filesystem::path& out_dir) {
    ensure_out_dir(out_dir);
    std::vector<ScoreRecord> records = read_scores_file(audio_scores_path);
    std::vector<ScoreRecord> visual_records = read_scores_file(visual_scores_path);
    records.insert(records.end(), visual_records.begin(), visual_records.end());
    std::sort(records.begin(), records.end(),
              [](const ScoreRecord& a, const ScoreRecord& b) {
                  if (a.id != b.id) return a.id < b.id;
                  return static_cast<int>(a.modality) < static_cast<int>(b.modality);
              });

    std::vector<std::string> lines;
    lines.reserve(records.size());
    for (const ScoreRecord& record : records) {
        LocalizationRecord loc;
        loc.id = record.id;
        loc.modality = record.modality;
        loc.segments = record.modality == Modality::visual
                           ? localize_visual(record.series, config.detector)
                           : frames_to_intervals(record.series,
                                                 config.detector.binarize_threshold);
        lines.push_back(to_jsonl(loc));
    }
    write_lines(out_dir / "localizations.jsonl", lines);
}

void cmd_fuse(const RunConfig& config,
              const std::filesystem::path& detections_path,
              const std::filesystem::path& localizations_path,
              const std::filesystem::path& out_dir) {
    ensure_out_dir(out_dir);
    std::vector<DetectionRecord> detections = read_detections_file(detections_path);
    std::sort(detections.begin(), detections.end(),
              [](const DetectionRecord& a, const DetectionRecord& b) {
                  return a.id < b.id;
              });

    std::map<std::string, std::vector<SegmentScore>> audio_segs;
    std::map<std::string, std::vector<SegmentScore>> visual_segs;
    for (const LocalizationRecord& loc : read_localizations_file(localizations_path)) {
        auto& bucket = loc.modality == Modality::audio ? audio_segs : visual_segs;
        auto& segs = bucket[loc.id];
        segs.insert(segs.end(), loc.segments.begin(), loc.segments.end());
    }

    std::vector<std::string> lines;
    lines.reserve(detections.size());
    for (const DetectionRecord& det : detections) {
        PredictionRecord pred;
        pred.id = det.id;
        pred.detection_score =
            fuse_detection(det.audio_score, det.visual_score, config.fusion);

        const auto& audio = audio_segs[det.id];
        const auto& visual = visual_segs[det.id];
        // The partition extent only needs to cover every segment; intervals
        // past the last endpoint carry zero confidence and are dropped.
        double extent = 0.0;
        for (const auto* segs : {&audio, &visual}) {
            for (const SegmentScore& s : *segs) {
                extent = std::max(extent, s.interval.end_s);
            }
        }
        if (extent > 0.0) {
            pred.segments = fuse_localization(audio, visual, extent, config.fusion);
        }
        lines.push_back(to_jsonl(pred));
    }
    write_lines(out_dir / "predictions.jsonl", lines);
}

std::vector<VideoGroundTruth> ground_truth_for(const std::vector<VideoMeta>& metas,
                                               GtModality gt_modality) {
    std::vector<VideoGroundTruth> out;
    out.reserve(metas.size());
    for (const VideoMeta& meta : metas) {
        std::vector<TimeInterval> pooled;
        if (gt_modality != GtModality::visual) {
            pooled.insert(pooled.end(), meta.fake_audio_segments.begin(),
                          meta.fake_audio_segments.end());
        }
        if (gt_modality != GtModality::audio) {
            pooled.insert(pooled.end(), meta.fake_visual_segments.begin(),
                          meta.fake_visual_segments.end());
        }
        out.push_back({meta.id, merge_union(std::move(pooled))});
    }
    return out;
}

EvalReport cmd_eval(const RunConfig& config,
                    const std::filesystem::path& predictions_path,
                    const std::filesystem::path& meta_path, std::ostream& out,
                    const std::optional<std::filesystem::path>& out_dir) {
    std::vector<VideoMeta> metas = read_sorted_meta(meta_path);
    std::map<std::string, const VideoMeta*> meta_by_id;
    for (const VideoMeta& meta : metas) {
        if (!meta_by_id.emplace(meta.id, &meta).second) {
            throw DataError("duplicate meta record: " + meta.id);
        }
    }

    std::vector<PredictionRecord> predictions =
        read_predictions_file(predictions_path);
    std::sort(predictions.begin(), predictions.end(),
              [](const PredictionRecord& a, const PredictionRecord& b) {
                  return a.id < b.id;
              });

    std::vector<int> labels;
    std::vector<double> scores;
    std::vector<VideoPredictions> localized;
    for (const PredictionRecord& pred : predictions) {
        auto it = meta_by_id.find(pred.id);
        if (it == meta_by_id.end()) {
            throw DataError("prediction for unknown video " + pred.id);
        }
        labels.push_back(it->second->is_fake() ? 1 : 0);
        scores.push_back(pred.detection_score);
        localized.push_back({pred.id, pred.segments});
    }

    EvalReport report;
    try {
        report.auc = auc(labels, scores);
        std::vector<VideoGroundTruth> gt = ground_truth_for(metas, config.gt_modality);
        report.ap = average_precision(localized, gt, config.eval);
        report.ar = average_recall(localized, gt, config.eval);
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("eval: ") + e.what());
    }
    report.final = final_score(report.auc, report.ap, report.ar, config.eval);

    out << "AUC " << format_number(report.auc) << "\n";
    out << "AP " << format_number(report.ap) << "\n";
    out << "AR " << format_number(report.ar) << "\n";
    out << "final " << format_number(report.final) << "\n";
    std::string json_line = "{\"auc\":" + format_number(report.auc) +
                            ",\"ap\":" + format_number(report.ap) +
                            ",\"ar\":" + format_number(report.ar) +
                            ",\"final\":" + format_number(report.final) + "}";
    out << json_line << "\n";

    if (out_dir) {
        ensure_out_dir(*out_dir);
        write_text(*out_dir / "report.json", json_line + "\n");
    }
    return report;
}

void cmd_stats(const std::filesystem::path& meta_path, std::ostream& out,
               const std::optional<std::filesystem::path>& out_dir) {
    std::vector<VideoMeta> metas = read_meta_file(meta_path);
    std::string report;
    try {
        report = render_stats(dataset_stats(metas));
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("stats: ") + e.what());
    }
    out << report;
    if (out_dir) {
        ensure_out_dir(*out_dir);
        write_text(*out_dir / "stats.txt", report);
    }
}

}  // namespace avfusion
