#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "avfusion/audio.hpp"
#include "avfusion/meta.hpp"
#include "avfusion/series.hpp"

namespace avfusion {

// Number rendering for all serialized records: up to 9 significant digits,
// shortest form, no negative zero. Grid-aligned times round-trip exactly.
std::string format_number(double v);

struct ScoreRecord {
    std::string id;
    Modality modality = Modality::audio;
    FrameScoreSeries series;
};

struct DetectionRecord {
    std::string id;
    double audio_score = 0.0;
    double visual_score = 0.0;
};

struct LocalizationRecord {
    std::string id;
    Modality modality = Modality::audio;
    std::vector<SegmentScore> segments;
};

struct PredictionRecord {
    std::string id;
    double detection_score = 0.0;
    std::vector<SegmentScore> segments;
};

struct LabeledCropRecord {
    std::string id;
    LabeledCrop crop;
};

std::string to_jsonl(const VideoMeta& meta);
std::string to_jsonl(const ScoreRecord& record);
std::string to_jsonl(const DetectionRecord& record);
std::string to_jsonl(const LocalizationRecord& record);
std::string to_jsonl(const PredictionRecord& record);
std::string to_jsonl(const LabeledCropRecord& record);

// Parsers throw DataError naming the offending line. Parsing accepts any
// JSON number syntax including scientific notation.
VideoMeta parse_meta(const std::string& line);
ScoreRecord parse_score(const std::string& line);
DetectionRecord parse_detection(const std::string& line);
LocalizationRecord parse_localization(const std::string& line);
PredictionRecord parse_prediction(const std::string& line);

std::vector<VideoMeta> read_meta_file(const std::filesystem::path& path);
std::vector<ScoreRecord> read_scores_file(const std::filesystem::path& path);
std::vector<DetectionRecord> read_detections_file(const std::filesystem::path& path);
std::vector<LocalizationRecord> read_localizations_file(const std::filesystem::path& path);
std::vector<PredictionRecord> read_predictions_file(const std::filesystem::path& path);

void write_lines(const std::filesystem::path& path,
                 const std::vector<std::string>& lines);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace avfusion
