#include "avfusion/jsonl.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "avfusion/errors.hpp"

namespace avfusion {

using nlohmann::json;

std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

namespace {

std::string segments_json(const std::vector<SegmentScore>& segments) {
    std::string out = "[";
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i) out += ",";
        out += "{\"start\":" + format_number(segments[i].interval.start_s) +
               ",\"end\":" + format_number(segments[i].interval.end_s) +
               ",\"score\":" + format_number(segments[i].confidence) + "}";
    }
    return out + "]";
}

std::string intervals_json(const std::vector<TimeInterval>& intervals) {
    std::string out = "[";
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (i) out += ",";
        out += "[" + format_number(intervals[i].start_s) + "," +
               format_number(intervals[i].end_s) + "]";
    }
    return out + "]";
}

json parse_line(const std::string& line, const char* what) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw DataError(std::string("malformed ") + what + " record: " + line);
    }
    return j;
}

const json& field(const json& j, const char* name, const char* what) {
    auto it = j.find(name);
    if (it == j.end()) {
        throw DataError(std::string(what) + " record missing field '" + name + "'");
    }
    return *it;
}

double number_field(const json& j, const char* name, const char* what) {
    const json& f = field(j, name, what);
    if (!f.is_number()) {
        throw DataError(std::string(what) + " record field '" + name +
                        "' is not a number");
    }
    return f.get<double>();
}

std::string string_field(const json& j, const char* name, const char* what) {
    const json& f = field(j, name, what);
    if (!f.is_string()) {
        throw DataError(std::string(what) + " record field '" + name +
                        "' is not a string");
    }
    return f.get<std::string>();
}

std::vector<TimeInterval> intervals_field(const json& j, const char* name,
                                          const char* what) {
    const json& f = field(j, name, what);
    if (!f.is_array()) {
        throw DataError(std::string(what) + " record field '" + name +
                        "' is not an array");
    }
    std::vector<TimeInterval> out;
    for (const json& pair : f) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number()) {
            throw DataError(std::string(what) + " record field '" + name +
                            "' must hold [start, end] pairs");
        }
        out.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    return out;
}

std::vector<SegmentScore> segments_field(const json& j, const char* name,
                                         const char* what) {
    const json& f = field(j, name, what);
    if (!f.is_array()) {
        throw DataError(std::string(what) + " record field '" + name +
                        "' is not an array");
    }
    std::vector<SegmentScore> out;
    for (const json& seg : f) {
        if (!seg.is_object()) {
            throw DataError(std::string(what) + " segments must be objects");
        }
        out.push_back({{number_field(seg, "start", what), number_field(seg, "end", what)},
                       number_field(seg, "score", what)});
    }
    return out;
}

template <typename Record, typename Parser>
std::vector<Record> read_file(const std::filesystem::path& path, Parser parse,
                              const char* what) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::vector<Record> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(parse(line));
    }
    (void)what;
    return out;
}

}  // namespace

std::string to_jsonl(const VideoMeta& meta) {
    return "{\"id\":\"" + meta.id +
           "\",\"duration_s\":" + format_number(meta.duration_s) +
           ",\"category\":\"" + to_string(meta.category) +
           "\",\"fake_audio_segments\":" + intervals_json(meta.fake_audio_segments) +
           ",\"fake_visual_segments\":" + intervals_json(meta.fake_visual_segments) +
           "}";
}

std::string to_jsonl(const ScoreRecord& record) {
    std::string scores = "[";
    for (std::size_t i = 0; i < record.series.scores.size(); ++i) {
        if (i) scores += ",";
        scores += format_number(record.series.scores[i]);
    }
    scores += "]";
    return "{\"id\":\"" + record.id + "\",\"modality\":\"" +
           to_string(record.modality) +
           "\",\"fps\":" + format_number(record.series.fps) +
           ",\"scores\":" + scores + "}";
}

std::string to_jsonl(const DetectionRecord& record) {
    return "{\"id\":\"" + record.id +
           "\",\"audio_score\":" + format_number(record.audio_score) +
           ",\"visual_score\":" + format_number(record.visual_score) + "}";
}

std::string to_jsonl(const LocalizationRecord& record) {
    return "{\"id\":\"" + record.id + "\",\"modality\":\"" +
           to_string(record.modality) +
           "\",\"segments\":" + segments_json(record.segments) + "}";
}

std::string to_jsonl(const PredictionRecord& record) {
    return "{\"id\":\"" + record.id +
           "\",\"detection_score\":" + format_number(record.detection_score) +
           ",\"segments\":" + segments_json(record.segments) + "}";
}

std::string to_jsonl(const LabeledCropRecord& record) {
    return "{\"id\":\"" + record.id +
           "\",\"start\":" + format_number(record.crop.crop.start_s) +
           ",\"end\":" + format_number(record.crop.crop.end_s) +
           ",\"label\":" + (record.crop.label ? std::string("1") : std::string("0")) +
           "}";
}

VideoMeta parse_meta(const std::string& line) {
    json j = parse_line(line, "meta");
    VideoMeta meta;
    meta.id = string_field(j, "id", "meta");
    meta.duration_s = number_field(j, "duration_s", "meta");
    meta.category = category_from_string(string_field(j, "category", "meta"));
    meta.fake_audio_segments = intervals_field(j, "fake_audio_segments", "meta");
    meta.fake_visual_segments = intervals_field(j, "fake_visual_segments", "meta");
    validate_meta(meta);
    return meta;
}

ScoreRecord parse_score(const std::string& line) {
    json j = parse_line(line, "score");
    ScoreRecord record;
    record.id = string_field(j, "id", "score");
    record.modality = modality_from_string(string_field(j, "modality", "score"));
    record.series.fps = number_field(j, "fps", "score");
    const json& scores = field(j, "scores", "score");
    if (!scores.is_array()) {
        throw DataError("score record field 'scores' is not an array");
    }
    record.series.scores.reserve(scores.size());
    for (const json& s : scores) {
        if (!s.is_number()) {
            throw DataError("score record holds a non-numeric score");
        }
        record.series.scores.push_back(s.get<double>());
    }
    try {
        validate_series(record.series);
    } catch (const std::invalid_argument& e) {
        throw DataError("score record for '" + record.id + "': " + e.what());
    }
    return record;
}

DetectionRecord parse_detection(const std::string& line) {
    json j = parse_line(line, "detection");
    return {string_field(j, "id", "detection"),
            number_field(j, "audio_score", "detection"),
            number_field(j, "visual_score", "detection")};
}

LocalizationRecord parse_localization(const std::string& line) {
    json j = parse_line(line, "localization");
    LocalizationRecord record;
    record.id = string_field(j, "id", "localization");
    record.modality =
        modality_from_string(string_field(j, "modality", "localization"));
    record.segments = segments_field(j, "segments", "localization");
    return record;
}

PredictionRecord parse_prediction(const std::string& line) {
    json j = parse_line(line, "prediction");
    PredictionRecord record;
    record.id = string_field(j, "id", "prediction");
    record.detection_score = number_field(j, "detection_score", "prediction");
    record.segments = segments_field(j, "segments", "prediction");
    return record;
}

std::vector<VideoMeta> read_meta_file(const std::filesystem::path& path) {
    return read_file<VideoMeta>(path, parse_meta, "meta");
}

std::vector<ScoreRecord> read_scores_file(const std::filesystem::path& path) {
    return read_file<ScoreRecord>(path, parse_score, "score");
}

std::vector<DetectionRecord> read_detections_file(const std::filesystem::path& path) {
    return read_file<DetectionRecord>(path, parse_detection, "detection");
}

std::vector<LocalizationRecord> read_localizations_file(
    const std::filesystem::path& path) {
    return read_file<LocalizationRecord>(path, parse_localization, "localization");
}

std::vector<PredictionRecord> read_predictions_file(
    const std::filesystem::path& path) {
    return read_file<PredictionRecord>(path, parse_prediction, "prediction");
}

void write_lines(const std::filesystem::path& path,
                 const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    for (const std::string& line : lines) {
        out << line << '\n';
    }
    if (!out) {
        throw DataError("write failed for " + path.string());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw DataError("write failed for " + path.string());
    }
}

}  // namespace avfusion
