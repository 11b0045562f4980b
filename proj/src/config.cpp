#include "avfusion/config.hpp"

#include <fstream>

#include "avfusion/errors.hpp"

namespace avfusion {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw UsageError("config: bad number for '" + key + "': " + value);
    }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        std::int64_t v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw UsageError("config: bad integer for '" + key + "': " + value);
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        std::size_t comma = value.find(',', pos);
        std::string item = trim(value.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (!item.empty()) out.push_back(parse_double(key, item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) {
        throw UsageError("config: empty list for '" + key + "'");
    }
    return out;
}

template <std::size_t N>
std::array<double, N> parse_fixed(const std::string& key, const std::string& value) {
    std::vector<double> items = parse_list(key, value);
    if (items.size() != N) {
        throw UsageError("config: '" + key + "' needs exactly " +
                         std::to_string(N) + " values");
    }
    std::array<double, N> out{};
    std::copy(items.begin(), items.end(), out.begin());
    return out;
}

}  // namespace

void apply_setting(RunConfig& config, const std::string& key,
                   const std::string& value) {
    // detector
    if (key == "detector.binarize_threshold") {
        config.detector.binarize_threshold = parse_double(key, value);
    } else if (key == "detector.c1") {
        config.detector.c1 = parse_double(key, value);
    } else if (key == "detector.c2") {
        config.detector.c2 = parse_double(key, value);
    } else if (key == "detector.decision_threshold") {
        config.detector.decision_threshold = parse_double(key, value);
    } else if (key == "detector.window_s") {
        config.window_s = parse_double(key, value);
    } else if (key == "detector.stride_s") {
        config.stride_s = parse_double(key, value);
    }
    // fusion
    else if (key == "fusion.decision_threshold") {
        config.fusion.decision_threshold = parse_double(key, value);
    } else if (key == "fusion.merge_epsilon") {
        config.fusion.merge_epsilon = parse_double(key, value);
    } else if (key == "fusion.report_threshold") {
        config.fusion.report_threshold = parse_double(key, value);
    }
    // eval
    else if (key == "eval.iou_thresholds") {
        config.eval.iou_thresholds = parse_list(key, value);
    } else if (key == "eval.final_score_rule") {
        if (value == "mean_of_three") {
            config.eval.final_score_rule = EvalProtocol::FinalScoreRule::mean_of_three;
        } else if (value == "mean_of_det_and_loc") {
            config.eval.final_score_rule =
                EvalProtocol::FinalScoreRule::mean_of_det_and_loc;
        } else {
            throw UsageError("config: unknown final_score_rule: " + value);
        }
    } else if (key == "eval.gt_modality") {
        if (value == "pooled") {
            config.gt_modality = GtModality::pooled;
        } else if (value == "audio") {
            config.gt_modality = GtModality::audio;
        } else if (value == "visual") {
            config.gt_modality = GtModality::visual;
        } else {
            throw UsageError("config: unknown gt_modality: " + value);
        }
    }
    // generator
    else if (key == "generator.n_videos") {
        std::int64_t n = parse_int(key, value);
        if (n < 0) throw UsageError("config: generator.n_videos must be >= 0");
        config.generator.n_videos = static_cast<std::size_t>(n);
    } else if (key == "generator.seed") {
        config.generator.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "generator.category_probs") {
        config.generator.category_probs = parse_fixed<4>(key, value);
    } else if (key == "generator.duration_bins_audio") {
        config.generator.duration_bins_audio = parse_fixed<4>(key, value);
    } else if (key == "generator.duration_bins_visual") {
        config.generator.duration_bins_visual = parse_fixed<4>(key, value);
    } else if (key == "generator.video_duration_range_s") {
        config.generator.video_duration_range_s = parse_fixed<2>(key, value);
    } else if (key == "generator.segments_per_modality_range") {
        auto range = parse_fixed<2>(key, value);
        config.generator.segments_per_modality_range = {
            static_cast<int>(range[0]), static_cast<int>(range[1])};
    } else if (key == "generator.full_forgery_prob") {
        config.generator.full_forgery_prob = parse_double(key, value);
    } else if (key == "generator.fps") {
        config.generator.fps = parse_double(key, value);
    } else if (key == "generator.detector_mode") {
        if (value == "oracle") {
            config.model.mode = DetectorModel::Mode::oracle;
        } else if (value == "noisy") {
            config.model.mode = DetectorModel::Mode::noisy;
        } else {
            throw UsageError("config: unknown detector_mode: " + value);
        }
    } else if (key == "generator.real_score_mean") {
        config.model.real_score_mean = parse_double(key, value);
    } else if (key == "generator.fake_score_mean") {
        config.model.fake_score_mean = parse_double(key, value);
    } else if (key == "generator.score_noise_scale") {
        config.model.score_noise_scale = parse_double(key, value);
    } else if (key == "generator.miss_rate") {
        config.model.miss_rate = parse_double(key, value);
    } else if (key == "generator.false_alarm_rate") {
        config.model.false_alarm_rate = parse_double(key, value);
    } else {
        throw UsageError("config: unknown key '" + key + "'");
    }
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config file " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        std::size_t eq = text.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config " + path.string() + ":" +
                             std::to_string(line_no) + ": expected key = value");
        }
        apply_setting(config, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    }
}

RunConfig load_run_config(const std::optional<std::filesystem::path>& config_path,
                          const std::vector<std::string>& overrides) {
    RunConfig config;
    if (config_path) {
        load_config_file(config, *config_path);
    }
    for (const std::string& setting : overrides) {
        std::size_t eq = setting.find('=');
        if (eq == std::string::npos) {
            throw UsageError("--set expects key=value, got: " + setting);
        }
        std::string key = setting.substr(0, eq);
        std::string value = setting.substr(eq + 1);
        apply_setting(config, key, value);
    }
    validate(config);
    return config;
}

void validate(const RunConfig& config) {
    try {
        validate(config.detector);
        validate(config.fusion);
        validate(config.eval);
        validate(config.generator);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    if (config.window_s <= 0.0 || config.stride_s <= 0.0 ||
        config.stride_s > config.window_s) {
        throw UsageError("config: need 0 < detector.stride_s <= detector.window_s");
    }
}

}  // namespace avfusion
