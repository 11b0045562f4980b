#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "avfusion/commands.hpp"
#include "avfusion/errors.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::int64_t> seed;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool out_required) {
    cmd->add_option("--config", args.config_path, "configuration file path");
    cmd->add_option("--set", args.overrides, "override a config key (key=value)");
    cmd->add_option("--seed", args.seed, "override generator.seed");
    auto* out = cmd->add_option("--out", args.out_dir, "output directory");
    if (out_required) out->required();
}

avfusion::RunConfig make_config(const CommonArgs& args) {
    std::optional<std::filesystem::path> path;
    if (!args.config_path.empty()) {
        path = args.config_path;
    } else if (const char* env = std::getenv("AVFUSION_CONFIG")) {
        if (*env) path = env;
    }
    avfusion::RunConfig config = avfusion::load_run_config(path, args.overrides);
    if (args.seed) {
        config.generator.seed = static_cast<std::uint64_t>(*args.seed);
    }
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"audio-visual deepfake detection and localization pipeline"};
    app.require_subcommand(1);

    CommonArgs synth_args;
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    add_common(synth, synth_args, true);

    CommonArgs label_args;
    std::string label_meta;
    double label_target = 2.0;
    double label_stride = 1.0;
    auto* label = app.add_subcommand("label", "dynamic labeling of audio crops");
    label->add_option("--meta", label_meta, "metadata JSONL")->required();
    label->add_option("--target-len", label_target, "crop length in seconds");
    label->add_option("--stride", label_stride, "crop offset grid in seconds");
    add_common(label, label_args, true);

    CommonArgs detect_args;
    std::string detect_meta, detect_audio, detect_visual;
    auto* detect = app.add_subcommand("detect", "per-video detection scores");
    detect->add_option("--meta", detect_meta, "metadata JSONL")->required();
    detect->add_option("--scores-audio", detect_audio, "audio score JSONL")->required();
    detect->add_option("--scores-visual", detect_visual, "visual score JSONL")->required();
    add_common(detect, detect_args, true);

    CommonArgs localize_args;
    std::string localize_audio, localize_visual;
    auto* localize = app.add_subcommand("localize", "frame scores to segments");
    localize->add_option("--scores-audio", localize_audio, "audio score JSONL")->required();
    localize->add_option("--scores-visual", localize_visual, "visual score JSONL")->required();
    add_common(localize, localize_args, true);

    CommonArgs fuse_args;
    std::string fuse_detections, fuse_localizations;
    auto* fuse = app.add_subcommand("fuse", "cross-modal score fusion");
    fuse->add_option("--detections", fuse_detections, "detections JSONL")->required();
    fuse->add_option("--localizations", fuse_localizations, "localizations JSONL")->required();
    add_common(fuse, fuse_args, true);

    CommonArgs eval_args;
    std::string eval_predictions, eval_meta;
    auto* eval = app.add_subcommand("eval", "AUC / AP / AR / final score");
    eval->add_option("--predictions", eval_predictions, "predictions JSONL")->required();
    eval->add_option("--meta", eval_meta, "metadata JSONL")->required();
    add_common(eval, eval_args, false);

    CommonArgs stats_args;
    std::string stats_meta;
    auto* stats = app.add_subcommand("stats", "dataset statistics report");
    stats->add_option("--meta", stats_meta, "metadata JSONL")->required();
    add_common(stats, stats_args, false);

    try {
        app.parse(argc, argv);

        if (synth->parsed()) {
            avfusion::cmd_synth(make_config(synth_args), synth_args.out_dir);
        } else if (label->parsed()) {
            avfusion::cmd_label(make_config(label_args), label_meta, label_target,
                                label_stride, label_args.out_dir, std::cout);
        } else if (detect->parsed()) {
            avfusion::cmd_detect(make_config(detect_args), detect_meta, detect_audio,
                                 detect_visual, detect_args.out_dir);
        } else if (localize->parsed()) {
            avfusion::cmd_localize(make_config(localize_args), localize_audio,
                                   localize_visual, localize_args.out_dir);
        } else if (fuse->parsed()) {
            avfusion::cmd_fuse(make_config(fuse_args), fuse_detections,
                               fuse_localizations, fuse_args.out_dir);
        } else if (eval->parsed()) {
            std::optional<std::filesystem::path> out_dir;
            if (!eval_args.out_dir.empty()) out_dir = eval_args.out_dir;
            avfusion::cmd_eval(make_config(eval_args), eval_predictions, eval_meta,
                               std::cout, out_dir);
        } else if (stats->parsed()) {
            std::optional<std::filesystem::path> out_dir;
            if (!stats_args.out_dir.empty()) out_dir = stats_args.out_dir;
            avfusion::cmd_stats(stats_meta, std::cout, out_dir);
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const avfusion::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const avfusion::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
