// Stage-oriented command line for the topicsum pipeline:
//   ingest -> signals -> fuse -> train -> summarize -> eval
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "topicsum/pipeline.hpp"

namespace {

std::set<std::string> parse_drop_list(const std::string& csv) {
  std::set<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string_view trimmed = topicsum::detail::trim(item);
    if (!trimmed.empty()) out.emplace(trimmed);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topicsum: label-free topic-based extractive summarization pipeline"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::string mode_override;
  int seed_override = -1;
  bool seed_set = false;
  app.add_option("--config", config_path, "run config JSON")->required();
  app.add_option("--out", out_override, "override output directory");
  app.add_option("--mode", mode_override, "override budget mode (one_sentence|twenty_words)");
  app.add_option("--seed", seed_override, "override training seed")
      ->each([&](const std::string&) { seed_set = true; });

  CLI::App* c_ingest = app.add_subcommand("ingest", "parse the corpus into the document store");
  CLI::App* c_signals = app.add_subcommand("signals", "compute per-sentence supervision signals");

  std::string drop_csv;
  CLI::App* c_fuse = app.add_subcommand("fuse", "fuse signals into soft labels");
  c_fuse->add_option("--drop", drop_csv, "comma-separated signals to ablate");

  std::string labels_file;
  CLI::App* c_train = app.add_subcommand("train", "train the sentence scorer");
  c_train->add_option("--labels", labels_file, "labels file (default labels_all.jsonl)");

  std::string model_file;
  bool oracle = false;
  CLI::App* c_summarize = app.add_subcommand("summarize", "emit budget-constrained summaries");
  c_summarize->add_option("--model", model_file, "model file (default model_all.json)");
  c_summarize->add_flag("--oracle", oracle, "emit the extractive-label oracle instead");

  std::vector<std::string> summaries_files;
  CLI::App* c_eval = app.add_subcommand("eval", "score summaries and render the report");
  c_eval->add_option("--summaries", summaries_files, "summaries files to score");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    topicsum::RunConfig cfg = topicsum::load_run_config(config_path);
    if (!out_override.empty()) cfg.out = out_override;
    if (!mode_override.empty()) cfg.mode = mode_override;
    if (seed_set) cfg.train.seed = static_cast<unsigned int>(seed_override);
    topicsum::validate_run_config(cfg);

    if (c_ingest->parsed()) {
      topicsum::cmd_ingest(cfg);
    } else if (c_signals->parsed()) {
      topicsum::cmd_signals(cfg);
    } else if (c_fuse->parsed()) {
      topicsum::cmd_fuse(cfg, parse_drop_list(drop_csv));
    } else if (c_train->parsed()) {
      std::filesystem::path labels =
          labels_file.empty() ? topicsum::labels_path(cfg, "all")
                              : std::filesystem::path(labels_file);
      topicsum::cmd_train(cfg, labels);
    } else if (c_summarize->parsed()) {
      std::filesystem::path model = model_file.empty()
                                        ? topicsum::model_path(cfg, "all")
                                        : std::filesystem::path(model_file);
      topicsum::cmd_summarize(cfg, model, oracle);
    } else if (c_eval->parsed()) {
      std::vector<std::filesystem::path> files;
      if (summaries_files.empty()) {
        files.push_back(topicsum::summaries_path(cfg, "all"));
      } else {
        files.assign(summaries_files.begin(), summaries_files.end());
      }
      topicsum::cmd_eval(cfg, files);
    }
    return 0;
  } catch (const topicsum::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const topicsum::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
