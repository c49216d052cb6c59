// coarse-lab: word metrics, Hamming embeddings, covering witnesses and
// function-class reports for countable abelian groups, driven by JSON configs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "coarselab/run.hpp"

namespace {

using coarselab::json;

json parse_json_arg(const std::string& text, const std::string& what) {
  // "@file" loads from disk, anything else parses inline
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) coarselab::fail(coarselab::ErrorCode::invalid_config, "cannot open " + text.substr(1));
    body.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return json::parse(body);
  } catch (const std::exception& e) {
    coarselab::fail(coarselab::ErrorCode::invalid_config,
                    "bad JSON for " + what + ": " + e.what());
  }
}

struct CommonArgs {
  std::string config_path;
  std::string output_path;
  std::string csv_path;
  json params = json::object();
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config (JSON file path)")
      ->required();
  cmd->add_option("--output", args.output_path, "write the report here instead of stdout");
  cmd->add_option("--csv", args.csv_path, "also write the tabular form as CSV");
}

/// Registers a string option that lands in params as parsed JSON.
void add_json_param(CLI::App* cmd, CommonArgs& args, const std::string& flag,
                    const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
         flag, [&args, key](const std::string& v) { args.params[key] = parse_json_arg(v, key); },
         help);
}

void add_uint_param(CLI::App* cmd, CommonArgs& args, const std::string& flag,
                    const std::string& key, const std::string& help) {
  cmd->add_option_function<std::uint64_t>(
         flag, [&args, key](std::uint64_t v) { args.params[key] = v; }, help);
}

void add_bool_param(CLI::App* cmd, CommonArgs& args, const std::string& flag,
                    const std::string& key, const std::string& help) {
  cmd->add_flag_function(
         flag,
         [&args, key](std::int64_t count) { args.params[key] = count > 0; },
         help);
}

void add_uint_list_param(CLI::App* cmd, CommonArgs& args, const std::string& flag,
                         const std::string& key, const std::string& help) {
  cmd->add_option_function<std::vector<std::uint64_t>>(
         flag,
         [&args, key](const std::vector<std::uint64_t>& v) { args.params[key] = v; },
         help)
      ->delimiter(',');
}

int emit(const coarselab::RunOutcome& outcome, const CommonArgs& args) {
  const std::string text = outcome.report.dump(2) + "\n";
  if (args.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.output_path);
    if (!out) {
      std::cerr << "cannot write " << args.output_path << "\n";
      return 2;
    }
    out << text;
  }
  if (!args.csv_path.empty()) {
    if (!outcome.csv) {
      std::cerr << "this command has no CSV form\n";
      return 2;
    }
    std::ofstream out(args.csv_path);
    if (!out) {
      std::cerr << "cannot write " << args.csv_path << "\n";
      return 2;
    }
    out << *outcome.csv;
  }
  return outcome.exit_code;
}

int run(const std::string& command, const CommonArgs& args) {
  json config = parse_json_arg("@" + args.config_path, "config");
  if (!config.is_object())
    coarselab::fail(coarselab::ErrorCode::invalid_config, "config must be a JSON object");
  json params = config.contains("params") ? config.at("params") : json::object();
  for (const auto& [key, value] : args.params.items()) params[key] = value;  // flags win
  config["params"] = params;
  return emit(coarselab::run_command(command, config), args);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale workbench for coarse structures on countable abelian groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", coarselab::kToolVersion);

  std::vector<std::pair<CLI::App*, CommonArgs*>> registered;
  std::vector<std::unique_ptr<CommonArgs>> storage;
  auto make = [&](const std::string& name, const std::string& help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    storage.push_back(std::make_unique<CommonArgs>());
    CommonArgs& args = *storage.back();
    add_common(cmd, args);
    registered.push_back({cmd, &args});
    return std::pair<CLI::App*, CommonArgs*>{cmd, &args};
  };

  {
    auto [cmd, args] = make("dist", "exact word distance between two elements");
    add_json_param(cmd, *args, "--x", "x", "first element, e.g. [[0,1]]");
    add_json_param(cmd, *args, "--y", "y", "second element");
    add_uint_param(cmd, *args, "--max-r", "max_r", "search bound (default 16)");
  }
  {
    auto [cmd, args] = make("ball", "enumerate A_n + x");
    add_json_param(cmd, *args, "--x", "x", "center element");
    add_uint_param(cmd, *args, "--n", "n", "sumset radius");
    add_uint_param(cmd, *args, "--cap", "cap", "enumeration cap");
  }
  {
    auto [cmd, args] = make("ideal-ball", "enumerate F + A_n");
    add_json_param(cmd, *args, "--f", "f", "finite center set, array of elements");
    add_uint_param(cmd, *args, "--n", "n", "sumset radius");
    add_uint_param(cmd, *args, "--cap", "cap", "enumeration cap");
  }
  {
    auto [cmd, args] = make("cover-radius", "exact k-center covering radius");
    add_json_param(cmd, *args, "--s", "s", "finite point set, array of elements");
    add_uint_param(cmd, *args, "--k", "k", "max number of centers");
    add_uint_param(cmd, *args, "--max-r", "max_r", "search bound (default 16)");
  }
  {
    auto [cmd, args] = make("merge", "round-robin merge of element sequences");
    add_json_param(cmd, *args, "--seqs", "seqs", "array of element sequences");
  }
  {
    auto [cmd, args] = make("embed", "greedy Hamming-embedding constructor");
    add_uint_param(cmd, *args, "--target-len", "target_len", "length of the selected sequence");
    add_uint_param(cmd, *args, "--scan-limit", "scan_limit",
                   "exclusive bound on scanned source indices");
    add_uint_param(cmd, *args, "--verify-support", "verify_support",
                   "also verify the isometry on this support bound");
  }
  {
    auto [cmd, args] = make("verify-embed", "verify an embedding certificate");
    add_json_param(cmd, *args, "--cert", "certificate", "certificate JSON (@file or inline)");
    add_uint_param(cmd, *args, "--support-bound", "support_bound", "pairs over {0..s-1}");
  }
  {
    auto [cmd, args] = make("fs-check", "subset-sum distinctness and signed-sum condition");
    add_json_param(cmd, *args, "--b", "b", "sequence to test, array of elements");
    add_bool_param(cmd, *args, "--signed,!--no-signed", "signed",
                   "run the signed-sum condition too (needs generators)");
  }
  {
    auto [cmd, args] = make("cover-verify", "verify a covering witness");
    add_json_param(cmd, *args, "--witness", "witness", "witness JSON (@file or inline)");
  }
  {
    auto [cmd, args] = make("cover-greedy", "greedy covering witness at scale r");
    add_uint_param(cmd, *args, "--r", "r", "separation scale");
    add_json_param(cmd, *args, "--candidates", "candidates",
                   "candidate family, e.g. {\"kind\":\"singletons\"}");
  }
  {
    auto [cmd, args] = make("min-colors", "exact minimal class count");
    add_uint_param(cmd, *args, "--r", "r", "separation scale");
    add_json_param(cmd, *args, "--candidates", "candidates", "candidate family");
    add_uint_param(cmd, *args, "--budget", "budget", "branch-and-bound node budget");
  }
  {
    auto [cmd, args] = make("dim-profile", "scale-dimension profile across r");
    add_uint_list_param(cmd, *args, "--r-list", "r_list", "comma-separated scales");
    add_json_param(cmd, *args, "--candidates", "candidates", "candidate family");
    add_uint_param(cmd, *args, "--budget", "budget", "exact-search budget per row");
    add_bool_param(cmd, *args, "--witnesses,!--no-witnesses", "witnesses",
                   "embed witnesses in the report");
  }
  {
    auto [cmd, args] = make("osc", "per-point oscillation table");
    add_json_param(cmd, *args, "--function", "function", "function spec");
    add_uint_param(cmd, *args, "--r", "r", "ball radius");
    add_uint_param(cmd, *args, "--margin", "margin", "interior margin (>= r)");
  }
  {
    auto [cmd, args] = make("so-index", "eventual constancy index of a binary function");
    add_json_param(cmd, *args, "--function", "function", "function spec");
    add_uint_param(cmd, *args, "--r", "r", "ball radius (default 1)");
  }
  {
    auto [cmd, args] = make("classify", "staged function-class report");
    add_json_param(cmd, *args, "--function", "function", "function spec");
    add_uint_list_param(cmd, *args, "--r-list", "r_list", "comma-separated scales");
    add_uint_list_param(cmd, *args, "--excisions", "excisions", "excision radii m");
    add_uint_param(cmd, *args, "--max-stage", "max_stage", "bornologous stages 0..n");
    add_json_param(cmd, *args, "--modulus-bound", "modulus_bound", "macro-uniform threshold");
  }

  try {
    app.parse(argc, argv);
    for (auto& [cmd, args] : registered)
      if (cmd->parsed()) return run(cmd->get_name(), *args);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const coarselab::Error& e) {
    json err{{"error", {{"code", coarselab::error_code_name(e.code())}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
