// Command-line front end: parse, translate, eval, check.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chronos/bot_eval.hpp"
#include "chronos/equiv.hpp"
#include "chronos/error.hpp"
#include "chronos/model_file.hpp"
#include "chronos/top_eval.hpp"
#include "chronos/translate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kAlphaMismatch = 2;
constexpr int kDisagreement = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw chronos::Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_parse(const std::string& lang, const std::string& text) {
  if (lang == "top")
    std::cout << chronos::top::print(chronos::top::parse(text)) << "\n";
  else
    std::cout << chronos::bot::print(chronos::bot::parse(text)) << "\n";
  return kOk;
}

int cmd_translate(const std::string& text, const std::string& expected_path) {
  chronos::top::Formula source = chronos::top::parse(text);
  chronos::bot::Formula out = chronos::translate(source);
  std::cout << chronos::bot::print(out) << "\n";
  if (expected_path.empty()) return kOk;
  chronos::bot::Formula expected = chronos::bot::parse(read_file(expected_path));
  if (chronos::bot::alpha_equivalent(out, expected, chronos::top::free_vars(source))) return kOk;
  std::cerr << "translation differs from " << expected_path << " beyond fresh-variable renaming\n"
            << "expected: " << chronos::bot::print(expected) << "\n";
  return kAlphaMismatch;
}

int cmd_eval(const std::string& model_path, const std::string& lang, const std::string& text,
             bool trace, std::optional<int> speech) {
  chronos::ModelFile file = chronos::load_model_file(model_path);
  chronos::TimePoint st = speech.value_or(file.speech);
  if (!file.model.timeline.on_timeline(st))
    throw chronos::Error("speech time " + std::to_string(st) + " is not on the timeline");

  if (lang == "top") {
    auto witness = chronos::top::find_witness(file.model, st, chronos::top::parse(text));
    std::cout << (witness ? "true" : "false") << "\n";
    if (witness && trace)
      std::cout << "witness g=" << chronos::to_string(witness->g)
                << " et=" << chronos::to_string(witness->et) << "\n";
  } else {
    chronos::BotModel b = chronos::derive_bot_model(file.model);
    auto witness = chronos::bot::find_witness(b, st, chronos::bot::parse(text));
    std::cout << (witness ? "true" : "false") << "\n";
    if (witness && trace) std::cout << "witness g=" << chronos::to_string(*witness) << "\n";
  }
  return kOk;
}

int cmd_check(const chronos::equiv::GenParams& params, std::size_t cases, const std::string& mutate,
              unsigned threads, const std::string& dump_dir) {
  chronos::equiv::CampaignOptions options;
  options.threads = threads;
  if (mutate == "drop-past-narrowing")
    options.translate.mutation = chronos::Mutation::DropPastNarrowing;
  chronos::equiv::Report report = chronos::equiv::run_campaign(params, cases, options);
  std::cout << report.text();
  if (!dump_dir.empty()) {
    std::filesystem::create_directories(dump_dir);
    for (const auto& d : report.disagreements) {
      std::ofstream out(std::filesystem::path(dump_dir) / ("case" + std::to_string(d.index) + ".tmodel"));
      out << "# " << chronos::top::print(d.formula) << "\n"
          << chronos::serialize_model(chronos::ModelFile{d.model, d.st});
    }
  }
  return report.disagreements.empty() ? kOk : kDisagreement;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TOP/BOT temporal meaning representations: parse, translate, evaluate, check"};
  app.require_subcommand(1);

  std::string lang;
  std::string text;

  auto* parse = app.add_subcommand("parse", "Parse a formula and print it canonically");
  parse->add_option("lang", lang, "top or bot")->required()->check(CLI::IsMember({"top", "bot"}));
  parse->add_option("formula", text, "Formula text")->required();

  std::string check_alpha;
  auto* translate = app.add_subcommand("translate", "Translate a TOP formula into BOT");
  translate->add_option("formula", text, "TOP formula text")->required();
  translate->add_option("--check-alpha", check_alpha,
                        "File with the expected BOT formula, compared up to fresh-variable renaming");

  std::string model_path;
  bool trace = false;
  std::optional<int> speech;
  auto* eval = app.add_subcommand("eval", "Evaluate a formula against a model file");
  eval->add_option("model", model_path, "Model file")->required();
  eval->add_option("lang", lang, "top or bot")->required()->check(CLI::IsMember({"top", "bot"}));
  eval->add_option("formula", text, "Formula text")->required();
  eval->add_flag("--trace", trace, "Print the witness assignment when true");
  eval->add_option("--st", speech, "Override the model file's speech time");

  chronos::equiv::GenParams params;
  std::size_t cases = 1000;
  std::string mutate;
  unsigned threads = 0;
  std::string dump_dir;
  auto* check = app.add_subcommand("check", "Run the TOP/BOT equivalence campaign");
  check->add_option("--seed", params.seed, "Campaign seed")->required();
  check->add_option("--cases", cases, "Number of cases")->required();
  check->add_option("--timeline", params.timeline_size, "Maximum timeline size")->capture_default_str();
  check->add_option("--atoms", params.atom_count, "Maximum atom count")->capture_default_str();
  check->add_option("--preds", params.pred_count, "Maximum predicate count")->capture_default_str();
  check->add_option("--arity", params.max_arity, "Maximum predicate arity")->capture_default_str();
  check->add_option("--depth", params.max_depth, "Maximum formula depth")->capture_default_str();
  check->add_option("--periods", params.max_periods_per_tuple, "Maximum periods per tuple")
      ->capture_default_str();
  check->add_option("--vars", params.max_free_vars, "Maximum free variables")->capture_default_str();
  check->add_option("--threads", threads, "Worker threads (0 = all cores)");
  check->add_option("--mutate", mutate, "Corrupt a translation rule")
      ->check(CLI::IsMember({"drop-past-narrowing"}));
  check->add_option("--dump", dump_dir, "Write shrunk counterexample models to this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*parse) return cmd_parse(lang, text);
    if (*translate) return cmd_translate(text, check_alpha);
    if (*eval) return cmd_eval(model_path, lang, text, trace, speech);
    if (*check) return cmd_check(params, cases, mutate, threads, dump_dir);
  } catch (const chronos::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
