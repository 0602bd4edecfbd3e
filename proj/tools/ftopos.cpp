// ftopos: command-line checks over workspace files.
//
// Exit status: 0 when the checked property holds, 1 when it fails,
// 2 on parse, validation or resource errors.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ftopos/commands.hpp"
#include "ftopos/errors.hpp"
#include "ftopos/guard.hpp"

namespace fs = std::filesystem;
using namespace ftopos;

namespace {

int write_corpus(const std::string& dir, bool check) {
  int status = 0;
  for (const auto& [name, spec] : bundled_corpus()) {
    const fs::path path = fs::path(dir) / name;
    const std::string text = dump_json(spec);
    if (check) {
      std::ifstream in(path, std::ios::binary);
      std::string existing((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      const bool same = in.good() || in.eof() ? existing == text : false;
      std::cout << path.string() << ": " << (same ? "up to date" : "differs") << "\n";
      if (!same) status = 1;
    } else {
      fs::create_directories(dir);
      std::ofstream(path, std::ios::binary) << text;
      std::cout << "wrote " << path.string() << "\n";
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite presheaf topos checks: Segal objects, completeness, univalence"};
  app.require_subcommand(1);

  std::string workspace;
  std::size_t bound = kDefaultSizeBound;
  unsigned workers = 1;
  bool as_json = false;
  bool timings = false;
  app.add_option("--workspace,-w", workspace, "Workspace file");
  app.add_option("--bound", bound, "Largest intermediate set allowed")
      ->capture_default_str();
  app.add_option("--parallel", workers, "Worker threads for enumeration sweeps")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_flag("--json", as_json, "Print the machine-readable report");
  app.add_flag("--timings", timings, "Include wall-clock seconds in reports");

  std::string name;
  std::size_t max_total = 2;
  std::optional<std::size_t> max_base;

  auto* validate = app.add_subcommand("validate", "Load and validate every workspace entry");
  auto* segal = app.add_subcommand("check-segal", "Check the Segal condition");
  segal->add_option("name", name, "Simplicial or category object")->required();
  auto* complete = app.add_subcommand("check-complete", "Check completeness of a Segal object");
  complete->add_option("name", name, "Simplicial or category object")->required();
  auto* nerve = app.add_subcommand("nerve", "Build the nerve of a map");
  nerve->add_option("map", name, "Morphism name")->required();
  auto* univalent = app.add_subcommand("check-univalent", "Check univalence of listed maps");
  univalent->add_option("map", name, "Morphism name (default: every entry of maps)");
  auto* enumerate = app.add_subcommand("enumerate-univalent",
                                       "Enumerate univalent arrows up to isomorphism");
  auto* poset = app.add_subcommand("poset", "Count pullback squares between univalent arrows");
  for (auto* sub : {enumerate, poset}) {
    sub->add_option("size", max_total, "Largest level of the total object")->capture_default_str();
    sub->add_option("--max-base", max_base, "Largest level of the base (default: size)");
  }
  auto* classify = app.add_subcommand("classify", "Compare a mono with its characteristic map");
  classify->add_option("mono", name, "Morphism name")->required();
  std::string out_dir = "corpus";
  bool check_only = false;
  auto* corpus = app.add_subcommand("corpus", "Write the bundled workspace files");
  corpus->add_option("dir", out_dir, "Output directory")->capture_default_str();
  corpus->add_flag("--check", check_only, "Compare with existing files instead of writing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    set_size_bound(bound);
    set_parallelism(workers);
    if (corpus->parsed()) return write_corpus(out_dir, check_only);
    if (workspace.empty()) throw ValidationError("--workspace is required");
    const Workspace w = load_workspace_file(workspace);
    const CommandOptions opts{timings};
    const std::size_t base = max_base.value_or(max_total);
    CommandResult r;
    if (validate->parsed()) r = cmd_validate(w, opts);
    else if (segal->parsed()) r = cmd_check_segal(w, name, opts);
    else if (complete->parsed()) r = cmd_check_complete(w, name, opts);
    else if (nerve->parsed()) r = cmd_nerve(w, name, opts);
    else if (univalent->parsed()) r = cmd_check_univalent(w, name, opts);
    else if (enumerate->parsed()) r = cmd_enumerate_univalent(w, max_total, base, opts);
    else if (poset->parsed()) r = cmd_poset(w, max_total, base, opts);
    else if (classify->parsed()) r = cmd_classify(w, name, opts);
    std::cout << (as_json ? dump_json(r.report) : r.text);
    return r.exit_code;
  } catch (const ParseError& e) {
    std::cerr << workspace << ": " << e.what() << "\n";
  } catch (const ResourceError& e) {
    std::cerr << "resource bound: " << e.what() << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
