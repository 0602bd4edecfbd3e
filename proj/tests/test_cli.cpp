#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ftopos/commands.hpp"
#include "ftopos/corpus.hpp"
#include "ftopos/errors.hpp"
#include "ftopos/guard.hpp"
#include "ftopos/univalence.hpp"

using namespace ftopos;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = FTOPOS_CORPUS_DIR;

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Workspace bundled(const std::string& name) { return load_workspace_file(kCorpus / name); }

int run(const std::string& args, std::string* out = nullptr) {
  const fs::path tmp = fs::temp_directory_path() / "ftopos_cli_out.txt";
  const std::string cmd = std::string(FTOPOS_CLI) + " " + args + " >" + tmp.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (out) *out = read(tmp);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("elements round-trip through json") {
  const Element e = Element::tuple(
      {atom("a"), Element::fam({{atom("k"), Element::tuple({})}, {atom("j"), atom("v")}}),
       Element::tuple({atom("0"), atom("1")})});
  CHECK(element_from_json(element_to_json(e)) == e);
  CHECK(element_to_json(atom("x")) == json("x"));
  CHECK(element_from_json(json::parse(R"({"fam": []})")) == Element::fam({}));
  CHECK_THROWS_AS(element_from_json(json::parse(R"({"fam": [["k"]]})")), ValidationError);
  CHECK_THROWS_AS(element_from_json(json(1.5)), ValidationError);
}

TEST_CASE("categories round-trip through json") {
  for (const auto& [name, c] : corpus::finite_categories()) {
    INFO(name);
    CHECK(category_from_json(category_to_json(c)) == c);
  }
  for (const char* b : {"terminal", "empty", "discrete:3", "chain:4", "cyclic:5", "symmetric:3"}) {
    INFO(b);
    CHECK(validate_category(builtin_category(b)).ok());
  }
  CHECK(builtin_category("terminal") == Topos::sets().index());
  CHECK_THROWS_AS(builtin_category("chain:x"), ValidationError);
  CHECK_THROWS_AS(builtin_category("cube:2"), ValidationError);
}

TEST_CASE("presheaves survive the explicit form") {
  const Presheaf s = corpus::s3_natural_action();
  json spec{{"format", 1}, {"index", "symmetric:3"}, {"presheaves", {{"S", presheaf_to_json(s)}}}};
  const Workspace w = load_workspace(spec);
  CHECK(w.presheaf("S") == s);
}

TEST_CASE("bundled corpus files are current and canonical") {
  for (const auto& [name, spec] : bundled_corpus()) {
    INFO(name);
    const std::string text = read(kCorpus / name);
    CHECK(text == dump_json(spec));
    const Workspace w = load_workspace(text);
    CHECK(dump_workspace(w) == text);
    CHECK(dump_workspace(load_workspace(dump_workspace(w))) == text);
    const CommandResult r = cmd_validate(w);
    CHECK(r.exit_code == 0);
    CHECK(r.report["valid"] == true);
  }
}

TEST_CASE("parse errors carry line and column") {
  const std::string text = "{\n  \"format\": 1,\n  \"presheaves\": {\"a\": [1,}\n}\n";
  try {
    load_workspace(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 26);
  }
}

TEST_CASE("unresolved names and invalid entries are reported by path") {
  auto message = [](const char* text) {
    try {
      load_workspace(std::string(text));
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"format": 1, "morphisms": {"f": {"identity": "X"}}})") ==
        "morphisms.f: unknown presheaf X");
  CHECK(message(R"({"format": 2})").find("unsupported format") != std::string::npos);
  CHECK(message(R"({"format": 1, "maps": ["g"]})") == "unknown morphism g");
  CHECK(message(R"({"format": 1, "extra": {}})").find("unknown section") != std::string::npos);
  // Not natural: the C2 swap on the free orbit cannot map to a fixed point
  // and back.
  const char* unnatural = R"({"format": 1, "index": "cyclic:2",
    "presheaves": {"free": {"representable": "*"}, "pt": {"builtin": "terminal"},
                   "two": {"discrete": 2}},
    "morphisms": {"f": {"dom": "free", "cod": "two", "at": [["*", [["r0", "0"], ["r1", "1"]]]]}}})";
  CHECK(message(unnatural).rfind("morphisms.f", 0) == 0);
  // A category failing its axioms is rejected unless marked unchecked.
  const char* broken = R"({"format": 1, "categories": {"m": {"objects": ["*"],
    "identities": [["*", "e"]], "morphisms": [["a", "*", "*"]]}}})";
  CHECK(message(broken).rfind("categories.m", 0) == 0);
}

TEST_CASE("explicit category objects and simplicial objects load") {
  // The walking arrow as a category object in sets, written out by hand.
  const char* text = R"({"format": 1,
    "presheaves": {
      "ob": {"at": [["*", ["a", "b"]]]},
      "mor": {"at": [["*", ["1a", "1b", "f"]]]}},
    "morphisms": {
      "s": {"dom": "mor", "cod": "ob", "at": [["*", [["1a", "a"], ["1b", "b"], ["f", "a"]]]]},
      "t": {"dom": "mor", "cod": "ob", "at": [["*", [["1a", "a"], ["1b", "b"], ["f", "b"]]]]},
      "e": {"dom": "ob", "cod": "mor", "at": [["*", [["a", "1a"], ["b", "1b"]]]]}},
    "category_objects": {"arrow": {"c0": "ob", "c1": "mor", "s": "s", "t": "t", "e": "e",
      "m": [["*", [["1a", "1a", "1a"], ["1a", "f", "f"], ["f", "1b", "f"], ["1b", "1b", "1b"]]]]}},
    "simplicial_objects": {"N": {"nerve_of": "arrow"}, "K": {"constant": "ob"}}})";
  const Workspace w = load_workspace(std::string(text));
  CHECK(cmd_check_segal(w, "N").exit_code == 0);
  CHECK(cmd_check_complete(w, "N").exit_code == 0);
  CHECK(cmd_check_complete(w, "arrow").exit_code == 0);
  CHECK(cmd_check_segal(w, "K").exit_code == 0);
  const auto& x = w.simplicial_objects.at("N");
  CHECK(x.level[2].at(0).size() == 4);
  CHECK(x.level[3].at(0).size() == 5);

  // The same nerve spelled out level by level through named maps.
  json spec{{"format", 1}, {"presheaves", json::object()}, {"morphisms", json::object()}};
  const char* levels[] = {"X0", "X1", "X2", "X3"};
  for (std::size_t n = 0; n < 4; ++n) spec["presheaves"][levels[n]] = presheaf_to_json(x.level[n]);
  json faces = json::array(), degs = json::array();
  for (std::size_t n = 1; n <= 3; ++n) {
    json row = json::array();
    for (std::size_t i = 0; i <= n; ++i) {
      const std::string name = "d" + std::to_string(n) + std::to_string(i);
      spec["morphisms"][name] = nat_trans_to_json(x.d(n, i), levels[n], levels[n - 1]);
      row.push_back(name);
    }
    faces.push_back(row);
  }
  for (std::size_t n = 0; n < 3; ++n) {
    json row = json::array();
    for (std::size_t i = 0; i <= n; ++i) {
      const std::string name = "s" + std::to_string(n) + std::to_string(i);
      spec["morphisms"][name] = nat_trans_to_json(x.s(n, i), levels[n], levels[n + 1]);
      row.push_back(name);
    }
    degs.push_back(row);
  }
  spec["simplicial_objects"]["X"] = {{"levels", json::array({"X0", "X1", "X2", "X3"})},
                                     {"faces", faces},
                                     {"degeneracies", degs}};
  const Workspace v = load_workspace(spec);
  CHECK(cmd_check_segal(v, "X").exit_code == 0);
  CHECK(cmd_check_complete(v, "X").report["complete"] == true);

  // Swapping two faces breaks the identities; rejected unless unchecked.
  json swapped = spec;
  swapped["simplicial_objects"]["X"]["faces"][1] = json::array({"d21", "d20", "d22"});
  CHECK_THROWS_AS(load_workspace(swapped), ValidationError);
  swapped["simplicial_objects"]["X"]["check"] = false;
  const CommandResult r = cmd_check_segal(load_workspace(swapped), "X");
  CHECK(r.exit_code == 1);
  CHECK_FALSE(r.report["violations"].empty());
}

TEST_CASE("broken nerve names the violated identity") {
  const Workspace w = bundled("broken_nerve.json");
  const CommandResult r = cmd_check_segal(w, "broken");
  CHECK(r.exit_code == 1);
  CHECK(r.report["simplicial"] == false);
  bool named = false;
  for (const auto& v : r.report["violations"]) named = named || v == "d1 d2 = d1 d1 on X3";
  CHECK(named);
  CHECK(cmd_check_segal(w, "c3").exit_code == 0);
  CHECK(cmd_check_complete(w, "broken").exit_code == 1);
}

TEST_CASE("nerves corpus: complete exactly for gaunt categories") {
  const Workspace w = bundled("nerves.json");
  const std::map<std::string, bool> gaunt{
      {"empty", true},  {"terminal", true},     {"discrete2", true},  {"arrow", true},
      {"chain3", true}, {"C2", false},          {"C3", false},        {"S3", false},
      {"walking_iso", false}, {"idempotent", true}, {"span", true}, {"iso_with_tail", false}};
  REQUIRE(w.simplicial_objects.size() == gaunt.size());
  for (const auto& [name, g] : gaunt) {
    INFO(name);
    CHECK(cmd_check_segal(w, name).exit_code == 0);
    CHECK(cmd_check_complete(w, name).report["complete"] == g);
  }
}

TEST_CASE("univalence commands on bundled workspaces") {
  const Workspace fin = bundled("finset.json");
  const CommandResult all = cmd_check_univalent(fin, "");
  CHECK(all.exit_code == 1);
  std::map<std::string, bool> verdict;
  for (const auto& m : all.report["maps"]) {
    verdict[m["map"]] = m["univalent"];
    CHECK(m["oracle_agrees"] == true);
    CHECK(m["fiber_oracle"] == m["univalent"]);
  }
  CHECK(verdict == std::map<std::string, bool>{{"empty_to_empty", true},
                                               {"empty_to_one", true},
                                               {"one_to_one", true},
                                               {"one_to_two", true},
                                               {"two_to_one", false},
                                               {"two_to_two", false},
                                               {"three_to_two", false},
                                               {"one_to_three", false},
                                               {"truth", true}});
  CHECK(cmd_check_univalent(fin, "one_to_two").exit_code == 0);

  const CommandResult en = cmd_enumerate_univalent(fin, 2, 2);
  CHECK(en.exit_code == 0);
  CHECK(en.report["univalent_count"] == 4);
  CHECK(en.report["non_mono_univalent"] == 0);

  // Frozen: the S3 natural action over the point is not univalent here
  // (six automorphisms against one object), see the S3 case in the
  // univalence tests.
  const CommandResult s3 = cmd_check_univalent(bundled("s3_sets.json"), "S_to_point");
  CHECK(s3.exit_code == 1);
  CHECK(s3.report["maps"][0]["univalent"] == false);
  CHECK(s3.report["maps"][0]["mono"] == false);
  CHECK(s3.report["maps"][0]["hoequiv_size"] == 6);

  for (const char* file : {"c2_sets.json", "sierpinski.json", "finset.json"}) {
    INFO(file);
    const Workspace w = bundled(file);
    const CommandResult t = cmd_check_univalent(w, "truth");
    CHECK(t.exit_code == 0);
    CHECK(cmd_classify(w, "truth").exit_code == 0);
    const CommandResult n = cmd_nerve(w, "truth");
    CHECK(n.report["category_object"] == true);
  }
}

TEST_CASE("poset command over FinSet") {
  const CommandResult r = cmd_poset(bundled("finset.json"), 3, 3);
  CHECK(r.exit_code == 0);
  CHECK(r.report["ordered_pairs"] == 16);
  CHECK(r.report["max_squares"] == 1);
}

TEST_CASE("reports are identical across runs and worker counts") {
  const Workspace w = bundled("c2_sets.json");
  set_parallelism(1);
  const std::string one = dump_json(cmd_enumerate_univalent(w, 2, 2).report);
  const std::string again = dump_json(cmd_enumerate_univalent(w, 2, 2).report);
  set_parallelism(3);
  const std::string three = dump_json(cmd_enumerate_univalent(w, 2, 2).report);
  set_parallelism(1);
  CHECK(one == again);
  CHECK(one == three);
  CHECK(cmd_check_univalent(w, "").text == cmd_check_univalent(w, "").text);
  CHECK_FALSE(cmd_validate(w).report.contains("seconds"));
  CHECK(cmd_validate(w, {true}).report.contains("seconds"));
}

TEST_CASE("the binary: exit codes and byte-identical output") {
  std::string out;
  for (const auto& [name, _] : bundled_corpus()) {
    INFO(name);
    CHECK(run("-w " + (kCorpus / name).string() + " validate") == 0);
  }
  const std::string fin = "-w " + (kCorpus / "finset.json").string();
  std::string a, b;
  CHECK(run("--json " + fin + " enumerate-univalent 2", &a) == 0);
  CHECK(json::parse(a)["univalent_count"] == 4);
  CHECK(run("--json --parallel 4 " + fin + " enumerate-univalent 2", &b) == 0);
  CHECK(a == b);
  CHECK(run(fin + " check-univalent two_to_one") == 1);
  CHECK(run(fin + " check-univalent missing", &out) == 2);
  CHECK(out.find("unknown morphism missing") != std::string::npos);
  CHECK(run("--bound 10 -w " + (kCorpus / "s3_sets.json").string() + " check-univalent", &out) == 2);
  CHECK(out.find("exceeds bound 10") != std::string::npos);
  CHECK(run("-w " + (kCorpus / "broken_nerve.json").string() + " check-segal broken", &out) == 1);
  CHECK(out.find("d1 d2 = d1 d1 on X3") != std::string::npos);
  CHECK(run("corpus --check " + kCorpus.string()) == 0);
  CHECK(run("no-such-command") == 2);
}
