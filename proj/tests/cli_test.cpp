#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "support/corpus.hpp"
#include "thinging/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_tm(std::vector<std::string> args, const std::string& input = {}) {
  std::ostringstream out;
  std::ostringstream err;
  std::istringstream in(input);
  const int code = thinging::cli::run(args, out, err, in);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(THINGING_TEST_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "thinging-cli-test";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("validate") {
  Result r = run_tm({"validate", corpus::path("atm_full.tm")});
  CHECK(r.code == 0);
  CHECK(r.err.empty());

  r = run_tm({"validate", data("broken.tm")});
  CHECK(r.code == 1);
  const auto reported = lines(r.err);
  REQUIRE(reported.size() == 1);
  CHECK(reported[0].starts_with(data("broken.tm") + ":3:"));
  CHECK(reported[0].find("error[FLOW_ILLEGAL]") != std::string::npos);
}

TEST_CASE("warnings fail only when denied") {
  const std::string text = "thimac A { stage create; stage process; stage release; }\n"
                           "flow A.create -> A.process;\n";
  Result r = run_tm({"validate", "-"}, text);
  CHECK(r.code == 0);
  CHECK(r.err.find("warning[STAGE_UNREACHABLE]") != std::string::npos);
  r = run_tm({"validate", "--deny-warnings", "-"}, text);
  CHECK(r.code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run_tm({}).code == 2);
  CHECK(run_tm({"frobnicate"}).code == 2);
  CHECK(run_tm({"validate", "--bogus", corpus::path("mud.tm")}).code == 2);
  CHECK(run_tm({"render", corpus::path("mud.tm"), "--mode", "sideways"}).code == 2);
  CHECK(run_tm({"render", corpus::path("mud.tm"), "--mode", "static", "--highlight", "Tonight"}).code ==
        2);
  CHECK(run_tm({"validate", corpus::path("no_such_file.tm")}).code == 2);
  CHECK(run_tm({"validate", "-", "-"}).code == 2);
  const Result help = run_tm({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("standard input behaves like a file") {
  const std::string text = corpus::read(corpus::path("davidson.tm"));
  for (const std::vector<std::string>& cmd :
       {std::vector<std::string>{"parse", "--json"}, {"parse"}, {"normalize"}, {"simulate"},
        {"render", "--mode", "events"}, {"coverage"}}) {
    std::vector<std::string> from_file = cmd;
    from_file.push_back(corpus::path("davidson.tm"));
    std::vector<std::string> from_stdin = cmd;
    from_stdin.push_back("-");
    const Result a = run_tm(from_file);
    const Result b = run_tm(from_stdin, text);
    INFO(cmd.front());
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("parse --json") {
  const Result r = run_tm({"parse", "--json", corpus::path("atm_full.tm"), corpus::path("atm_events.tm")});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["events"].size() == 15);
  CHECK(run_tm({"parse", "-"}, "thimac {").code == 1);
}

TEST_CASE("normalize writes canonical text") {
  const fs::path out = scratch("normalized.tm");
  const Result r = run_tm({"normalize", corpus::path("atm_simplified.tm"), "-o", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const Result again = run_tm({"normalize", out.string()});
  CHECK(again.code == 0);
  const thinging::ParseResult written = thinging::parse(corpus::read(out.string()));
  const thinging::ParseResult full = corpus::load({"atm_full.tm"});
  REQUIRE(written.model);
  CHECK(thinging::model_equal(*written.model, *full.model));
  // Normalizing canonical text changes nothing.
  CHECK(again.out == corpus::read(out.string()));
}

TEST_CASE("simulate ships with a trace file") {
  const fs::path out = scratch("ships.json");
  const Result r = run_tm({"simulate", corpus::path("ships.tm"), "--trace", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.starts_with("4000 event instances"));
  const auto doc = nlohmann::json::parse(corpus::read(out.string()));
  CHECK(doc["eventOrder"].size() == 4000);
}

TEST_CASE("simulation errors") {
  CHECK(run_tm({"simulate", "--max-steps", "2", corpus::path("ships.tm")}).code == 3);
  CHECK(run_tm({"simulate", data("broken.tm")}).code == 1);
  const Result r = run_tm({"simulate", corpus::path("caesar_fact.tm")});
  CHECK(r.code == 1);
  CHECK(r.err.find("no chronology") != std::string::npos);
}

TEST_CASE("render modes") {
  const auto atm = std::vector<std::string>{corpus::path("atm_full.tm"), corpus::path("atm_events.tm")};
  for (const char* mode : {"static", "events", "chronology"}) {
    std::vector<std::string> args{"render", "--mode", mode};
    args.insert(args.end(), atm.begin(), atm.end());
    const Result r = run_tm(args);
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("digraph tm {"));
  }
  const Result bad = run_tm({"render", "--mode", "events", "--highlight", "E99", atm[0], atm[1]});
  CHECK(bad.code == 2);
}

TEST_CASE("coverage") {
  const Result r = run_tm({"coverage", corpus::path("davidson.tm")});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["uncovered"] == nlohmann::json::array({"Downstairs.me.process~>Light.create"}));
  CHECK(doc["events"].size() == 8);
  CHECK(doc["neverFired"].empty());
}

TEST_CASE("color") {
  setenv("TM_COLOR", "always", 1);
  const Result r = run_tm({"validate", data("broken.tm")});
  unsetenv("TM_COLOR");
  CHECK(r.err.find("\033[1;31merror\033[0m[FLOW_ILLEGAL]") != std::string::npos);
  CHECK(run_tm({"validate", data("broken.tm")}).err.find('\033') == std::string::npos);
}
