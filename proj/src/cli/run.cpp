// Copyright 2026 The thinging Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinging/cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "thinging/pipeline.hpp"
#include "thinging/render.hpp"
#include "thinging/sim.hpp"

namespace thinging::cli {

namespace {

struct InputError {
  std::string message;
};

bool use_color(const std::ostream& err) {
  const char* env = std::getenv("TM_COLOR");
  const std::string mode = env ? env : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return &err == &std::cerr && ::isatty(STDERR_FILENO) != 0;
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, std::ostream& err) {
  const bool color = use_color(err);
  for (const Diagnostic& d : diagnostics) {
    std::string line = format_diagnostic(d);
    if (color) {
      const std::string word(to_string(d.severity));
      const auto at = line.find(word + "[");
      if (at != std::string::npos) {
        const char* code = d.severity == Severity::Error ? "\033[1;31m" : "\033[1;33m";
        line = line.substr(0, at) + code + word + "\033[0m" + line.substr(at + word.size());
      }
    }
    err << line << '\n';
  }
}

std::vector<SourceFile> read_inputs(const std::vector<std::string>& paths, std::istream& in) {
  std::vector<SourceFile> files;
  bool stdin_used = false;
  for (const std::string& path : paths) {
    if (path == "-") {
      if (stdin_used) throw InputError{"standard input named more than once"};
      stdin_used = true;
      files.push_back({"<stdin>", std::string(std::istreambuf_iterator<char>(in), {})});
      continue;
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw InputError{"cannot read '" + path + "'"};
    files.push_back({path, std::string(std::istreambuf_iterator<char>(file), {})});
  }
  return files;
}

// Writes to `path`, or to `out` when no path was given.
bool emit(const std::string& text, const std::string& path, std::ostream& out,
          std::ostream& err) {
  if (path.empty() || path == "-") {
    out << text;
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) {
    err << "tm: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

struct Options {
  std::vector<std::string> files;
  bool json = false;
  bool deny_warnings = false;
  bool lint_chronology = false;
  std::string output;
  std::string trace;
  std::uint64_t max_steps = SimConfig{}.max_steps_per_event;
  std::string mode;
  bool simplified = false;
  std::string highlight;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err, std::istream& in)
      : o_(o), out_(out), err_(err), in_(in) {}

  int parse() {
    ParseResult parsed = parse_files(read_inputs(o_.files, in_));
    print_diagnostics(parsed.diagnostics, err_);
    if (!parsed.ok()) return kInvalidInput;
    const std::string text = o_.json ? to_json(parsed, 2) + "\n" : format(parsed);
    return emit(text, o_.output, out_, err_) ? kSuccess : kInvalidInput;
  }

  int validate() {
    const Compilation c = build();
    print_diagnostics(c.diagnostics, err_);
    if (!c.ok()) return kInvalidInput;
    if (o_.deny_warnings && !c.diagnostics.empty()) return kInvalidInput;
    return kSuccess;
  }

  int normalize() {
    const Compilation c = build();
    print_diagnostics(c.diagnostics, err_);
    if (!c.ok()) return kInvalidInput;
    return emit(format(*c.program), o_.output, out_, err_) ? kSuccess : kInvalidInput;
  }

  int simulate() {
    const Compilation c = build();
    print_diagnostics(c.diagnostics, err_);
    if (!c.ok()) return kInvalidInput;
    const ParseResult& p = *c.program;
    if (!p.chronology) {
      err_ << "tm: no chronology to simulate\n";
      return kInvalidInput;
    }
    SimConfig config;
    config.max_steps_per_event = o_.max_steps;
    Trace trace;
    try {
      trace = thinging::simulate(*p.model, p.events, *p.chronology, config);
    } catch (const SimError& e) {
      err_ << "tm: simulation failed: " << e.what() << '\n';
      return kSimulationFailed;
    }
    for (const std::string& w : trace.warnings) err_ << "tm: note: " << w << '\n';
    const std::string json = trace_to_json(*p.model, trace, 2) + "\n";
    if (o_.trace.empty()) return emit(json, "", out_, err_) ? kSuccess : kSimulationFailed;
    if (!emit(json, o_.trace, out_, err_)) return kSimulationFailed;
    out_ << trace.event_order.size() << " event instances, " << trace.firings.size()
         << " firings, " << trace.final_tokens.size() << " tokens\n";
    return kSuccess;
  }

  int render() {
    const Compilation c = build();
    print_diagnostics(c.diagnostics, err_);
    if (!c.ok()) return kInvalidInput;
    RenderOptions options;
    options.mode = o_.mode == "events"       ? RenderMode::EventOverlay
                   : o_.mode == "chronology" ? RenderMode::Chronology
                                             : RenderMode::Static;
    options.simplified = o_.simplified;
    if (!o_.highlight.empty()) options.highlight = o_.highlight;
    const ParseResult& p = *c.program;
    std::string dot;
    try {
      dot = render_dot(*p.model, p.events, p.chronology, options);
    } catch (const RenderError& e) {
      err_ << "tm: " << e.what() << '\n';
      return kUsage;
    }
    return emit(dot, o_.output, out_, err_) ? kSuccess : kInvalidInput;
  }

  int coverage() {
    const Compilation c = build();
    print_diagnostics(c.diagnostics, err_);
    if (!c.ok()) return kInvalidInput;
    const ParseResult& p = *c.program;
    const Model& model = *p.model;

    using Json = nlohmann::ordered_json;
    Json doc;
    doc["uncovered"] = Json::array();
    for (ElementId id : uncovered_elements(model, p.events)) {
      doc["uncovered"].push_back(model.qualified_name(id));
    }
    if (p.chronology) {
      SimConfig config;
      config.max_steps_per_event = o_.max_steps;
      CoverageReport report;
      try {
        report = thinging::coverage(model, thinging::simulate(model, p.events, *p.chronology, config),
                                    p.events);
      } catch (const SimError& e) {
        err_ << "tm: simulation failed: " << e.what() << '\n';
        return kSimulationFailed;
      }
      doc["events"] = Json::array();
      for (const EventCoverage& e : report.events) {
        Json names = Json::array();
        for (ElementId id : e.never_fired) names.push_back(model.qualified_name(id));
        doc["events"].push_back(
            Json{{"event", e.event}, {"fraction", e.fraction}, {"neverFired", names}});
      }
      doc["neverFired"] = Json::array();
      for (ElementId id : report.never_fired) doc["neverFired"].push_back(model.qualified_name(id));
    }
    return emit(doc.dump(2) + "\n", o_.output, out_, err_) ? kSuccess : kInvalidInput;
  }

 private:
  Compilation build() {
    ValidateOptions options;
    options.lint_chronology = o_.lint_chronology;
    return compile(read_inputs(o_.files, in_), options);
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  std::istream& in_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in) {
  CLI::App app{"Thinging machine modeling toolkit", "tm"};
  app.require_subcommand(1);
  Options o;

  auto files = [&](CLI::App* sub) {
    sub->add_option("files", o.files, "Model files ('-' for standard input)")->required();
  };
  auto lint = [&](CLI::App* sub) {
    sub->add_flag("--lint-chronology", o.lint_chronology,
                  "Warn about chronology edges between unrelated events");
  };

  CLI::App* parse = app.add_subcommand("parse", "Parse and print the model");
  files(parse);
  parse->add_flag("--json", o.json, "Print the model as JSON");
  parse->add_option("-o,--output", o.output, "Output file");

  CLI::App* validate = app.add_subcommand("validate", "Report diagnostics");
  files(validate);
  lint(validate);
  validate->add_flag("--deny-warnings", o.deny_warnings, "Fail on warnings");

  CLI::App* normalize = app.add_subcommand("normalize", "Print the canonical full model");
  files(normalize);
  normalize->add_option("-o,--output", o.output, "Output file");

  CLI::App* simulate = app.add_subcommand("simulate", "Run the chronology");
  files(simulate);
  simulate->add_option("--trace", o.trace, "Write the trace JSON here");
  simulate->add_option("--max-steps", o.max_steps, "Firing budget per event instance")
      ->check(CLI::PositiveNumber);

  CLI::App* render = app.add_subcommand("render", "Print a DOT diagram");
  files(render);
  render->add_option("--mode", o.mode, "Diagram kind")
      ->required()
      ->check(CLI::IsMember({"static", "events", "chronology"}));
  render->add_flag("--simplified", o.simplified, "Hide stages added by normalization");
  render->add_option("--highlight", o.highlight, "Event to highlight (events mode)");
  render->add_option("-o,--output", o.output, "Output file");

  CLI::App* coverage = app.add_subcommand("coverage", "Report region and firing coverage");
  files(coverage);
  coverage->add_option("--max-steps", o.max_steps, "Firing budget per event instance")
      ->check(CLI::PositiveNumber);
  coverage->add_option("-o,--output", o.output, "Output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    std::ostringstream problem;
    app.exit(e, help, problem);
    out << help.str();
    err << problem.str();
    return e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success) ? kSuccess : kUsage;
  }
  if (!o.highlight.empty() && o.mode != "events") {
    err << "tm: --highlight requires --mode events\n";
    return kUsage;
  }

  Runner runner(o, out, err, in);
  try {
    if (parse->parsed()) return runner.parse();
    if (validate->parsed()) return runner.validate();
    if (normalize->parsed()) return runner.normalize();
    if (simulate->parsed()) return runner.simulate();
    if (render->parsed()) return runner.render();
    if (coverage->parsed()) return runner.coverage();
  } catch (const InputError& e) {
    err << "tm: " << e.message << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace thinging::cli
