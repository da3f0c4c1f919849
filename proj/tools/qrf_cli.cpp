#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qrf/error.hpp"
#include "qrf/framechange.hpp"
#include "qrf/io.hpp"
#include "qrf/opequiv.hpp"
#include "qrf/relativize.hpp"
#include "qrf/verify.hpp"

namespace {

using namespace qrf;

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

int cmd_verify(const SuiteConfig& base, const std::string& group_source, const std::string& out,
               const std::string& format) {
  SuiteConfig config = base;
  config.group = load_group(group_source);
  config.group_name = group_source;
  const Report report = run_verify(config);
  write_output(format == "csv" ? report_to_csv(report) : report_to_json(report).dump(2) + "\n", out);
  for (const auto& c : report.checks) {
    if (!c.pass) {
      std::cerr << "FAIL " << c.name << " max_deviation=" << format_number(c.max_deviation)
                << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
    }
  }
  std::cerr << report.passed() << " passed, " << report.failed() << " failed, " << report.skipped()
            << " skipped\n";
  return report.all_pass() ? 0 : kExitFail;
}

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

FiniteGroup group_of(const Json& j) {
  const Json& g = need(j, "group");
  return g.is_string() ? load_group(g.get<std::string>()) : group_from_json(g);
}

UnitaryRep system_of(const FiniteGroup& group, const Json& j) {
  return j.contains("system") ? rep_from_json(group, j["system"]) : trivial_rep(group, 1);
}

// {group, frame, system, operator}; with --predual the operator is a state on H_R ⊗ H_S.
Json cmd_yen(const Json& in, bool predual) {
  const FiniteGroup group = group_of(in);
  const Frame frame = frame_from_json(group, need(in, "frame"));
  const UnitaryRep sys = system_of(group, in);
  const Operator a = operator_from_json(need(in, "operator"));
  const YenMap map(frame, sys);
  Json out;
  if (predual) {
    out["result"] = operator_to_json(map.predual(a));
    out["context"] = context_report(invariant_subspace(sys));
  } else {
    out["result"] = operator_to_json(map.apply(a));
    out["context"] =
        context_report(intersect(framed_subspace(frame, sys.dim()), invariant_subspace(tensor(frame.rep(), sys))));
  }
  return out;
}

// {scenario, state}; `from` and `to` are 1-based frame indices.
Json cmd_frame_change(const Json& in, int from, int to) {
  const MultiFrameScenario sc = scenario_from_json(need(in, "scenario"));
  if (from < 1 || from > sc.frame_count() || to < 1 || to > sc.frame_count() || from == to) {
    throw ArgumentError("frame indices must be distinct and between 1 and " +
                        std::to_string(sc.frame_count()));
  }
  const Operator rel = operator_from_json(need(in, "state"));
  const Operator result = frame_change_representative(sc, from - 1, to - 1, rel);
  Json out;
  out["result"] = operator_to_json(result);
  out["context"] = context_report(*relative_context(sc, to - 1, {from - 1}));
  return out;
}

// {group, rep, operator}
Json cmd_twirl(const Json& in, bool predual) {
  const FiniteGroup group = group_of(in);
  const UnitaryRep rep = rep_from_json(group, need(in, "rep"));
  const Operator a = operator_from_json(need(in, "operator"));
  Json out;
  out["result"] = operator_to_json(predual ? g_twirl_predual(rep, a) : g_twirl(rep, a));
  out["context"] = context_report(invariant_subspace(rep));
  return out;
}

// {group, frame1, frame2, system, relative, omega}
Json cmd_reconstruct(const Json& in) {
  const FiniteGroup group = group_of(in);
  const Frame f1 = frame_from_json(group, need(in, "frame1"));
  const Frame f2 = frame_from_json(group, need(in, "frame2"));
  const UnitaryRep sys = system_of(group, in);
  const Operator rel = operator_from_json(need(in, "relative"));
  const Operator omega = operator_from_json(need(in, "omega"));
  Json out;
  out["result"] = operator_to_json(triangular_reconstruction(f1, f2, sys, rel, omega));
  out["context"] = context_report(invariant_subspace(sys));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-group quantum reference frame calculus"};
  app.require_subcommand(1);

  SuiteConfig config;
  std::string group_source;
  std::string out_path;
  std::string format = "json";
  auto* verify = app.add_subcommand("verify", "Run the verification suites on a group");
  verify->add_option("--group", group_source, "builtin:NAME, a builtin name, or a group JSON file")->required();
  verify->add_option("--suite", config.suites, "Suites to run (default: all)")->delimiter(',');
  verify->add_option("--tol", config.tol, "Pass tolerance on the maximal deviation");
  verify->add_option("--seed", config.seed, "Base seed");
  verify->add_option("--trials", config.trials, "Random trials per check");
  verify->add_option("--threads", config.threads, "Worker count (default: QRF_THREADS or all cores)");
  verify->add_option("--out", out_path, "Report path (default: stdout)");
  verify->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  std::string input;
  bool predual = false;
  int from = 1;
  int to = 2;
  const auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "Operand JSON file")->required();
    cmd->add_option("--out", out_path, "Output path (default: stdout)");
  };
  auto* yen = app.add_subcommand("yen", "Relativize a system operator, or map a state with --predual");
  add_io(yen);
  yen->add_flag("--predual", predual, "Apply the relative-state map instead");
  auto* change = app.add_subcommand("frame-change", "Change an R_from-relative state to R_to");
  add_io(change);
  change->add_option("--from", from, "Source frame, 1-based");
  change->add_option("--to", to, "Target frame, 1-based");
  auto* twirl = app.add_subcommand("twirl", "Group-average an operator, or a state with --predual");
  add_io(twirl);
  twirl->add_flag("--predual", predual, "Twirl as a state");
  auto* reconstruct = app.add_subcommand("reconstruct", "Triangular reconstruction of a relative state");
  add_io(reconstruct);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (verify->parsed()) return cmd_verify(config, group_source, out_path, format);
    const Json in = read_json_file(input);
    Json result;
    if (yen->parsed()) result = cmd_yen(in, predual);
    if (change->parsed()) result = cmd_frame_change(in, from, to);
    if (twirl->parsed()) result = cmd_twirl(in, predual);
    if (reconstruct->parsed()) result = cmd_reconstruct(in);
    write_output(result.dump(2) + "\n", out_path);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "qrf " << name << ": " << e.what() << "\n";
    return kExitInput;
  }
}
