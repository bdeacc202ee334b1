#include "pbx/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "pbx/cone_lab.hpp"
#include "pbx/document.hpp"
#include "pbx/error.hpp"
#include "pbx/extremes.hpp"
#include "pbx/oracle.hpp"
#include "pbx/parallel.hpp"

namespace pbx {

namespace {

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::IOError: return kExitParse;
    case ErrorCode::DomainTooLarge: return kExitTooLarge;
    default: return kExitInvalid;
  }
}

std::size_t oracle_limit() {
  if (const char* env = std::getenv("PBOX_ORACLE_LIMIT")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::ParseError, std::string("PBOX_ORACLE_LIMIT must be a positive integer, got '") + env + "'");
  }
  return oracle::kDefaultLimit;
}

std::string tuple_text(const RationalVector& v) { return "(" + join(v) + ")"; }

std::string decimal_text(const RationalVector& v, int digits) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].decimal(digits);
  return s + ")";
}

void write_output(const std::string& target, const std::string& text, std::ostream& out) {
  if (target == "-") {
    out << text;
    return;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file || !(file << text)) throw Error(ErrorCode::IOError, "cannot write " + target);
}

struct Options {
  std::string file;
  std::string method = "structural";
  std::string format = "table";
  int decimal = -1;
  int jobs = 0;
  std::string dot;
  std::string json;
  std::string gamble;
  std::string at_distribution;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t n = 0;
};

int cmd_validate(const Options& o, std::ostream& out) {
  const PBoxDocument doc = load_document(o.file);
  const PBoxCheck check = doc.check();
  if (check.ok()) {
    out << "valid p-box on " << check.pbox->size() << " points";
    if (check.pbox->is_precise()) out << " (precise)";
    out << "\n";
    return kExitOk;
  }
  out << "invalid p-box: " << check.violations.size() << " violation(s)\n";
  for (const auto& v : check.violations) out << "  " << v.describe() << "\n";
  return kExitInvalid;
}

int cmd_extremes(const Options& o, std::ostream& out) {
  const PBox pbox = load_document(o.file).pbox();
  const auto extremes = enumerate_extremes(pbox, o.method == "bfs" ? Method::Bfs : Method::Structural);
  if (o.format == "json") {
    out << extremes_json(pbox, extremes);
    return kExitOk;
  }
  out << extremes.size() << " extreme point(s) on " << pbox.size() << " points\n";
  for (std::size_t i = 0; i < extremes.size(); ++i) {
    const auto& e = extremes[i];
    const RationalVector p = to_mass(e.cdf).masses();
    out << "#" << (i + 1) << " F = " << tuple_text(e.cdf.values()) << "\n";
    out << "   p = " << tuple_text(p) << "\n";
    if (o.decimal >= 0) {
      out << "   F ~ " << decimal_text(e.cdf.values(), o.decimal) << " (approximate)\n";
      out << "   p ~ " << decimal_text(p, o.decimal) << " (approximate)\n";
    }
    out << "   witnesses (" << e.witnesses.size() << "):";
    for (const auto& g : e.witnesses) out << " " << g.str();
    out << "\n";
  }
  return kExitOk;
}

int cmd_fan(const Options& o, std::ostream& out) {
  const PBox pbox = load_document(o.file).pbox();
  const FanGraph fan = build_fan(pbox);
  if (!o.json.empty()) write_output(o.json, fan_json(fan), out);
  if (!o.dot.empty() || o.json.empty()) write_output(o.dot.empty() ? "-" : o.dot, fan_dot(fan), out);
  return kExitOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const PBox pbox = load_document(o.file).pbox();
  const Gamble h(pbox.domain(), parse_rational_list(o.gamble));
  const auto extremes = enumerate_extremes(pbox, pbox.size() <= kMaxStructuralDomain ? Method::Structural : Method::Bfs);
  const Bound lo = lower_expectation(h, extremes);
  const Bound up = upper_expectation(h, extremes);
  out << "lower expectation: " << lo.value.str();
  if (o.decimal >= 0) out << " (~" << lo.value.decimal(o.decimal) << ")";
  out << "\n  attained at F = " << tuple_text(lo.point.cdf.values()) << "\n";
  out << "upper expectation: " << up.value.str();
  if (o.decimal >= 0) out << " (~" << up.value.decimal(o.decimal) << ")";
  out << "\n  attained at F = " << tuple_text(up.point.cdf.values()) << "\n";
  if (!o.at_distribution.empty()) {
    const MassFunction p(pbox.domain(), parse_rational_list(o.at_distribution));
    out << "expectation at p = " << tuple_text(p.masses()) << ": " << expectation(p, h).str() << "\n";
  }
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const PBox pbox = load_document(o.file).pbox();
  const auto report = oracle::cross_check(pbox, o.trials, o.seed, oracle_limit());
  out << "cross-check on " << pbox.size() << " points, " << o.trials << " trials, seed " << o.seed << "\n";
  out << report.describe();
  return report.ok() ? kExitOk : kExitInvalid;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const auto mescs = enumerate_mescs(o.n);
  out << mescs.size() << " structural MESC(s) on " << o.n << " points\n";
  for (const auto& g : mescs) out << g.str() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extreme points, normal fans and expectation bounds of p-boxes"};
  app.name("pbox");
  app.require_subcommand(1);
  Options o;

  const auto add_jobs = [&](CLI::App* sub) {
    sub->add_option("--jobs,-j", o.jobs, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  };
  const auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "p-box JSON document")->required();
  };

  auto* validate = app.add_subcommand("validate", "check a p-box document");
  add_file(validate);

  auto* extremes = app.add_subcommand("extremes", "list all extreme points");
  add_file(extremes);
  extremes->add_option("--method", o.method, "structural or bfs")->check(CLI::IsMember({"structural", "bfs"}));
  extremes->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  extremes->add_option("--decimal", o.decimal, "also print approximations with this many digits")
      ->check(CLI::Range(0, 60));
  add_jobs(extremes);

  auto* fan = app.add_subcommand("fan", "export the MESC adjacency graph");
  add_file(fan);
  fan->add_option("--dot", o.dot, "write Graphviz output here ('-' for stdout)");
  fan->add_option("--json", o.json, "write JSON output here ('-' for stdout)");
  add_jobs(fan);

  auto* bounds = app.add_subcommand("bounds", "lower and upper expectation of a gamble");
  add_file(bounds);
  bounds->add_option("--gamble", o.gamble, "comma separated values")->required();
  bounds->add_option("--at-distribution", o.at_distribution, "also evaluate at this mass vector");
  bounds->add_option("--decimal", o.decimal, "also print approximations with this many digits")
      ->check(CLI::Range(0, 60));
  add_jobs(bounds);

  auto* check = app.add_subcommand("check", "cross-check against the brute-force oracle");
  add_file(check);
  check->add_option("--trials", o.trials, "random gambles to test");
  check->add_option("--seed", o.seed, "random seed");
  add_jobs(check);

  auto* enumerate = app.add_subcommand("enumerate-mescs", "list structural MESCs for a domain size");
  enumerate->add_option("--n", o.n, "domain size")->required()->check(CLI::PositiveNumber);
  add_jobs(enumerate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    set_jobs(o.jobs);
    if (validate->parsed()) return cmd_validate(o, out);
    if (extremes->parsed()) return cmd_extremes(o, out);
    if (fan->parsed()) return cmd_fan(o, out);
    if (bounds->parsed()) return cmd_bounds(o, out);
    if (check->parsed()) return cmd_check(o, out);
    return cmd_enumerate(o, out);
  } catch (const Error& e) {
    err << "pbox: " << e.what() << "\n";
    return exit_for(e.code());
  }
}

}  // namespace pbx
