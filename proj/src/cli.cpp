#include "xtrid/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "xtrid/awrel.hpp"
#include "xtrid/explorer.hpp"
#include "xtrid/serialize.hpp"
#include "xtrid/xspace.hpp"

namespace xtrid::cli {

namespace {

using io::Json;

constexpr const char* kFieldEnv = "XTRID_FIELD";

struct Options {
  std::string input;   // path, "-" for stdin
  std::string inline_json;
  std::string output;  // path, empty for stdout
  std::string field;
  std::uint64_t seed = 0;

  // construct
  std::string family;
  std::size_t d = 0;
  std::string from;
  std::string affine;

  // upsilon
  bool star = false;

  // census / report
  std::string job;
  std::string records;
  unsigned workers = 1;
  bool resume = false;
  std::uint64_t max_chunks = 0;
  bool table = false;
};

std::string read_all(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  return read_all(in);
}

Json read_input(const Options& opt, std::istream& in) {
  if (!opt.inline_json.empty()) return io::parse_json(opt.inline_json);
  if (opt.input.empty() || opt.input == "-") return io::parse_json(read_all(in));
  return io::parse_json(read_file(opt.input));
}

void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.output, std::ios::trunc);
  file << text;
  if (!file) throw Error("cannot write " + opt.output);
}

void emit_json(const Options& opt, std::ostream& out, const Json& j) {
  emit(opt, out, io::canonical_dump(j) + "\n");
}

std::optional<FieldSpec> field_override(const Options& opt) {
  if (opt.field.empty()) return std::nullopt;
  return FieldSpec::parse(opt.field);
}

// Moves a rational candidate into another field.
LeonardCandidate reinterpret(const LeonardCandidate& c, FieldSpec spec) {
  if (c.spec() == spec) return c;
  if (!c.spec().is_rational()) {
    throw InvalidArgument("only rational input can be moved to " + spec.name());
  }
  const auto move_matrix = [&](const Matrix& m) {
    Matrix out(spec, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = embed(spec, m(i, j).rational());
    }
    return out;
  };
  LeonardCandidate out;
  out.d = c.d;
  out.a_mat = move_matrix(c.a_mat);
  out.astar_mat = move_matrix(c.astar_mat);
  for (const auto& t : c.thetas) out.thetas.push_back(embed(spec, t.rational()));
  for (const auto& t : c.theta_stars) out.theta_stars.push_back(embed(spec, t.rational()));
  return out;
}

LeonardSystem load_system(const Options& opt, std::istream& in) {
  const Json j = read_input(opt, in);
  if (auto spec = field_override(opt)) {
    return validate(reinterpret(io::candidate_from_json(j), *spec));
  }
  return io::system_from_json(j);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, sep)) parts.push_back(part);
  return parts;
}

int cmd_construct(const Options& opt, std::istream& in, std::ostream& out) {
  LeonardCandidate c;
  if (!opt.from.empty()) {
    c = io::candidate_from_json(io::parse_json(read_file(opt.from)));
    if (auto spec = field_override(opt)) c = reinterpret(c, *spec);
  } else if (opt.family == "krawtchouk") {
    std::string field = opt.field;
    if (field.empty()) {
      const char* env = std::getenv(kFieldEnv);
      field = env != nullptr ? env : "Q";
    }
    c = krawtchouk_family(opt.d, FieldSpec::parse(field));
  } else if (!opt.family.empty()) {
    throw InvalidArgument("unknown family \"" + opt.family + "\"");
  } else {
    c = io::candidate_from_json(read_input(opt, in));
  }
  if (!opt.affine.empty()) {
    const auto parts = split(opt.affine, ',');
    if (parts.size() != 4) throw InvalidArgument("--affine expects u,v,us,vs");
    const auto spec = c.spec();
    c = affine_transform(c, Scalar::parse(spec, parts[0]), Scalar::parse(spec, parts[1]),
                         Scalar::parse(spec, parts[2]), Scalar::parse(spec, parts[3]));
  }
  emit_json(opt, out, io::to_json(c));
  return kOk;
}

int cmd_validate(const Options& opt, std::istream& in, std::ostream& out) {
  emit_json(opt, out, io::to_json(load_system(opt, in)));
  return kOk;
}

int cmd_xspace(const Options& opt, std::istream& in, std::ostream& out) {
  const auto ls = load_system(opt, in);
  const auto xb = compute_x(ls);
  emit_json(opt, out, io::to_json(xb, verify_main_theorem(xb)));
  return kOk;
}

int cmd_awparams(const Options& opt, std::istream& in, std::ostream& out) {
  const auto ls = load_system(opt, in);
  emit_json(opt, out, io::to_json(aw_params(ls)));
  return kOk;
}

int cmd_upsilon(const Options& opt, std::istream& in, std::ostream& out) {
  const auto ls = load_system(opt, in);
  const auto params = aw_params(ls);
  const auto which = opt.star ? UpsilonKind::UpsilonStar : UpsilonKind::Upsilon;
  emit_json(opt, out, io::to_json(upsilon_report(ls, params, which)));
  return kOk;
}

int cmd_census(const Options& opt, std::ostream& out, std::ostream& err, bool seed_given) {
  CensusJob job = job_from_json(io::parse_json(read_file(opt.job)));
  if (seed_given) job.seed = opt.seed;
  CensusRunOptions run;
  run.workers = opt.workers;
  run.resume = opt.resume;
  if (opt.max_chunks != 0) run.max_chunks = opt.max_chunks;
  const auto outcome = run_census(job, run);
  Json j = to_json(outcome.summary);
  j["complete"] = outcome.complete;
  j["stats"] = Json{{"scanned", outcome.stats.scanned},
                    {"no_split_spectrum", outcome.stats.no_split_spectrum},
                    {"no_ordering", outcome.stats.no_ordering},
                    {"rejected", outcome.stats.rejected},
                    {"hits", outcome.stats.hits}};
  if (opt.table) {
    emit(opt, out, summary_table(outcome.summary));
  } else {
    emit_json(opt, out, j);
  }
  if (!outcome.complete) err << "census stopped early; rerun with --resume to continue\n";
  return kOk;
}

int cmd_report(const Options& opt, std::istream& in, std::ostream& out) {
  CensusSummary summary;
  if (opt.records.empty() || opt.records == "-") {
    summary = census_report_from_lines(in);
  } else {
    std::ifstream file(opt.records);
    if (!file) throw Error("cannot read " + opt.records);
    summary = census_report_from_lines(file);
  }
  if (opt.table) {
    emit(opt, out, summary_table(summary));
  } else {
    emit_json(opt, out, to_json(summary));
  }
  return kOk;
}

void add_io(CLI::App* sub, Options& opt) {
  sub->add_option("--in", opt.input, "Input JSON file ('-' for stdin, the default)");
  sub->add_option("--json", opt.inline_json, "Inline input JSON");
  sub->add_option("--field", opt.field, "Reinterpret rational input over this field");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options opt;
  CLI::App app{"Exact toolkit for Leonard systems and the space of doubly tridiagonal maps"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", opt.output, "Write output here instead of stdout");
  auto* seed = app.add_option("--seed", opt.seed, "Seed for all randomness (default 0)");

  auto* construct = app.add_subcommand("construct", "Build a candidate pair");
  construct->add_option("--family", opt.family, "Named family (krawtchouk)");
  construct->add_option("--d", opt.d, "Diameter");
  construct->add_option("--field", opt.field, "Q or GF(p); defaults to $XTRID_FIELD or Q");
  construct->add_option("--from", opt.from, "Read the candidate from a JSON file");
  construct->add_option("--affine", opt.affine, "u,v,us,vs: A -> uA+v, A* -> us A* + vs");
  construct->add_option("--in", opt.input, "Candidate JSON to transform ('-' for stdin)");
  construct->add_option("--json", opt.inline_json, "Inline candidate JSON");

  auto* validate_cmd = app.add_subcommand("validate", "Certify a candidate as a Leonard system");
  add_io(validate_cmd, opt);
  auto* xspace = app.add_subcommand("xspace", "Compute the space X and check its basis");
  add_io(xspace, opt);
  auto* awparams = app.add_subcommand("awparams", "Extract Askey-Wilson parameters");
  add_io(awparams, opt);
  auto* upsilon = app.add_subcommand("upsilon", "Kernel and image of Upsilon or Upsilon*");
  add_io(upsilon, opt);
  upsilon->add_flag("--star", opt.star, "Use Upsilon*");

  auto* census = app.add_subcommand("census", "Run a finite-field census job");
  census->add_option("--job", opt.job, "Job file")->required();
  census->add_option("--workers", opt.workers, "Worker threads")->check(CLI::PositiveNumber);
  census->add_flag("--resume", opt.resume, "Continue from the job's checkpoint");
  census->add_option("--max-chunks", opt.max_chunks, "Stop after this many chunks");
  census->add_flag("--table", opt.table, "Print an aligned text table");

  auto* report = app.add_subcommand("report", "Summarize a census records file");
  report->add_option("--records", opt.records, "Records file ('-' for stdin, the default)");
  report->add_flag("--table", opt.table, "Print an aligned text table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*construct) return cmd_construct(opt, in, out);
    if (*validate_cmd) return cmd_validate(opt, in, out);
    if (*xspace) return cmd_xspace(opt, in, out);
    if (*awparams) return cmd_awparams(opt, in, out);
    if (*upsilon) return cmd_upsilon(opt, in, out);
    if (*census) return cmd_census(opt, out, err, seed->count() > 0);
    if (*report) return cmd_report(opt, in, out);
  } catch (const ValidationError& e) {
    err << io::canonical_dump(Json{{"error", "validation"},
                                   {"axiom", axiom_name(e.axiom())},
                                   {"i", e.i()},
                                   {"j", e.j()},
                                   {"detail", e.detail()}})
        << "\n";
    return kValidation;
  } catch (const NotLeonardSystem& e) {
    err << io::canonical_dump(Json{{"error", "validation"}, {"detail", e.what()}}) << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace xtrid::cli
