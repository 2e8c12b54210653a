#include "chaosbox/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "chaosbox/chaos.hpp"
#include "chaosbox/corpus.hpp"
#include "chaosbox/error.hpp"
#include "chaosbox/generation.hpp"
#include "chaosbox/io.hpp"
#include "chaosbox/metrics.hpp"
#include "chaosbox/report.hpp"

#ifndef CHAOSBOX_CORPUS_DIR
#define CHAOSBOX_CORPUS_DIR "data/corpus"
#endif

namespace chaosbox {

namespace {

struct GlobalFlags {
  bool json = false;
  bool md = false;
  bool csv = false;
  std::string format = "dec";
  std::string nl_mode = "coord";
  std::string branch_mode = "eq1";
  bool allow_non_bijective = false;
  std::size_t budget = kDefaultRefineBudget;
  std::string objective = "sum";
  std::string corpus_dir;
};

struct GenerateFlags {
  std::string x0, a, b, c, d, e, f;
  std::string key_json;
  std::string out_path;
  std::string report_path;
};

struct AnalyzeFlags {
  std::string path;
  std::string out_path;
};

struct BifurcateFlags {
  std::string map = "logistic";
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = kDefaultBifurcationSteps;
  double x0 = 0.3;
  std::size_t transient = kDefaultTransient;
  std::size_t samples = kDefaultSamples;
  std::string out_path;
};

struct LyapunovFlags {
  std::string map = "logistic";
  std::optional<double> param;
  double x0 = 0.3;
  std::size_t transient = kDefaultTransient;
  std::size_t n = 100000;
  std::optional<double> sweep_lo;
  std::optional<double> sweep_hi;
  std::size_t sweep_steps = 50;
  std::string csv_path;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotBijective: return kExitNotBijective;
    case ErrorKind::GenerationStall: return kExitGenerationStall;
    default: return kExitInputError;
  }
}

KeySpec key_from_flags(const GenerateFlags& g) {
  if (!g.key_json.empty()) {
    const std::string text =
        g.key_json.front() == '{' ? g.key_json : read_text_file(g.key_json);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::ParseError, std::string("--key-json: ") + e.what());
    }
    return key_from_json(doc);
  }
  const std::pair<const char*, const std::string*> fields[] = {
      {"x0", &g.x0}, {"a", &g.a}, {"b", &g.b}, {"c", &g.c},
      {"d", &g.d},   {"e", &g.e}, {"f", &g.f}};
  for (const auto& [name, value] : fields) {
    if (value->empty()) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string("missing --") + name + " (all seven key flags or --key-json are required)");
    }
  }
  KeySpec key;
  key.x0 = parse_key_real("x0", g.x0);
  key.a = parse_key_real("a", g.a);
  key.b = parse_key_integer("b", g.b);
  key.c = parse_key_integer("c", g.c);
  key.d = parse_key_integer("d", g.d);
  key.e = parse_key_real("e", g.e);
  key.f = parse_key_real("f", g.f);
  return key;
}

std::vector<CorpusEntry> open_corpus(const GlobalFlags& flags) {
  return load_corpus(flags.corpus_dir.empty() ? default_corpus_dir()
                                              : std::filesystem::path(flags.corpus_dir));
}

int cmd_generate(const GlobalFlags& flags, const GenerateFlags& g, std::ostream& out) {
  const KeySpec key = key_from_flags(g);
  key.validate();
  const RefineConfig config{flags.budget, parse_objective(flags.objective)};
  const BranchMode branch = parse_branch_mode(flags.branch_mode);
  const NlMode nl_mode = parse_nl_mode(flags.nl_mode);
  const GridFormat format = parse_grid_format(flags.format);

  RefineStats stats;
  const SBox box = generate(key, config, branch, &stats);
  const MetricReport report = full_report(box, nl_mode);

  if (g.out_path.empty()) {
    out << format_sbox(box, format);
  } else {
    save_sbox(g.out_path, box, format);
  }

  if (!g.report_path.empty()) {
    RunManifest manifest;
    manifest.subcommand = "generate";
    manifest.parameters = {{"key", key_to_json(key)},
                           {"budget", config.budget},
                           {"objective", to_string(config.objective)},
                           {"branch_mode", to_string(branch)},
                           {"nl_mode", to_string(nl_mode)},
                           {"format", to_string(format)}};
    manifest.timestamp = utc_timestamp();
    const nlohmann::json doc = {{"manifest", manifest.to_json()},
                                {"report", report_to_json(report)},
                                {"refine", refine_stats_to_json(stats)},
                                {"sbox", std::vector<int>(box.table().begin(), box.table().end())}};
    write_text_file(g.report_path, doc.dump(2) + "\n");
  }

  if (!g.out_path.empty()) {
    out << "NL min " << report.nl.min << " max " << report.nl.max << " avg " << report.nl.avg
        << " (" << to_string(nl_mode) << "); refine accepted " << stats.accepted << " of "
        << stats.iterations << " swaps, objective " << stats.initial_objective << " -> "
        << stats.final_objective << "\n";
  }
  return kExitOk;
}

int cmd_analyze(const GlobalFlags& flags, const AnalyzeFlags& a, std::ostream& out,
                std::ostream& err) {
  const NlMode nl_mode = parse_nl_mode(flags.nl_mode);
  const GridFormat format = grid_format_for(a.path, parse_grid_format(flags.format));
  const SBox box = load_sbox(a.path, format, flags.allow_non_bijective);
  if (!box.is_bijective()) {
    err << "warning: " << a.path << " is not a permutation of 0..255; computing on raw counts\n";
  }
  const MetricReport report =
      full_report(box, nl_mode, MetricOptions{.allow_non_bijective = flags.allow_non_bijective});

  std::string text;
  if (flags.json) {
    RunManifest manifest;
    manifest.subcommand = "analyze";
    manifest.parameters = {{"path", a.path},
                           {"format", to_string(format)},
                           {"nl_mode", to_string(nl_mode)},
                           {"allow_non_bijective", flags.allow_non_bijective}};
    manifest.timestamp = utc_timestamp();
    const nlohmann::json doc = {{"manifest", manifest.to_json()},
                                {"report", report_to_json(report)}};
    text = doc.dump(2) + "\n";
  } else if (flags.md) {
    text = markdown_header() +
           report_markdown_row(std::filesystem::path(a.path).stem().string(), report);
  } else {
    text = report_table(report);
  }

  if (a.out_path.empty()) {
    out << text;
  } else {
    write_text_file(a.out_path, text);
  }
  return kExitOk;
}

int cmd_compare(const GlobalFlags& flags, const std::vector<std::string>& refs,
                std::ostream& out, std::ostream& err) {
  if (refs.empty()) {
    throw Error(ErrorKind::InvalidArgument, "compare needs at least one corpus id or S-box file");
  }
  const NlMode nl_mode = parse_nl_mode(flags.nl_mode);
  std::optional<std::vector<CorpusEntry>> corpus;
  std::string corpus_error;

  ComparisonTable table;
  for (const std::string& ref : refs) {
    try {
      if (std::filesystem::is_regular_file(ref)) {
        CorpusEntry entry;
        entry.id = ref;
        entry.table = load_sbox(ref, grid_format_for(ref, parse_grid_format(flags.format)),
                                flags.allow_non_bijective);
        table.push_back(compare_row(entry, nl_mode));
        continue;
      }
      if (!corpus && corpus_error.empty()) {
        try {
          corpus = open_corpus(flags);
        } catch (const Error& e) {
          corpus_error = e.what();
        }
      }
      if (!corpus) {
        table.push_back(failed_row(ref, "corpus unavailable: " + corpus_error));
        continue;
      }
      const CorpusEntry* entry = find_entry(*corpus, ref);
      if (entry == nullptr) {
        table.push_back(failed_row(ref, "unknown corpus id or file"));
        continue;
      }
      table.push_back(compare_row(*entry, nl_mode));
    } catch (const Error& e) {
      table.push_back(failed_row(ref, e.what()));
    }
  }

  out << (flags.csv ? render_csv(table) : render_markdown(table));
  const bool any_ok = std::any_of(table.begin(), table.end(),
                                  [](const ComparisonRow& r) { return r.kind != RowKind::Failed; });
  for (const ComparisonRow& r : table) {
    if (r.kind == RowKind::Failed) err << "error: " << r.id << ": " << r.error << "\n";
  }
  return any_ok ? kExitOk : kExitInputError;
}

int cmd_bifurcate(const GlobalFlags& flags, const BifurcateFlags& b, std::ostream& out) {
  const std::vector<BifurcationPoint> points =
      bifurcation_scan(parse_map_kind(b.map), b.lo, b.hi, b.steps, b.x0, b.transient, b.samples,
                       parse_branch_mode(flags.branch_mode));
  std::string csv = "param,x\n";
  csv.reserve(points.size() * 40);
  for (const BifurcationPoint& p : points) {
    csv += format_real17(p.param);
    csv += ',';
    csv += format_real17(p.state);
    csv += '\n';
  }
  if (b.out_path.empty()) {
    out << csv;
  } else {
    write_text_file(b.out_path, csv);
  }
  return kExitOk;
}

int cmd_lyapunov(const GlobalFlags& flags, const LyapunovFlags& l, std::ostream& out,
                 std::ostream& err) {
  const MapKind kind = parse_map_kind(l.map);
  const BranchMode branch = parse_branch_mode(flags.branch_mode);

  std::vector<double> params;
  if (l.sweep_lo || l.sweep_hi) {
    if (!l.sweep_lo || !l.sweep_hi) {
      throw Error(ErrorKind::InvalidArgument, "--sweep-lo and --sweep-hi go together");
    }
    if (l.sweep_steps == 0 || !(*l.sweep_lo < *l.sweep_hi)) {
      throw Error(ErrorKind::ParamOutOfRange, "sweep needs sweep-lo < sweep-hi and sweep-steps >= 1");
    }
    for (std::size_t k = 0; k < l.sweep_steps; ++k) {
      const double t = l.sweep_steps == 1 ? 0.0
                                          : static_cast<double>(k) / static_cast<double>(l.sweep_steps - 1);
      params.push_back(k + 1 == l.sweep_steps && l.sweep_steps > 1
                           ? *l.sweep_hi
                           : *l.sweep_lo + (*l.sweep_hi - *l.sweep_lo) * t);
    }
  } else if (l.param) {
    params.push_back(*l.param);
  } else {
    throw Error(ErrorKind::InvalidArgument, "lyapunov needs --param or --sweep-lo/--sweep-hi");
  }

  // Validate every parameter before computing anything.
  std::vector<MapParams> maps;
  maps.reserve(params.size());
  for (double p : params) maps.emplace_back(kind, p, branch);

  std::string rows;
  for (const MapParams& m : maps) {
    const LyapunovEstimate est = lyapunov(m, l.x0, l.transient, l.n);
    if (est.skipped > 0) {
      err << "warning: skipped " << est.skipped << " samples with |f'| < 1e-300 at param "
          << format_real17(m.control()) << "\n";
    }
    rows += format_real17(m.control()) + "," + format_real17(est.value) + "\n";
    if (maps.size() == 1) out << format_real17(est.value) << "\n";
  }

  if (!l.csv_path.empty()) {
    const bool fresh = !std::filesystem::exists(l.csv_path) ||
                       std::filesystem::file_size(l.csv_path) == 0;
    std::ofstream csv(l.csv_path, std::ios::binary | std::ios::app);
    if (!csv) throw Error(ErrorKind::InvalidArgument, "cannot write '" + l.csv_path + "'");
    if (fresh) csv << "param,le\n";
    csv << rows;
  } else if (maps.size() > 1) {
    out << "param,le\n" << rows;
  }
  return kExitOk;
}

int cmd_keyspace(std::ostream& out) {
  static constexpr const char* kNames[] = {"X", "A", "B", "C", "D", "E", "F"};
  const KeyspaceBreakdown ks = keyspace_bits();
  char buf[128];
  for (std::size_t i = 0; i < ks.row_bits.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s  %.3f bits\n", kNames[i], ks.row_bits[i]);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "total  %g * 10^%d  ~ 2^%.3f\n", ks.mantissa, ks.exponent10,
                ks.total_bits);
  out << buf;
  // The commonly quoted figure is 6 * 10^81 ~ 2^272.
  const double quoted_bits = std::log2(6.0) + 81.0 * std::log2(10.0);
  std::snprintf(buf, sizeof buf,
                "quoted 6 * 10^81 ~ 2^%.3f; delta %g * 10^%d (%.3f bits)\n", quoted_bits,
                ks.mantissa - 6.0, ks.exponent10, ks.total_bits - quoted_bits);
  out << buf;
  return kExitOk;
}

}  // namespace

std::filesystem::path default_corpus_dir() { return CHAOSBOX_CORPUS_DIR; }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chaotic S-box generation and cryptanalytic metrics", "chaosbox"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_flag("--json", flags.json, "JSON output");
  app.add_flag("--md", flags.md, "Markdown output");
  app.add_flag("--csv", flags.csv, "CSV output (compare)");
  app.add_option("--format", flags.format, "S-box grid format")
      ->check(CLI::IsMember({"dec", "hex", "json"}));
  app.add_option("--nl-mode", flags.nl_mode, "Nonlinearity aggregation")
      ->check(CLI::IsMember({"coord", "full"}));
  app.add_option("--branch-mode", flags.branch_mode, "AHYB third branch: eq1 x(A-x), alg1 (A-x)")
      ->check(CLI::IsMember({"eq1", "alg1"}));
  app.add_flag("--allow-non-bijective", flags.allow_non_bijective,
               "Compute metrics for non-permutation tables");
  app.add_option("--budget", flags.budget, "Refinement iterations");
  app.add_option("--objective", flags.objective, "Refinement objective")
      ->check(CLI::IsMember({"sum", "min", "full"}));
  app.add_option("--corpus", flags.corpus_dir, "Corpus directory");

  GenerateFlags gen;
  CLI::App* generate = app.add_subcommand("generate", "Generate a key-dependent S-box");
  generate->add_option("--x0", gen.x0, "Initial state, (0, 4)");
  generate->add_option("--a", gen.a, "AHYB control, (0, 2)");
  generate->add_option("--b", gen.b, "Byte scale, (10^6, 10^9)");
  generate->add_option("--c", gen.c, "Row recurrence offset, (0, 10^9)");
  generate->add_option("--d", gen.d, "Column recurrence offset, (0, 10^9)");
  generate->add_option("--e", gen.e, "Row recurrence seed, (0, 1)");
  generate->add_option("--f", gen.f, "Column recurrence seed, (0, 1)");
  generate->add_option("--key-json", gen.key_json, "Key as JSON object or path to one");
  generate->add_option("-o,--out", gen.out_path, "S-box grid output file (stdout if absent)");
  generate->add_option("--report", gen.report_path, "JSON report output file");

  AnalyzeFlags ana;
  CLI::App* analyze = app.add_subcommand("analyze", "Evaluate an S-box file");
  analyze->add_option("path", ana.path, "S-box file")->required();
  analyze->add_option("-o,--out", ana.out_path, "Write the report here instead of stdout");

  std::vector<std::string> refs;
  CLI::App* comparecmd = app.add_subcommand("compare", "Compare corpus entries and files");
  comparecmd->add_option("entries", refs, "Corpus ids or S-box files");

  BifurcateFlags bif;
  CLI::App* bifurcate = app.add_subcommand("bifurcate", "Bifurcation scan as CSV");
  bifurcate->add_option("--map", bif.map)->check(CLI::IsMember({"ahyb", "logistic", "sine"}));
  bifurcate->add_option("--lo", bif.lo, "Lowest control parameter")->required();
  bifurcate->add_option("--hi", bif.hi, "Highest control parameter")->required();
  bifurcate->add_option("--steps", bif.steps, "Parameter values");
  bifurcate->add_option("--x0", bif.x0, "Initial state");
  bifurcate->add_option("--transient", bif.transient, "Discarded iterations");
  bifurcate->add_option("--samples", bif.samples, "Recorded states per parameter");
  bifurcate->add_option("-o,--out", bif.out_path, "CSV output file (stdout if absent)");

  LyapunovFlags lya;
  CLI::App* lyap = app.add_subcommand("lyapunov", "Lyapunov exponent at a point or over a sweep");
  lyap->add_option("--map", lya.map)->check(CLI::IsMember({"ahyb", "logistic", "sine"}));
  lyap->add_option("--param", lya.param, "Control parameter");
  lyap->add_option("--x0", lya.x0, "Initial state");
  lyap->add_option("--transient", lya.transient, "Discarded iterations");
  lyap->add_option("--n", lya.n, "Averaged iterations");
  lyap->add_option("--sweep-lo", lya.sweep_lo, "Sweep start");
  lyap->add_option("--sweep-hi", lya.sweep_hi, "Sweep end");
  lyap->add_option("--sweep-steps", lya.sweep_steps, "Sweep points");
  lyap->add_option("--csv", lya.csv_path, "Append param,le rows to this CSV");

  CLI::App* keyspace = app.add_subcommand("keyspace", "Key space size in bits");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (generate->parsed()) return cmd_generate(flags, gen, out);
    if (analyze->parsed()) return cmd_analyze(flags, ana, out, err);
    if (comparecmd->parsed()) return cmd_compare(flags, refs, out, err);
    if (bifurcate->parsed()) return cmd_bifurcate(flags, bif, out);
    if (lyap->parsed()) return cmd_lyapunov(flags, lya, out, err);
    if (keyspace->parsed()) return cmd_keyspace(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace chaosbox
