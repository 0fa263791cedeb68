#include "nichols/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>

#include "nichols/counting.hpp"
#include "nichols/engine.hpp"

namespace nichols {

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDiscrepancy = 3;

struct RunConfig {
  std::string preset_text;
  std::string diagram_path;
  std::string n_text;
  unsigned cutoff = 0;  // 0 = unset
  std::string format = "table";
  unsigned jobs = 1;
  unsigned seed = 0;
  bool trace = false;
  std::string suite = "all";
  int max_rank = 6;
  std::string word_text;
};

std::pair<unsigned, unsigned> parse_n_range(const std::string& text) {
  const auto parse_one = [&](const std::string& part) -> unsigned {
    try {
      std::size_t used = 0;
      const unsigned long value = std::stoul(part, &used);
      if (used != part.size() || value < 1 || value > 1000)
        throw ParseError("bad N value: " + text);
      return static_cast<unsigned>(value);
    } catch (const std::logic_error&) {
      throw ParseError("bad N value: " + text);
    }
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const unsigned k = parse_one(text);
    return {k, k};
  }
  const unsigned lo = parse_one(text.substr(0, dots));
  const unsigned hi = parse_one(text.substr(dots + 2));
  if (lo > hi) throw ParseError("empty N range: " + text);
  return {lo, hi};
}

// The preset cells of a run: the preset string ("A3" or "A3@N=2") combined
// with --N, expanded over the N range. Exactly one of --preset/--diagram is
// enforced by the caller.
std::vector<CartanPreset> preset_cells(const RunConfig& config) {
  const ParsedPreset parsed = parse_preset(config.preset_text);
  if (parsed.n && !config.n_text.empty())
    throw ParseError("N given both in the preset and via --N");
  std::pair<unsigned, unsigned> range;
  if (parsed.n) {
    range = {*parsed.n, *parsed.n};
  } else if (!config.n_text.empty()) {
    range = parse_n_range(config.n_text);
  } else {
    throw ParseError("N required: write " + config.preset_text +
                     "@N=<k> or pass --N");
  }
  std::vector<CartanPreset> cells;
  for (unsigned n = range.first; n <= range.second; ++n)
    cells.push_back(CartanPreset{parsed.family, parsed.rank, n, 1});
  return cells;
}

// Engine over the single configured input source; returns a display label
// for the source alongside.
std::pair<NicholsEngine, std::string> make_engine(const RunConfig& config) {
  if (!config.diagram_path.empty()) {
    if (config.cutoff == 0)
      throw ParseError("--cutoff is required with --diagram");
    return {NicholsEngine(load_diagram_file(config.diagram_path), config.cutoff),
            config.diagram_path};
  }
  const auto cells = preset_cells(config);
  if (cells.size() != 1)
    throw ParseError("word commands take exactly one N, not a range");
  const CartanPreset preset = cells.front();
  require_valid_at(preset);
  if (config.cutoff != 0)
    return {NicholsEngine(cartan_diagram(preset), config.cutoff), preset.name()};
  return {NicholsEngine::for_preset(preset), preset.name()};
}

void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& body) {
  jobs = std::min<std::size_t>(std::max(1u, jobs), std::max<std::size_t>(count, 1));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);
}

std::string support_text(const MultiDegree& degree) {
  std::string out = "{";
  for (std::size_t i = 0; i < degree.size(); ++i) {
    if (degree[i] == 0) continue;
    if (out.size() > 1) out += ",";
    out += std::to_string(i + 1);
  }
  return out + "}";
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c >= width.size()) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size(), ' ');
    }
    out << line << "\n";
  }
}

std::string method_cell(const DimensionReport& report, const std::string& method) {
  const auto it = report.methods.find(method);
  return it == report.methods.end() ? std::string() : it->second.str();
}

// ---------------------------------------------------------------- dim ----

int cmd_dim_diagram(const RunConfig& config, std::ostream& out) {
  if (config.cutoff == 0) throw ParseError("--cutoff is required with --diagram");
  const NicholsEngine engine(load_diagram_file(config.diagram_path), config.cutoff);
  const auto closure = engine.lie_closure();
  if (config.format == "json") {
    ordered_json j;
    j["diagram"] = config.diagram_path;
    j["cutoff"] = config.cutoff;
    j["lie_dimension"] = closure->dimension.str();
    out << j.dump(2) << "\n";
  } else if (config.format == "csv") {
    out << "diagram,cutoff,lie_dimension\n"
        << config.diagram_path << "," << config.cutoff << ","
        << closure->dimension << "\n";
  } else {
    print_table(out, {{"diagram", "cutoff", "lie_dimension"},
                      {config.diagram_path, std::to_string(config.cutoff),
                       closure->dimension.str()}});
  }
  return kExitOk;
}

int cmd_dim(const RunConfig& config, std::ostream& out) {
  if (!config.diagram_path.empty()) return cmd_dim_diagram(config, out);
  const auto cells = preset_cells(config);
  for (const auto& cell : cells) require_valid_at(cell);  // exit 2 up front

  std::vector<DimensionReport> reports(cells.size());
  parallel_for(cells.size(), config.jobs,
               [&](std::size_t i) { reports[i] = verify_dimensions(cells[i]); });

  bool all_agree = true;
  for (const auto& report : reports) all_agree = all_agree && report.agree;

  if (config.format == "json") {
    ordered_json array = ordered_json::array();
    for (const auto& report : reports)
      array.push_back(ordered_json::parse(report_to_json_text(report)));
    out << array.dump(2) << "\n";
  } else if (config.format == "csv") {
    out << "preset,N,dim_B,oracle,recursion,closed_form,engine,agree\n";
    for (const auto& report : reports) {
      out << report.preset.family << report.preset.rank << ","
          << report.preset.q_order() << "," << report.dim_B << ","
          << method_cell(report, "oracle") << ","
          << method_cell(report, "recursion") << ","
          << method_cell(report, "closed_form") << ","
          << method_cell(report, "engine") << ","
          << (report.agree ? "yes" : "no") << "\n";
    }
  } else {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"preset", "N", "dim_B", "oracle", "recursion", "closed_form",
                    "engine", "agree"});
    for (const auto& report : reports)
      rows.push_back({std::string(1, report.preset.family) +
                          std::to_string(report.preset.rank),
                      std::to_string(report.preset.q_order()), report.dim_B.str(),
                      method_cell(report, "oracle"), method_cell(report, "recursion"),
                      method_cell(report, "closed_form"), method_cell(report, "engine"),
                      report.agree ? "yes" : "no"});
    print_table(out, rows);
  }
  return all_agree ? kExitOk : kExitDiscrepancy;
}

// ---------------------------------------------------------- word queries ----

int cmd_zero_test(const RunConfig& config, std::ostream& out) {
  auto [engine, label] = make_engine(config);
  const Word word = parse_word(config.word_text, engine.diagram().rank());
  const auto element = BraidedElement::from_word(word);
  const bool zero = engine.zero_test(element);

  std::string degree_text;
  std::string rank_text;
  if (!word.empty()) {
    const MultiDegree degree = degree_of(word, engine.diagram().rank());
    degree_text = format_degree(degree);
    if (config.trace) {
      const auto basis = engine.degree_basis(degree);
      rank_text = std::to_string(basis->rank);
      out << "word: " << format_word(word) << "\n";
      out << "degree: " << degree_text << "\n";
      out << "component rank: " << rank_text << "\n";
      if (basis->rank > 0) {
        const auto index = basis->word_index(word);
        out << "coordinates in the pivot-word basis:";
        for (Eigen::Index c = 0; c < basis->rank; ++c)
          out << " " << basis->coords(*index, c);
        out << "\n";
      } else {
        out << "every word of this degree expands to zero\n";
      }
    }
  }

  if (config.format == "json") {
    ordered_json j;
    j["input"] = label;
    j["word"] = config.word_text;
    j["degree"] = degree_text;
    j["zero"] = zero;
    out << j.dump(2) << "\n";
  } else {
    out << (zero ? "zero" : "nonzero") << "\n";
  }
  return kExitOk;
}

int cmd_lie(const RunConfig& config, std::ostream& out) {
  auto [engine, label] = make_engine(config);
  const Word word = parse_word(config.word_text, engine.diagram().rank());
  const auto element = BraidedElement::from_word(word);

  std::string verdict;
  std::string reason;
  if (word.empty()) {
    verdict = "non-member";
    reason = "the empty word is the algebra unit";
  } else if (engine.zero_test(element)) {
    verdict = "zero";
    reason = "the word expands to zero, and 0 lies in every subspace";
  } else {
    const MultiDegree degree = degree_of(word, engine.diagram().rank());
    const bool member = engine.lie_membership(element);
    verdict = member ? "member" : "non-member";
    reason = "support " + support_text(degree) +
             (is_connected(engine.diagram(), support_of(degree)) ? " is connected"
                                                                 : " is disconnected");
  }

  if (config.format == "json") {
    ordered_json j;
    j["input"] = label;
    j["word"] = config.word_text;
    j["verdict"] = verdict;
    j["reason"] = reason;
    out << j.dump(2) << "\n";
  } else {
    out << verdict << " (" << reason << ")\n";
  }
  return kExitOk;
}

// --------------------------------------------------------------- verify ----

struct SuiteResult {
  std::string name;
  unsigned cases = 0;
  unsigned failures = 0;
  std::vector<std::string> notes;  // one line per failure
  ordered_json extra = ordered_json::object();
};

void check(SuiteResult& suite, bool ok, const std::string& what) {
  ++suite.cases;
  if (ok) return;
  ++suite.failures;
  suite.notes.push_back(what);
}

SuiteResult suite_rank2(unsigned n_lo, unsigned n_hi) {
  SuiteResult suite{"rank2"};
  for (const char family : {'A', 'B', 'C', 'G'})
    for (unsigned n = n_lo; n <= n_hi; ++n) {
      const CartanPreset preset{family, 2, n, 1};
      // The table is a statement about the formal root data, so sweep every
      // defined cell (this keeps G2@N=2, where the braiding itself is not
      // Cartan-faithful but the formulas still evaluate).
      if (!preset_defined_at(preset)) continue;
      const Integer oracle = moebius_oracle(preset);
      const bool ok = closed_form(preset) == oracle &&
                      path_recursion(preset) == oracle &&
                      dim_nichols(preset) - 1 == oracle;
      check(suite, ok, preset.name() + ": rank-2 table mismatch");
    }
  return suite;
}

SuiteResult suite_oracle_vs_recursion(int max_rank) {
  SuiteResult suite{"oracle-vs-recursion"};
  const auto run = [&suite](const CartanPreset& preset, bool dtype) {
    if (!preset_defined_at(preset)) return;
    const Integer oracle = moebius_oracle(preset);
    if (dtype) {
      check(suite, dtype_recursion(preset) == oracle,
            preset.name() + ": dtype_recursion != oracle");
    } else {
      check(suite, path_recursion(preset) == oracle,
            preset.name() + ": path_recursion != oracle");
      check(suite, path_recursion_mirrored(preset) == oracle,
            preset.name() + ": mirrored recursion != oracle");
    }
  };
  const int cap = std::min(max_rank, 8);  // oracle enumerates 2^rank subsets
  for (int n = 1; n <= cap; ++n)
    for (unsigned N = 2; N <= 5; ++N) run(CartanPreset{'A', n, N, 1}, false);
  for (int n = 2; n <= cap; ++n)
    for (unsigned N = 3; N <= 6; ++N) {
      run(CartanPreset{'B', n, N, 1}, false);
      run(CartanPreset{'C', n, N, 1}, false);
    }
  for (int n = 3; n <= cap; ++n)
    for (unsigned N = 2; N <= 4; ++N) run(CartanPreset{'D', n, N, 1}, true);
  if (cap >= 4)
    for (unsigned N = 3; N <= 6; ++N) run(CartanPreset{'F', 4, N, 1}, false);
  for (unsigned N = 2; N <= 6; ++N) run(CartanPreset{'G', 2, N, 1}, false);
  return suite;
}

SuiteResult suite_closed_form(int max_rank) {
  SuiteResult suite{"closed-form"};
  // Certification points: one congruence class at a time, degree+1 values of
  // N, where degree = number of positive roots bounds the polynomial degree.
  const auto certify = [&suite](char family, int rank, unsigned lo, unsigned count,
                                unsigned step) {
    unsigned n = lo;
    for (unsigned i = 0; i < count; ++i, n += step) {
      const CartanPreset preset{family, rank, n, 1};
      check(suite, closed_form(preset) == moebius_oracle(preset),
            preset.name() + ": closed_form != oracle");
    }
  };
  const int cap = std::min(max_rank, 8);
  for (int n = 1; n <= cap; ++n) certify('A', n, 2, unsigned(n * (n + 1) / 2) + 1, 1);
  for (int n = 3; n <= std::min(cap, 7); ++n)
    certify('D', n, 2, unsigned(n * n - n) + 1, 1);
  for (int n = 2; n <= std::min(cap, 6); ++n) {
    certify('B', n, 3, unsigned(n * n) + 1, 2);
    certify('B', n, 4, unsigned(n * n) + 1, 2);
    certify('C', n, 3, unsigned(n * n) + 1, 2);
    certify('C', n, 4, unsigned(n * n) + 1, 2);
  }
  if (cap >= 4) {
    certify('F', 4, 3, 25, 2);
    certify('F', 4, 4, 25, 2);
  }
  for (const unsigned n : {4u, 5u, 7u, 8u, 10u, 11u, 13u})
    certify('G', 2, n, 1, 1);
  certify('G', 2, 6, 7, 3);
  if (cap >= 6) certify('E', 6, 2, 37, 1);
  if (cap >= 7) certify('E', 7, 2, 64, 1);
  if (cap >= 8) certify('E', 8, 2, 121, 1);
  return suite;
}

SuiteResult suite_engine(const RunConfig& config) {
  SuiteResult suite{"engine"};
  if (config.preset_text.empty())
    throw ParseError("--suite engine needs --preset (and an N)");
  VerifyOptions options;
  options.force_engine = true;
  ordered_json reports = ordered_json::array();
  for (const auto& preset : preset_cells(config)) {
    require_valid_at(preset);
    const DimensionReport report = verify_dimensions(preset, options);
    check(suite, report.agree,
          preset.name() + ": engine closure disagrees with the oracle");
    reports.push_back(ordered_json::parse(report_to_json_text(report)));
  }
  suite.extra["reports"] = std::move(reports);
  return suite;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  unsigned n_lo = 2;
  unsigned n_hi = 6;
  if (!config.n_text.empty()) {
    const auto range = parse_n_range(config.n_text);
    n_lo = range.first;
    n_hi = range.second;
  }

  std::vector<SuiteResult> results;
  if (config.suite == "rank2") {
    results.push_back(suite_rank2(n_lo, n_hi));
  } else if (config.suite == "oracle-vs-recursion") {
    results.push_back(suite_oracle_vs_recursion(config.max_rank));
  } else if (config.suite == "closed-form") {
    results.push_back(suite_closed_form(config.max_rank));
  } else if (config.suite == "engine") {
    results.push_back(suite_engine(config));
  } else if (config.suite == "all") {
    results.push_back(suite_rank2(n_lo, n_hi));
    results.push_back(suite_oracle_vs_recursion(config.max_rank));
    results.push_back(suite_closed_form(config.max_rank));
    if (!config.preset_text.empty()) results.push_back(suite_engine(config));
  } else {
    throw ParseError("unknown suite: " + config.suite +
                     " (expected rank2, oracle-vs-recursion, closed-form, engine, all)");
  }

  bool pass = true;
  for (const auto& suite : results) pass = pass && suite.failures == 0;

  if (config.format == "json") {
    ordered_json j;
    j["command"] = "verify";
    j["seed"] = config.seed;
    ordered_json suites = ordered_json::array();
    for (const auto& suite : results) {
      ordered_json s;
      s["name"] = suite.name;
      s["cases"] = suite.cases;
      s["failures"] = suite.failures;
      s["pass"] = suite.failures == 0;
      if (!suite.notes.empty()) s["notes"] = suite.notes;
      for (const auto& [key, value] : suite.extra.items()) s[key] = value;
      suites.push_back(std::move(s));
    }
    j["suites"] = std::move(suites);
    j["pass"] = pass;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& suite : results) {
      out << "suite " << suite.name << ": " << suite.cases << " cases, "
          << suite.failures << " failures - "
          << (suite.failures == 0 ? "PASS" : "FAIL") << "\n";
      for (const auto& note : suite.notes) out << "  " << note << "\n";
      if (suite.extra.contains("reports"))
        for (const auto& report : suite.extra["reports"])
          out << "  " << report["preset"].get<std::string>() << "@N="
              << report["N"] << ": dim L = "
              << report["methods"]["oracle"].get<std::string>() << "\n";
    }
    out << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kExitOk : kExitDiscrepancy;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  RunConfig config;

  CLI::App app{"Exact-arithmetic calculator for Nichols braided Lie algebras "
               "of diagonal Cartan type"};
  app.require_subcommand(0, 1);

  const auto add_common = [&config](CLI::App* cmd, bool with_word) {
    cmd->add_option("--preset", config.preset_text,
                    "Cartan preset, e.g. A3 or A3@N=2");
    cmd->add_option("--diagram", config.diagram_path, "braiding matrix JSON file");
    cmd->add_option("--N", config.n_text, "order of q: a value or range lo..hi");
    cmd->add_option("--cutoff", config.cutoff, "total-degree cutoff for the engine");
    cmd->add_option("--format", config.format, "table, json, or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    cmd->add_option("--jobs", config.jobs, "parallel workers (output order is fixed)");
    cmd->add_option("--seed", config.seed, "seed recorded in JSON summaries");
    cmd->add_flag("--trace", config.trace, "print the derivation details");
    if (with_word)
      cmd->add_option("word", config.word_text,
                      "word literal: space-separated 1-based letters, e.g. \"1 2 1\"")
          ->required();
  };

  CLI::App* dim = app.add_subcommand("dim", "dimension reports per (preset, N)");
  add_common(dim, false);
  CLI::App* zero = app.add_subcommand("zero-test", "does the word vanish in B(V)?");
  add_common(zero, true);
  CLI::App* lie = app.add_subcommand("lie", "is the word a member of L(V)?");
  add_common(lie, true);
  CLI::App* verify = app.add_subcommand("verify", "cross-validation suites");
  add_common(verify, false);
  verify->add_option("--suite", config.suite,
                     "rank2, oracle-vs-recursion, closed-form, engine, or all");
  verify->add_option("--max-rank", config.max_rank, "rank bound for sweeps")
      ->check(CLI::Range(1, 8));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {kExitOk, out.str()};
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return {kExitOk, out.str()};
  } catch (const CLI::ParseError& e) {
    out << "error: " << e.what() << "\n";
    return {kExitUsage, out.str()};
  }

  try {
    const bool has_preset = !config.preset_text.empty();
    const bool has_diagram = !config.diagram_path.empty();
    if (dim->parsed() || zero->parsed() || lie->parsed()) {
      if (has_preset == has_diagram)
        throw ParseError("exactly one of --preset / --diagram is required");
    }
    if (dim->parsed()) return {cmd_dim(config, out), out.str()};
    if (zero->parsed()) return {cmd_zero_test(config, out), out.str()};
    if (lie->parsed()) return {cmd_lie(config, out), out.str()};
    if (verify->parsed()) return {cmd_verify(config, out), out.str()};
    out << app.help();
    return {kExitOk, out.str()};
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return {kExitUsage, out.str()};
  }
}

}  // namespace nichols
