// Command-line front end: instance generation, tester runs, distances and
// corruption sweeps.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "solv/corpus.hpp"
#include "solv/distance.hpp"
#include "solv/instance_io.hpp"
#include "solv/tester.hpp"

namespace {

using nlohmann::json;
using namespace solv;

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

/// Runs fn(i) for i in [0, count) on up to `parallel` threads. Results are
/// written by index, so output order never depends on scheduling.
template <typename Fn>
void for_each_index(std::size_t count, std::size_t parallel, Fn fn) {
  parallel = std::max<std::size_t>(1, std::min(parallel, count));
  if (parallel == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < parallel; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += parallel) fn(i);
    });
  }
  for (auto& worker : workers) worker.join();
}

struct GenOptions {
  std::string family;
  int n = 0;
  std::vector<int> factors;
  int q = 0, p = 0, mult = 0;
  std::uint64_t seed = 0;
  std::size_t corrupt = 0;
  std::string out;
  std::string name;
  bool json_output = false;
};

TableMagma build_instance(const GenOptions& o) {
  TableMagma magma = [&] {
    if (o.family == "random-magma" || o.family == "random_magma") {
      if (o.n < 1) throw std::invalid_argument("random-magma needs --n >= 1");
      return random_magma(static_cast<std::size_t>(o.n), o.seed);
    }
    const auto family = parse_family(o.family);
    if (!family) throw std::invalid_argument("unknown family '" + o.family + "'");
    GroupSpec spec{*family, {}};
    switch (*family) {
      case Family::kDirectProduct: spec.params = o.factors; break;
      case Family::kSemidirect: spec.params = {o.q, o.p, o.mult}; break;
      default: spec.params = {o.n}; break;
    }
    return generate(spec);
  }();
  if (o.corrupt > 0) {
    magma = corrupt(magma, {o.corrupt, o.seed});
  }
  if (!o.name.empty()) magma.set_name(o.name);
  return magma;
}

int run_gen(const GenOptions& o) {
  const TableMagma magma = build_instance(o);
  std::string out = o.out;
  if (out.empty()) out = o.family + "-" + std::to_string(magma.size()) + ".json";
  write_instance(out, magma);
  if (o.json_output) {
    std::cout << json{{"path", out}, {"size", magma.size()}, {"name", magma.name()}}.dump()
              << '\n';
  } else {
    std::cout << "wrote " << out << " (size " << magma.size() << ")\n";
  }
  return 0;
}

struct TestOptions {
  std::string input;
  double epsilon = 0.1;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t parallel = 1;
  bool json_output = false;
  bool reports = false;
  bool timing = false;
};

struct TrialOutcome {
  TesterReport report;
  double seconds = 0;
};

json summarize(const std::string& name, std::size_t n, double epsilon,
               const std::vector<TrialOutcome>& trials, bool timing) {
  std::size_t accepts = 0;
  std::map<std::string, std::size_t> histogram;
  for (const char* step : {"2", "3", "4", "5a", "5b", "6", "7"}) histogram[step] = 0;
  std::map<std::string, std::uint64_t> total_calls;
  std::map<std::string, std::uint64_t> max_calls;
  double total_seconds = 0, max_seconds = 0;
  for (const auto& trial : trials) {
    if (trial.report.accept) {
      ++accepts;
    } else {
      ++histogram[step_label(trial.report.reject_step)];
    }
    for (const auto& [phase, calls] : trial.report.queries) {
      total_calls[phase_name(phase)] += calls;
      max_calls[phase_name(phase)] = std::max(max_calls[phase_name(phase)], calls);
    }
    total_seconds += trial.seconds;
    max_seconds = std::max(max_seconds, trial.seconds);
  }
  json doc;
  doc["instance"] = name;
  doc["n"] = n;
  doc["epsilon"] = epsilon;
  doc["trials"] = trials.size();
  doc["accept"] = accepts;
  doc["reject_histogram"] = histogram;
  json calls = json::object();
  for (const auto& [phase, total] : total_calls) {
    calls[phase] = {{"mean", static_cast<double>(total) / trials.size()},
                    {"max", max_calls[phase]}};
  }
  doc["oracle_calls"] = std::move(calls);
  if (timing) {
    doc["seconds"] = {{"mean", trials.empty() ? 0.0 : total_seconds / trials.size()},
                      {"max", max_seconds}};
  }
  return doc;
}

int run_test(const TestOptions& o) {
  const TableMagma magma = read_instance(o.input);
  TesterConfig base;
  base.epsilon = o.epsilon;
  base.validate();
  std::vector<TrialOutcome> trials(o.trials);
  for_each_index(o.trials, o.parallel, [&](std::size_t i) {
    TesterConfig cfg = base;
    cfg.seed = derive_seed(o.seed, i);
    const auto start = std::chrono::steady_clock::now();
    trials[i].report = run_tester(magma, cfg);
    trials[i].seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  const std::string name = magma.name().empty() ? o.input : magma.name();
  json summary = summarize(name, magma.size(), o.epsilon, trials, o.timing);
  if (o.reports) {
    json reports = json::array();
    for (const auto& trial : trials) reports.push_back(report_to_json(trial.report));
    summary["reports"] = std::move(reports);
  }
  if (o.json_output) {
    std::cout << summary.dump() << '\n';
  } else {
    std::cout << "instance   " << name << " (n = " << magma.size() << ")\n"
              << "epsilon    " << o.epsilon << "\n"
              << "trials     " << o.trials << "\n"
              << "accepted   " << summary["accept"].get<std::size_t>() << "\n"
              << "rejections";
    for (const auto& [step, count] : summary["reject_histogram"].items()) {
      std::cout << "  step " << step << ": " << count.get<std::size_t>();
    }
    std::cout << "\n";
    for (const auto& [phase, stats] : summary["oracle_calls"].items()) {
      std::cout << "calls      " << std::left << std::setw(14) << phase << " mean "
                << stats["mean"].get<double>() << "  max " << stats["max"].get<std::uint64_t>()
                << "\n";
    }
  }
  const std::size_t accepts = summary["accept"].get<std::size_t>();
  return 2 * accepts > o.trials ? kExitAccept : kExitReject;
}

struct DistanceOptions {
  std::vector<std::string> inputs;
  std::string mode = "auto";
  bool script = false;
  std::string subset;
  bool json_output = false;
};

json script_json(const EditCost& cost) {
  json ops = json::array();
  for (const EditOp& op : cost.script) {
    switch (op.kind) {
      case EditOp::Kind::kExchange:
        ops.push_back({{"op", "exchange"}, {"row", op.row}, {"col", op.col}, {"value", op.value}});
        break;
      case EditOp::Kind::kInsert:
        ops.push_back({{"op", "insert"}, {"index", op.row}, {"row", op.insert_row},
                       {"col", op.insert_col}});
        break;
      case EditOp::Kind::kDelete:
        ops.push_back({{"op", "delete"}, {"index", op.row}});
        break;
    }
  }
  return ops;
}

std::uint64_t parse_assignment(const std::string& token, const std::string& key) {
  const auto eq = token.find('=');
  if (eq == std::string::npos || token.substr(0, eq) != key) {
    throw std::invalid_argument("expected " + key + "=<integer>, got '" + token + "'");
  }
  return std::stoull(token.substr(eq + 1));
}

int run_distance(const DistanceOptions& o) {
  json doc;
  if (!o.subset.empty()) {
    std::istringstream in(o.subset);
    std::string n_token, d_token;
    in >> n_token >> d_token;
    const auto n = parse_assignment(n_token, "n");
    const auto d = parse_assignment(d_token, "d");
    doc = {{"mode", "subset"}, {"n", n}, {"d", d}, {"distance", subset_distance(n, d)}};
  } else {
    std::vector<TableMagma> magmas;
    for (const auto& path : o.inputs) magmas.push_back(read_instance(path));
    std::string mode = o.mode;
    if (mode == "auto") {
      if (magmas.size() == 1) {
        mode = "solvable";
      } else {
        mode = magmas[0].size() == magmas[1].size() ? "relabel" : "literal";
      }
    }
    if (mode == "solvable") {
      if (magmas.size() != 1) throw std::invalid_argument("mode solvable takes one input");
      doc = {{"mode", mode}, {"distance", distance_to_solvable_bruteforce(magmas[0])}};
    } else {
      if (magmas.size() != 2) throw std::invalid_argument("mode " + mode + " takes two inputs");
      EditCost cost;
      if (mode == "relabel") {
        cost = hamming_min_over_bijections(magmas[0], magmas[1]);
      } else if (mode == "literal") {
        cost = edit_distance_exact(Table::from_magma(magmas[0]), Table::from_magma(magmas[1]));
      } else {
        throw std::invalid_argument("unknown mode '" + mode + "'");
      }
      doc = {{"mode", mode}, {"distance", cost.value}};
      if (o.script) {
        doc["script"] = script_json(cost);
        doc["target_order"] = cost.target_order;
      }
    }
  }
  if (o.json_output) {
    std::cout << doc.dump() << '\n';
  } else {
    std::cout << doc["distance"].get<std::uint64_t>() << '\n';
    if (doc.contains("script")) std::cout << doc["script"].dump(2) << '\n';
  }
  return 0;
}

struct BenchOptions {
  std::vector<std::string> families{"cyclic:12", "dihedral:6", "symmetric:4", "random-magma:16"};
  std::vector<std::size_t> corruption{0, 1, 4, 16};
  double epsilon = 0.1;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::size_t parallel = 1;
};

/// family:param[:param...], e.g. "semidirect:7:3:2" or "random-magma:32".
std::pair<std::string, std::vector<int>> parse_bench_family(const std::string& item) {
  std::vector<std::string> parts;
  std::stringstream in(item);
  std::string part;
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() < 2) throw std::invalid_argument("bench family needs parameters: " + item);
  std::vector<int> params;
  for (std::size_t i = 1; i < parts.size(); ++i) params.push_back(std::stoi(parts[i]));
  return {parts[0], params};
}

int run_bench(const BenchOptions& o) {
  TesterConfig base;
  base.epsilon = o.epsilon;
  base.validate();
  std::cout << "family,n,k,epsilon,trials,accept_rate,mean_queries\n";
  std::uint64_t row = 0;
  for (const auto& item : o.families) {
    const auto [family, params] = parse_bench_family(item);
    const bool random = family == "random-magma" || family == "random_magma";
    std::optional<TableMagma> group;
    if (!random) {
      const auto parsed = parse_family(family);
      if (!parsed) throw std::invalid_argument("unknown family '" + family + "'");
      group = generate({*parsed, params});
    }
    const std::size_t n = random ? static_cast<std::size_t>(params.at(0)) : group->size();
    for (std::size_t k : o.corruption) {
      const std::uint64_t row_seed = derive_seed(o.seed, row++);
      std::vector<TesterReport> reports(o.trials);
      for_each_index(o.trials, o.parallel, [&](std::size_t i) {
        const std::uint64_t trial_seed = derive_seed(row_seed, i);
        TableMagma instance = random ? random_magma(n, derive_seed(trial_seed, 1)) : *group;
        if (k > 0) instance = corrupt(instance, {k, derive_seed(trial_seed, 2)});
        TesterConfig cfg = base;
        cfg.seed = derive_seed(trial_seed, 3);
        reports[i] = run_tester(instance, cfg);
      });
      std::size_t accepts = 0;
      std::uint64_t queries = 0;
      for (const auto& r : reports) {
        accepts += r.accept;
        queries += r.queries_total;
      }
      std::cout << item << ',' << n << ',' << k << ',' << o.epsilon << ',' << o.trials << ','
                << std::fixed << std::setprecision(4)
                << static_cast<double>(accepts) / o.trials << ',' << std::setprecision(1)
                << static_cast<double>(queries) / o.trials << std::defaultfloat
                << std::setprecision(6) << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property tester for group solvability over multiplication tables"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write an instance file");
  gen_cmd->add_option("--family", gen.family,
                      "cyclic, direct_product, dihedral, symmetric, alternating, semidirect, "
                      "quaternion or random-magma")
      ->required();
  gen_cmd->add_option("--n", gen.n, "Size parameter (order for quaternion)");
  gen_cmd->add_option("--factors", gen.factors, "Cyclic factor orders for direct_product")
      ->delimiter(',');
  gen_cmd->add_option("--q", gen.q, "Normal cyclic factor order (semidirect)");
  gen_cmd->add_option("--p", gen.p, "Acting cyclic factor order (semidirect)");
  gen_cmd->add_option("--mult", gen.mult, "Action multiplier (semidirect)");
  gen_cmd->add_option("--seed", gen.seed, "Seed for random-magma and --corrupt");
  gen_cmd->add_option("--corrupt", gen.corrupt, "Overwrite this many distinct cells");
  gen_cmd->add_option("--name", gen.name, "Instance name stored in the file");
  gen_cmd->add_option("--out", gen.out, "Output path");
  gen_cmd->add_flag("--json", gen.json_output, "Structured output");

  TestOptions test;
  auto* test_cmd = app.add_subcommand("test", "Run seeded tester trials on an instance");
  test_cmd->add_option("--input", test.input, "Instance file")->required();
  test_cmd->add_option("--epsilon", test.epsilon, "Distance parameter in (0,1)");
  test_cmd->add_option("--trials", test.trials, "Number of independent trials");
  test_cmd->add_option("--seed", test.seed, "Master seed");
  test_cmd->add_option("--parallel", test.parallel, "Worker threads");
  test_cmd->add_flag("--json", test.json_output, "Structured output");
  test_cmd->add_flag("--reports", test.reports, "Include per-trial reports (implies --json)");
  test_cmd->add_flag("--timing", test.timing, "Include wall-clock times in the summary");

  DistanceOptions distance;
  auto* distance_cmd = app.add_subcommand("distance", "Exact table distances");
  distance_cmd->add_option("inputs", distance.inputs, "One or two instance files");
  distance_cmd->add_option("--mode", distance.mode,
                           "relabel (min over bijections), literal (edit distance), "
                           "solvable (distance to nearest group) or auto");
  distance_cmd->add_flag("--script", distance.script, "Print the edit script");
  distance_cmd->add_option("--formula-subset", distance.subset,
                           "Evaluate 2dn - d^2, given as \"n=<n> d=<d>\"");
  distance_cmd->add_flag("--json", distance.json_output, "Structured output");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Acceptance rate vs corruption sweep (CSV)");
  bench_cmd->add_option("--families", bench.families,
                        "family:param[:param] items, e.g. cyclic:12 random-magma:32")
      ->delimiter(',');
  bench_cmd->add_option("--k", bench.corruption, "Corruption levels")->delimiter(',');
  bench_cmd->add_option("--epsilon", bench.epsilon, "Distance parameter in (0,1)");
  bench_cmd->add_option("--trials", bench.trials, "Trials per row");
  bench_cmd->add_option("--seed", bench.seed, "Master seed");
  bench_cmd->add_option("--parallel", bench.parallel, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*test_cmd) {
      if (test.reports) test.json_output = true;
      return run_test(test);
    }
    if (*distance_cmd) {
      if (distance.subset.empty() && distance.inputs.empty()) {
        throw std::invalid_argument("distance needs input files or --formula-subset");
      }
      return run_distance(distance);
    }
    if (*bench_cmd) return run_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
