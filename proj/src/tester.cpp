#include "solv/tester.hpp"

#include <algorithm>
#include <cmath>

namespace solv {

using nlohmann::json;

std::uint64_t ceil_count(double x) {
  const double nearest = std::round(x);
  if (std::fabs(x - nearest) <= 1e-9 * std::max(1.0, std::fabs(x))) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(x));
}

void TesterConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (!(s_factor > 0.0) || !(c1_numerator > 0.0) || !(c2_numerator > 0.0)) {
    throw std::invalid_argument("sample-size constants must be positive");
  }
  if (index_cap < 1) throw std::invalid_argument("index cap must be positive");
}

std::uint64_t TesterConfig::sample_count(std::size_t n) const {
  return std::max<std::uint64_t>(1, ceil_count(s_factor * std::log2(static_cast<double>(n))));
}

std::uint64_t TesterConfig::c1() const {
  return std::max<std::uint64_t>(1, ceil_count(c1_numerator / epsilon));
}

std::uint64_t TesterConfig::c2() const {
  return std::max<std::uint64_t>(1, ceil_count(c2_numerator * kEtaDivisor / epsilon));
}

const char* step_label(Step step) {
  switch (step) {
    case Step::kNone: return "none";
    case Step::k2: return "2";
    case Step::k3: return "3";
    case Step::k4: return "4";
    case Step::k5a: return "5a";
    case Step::k5b: return "5b";
    case Step::k6: return "6";
    case Step::k7: return "7";
  }
  return "?";
}

ElementId psi_eval(MagmaOracle& oracle, const PsiMap& psi, const ExponentVector& v) {
  return psi_product(oracle, psi.h, psi.anchor(), v);
}

bool membership_check(ElementId g, const FactorizationIndex& index, const PsiMap& psi,
                      MagmaOracle& oracle) {
  const auto v = decompose(g, index, psi.h.size());
  return v && psi_eval(oracle, psi, *v) == g;
}

std::uint64_t psi_query_cost(const PsiMap& psi, const ExponentVector& v) {
  auto power_cost = [&](std::uint32_t a) {
    return pow_right_cost(a == 0 ? psi.m.at(0) : a);
  };
  std::uint64_t cost = 0;
  for (std::size_t k = 1; k <= v.level(); ++k) cost += power_cost(v[k]);
  return cost + (v.level() - 1);
}

std::uint64_t sampling_query_bound(std::uint64_t c1, std::uint64_t c2, std::size_t t,
                                   std::uint32_t max_m, std::uint64_t n) {
  const auto log_term = static_cast<std::uint64_t>(
      std::ceil(std::log2(static_cast<double>(max_m) * static_cast<double>(n))));
  return (c1 + c2) * (2 * t + 2) * log_term;
}

namespace {

void finish_queries(TesterReport& report, const QueryCounter& counter) {
  report.queries_total = counter.total();
  report.queries.clear();
  for (std::size_t p = 0; p < static_cast<std::size_t>(Phase::kCount); ++p) {
    report.queries.emplace_back(static_cast<Phase>(p), counter.phase(static_cast<Phase>(p)));
  }
}

}  // namespace

TesterReport run_tester(const TableMagma& magma, const TesterConfig& cfg) {
  cfg.validate();
  QueryCounter counter;
  MagmaOracle oracle(magma, counter);
  Rng rng(cfg.seed);
  const std::size_t n = magma.size();

  TesterReport report;
  report.n = n;
  report.epsilon = cfg.epsilon;
  report.seed = cfg.seed;
  report.samples = cfg.sample_count(n);
  report.c1 = cfg.c1();
  report.c2 = cfg.c2();

  auto reject = [&](Step step, std::string reason) {
    report.accept = false;
    report.reject_step = step;
    report.reason = std::move(reason);
    finish_queries(report, counter);
    return report;
  };

  // Steps 1-2, redrawn when the draw does not generate all of the magma.
  const std::size_t closure_cap = cfg.closure_cap ? cfg.closure_cap : 2 * n;
  DecompositionResult decomposition;
  for (std::size_t attempt = 0; attempt <= cfg.amplification; ++attempt) {
    std::vector<ElementId> generators(report.samples);
    for (auto& g : generators) g = sample_uniform(n, rng);
    {
      PhaseScope scope(oracle, Phase::kDecomposition);
      decomposition = find_polycyclic_series(generators, oracle, closure_cap);
    }
    ++report.attempts;
    if (decomposition.success && decomposition.order() == n) break;
  }
  report.decomposition = decomposition;
  if (!decomposition.success) return reject(Step::k2, decomposition.failure);
  const std::vector<ElementId>& h = decomposition.h;
  const std::vector<std::uint32_t>& m = decomposition.m;
  const PsiMap psi{h, m};

  // Step 3.
  {
    PhaseScope scope(oracle, Phase::kPeriod);
    for (ElementId hi : h) {
      const auto period = find_period(hi, oracle, n);
      if (!period) return reject(Step::k3, "no period found for anchor " + std::to_string(hi));
      report.periods.push_back(*period);
    }
  }

  // Step 4.
  std::optional<FactorizationIndex> index;
  {
    PhaseScope scope(oracle, Phase::kRelations);
    index = build_factorization_index(h, m, oracle, cfg.index_cap);
    if (!index) return reject(Step::k4, "factorization index exceeds cap");
    for (std::size_t level = 1; level <= index->levels(); ++level) {
      report.index_collisions.push_back(index->collisions(level));
    }
    RelationOutcome outcome = extract_and_verify_relations(h, m, report.periods, *index, oracle);
    if (!outcome.relations) return reject(Step::k4, outcome.failure);
    report.relations = std::move(outcome.relations);
  }

  // Step 5a.
  if (decomposition.order() != n) {
    return reject(Step::k5a, "|magma| = " + std::to_string(n) + " but prod m_i = " +
                                 std::to_string(decomposition.order()));
  }

  // Step 5b.
  {
    PhaseScope scope(oracle, Phase::kEmbedding);
    for (std::uint64_t i = 0; i < report.c1; ++i) {
      const ElementId g = sample_uniform(n, rng);
      ++report.membership_checks;
      if (cfg.record_samples) report.sampled_elements.push_back(g);
      if (!membership_check(g, *index, psi, oracle)) {
        return reject(Step::k5b, "element " + std::to_string(g) + " is not in H_t");
      }
    }
  }

  // Step 6.
  PcPresentation presentation(report.relations->to_presentation());
  report.consistency = check_consistency(presentation);
  if (!report.consistency->passed) {
    return reject(Step::k6, report.consistency->levels.back().describe());
  }

  // Step 7.
  {
    PhaseScope scope(oracle, Phase::kHomomorphism);
    const std::size_t t = presentation.t();
    const std::uint64_t order = presentation.order(t);
    std::uniform_int_distribution<std::uint64_t> pick(0, order - 1);
    for (std::uint64_t i = 0; i < report.c2; ++i) {
      const std::uint64_t x = pick(rng), y = pick(rng);
      const std::uint64_t xy = presentation.product_rank(t, x, y);
      ++report.pair_checks;
      if (cfg.record_samples) report.sampled_pairs.emplace_back(x, y);
      const ElementId lhs = psi_eval(oracle, psi, presentation.unrank(t, xy));
      const ElementId px = psi_eval(oracle, psi, presentation.unrank(t, x));
      const ElementId py = psi_eval(oracle, psi, presentation.unrank(t, y));
      if (lhs != oracle.product(px, py)) {
        ++report.pair_failures;
        return reject(Step::k7, "psi(x o y) != psi(x) psi(y) for x = " +
                                    presentation.unrank(t, x).str() +
                                    ", y = " + presentation.unrank(t, y).str());
      }
    }
  }

  report.accept = true;
  finish_queries(report, counter);
  return report;
}

json report_to_json(const TesterReport& r) {
  json doc;
  doc["verdict"] = r.accept ? "accept" : "reject";
  doc["reject_step"] = r.accept ? json(nullptr) : json(step_label(r.reject_step));
  doc["reason"] = r.reason;
  doc["n"] = r.n;
  doc["epsilon"] = r.epsilon;
  doc["seed"] = r.seed;
  doc["samples"] = r.samples;
  doc["attempts"] = r.attempts;
  doc["c1"] = r.c1;
  doc["c2"] = r.c2;
  if (r.decomposition && r.decomposition->success) {
    doc["decomposition"] = {{"h", r.decomposition->h}, {"m", r.decomposition->m}};
  } else {
    doc["decomposition"] = nullptr;
  }
  doc["periods"] = r.periods;
  doc["index_collisions"] = r.index_collisions;
  doc["relations"] =
      r.relations ? relations_to_json(r.relations->to_presentation()) : json(nullptr);
  if (r.consistency) {
    json levels = json::array();
    for (const auto& level : r.consistency->levels) {
      json entry{{"level", level.level}, {"a", level.a}};
      entry["b"] = level.b ? json(*level.b) : json(nullptr);
      entry["c"] = level.c ? json(*level.c) : json(nullptr);
      if (!level.passed()) {
        entry["witness"] = {{"i", level.witness_i}, {"k", level.witness_k}};
      }
      levels.push_back(std::move(entry));
    }
    doc["consistency"] = std::move(levels);
  } else {
    doc["consistency"] = nullptr;
  }
  doc["membership_checks"] = r.membership_checks;
  doc["pair_checks"] = r.pair_checks;
  doc["pair_failures"] = r.pair_failures;
  json queries = json::object();
  for (const auto& [phase, calls] : r.queries) queries[phase_name(phase)] = calls;
  doc["queries"] = {{"total", r.queries_total}, {"by_phase", std::move(queries)}};
  return doc;
}

}  // namespace solv
