#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "shiftlift/digest.hpp"
#include "shiftlift/graph.hpp"
#include "shiftlift/interlacing.hpp"
#include "shiftlift/io.hpp"
#include "shiftlift/lift.hpp"
#include "shiftlift/search.hpp"
#include "shiftlift/spectral.hpp"

namespace shiftlift {

/// How one lift stage looks for its shift assignment.
enum class Strategy { automatic, exhaustive, random, greedy, two_step };

inline Strategy parse_strategy(const std::string& s) {
  if (s == "auto") return Strategy::automatic;
  if (s == "exhaustive") return Strategy::exhaustive;
  if (s == "random") return Strategy::random;
  if (s == "greedy") return Strategy::greedy;
  if (s == "two-step") return Strategy::two_step;
  throw InputError("unknown strategy '" + s + "'");
}

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::automatic: return "auto";
    case Strategy::exhaustive: return "exhaustive";
    case Strategy::random: return "random";
    case Strategy::greedy: return "greedy";
    case Strategy::two_step: return "two-step";
  }
  return "?";
}

struct StagePlan {
  int k = 2;
  Strategy strategy = Strategy::automatic;
  SearchBudget budget;
};

/// Start from K_{d,d}, then apply one shift lift per schedule entry.
struct ConstructionPlan {
  int d = 3;
  std::vector<StagePlan> stages;
  double epsilon = kDefaultEpsilon;

  void check() const {
    if (d < 1) throw InputError("construction plan: degree must be >= 1");
    if (stages.empty()) throw InputError("construction plan: empty schedule");
    for (const auto& st : stages) {
      if (st.k < 2 || st.k > 4) throw InputError("construction plan: lift orders must be 2, 3 or 4");
      if (st.strategy == Strategy::two_step && st.k != 4)
        throw InputError("construction plan: two-step applies to k = 4 only");
      if (st.strategy == Strategy::greedy && st.k == 2)
        throw InputError("construction plan: greedy applies to k = 3 or 4");
      st.budget.check();
    }
  }

  long long target_vertices() const {
    long long n = 2LL * d;
    for (const auto& st : stages) n *= st.k;
    return n;
  }
};

/// Result of searching for one stage's assignment.
struct StageSearch {
  SearchStatus status = SearchStatus::none_pass;
  std::optional<Certificate> certificate;
  Json report;
};

inline StageSearch search_stage(const Graph& g, const StagePlan& st, double epsilon,
                                const StrategyThresholds& thresholds = {}) {
  StageSearch out;
  const SearchSpace plain{st.k, std::nullopt, std::nullopt};
  auto from_outcome = [&](const SearchOutcome& o) {
    out.status = o.status;
    out.certificate = o.certificate;
    out.report = to_json(o);
  };
  switch (st.strategy) {
    case Strategy::automatic:
      from_outcome(auto_search(g, plain, epsilon, st.budget, thresholds));
      break;
    case Strategy::exhaustive:
      from_outcome(exhaustive_search(g, plain, epsilon, st.budget));
      break;
    case Strategy::random:
      from_outcome(random_search(g, plain, epsilon, st.budget));
      break;
    case Strategy::two_step: {
      const auto o = two_step_4lift(g, epsilon, st.budget, thresholds);
      out.report = to_json(o);
      out.certificate = o.certificate;
      if (o.found()) out.status = SearchStatus::found;
      else out.status = o.failed_step == 1 ? o.step1.status : o.step2->status;
      break;
    }
    case Strategy::greedy: {
      std::optional<ShiftAssignment> b;
      Json step1;
      if (st.k == 4) {
        const auto o = auto_search(g, SearchSpace{2, std::nullopt, std::nullopt}, epsilon,
                                   st.budget, thresholds);
        step1 = to_json(o);
        if (!o.found()) {
          out.status = o.status;
          out.report = {{"strategy", "greedy"}, {"step1", step1}};
          return out;
        }
        b = o.certificate->assignment;
      }
      GreedyOptions opt;
      opt.epsilon = epsilon;
      opt.limits.threads = st.budget.threads;
      const auto r = greedy_interlacing_search(
          g, st.k == 3 ? FamilyMode::k3 : FamilyMode::k4, b, opt);
      out.report = to_json(r);
      if (st.k == 4) out.report["step1"] = step1;
      out.certificate = r.certificate;
      out.status = r.certificate.pass ? SearchStatus::found : SearchStatus::none_pass;
      break;
    }
  }
  if (out.certificate && !out.certificate->pass) out.certificate.reset();
  return out;
}

struct StageRecord {
  int index = 0;
  StagePlan plan;
  Graph input;
  Certificate certificate;
  Graph output;
  BaseVerdict output_verdict;
  Json search_report;
};

struct ConstructionResult {
  ConstructionPlan plan;
  Graph base;
  std::vector<StageRecord> stages;  // completed stages
  Graph final_graph;
  bool complete = false;
  std::optional<int> failed_stage;
  SearchStatus failure_status = SearchStatus::found;
  Json failure_report;
};

/// Runs the lift schedule from K_{d,d}; halts at the first stage whose search
/// fails, keeping the partial chain.
inline ConstructionResult run_construction(const ConstructionPlan& plan,
                                           const StrategyThresholds& thresholds = {}) {
  plan.check();
  ConstructionResult res;
  res.plan = plan;
  res.base = complete_bipartite(plan.d);
  Graph current = res.base;
  for (std::size_t i = 0; i < plan.stages.size(); ++i) {
    const auto& st = plan.stages[i];
    auto found = search_stage(current, st, plan.epsilon, thresholds);
    if (!found.certificate) {
      res.failed_stage = static_cast<int>(i);
      res.failure_status = found.status;
      res.failure_report = std::move(found.report);
      res.final_graph = current;
      return res;
    }
    StageRecord rec;
    rec.index = static_cast<int>(i);
    rec.plan = st;
    rec.input = current;
    rec.certificate = *found.certificate;
    rec.output = expand_lift(current, rec.certificate.assignment);
    rec.output_verdict = ramanujan_verdict(rec.output, plan.epsilon);
    rec.search_report = std::move(found.report);
    if (!rec.output_verdict.pass) {
      // A passing certificate with a failing lift means the two routes
      // disagree numerically; stop rather than build on it.
      res.failed_stage = static_cast<int>(i);
      res.failure_status = SearchStatus::none_pass;
      res.failure_report = {{"error", "lifted graph failed revalidation"},
                            {"verdict", to_json(rec.output_verdict)}};
      res.final_graph = current;
      return res;
    }
    current = rec.output;
    res.stages.push_back(std::move(rec));
  }
  res.final_graph = current;
  res.complete = true;
  return res;
}

/// Writes every stage artifact under a content-hash filename plus a
/// chain.json manifest tying them together. Returns the manifest.
inline Json write_run_directory(const ConstructionResult& res, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto store = [&](const Json& j, const std::string& kind) {
    const std::string text = j.dump(2) + "\n";
    const std::string name = sha256_hex(text).substr(0, 16) + "." + kind + ".json";
    write_file((dir / name).string(), text);
    return name;
  };

  Json manifest;
  manifest["d"] = res.plan.d;
  Json schedule = Json::array();
  for (const auto& st : res.plan.stages) schedule.push_back(st.k);
  manifest["schedule"] = std::move(schedule);
  manifest["epsilon"] = res.plan.epsilon;
  manifest["base_graph"] = store(to_json(res.base), "graph");
  Json stages = Json::array();
  for (const auto& rec : res.stages) {
    Json s;
    s["stage"] = rec.index;
    s["k"] = rec.plan.k;
    s["strategy"] = to_string(rec.plan.strategy);
    s["input_graph"] = store(to_json(rec.input), "graph");
    s["shifts"] = store(to_json(rec.certificate.assignment), "shifts");
    s["certificate"] = store(to_json(rec.certificate), "cert");
    s["output_graph"] = store(to_json(rec.output), "graph");
    s["output_vertices"] = rec.output.n();
    s["output_verdict"] = to_json(rec.output_verdict);
    s["search"] = rec.search_report;
    stages.push_back(std::move(s));
  }
  manifest["stages"] = std::move(stages);
  manifest["complete"] = res.complete;
  if (res.failed_stage) {
    manifest["failed_stage"] = *res.failed_stage;
    manifest["failure_status"] = to_string(res.failure_status);
    manifest["failure_report"] = res.failure_report;
  }
  manifest["final_graph"] = store(to_json(res.final_graph), "graph");
  write_file((dir / "chain.json").string(), manifest.dump(2) + "\n");
  return manifest;
}

}  // namespace shiftlift
