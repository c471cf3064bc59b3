// shiftlift: build and certify bipartite Ramanujan graphs by shift lifts.
//
// Exit codes: 0 pass/found, 1 fail/none, 2 input error, 3 budget exhausted.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shiftlift/shiftlift.hpp"

namespace sl = shiftlift;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

int exit_code(sl::SearchStatus s) {
  switch (s) {
    case sl::SearchStatus::found: return kExitPass;
    case sl::SearchStatus::none_pass: return kExitFail;
    case sl::SearchStatus::budget_exhausted: return kExitBudget;
  }
  return kExitFail;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw sl::InputError("not an integer list: '" + text + "'");
    }
  }
  return out;
}

struct Common {
  double epsilon = sl::kDefaultEpsilon;
  std::uint64_t budget = 10'000'000;
  double time_limit = 0.0;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string format = "json";
  std::string output;

  sl::SearchBudget search_budget() const {
    sl::SearchBudget b;
    b.max_assignments = budget;
    if (time_limit > 0.0) b.max_wall_seconds = time_limit;
    b.seed = seed;
    b.threads = threads;
    return b;
  }
};

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  sl::write_file(c.output, text);
}

void emit_json(const Common& c, const sl::Json& j) { emit(c, j.dump(2) + "\n"); }

void emit_graph(const Common& c, const sl::Graph& g) {
  if (c.format == "edgelist")
    emit(c, sl::to_edgelist(g));
  else
    emit_json(c, sl::to_json(g));
}

sl::Graph load_graph(const std::string& path) { return sl::parse_graph(sl::read_file(path)); }

sl::ShiftAssignment load_shifts(const std::string& path) {
  return sl::shifts_from_json(sl::read_json_file(path));
}

void add_epsilon(CLI::App* app, Common& c) {
  app->add_option("--epsilon", c.epsilon, "Certification slack above 2 sqrt(d-1)")
      ->check(CLI::NonNegativeNumber);
}

void add_search_flags(CLI::App* app, Common& c) {
  app->add_option("--budget", c.budget, "Maximum assignments examined");
  app->add_option("--time-limit", c.time_limit, "Wall-clock limit in seconds (0 = none)");
  app->add_option("--seed", c.seed, "Seed for the randomized strategy");
  app->add_option("--threads", c.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
}

void add_output(CLI::App* app, Common& c) {
  app->add_option("-o,--output", c.output, "Write to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and certify bipartite Ramanujan graphs via shift k-lifts"};
  app.require_subcommand(1);
  Common c;

  // generate
  auto* gen = app.add_subcommand("generate", "Write a standard graph");
  std::string family = "kdd";
  int size = 3;
  gen->add_option("family", family, "kdd | cycle | path | star")
      ->check(CLI::IsMember({"kdd", "cycle", "path", "star"}));
  gen->add_option("size", size, "d for kdd, vertex count for cycle/path, leaves for star");
  gen->add_option("--format", c.format, "json | edgelist")->check(CLI::IsMember({"json", "edgelist"}));
  add_output(gen, c);

  // lift
  auto* lift = app.add_subcommand("lift", "Expand a shift lift into an explicit graph");
  std::string graph_file, shifts_file;
  lift->add_option("graph", graph_file)->required();
  lift->add_option("shifts", shifts_file)->required();
  lift->add_option("--format", c.format)->check(CLI::IsMember({"json", "edgelist"}));
  add_output(lift, c);

  // verify
  auto* verify = app.add_subcommand("verify", "Ramanujan verdict for a regular bipartite graph");
  verify->add_option("graph", graph_file)->required();
  add_epsilon(verify, c);
  add_output(verify, c);

  // certify
  auto* certify = app.add_subcommand("certify", "Certify the new eigenvalues of a shift lift");
  certify->add_option("graph", graph_file)->required();
  certify->add_option("shifts", shifts_file)->required();
  add_epsilon(certify, c);
  add_output(certify, c);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Adjacency or quotient spectra");
  int root_power = -1;
  spectrum->add_option("graph", graph_file)->required();
  spectrum->add_option("shifts", shifts_file, "Optional shift assignment");
  spectrum->add_option("--root-power", root_power, "Quotient index i (default: all)");
  add_output(spectrum, c);

  // search
  auto* search = app.add_subcommand("search", "Search for a Ramanujan shift lift");
  int k = 3;
  std::string strategy = "auto";
  std::string b_file;
  search->add_option("graph", graph_file)->required();
  search->add_option("--k", k, "Lift order")->check(CLI::Range(2, 64));
  search->add_option("--strategy", strategy, "auto | exhaustive | random | greedy | two-step")
      ->check(CLI::IsMember({"auto", "exhaustive", "random", "greedy", "two-step"}));
  search->add_option("--b", b_file, "Signing b for greedy k=4 (found by search if omitted)");
  add_epsilon(search, c);
  add_search_flags(search, c);
  add_output(search, c);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Average char poly over the family vs matching poly");
  std::string mode = "k3";
  double tolerance = 1e-9;
  oracle->add_option("graph", graph_file)->required();
  oracle->add_option("--mode", mode, "k3 | k4")->check(CLI::IsMember({"k3", "k4"}));
  oracle->add_option("--b", b_file, "Signing b (shifts JSON with k=2) for k4");
  oracle->add_option("--tolerance", tolerance, "Relative residual accepted");
  oracle->add_option("--threads", c.threads)->check(CLI::PositiveNumber);
  add_output(oracle, c);

  // interlace
  auto* interlace = app.add_subcommand("interlace", "Branch real-rootedness / interlacing report");
  std::string prefix;
  int samples = sl::kDefaultInterlacingSamples;
  interlace->add_option("graph", graph_file)->required();
  interlace->add_option("--k", k, "3 or 4")->check(CLI::IsMember({3, 4}));
  interlace->add_option("--prefix", prefix, "Comma-separated fixed shifts");
  interlace->add_option("--b", b_file, "Signing b for k=4 (zero if omitted)");
  interlace->add_option("--samples", samples, "Grid points per simplex edge")->check(CLI::Range(2, 1000));
  add_output(interlace, c);

  // construct
  auto* construct = app.add_subcommand("construct", "Iterated lifts starting from K_{d,d}");
  int d = 3;
  std::string schedule = "3";
  std::string out_dir;
  construct->add_option("--d", d, "Degree")->check(CLI::PositiveNumber);
  construct->add_option("--schedule", schedule, "Comma-separated lift orders, e.g. 3,4");
  construct->add_option("--strategy", strategy,
                        "One strategy, or a comma list with one entry per stage");
  construct->add_option("--out-dir", out_dir, "Run directory for stage artifacts");
  add_epsilon(construct, c);
  add_search_flags(construct, c);
  add_output(construct, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*gen) {
      sl::Graph g;
      if (family == "kdd") g = sl::complete_bipartite(size);
      else if (family == "cycle") g = sl::with_computed_bipartition(sl::cycle_graph(size));
      else if (family == "path") g = sl::with_computed_bipartition(sl::path_graph(size));
      else g = sl::with_computed_bipartition(sl::star_graph(size));
      emit_graph(c, g);
      return kExitPass;
    }

    if (*lift) {
      emit_graph(c, sl::expand_lift(load_graph(graph_file), load_shifts(shifts_file)));
      return kExitPass;
    }

    if (*verify) {
      const auto v = sl::ramanujan_verdict(load_graph(graph_file), c.epsilon);
      emit_json(c, sl::to_json(v));
      return v.pass ? kExitPass : kExitFail;
    }

    if (*certify) {
      const auto cert = sl::certify_lift(load_graph(graph_file), load_shifts(shifts_file), c.epsilon);
      emit_json(c, sl::to_json(cert));
      return cert.pass ? kExitPass : kExitFail;
    }

    if (*spectrum) {
      const auto g = load_graph(graph_file);
      sl::Json out;
      if (shifts_file.empty()) {
        out["adjacency"] = sl::to_json(sl::hermitian_eigenvalues(sl::adjacency_matrix(g)));
      } else {
        const auto s = load_shifts(shifts_file);
        sl::Json quotients;
        for (int i = 0; i < s.k(); ++i)
          if (root_power < 0 || root_power == i)
            quotients[std::to_string(i)] = sl::to_json(sl::quotient_spectrum(g, s, i));
        out["quotients"] = std::move(quotients);
        out["new"] = sl::to_json(sl::new_eigenvalues(g, s));
      }
      emit_json(c, out);
      return kExitPass;
    }

    if (*search) {
      const auto g = load_graph(graph_file);
      sl::StagePlan st;
      st.k = k;
      st.strategy = sl::parse_strategy(strategy);
      st.budget = c.search_budget();
      if (st.strategy == sl::Strategy::greedy && !b_file.empty()) {
        if (k != 4) throw sl::InputError("--b only applies to k = 4");
        sl::GreedyOptions opt;
        opt.epsilon = c.epsilon;
        opt.limits.threads = c.threads;
        const auto r = sl::greedy_interlacing_search(g, sl::FamilyMode::k4, load_shifts(b_file), opt);
        emit_json(c, sl::to_json(r));
        return r.certificate.pass ? kExitPass : kExitFail;
      }
      st.budget.check();
      if (st.strategy == sl::Strategy::two_step && k != 4)
        throw sl::InputError("two-step applies to k = 4 only");
      if (st.strategy == sl::Strategy::greedy && k != 3 && k != 4)
        throw sl::InputError("greedy applies to k = 3 or 4");
      const auto r = sl::search_stage(g, st, c.epsilon);
      emit_json(c, r.report);
      return exit_code(r.status);
    }

    if (*oracle) {
      const auto g = load_graph(graph_file);
      const auto m = mode == "k3" ? sl::FamilyMode::k3 : sl::FamilyMode::k4;
      std::optional<sl::ShiftAssignment> b;
      if (m == sl::FamilyMode::k4) {
        if (b_file.empty()) throw sl::InputError("oracle --mode k4 needs --b");
        b = load_shifts(b_file);
      }
      sl::EnumerationLimits limits;
      limits.threads = c.threads;
      const auto cmp = sl::compare_with_matching(g, m, b, limits);
      auto j = sl::to_json(cmp);
      j["mode"] = mode;
      j["tolerance"] = tolerance;
      j["pass"] = cmp.relative_residual <= tolerance;
      emit_json(c, j);
      return cmp.relative_residual <= tolerance ? kExitPass : kExitFail;
    }

    if (*interlace) {
      const auto g = load_graph(graph_file);
      sl::PrefixNode node;
      node.mode = k == 3 ? sl::FamilyMode::k3 : sl::FamilyMode::k4;
      node.fixed_shifts = parse_int_list(prefix);
      if (!b_file.empty()) node.background = load_shifts(b_file);
      const auto report = sl::branch_interlacing_report(g, node, samples);
      emit_json(c, sl::to_json(report));
      return report.all_affirmative() ? kExitPass : kExitFail;
    }

    if (*construct) {
      sl::ConstructionPlan plan;
      plan.d = d;
      plan.epsilon = c.epsilon;
      const auto orders = parse_int_list(schedule);
      std::vector<std::string> strategies;
      {
        std::stringstream ss(strategy);
        std::string item;
        while (std::getline(ss, item, ',')) strategies.push_back(item);
      }
      if (strategies.size() != 1 && strategies.size() != orders.size())
        throw sl::InputError("--strategy needs one entry or one per stage");
      for (std::size_t i = 0; i < orders.size(); ++i) {
        sl::StagePlan st;
        st.k = orders[i];
        st.strategy = sl::parse_strategy(strategies.size() == 1 ? strategies[0] : strategies[i]);
        st.budget = c.search_budget();
        plan.stages.push_back(st);
      }
      const auto res = sl::run_construction(plan);
      sl::Json manifest;
      if (!out_dir.empty()) {
        manifest = sl::write_run_directory(res, out_dir);
      } else {
        manifest["complete"] = res.complete;
        sl::Json stages = sl::Json::array();
        for (const auto& rec : res.stages)
          stages.push_back({{"stage", rec.index},
                            {"k", rec.plan.k},
                            {"certificate", sl::to_json(rec.certificate)},
                            {"output_vertices", rec.output.n()},
                            {"output_verdict", sl::to_json(rec.output_verdict)}});
        manifest["stages"] = std::move(stages);
        if (res.failed_stage) {
          manifest["failed_stage"] = *res.failed_stage;
          manifest["failure_status"] = sl::to_string(res.failure_status);
          manifest["failure_report"] = res.failure_report;
        }
        manifest["final_graph"] = sl::to_json(res.final_graph);
      }
      emit_json(c, manifest);
      return res.complete ? kExitPass : exit_code(res.failure_status);
    }
  } catch (const sl::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
