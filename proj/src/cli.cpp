// Copyright 2026 The thermodec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thermodec/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>

#include <fmt/format.h>

#include <CLI11.hpp>

#include "thermodec/control.hpp"
#include "thermodec/errors.hpp"
#include "thermodec/lottery.hpp"
#include "thermodec/result_table.hpp"
#include "thermodec/satisficing.hpp"
#include "thermodec/scenario.hpp"
#include "thermodec/tree.hpp"

namespace thermodec {

namespace {

// Monte Carlo searches per row of the satisfice table.
constexpr std::size_t kMonteCarloDraws = 4000;

struct Options {
  std::string in;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string betas;
  double cost = 0.0;
  int mmax = 0;
  std::string mode;
};

double parse_double(const std::string& s, const std::string& what) {
  double x = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(x)) {
    throw ParameterError(fmt::format("--betas: cannot read {} '{}'", what, s));
  }
  return x;
}

ResultTable start_table(std::vector<std::string> headers, const char* command,
                        const ScenarioFile& scenario, const Options& opt) {
  ResultTable table(std::move(headers));
  table.add_metadata("tool", kToolVersion);
  table.add_metadata("command", command);
  const auto seed = opt.seed ? opt.seed : scenario.seed;
  table.add_metadata("seed", seed ? std::to_string(*seed) : "none");
  table.add_metadata("scenario_sha256", scenario_hash(scenario));
  return table;
}

std::uint64_t effective_seed(const ScenarioFile& scenario, const Options& opt) {
  return opt.seed.value_or(scenario.seed.value_or(0));
}

void solve_lottery(const Options& opt) {
  const auto scenario = load_scenario(opt.in, ScenarioKind::kLottery);
  const auto& lot = std::get<LotteryScenario>(scenario.payload).lottery;
  const auto eq = equilibrium(lot);
  auto table = start_table({"outcome", "p0", "U", "posterior"}, "solve-lottery", scenario, opt);
  for (std::size_t i = 0; i < lot.size(); ++i) {
    table.add_row({lot.outcomes().label(i), lot.prior()[i], lot.utility()[i], eq.posterior[i]});
  }
  table.add_row({std::string("logZ"), eq.log_partition, std::monostate{}, std::monostate{}});
  table.add_row({std::string("certainty_equivalent"), eq.certainty_equivalent, std::monostate{},
                 std::monostate{}});
  table.write_csv(opt.out);
}

void sweep_beta(const Options& opt) {
  const auto betas = parse_beta_grid(opt.betas);
  const auto scenario = load_scenario(opt.in, ScenarioKind::kLottery);
  const auto& lot = std::get<LotteryScenario>(scenario.payload).lottery;
  std::vector<std::string> headers{"beta", "certainty_equivalent", "logZ"};
  for (const auto& label : lot.outcomes().labels()) headers.push_back("posterior_" + label);
  auto table = start_table(std::move(headers), "sweep-beta", scenario, opt);
  for (double beta : betas) {
    const auto eq = equilibrium(lot.with_beta(beta));
    std::vector<Cell> row{beta, eq.certainty_equivalent, eq.log_partition};
    for (std::size_t i = 0; i < lot.size(); ++i) row.emplace_back(eq.posterior[i]);
    table.add_row(std::move(row));
  }
  table.write_csv(opt.out);
}

void satisfice(const Options& opt, bool monte_carlo) {
  const auto scenario = load_scenario(opt.in, ScenarioKind::kSatisfice);
  const auto& source = std::get<SatisficeScenario>(scenario.payload).source;
  const auto best = optimal_sample_size(source, opt.cost, opt.mmax);
  std::vector<std::string> headers{"M", "draws", "expected_max", "penalized_value", "p_top",
                                   "optimal"};
  if (monte_carlo) headers.emplace_back("mc_expected_max");
  auto table = start_table(std::move(headers), "satisfice", scenario, opt);
  const std::uint64_t seed = effective_seed(scenario, opt);
  for (int m = 0; m <= opt.mmax; ++m) {
    const double e = expected_max(source, m + 1);
    const auto pmf = max_pmf(source, m + 1);
    std::vector<Cell> row{static_cast<long long>(m), static_cast<long long>(m + 1), e,
                          e - m * opt.cost, pmf[pmf.size() - 1],
                          static_cast<long long>(m == best.extra_draws ? 1 : 0)};
    if (monte_carlo) {
      const auto freq = sample_max_frequencies(source, m + 1, kMonteCarloDraws,
                                               seed + static_cast<std::uint64_t>(m));
      row.emplace_back(std::inner_product(freq.begin(), freq.end(), source.support().begin(), 0.0));
    }
    table.add_row(std::move(row));
  }
  table.write_csv(opt.out);
}

void gibbs_vs_max(const Options& opt) {
  const auto scenario = load_scenario(opt.in, ScenarioKind::kSatisfice);
  const auto& s = std::get<SatisficeScenario>(scenario.payload);
  const auto reference = s.reference ? *s.reference : ProbabilityVector::uniform(s.source.size());
  std::vector<int> alphas(opt.mmax);
  std::iota(alphas.begin(), alphas.end(), 1);
  const auto d = gibbs_vs_max_distance(reference, s.source.pmf(), alphas);
  const auto fit = fit_exponential_decay(alphas, d);
  auto table = start_table({"alpha", "distance", "bound"}, "gibbs-vs-max", scenario, opt);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    table.add_row({static_cast<long long>(alphas[i]), d[i], fit.bound(alphas[i])});
  }
  table.add_row({std::string("slope"), fit.slope, std::monostate{}});
  table.add_row({std::string("intercept"), fit.intercept, std::monostate{}});
  table.add_row({std::string("r_squared"), fit.r_squared, std::monostate{}});
  table.add_row({std::string("delta"), fit.delta, std::monostate{}});
  table.add_row({std::string("xi"), fit.xi, std::monostate{}});
  table.write_csv(opt.out);
}

void solve_tree_command(const Options& opt) {
  const auto scenario = load_scenario(opt.in, ScenarioKind::kTree);
  const auto& tree = std::get<TreeScenario>(scenario.payload).tree;
  const auto solved = solve_tree(tree);
  auto table = start_table({"node", "parent", "label", "kind", "beta", "prior", "reward",
                            "policy", "value", "logZ"},
                           "solve-tree", scenario, opt);
  for (NodeId id = 0; id < tree.size(); ++id) {
    const auto& n = tree.node(id);
    std::vector<Cell> row{static_cast<long long>(id)};
    if (n.parent) {
      const auto& siblings = tree.node(*n.parent).children;
      const auto pos = std::find(siblings.begin(), siblings.end(), id) - siblings.begin();
      row.insert(row.end(), {static_cast<long long>(*n.parent), n.label});
      if (n.is_leaf()) {
        row.insert(row.end(), {std::monostate{}, std::monostate{}});
      } else {
        row.insert(row.end(), {std::string(to_string(n.kind)), n.beta});
      }
      row.insert(row.end(), {n.prior, n.reward, solved.nodes[*n.parent].policy[pos]});
    } else {
      row.insert(row.end(), {std::monostate{}, std::monostate{}, std::string(to_string(n.kind)),
                             n.beta, std::monostate{}, std::monostate{}, std::monostate{}});
    }
    row.insert(row.end(), {solved.nodes[id].value, solved.nodes[id].log_z});
    table.add_row(std::move(row));
  }
  table.write_csv(opt.out);
}

double need(const std::optional<double>& v, const char* field, const std::string& mode) {
  if (!v) throw ScenarioError(std::string("/") + field, "required by --mode " + mode);
  return *v;
}

void solve_mdp(const Options& opt) {
  const auto scenario = load_scenario(opt.in, ScenarioKind::kMdp);
  const auto& s = std::get<MdpScenario>(scenario.payload);
  const auto& mdp = s.mdp;
  ControlSolution sol;
  const bool over_states = opt.mode == "kl";
  if (opt.mode == "kl") {
    sol = kl_control_z_iteration(mdp, need(s.beta, "beta", opt.mode));
  } else if (opt.mode == "bellman") {
    sol = bellman_value_iteration(mdp);
  } else if (opt.mode == "risk") {
    sol = risk_sensitive_value(mdp, need(s.beta_obs, "beta_obs", opt.mode));
  } else if (opt.mode == "robust") {
    sol = robust_minimax_value(mdp);
  } else {
    sol = bounded_rational_control(mdp, need(s.beta_action, "beta_action", opt.mode),
                                   need(s.beta_obs, "beta_obs", opt.mode));
  }
  auto table = start_table({"stage", "state", "value", "choice", "probability"}, "solve-mdp",
                           scenario, opt);
  table.add_metadata("mode", opt.mode);
  for (int t = 0; t <= mdp.horizon; ++t) {
    for (std::size_t st = 0; st < mdp.num_states(); ++st) {
      const Cell stage = static_cast<long long>(t);
      const Cell state = mdp.states[st];
      const double v = sol.value[t][st];
      if (t == mdp.horizon) {
        table.add_row({stage, state, v, std::monostate{}, std::monostate{}});
        continue;
      }
      const auto& policy = sol.policy[t][st];
      for (std::size_t c = 0; c < policy.size(); ++c) {
        const std::string choice = over_states ? mdp.states[c] : mdp.action_labels[st][c];
        table.add_row({stage, state, v, choice, policy[c]});
      }
    }
  }
  table.write_csv(opt.out);
}

CLI::App* add_subcommand(CLI::App& app, Options& opt, const char* name, const char* help) {
  auto* sub = app.add_subcommand(name, help);
  sub->add_option("--in", opt.in, "scenario file (JSON)")->required();
  sub->add_option("--out", opt.out, "result file (CSV)")->required();
  sub->add_option("--seed", opt.seed, "64-bit seed, overrides the scenario seed");
  return sub;
}

}  // namespace

std::vector<double> parse_beta_grid(const std::string& grid) {
  const auto first = grid.find(':');
  const auto second = first == std::string::npos ? first : grid.find(':', first + 1);
  if (second == std::string::npos || grid.find(':', second + 1) != std::string::npos) {
    throw ParameterError(fmt::format("--betas: expected start:stop:count, got '{}'", grid));
  }
  const double start = parse_double(grid.substr(0, first), "start");
  const double stop = parse_double(grid.substr(first + 1, second - first - 1), "stop");
  const std::string count_text = grid.substr(second + 1);
  long long count = 0;
  const auto [ptr, ec] =
      std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (count_text.empty() || ec != std::errc() || ptr != count_text.data() + count_text.size() ||
      count < 1 || count > 1000000) {
    throw ParameterError(fmt::format("--betas: count must be an integer in 1..1000000, got '{}'",
                                     count_text));
  }
  if (count == 1) {
    if (start != stop) throw ParameterError("--betas: a single point needs start == stop");
    return {start};
  }
  std::vector<double> points(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    points[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  points.back() = stop;
  return points;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Bounded-rational decision making: equilibria, sampling and control", "thermodec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto* lottery = add_subcommand(app, opt, "solve-lottery", "Gibbs equilibrium of a lottery");
  auto* sweep = add_subcommand(app, opt, "sweep-beta", "certainty equivalent over a beta grid");
  sweep->add_option("--betas", opt.betas, "inclusive grid start:stop:count")->required();
  auto* sat = add_subcommand(app, opt, "satisfice", "optimal number of samples under a cost");
  sat->add_option("--cost", opt.cost, "cost per extra sample")->required();
  opt.mmax = 200;
  sat->add_option("--mmax", opt.mmax, "largest number of extra samples searched (default 200)");
  auto* gvm = add_subcommand(app, opt, "gibbs-vs-max", "Gibbs vs max-of-draws distance");
  auto* gvm_alpha = gvm->add_option("--mmax", opt.mmax, "largest alpha (default 60)");
  auto* tree = add_subcommand(app, opt, "solve-tree", "backward recursion on a decision tree");
  auto* mdp = add_subcommand(app, opt, "solve-mdp", "finite-horizon control");
  mdp->add_option("--mode", opt.mode, "kl, bellman, risk, robust or bounded")
      ->required()
      ->check(CLI::IsMember({"kl", "bellman", "risk", "robust", "bounded"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    std::ostringstream diag;
    const int code = app.exit(e, help, diag);
    out << help.str();
    err << diag.str();
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (lottery->parsed()) {
      solve_lottery(opt);
    } else if (sweep->parsed()) {
      sweep_beta(opt);
    } else if (sat->parsed()) {
      satisfice(opt, opt.seed.has_value());
    } else if (gvm->parsed()) {
      if (gvm_alpha->count() == 0) opt.mmax = 60;
      if (opt.mmax < 2) throw ParameterError("--mmax must be at least 2");
      gibbs_vs_max(opt);
    } else if (tree->parsed()) {
      solve_tree_command(opt);
    } else if (mdp->parsed()) {
      solve_mdp(opt);
    }
  } catch (const DiagnosticError& e) {
    err << "thermodec: diagnostic: " << e.what() << '\n';
    return kExitDiagnostic;
  } catch (const std::exception& e) {
    err << "thermodec: error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace thermodec
