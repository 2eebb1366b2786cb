#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "favard/deviance.hpp"
#include "favard/errors.hpp"
#include "favard/gauge.hpp"
#include "favard/line.hpp"
#include "favard/measure.hpp"
#include "favard/monte_carlo.hpp"
#include "favard/projection.hpp"
#include "favard/realization.hpp"
#include "favard/report_io.hpp"
#include "favard/schedule.hpp"

namespace {

using favard::Dyadic;
using ordered_json = nlohmann::ordered_json;

struct Options {
  std::string gauge;
  int depth = 16;
  int stages = 0;
  std::vector<int> ns;
  std::optional<double> alpha;
  std::optional<double> theta;
  double offset = 0.0;
  std::uint64_t trials = 10000;
  std::uint64_t mean_trials = 200;
  int grid = 256;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  std::uint64_t node_budget = favard::kDefaultNodeBudget;
  std::uint64_t trial_node_cap = favard::kDefaultTrialNodeCap;
  bool regularize = false;
};

std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("FAVARD_NODE_BUDGET")) {
    try {
      const unsigned long long v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "ignoring malformed FAVARD_NODE_BUDGET\n";
  }
  return favard::kDefaultNodeBudget;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--gauge", o.gauge, "gauge spec: power:a=, powerlog:a=,b=, table:@path")
      ->required();
  cmd->add_option("--depth", o.depth, "subdivision depth")->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "write the document to this file, summary to stdout");
}

void add_seeded(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--node-budget", o.node_budget, "eager build node budget");
}

void add_pruning(CLI::App* cmd, Options& o) {
  cmd->add_option("--stages", o.stages, "pruning stages to request")
      ->check(CLI::NonNegativeNumber);
}

/// Emits a run's document: to --out with a stdout summary, or to stdout.
void emit(const Options& o, const std::string& doc, ordered_json summary) {
  if (o.out.empty()) {
    std::cout << doc;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw favard::Error("cannot open output file: " + o.out);
  f << doc;
  f.close();
  summary["out"] = o.out;
  std::cout << summary.dump(2) << "\n";
}

favard::Line make_line(const Options& o) {
  if (o.alpha && o.theta) throw favard::Error("give either --alpha or --theta, not both");
  if (o.alpha) return favard::Line::from_direction(*o.alpha, o.offset);
  if (o.theta) return favard::Line::from_normal(*o.theta, o.offset);
  throw favard::Error("a line needs --alpha or --theta");
}

/// Parses and validates the gauge; a failed validation prints the report and
/// exits with code 2.  `need_regular` drops the scale-regularity requirement
/// for commands that repair it.
favard::GaugeSpec checked_gauge(const Options& o, bool need_regular = true) {
  const favard::GaugeSpec g = favard::GaugeSpec::parse(o.gauge);
  favard::ValidationReport report = favard::validate_gauge(g, o.depth);
  if (!need_regular) {
    std::erase_if(report.violations, [](const favard::GaugeViolation& v) {
      return v.what == favard::GaugeViolation::What::NotRegular;
    });
  }
  if (!report.pass()) {
    std::cout << favard::validation_json(g, report);
    std::exit(2);
  }
  return g;
}

int cmd_gauge(const Options& o) {
  if (o.regularize) {
    const favard::GaugeSpec g = checked_gauge(o, /*need_regular=*/false);
    const favard::RegularizeResult r = favard::regularize(g, o.depth);
    emit(o,
         o.format == "csv" ? favard::regularize_csv(g, r, o.depth)
                           : favard::regularize_json(g, r, o.depth),
         {{"command", "gauge"}, {"regularized", true},
          {"truncated_infimum", r.truncated_infimum}});
    return 0;
  }
  const favard::GaugeSpec g = checked_gauge(o);
  const favard::Schedule s = favard::derive_schedule(g, o.depth);
  const favard::DivergenceReport d = favard::divergence_report(s);
  emit(o, o.format == "csv" ? favard::schedule_csv(s) : favard::schedule_json(g, s, d),
       {{"command", "gauge"},
        {"trend", favard::to_string(d.trend)},
        {"c2", d.c2.fraction()}});
  return 0;
}

std::string squares_doc(const Options& o, const favard::SquareSet& fs, const Dyadic& mass) {
  if (o.format == "csv") {
    return "# retained_mass=" + mass.fraction() + "\n" + favard::squares_csv(fs);
  }
  ordered_json doc = ordered_json::parse(favard::squares_json(fs));
  doc["retained_mass"] = mass.fraction();
  return doc.dump(2) + "\n";
}

int cmd_build(const Options& o) {
  const favard::GaugeSpec g = checked_gauge(o);
  const favard::Schedule s = favard::derive_schedule(g, o.depth);
  const favard::Realization r(s, o.seed);
  const std::vector<favard::SquareSet> levels = r.build(o.depth, o.node_budget);
  const favard::SquareSet& fs = levels.back();
  const Dyadic mass = favard::mass_of(s, fs);
  emit(o, squares_doc(o, fs, mass),
       {{"command", "build"},
        {"level", fs.level()},
        {"count", fs.size()},
        {"retained_mass", mass.fraction()}});
  return 0;
}

int cmd_prune(const Options& o) {
  const favard::GaugeSpec g = checked_gauge(o);
  const favard::Schedule s = favard::derive_schedule(g, o.depth);
  const favard::DeviancePlan plan = favard::pruning_levels(s, o.stages);
  const favard::Realization r(s, o.seed);
  int applied = 0;
  const std::vector<favard::SquareSet> levels =
      favard::prune(r, plan, o.depth, o.node_budget, &applied);
  const favard::SquareSet& fs = levels.back();
  const Dyadic mass = favard::retained_mass(s, levels);
  const Dyadic bound = plan.retained_mass_lower_bound(applied);
  const favard::MassCheckReport check = favard::mass_distribution_check(g, s, o.depth);

  if (o.format == "csv") {
    emit(o, squares_doc(o, fs, mass),
         {{"command", "prune"},
          {"stages_applied", applied},
          {"retained_mass", mass.fraction()},
          {"retained_mass_bound", bound.fraction()}});
    return check.pass() ? 0 : 1;
  }
  ordered_json doc;
  doc["command"] = "prune";
  doc["gauge"] = g.describe();
  doc["depth"] = o.depth;
  doc["seed"] = o.seed;
  doc["stages_applied"] = applied;
  doc["plan"] = ordered_json::parse(favard::plan_json(plan));
  doc["mass_report"] = ordered_json::parse(favard::mass_check_json(check, mass, bound));
  doc["squares"] = ordered_json::parse(squares_doc(o, fs, mass));
  emit(o, doc.dump(2) + "\n",
       {{"command", "prune"},
        {"stages_applied", applied},
        {"retained_mass", mass.fraction()},
        {"retained_mass_bound", bound.fraction()}});
  return check.pass() ? 0 : 1;
}

int cmd_project(const Options& o) {
  if (!o.theta) throw favard::Error("projection needs --theta");
  const favard::GaugeSpec g = checked_gauge(o);
  const favard::Schedule s = favard::derive_schedule(g, o.depth);
  const favard::DeviancePlan plan = favard::pruning_levels(s, o.stages);
  const favard::Realization r(s, o.seed);
  const std::vector<favard::SquareSet> levels =
      favard::prune(r, plan, o.depth, o.node_budget);
  const favard::IntervalUnion u = favard::project_squares(levels.back(), *o.theta);
  ordered_json doc;
  doc["command"] = "project";
  doc["theta"] = *o.theta;
  doc["depth"] = o.depth;
  doc["seed"] = o.seed;
  doc["squares"] = levels.back().size();
  doc["interval_count"] = u.count();
  doc["total_length"] = u.total_length();
  ordered_json iv = ordered_json::array();
  for (const auto& [lo, hi] : u.intervals()) iv.push_back({lo, hi});
  doc["intervals"] = std::move(iv);
  if (o.format == "csv") {
    std::string csv = "lo,hi\n";
    for (const auto& [lo, hi] : u.intervals()) {
      csv += std::to_string(lo) + "," + std::to_string(hi) + "\n";
    }
    emit(o, csv, {{"command", "project"}, {"total_length", u.total_length()}});
  } else {
    emit(o, doc.dump(2) + "\n", {{"command", "project"}, {"total_length", u.total_length()}});
  }
  return 0;
}

int cmd_hitprob(const Options& o) {
  const favard::GaugeSpec g = checked_gauge(o);
  const favard::Schedule s = favard::derive_schedule(g, o.depth);
  const favard::DeviancePlan plan = favard::pruning_levels(s, o.stages);
  const favard::Line line = make_line(o);
  favard::HitProbOptions ho;
  ho.trials = o.trials;
  ho.master_seed = o.seed;
  ho.trial_node_cap = o.trial_node_cap;

  if (o.ns.size() > 1) {
    const std::vector<favard::DecayRow> rows = favard::decay_table(s, plan, line, o.ns, ho);
    emit(o, o.format == "csv" ? favard::decay_csv(rows) : favard::decay_json(rows),
         {{"command", "hitprob"}, {"rows", rows.size()}});
    return 0;
  }

  const favard::McReport rep =
      o.ns.empty() ? favard::hit_probability_mc_depth(s, plan, line, o.depth, ho)
                   : favard::hit_probability_mc(s, plan, line, o.ns.front(), ho);
  ordered_json doc = ordered_json::parse(favard::mc_report_json(rep));
  if (rep.bound) {
    doc["estimate_within_bound"] = rep.estimate <= *rep.bound;
    doc["ci_hi_within_bound"] = rep.ci_hi <= *rep.bound;
  }
  emit(o, doc.dump(2) + "\n",
       {{"command", "hitprob"}, {"estimate", rep.estimate}});
  return 0;
}

int cmd_favlen(const Options& o) {
  if (!o.theta) throw favard::Error("favlen needs --theta");
  const favard::GaugeSpec g = checked_gauge(o);
  const favard::Schedule s = favard::derive_schedule(g, o.depth);
  const favard::DeviancePlan plan = favard::pruning_levels(s, o.stages);
  favard::FavardOptions fo;
  fo.trials = o.trials;
  fo.master_seed = o.seed;
  fo.node_budget = o.node_budget;
  const favard::McReport rep = favard::favard_mc(s, plan, *o.theta, o.depth, fo);
  emit(o, favard::mc_report_json(rep), {{"command", "favlen"}, {"estimate", rep.estimate}});
  return 0;
}

int cmd_fubini(const Options& o) {
  if (!o.theta) throw favard::Error("fubini-check needs --theta");
  const favard::GaugeSpec g = checked_gauge(o);
  const favard::Schedule s = favard::derive_schedule(g, o.depth);
  const favard::DeviancePlan plan = favard::pruning_levels(s, o.stages);
  favard::FubiniOptions fo;
  fo.grid = o.grid;
  fo.trials_per_offset = o.trials;
  fo.mean_trials = o.mean_trials;
  fo.master_seed = o.seed;
  fo.trial_node_cap = o.trial_node_cap;
  fo.node_budget = o.node_budget;
  const favard::FubiniReport rep = favard::fubini_check(s, plan, *o.theta, o.depth, fo);
  emit(o, o.format == "csv" ? favard::fubini_csv(rep) : favard::fubini_json(rep),
       {{"command", "fubini-check"},
        {"agree", rep.agree},
        {"discrepancy", rep.discrepancy},
        {"tolerance", rep.tolerance}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  o.node_budget = default_node_budget();

  CLI::App app{"Random Cantor sets in the square: schedules, pruning, projections"};
  app.require_subcommand(1);

  CLI::App* gauge = app.add_subcommand("gauge", "derive and report the subdivision schedule");
  add_common(gauge, o);
  gauge->add_flag("--regularize", o.regularize, "emit the largest regular minorant instead");

  CLI::App* build = app.add_subcommand("build", "materialize one realization");
  add_common(build, o);
  add_seeded(build, o);

  CLI::App* prune = app.add_subcommand("prune", "build and drop deviant squares per stage");
  add_common(prune, o);
  add_seeded(prune, o);
  add_pruning(prune, o);

  CLI::App* project = app.add_subcommand("project", "project a pruned realization");
  add_common(project, o);
  add_seeded(project, o);
  add_pruning(project, o);
  project->add_option("--theta", o.theta, "projection direction angle");

  CLI::App* hitprob = app.add_subcommand("hitprob", "Monte Carlo line-hitting probability");
  add_common(hitprob, o);
  add_seeded(hitprob, o);
  add_pruning(hitprob, o);
  hitprob->add_option("--n", o.ns, "pruning index (repeat for a decay table)");
  hitprob->add_option("--alpha", o.alpha, "line direction angle");
  hitprob->add_option("--theta", o.theta, "line normal angle");
  hitprob->add_option("--offset", o.offset, "line offset");
  hitprob->add_option("--trials", o.trials, "Monte Carlo trials");
  hitprob->add_option("--trial-node-cap", o.trial_node_cap, "per-trial node cap");

  CLI::App* favlen = app.add_subcommand("favlen", "Monte Carlo expected projection length");
  add_common(favlen, o);
  add_seeded(favlen, o);
  add_pruning(favlen, o);
  favlen->add_option("--theta", o.theta, "projection direction angle");
  favlen->add_option("--trials", o.trials, "Monte Carlo trials")->default_val(200);

  CLI::App* fubini = app.add_subcommand("fubini-check", "mean length vs offset integral");
  add_common(fubini, o);
  add_seeded(fubini, o);
  add_pruning(fubini, o);
  fubini->add_option("--theta", o.theta, "projection direction angle");
  fubini->add_option("--trials", o.trials, "trials per offset")->default_val(200);
  fubini->add_option("--mean-trials", o.mean_trials, "realizations for the mean estimate");
  fubini->add_option("--grid", o.grid, "offset grid points")->check(CLI::PositiveNumber);
  fubini->add_option("--trial-node-cap", o.trial_node_cap, "per-trial node cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gauge->parsed()) return cmd_gauge(o);
    if (build->parsed()) return cmd_build(o);
    if (prune->parsed()) return cmd_prune(o);
    if (project->parsed()) return cmd_project(o);
    if (hitprob->parsed()) return cmd_hitprob(o);
    if (favlen->parsed()) return cmd_favlen(o);
    if (fubini->parsed()) return cmd_fubini(o);
  } catch (const favard::GaugeError& e) {
    std::cerr << "gauge error: " << e.what() << "\n";
    return 2;
  } catch (const favard::VertexError& e) {
    ordered_json err{{"error", e.what()}, {"suggested_offset", e.suggested_offset}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "vertex-unsafe line: " << e.what()
              << " (suggested offset: " << e.suggested_offset << ")\n";
    return 3;
  } catch (const favard::BudgetError& e) {
    std::cerr << "budget exceeded at level " << e.offending_level << ": " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
