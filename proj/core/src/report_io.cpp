#include "favard/report_io.hpp"

#include <charconv>
#include <sstream>

#include "json.hpp"

namespace favard {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string fd(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

const char* step_letter(StepKind k) { return k == StepKind::Deterministic ? "D" : "R"; }

const char* violation_name(GaugeViolation::What w) {
  switch (w) {
    case GaugeViolation::What::NonPositive: return "non_positive";
    case GaugeViolation::What::NotMonotone: return "not_monotone";
    case GaugeViolation::What::NotRegular: return "not_regular";
  }
  return "unknown";
}

ordered_json exact_number(const Dyadic& d) {
  return ordered_json{{"value", d.to_double()}, {"fraction", d.fraction()}};
}

ordered_json exact_number(const BigRat& r) {
  return ordered_json{{"value", to_double(r)}, {"fraction", fraction_string(r)}};
}

ordered_json mc_json(const McReport& r) {
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  ordered_json j;
  j["trials"] = r.trials;
  j["hits_or_sum"] = r.hits_or_sum;
  j["estimate"] = r.estimate;
  j["ci"] = {r.ci_lo, r.ci_hi};
  if (r.bound) {
    j["bound"] = *r.bound;
    j["bound_fraction"] = *r.bound_fraction;
  } else {
    j["bound"] = nullptr;
  }
  j["aborted_trials"] = r.aborted;
  j["master_seed"] = r.master_seed;
  j["params"] = std::move(params);
  j["kind"] = r.kind;
  j["completed_trials"] = r.completed;
  j["sample_min"] = r.sample_min;
  j["sample_max"] = r.sample_max;
  j["seed_rule"] = r.seed_rule;
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string schedule_json(const GaugeSpec& g, const Schedule& s, const DivergenceReport& d) {
  ordered_json j;
  j["gauge"] = g.describe();
  j["depth"] = s.depth();
  ordered_json alpha = ordered_json::array();
  ordered_json steps = ordered_json::array();
  ordered_json lambda = ordered_json::array();
  for (int n = 0; n <= s.depth(); ++n) alpha.push_back(s.alpha(n));
  for (int k = 1; k <= s.depth(); ++k) steps.push_back(step_letter(s.step(k)));
  for (int n = 0; n <= s.depth(); ++n) lambda.push_back(s.lambda(n).to_double());
  j["alpha"] = std::move(alpha);
  j["steps"] = std::move(steps);
  j["lambda"] = std::move(lambda);
  ordered_json det = ordered_json::array();
  ordered_json gamma = ordered_json::array();
  for (int i = 1; i <= s.det_count(); ++i) {
    det.push_back(s.det_level(i));
    gamma.push_back(s.gamma(i).to_double());
  }
  j["det_levels"] = std::move(det);
  j["gamma"] = std::move(gamma);
  j["c2"] = exact_number(s.c2());
  j["boundary_levels"] = s.warnings().boundary_levels;
  j["clamped_levels"] = s.warnings().clamped_levels;
  ordered_json dj;
  dj["trend"] = to_string(d.trend);
  dj["sum_lambda"] = exact_number(d.sum_lambda);
  dj["sum_gamma"] = exact_number(d.sum_gamma);
  dj["stages_funded"] = d.stages_funded;
  dj["lambda_unbounded"] = d.lambda_unbounded;
  dj["note"] = d.note;
  j["divergence"] = std::move(dj);
  return dump(j);
}

std::string schedule_csv(const Schedule& s) {
  std::ostringstream os;
  os << "n,alpha,step,lambda\n";
  for (int n = 0; n <= s.depth(); ++n) {
    os << n << ',' << s.alpha(n) << ',' << (n == 0 ? "-" : step_letter(s.step(n))) << ','
       << s.lambda(n).fraction() << '\n';
  }
  return os.str();
}

std::string validation_json(const GaugeSpec& g, const ValidationReport& r) {
  ordered_json j;
  j["gauge"] = g.describe();
  j["depth"] = r.depth;
  j["exact"] = r.exact;
  j["pass"] = r.pass();
  ordered_json vs = ordered_json::array();
  for (const GaugeViolation& v : r.violations) {
    vs.push_back(ordered_json{
        {"level", v.level}, {"what", violation_name(v.what)}, {"detail", v.detail}});
  }
  j["violations"] = std::move(vs);
  return dump(j);
}

std::string plan_json(const DeviancePlan& p) {
  ordered_json j;
  ordered_json stages = ordered_json::array();
  for (const DevianceStage& st : p.stages()) {
    ordered_json sj;
    sj["j"] = st.j;
    sj["n_j"] = st.n;
    sj["sum_gamma"] = st.sum_gamma.fraction();
    sj["k_n_j"] = st.level;
    stages.push_back(std::move(sj));
  }
  j["stages"] = std::move(stages);
  j["c2"] = exact_number(p.c2());
  j["requested_stages"] = p.requested_stages();
  j["truncated"] = p.truncated();
  j["retained_mass_lower_bound"] = p.retained_mass_lower_bound(p.stage_count()).fraction();
  if (p.truncated()) j["note"] = p.note();
  return dump(j);
}

std::string squares_csv(const SquareSet& fs) {
  std::ostringstream os;
  os << "level,address,x0,y0,side\n";
  for (const Address& a : fs) {
    const SquareRect r = square_rect(a);
    os << fs.level() << ',' << a.str() << ',' << fd(r.x0.to_double()) << ','
       << fd(r.y0.to_double()) << ',' << fd(r.side.to_double()) << '\n';
  }
  return os.str();
}

std::string squares_json(const SquareSet& fs) {
  ordered_json j;
  j["level"] = fs.level();
  j["count"] = fs.size();
  j["side_fraction"] = Dyadic::pow2(-fs.level()).fraction();
  ordered_json rows = ordered_json::array();
  for (const Address& a : fs) {
    const SquareRect r = square_rect(a);
    rows.push_back(ordered_json{{"address", a.str()},
                                {"x0", r.x0.to_double()},
                                {"y0", r.y0.to_double()},
                                {"side", r.side.to_double()}});
  }
  j["squares"] = std::move(rows);
  return dump(j);
}

std::string mass_check_json(const MassCheckReport& r, const Dyadic& retained_mass,
                            const Dyadic& retained_bound) {
  ordered_json j;
  j["levels_checked"] = r.depth;
  j["violations"] = r.violations;
  j["ball_constant"] = r.ball_constant;
  j["retained_mass"] = retained_mass.fraction();
  j["bound"] = retained_bound.fraction();
  j["exact"] = r.exact;
  j["pass"] = r.pass();
  return dump(j);
}

std::string mc_report_json(const McReport& r) { return dump(mc_json(r)); }

std::string decay_csv(const std::vector<DecayRow>& rows) {
  std::ostringstream os;
  os << "n,k_n,sum_gamma,bound,estimate,ci_lo,ci_hi\n";
  for (const DecayRow& row : rows) {
    os << row.n << ',' << row.level << ',' << fd(row.sum_gamma.to_double()) << ','
       << fd(to_double(row.bound)) << ',' << fd(row.report.estimate) << ','
       << fd(row.report.ci_lo) << ',' << fd(row.report.ci_hi) << '\n';
  }
  return os.str();
}

std::string decay_json(const std::vector<DecayRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const DecayRow& row : rows) {
    ordered_json j;
    j["n"] = row.n;
    j["k_n"] = row.level;
    j["sum_gamma"] = exact_number(row.sum_gamma);
    j["bound"] = exact_number(row.bound);
    j["report"] = mc_json(row.report);
    arr.push_back(std::move(j));
  }
  return dump(ordered_json{{"rows", std::move(arr)}});
}

std::string fubini_json(const FubiniReport& r) {
  ordered_json j;
  j["mean_report"] = mc_json(r.mean_report);
  j["integral_estimate"] = r.integral_estimate;
  j["integral_ci_half"] = r.integral_ci_half;
  j["grid_points"] = r.grid_points;
  j["perturbed_offsets"] = r.perturbed_offsets;
  j["t_range"] = {r.t_lo, r.t_hi};
  j["discrepancy"] = r.discrepancy;
  j["tolerance"] = r.tolerance;
  j["agree"] = r.agree;
  j["offsets"] = r.offsets;
  j["estimates"] = r.estimates;
  return dump(j);
}

std::string fubini_csv(const FubiniReport& r) {
  std::ostringstream os;
  os << "# integral_estimate=" << fd(r.integral_estimate)
     << " mean_estimate=" << fd(r.mean_report.estimate) << " discrepancy=" << fd(r.discrepancy)
     << " tolerance=" << fd(r.tolerance) << " agree=" << (r.agree ? "true" : "false") << '\n';
  os << "t,estimate\n";
  for (std::size_t i = 0; i < r.offsets.size(); ++i) {
    os << fd(r.offsets[i]) << ',' << fd(r.estimates[i]) << '\n';
  }
  return os.str();
}

namespace {

ordered_json regularize_rows(const GaugeSpec& original, const RegularizeResult& r, int depth) {
  ordered_json rows = ordered_json::array();
  for (int n = 0; n <= depth; ++n) {
    ordered_json row;
    row["n"] = n;
    row["phi"] = original.value(n);
    if (const auto ev = original.exact_value(n)) {
      row["phi_fraction"] = fraction_string(*ev);
    } else {
      row["phi_fraction"] = nullptr;
    }
    row["phi1"] = r.gauge.value(n);
    row["phi1_fraction"] = fraction_string(*r.gauge.exact_value(n));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string regularize_json(const GaugeSpec& original, const RegularizeResult& r, int depth) {
  ordered_json j;
  j["gauge"] = original.describe();
  j["depth"] = depth;
  j["truncated_infimum"] = r.truncated_infimum;
  j["values"] = regularize_rows(original, r, depth);
  return dump(j);
}

std::string regularize_csv(const GaugeSpec& original, const RegularizeResult& r, int depth) {
  std::ostringstream os;
  os << "# truncated_infimum=" << (r.truncated_infimum ? "true" : "false") << '\n';
  os << "n,phi,phi1\n";
  for (int n = 0; n <= depth; ++n) {
    os << n << ',' << fd(original.value(n)) << ',' << fd(r.gauge.value(n)) << '\n';
  }
  return os.str();
}

}  // namespace favard
