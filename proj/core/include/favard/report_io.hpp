#pragma once

#include <string>
#include <vector>

#include "favard/deviance.hpp"
#include "favard/gauge.hpp"
#include "favard/measure.hpp"
#include "favard/monte_carlo.hpp"
#include "favard/schedule.hpp"

namespace favard {

/// JSON/CSV rendering of the core value types.  Exact quantities (masses,
/// gamma sums, dyadic bounds) carry a fraction string next to the float
/// rendering; output is deterministic byte-for-byte for fixed inputs.

std::string schedule_json(const GaugeSpec& g, const Schedule& s, const DivergenceReport& d);
std::string schedule_csv(const Schedule& s);

std::string validation_json(const GaugeSpec& g, const ValidationReport& r);

std::string plan_json(const DeviancePlan& p);

std::string squares_csv(const SquareSet& fs);
std::string squares_json(const SquareSet& fs);

std::string mass_check_json(const MassCheckReport& r, const Dyadic& retained_mass,
                            const Dyadic& retained_bound);

std::string mc_report_json(const McReport& r);
std::string decay_csv(const std::vector<DecayRow>& rows);
std::string decay_json(const std::vector<DecayRow>& rows);

std::string fubini_json(const FubiniReport& r);
std::string fubini_csv(const FubiniReport& r);

std::string regularize_json(const GaugeSpec& original, const RegularizeResult& r, int depth);
std::string regularize_csv(const GaugeSpec& original, const RegularizeResult& r, int depth);

}  // namespace favard
