#pragma once

#include "microset/budgets.hpp"
#include "microset/cover.hpp"
#include "microset/intervals.hpp"
#include "microset/numeral.hpp"

#include <json.hpp>

namespace microset {

using Json = nlohmann::json;

// BigInt fields travel as decimal strings to avoid integer-width ambiguity.
Json big_to_json(const BigInt& v);
BigInt big_from_json(const Json& j);

Json to_json(const Numeral& n);
Numeral numeral_from_json(const Json& j);

Json to_json(const Interval& iv);
Interval interval_from_json(const Json& j);

Json to_json(const IntervalSet& s);
IntervalSet interval_set_from_json(const Json& j);

Json to_json(const EpsilonSpec& eps);
EpsilonSpec epsilon_from_json(const Json& j);

Json to_json(const BudgetList& b);
BudgetList budget_list_from_json(const Json& j);

Json to_json(const CoverProblem& p);
CoverProblem cover_problem_from_json(const Json& j);

Json to_json(const CoverVerdict& v);
CoverVerdict cover_verdict_from_json(const Json& j);

// Family spec: {"kind": "micro|nano|pico|hybrid|custom", "k0": 3, "exps": [...]}
Json family_to_json(const PowerFamily& fam);
PowerFamily family_from_json(const Json& j);
// Command-line form: micro | nano | pico | hybrid:k0 | custom (JSON table file)
PowerFamily family_from_cli(const std::string& spec, const std::string& custom_exps_json);

}  // namespace microset
