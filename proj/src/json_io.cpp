#include "microset/json_io.hpp"

namespace microset {

Json big_to_json(const BigInt& v) { return v.str(); }

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (!j.is_string()) throw std::invalid_argument("expected decimal string");
  return BigInt(j.get<std::string>());
}

Json to_json(const Numeral& n) {
  Json runs = Json::array();
  for (const Run& r : n.runs())
    runs.push_back({{"lo", big_to_json(r.lo)}, {"hi", big_to_json(r.hi)}, {"digit", r.digit}});
  return Json{{"base", n.base()}, {"sign", n.sign()}, {"runs", runs}};
}

Numeral numeral_from_json(const Json& j) {
  int base = j.at("base").get<int>();
  int sign = j.at("sign").get<int>();
  std::vector<Run> runs;
  for (const Json& rj : j.at("runs"))
    runs.push_back(Run{big_from_json(rj.at("lo")), big_from_json(rj.at("hi")),
                       rj.at("digit").get<int>()});
  Numeral n = Numeral::from_runs(base, sign == 0 ? 1 : sign, std::move(runs));
  if (sign == 0 && !n.is_zero())
    throw std::invalid_argument("numeral json: zero sign with nonzero runs");
  if (sign != 0 && n.is_zero())
    throw std::invalid_argument("numeral json: nonzero sign with empty runs");
  return n;
}

Json to_json(const Interval& iv) {
  return Json{{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}};
}

Interval interval_from_json(const Json& j) {
  return Interval(numeral_from_json(j.at("lo")), numeral_from_json(j.at("hi")));
}

Json to_json(const IntervalSet& s) {
  Json arr = Json::array();
  for (const Interval& iv : s.components()) arr.push_back(to_json(iv));
  return Json{{"intervals", arr}};
}

IntervalSet interval_set_from_json(const Json& j) {
  std::vector<Interval> raw;
  for (const Json& ij : j.at("intervals")) raw.push_back(interval_from_json(ij));
  return normalize_union(std::move(raw));
}

Json to_json(const EpsilonSpec& eps) {
  return Json{{"base", eps.base}, {"t", big_to_json(eps.t)}};
}

EpsilonSpec epsilon_from_json(const Json& j) {
  return EpsilonSpec(j.at("base").get<int>(), big_from_json(j.at("t")));
}

Json to_json(const BudgetList& b) {
  Json lengths = Json::array();
  for (const Numeral& n : b.lengths) lengths.push_back(to_json(n));
  Json banned = Json::array();
  for (std::size_t i : b.banned) banned.push_back(i);
  return Json{{"lengths", lengths}, {"banned", banned}};
}

BudgetList budget_list_from_json(const Json& j) {
  BudgetList b;
  for (const Json& nj : j.at("lengths")) b.lengths.push_back(numeral_from_json(nj));
  if (j.contains("banned"))
    for (const Json& bj : j.at("banned")) b.banned.insert(bj.get<std::size_t>());
  b.validate();
  return b;
}

Json to_json(const CoverProblem& p) {
  return Json{{"target", to_json(p.target)}, {"budgets", to_json(p.budgets)}};
}

CoverProblem cover_problem_from_json(const Json& j) {
  CoverProblem p;
  p.target = interval_set_from_json(j.at("target"));
  p.budgets = budget_list_from_json(j.at("budgets"));
  return p;
}

Json to_json(const CoverVerdict& v) {
  Json out{{"feasible", v.feasible}};
  Json placement = Json::array();
  for (const PlacedBudget& pb : v.placement)
    placement.push_back({{"index", pb.index}, {"interval", to_json(pb.interval)}});
  out["placement"] = placement;
  if (v.certificate.has_value()) {
    const auto& c = *v.certificate;
    Json cj{{"kind", c.kind}};
    if (c.kind == "counting") {
      cj["hit_counts"] = c.hit_counts;
      cj["total_hits"] = c.total_hits;
      cj["component_count"] = c.component_count;
    } else if (c.kind == "measure") {
      cj["budget_sum"] = to_json(c.lhs);
      cj["target_measure"] = to_json(c.rhs);
    }
    out["certificate"] = cj;
  }
  return out;
}

CoverVerdict cover_verdict_from_json(const Json& j) {
  CoverVerdict v;
  v.feasible = j.at("feasible").get<bool>();
  for (const Json& pj : j.at("placement"))
    v.placement.push_back(PlacedBudget{pj.at("index").get<std::size_t>(),
                                       interval_from_json(pj.at("interval"))});
  if (j.contains("certificate")) {
    InfeasibilityCertificate c;
    const Json& cj = j.at("certificate");
    c.kind = cj.at("kind").get<std::string>();
    if (c.kind == "counting") {
      c.hit_counts = cj.at("hit_counts").get<std::vector<int>>();
      c.total_hits = cj.at("total_hits").get<int>();
      c.component_count = cj.at("component_count").get<int>();
    } else if (c.kind == "measure") {
      c.lhs = numeral_from_json(cj.at("budget_sum"));
      c.rhs = numeral_from_json(cj.at("target_measure"));
    }
    v.certificate = c;
  }
  return v;
}

Json family_to_json(const PowerFamily& fam) {
  const std::string& n = fam.name();
  if (n == "micro" || n == "nano" || n == "pico") return Json{{"kind", n}};
  if (n.rfind("hybrid:", 0) == 0)
    return Json{{"kind", "hybrid"}, {"k0", std::stoll(n.substr(7))}};
  // custom and shifted families serialize as an explicit prefix table
  Json exps = Json::array();
  for (int k = 0; k < 32; ++k) exps.push_back(big_to_json(fam.exponent(k)));
  return Json{{"kind", "custom"}, {"exps", exps}};
}

PowerFamily family_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "micro") return PowerFamily::micro();
  if (kind == "nano") return PowerFamily::nano();
  if (kind == "pico") return PowerFamily::pico();
  if (kind == "hybrid") return PowerFamily::hybrid(j.at("k0").get<std::int64_t>());
  if (kind == "custom") {
    std::vector<BigInt> exps;
    for (const Json& e : j.at("exps")) exps.push_back(big_from_json(e));
    return PowerFamily::custom(std::move(exps));
  }
  throw std::invalid_argument("unknown family kind: " + kind);
}

PowerFamily family_from_cli(const std::string& spec, const std::string& custom_exps_json) {
  if (spec == "micro") return PowerFamily::micro();
  if (spec == "nano") return PowerFamily::nano();
  if (spec == "pico") return PowerFamily::pico();
  if (spec.rfind("hybrid:", 0) == 0) return PowerFamily::hybrid(std::stoll(spec.substr(7)));
  if (spec == "custom") {
    Json j = Json::parse(custom_exps_json);
    std::vector<BigInt> exps;
    for (const Json& e : j.at("exps")) exps.push_back(big_from_json(e));
    return PowerFamily::custom(std::move(exps));
  }
  throw std::invalid_argument("unknown family spec: " + spec);
}

}  // namespace microset
