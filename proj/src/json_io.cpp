#include "lph/json_io.hpp"

#include <string>

namespace lph {

void to_json(Json& j, const Exponent& e) {
  if (e.is_infinite()) {
    j = "inf";
  } else {
    j = e.value();
  }
}

void from_json(const Json& j, Exponent& e) {
  if (j.is_string() && j.get<std::string>() == "inf") {
    e = Exponent::infinite();
  } else if (j.is_number_unsigned()) {
    e = Exponent{j.get<std::uint64_t>()};
  } else {
    throw SupernaturalError("exponent must be a nonnegative integer or \"inf\"");
  }
}

void to_json(Json& j, const Supernatural& n) {
  j = Json::object();
  for (const auto& [p, e] : n.factors()) j[std::to_string(p)] = e;
}

Supernatural supernatural_from_json(const Json& j) {
  if (!j.is_object()) throw SupernaturalError("supernatural number must be a JSON object");
  Supernatural::FactorMap factors;
  for (const auto& [key, value] : j.items()) {
    std::size_t used = 0;
    std::uint64_t p = 0;
    try {
      p = std::stoull(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || key.empty() || key[0] == '-') throw SupernaturalError("bad prime key \"" + key + "\"");
    factors[p] = value.get<Exponent>();
  }
  return Supernatural{std::move(factors)};
}

void to_json(Json& j, const FrequencyChain& c) {
  j = Json{{"prefix", std::vector<std::uint64_t>(c.prefix().begin(), c.prefix().end())},
           {"rule", std::vector<std::uint64_t>(c.rule().begin(), c.rule().end())}};
}

FrequencyChain chain_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("prefix")) throw ChainError("chain needs a \"prefix\" array");
  std::vector<std::uint64_t> rule;
  if (j.contains("rule")) rule = j.at("rule").get<std::vector<std::uint64_t>>();
  return FrequencyChain{j.at("prefix").get<std::vector<std::uint64_t>>(), std::move(rule)};
}

void to_json(Json& j, const ProcyclicElement& x) {
  j = Json{{"chain", x.chain()},
           {"level", x.level()},
           {"residues", std::vector<std::uint64_t>(x.residues().begin(), x.residues().end())}};
}

ProcyclicElement element_from_json(const Json& j) {
  auto residues = j.at("residues").get<std::vector<std::uint64_t>>();
  if (j.contains("level") && j.at("level").get<std::size_t>() != residues.size()) {
    throw GroupError("level does not match the number of residues");
  }
  return ProcyclicElement{chain_from_json(j.at("chain")), std::move(residues)};
}

namespace {

Json optional_value(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json witnesses(const std::vector<DivisibilityWitness>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) {
    out.push_back({{"index", w.index},
                   {"value", optional_value(w.value)},
                   {"partner_index", w.partner_index},
                   {"partner_value", optional_value(w.partner_value)}});
  }
  return out;
}

}  // namespace

void to_json(Json& j, const IsomorphismVerdict& v) {
  Json cert{{"a_in_b", witnesses(v.certificate.a_in_b)}, {"b_in_a", witnesses(v.certificate.b_in_a)}};
  if (const auto& c = v.certificate.counterexample) {
    cert["counterexample"] = {{"side", std::string(1, c->side)},
                              {"index", c->index},
                              {"value", optional_value(c->value)},
                              {"prime", c->prime},
                              {"required", c->required},
                              {"available", c->available}};
  } else {
    cert["counterexample"] = nullptr;
  }
  j = Json{{"isomorphic", v.isomorphic},
           {"order_a", v.order_a},
           {"order_b", v.order_b},
           {"certificate", std::move(cert)}};
}

void to_json(Json& j, const GeneratorVerdict& v) {
  j = Json{{"generator", v.generator}};
  if (v.witness) {
    j["witness"] = {{"kind", v.witness->kind == GeneratorWitness::Kind::level ? "level" : "ratio"},
                    {"index", v.witness->index},
                    {"value", v.witness->value},
                    {"gcd", v.witness->common}};
  } else {
    j["witness"] = nullptr;
  }
}

void to_json(Json& j, const MetricValue& m) {
  j = Json{{"distance", m.distance.to_string()},
           {"approx", m.approx()},
           {"tail_bound", m.tail_bound.to_string()}};
}

Json band_set_json(const BandSet& b, double tail_bound, std::size_t level) {
  Json bands = Json::array();
  for (const auto& i : b.bands()) bands.push_back({i.lo, i.hi});
  return Json{{"bands", std::move(bands)}, {"tail_bound", tail_bound}, {"level", level}};
}

BandSet band_set_from_json(const Json& j) {
  std::vector<Interval> out;
  for (const auto& pair : j.at("bands")) {
    if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("band must be [lo, hi]");
    out.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  return BandSet{std::move(out)};
}

void to_json(Json& j, const ConditionAReport& r) {
  j = Json{{"holds", r.holds},
           {"witness", r.witness},
           {"sup_ratio", r.sup_ratio},
           {"depth", r.depth},
           {"structural", r.structural},
           {"prefix_only", r.prefix_only},
           {"unbounded_trend", r.unbounded_trend},
           {"log_ratios", r.log_ratios}};
}

}  // namespace lph
