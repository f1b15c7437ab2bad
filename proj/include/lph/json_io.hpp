#pragma once

// JSON forms of the library's values. Supernatural numbers map prime strings
// to an exponent or "inf"; chains are {"prefix","rule"}; elements carry their
// chain, level and residues.

#include <json.hpp>

#include "lph/band_set.hpp"
#include "lph/frequency.hpp"
#include "lph/procyclic.hpp"
#include "lph/spectral.hpp"
#include "lph/supernatural.hpp"

namespace lph {

using Json = nlohmann::ordered_json;

void to_json(Json& j, const Exponent& e);
void from_json(const Json& j, Exponent& e);

void to_json(Json& j, const Supernatural& n);
Supernatural supernatural_from_json(const Json& j);

void to_json(Json& j, const FrequencyChain& c);
FrequencyChain chain_from_json(const Json& j);

void to_json(Json& j, const ProcyclicElement& x);
ProcyclicElement element_from_json(const Json& j);

void to_json(Json& j, const IsomorphismVerdict& v);
void to_json(Json& j, const GeneratorVerdict& v);
void to_json(Json& j, const MetricValue& m);

/// {"bands":[[lo,hi],...],"tail_bound":eps,"level":J}
Json band_set_json(const BandSet& b, double tail_bound, std::size_t level);
BandSet band_set_from_json(const Json& j);

void to_json(Json& j, const ConditionAReport& r);

}  // namespace lph
