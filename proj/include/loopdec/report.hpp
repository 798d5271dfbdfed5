#pragma once

#include "loopdec/decompose.hpp"
#include "loopdec/evidence.hpp"
#include "loopdec/localize.hpp"
#include "loopdec/momentangle.hpp"

#include <json.hpp>

#include <string>

namespace loopdec {

// Machine documents mirroring the report types.  Series coefficients are
// decimal strings: they outgrow 64-bit integers well below the default cap.
nlohmann::json to_json(const GradedGroup& g);
nlohmann::json to_json(const TruncatedSeries& s);
nlohmann::json to_json(const HypothesisEvidence& ev);
nlohmann::json to_json(const LocalizationPlan& plan);
nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const OneRelatorPresentation& pres);
nlohmann::json to_json(const CrossCheck& cc);
nlohmann::json to_json(const ValidationReport& rep);
nlohmann::json to_json(const ZkReport& rep);

std::string render_text(const PDComplex& m);
std::string render_text(const HypothesisEvidence& ev);
std::string render_text(const LocalizationPlan& plan);
std::string render_text(const Decomposition& d);
std::string render_text(const OneRelatorPresentation& pres);
std::string render_text(const CrossCheck& cc);
std::string render_text(const ZkReport& rep);

} // namespace loopdec
