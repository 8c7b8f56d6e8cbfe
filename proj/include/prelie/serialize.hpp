#pragma once

#include <string>

#include <json.hpp>

#include "prelie/quotients.hpp"
#include "prelie/series.hpp"
#include "prelie/vectorfields.hpp"

namespace prelie {

// All emitters produce deterministic documents: terms sorted by
// (grade, canonical code), rationals as decimal "num"/"den" strings.

// {"order": N, "terms": [{"tree": "<code>", "num": "...", "den": "..."}]}
nlohmann::ordered_json series_to_json(const TreeSeries& x);
TreeSeries series_from_json(const TreeTable& table, const nlohmann::json& doc);

// {"order": N, "coeffs": [["num","den"], ...]} for a_1..a_N
nlohmann::ordered_json ps_to_json(const PowerSeriesComp& f);

// power-series document plus "lambda": ["num","den"]; coeffs hold f_0..f_{N-1}
nlohmann::ordered_json mu_to_json(const MuElement& a);

// {"dim": d, "terms": K, "point": [...], "coeffs": [[...d entries]...]}
nlohmann::ordered_json jet_to_json(const FlowJet& jet);

// {"dim": d, "degree": D, "components": [[{"exps": [...], "num": .., "den": ..}]]}
nlohmann::ordered_json field_to_json(const PolyVectorField& F);

// One "coeff * code" line per term.
std::string series_to_text(const TreeSeries& x);

// Terms rendered as \frac{num}{den}\tree{code}, joined with signs.
std::string series_to_latex(const TreeSeries& x);

}  // namespace prelie
