#include "prelie/serialize.hpp"

#include "prelie/errors.hpp"

namespace prelie {

namespace {

nlohmann::ordered_json rational_pair(const Rational& q) {
  return nlohmann::ordered_json::array(
      {q.get_num().get_str(), q.get_den().get_str()});
}

Integer parse_decimal(const nlohmann::json& j, const char* what) {
  if (!j.is_string()) throw schema_error(std::string(what) + " must be a decimal string");
  const std::string s = j.get<std::string>();
  try {
    return Integer(s);
  } catch (const std::invalid_argument&) {
    throw schema_error(std::string(what) + ": bad decimal '" + s + "'");
  }
}

}  // namespace

nlohmann::ordered_json series_to_json(const TreeSeries& x) {
  const TreeTable& tt = x.table();
  nlohmann::ordered_json doc;
  doc["order"] = x.order();
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [t, c] : x.terms()) {
    nlohmann::ordered_json term;
    term["tree"] = tt.format_code(t);
    term["num"] = c.get_num().get_str();
    term["den"] = c.get_den().get_str();
    terms.push_back(std::move(term));
  }
  doc["terms"] = std::move(terms);
  return doc;
}

TreeSeries series_from_json(const TreeTable& table, const nlohmann::json& doc) {
  if (!doc.is_object()) throw schema_error("series document must be an object");
  if (!doc.contains("order") || !doc["order"].is_number_integer())
    throw schema_error("series document needs an integer \"order\"");
  const int order = doc["order"].get<int>();
  if (order < 1) throw schema_error("series order must be >= 1");
  if (order > table.max_order())
    throw schema_error("series order " + std::to_string(order) +
                       " exceeds the supported maximum " +
                       std::to_string(table.max_order()));
  if (!doc.contains("terms") || !doc["terms"].is_array())
    throw schema_error("series document needs a \"terms\" array");

  TreeSeries out(table, order);
  for (const auto& term : doc["terms"]) {
    if (!term.is_object() || !term.contains("tree") || !term.contains("num") ||
        !term.contains("den"))
      throw schema_error("series term needs \"tree\", \"num\" and \"den\"");
    if (!term["tree"].is_string())
      throw schema_error("series term \"tree\" must be a string code");
    TreeId t;
    try {
      t = table.parse_code(term["tree"].get<std::string>());
    } catch (const input_error& e) {
      throw schema_error(std::string("bad tree code: ") + e.what());
    }
    if (table.nodes(t) > order)
      throw schema_error("tree '" + term["tree"].get<std::string>() +
                         "' exceeds the series order");
    Integer num = parse_decimal(term["num"], "num");
    Integer den = parse_decimal(term["den"], "den");
    if (den <= 0) throw schema_error("den must be a positive decimal");
    Rational c(num, den);
    c.canonicalize();
    out.add_term(t, c);  // duplicates (e.g. non-canonical codes) accumulate
  }
  return out;
}

nlohmann::ordered_json ps_to_json(const PowerSeriesComp& f) {
  nlohmann::ordered_json doc;
  doc["order"] = f.order;
  auto coeffs = nlohmann::ordered_json::array();
  for (const Rational& c : f.a) coeffs.push_back(rational_pair(c));
  doc["coeffs"] = std::move(coeffs);
  return doc;
}

nlohmann::ordered_json mu_to_json(const MuElement& a) {
  nlohmann::ordered_json doc;
  doc["order"] = static_cast<int>(a.f.size());
  doc["lambda"] = rational_pair(a.lambda);
  doc["invertible"] = a.invertible;
  auto coeffs = nlohmann::ordered_json::array();
  for (const Rational& c : a.f) coeffs.push_back(rational_pair(c));
  doc["coeffs"] = std::move(coeffs);
  return doc;
}

nlohmann::ordered_json jet_to_json(const FlowJet& jet) {
  nlohmann::ordered_json doc;
  doc["dim"] = static_cast<int>(jet.base.size());
  doc["terms"] = static_cast<int>(jet.coeffs.size());
  auto point = nlohmann::ordered_json::array();
  for (const Rational& c : jet.base) point.push_back(rational_pair(c));
  doc["point"] = std::move(point);
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& ck : jet.coeffs) {
    auto row = nlohmann::ordered_json::array();
    for (const Rational& c : ck) row.push_back(rational_pair(c));
    coeffs.push_back(std::move(row));
  }
  doc["coeffs"] = std::move(coeffs);
  return doc;
}

nlohmann::ordered_json field_to_json(const PolyVectorField& F) {
  nlohmann::ordered_json doc;
  doc["dim"] = F.dim();
  doc["degree"] = F.degree_cap();
  auto comps = nlohmann::ordered_json::array();
  for (int i = 0; i < F.dim(); ++i) {
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [m, c] : F.component(i).terms()) {
      nlohmann::ordered_json term;
      term["exps"] = m;
      term["num"] = c.get_num().get_str();
      term["den"] = c.get_den().get_str();
      terms.push_back(std::move(term));
    }
    comps.push_back(std::move(terms));
  }
  doc["components"] = std::move(comps);
  return doc;
}

std::string series_to_text(const TreeSeries& x) {
  const TreeTable& tt = x.table();
  std::string out;
  for (const auto& [t, c] : x.terms()) {
    out += format_rational(c);
    out += " * ";
    out += tt.format_code(t);
    out += '\n';
  }
  return out;
}

std::string series_to_latex(const TreeSeries& x) {
  const TreeTable& tt = x.table();
  std::string out;
  bool first = true;
  for (const auto& [t, c] : x.terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1) {
      if (mag.get_den() == 1) {
        out += mag.get_num().get_str();
      } else {
        out += "\\frac{" + mag.get_num().get_str() + "}{" +
               mag.get_den().get_str() + "}";
      }
    }
    out += "\\tree{" + tt.format_code(t) + "}";
  }
  out += '\n';
  return out;
}

}  // namespace prelie
