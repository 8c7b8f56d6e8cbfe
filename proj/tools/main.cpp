#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "prelie/errors.hpp"
#include "prelie/group.hpp"
#include "prelie/quotients.hpp"
#include "prelie/serialize.hpp"
#include "prelie/series.hpp"
#include "prelie/trees.hpp"
#include "prelie/vectorfields.hpp"
#include "selftest.hpp"

namespace {

using namespace prelie;

nlohmann::json load_json(const std::string& path) {
  if (path == "-") return nlohmann::json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  return nlohmann::json::parse(in);
}

int doc_order(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("order") || !doc["order"].is_number_integer())
    throw schema_error("series document needs an integer \"order\"");
  const int n = doc["order"].get<int>();
  if (n < 1 || n > TreeTable::kDefaultCap)
    throw schema_error("series order " + std::to_string(n) + " outside [1, " +
                       std::to_string(TreeTable::kDefaultCap) + "]");
  return n;
}

void emit(const nlohmann::ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

void print_series(const TreeSeries& s, const std::string& format) {
  if (format == "json")
    emit(series_to_json(s));
  else if (format == "text")
    std::cout << series_to_text(s);
  else
    std::cout << series_to_latex(s);
}

void cmd_trees(int order, const std::string& format) {
  TreeTable tt(order);
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["order"] = order;
    auto arr = nlohmann::ordered_json::array();
    for (TreeId t : tt.trees_of_order(order)) {
      nlohmann::ordered_json row;
      row["code"] = tt.format_code(t);
      row["nodes"] = tt.nodes(t);
      row["aut"] = tt.symmetry_factor(t);
      row["depth"] = tt.depth(t);
      row["linear"] = tt.is_linear(t);
      row["corolla"] = tt.is_corolla(t);
      arr.push_back(std::move(row));
    }
    doc["trees"] = std::move(arr);
    emit(doc);
    return;
  }
  for (TreeId t : tt.trees_of_order(order)) {
    std::string flags;
    if (tt.is_linear(t)) flags = "linear";
    if (tt.is_corolla(t)) flags += flags.empty() ? "corolla" : ",corolla";
    if (flags.empty()) flags = "-";
    std::cout << tt.format_code(t) << "\taut=" << tt.symmetry_factor(t)
              << "\tdepth=" << tt.depth(t) << "\t" << flags << "\n";
  }
}

void cmd_expand(const std::string& kind, int order, const std::string& format) {
  TreeTable tt(order);
  TreeSeries s = kind == "exp" ? exp_star(tt, order) : log_star(tt, order);
  print_series(s, format);
}

void cmd_compose(const std::string& file_a, const std::string& file_b, int order) {
  nlohmann::json da = load_json(file_a), db = load_json(file_b);
  const int na = doc_order(da), nb = doc_order(db);
  int n = order > 0 ? order : na;
  if (order <= 0 && na != nb)
    throw input_error("series orders differ (" + std::to_string(na) + " vs " +
                      std::to_string(nb) + "); pass --order to truncate");
  if (n > std::min(na, nb))
    throw input_error("--order exceeds an input's truncation order");
  TreeTable tt(std::max(na, nb));
  TreeSeries a = series_from_json(tt, da).truncated(n);
  TreeSeries b = series_from_json(tt, db).truncated(n);
  emit(series_to_json(compose(a, b)));
}

void cmd_invert(const std::string& file, int order) {
  nlohmann::json doc = load_json(file);
  const int nd = doc_order(doc);
  const int n = order > 0 ? order : nd;
  if (n > nd) throw input_error("--order exceeds the input's truncation order");
  TreeTable tt(nd);
  TreeSeries y = series_from_json(tt, doc).truncated(n);
  emit(series_to_json(invert(y)));
}

void cmd_project(const std::string& which, const std::string& file, int order) {
  nlohmann::json doc = load_json(file);
  const int nd = doc_order(doc);
  const int n = order > 0 ? order : nd;
  if (n > nd) throw input_error("--order exceeds the input's truncation order");
  TreeTable tt(nd);
  TreeSeries x = series_from_json(tt, doc).truncated(n);
  if (which == "phi")
    emit(ps_to_json(phi(x)));
  else
    emit(mu_to_json(psi(x)));
}

void cmd_flow(int dim, const std::string& field, const std::string& point, int terms) {
  PolyVectorField F = parse_field(field, dim, std::numeric_limits<int>::max());
  std::vector<Rational> g0 = parse_point(point, dim);
  emit(jet_to_json(flow_taylor(F, g0, terms)));
}

void cmd_recover(int dim, const std::string& field, int degree) {
  TreeTable tt(degree - 1);
  PolyVectorField G = parse_field(field, dim, degree);
  emit(field_to_json(recover_field(tt, G, degree)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact engine for the substitution group of rooted-tree series:\n"
      "expansions of exp*/log*, group arithmetic, quotient projections,\n"
      "Bernoulli numbers, and Taylor flows of polynomial vector fields."};
  app.require_subcommand(1);

  int order = 0;
  std::string format = "text";
  auto* trees = app.add_subcommand("trees", "List canonical rooted trees of one order");
  trees->add_option("--order", order, "node count")->required();
  trees->add_option("--format", format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string expand_kind;
  int expand_order = 0;
  std::string expand_format = "json";
  auto* expand = app.add_subcommand("expand", "Print the exp* or log* series");
  expand->add_option("kind", expand_kind, "exp|log")
      ->required()
      ->check(CLI::IsMember({"exp", "log"}));
  expand->add_option("--order", expand_order, "truncation order")->required();
  expand->add_option("--format", expand_format, "json|text|latex")
      ->check(CLI::IsMember({"json", "text", "latex"}));

  std::string file_a, file_b;
  int group_order = 0;
  auto* compose_cmd = app.add_subcommand("compose", "Group product A * B of two series files");
  compose_cmd->add_option("a", file_a, "left series (JSON, '-' for stdin)")->required();
  compose_cmd->add_option("b", file_b, "right series (JSON)")->required();
  compose_cmd->add_option("--order", group_order, "truncate both inputs first")
      ->check(CLI::Range(1, TreeTable::kDefaultCap));

  std::string invert_file;
  int invert_order = 0;
  auto* invert_cmd = app.add_subcommand("invert", "Group inverse of a series file");
  invert_cmd->add_option("y", invert_file, "series (JSON, '-' for stdin)")->required();
  invert_cmd->add_option("--order", invert_order, "truncate the input first")
      ->check(CLI::Range(1, TreeTable::kDefaultCap));

  std::string phi_file;
  int phi_order = 0;
  auto* phi_cmd = app.add_subcommand("phi", "Project a series onto composition power series");
  phi_cmd->add_option("x", phi_file, "series (JSON, '-' for stdin)")->required();
  phi_cmd->add_option("--order", phi_order, "truncate the input first")
      ->check(CLI::Range(1, TreeTable::kDefaultCap));

  std::string psi_file;
  int psi_order = 0;
  auto* psi_cmd = app.add_subcommand("psi", "Project a series onto the corolla quotient");
  psi_cmd->add_option("x", psi_file, "series (JSON, '-' for stdin)")->required();
  psi_cmd->add_option("--order", psi_order, "truncate the input first")
      ->check(CLI::Range(1, TreeTable::kDefaultCap));

  int flow_dim = 1, flow_terms = 0;
  std::string flow_field, flow_point;
  auto* flow_cmd = app.add_subcommand("flow", "Taylor jet of the flow of a vector field");
  flow_cmd->add_option("--dim", flow_dim, "dimension")->check(CLI::Range(1, 16));
  flow_cmd->add_option("--field", flow_field, "components separated by ';'")->required();
  flow_cmd->add_option("--point", flow_point, "base point, comma-separated rationals")
      ->required();
  flow_cmd->add_option("--terms", flow_terms, "number of jet coefficients")
      ->required()
      ->check(CLI::Range(1, 200));

  int rec_dim = 1, rec_degree = 0;
  std::string rec_field;
  auto* rec_cmd = app.add_subcommand(
      "recover", "Field whose time-one flow displacement is the given field");
  rec_cmd->add_option("--dim", rec_dim, "dimension")->check(CLI::Range(1, 16));
  rec_cmd->add_option("--field", rec_field, "displacement, components separated by ';'")
      ->required();
  rec_cmd->add_option("--degree", rec_degree, "total-degree cap of the result")
      ->required()
      ->check(CLI::Range(2, TreeTable::kDefaultCap + 1));

  int selftest_order = 6;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in checks");
  selftest_cmd->add_option("--order", selftest_order, "expansion order for the heavy checks")
      ->check(CLI::Range(2, TreeTable::kDefaultCap));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (trees->parsed()) cmd_trees(order, format);
    if (expand->parsed()) cmd_expand(expand_kind, expand_order, expand_format);
    if (compose_cmd->parsed()) cmd_compose(file_a, file_b, group_order);
    if (invert_cmd->parsed()) cmd_invert(invert_file, invert_order);
    if (phi_cmd->parsed()) cmd_project("phi", phi_file, phi_order);
    if (psi_cmd->parsed()) cmd_project("psi", psi_file, psi_order);
    if (flow_cmd->parsed()) cmd_flow(flow_dim, flow_field, flow_point, flow_terms);
    if (rec_cmd->parsed()) cmd_recover(rec_dim, rec_field, rec_degree);
    if (selftest_cmd->parsed()) return run_selftest(selftest_order, std::cout) ? 0 : 1;
  } catch (const math_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 2;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
