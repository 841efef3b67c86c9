#pragma once

// JSON reports and input parsing. nlohmann::json keeps object keys sorted,
// which gives the canonical ordering the golden files rely on.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fanokit/filtration.hpp"
#include "fanokit/stability.hpp"

namespace fanokit::io {

using nlohmann::json;

inline json rational(const Rational& q) { return json{{"exact", to_string(q)}, {"decimal", to_decimal(q, 10)}}; }

inline json rationals(const QVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(rational(q));
  return out;
}

inline json optional_rational(const std::optional<Rational>& q) { return q ? rational(*q) : json(nullptr); }

// ---- inputs ---------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Configuration, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Configuration, "'" + path + "' is not valid JSON: " + e.what());
  }
}

/// A catalog name, or a JSON file {"name": ..., "rays": [[...], ...]}.
inline ToricFanoModel load_model(const std::string& source) {
  for (const auto& e : catalog_entries())
    if (e.name == source) return catalog_model(source);
  if (!std::filesystem::exists(source))
    throw Error(ErrorCode::Configuration, "'" + source + "' is neither a catalog model nor a readable file");
  auto doc = read_json_file(source);
  if (!doc.contains("rays") || !doc["rays"].is_array())
    throw Error(ErrorCode::Configuration, "model file '" + source + "' has no \"rays\" array");
  std::vector<IntVector> rays;
  try {
    rays = doc["rays"].get<std::vector<IntVector>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Configuration, "bad rays in '" + source + "': " + e.what());
  }
  return build_model(rays, doc.value("name", std::filesystem::path(source).stem().string()));
}

namespace detail {

inline std::size_t parse_index(const std::string& text, const std::string& spec) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size() || v < 0) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput, "bad index in subscheme '" + spec + "'");
  }
}

}  // namespace detail

/// Subscheme specs:
///   point:C       reduced fixed point of chart C
///   divisor:R     boundary divisor of ray R
///   unit          the structure sheaf
///   FILE.json     {"label": ..., "charts": {"C": [[exponents], ...]}}
/// with an optional "^m" suffix for the m-th power and "*" for products,
/// e.g. "point:0^2*divisor:1".
inline MonomialSubscheme parse_subscheme(const ToricFanoModel& x, const std::string& spec) {
  if (auto star = spec.find('*'); star != std::string::npos) {
    auto z = parse_subscheme(x, spec.substr(0, star)) * parse_subscheme(x, spec.substr(star + 1));
    z.set_label(spec);
    return z;
  }
  std::string head = spec;
  unsigned power = 1;
  if (auto caret = spec.rfind('^'); caret != std::string::npos && spec.find(".json") == std::string::npos) {
    head = spec.substr(0, caret);
    power = static_cast<unsigned>(detail::parse_index(spec.substr(caret + 1), spec));
    if (power == 0) throw Error(ErrorCode::InvalidInput, "power must be positive in '" + spec + "'");
  }
  MonomialSubscheme z = MonomialSubscheme::unit(x);
  if (head == "unit") {
    z = MonomialSubscheme::unit(x);
  } else if (head.rfind("point:", 0) == 0) {
    z = MonomialSubscheme::point(x, detail::parse_index(head.substr(6), spec));
  } else if (head.rfind("divisor:", 0) == 0) {
    auto ray = detail::parse_index(head.substr(8), spec);
    if (ray >= x.rays().size()) throw Error(ErrorCode::InvalidInput, "no ray " + std::to_string(ray));
    z = MonomialSubscheme::boundary_divisor(x, ray);
  } else if (std::filesystem::exists(head)) {
    auto doc = read_json_file(head);
    std::map<std::size_t, std::vector<Monomial>> given;
    try {
      for (const auto& [key, gens] : doc.at("charts").items())
        given[detail::parse_index(key, spec)] = gens.get<std::vector<Monomial>>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Configuration, "bad subscheme file '" + head + "': " + e.what());
    }
    z = MonomialSubscheme::from_charts(x, given, doc.value("label", std::filesystem::path(head).stem().string()));
  } else {
    throw Error(ErrorCode::InvalidInput, "unrecognised subscheme '" + spec + "'");
  }
  z.set_label(head);
  if (power > 1) z = z.power(power);
  return z;
}

/// Comma-separated subscheme specs, I_M first.
inline IdealSequenceOnXxA1 parse_sequence(const ToricFanoModel& x, const std::string& spec) {
  std::vector<MonomialSubscheme> ideals;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) ideals.push_back(parse_subscheme(x, item));
  return IdealSequenceOnXxA1(x, std::move(ideals));
}

/// Explicit filtration file: {"label": ..., "terms": [{"slope": ["1/2", "0"],
/// "level": "1", "offset": "0"}, ...]}.
inline Filtration load_explicit_filtration(const ToricFanoModel& x, const std::string& path) {
  auto doc = read_json_file(path);
  std::vector<WeightTerm> terms;
  try {
    for (const auto& t : doc.at("terms")) {
      WeightTerm w;
      for (const auto& s : t.at("slope")) w.slope.push_back(parse_rational(s.get<std::string>()));
      w.level = parse_rational(t.value("level", std::string("0")));
      w.offset = parse_rational(t.value("offset", std::string("0")));
      terms.push_back(std::move(w));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Configuration, "bad filtration file '" + path + "': " + e.what());
  }
  return Filtration::explicit_terms(x, terms, doc.value("label", std::filesystem::path(path).stem().string()));
}

// ---- reports --------------------------------------------------------------

inline json to_json(const ToricFanoModel& x) {
  json charts = json::array();
  for (const auto& c : x.charts())
    charts.push_back({{"vertex", rationals(c.vertex)}, {"rays", c.ray_indices}, {"smooth", c.smooth}});
  json verts = json::array();
  for (const auto& v : x.polytope().vertices()) verts.push_back(rationals(v));
  return {{"name", x.name()},
          {"dimension", x.dimension()},
          {"rays", x.rays()},
          {"cartier_index", x.cartier_index()},
          {"polytope_vertices", verts},
          {"charts", charts},
          {"anticanonical_volume", rational(anticanonical_volume(x))}};
}

inline json to_json(const PiecewisePolynomial& pp) {
  json pieces = json::array();
  for (std::size_t i = 0; i < pp.pieces().size(); ++i)
    pieces.push_back({{"from", rational(pp.breakpoints()[i])},
                      {"to", rational(pp.breakpoints()[i + 1])},
                      {"coefficients", rationals(pp.pieces()[i].coefficients())}});
  return {{"pieces", pieces}, {"degree_bound", pp.degree_bound()}};
}

inline json to_json(const BlowupVolumeProfile& p) {
  return {{"model", p.model},
          {"subscheme", p.subscheme},
          {"profile", to_json(p.profile)},
          {"tau", rational(p.tau)},
          {"epsilon", optional_rational(p.epsilon)},
          {"approximate", p.approximate},
          {"method", p.method}};
}

inline json to_json(const BetaReport& b) {
  return {{"model", b.model},
          {"subscheme", b.subscheme},
          {"lct", rational(b.lct_value)},
          {"volume_integral", rational(b.volume_integral)},
          {"anticanonical_volume", rational(b.anticanonical_volume)},
          {"beta", rational(b.beta)},
          {"verdict", to_string(b.verdict)},
          {"approximate", b.approximate}};
}

inline json to_json(const DingReport& d) {
  return {{"model", d.model},
          {"r", d.r},
          {"r0", d.r0},
          {"M", d.M},
          {"w", d.w},
          {"stable_from", d.stable_from},
          {"L_power_top", rational(d.L_power_top)},
          {"d", rational(d.d)},
          {"lct_product", rational(d.lct_product)},
          {"ding", rational(d.ding)},
          {"semiample_hypothesis", d.semiample_assumed ? "assumed" : "verified"}};
}

inline json to_json(const VolumeBoundReport& v) {
  json out{{"model", v.model},
           {"dimension", v.n},
           {"bound", rational(v.bound)},
           {"volume", rational(v.volume)},
           {"satisfied", v.satisfied},
           {"equality", v.equality},
           {"seshadri_check", nullptr}};
  if (v.seshadri_check) {
    json vals = json::array();
    for (std::size_t i = 0; i < v.seshadri_check->charts.size(); ++i)
      vals.push_back({{"chart", v.seshadri_check->charts[i]}, {"epsilon", rational(v.seshadri_check->values[i])}});
    out["seshadri_check"] = {{"values", vals}, {"all_equal_n_plus_1", v.seshadri_check->all_equal_n_plus_1}};
  }
  return out;
}

inline json to_json(const ScanReport& s) {
  json entries = json::array();
  for (const auto& e : s.entries) {
    json j{{"candidate", e.candidate}, {"report", nullptr}, {"error", nullptr}};
    if (e.report) j["report"] = to_json(*e.report);
    if (e.error) j["error"] = {{"code", std::string(to_string(*e.error))}, {"message", e.message}};
    entries.push_back(j);
  }
  return {{"model", s.model}, {"entries", entries}, {"obstructed", s.obstructed}, {"failures", s.failures}};
}

inline json to_json(const DInftyReport& d) {
  json samples = json::array();
  for (const auto& s : d.samples) samples.push_back({{"r", s.r}, {"A_r", rational(s.a)}, {"d_r", rational(s.d)}});
  return {{"e_plus", d.e_plus},
          {"e_minus", d.e_minus},
          {"r1", d.r1},
          {"samples", samples},
          {"A_limit", rational(d.a_limit)},
          {"integral", optional_rational(d.integral)},
          {"d_infty", rational(d.d_infty)},
          {"approximate", d.approximate}};
}

inline json to_json(const SandwichReport& s) {
  json rows = json::array();
  for (const auto& r : s.rows) rows.push_back({{"k", r.k}, {"lower", r.lower}, {"v", r.v}, {"upper", r.upper}});
  json lim = s.limit_upper_holds ? json(*s.limit_upper_holds) : json(nullptr);
  return {{"r", s.r}, {"rows", rows}, {"finite_k_holds", s.finite_k_holds}, {"limit_upper_holds", lim}};
}

/// Pretty-printed with sorted keys and a trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Configuration, "cannot write '" + path + "'");
  out << text;
}

}  // namespace fanokit::io
