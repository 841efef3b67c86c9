// fanokit command line tool. Every subcommand prints a JSON report (or
// writes it to --out). Exit status: 0 consistent, 2 obstruction found,
// 1 computational or configuration failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "fanokit/acceptance.hpp"
#include "fanokit/fanokit.hpp"
#include "fanokit/io.hpp"

using namespace fanokit;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kObstruction = 2;

struct Common {
  std::string model = "P2";
  std::string out;
};

void emit(const Common& c, const json& report) {
  if (c.out.empty())
    std::cout << io::dump(report);
  else
    io::write_file(c.out, io::dump(report));
}

void add_common(CLI::App* sub, Common& c, bool with_model = true) {
  if (with_model)
    sub->add_option("-m,--model", c.model, "catalog name or JSON file with \"rays\"")->capture_default_str();
  sub->add_option("-o,--out", c.out, "write the JSON report here instead of stdout");
}

int run_catalog(const Common& c) {
  json list = json::array();
  for (const auto& e : catalog_entries()) {
    auto x = catalog_model(e.name);
    auto j = io::to_json(x);
    j["description"] = e.description;
    j["kahler_einstein"] = e.kahler_einstein;
    list.push_back(j);
  }
  emit(c, {{"models", list}});
  return kOk;
}

int run_volume(const Common& c, const std::string& subscheme, const std::string& csv) {
  auto x = io::load_model(c.model);
  auto z = io::parse_subscheme(x, subscheme);
  auto prof = blowup_volume_profile(x, z);
  if (x.dimension() >= 2 && detail::as_reduced_point(z))
    prof.epsilon = seshadri_from_profile(prof.profile, anticanonical_volume(x), static_cast<unsigned>(x.dimension()));
  if (!csv.empty()) {
    // x, vol(x) at 64 evenly spaced points of [0, tau]
    std::ofstream out(csv);
    if (!out) throw Error(ErrorCode::Configuration, "cannot write '" + csv + "'");
    out << "x,volume\n";
    for (long i = 0; i <= 64; ++i) {
      Rational t = prof.tau * make_rational(i, 64);
      out << to_decimal(t, 8) << "," << to_decimal(prof.profile(t), 8) << "\n";
    }
  }
  auto j = io::to_json(prof);
  j["anticanonical_volume"] = io::rational(anticanonical_volume(x));
  j["integral"] = io::rational(integrate(prof.profile, Rational(0), prof.tau));
  emit(c, j);
  return kOk;
}

int run_lct(const Common& c, const std::string& subscheme, const std::string& sequence, std::int64_t r) {
  auto x = io::load_model(c.model);
  json j{{"model", x.name()}};
  if (!sequence.empty()) {
    auto s = io::parse_sequence(x, sequence);
    j["sequence"] = sequence;
    j["r"] = r;
    j["lct_product"] = io::rational(lct_on_product_with_line(x, s, 1 / Rational(r * x.cartier_index())));
  } else {
    auto z = io::parse_subscheme(x, subscheme);
    auto l = lct_monomial(x, z);
    j["subscheme"] = z.label();
    j["lct"] = io::optional_rational(l);
    j["unbounded"] = !l.has_value();
  }
  emit(c, j);
  return kOk;
}

struct FiltrationArgs {
  std::string subscheme = "point:0";
  std::string explicit_file;
  bool saturate = false;
  std::vector<std::int64_t> r_list{1, 2};
  unsigned k_max = 10;
  std::optional<std::int64_t> e_plus, e_minus;
  std::int64_t r_cap = kDefaultRCap;
  std::size_t composition_cap = kDefaultCompositionCap;
  bool sandwich = false;
};

int run_filtration(const Common& c, const FiltrationArgs& a) {
  auto x = io::load_model(c.model);
  Filtration f = a.explicit_file.empty() ? ideal_power_filtration(x, io::parse_subscheme(x, a.subscheme))
                                         : io::load_explicit_filtration(x, a.explicit_file);
  if (a.saturate) f = f.saturated();
  const std::int64_t ep = a.e_plus.value_or(default_e_plus(f));
  const std::int64_t em = a.e_minus.value_or(default_e_minus(f));
  auto rep = compute_d_infty(f, ep, em, a.r_list, a.k_max, a.r_cap, a.composition_cap);
  json j{{"model", x.name()},
         {"filtration", f.label()},
         {"kind", to_string(f.kind())},
         {"e_min", io::rational(f.e_min_est())},
         {"e_max", io::rational(f.e_max_est())},
         {"d_infty", io::to_json(rep)}};
  json lcts = json::array();
  for (std::size_t i = 0; i < a.r_list.size(); ++i) {
    auto v = family_product_lcts(f, {a.r_list[i]}, ep, em).front();
    lcts.push_back({{"r", a.r_list[i]}, {"lct_product", io::rational(v)}});
  }
  j["family_lct"] = lcts;
  if (a.sandwich) {
    json rows = json::array();
    for (auto r : a.r_list) {
      auto series = compute_weight_series(f, r, a.k_max, ep, em, a.composition_cap);
      rows.push_back(io::to_json(check_sandwich(f, series)));
    }
    j["sandwich"] = rows;
  }
  emit(c, j);
  return kOk;
}

int run_beta(const Common& c, const std::vector<std::string>& subschemes) {
  auto x = io::load_model(c.model);
  json list = json::array();
  bool obstructed = false;
  for (const auto& s : subschemes) {
    auto rep = beta(x, io::parse_subscheme(x, s));
    obstructed = obstructed || rep.verdict == Verdict::ObstructsSemistability;
    list.push_back(io::to_json(rep));
  }
  emit(c, {{"model", x.name()}, {"reports", list}, {"obstructed", obstructed}});
  return obstructed ? kObstruction : kOk;
}

int run_ding(const Common& c, const std::string& sequence, std::int64_t r, unsigned k_max) {
  auto x = io::load_model(c.model);
  auto rep = ding_invariant(x, io::parse_sequence(x, sequence), r, k_max);
  auto j = io::to_json(rep);
  j["sequence"] = sequence;
  emit(c, j);
  return rep.ding < 0 ? kObstruction : kOk;
}

int run_verify_bound(const Common& c) {
  auto x = io::load_model(c.model);
  auto rep = verify_volume_bound(x);
  emit(c, io::to_json(rep));
  return rep.satisfied ? kOk : kObstruction;
}

int run_scan(const Common& c, const std::vector<std::string>& candidates, unsigned threads) {
  auto x = io::load_model(c.model);
  std::vector<MonomialSubscheme> zs;
  if (candidates.empty())
    zs = standard_candidates(x);
  else
    for (const auto& s : candidates) zs.push_back(io::parse_subscheme(x, s));
  auto rep = semistability_scan(x, zs, threads);
  emit(c, io::to_json(rep));
  if (rep.obstructed) return kObstruction;
  return rep.failures > 0 ? kFailure : kOk;
}

int run_acceptance(const std::string& config, const std::string& out) {
  RunConfig cfg = config.empty() ? RunConfig{} : load_run_config(config);
  if (!out.empty()) cfg.out = out;
  auto summary = run_acceptance_suite(cfg);
  for (const auto& cr : summary.criteria) std::cout << format_line(cr) << "\n";
  if (!cfg.out.empty()) io::write_file(cfg.out, io::dump(to_json(summary)));
  return summary.all_passed() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact stability invariants of toric Fano varieties"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fanokit 0.1.0");

  Common common;
  std::string subscheme = "point:0", csv, sequence, config;
  std::vector<std::string> subschemes;
  std::int64_t r = 1;
  unsigned k_max = 10, threads = thread_count();
  FiltrationArgs fargs;
  const std::string subscheme_help = "point:C | divisor:R | unit | FILE.json, optional ^m, products with *";

  auto* catalog = app.add_subcommand("catalog", "list the built-in models");
  add_common(catalog, common, false);

  auto* volume = app.add_subcommand("volume", "blowup volume profile x -> vol(sigma^*(-K) - xF)");
  add_common(volume, common);
  volume->add_option("-z,--subscheme", subscheme, subscheme_help)->capture_default_str();
  volume->add_option("--profile-csv", csv, "also write sampled (x, volume) pairs as CSV");

  auto* lct = app.add_subcommand("lct", "log canonical threshold of a subscheme, or of a sequence on X x A^1");
  add_common(lct, common);
  lct->add_option("-z,--subscheme", subscheme, subscheme_help)->capture_default_str();
  lct->add_option("-s,--sequence", sequence, "comma-separated I_M, ..., I_1");
  lct->add_option("-r,--r", r, "exponent 1/r on the sequence")->check(CLI::PositiveNumber)->capture_default_str();

  auto* filt = app.add_subcommand("filtration", "d_infinity, A_r and the family lct of a filtration");
  add_common(filt, common);
  filt->add_option("-z,--subscheme", fargs.subscheme, "ideal-power filtration of this subscheme")->capture_default_str();
  filt->add_option("--explicit", fargs.explicit_file, "JSON table of affine weight terms")->check(CLI::ExistingFile);
  filt->add_flag("--saturate", fargs.saturate, "use the saturated filtration");
  filt->add_option("--r-list", fargs.r_list, "levels r for A_r")->capture_default_str();
  filt->add_option("--k-max", fargs.k_max, "weights are counted for k = 1..k_max")->capture_default_str();
  filt->add_option("--e-plus", fargs.e_plus, "default ceil(e_max) + 1");
  filt->add_option("--e-minus", fargs.e_minus, "default ceil(e_min) - 1");
  filt->add_option("--r-cap", fargs.r_cap, "search bound for r1")->capture_default_str();
  filt->add_option("--composition-cap", fargs.composition_cap, "bound on summed-weight states")->capture_default_str();
  filt->add_flag("--sandwich", fargs.sandwich, "check the finite-k lower/upper weight bounds");

  auto* beta_cmd = app.add_subcommand("beta", "beta(Z) = lct vol - int vol(sigma^*(-K) - xF) dx");
  add_common(beta_cmd, common);
  beta_cmd->add_option("-z,--subscheme", subschemes, subscheme_help)->required();

  auto* ding = app.add_subcommand("ding", "Ding invariant of the test configuration of an ideal sequence");
  add_common(ding, common);
  ding->add_option("-s,--sequence", sequence, "comma-separated I_M, ..., I_1")->required();
  ding->add_option("-r,--r", r, "L = -r r0 K")->check(CLI::PositiveNumber)->capture_default_str();
  ding->add_option("--k-max", k_max, "weights are counted for k = 1..k_max")->capture_default_str();

  auto* bound = app.add_subcommand("verify-bound", "check vol(-K) <= (n+1)^n");
  add_common(bound, common);

  auto* scan = app.add_subcommand("scan", "beta over a candidate battery");
  add_common(scan, common);
  scan->add_option("-z,--subscheme", subschemes, "candidates; default: fixed points, divisors, I_p^2");
  scan->add_option("-j,--threads", threads, "worker threads (default FANOKIT_THREADS or all cores)");

  auto* acc = app.add_subcommand("test-acceptance", "run the acceptance criteria");
  acc->add_option("-c,--config", config, "JSON run configuration");
  acc->add_option("-o,--out", common.out, "write the JSON summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFailure;
  }

  try {
    if (*catalog) return run_catalog(common);
    if (*volume) return run_volume(common, subscheme, csv);
    if (*lct) return run_lct(common, subscheme, sequence, r);
    if (*filt) return run_filtration(common, fargs);
    if (*beta_cmd) return run_beta(common, subschemes);
    if (*ding) return run_ding(common, sequence, r, k_max);
    if (*bound) return run_verify_bound(common);
    if (*scan) return run_scan(common, subschemes, threads);
    if (*acc) return run_acceptance(config, common.out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
