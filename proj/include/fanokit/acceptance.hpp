#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fanokit/filtration.hpp"
#include "fanokit/io.hpp"
#include "fanokit/lct.hpp"
#include "fanokit/oracles.hpp"
#include "fanokit/parallel.hpp"
#include "fanokit/stability.hpp"

namespace fanokit {

struct RunConfig {
  std::string model = "P1";  // model for the weight and Ding criteria
  unsigned k_max = 10;
  std::vector<std::int64_t> r_list{1, 2, 4, 8};
  std::int64_t r_cap = kDefaultRCap;
  std::size_t composition_cap = kDefaultCompositionCap;
  std::string out;  // summary JSON path, empty for none
  unsigned threads = thread_count();

  void validate() const {
    if (k_max == 0 || r_cap <= 0 || composition_cap == 0 || threads == 0)
      throw Error(ErrorCode::Configuration, "caps must be positive");
    if (r_list.empty()) throw Error(ErrorCode::Configuration, "r_list must not be empty");
    for (auto r : r_list)
      if (r <= 0 || r > r_cap) throw Error(ErrorCode::Configuration, "r_list entries must lie in [1, r_cap]");
  }
};

/// Keys as in RunConfig; anything absent keeps its default.
inline RunConfig load_run_config(const std::string& path) {
  auto doc = io::read_json_file(path);
  RunConfig c;
  try {
    c.model = doc.value("model", c.model);
    c.k_max = doc.value("k_max", c.k_max);
    c.r_list = doc.value("r_list", c.r_list);
    c.r_cap = doc.value("r_cap", c.r_cap);
    c.composition_cap = doc.value("composition_cap", c.composition_cap);
    c.out = doc.value("out", c.out);
    c.threads = doc.value("threads", c.threads);
  } catch (const io::json::exception& e) {
    throw Error(ErrorCode::Configuration, "bad config '" + path + "': " + e.what());
  }
  c.validate();
  return c;
}

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceSummary {
  std::vector<CriterionResult> criteria;
  bool all_passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
  }
};

namespace acceptance {

// Each check returns an empty string on success, else the first failure.
using Check = std::function<std::string(const RunConfig&)>;

#define FANOKIT_REQUIRE(cond, msg)                            \
  do {                                                        \
    if (!(cond)) {                                            \
      std::ostringstream fanokit_msg_;                        \
      fanokit_msg_ << msg;                                    \
      return fanokit_msg_.str();                              \
    }                                                         \
  } while (0)

inline std::string volume_bound(const RunConfig&) {
  for (const auto& e : catalog_entries()) {
    auto x = catalog_model(e.name);
    if (x.dimension() > 3) continue;
    auto rep = verify_volume_bound(x);
    FANOKIT_REQUIRE(rep.satisfied, e.name << ": volume " << to_string(rep.volume) << " exceeds " << to_string(rep.bound));
    const bool projective = e.name == "P1" || e.name == "P2" || e.name == "P3";
    FANOKIT_REQUIRE(rep.equality == projective, e.name << ": equality is " << rep.equality);
  }
  return "";
}

inline std::string seshadri_signature(const RunConfig&) {
  for (std::size_t n = 2; n <= 3; ++n) {
    auto x = projective_space(n);
    for (std::size_t c = 0; c < x.charts().size(); ++c) {
      Rational eps = seshadri_constant(x, c);
      FANOKIT_REQUIRE(eps == Rational(static_cast<long>(n + 1)),
                      "P" << n << " chart " << c << ": epsilon = " << to_string(eps));
    }
  }
  return "";
}

inline std::string projective_profile(const RunConfig&) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto x = projective_space(n);
    auto prof = blowup_volume_profile(x, MonomialSubscheme::point(x, 0));
    const Rational np1(static_cast<long>(n + 1));
    const auto& pp = prof.profile;
    FANOKIT_REQUIRE(pp.pieces().size() == 1, "P" << n << ": " << pp.pieces().size() << " pieces");
    FANOKIT_REQUIRE(pp.lower() == 0 && pp.upper() == np1, "P" << n << ": wrong domain");
    auto expected = Polynomial::constant_minus_power(pow(np1, static_cast<unsigned>(n)), static_cast<unsigned>(n));
    FANOKIT_REQUIRE(pp.pieces()[0] == expected, "P" << n << ": piece " << pp.pieces()[0].to_string());
    FANOKIT_REQUIRE(pp.right_tail() && *pp.right_tail() == 0, "P" << n << ": profile does not vanish past tau");
  }
  return "";
}

inline std::string beta_degeneracy(const RunConfig&) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto x = projective_space(n);
    auto z = MonomialSubscheme::point(x, 0);
    auto rep = beta(x, z);
    const Rational np1(static_cast<long>(n + 1));
    auto brute = oracle::brute_force_lct(z.chart(0).generators(), n, 6);
    FANOKIT_REQUIRE(brute && *brute == rep.lct_value && rep.lct_value == static_cast<long>(n),
                    "P" << n << ": lct " << to_string(rep.lct_value));
    FANOKIT_REQUIRE(rep.volume_integral == Rational(static_cast<long>(n)) * pow(np1, static_cast<unsigned>(n)),
                    "P" << n << ": integral " << to_string(rep.volume_integral));
    FANOKIT_REQUIRE(rep.beta == 0, "P" << n << ": beta " << to_string(rep.beta));
  }
  return "";
}

inline std::string beta_nonnegative(const RunConfig& cfg) {
  for (const char* name : {"P1", "P2", "P1xP1", "P1xP2", "dP6"}) {
    auto x = catalog_model(name);
    auto scan = semistability_scan(x, standard_candidates(x), cfg.threads);
    for (const auto& e : scan.entries) {
      FANOKIT_REQUIRE(e.report, name << " " << e.candidate << ": " << e.message);
      FANOKIT_REQUIRE(e.report->beta >= 0, name << " " << e.candidate << ": beta " << to_string(e.report->beta));
    }
  }
  return "";
}

inline std::string saturation_laws(const RunConfig&) {
  std::mt19937 rng(44);
  for (const auto& entry : catalog_entries()) {
    auto x = catalog_model(entry.name);
    std::optional<std::size_t> chart;
    for (std::size_t c = 0; c < x.charts().size() && !chart; ++c)
      if (x.charts()[c].smooth) chart = c;
    auto f = ideal_power_filtration(x, MonomialSubscheme::point(x, *chart));
    auto fbar = f.saturated();
    const std::int64_t rmax = x.dimension() >= 3 ? 2 : 3;
    std::uniform_int_distribution<std::int64_t> rdist(1, rmax);
    std::vector<std::pair<std::int64_t, Rational>> samples;
    for (int i = 0; i < 20; ++i) {
      std::int64_t r = rdist(rng);
      const long hi = to_int64(ceil_of(Rational(r) * f.e_max_est())) + 1;
      std::uniform_int_distribution<long> xdist(-4, 2 * hi);
      samples.emplace_back(r, make_rational(xdist(rng), 2));
    }
    std::map<std::pair<std::int64_t, Rational>, MonomialSubscheme> cache;
    auto ideal = [&](std::int64_t r, const Rational& t) {
      auto key = std::make_pair(r, t);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, f.base_ideal(r, t)).first;
      return it->second;
    };
    const std::string& nm = entry.name;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& [r, t] = samples[i];
      const auto& [r2, t2] = samples[(i + 1) % samples.size()];
      const std::string at = nm + " (r, x) = (" + std::to_string(r) + ", " + to_string(t) + ")";
      FANOKIT_REQUIRE(ideal(r + r2, t + t2).contains(ideal(r, t) * ideal(r2, t2)), at << ": law 1");
      FANOKIT_REQUIRE(ideal(r, t).contains(ideal(r, t + make_rational(1, 2))), at << ": law 2");
      const Rational above = Rational(r) * f.e_max_est() + make_rational(1, 2);
      FANOKIT_REQUIRE(f.level(r, above).empty() && ideal(r, above).is_zero(), at << ": law 3");
      FANOKIT_REQUIRE(f.level(r, Rational(-r)).size() == f.sections(r).size() && ideal(r, Rational(-r)).is_unit(),
                      at << ": law 4");
      auto sat = saturate(f, r, t);
      auto lvl = f.level(r, t);
      std::set<IntVector> satset(sat.sections.begin(), sat.sections.end());
      for (const auto& u : lvl) FANOKIT_REQUIRE(satset.count(u), at << ": law 5, F not inside F-bar");
      FANOKIT_REQUIRE(Filtration::ideal_of(x, sat.sections, f.scale(r), "") == sat.ideal, at << ": law 5, base ideal");
      auto twice = fbar.level(r, t);
      FANOKIT_REQUIRE(std::set<IntVector>(twice.begin(), twice.end()) == satset, at << ": law 6");
      auto again = saturate(fbar, r, t).sections;
      FANOKIT_REQUIRE(std::set<IntVector>(again.begin(), again.end()) == satset, at << ": idempotence");
    }
  }
  return "";
}

inline std::string weight_identity(const RunConfig& cfg) {
  auto x = io::load_model(cfg.model);
  if (x.dimension() != 1) throw Error(ErrorCode::Configuration, "criterion 7 runs on a curve");
  auto f = ideal_power_filtration(x, MonomialSubscheme::point(x, 0));
  const std::int64_t ep = default_e_plus(f), em = default_e_minus(f), e = ep - em;
  const auto n = static_cast<unsigned>(x.dimension());
  for (std::int64_t r = 1; r <= 2; ++r) {
    auto s = compute_weight_series(f, r, cfg.k_max, ep, em, cfg.composition_cap);
    std::vector<Integer> w;
    for (const auto& rec : s.records) {
      FANOKIT_REQUIRE(rec.w == -rec.k * r * e * rec.h0 + rec.v, "r = " << r << ", k = " << rec.k);
      w.emplace_back(static_cast<long>(rec.w));
    }
    fit_eventual_polynomial(w, n + 1);
  }
  auto rep = compute_d_infty(f, ep, em, cfg.r_list, cfg.k_max, cfg.r_cap, cfg.composition_cap);
  FANOKIT_REQUIRE(rep.integral, "no exact integral");
  Rational prev = -1;
  for (const auto& smp : rep.samples) {
    Rational gap = abs(smp.a - rep.a_limit);
    FANOKIT_REQUIRE(prev < 0 || gap <= prev, "A_" << smp.r << " moves away from the limit");
    prev = gap;
  }
  FANOKIT_REQUIRE(abs(rep.samples.back().a - rep.a_limit) <= abs(rep.samples.front().a - rep.a_limit),
                  "last A_r is further from the limit than the first");
  return "";
}

inline std::string ding_trivial(const RunConfig& cfg) {
  auto x = io::load_model(cfg.model);
  IdealSequenceOnXxA1 unit(x, {MonomialSubscheme::unit(x)});
  auto t = ding_invariant(x, unit, 1, cfg.k_max);
  FANOKIT_REQUIRE(t.ding == 0, "unit sequence: ding " << to_string(t.ding));
  auto p = MonomialSubscheme::point(x, 0);
  IdealSequenceOnXxA1 s(x, {p, p});
  auto rep = ding_invariant(x, s, 1, cfg.k_max);
  FANOKIT_REQUIRE(rep.ding >= 0, "deformation to the normal cone: ding " << to_string(rep.ding));
  for (unsigned k = 1; k <= cfg.k_max; ++k)
    FANOKIT_REQUIRE(rep.w[k - 1] == -oracle::oracle_h0_quotient(x, s, 1, k), "w(" << k << ") disagrees with the oracle");
  return "";
}

inline std::string lct_engine(const RunConfig&) {
  std::mt19937 rng(20);
  std::uniform_int_distribution<int> dim(1, 3), count(1, 4), expo(0, 4);
  int done = 0;
  while (done < 10) {
    const auto n = static_cast<std::size_t>(dim(rng));
    std::vector<Monomial> gens;
    const int k = count(rng);
    std::int64_t top = 1;
    for (int i = 0; i < k; ++i) {
      Monomial g(n);
      for (auto& v : g) {
        v = expo(rng);
        top = std::max<std::int64_t>(top, v);
      }
      gens.push_back(g);
    }
    ChartIdeal ideal(n, gens);
    if (ideal.is_unit()) continue;
    ++done;
    auto bound = std::max<std::int64_t>(6, oracle::facet_normal_bound(n, top));
    auto main = lct_chart(ideal);
    auto brute = oracle::brute_force_lct(gens, n, bound);
    FANOKIT_REQUIRE(main && brute && *main == *brute, "ideal #" << done << " disagrees with enumeration");
    for (unsigned m : {2u, 3u}) {
      auto pm = lct_chart(ideal.power(m));
      FANOKIT_REQUIRE(pm && *pm == *main / Rational(static_cast<long>(m)), "ideal #" << done << ": scaling law, m = " << m);
    }
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    auto x = projective_space(n);
    auto l = lct_monomial(x, MonomialSubscheme::point(x, 0));
    FANOKIT_REQUIRE(l && *l == static_cast<long>(n), "lct of a point on P" << n);
  }
  return "";
}

#undef FANOKIT_REQUIRE

struct Entry {
  int id;
  std::string name;
  Check check;
};

inline const std::vector<Entry>& entries() {
  static const std::vector<Entry> list{
      {1, "volume bound", volume_bound},
      {2, "equality-case Seshadri constants", seshadri_signature},
      {3, "blowup profile of projective space", projective_profile},
      {4, "beta degeneracy at a point", beta_degeneracy},
      {5, "beta non-negative on the KE catalog", beta_nonnegative},
      {6, "saturation laws", saturation_laws},
      {7, "weight identity and limit", weight_identity},
      {8, "Ding of trivial and normal-cone configurations", ding_trivial},
      {9, "lct engine", lct_engine},
  };
  return list;
}

}  // namespace acceptance

inline AcceptanceSummary run_acceptance_suite(const RunConfig& cfg) {
  cfg.validate();
  AcceptanceSummary out;
  out.criteria = parallel_map(
      acceptance::entries(),
      [&](const acceptance::Entry& e) {
        CriterionResult res{e.id, e.name, false, "", 0};
        const auto start = std::chrono::steady_clock::now();
        try {
          res.detail = e.check(cfg);
          res.passed = res.detail.empty();
        } catch (const Error& err) {
          res.detail = err.what();
        } catch (const std::exception& err) {
          res.detail = std::string("unexpected: ") + err.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return res;
      },
      cfg.threads);
  return out;
}

inline std::string format_line(const CriterionResult& c) {
  std::ostringstream os;
  os << (c.passed ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name;
  if (!c.detail.empty()) os << " -- " << c.detail;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << " (" << c.seconds << " s)";
  return os.str();
}

/// Machine-readable summary without timings, so reruns compare equal.
inline io::json to_json(const AcceptanceSummary& s) {
  io::json list = io::json::array();
  for (const auto& c : s.criteria)
    list.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"criteria", list}, {"all_passed", s.all_passed()}};
}

}  // namespace fanokit
