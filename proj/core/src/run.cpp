#include "permzhu/run.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>

#include "permzhu/cache.hpp"
#include "permzhu/delta.hpp"
#include "permzhu/fermion.hpp"
#include "permzhu/iso.hpp"

namespace permzhu {

namespace {

using nlohmann::ordered_json;

ordered_json scalar_json(const CycloScalar& c) {
  ordered_json coeffs = ordered_json::array();
  for (const Rational& q : c.coeffs()) coeffs.push_back(rational_to_string(q));
  return ordered_json{{"order", c.order()}, {"coeffs", coeffs}};
}

ordered_json scalar_vector_json(const std::vector<CycloScalar>& v) {
  ordered_json a = ordered_json::array();
  for (const CycloScalar& c : v) a.push_back(scalar_json(c));
  return a;
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : m) rows.push_back(scalar_vector_json(row));
  return rows;
}

ordered_json check_json(const CheckReport& r) {
  ordered_json j;
  j["pass"] = r.pass;
  j["pairs_checked"] = r.pairs_checked;
  j["parity_cases"] = ordered_json{{"even_even", r.parity_cases[0]},
                                   {"even_odd", r.parity_cases[1]},
                                   {"odd_even", r.parity_cases[2]},
                                   {"odd_odd", r.parity_cases[3]}};
  j["counterexample"] = r.counterexample.empty() ? ordered_json(nullptr)
                                                 : ordered_json(r.counterexample);
  return j;
}

ordered_json quotient_json(const FiniteAlgebra& q) {
  ordered_json j;
  j["dim"] = q.dim();
  ordered_json basis = ordered_json::array();
  for (const TensorMonomial& m : q.basis()) basis.push_back(label(m));
  j["basis"] = basis;
  j["identity_index"] = q.identity_index();
  j["omega_class"] = scalar_vector_json(q.omega_class());
  ordered_json sc = ordered_json::array();
  for (size_t i = 0; i < q.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (size_t jj = 0; jj < q.dim(); ++jj) row.push_back(scalar_vector_json(q.sc(i, jj)));
    sc.push_back(std::move(row));
  }
  j["structure_constants"] = sc;
  return j;
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["algebra"] = c.algebra;
  j["k"] = c.k;
  j["cycles"] = c.cycles;
  j["cutoff"] = c.cutoff.to_string();
  j["gen_cutoff"] = c.gen_cutoff.to_string();
  j["checks"] = c.checks;
  return j;
}

bool is_single_cycle(const RunConfig& c) {
  return c.cycles.size() == 1 && c.cycles[0] == c.k;
}

std::string target_name(int k) { return k % 2 == 0 ? "A_sigma(F)" : "A(F)"; }

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
  }
};

ordered_json meta_json(const Timer& t, const OspanCache& cache) {
  ordered_json j;
  j["timing_ms"] = t.ms();
  j["cache"] = ordered_json{{"hits", cache.stats().hits},
                            {"misses", cache.stats().misses},
                            {"warnings", cache.stats().warnings}};
  return j;
}

const std::set<std::string> kKnownChecks = {"well-defined", "homomorphism", "iso", "corollary",
                                            "conjugation"};

std::string canonical_check(std::string name) {
  std::replace(name.begin(), name.end(), '_', '-');
  return name;
}

void warn_small_margin(Weight gen, Weight cutoff, std::vector<std::string>& warnings) {
  if (gen.twice() < cutoff.twice() + 4) {
    warnings.push_back(
        "gen cutoff below cutoff+2: dimensions may be inflated and membership checks may report "
        "false negatives");
  }
}

}  // namespace

void RunConfig::validate_and_default(bool need_k) {
  if (algebra != "fermion")
    throw ConfigError("unknown algebra '" + algebra + "' (only 'fermion' ships)");
  if (need_k && k < 1) throw ConfigError("--k is required and must be >= 1");
  if (cycles.empty()) cycles = {k};
  int sum = std::accumulate(cycles.begin(), cycles.end(), 0);
  if (sum != k)
    throw ConfigError("cycle type sums to " + std::to_string(sum) + ", expected k = " +
                      std::to_string(k));
  for (int c : cycles)
    if (c < 1) throw ConfigError("cycle lengths must be >= 1");
  if (!has_cutoff && !has_gen_cutoff) {
    cutoff = Weight::from_int(1);
    gen_cutoff = Weight::from_int(3);
  } else if (!has_cutoff) {
    cutoff = std::min(Weight::from_int(1), gen_cutoff);
  } else if (!has_gen_cutoff) {
    gen_cutoff = Weight::from_halves(cutoff.twice() + 4);
  }
  if (cutoff.twice() < 0) throw ConfigError("cutoff must be nonnegative");
  if (gen_cutoff < cutoff) throw ConfigError("--gen-cutoff must be >= --cutoff");
  for (std::string& c : checks) {
    c = canonical_check(c);
    if (!kKnownChecks.count(c)) throw ConfigError("unknown check '" + c + "'");
  }
}

RunResult run_compute(RunConfig config) {
  config.validate_and_default();
  Timer timer;
  const FreeFermion& base = FreeFermion::instance();
  OspanCache cache(config.cache_dir, config.algebra, config.threads);
  OspanBuilder builder = cache.builder();

  RunResult out;
  ordered_json& rep = out.report;
  rep["command"] = "compute";
  rep["schema_version"] = 1;
  rep["config"] = config_json(config);

  std::vector<std::string> warnings;
  warn_small_margin(config.gen_cutoff, config.cutoff, warnings);

  {
    const ACoeffs a8 = solve_a_coeffs(config.k, 8);
    ordered_json values = ordered_json::array();
    for (const Rational& q : a8.a) values.push_back(rational_to_string(q));
    rep["a_coeffs"] = ordered_json{{"k", config.k}, {"J", 8}, {"values", values}};
  }

  try {
    ordered_json stab;
    std::vector<std::string> increments;
    std::vector<size_t> dims_src, dims_tgt;

    if (is_single_cycle(config)) {
      std::unique_ptr<IsoSession> session;
      for (int d = 0; d <= 2; ++d) {
        Weight n = Weight::from_halves(config.cutoff.twice() + d);
        Weight w = Weight::from_halves(config.gen_cutoff.twice() + d);
        increments.push_back("N=" + n.to_string() + ",Wgen=" + w.to_string());
        if (d == 0) {
          session = std::make_unique<IsoSession>(base, config.k, n, w, builder);
          dims_src.push_back(session->source_quotient().dim());
          dims_tgt.push_back(session->target_quotient().dim());
        } else {
          TensorAlgebra salg(base, config.k);
          Twist stw(salg, TwistSpec{{config.k}, false});
          Weight wstore = Weight::from_halves(w.twice() + 2);
          OSpan sspan = builder(stw, w, wstore);
          dims_src.push_back(quotient_dimension(stw, sspan, n));
          TensorAlgebra talg(base, 1);
          Twist ttw(talg, TwistSpec{{1}, config.k % 2 == 0});
          OSpan tspan = builder(ttw, w, wstore);
          dims_tgt.push_back(quotient_dimension(ttw, tspan, n));
        }
      }
      rep["source"] = quotient_json(session->source_quotient());
      rep["source"]["twist"] = session->source_twist().spec().describe();
      rep["target"] = quotient_json(session->target_quotient());
      rep["target"]["twist"] = session->target_twist().spec().describe();
      rep["target"]["name"] = target_name(config.k);
    } else {
      for (int d = 0; d <= 2; ++d) {
        Weight n = Weight::from_halves(config.cutoff.twice() + d);
        Weight w = Weight::from_halves(config.gen_cutoff.twice() + d);
        increments.push_back("N=" + n.to_string() + ",Wgen=" + w.to_string());
        CorollaryReport cr = general_cycle_type(base, config.cycles, n, w, builder);
        dims_src.push_back(cr.dim);
        dims_tgt.push_back(cr.expected);
        if (d == 0) {
          ordered_json per = ordered_json::array();
          for (const auto& [len, dim] : cr.per_cycle_dims)
            per.push_back(ordered_json{{"cycle", len}, {"target_dim", dim}});
          rep["corollary"] = ordered_json{{"dim", cr.dim},
                                          {"per_cycle_dims", per},
                                          {"expected_product", cr.expected},
                                          {"pass", cr.pass}};
          TensorAlgebra alg(base, config.k);
          Twist tw(alg, TwistSpec{config.cycles, false});
          OSpan span = builder(tw, w, Weight::from_halves(w.twice() + 2));
          rep["source"] = quotient_json(quotient_algebra(tw, span, n));
          rep["source"]["twist"] = tw.spec().describe();
        }
      }
    }

    const bool stable_src = dims_src[0] == dims_src[1] && dims_src[1] == dims_src[2];
    const bool stable_tgt = dims_tgt[0] == dims_tgt[1] && dims_tgt[1] == dims_tgt[2];
    stab["increments"] = increments;
    stab["dims_source"] = dims_src;
    stab["dims_target"] = dims_tgt;
    stab["stable"] = stable_src && stable_tgt;
    rep["stabilization"] = stab;
    if (!(stable_src && stable_tgt))
      warnings.push_back("dimensions did not stabilize across two cutoff increments");
    out.exit_code = 0;
  } catch (const CutoffError& e) {
    rep["error"] = e.what();
    out.exit_code = 1;
  }

  rep["warnings"] = warnings;
  rep["meta"] = meta_json(timer, cache);
  return out;
}

RunResult run_verify(RunConfig config) {
  config.validate_and_default();
  Timer timer;
  const FreeFermion& base = FreeFermion::instance();
  OspanCache cache(config.cache_dir, config.algebra, config.threads);
  OspanBuilder builder = cache.builder();

  RunResult out;
  ordered_json& rep = out.report;
  rep["command"] = "verify";
  rep["schema_version"] = 1;

  std::vector<std::string> warnings;
  warn_small_margin(config.gen_cutoff, config.cutoff, warnings);

  if (config.checks.empty()) {
    if (is_single_cycle(config)) {
      config.checks = {"well-defined", "homomorphism", "iso"};
    } else {
      config.checks = {"corollary"};
    }
  }
  rep["config"] = config_json(config);

  bool all_pass = true;
  ordered_json checks;
  try {
    std::unique_ptr<IsoSession> session;
    auto need_session = [&]() -> IsoSession& {
      if (!session) {
        if (!is_single_cycle(config))
          throw ConfigError("iso checks apply to single-cycle twists; use --checks corollary");
        session = std::make_unique<IsoSession>(base, config.k, config.cutoff, config.gen_cutoff,
                                               builder);
      }
      return *session;
    };
    std::optional<CheckReport> wd_cache, hom_cache;
    auto get_wd = [&]() -> const CheckReport& {
      if (!wd_cache) wd_cache = need_session().verify_well_defined(config.gen_cutoff);
      return *wd_cache;
    };
    auto get_hom = [&]() -> const CheckReport& {
      if (!hom_cache) hom_cache = need_session().verify_homomorphism(config.cutoff);
      return *hom_cache;
    };

    for (const std::string& name : config.checks) {
      if (name == "well-defined") {
        const CheckReport& r = get_wd();
        checks["well_defined"] = check_json(r);
        all_pass = all_pass && r.pass;
      } else if (name == "homomorphism") {
        const CheckReport& r = get_hom();
        checks["homomorphism"] = check_json(r);
        all_pass = all_pass && r.pass;
      } else if (name == "iso") {
        IsoReport r = need_session().build_iso_matrix(get_wd(), get_hom());
        ordered_json j;
        j["dim_source"] = r.dim_source;
        j["dim_target"] = r.dim_target;
        j["target"] = target_name(config.k);
        j["phi_matrix"] = matrix_json(r.phi);
        j["psi_matrix"] = matrix_json(r.psi);
        j["well_defined"] = r.well_defined;
        j["homomorphism"] = r.homomorphism;
        j["invertible"] = r.invertible;
        j["inverse_roundtrip"] = r.inverse_roundtrip;
        j["counterexample"] =
            r.counterexample.empty() ? ordered_json(nullptr) : ordered_json(r.counterexample);
        checks["iso"] = j;
        all_pass = all_pass && r.pass();
      } else if (name == "corollary") {
        CorollaryReport r =
            general_cycle_type(base, config.cycles, config.cutoff, config.gen_cutoff, builder);
        ordered_json per = ordered_json::array();
        for (const auto& [len, dim] : r.per_cycle_dims)
          per.push_back(ordered_json{{"cycle", len}, {"target_dim", dim}});
        checks["corollary"] = ordered_json{{"dim", r.dim},
                                           {"per_cycle_dims", per},
                                           {"expected_product", r.expected},
                                           {"pass", r.pass}};
        all_pass = all_pass && r.pass;
      } else if (name == "conjugation") {
        const ACoeffs coeffs = solve_a_coeffs(config.k, 8);
        ordered_json cases = ordered_json::array();
        bool pass = true;
        const std::vector<std::pair<std::string, State>> us = {
            {"vacuum", State::of(fermion_vacuum())},
            {"psi", State::of(fermion_psi())},
            {"omega", base.conformal_vector()}};
        for (const auto& [name_u, u] : us) {
          ConjugationReport r = verify_conjugation(base, coeffs, u, 2, Weight::from_halves(3));
          cases.push_back(ordered_json{{"u", name_u},
                                       {"ok", r.ok},
                                       {"coefficients_checked", r.coefficients_checked},
                                       {"mismatch", r.mismatch.empty()
                                                        ? ordered_json(nullptr)
                                                        : ordered_json(r.mismatch)}});
          pass = pass && r.ok;
        }
        checks["conjugation"] = ordered_json{{"order", 2}, {"cases", cases}, {"pass", pass}};
        all_pass = all_pass && pass;
      }
    }
    out.exit_code = all_pass ? 0 : 1;
  } catch (const CutoffError& e) {
    rep["error"] = e.what();
    out.exit_code = 1;
  }

  rep["checks"] = checks;
  rep["pass"] = all_pass && out.exit_code == 0;
  rep["warnings"] = warnings;
  rep["meta"] = meta_json(timer, cache);
  return out;
}

std::string render_report(const nlohmann::ordered_json& report) { return report.dump(2) + "\n"; }

}  // namespace permzhu
