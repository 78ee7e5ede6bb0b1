// dyadic: command-line front end for the level, density and mean-value tools.

#include <omp.h>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dyadic/densities.hpp"
#include "dyadic/global_verify.hpp"
#include "dyadic/level.hpp"
#include "dyadic/local_checks.hpp"
#include "dyadic/oracle.hpp"
#include "dyadic/orbits.hpp"
#include "dyadic/parse.hpp"
#include "json.hpp"

using nlohmann::ordered_json;
using namespace dyadic;

namespace {

constexpr int kSchemaVersion = 1;

PairIndex parse_index(const std::string& s) {
  if (s == "star") return PairIndex::Star;
  if (s == "rmrmur" || s == "rm_rm_ur") return PairIndex::RmRmUr;
  if (s == "rmrmrm" || s == "rm_rm_rm") return PairIndex::RmRmRm;
  throw Error(ErrorKind::InvalidArgument, "unknown index '" + s + "'");
}

DFamily parse_family(const std::string& s, int param) {
  if (s == "ell1") return DFamily::ell1(param);
  if (s == "ell-tilde") return DFamily::ell_tilde(param);
  if (s == "ur-star") return DFamily::ur_star();
  if (s == "star") return DFamily::star();
  throw Error(ErrorKind::InvalidArgument, "unknown family '" + s + "'");
}

char parse_sign(const std::string& s) {
  if (s == "+" || s == "-") return s[0];
  throw Error(ErrorKind::InvalidArgument, "sign must be + or -");
}

ordered_json ext_json(const ExtElem& x) { return {{"c", x.c.to_string()}, {"d", x.d.to_string()}}; }

ordered_json header(const char* kind) { return {{"schema", std::string(kind) + "/v" + std::to_string(kSchemaVersion)}}; }

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ordered_json constant_json(const TheoreticalConstant& t) {
  return {{"d0", t.d0},
          {"sign", std::string(1, t.sign)},
          {"c", {{"symbolic", t.c_symbolic}, {"value", t.c_value}}},
          {"sqrt_abs_disc", t.sqrt_abs_disc},
          {"zeta_k2", t.zeta_k2},
          {"euler_product", t.euler_product},
          {"euler_bound", t.euler_bound},
          {"value", t.value},
          {"interval", {t.lower, t.upper}}};
}

struct BaseOpts {
  std::string base = "q2";
  std::string step = "z^2-2";
  BaseField field() const { return parse_base(base, step); }
};

void add_base_opts(CLI::App* sub, BaseOpts& o) {
  sub->add_option("--base", o.base, "q2 or q2-ram")->check(CLI::IsMember({"q2", "q2-ram"}));
  sub->add_option("--step", o.step, "defining polynomial of the m=2 base");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level, local density and mean-value computations over dyadic fields"};
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = 0;
  app.add_option("--jobs", jobs, "worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);

  BaseOpts lv_base;
  std::string k1, k2;
  auto* lv = app.add_subcommand("level", "level of a pair of ramified extensions");
  add_base_opts(lv, lv_base);
  lv->add_option("--k1", k1, "Eisenstein polynomial")->required();
  lv->add_option("--k2", k2, "Eisenstein polynomial")->required();

  BaseOpts cl_base;
  std::string kx, kt;
  auto* cl = app.add_subcommand("classify", "orbit class of the standard point of kx against ktilde");
  add_base_opts(cl, cl_base);
  cl->add_option("--kx", kx)->required();
  cl->add_option("--ktilde", kt)->required();

  BaseOpts ss_base;
  std::string sk1, sk2;
  int i1 = 0, i2 = 0;
  auto* ss = app.add_subcommand("s-set", "list S_{i1,i2}(k1,k2)");
  add_base_opts(ss, ss_base);
  ss->add_option("--k1", sk1)->required();
  ss->add_option("--k2", sk2)->required();
  ss->add_option("--i1", i1)->required();
  ss->add_option("--i2", i2)->required();

  std::string dn_index, dn_quantity = "epsilon";
  int dn_lambda = 0, dn_q = 2, dn_m = 1;
  std::optional<int> dn_dx, dn_dt;
  bool dn_json = false;
  auto* dn = app.add_subcommand("density", "tabulated orbit density");
  dn->add_option("--index", dn_index)->required();
  dn->add_option("--delta-x", dn_dx, "defaults to delta~ for star and rm_rm_ur");
  dn->add_option("--lambda", dn_lambda);
  dn->add_option("--q", dn_q);
  dn->add_option("--m", dn_m);
  dn->add_option("--delta-tilde", dn_dt);
  dn->add_option("--quantity", dn_quantity, "epsilon, stab or orbit")
      ->check(CLI::IsMember({"epsilon", "stab", "orbit"}));
  dn->add_flag("--json", dn_json);

  std::string dv_family;
  int dv_param = 0, dv_q = 2, dv_m = 1, dv_dt = 0;
  bool dv_json = false;
  auto* dv = app.add_subcommand("d-volume", "closed-form volume of a congruence family");
  dv->add_option("--family", dv_family, "ell1, ell-tilde, ur-star or star")->required();
  dv->add_option("--param", dv_param);
  dv->add_option("--q", dv_q);
  dv->add_option("--m", dv_m);
  dv->add_option("--delta-tilde", dv_dt)->required();
  dv->add_flag("--json", dv_json);

  std::string vl_suite = "all";
  LocalOptions vl_opts;
  bool vl_json = false;
  auto* vl = app.add_subcommand("verify-local", "run the local oracle and identity checks");
  vl->add_option("--suite", vl_suite);
  vl->add_option("--seed", vl_opts.seed);
  vl->add_option("--samples", vl_opts.mc_samples, "Monte-Carlo samples per family")->check(CLI::PositiveNumber);
  vl->add_option("--invariance-samples", vl_opts.invariance_samples)->check(CLI::PositiveNumber);
  vl->add_flag("--json", vl_json);

  BaseOpts sc_base;
  std::string sc_kt;
  auto* sc = app.add_subcommand("stab-count", "enumerate the star stabilizer group and coset index");
  add_base_opts(sc, sc_base);
  sc->add_option("--ktilde", sc_kt)->required();

  std::int64_t mv_d0 = 0, mv_X = 0, mv_euler = 100000;
  std::string mv_sign, mv_cache;
  std::vector<std::int64_t> mv_checkpoints;
  auto* mv = app.add_subcommand("mean-value", "empirical mean of hR(F) hR(F*) against the limit");
  mv->add_option("--d0", mv_d0)->required();
  mv->add_option("--sign", mv_sign)->required();
  mv->add_option("--X", mv_X)->required()->check(CLI::PositiveNumber);
  mv->add_option("--cache", mv_cache, "hR cache file (DYADIC_CACHE overrides)");
  mv->add_option("--checkpoints", mv_checkpoints, "prefix bounds to report (default powers of 10)")->delimiter(',');
  mv->add_option("--euler-bound", mv_euler)->check(CLI::PositiveNumber);

  std::int64_t ct_d0 = 0, ct_euler = 100000;
  std::string ct_sign;
  auto* ct = app.add_subcommand("constant", "limiting constant with an error interval");
  ct->add_option("--d0", ct_d0)->required();
  ct->add_option("--sign", ct_sign)->required();
  ct->add_option("--euler-bound", ct_euler)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (jobs > 0) omp_set_num_threads(jobs);

  try {
    if (*lv) {
      const BaseField base = lv_base.field();
      const QuadExt e1(parse_poly(k1, base)), e2(parse_poly(k2, base));
      const PairReport r = level_of(e1, e2);
      ordered_json j = header("level");
      j["base"] = base.describe();
      j["k1"] = e1.to_string();
      j["k2"] = e2.to_string();
      j["lev"] = r.lev;
      j["delta1"] = r.delta1;
      j["delta2"] = r.delta2;
      j["delta3"] = r.delta3;
      j["rel_disc_exponents"] = {{"over_k1", r.rel_disc_exponents.first}, {"over_k2", r.rel_disc_exponents.second}};
      j["index"] = pair_index_name(r.index);
      j["certificate"] = {
          {"kind", r.certificate.kind == LevelCertificate::Kind::TraceGap ? "trace-gap" : "unramified-compositum"},
          {"eta", ext_json(r.certificate.eta)},
          {"trace_gap_order", r.certificate.trace_gap_order},
          {"norm_modulus", r.certificate.norm_modulus}};
      emit(j);
    } else if (*cl) {
      const BaseField base = cl_base.field();
      const QuadExt ex(parse_poly(kx, base)), et(parse_poly(kt, base));
      const OrbitSpace space(et);
      const OrbitClass c = space.classify_orbit(space.standard_rep(ex.poly()));
      if (c.index != classify_pair(ex, et))
        throw Error(ErrorKind::InternalMismatch, "orbit class disagrees with the field-pair index");
      ordered_json j = header("classify");
      j["base"] = base.describe();
      j["kx"] = ex.to_string();
      j["ktilde"] = et.to_string();
      j["index"] = pair_index_name(c.index);
      j["delta_x"] = c.delta_x;
      j["lambda_x"] = c.lambda_x ? ordered_json(*c.lambda_x) : ordered_json(nullptr);
      emit(j);
    } else if (*ss) {
      const BaseField base = ss_base.field();
      const EisensteinPoly p1 = parse_poly(sk1, base);
      const QuadExt e2(parse_poly(sk2, base));
      const auto elems = s_set(SSetQuery{p1, e2, i1, i2});
      ordered_json j = header("s-set");
      j["base"] = base.describe();
      j["k1"] = p1.to_string();
      j["k2"] = e2.to_string();
      j["i1"] = i1;
      j["i2"] = i2;
      j["count"] = elems.size();
      j["elements"] = ordered_json::array();
      for (const auto& x : elems) j["elements"].push_back(ext_json(x));
      emit(j);
    } else if (*dn) {
      const PairIndex index = parse_index(dn_index);
      if (!dn_dx && index != PairIndex::RmRmRm) dn_dx = dn_dt;
      if (!dn_dx) throw Error(ErrorKind::InvalidKey, "--delta-x is required");
      const OrbitDensityKey key{index, *dn_dx, dn_lambda, DensityParams{dn_q, dn_m, dn_dt}};
      Rational v;
      if (dn_quantity == "epsilon") v = epsilon_bar(key);
      else if (dn_quantity == "stab") v = stab_volume(key);
      else v = orbit_volume_sum(key);
      if (dn_json) {
        ordered_json j = header("density");
        j["index"] = pair_index_name(key.index);
        j["quantity"] = dn_quantity;
        j["delta_x"] = key.delta_x;
        j["lambda"] = dn_lambda;
        j["q"] = dn_q;
        j["m"] = dn_m;
        j["delta_tilde"] = dn_dt ? ordered_json(*dn_dt) : ordered_json(nullptr);
        j["value"] = rational_string(v);
        emit(j);
      } else {
        std::cout << rational_string(v) << "\n";
      }
    } else if (*dv) {
      const DFamily f = parse_family(dv_family, dv_param);
      const Rational v = d_volume(f, DensityParams{dv_q, dv_m, dv_dt});
      if (dv_json) {
        ordered_json j = header("d-volume");
        j["family"] = family_name(f);
        j["q"] = dv_q;
        j["m"] = dv_m;
        j["delta_tilde"] = dv_dt;
        j["value"] = rational_string(v);
        emit(j);
      } else {
        std::cout << rational_string(v) << "\n";
      }
    } else if (*vl) {
      const auto checks = run_local_checks(vl_suite, vl_opts);
      std::size_t failed = 0;
      for (const auto& c : checks) failed += c.passed ? 0 : 1;
      if (vl_json) {
        ordered_json j = header("verify-local");
        j["suite"] = vl_suite;
        j["seed"] = vl_opts.seed;
        j["samples"] = vl_opts.mc_samples;
        j["invariance_samples"] = vl_opts.invariance_samples;
        j["checks"] = ordered_json::array();
        for (const auto& c : checks)
          j["checks"].push_back({{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        j["passed"] = checks.size() - failed;
        j["failed"] = failed;
        emit(j);
      } else {
        for (const auto& c : checks)
          std::printf("%-4s  %-10s  %-44s  %s\n", c.passed ? "PASS" : "FAIL", c.suite.c_str(), c.name.c_str(),
                      c.detail.c_str());
        std::printf("%zu checks, %zu failed\n", checks.size(), failed);
      }
      return failed == 0 ? 0 : 1;
    } else if (*sc) {
      const BaseField base = sc_base.field();
      const QuadExt et(parse_poly(sc_kt, base));
      const StabCount c = stab_enumerate(et);
      const Rational want_order = star_group_order(et.delta(), base.q());
      const Rational want_index = star_coset_index(et.delta(), base.m(), base.q());
      const bool ok = Rational(static_cast<unsigned long>(c.group_order)) == want_order &&
                      Rational(static_cast<unsigned long>(c.coset_index)) == want_index;
      ordered_json j = header("stab-count");
      j["base"] = base.describe();
      j["ktilde"] = et.to_string();
      j["delta_tilde"] = et.delta();
      j["group_order"] = c.group_order;
      j["coset_index"] = c.coset_index;
      j["expected_group_order"] = rational_string(want_order);
      j["expected_coset_index"] = rational_string(want_index);
      j["match"] = ok;
      emit(j);
      return ok ? 0 : 1;
    } else if (*mv) {
      const char sign = parse_sign(mv_sign);
      if (const char* env = std::getenv("DYADIC_CACHE"); env && *env) mv_cache = env;
      if (mv_checkpoints.empty())
        for (std::int64_t x = 1000; x < mv_X; x *= 10) mv_checkpoints.push_back(x);
      HrCache cache;
      if (!mv_cache.empty() && std::filesystem::exists(mv_cache)) cache.load(mv_cache);
      const MeanValueReport r =
          mean_value(mv_d0, sign, mv_X, mv_cache.empty() ? nullptr : &cache, mv_checkpoints, mv_euler);
      if (!mv_cache.empty()) cache.save(mv_cache);
      ordered_json j = header("mean-value");
      j["d0"] = r.d0;
      j["sign"] = std::string(1, r.sign);
      j["X"] = r.X;
      j["empirical"] = r.empirical;
      j["theoretical"] = constant_json(r.theoretical);
      j["ratio"] = r.ratio;
      j["field_count"] = r.field_count;
      j["trajectory"] = ordered_json::array();
      for (const auto& p : r.trajectory)
        j["trajectory"].push_back(
            {{"X", p.X}, {"empirical", p.empirical}, {"ratio", p.ratio}, {"field_count", p.field_count}});
      j["approaching"] = r.approaching;
      emit(j);
    } else if (*ct) {
      ordered_json j = header("constant");
      j.update(constant_json(theoretical_constant(ct_d0, parse_sign(ct_sign), ct_euler)));
      emit(j);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool verification = e.kind() == ErrorKind::InternalMismatch || e.kind() == ErrorKind::RoundingInconsistency;
    return verification ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
