#include "dyadic/local_checks.hpp"

#include <cmath>
#include <cstdio>

#include "dyadic/oracle.hpp"

namespace dyadic {

namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<int> deltas(int m) {
  std::vector<int> out;
  for (int d = 2; d <= 2 * m; d += 2) out.push_back(d);
  out.push_back(2 * m + 1);
  return out;
}

void identities(std::vector<LocalCheck>& out) {
  for (int m : {1, 2}) {
    for (int dt : deltas(m)) {
      int keys = 0, bad = 0;
      for (const auto& k : admissible_keys(2, m, dt)) {
        if (k.index == PairIndex::Star) continue;
        ++keys;
        if (epsilon_bar(k) != stab_volume(k) * orbit_volume_sum(k)) ++bad;
      }
      out.push_back({"identities", "factorization m=" + std::to_string(m) + " dt=" + std::to_string(dt), bad == 0,
                     std::to_string(keys) + " keys"});

      const DensityParams p{2, m, dt};
      int cov = 0, cbad = 0;
      for (const auto& k : admissible_keys(2, m, dt)) {
        if (k.index != PairIndex::RmRmRm) continue;
        ++cov;
        const Covering c = covering_for(k);
        if (orbit_volume_sum(k) != q_index(c.j, 2) * d_volume(c.family, p)) ++cbad;
      }
      const bool ur_ok = ur_star_volume_sum(p) == q_index(dt - 1, 2) * d_volume(DFamily::ur_star(), p);
      out.push_back({"identities", "covering m=" + std::to_string(m) + " dt=" + std::to_string(dt), cbad == 0 && ur_ok,
                     std::to_string(cov + 1) + " cases"});

      const Rational star = orbit_volume_sum(OrbitDensityKey{PairIndex::Star, dt, 0, p});
      const bool s_ok =
          star_volume_from_counts(dt, 2, star_group_order(dt, 2), star_coset_index(dt, m, 2)) == star;
      out.push_back({"identities", "star-count m=" + std::to_string(m) + " dt=" + std::to_string(dt), s_ok,
                     rational_string(star)});
    }
  }
}

void measures(std::vector<LocalCheck>& out, const LocalOptions& o) {
  for (const auto& kt : enumerate_ramified(BaseField::q2())) {
    const OrbitSpace s(kt);
    const DensityParams p{2, 1, kt.delta()};
    for (const auto& f : families_for(s)) {
      const std::string name = kt.to_string() + " " + family_name(f);
      const Rational exact = d_volume(f, p);
      const auto ex = measure_exhaustive(s, f, kt.delta() + 2);
      out.push_back({"measures", "exhaustive " + name, *ex.exact == exact, rational_string(*ex.exact)});
      const auto mc = measure_montecarlo(s, f, o.mc_samples, o.seed);
      const double z = std::fabs(mc.estimate - exact.get_d()) / mc.stderr_;
      out.push_back({"measures", "montecarlo " + name, z <= 4.0,
                     "est=" + fmt("%.6e", mc.estimate) + " z=" + fmt("%.2f", z)});
    }
  }
}

void stabilizer(std::vector<LocalCheck>& out) {
  for (const auto& kt : enumerate_ramified(BaseField::q2())) {
    const StabCount c = stab_enumerate(kt);
    const int dt = kt.delta();
    const bool ok = Rational(static_cast<unsigned long>(c.group_order)) == star_group_order(dt, 2) &&
                    Rational(static_cast<unsigned long>(c.coset_index)) == star_coset_index(dt, 1, 2);
    out.push_back({"stabilizer", kt.to_string(), ok,
                   std::to_string(c.group_order) + "/" + std::to_string(c.coset_index)});
  }
}

void lifting(std::vector<LocalCheck>& out) {
  for (const auto& base : {BaseField::q2(), BaseField::step(0, -2)}) {
    const LiftingReport r = lifting_suite(base);
    // one line per property, aggregated over pairs
    std::vector<std::string> names;
    for (const auto& c : r.checks)
      if (!c.skipped && std::find(names.begin(), names.end(), c.name) == names.end()) names.push_back(c.name);
    for (const auto& n : names) {
      int total = 0, failed = 0;
      bool info = false;
      for (const auto& c : r.checks) {
        if (c.skipped || c.name != n) continue;
        ++total;
        info = c.informational;
        if (!c.passed) ++failed;
      }
      std::string detail = std::to_string(total - failed) + "/" + std::to_string(total) + " pairs";
      if (info) detail += " (informational)";
      out.push_back({"lifting", base.describe() + " " + n, info || failed == 0, detail});
    }
  }
}

void invariance(std::vector<LocalCheck>& out, const LocalOptions& o) {
  for (const auto& kt : enumerate_ramified(BaseField::q2())) {
    const OrbitSpace s(kt);
    for (const auto& r : invariance_suite(s, o.invariance_samples, o.seed)) {
      const bool ok = r.stability_violations == 0 && r.transitions_outside_subgroup == 0 &&
                      r.classification_mismatches == 0;
      out.push_back({"invariance", kt.to_string() + " " + family_name(r.family), ok,
                     "violations=" + std::to_string(r.stability_violations) +
                         " transitions=" + std::to_string(r.transitions) +
                         " outside=" + std::to_string(r.transitions_outside_subgroup) +
                         " mismatches=" + std::to_string(r.classification_mismatches)});
    }
  }
}

}  // namespace

const std::vector<std::string>& local_suite_names() {
  static const std::vector<std::string> names{"identities", "measures", "stabilizer", "lifting", "invariance"};
  return names;
}

std::vector<LocalCheck> run_local_checks(const std::string& suite, const LocalOptions& opts) {
  std::vector<LocalCheck> out;
  const bool all = suite == "all";
  bool known = all;
  for (const auto& n : local_suite_names()) known = known || n == suite;
  if (!known) throw Error(ErrorKind::InvalidArgument, "unknown suite " + suite);
  if (all || suite == "identities") identities(out);
  if (all || suite == "measures") measures(out, opts);
  if (all || suite == "stabilizer") stabilizer(out);
  if (all || suite == "lifting") lifting(out);
  if (all || suite == "invariance") invariance(out, opts);
  return out;
}

}  // namespace dyadic
