// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Optional argv[1]: path of the dyadic binary, used for the determinism check.
// DYADIC_LONG=1 adds the X = 10^6 mean-value run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dyadic/global_verify.hpp"
#include "dyadic/local_checks.hpp"

using namespace dyadic;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget_s) {
    o.passed = false;
    o.detail += " [over budget " + std::to_string(budget_s) + " s]";
  }
  if (!o.passed) ++failures;
  std::printf("%s  %d  %-34s %7.2f s  %s\n", o.passed ? "PASS" : "FAIL", id, title, dt, o.detail.c_str());
  std::fflush(stdout);
}

// Aggregates local checks whose name starts with `prefix`.
Outcome from_checks(const std::vector<LocalCheck>& checks, const std::string& prefix) {
  int n = 0, bad = 0;
  std::string first_bad;
  for (const auto& c : checks) {
    if (c.name.rfind(prefix, 0) != 0) continue;
    ++n;
    if (!c.passed) {
      if (bad++ == 0) first_bad = c.name + ": " + c.detail;
    }
  }
  std::string d = std::to_string(n - bad) + "/" + std::to_string(n) + " checks";
  if (bad) d += "; first failure " + first_bad;
  return {n > 0 && bad == 0, d};
}

std::string render(const std::vector<LocalCheck>& checks) {
  std::ostringstream os;
  for (const auto& c : checks)
    os << (c.passed ? "PASS" : "FAIL") << '\t' << c.suite << '\t' << c.name << '\t' << c.detail << '\n';
  return os.str();
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  status = pclose(p);
  return out;
}

Outcome class_numbers() {
  int imag = 0, real = 0;
  for (std::int64_t d : enumerate_discriminants(10000, '-')) {
    ++imag;
    const std::int64_t h = class_number_by_forms(d);
    const double a = class_number_analytic(d);
    if (std::llround(a) != h || std::fabs(a - h) > 1e-6)
      return {false, "imaginary D=" + std::to_string(d) + " forms " + std::to_string(h) + " analytic " + std::to_string(a)};
  }
  for (std::int64_t d : enumerate_discriminants(10000, '+')) {
    ++real;
    const double h = hr_analytic(d) / regulator(d);
    if (std::llround(h) < 1 || std::fabs(h - std::llround(h)) > 1e-6)
      return {false, "real D=" + std::to_string(d) + " hR/R = " + std::to_string(h)};
  }
  return {true, std::to_string(imag) + " imaginary, " + std::to_string(real) + " real discriminants"};
}

Outcome mean_values(double lo, double hi, std::int64_t X) {
  std::ostringstream os;
  bool ok = true;
  HrCache cache;
  for (const auto& [d0, sign] : {std::pair<std::int64_t, char>{-1, '+'}, {2, '-'}}) {
    std::vector<std::int64_t> cps;
    for (std::int64_t x = 1000; x < X; x *= 10) cps.push_back(x);
    const MeanValueReport r = mean_value(d0, sign, X, &cache, cps);
    ok = ok && r.ratio >= lo && r.ratio <= hi;
    char buf[64];
    os << "d0=" << d0 << sign << " ratio";
    for (const auto& p : r.trajectory) {
      std::snprintf(buf, sizeof buf, " %.4f", p.ratio);
      os << buf;
    }
    os << "; ";
  }
  std::string d = os.str();
  char range[48];
  std::snprintf(range, sizeof range, "X=%lld in [%.2f, %.2f]", static_cast<long long>(X), lo, hi);
  return {ok, d + range};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  LocalOptions opts;  // seed 42, 10^6 Monte-Carlo samples, 10^4 invariance samples

  std::vector<LocalCheck> identities;
  criterion(1, "factorization identities", 1.0, [&] {
    identities = run_local_checks("identities", opts);
    return from_checks(identities, "factorization");
  });
  criterion(2, "covering identities", 1.0, [&] {
    Outcome a = from_checks(identities, "covering");
    Outcome b = from_checks(identities, "star-count");
    return Outcome{a.passed && b.passed, a.detail + "; star counting " + b.detail};
  });
  criterion(3, "D-set measures", 120.0, [&] {
    const auto checks = run_local_checks("measures", opts);
    Outcome ex = from_checks(checks, "exhaustive");
    Outcome mc = from_checks(checks, "montecarlo");
    return Outcome{ex.passed && mc.passed, "exhaustive " + ex.detail + "; Monte-Carlo " + mc.detail};
  });
  criterion(4, "stabilizer counts", 60.0, [&] { return from_checks(run_local_checks("stabilizer", opts), ""); });
  criterion(5, "level theory, exhaustive", 300.0, [&] {
    const std::size_t classes_m1 = enumerate_ramified(BaseField::q2()).size();
    const std::size_t classes_m2 = enumerate_ramified(BaseField::step(0, -2)).size();
    Outcome o = from_checks(run_local_checks("lifting", opts), "");
    o.passed = o.passed && classes_m1 == 6 && classes_m2 == 14;
    o.detail = std::to_string(classes_m1) + " + " + std::to_string(classes_m2) + " classes; " + o.detail;
    return o;
  });
  criterion(6, "invariance and rigidity", 120.0, [&] { return from_checks(run_local_checks("invariance", opts), ""); });
  criterion(7, "class-number oracle", 300.0, class_numbers);
  criterion(8, "mean value at X = 10^5", 600.0, [] { return mean_values(0.85, 1.15, 100000); });
  if (const char* l = std::getenv("DYADIC_LONG"); l && std::string(l) == "1")
    criterion(8, "mean value at X = 10^6", 7200.0, [] { return mean_values(0.93, 1.07, 1000000); });
  criterion(9, "determinism of verify-local", 300.0, [&] {
    const std::string a = render(run_local_checks("all", opts));
    const std::string b = render(run_local_checks("all", opts));
    if (a != b) return Outcome{false, "in-process runs differ"};
    if (cli.empty()) return Outcome{true, "in-process runs identical (" + std::to_string(a.size()) + " bytes)"};
    int s1 = 0, s2 = 0;
    const std::string cmd = "\"" + cli + "\" verify-local --suite all --seed 42 --samples 1000000";
    const std::string o1 = capture(cmd, s1);
    const std::string o2 = capture(cmd + " --jobs 1", s2);
    const bool ok = s1 == 0 && s2 == 0 && !o1.empty() && o1 == o2;
    return Outcome{ok, "in-process identical; CLI runs " + std::string(o1 == o2 ? "identical" : "differ") + " (" +
                           std::to_string(o1.size()) + " bytes)"};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
