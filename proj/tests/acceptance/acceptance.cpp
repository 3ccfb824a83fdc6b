// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rprime/analytic.hpp"
#include "rprime/error.hpp"
#include "rprime/field.hpp"
#include "rprime/ideal_enum.hpp"
#include "rprime/scan.hpp"
#include "rprime/sieve.hpp"

using namespace rprime;

namespace {

const std::string kData = RPRIME_DATA_DIR;
const std::vector<std::string> kFields = {"q", "q_i", "q_sqrt2", "q_sqrt_m5", "cubic23"};

FieldSpec field(const std::string& name) { return load_field_spec(kData + "/fields/" + name + ".json"); }

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (ok) detail << why;
    ok = false;
  }
};

Outcome oracle_equivalence() {
  Outcome out;
  const std::vector<std::pair<unsigned, unsigned>> cases = {{1, 2}, {1, 3}, {2, 1}, {2, 2}, {3, 1}};
  std::uint64_t compared = 0;
  for (const auto& name : kFields) {
    const FieldSpec f = field(name);
    const auto t = build_tables(f, 300);
    for (const auto& [m, r] : cases) {
      // largest x <= 300 with I_K(x)^m <= 1e9
      std::uint64_t X = 300;
      while (X > 0 && std::pow(double(ideal_count(t, double(X))), m) > 1e9) --X;
      const auto profile = count_rprime_direct_profile(f, double(X), m, r);
      for (std::uint64_t x = 1; x <= X; ++x) {
        const auto mob = vmr_via_mobius(t, double(x), m, r);
        ++compared;
        if (mob != profile[x]) {
          out.fail(name + " m=" + std::to_string(m) + " r=" + std::to_string(r) + " x=" + std::to_string(x) +
                   ": mobius " + std::to_string(mob) + " vs direct " + std::to_string(profile[x]));
        }
      }
      // independent single-x walks at a few points
      for (std::uint64_t x : {X / 3, X}) {
        if (x >= 1 && count_rprime_direct(f, double(x), m, r) != vmr_via_mobius(t, double(x), m, r)) {
          out.fail(name + " single-x mismatch at x=" + std::to_string(x));
        }
      }
    }
  }
  out.detail << (out.ok ? "" : "; ") << compared << " (field, m, r, x) points compared";
  return out;
}

Outcome ideal_count_anchors() {
  Outcome out;
  const auto q = build_tables(field("q"), 1'000'000);
  for (std::uint64_t x = 1; x <= 1'000'000; ++x) {
    if (ideal_count(q, double(x)) != x) {
      out.fail("I_Q(" + std::to_string(x) + ") != x");
      break;
    }
  }
  const auto gi = build_tables(field("q_i"), 100);
  if (ideal_count(gi, 100) != 79) out.fail("I_Q(i)(100) = " + std::to_string(ideal_count(gi, 100)));

  for (const auto& name : kFields) {
    const FieldSpec f = field(name);
    const auto t = build_tables(f, 10'000);
    const auto all = enumerate_ideals(f, 10'000);
    std::vector<std::uint64_t> per(10'001, 0);
    for (const auto& I : all) ++per[I.norm];
    std::uint64_t running = 0;
    for (std::uint64_t x = 1; x <= 10'000; ++x) {
      running += per[x];
      if (running != ideal_count(t, double(x))) {
        out.fail(name + ": enumerate length != ideal_count at x=" + std::to_string(x));
        break;
      }
    }
  }
  out.detail << (out.ok ? "" : "; ") << "I_Q(i)(100) = " << ideal_count(gi, 100);
  return out;
}

Outcome density() {
  Outcome out;
  const double inv_zeta2 = 6 / (std::numbers::pi * std::numbers::pi);
  const auto q = build_tables(field("q"), 1'000'000);

  const double d1 = std::abs(double(vmr_via_mobius(q, 1e4, 2, 1)) / 1e8 - inv_zeta2);
  const double d2 = std::abs(double(vmr_via_mobius(q, 1e6, 1, 2)) / 1e6 - inv_zeta2);
  const FieldSpec gi_spec = field("q_i");
  const auto gi = build_tables(gi_spec, 100'000);
  const double c = constant_c(gi_spec).value;
  const double zeta_gi = zeta_K(gi_spec, 2, 1e-6).value;
  const double d3 = std::abs(double(vmr_via_mobius(gi, 1e5, 1, 2)) / (c * 1e5) - 1 / zeta_gi);

  if (!(d1 <= 0.005)) out.fail("V_2^1(1e4,Q) density off");
  if (!(d2 <= 0.005)) out.fail("V_1^2(1e6,Q) density off");
  if (!(d3 <= 0.01)) out.fail("V_1^2(1e5,Q(i)) density off");
  if (std::abs(c - std::numbers::pi / 4) > 1e-14) out.fail("c(Q(i)) != pi/4");
  out.detail << (out.ok ? "" : "; ") << "deviations " << d1 << ", " << d2 << ", " << d3;
  return out;
}

Outcome mertens() {
  Outcome out;
  for (const auto& name : kFields) {
    const auto t = build_tables(field(name), 10'000);
    for (std::uint64_t x = 1; x <= 10'000; ++x) {
      if (vmr_via_mobius(t, double(x), 1, 1) != 1) {
        out.fail(name + ": V_1^1(" + std::to_string(x) + ") != 1");
        break;
      }
    }
  }
  out.detail << (out.ok ? "" : "; ") << "V_1^1(x) = 1 for x <= 1e4 on " << kFields.size() << " fields";
  return out;
}

Outcome exponent_tables() {
  Outcome out;
  using Q = Rational;
  const auto a3 = alpha_beta(3);
  if (!(a3.alpha == Q(26, 51) && a3.beta == Q(10, 17) && !a3.epsilon)) out.fail("alpha_beta(3)");
  const auto a7 = alpha_beta(7);
  if (!(a7.alpha == Q(25, 98) && a7.beta == Q(2, 7) && !a7.epsilon)) out.fail("alpha_beta(7)");
  const auto a10 = alpha_beta(10);
  if (!(a10.alpha == Q(3, 16) && a10.beta == Q(0) && a10.epsilon)) out.fail("alpha_beta(10)");
  if (!(main_theorem_bound(3, 1, 2) == ExponentResult{Q(38, 51), Q(20, 17), false})) out.fail("main_theorem_bound(3,1,2)");
  if (!(sittinger_exponent(1, 1, 2) == ExponentResult{Q(1, 2), Q(0), false})) out.fail("sittinger_exponent(1,1,2)");
  const auto ab = abelian_exponent(4, 1, 2);
  if (!(ab.exponent == Q(3, 4) && ab.epsilon)) out.fail("abelian_exponent(4,1,2)");
  out.detail << (out.ok ? "" : "; ") << "alpha(3)=" << to_string(a3.alpha) << " beta(3)=" << to_string(a3.beta)
             << " bound(3,1,2)=" << to_string(main_theorem_bound(3, 1, 2).exponent);
  return out;
}

Outcome improvement_sweep() {
  Outcome out;
  int covered = 0;
  for (int n = 3; n <= 30; ++n) {
    for (int m = 1; m <= 4; ++m) {
      for (int r = 1; r <= 4; ++r) {
        if (r * m < 2) continue;
        ++covered;
        const auto a = main_theorem_bound(n, m, r);
        const auto b = sittinger_exponent(n, m, r);
        if (!sharper_than(a, b)) {
          out.fail("n=" + std::to_string(n) + " m=" + std::to_string(m) + " r=" + std::to_string(r) + ": " +
                   to_string(a.exponent) + " vs " + to_string(b.exponent));
        }
      }
    }
  }
  out.detail << (out.ok ? "" : "; ") << covered << " (n, m, r) cases";
  return out;
}

Outcome zeta_accuracy() {
  Outcome out;
  const auto zq = zeta_K(field("q"), 2, 1e-6);
  const double e1 = std::abs(zq.value - std::numbers::pi * std::numbers::pi / 6);
  const auto zi = zeta_K(field("q_i"), 2, 1e-6);
  const double e2 = std::abs(zi.value - 1.5067030);
  if (!(e1 <= 2e-6)) out.fail("zeta_Q(2)");
  if (!(e2 <= 5e-6)) out.fail("zeta_Q(i)(2)");
  out.detail << (out.ok ? "" : "; ") << "errors " << e1 << ", " << e2 << " (primes to " << zq.prime_bound << ", "
             << zi.prime_bound << ")";
  return out;
}

Outcome slopes() {
  Outcome out;
  const FieldSpec q = field("q");
  const auto t = build_tables(q, 1u << 20);
  ScanConfig cfg;
  cfg.x_min = 1u << 10;
  cfg.x_max = 1u << 20;
  cfg.grid_points = 11;
  cfg.m = 1;
  cfg.r = 2;
  const auto sf = fit_slope(run_error_scan(q, t, cfg).records);
  cfg.m = 2;
  cfg.r = 1;
  const auto cp = fit_slope(run_error_scan(q, t, cfg).records);
  if (!(sf.slope >= 0.2 && sf.slope <= 0.75)) out.fail("squarefree slope out of range");
  if (!(cp.slope >= 0.7 && cp.slope <= 1.3)) out.fail("coprime-pair slope out of range");
  out.detail << (out.ok ? "" : "; ") << "slopes " << sf.slope << " (m=1,r=2), " << cp.slope << " (m=2,r=1)";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 oracle equivalence: Moebius sum = direct count", oracle_equivalence},
      {"2 ideal-count anchors", ideal_count_anchors},
      {"3 density 1/zeta_K(rm)", density},
      {"4 V_1^1(x) = 1", mertens},
      {"5 exponent tables exact", exponent_tables},
      {"6 improvement sweep", improvement_sweep},
      {"7 zeta_K accuracy", zeta_accuracy},
      {"8 empirical slopes", slopes},
  };
  int failures = 0;
  for (const auto& [label, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      Outcome o = run();
      ok = o.ok;
      detail = o.detail.str();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  AC%s  [%s] (%.1fs)\n", ok ? "PASS" : "FAIL", label.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    failures += !ok;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
