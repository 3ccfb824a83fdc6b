#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rprime/analytic.hpp"
#include "rprime/error.hpp"
#include "rprime/field.hpp"
#include "rprime/sieve.hpp"

using namespace rprime;

namespace {

const std::string kData = RPRIME_DATA_DIR;

FieldSpec field(const std::string& name) { return load_field_spec(kData + "/fields/" + name + ".json"); }

Rational R(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

ExponentResult ER(Rational e, Rational l, bool eps = false) { return {e, l, eps}; }

// Riemann zeta by partial sum plus Euler-Maclaurin tail
double riemann_zeta(double s) {
  const int K = 200000;
  double sum = 0.0;
  for (int k = K; k >= 1; --k) sum += std::pow(k, -s);
  return sum + std::pow(K, 1 - s) / (s - 1) - 0.5 * std::pow(K, -s) + s / 12.0 * std::pow(K, -s - 1);
}

constexpr double kCatalan = 0.915965594177219015054603514932;

}  // namespace

TEST_CASE("Rational formatting") {
  CHECK(to_string(R(76, 51)) == "76/51");
  CHECK(to_string(R(4, 2)) == "2");
  CHECK(to_string(R(-3, 6)) == "-1/2");
}

TEST_CASE("alpha_beta") {
  const auto a3 = alpha_beta(3);
  CHECK(a3.alpha == R(26, 51));
  CHECK(a3.beta == R(10, 17));
  CHECK_FALSE(a3.epsilon);
  CHECK(alpha_beta(4).alpha == R(9, 22));
  CHECK(alpha_beta(4).beta == R(5, 11));
  const auto a7 = alpha_beta(7);
  CHECK(a7.alpha == R(25, 98));
  CHECK(a7.beta == R(2, 7));
  const auto a10 = alpha_beta(10);
  CHECK(a10.alpha == R(3, 16));
  CHECK(a10.beta == R(0));
  CHECK(a10.epsilon);
  CHECK_THROWS_AS(alpha_beta(2), DomainError);

  CHECK(alpha_beta(6).alpha == R(7, 24));
  CHECK(alpha_beta(6).alpha > alpha_beta(7).alpha);
  for (int n = 3; n <= 30; ++n) {
    const auto ab = alpha_beta(n);
    CAPTURE(n);
    CHECK(ab.alpha > R(0));
    CHECK(ab.beta >= R(0));
    // beats the trivial 1/n saving at every degree
    CHECK(ab.alpha > R(1, n));
    // 3/(n+6) < 2/n only while n < 12; n = 12 ties at eps = 0
    if (n <= 11) CHECK(ab.alpha < R(2, n));
    if (n == 12) CHECK(ab.alpha == R(2, n));
    if (n >= 13) CHECK(ab.alpha > R(2, n));
  }
}

TEST_CASE("main_theorem_bound") {
  CHECK(main_theorem_bound(3, 2, 2) == ER(R(76, 51), R(10, 17)));
  CHECK(main_theorem_bound(3, 2, 1) == ER(R(76, 51), R(37, 17)));
  CHECK(main_theorem_bound(3, 1, 2) == ER(R(38, 51), R(20, 17)));
  CHECK(main_theorem_bound(3, 3, 1) == ER(R(127, 51), R(10, 17)));
  CHECK(main_theorem_bound(12, 1, 3) == ER(R(1) - R(3, 18), R(0), true));
  CHECK_THROWS_AS(main_theorem_bound(3, 1, 1), DomainError);
  CHECK_THROWS_AS(main_theorem_bound(2, 2, 2), DomainError);
}

TEST_CASE("sittinger_exponent") {
  CHECK(sittinger_exponent(1, 1, 2) == ER(R(1, 2), R(0)));
  CHECK(sittinger_exponent(3, 2, 1) == ER(R(5, 3), R(1)));
  CHECK(sittinger_exponent(3, 2, 2) == ER(R(5, 3), R(0)));
  CHECK(sittinger_exponent(3, 3, 1) == ER(R(8, 3), R(0)));
  CHECK(sittinger_exponent(3, 1, 2) == ER(R(5, 6), R(0)));  // n(r-2)/(r-1) = 0
  CHECK(sittinger_exponent(2, 1, 3) == ER(R(1, 2), R(1)));  // = 1
  CHECK(sittinger_exponent(3, 1, 3) == ER(R(2, 3), R(0)));  // = 3/2
  CHECK_THROWS_AS(sittinger_exponent(3, 1, 1), DomainError);
  CHECK_THROWS_AS(sittinger_exponent(0, 2, 1), DomainError);
}

TEST_CASE("abelian_exponent") {
  CHECK(abelian_exponent(4, 1, 2) == ER(R(3, 4), R(0), true));
  CHECK(abelian_exponent(4, 2, 1) == ER(R(3, 2), R(0), true));
  CHECK(abelian_exponent(6, 3, 2) == ER(R(21, 8), R(0), true));
  CHECK_THROWS_AS(abelian_exponent(3, 2, 1), DomainError);
}

TEST_CASE("sharper_than") {
  CHECK(sharper_than(ER(R(1, 2), R(1)), ER(R(2, 3), R(0))));
  CHECK(sharper_than(ER(R(1, 2), R(0)), ER(R(1, 2), R(1))));
  CHECK_FALSE(sharper_than(ER(R(1, 2), R(1)), ER(R(1, 2), R(1))));
  CHECK_FALSE(sharper_than(ER(R(1, 2), R(0), true), ER(R(1, 2), R(5))));
  CHECK(sharper_than(ER(R(1, 2), R(5)), ER(R(1, 2), R(0), true)));
}

TEST_CASE("main theorem improves the earlier bound for n in [3, 30]") {
  for (int n = 3; n <= 30; ++n) {
    for (int m = 1; m <= 4; ++m) {
      for (int r = 1; r <= 4; ++r) {
        if (r * m < 2) continue;
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(r);
        CHECK(sharper_than(main_theorem_bound(n, m, r), sittinger_exponent(n, m, r)));
      }
    }
  }
}

TEST_CASE("zeta_tail_log_bound") {
  CHECK(zeta_tail_log_bound(1, 2, 100) == doctest::Approx(0.01 / (1 - 1e-4)).epsilon(1e-14));
  CHECK(zeta_tail_log_bound(3, 4, 10) == doctest::Approx(3e-3 / 3 / (1 - 1e-4)).epsilon(1e-14));
}

TEST_CASE("zeta_K over Q against partial sums") {
  const FieldSpec q = field("q");
  for (double s : {2.0, 3.0, 4.0}) {
    CAPTURE(s);
    const double tol = 1e-6;
    const auto z = zeta_K(q, s, tol);
    CHECK(z.error_bound <= tol);
    CHECK(std::abs(z.value - riemann_zeta(s)) <= z.error_bound + 1e-12);
  }
  CHECK(riemann_zeta(2) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-12));

  const auto z20 = zeta_K(q, 20, 1e-9);
  CHECK(z20.value > 1.0);
  CHECK(z20.value < 1.0 + 1e-5);
  CHECK(std::abs(z20.value - riemann_zeta(20)) <= z20.error_bound + 1e-12);
}

TEST_CASE("zeta_K over Q(i) is zeta(2) times Catalan's constant") {
  const auto z = zeta_K(field("q_i"), 2, 1e-6);
  const double expected = std::numbers::pi * std::numbers::pi / 6 * kCatalan;
  CHECK(std::abs(z.value - expected) <= z.error_bound + 1e-12);
  CHECK(std::abs(z.value - expected) <= 5e-6);
}

TEST_CASE("zeta_K refinement is stable") {
  const FieldSpec f = field("q_sqrt_m5");
  const auto a = zeta_K(f, 2, 1e-5);
  const auto b = zeta_K(f, 2, 1e-5 / 8);
  CHECK(b.prime_bound > a.prime_bound);
  CHECK(std::abs(a.value - b.value) <= a.error_bound + b.error_bound);
}

TEST_CASE("zeta_K precision cap and domain") {
  const FieldSpec q = field("q");
  ZetaOptions strict;
  strict.max_prime = 1000;
  CHECK_THROWS_AS(zeta_K(q, 2, 1e-9, strict), PrecisionError);

  ZetaOptions loose = strict;
  loose.strict = false;
  const auto z = zeta_K(q, 2, 1e-9, loose);
  CHECK(z.prime_bound == 1000u);
  CHECK(z.error_bound > 1e-9);
  CHECK(std::abs(z.value - std::numbers::pi * std::numbers::pi / 6) <= z.error_bound);

  CHECK_THROWS_AS(zeta_K(q, 1.0, 1e-6), DomainError);
  CHECK_THROWS_AS(zeta_K(q, 0.5, 1e-6), DomainError);
  CHECK_THROWS_AS(zeta_K(q, 2, 0), DomainError);
}

TEST_CASE("main_term") {
  const FieldSpec q = field("q");
  const auto mt = main_term(q, 10, 2, 1, 1e-6);
  CHECK(std::abs(mt.value - 600 / (std::numbers::pi * std::numbers::pi)) <= mt.error_bound);
  CHECK(mt.value == doctest::Approx(60.7927).epsilon(1e-6));
  CHECK(mt.error_bound < 0.5);
  CHECK_THROWS_AS(main_term(q, 10, 1, 1, 1e-6), DomainError);
  CHECK_THROWS_AS(main_term(q, 10, 2, 1, 1e-9), PrecisionError);

  const FieldSpec gi = field("q_i");
  for (unsigned m : {1u, 2u, 3u}) {
    const unsigned r = m == 1 ? 2 : 1;
    const auto lo = main_term(gi, 50, m, r, 1e-7);
    const auto hi = main_term(gi, 100, m, r, 1e-7);
    const double scale = std::pow(2.0, m);
    CAPTURE(m);
    CHECK(std::abs(hi.value - scale * lo.value) <= hi.error_bound + scale * lo.error_bound + 1e-9 * hi.value);
  }
}

TEST_CASE("error_term examples") {
  const FieldSpec q = field("q");
  const auto t = build_tables(q, 100);
  const auto e1 = error_term(q, t, 10, 2, 1, 1e-6);
  CHECK(e1.V == 63u);
  CHECK(e1.E == doctest::Approx(2.2073).epsilon(1e-4));
  const auto e2 = error_term(q, t, 10, 1, 2, 1e-6);
  CHECK(e2.V == 7u);
  CHECK(e2.E == doctest::Approx(0.9207).epsilon(1e-4));
  const auto e3 = error_term(q, t, 1, 1, 2, 1e-6);
  CHECK(e3.V == 1u);
  CHECK(e3.E == doctest::Approx(1 - 6 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-6));
  CHECK(e3.E == doctest::Approx(0.3921).epsilon(1e-3));
}
