#include "rprime/analytic.hpp"

#include <cmath>
#include <limits>

#include "rprime/error.hpp"
#include "rprime/primes.hpp"

namespace rprime {

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

bool sharper_than(const ExponentResult& a, const ExponentResult& b) {
  if (a.exponent != b.exponent) return a.exponent < b.exponent;
  if (a.epsilon != b.epsilon) return b.epsilon;
  return a.log_power < b.log_power;
}

AlphaBeta alpha_beta(int n) {
  if (n < 3) throw DomainError("alpha_beta: n must be >= 3 (use sittinger_exponent for n <= 2)");
  if (n <= 6) return {Rational(2, n) - Rational(8, n * (5 * n + 2)), Rational(10, 5 * n + 2), false};
  if (n <= 9) return {Rational(2, n) - Rational(3, 2 * n * n), Rational(2, n), false};
  return {Rational(3, n + 6), Rational(0), true};
}

ExponentResult main_theorem_bound(int n, int m, int r) {
  if (m < 1 || r < 1) throw DomainError("main_theorem_bound: m and r must be >= 1");
  const AlphaBeta ab = alpha_beta(n);
  if (r * m >= 3) return {Rational(m) - ab.alpha, ab.beta, ab.epsilon};
  if (r == 1 && m == 2) return {Rational(2) - ab.alpha, 2 * ab.beta + 1, ab.epsilon};
  if (r == 2 && m == 1) return {Rational(1) - ab.alpha / 2, 2 * ab.beta, ab.epsilon};
  throw DomainError("main_theorem_bound: (m, r) = (1, 1) is not covered");
}

ExponentResult sittinger_exponent(int n, int m, int r) {
  if (n < 1 || m < 1 || r < 1) throw DomainError("sittinger_exponent: n, m, r must be >= 1");
  const Rational inv_n(1, n);
  if (m >= 3 || (m == 2 && r >= 2)) return {Rational(m) - inv_n, Rational(0), false};
  if (m == 2) return {Rational(2) - inv_n, Rational(1), false};
  if (r == 1) throw DomainError("sittinger_exponent: (m, r) = (1, 1) is not covered");
  const Rational t(n * (r - 2), r - 1);
  const Rational one(1);
  if (t == one) return {Rational(1) - inv_n, Rational(1), false};
  if (t > one) return {Rational(1) - inv_n, Rational(0), false};
  return {(Rational(2) - inv_n) / r, Rational(0), false};
}

ExponentResult abelian_exponent(int n, int m, int r) {
  if (n < 4) throw DomainError("abelian_exponent: n must be >= 4");
  if (m < 1 || r < 1) throw DomainError("abelian_exponent: m and r must be >= 1");
  if (r == 2 && m == 1) return {Rational(1) - Rational(3, 2 * (n + 2)), Rational(0), true};
  return {Rational(m) - Rational(3, n + 2), Rational(0), true};
}

double zeta_tail_log_bound(unsigned degree, double s, double P) {
  return degree * std::pow(P, 1.0 - s) / ((s - 1.0) * (1.0 - std::pow(P, -s)));
}

namespace {

struct EulerPartial {
  long double log_value = 0.0L;
  std::size_t primes = 0;
};

EulerPartial euler_log(const FieldSpec& field, double s, std::uint64_t P, std::uint64_t seed) {
  EulerPartial out;
  for (std::uint64_t p : primes_up_to(P)) {
    const SplittingType st = detail::splitting_type_of_prime(field, p, seed);
    const long double ps = std::pow(static_cast<long double>(p), -static_cast<long double>(s));
    for (const auto& part : st.parts()) {
      const long double u = part.f == 1 ? ps : std::pow(ps, static_cast<long double>(part.f));
      out.log_value -= std::log1p(-u);
    }
    ++out.primes;
  }
  return out;
}

}  // namespace

ZetaResult zeta_K(const FieldSpec& field, double s, double tol, const ZetaOptions& options) {
  if (!(s > 1.0)) throw DomainError("zeta_K: s must be > 1");
  if (!(tol > 0.0)) throw DomainError("zeta_K: tol must be positive");
  const unsigned n = field.degree;
  const std::uint64_t cap = std::max<std::uint64_t>(options.max_prime, 2);

  // Pilot product bounds Z_P from above for every P.
  const std::uint64_t pilot = std::min<std::uint64_t>(1000, cap);
  const double z_upper = std::exp(static_cast<double>(euler_log(field, s, pilot, options.seed).log_value) +
                                  zeta_tail_log_bound(n, s, static_cast<double>(pilot)));
  // Need z_upper * expm1(B) / 2 <= tol.
  const double b_target = std::log1p(2.0 * tol / z_upper);

  double P = std::pow(n / ((s - 1.0) * b_target), 1.0 / (s - 1.0));
  P = std::max(P, 2.0);
  while (zeta_tail_log_bound(n, s, P) > b_target && P < 1e19) P *= 1.05;

  std::uint64_t bound;
  if (P > static_cast<double>(cap)) {
    if (options.strict) {
      throw PrecisionError("zeta_K: tolerance needs primes up to ~" + std::to_string(static_cast<long double>(P)) +
                           ", above the cap " + std::to_string(cap));
    }
    bound = cap;
  } else {
    bound = static_cast<std::uint64_t>(std::ceil(P));
  }

  const EulerPartial partial = euler_log(field, s, bound, options.seed);
  const double z = static_cast<double>(std::exp(partial.log_value));
  const double half_gap = z * std::expm1(zeta_tail_log_bound(n, s, static_cast<double>(bound))) / 2.0;
  const double rounding =
      z * (std::numeric_limits<double>::epsilon() +
           static_cast<double>(partial.primes * n) * std::numeric_limits<long double>::epsilon());
  return {z + half_gap, half_gap + rounding, bound};
}

MainTerm main_term(const FieldSpec& field, double x, unsigned m, unsigned r, double tol, const ZetaOptions& options) {
  if (m < 1 || r < 1) throw DomainError("main_term: m and r must be >= 1");
  if (r * m < 2) throw DomainError("main_term: rm must be >= 2 (zeta_K has a pole at 1)");
  const double c = constant_c(field).value;
  const double scale = std::pow(c * x, static_cast<double>(m));
  // zeta_K(s) >= 1, so this keeps the main-term error below 0.5.
  const double needed = scale > 0 ? 0.45 / scale : tol;
  MainTerm out;
  out.zeta = zeta_K(field, static_cast<double>(r * m), std::min(tol, needed), options);
  out.value = scale / out.zeta.value;
  const double lo = out.zeta.value - out.zeta.error_bound;
  out.error_bound = lo > 0 ? scale / lo - out.value : std::numeric_limits<double>::infinity();
  return out;
}

ErrorTerm error_term(const FieldSpec& field, const CoefficientTable& table, double x, unsigned m, unsigned r,
                     double tol, const ZetaOptions& options) {
  ErrorTerm out;
  out.V = vmr_via_mobius(table, x, m, r);
  out.main = main_term(field, x, m, r, tol, options);
  out.E = static_cast<double>(out.V) - out.main.value;
  return out;
}

}  // namespace rprime
