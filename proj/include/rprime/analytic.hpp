#pragma once

// Dedekind zeta at real s > 1, main and error terms of V_m^r(x, K), and the
// exact exponent tables for the error term E_m^r(x, K).

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "rprime/field.hpp"
#include "rprime/sieve.hpp"

namespace rprime {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& q);

// A bound O(x^exponent (log x)^log_power). With `epsilon` set the bound holds
// as x^{exponent + eps} for every eps > 0; values are stored at eps = 0.
struct ExponentResult {
  Rational exponent;
  Rational log_power;
  bool epsilon = false;

  friend bool operator==(const ExponentResult&, const ExponentResult&) = default;
};

// True when bound `a` is strictly sharper than `b`: smaller exponent, or the
// same exponent with a smaller log power. A "+eps" bound never beats an
// exponent it only ties.
bool sharper_than(const ExponentResult& a, const ExponentResult& b);

// alpha(n) and beta(n). For n >= 10, alpha carries "- eps" (epsilon set).
struct AlphaBeta {
  Rational alpha;
  Rational beta;
  bool epsilon = false;
};

// Throws DomainError for n < 3.
AlphaBeta alpha_beta(int n);

// Error exponent for E_m^r, n = [K:Q] >= 3. Cases: rm >= 3, (r,m) = (1,2),
// (r,m) = (2,1). Throws DomainError otherwise.
ExponentResult main_theorem_bound(int n, int m, int r);

// Earlier general-field bound, split on m and on n(r-2)/(r-1) when m = 1.
// Throws DomainError for m = 1, r = 1.
ExponentResult sittinger_exponent(int n, int m, int r);

// Abelian fields with n >= 4; always epsilon-flagged.
ExponentResult abelian_exponent(int n, int m, int r);

struct ZetaOptions {
  std::uint64_t max_prime = 100'000'000;  // Euler product cap
  // When the tolerance needs primes past max_prime: throw PrecisionError
  // (strict) or evaluate at the cap and report the looser bound.
  bool strict = true;
  std::uint64_t seed = gf::kDefaultSeed;
};

struct ZetaResult {
  double value = 0.0;
  double error_bound = 0.0;       // |value - zeta_K(s)| <= error_bound
  std::uint64_t prime_bound = 0;  // Euler product over p <= prime_bound
};

// Euler product over p <= P with the tail bracketed by
//   0 <= log(zeta_K / Z_P) <= B(P) = n P^{1-s} / ((s-1)(1 - P^{-s})),
// returning the midpoint of [Z_P, Z_P e^{B}]. Throws DomainError for s <= 1.
ZetaResult zeta_K(const FieldSpec& field, double s, double tol, const ZetaOptions& options = {});

// The Euler-product tail bound B(P) above.
double zeta_tail_log_bound(unsigned degree, double s, double P);

struct MainTerm {
  double value = 0.0;
  double error_bound = 0.0;  // from the zeta error only
  ZetaResult zeta;
};

// (c x)^m / zeta_K(rm). The zeta tolerance is min(tol, 0.45 / (c x)^m)
// so that error_bound < 0.5. Throws DomainError for rm < 2.
MainTerm main_term(const FieldSpec& field, double x, unsigned m, unsigned r, double tol,
                   const ZetaOptions& options = {});

struct ErrorTerm {
  std::uint64_t V = 0;
  MainTerm main;
  double E = 0.0;
};

ErrorTerm error_term(const FieldSpec& field, const CoefficientTable& table, double x, unsigned m, unsigned r,
                     double tol, const ZetaOptions& options = {});

}  // namespace rprime
