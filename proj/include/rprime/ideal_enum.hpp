#pragma once

// Brute-force oracle: ideals as formal products of labeled prime ideals, and
// direct counting of relatively r-prime m-tuples from the definition.
//
// Counting needs only norms and factorization shape, so a prime ideal is a
// label (p, index into the canonical splitting type) rather than a lattice.

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rprime/field.hpp"

namespace rprime {

struct PrimeLabel {
  std::uint64_t p = 0;
  std::uint32_t index = 0;  // position in splitting_type(field, p).parts()
  std::uint32_t f = 0;      // residue degree, cached

  friend std::strong_ordering operator<=>(const PrimeLabel& a, const PrimeLabel& b) {
    if (auto c = a.p <=> b.p; c != 0) return c;
    return a.index <=> b.index;
  }
  friend bool operator==(const PrimeLabel& a, const PrimeLabel& b) { return a.p == b.p && a.index == b.index; }
};

struct FactoredIdeal {
  // Strictly increasing labels, exponents >= 1. Empty means the unit ideal.
  std::vector<std::pair<PrimeLabel, std::uint32_t>> factors;
  std::uint64_t norm = 1;

  // 0 if the label does not divide the ideal.
  std::uint32_t exponent_of(const PrimeLabel& label) const;

  friend bool operator==(const FactoredIdeal&, const FactoredIdeal&) = default;
};

// Checks the ordering invariant and recomputes the norm from the factors.
FactoredIdeal make_ideal(std::vector<std::pair<PrimeLabel, std::uint32_t>> factors);

struct EnumerationLimits {
  double max_norm = 1e5;                 // materialization guard
  double max_tuples = 1e9;               // bound on I_K(x)^m for direct counting
  std::uint64_t seed = gf::kDefaultSeed;
};

// All ideals of norm <= X, sorted by (norm, factors). Throws BudgetError when
// X exceeds limits.max_norm.
std::vector<FactoredIdeal> enumerate_ideals(const FieldSpec& field, double X, const EnumerationLimits& limits = {});

int mobius_ideal(const FactoredIdeal& ideal);

// True iff no prime ideal P has P^r dividing every member. Throws DomainError
// on an empty tuple or r = 0.
bool is_relatively_r_prime(std::span<const FactoredIdeal> tuple, unsigned r);

// V_m^r(x, K) by walking the m-fold product of enumerate_ideals(field, x),
// pruning a branch as soon as the members chosen so far share no P^r.
std::uint64_t count_rprime_direct(const FieldSpec& field, double x, unsigned m, unsigned r,
                                  const EnumerationLimits& limits = {});

// Same count for every integer x in [0, floor(X)] from a single walk; tuples
// are binned by their largest norm.
std::vector<std::uint64_t> count_rprime_direct_profile(const FieldSpec& field, double X, unsigned m, unsigned r,
                                                       const EnumerationLimits& limits = {});

}  // namespace rprime
