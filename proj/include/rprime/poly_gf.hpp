#pragma once

// Univariate polynomials over a prime field F_p and their complete
// factorization (square-free decomposition, distinct-degree and
// Cantor-Zassenhaus equal-degree splitting).

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rprime::gf {

inline constexpr std::uint64_t kDefaultSeed = 0;

class PolyModP {
 public:
  PolyModP() = default;

  // Coefficients constant term first; reduced mod p and trimmed.
  PolyModP(std::uint64_t p, std::vector<std::uint64_t> coeffs);

  static PolyModP from_integers(std::uint64_t p, std::span<const std::int64_t> coeffs);
  static PolyModP constant(std::uint64_t p, std::uint64_t c);
  static PolyModP x(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  // Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::uint64_t leading() const { return c_.empty() ? 0 : c_.back(); }
  std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  PolyModP monic() const;
  PolyModP derivative() const;
  std::uint64_t eval(std::uint64_t at) const;

  std::string to_string() const;

  friend bool operator==(const PolyModP&, const PolyModP&) = default;
  // Canonical order: modulus, then degree, then coefficient tuple.
  friend std::strong_ordering operator<=>(const PolyModP& a, const PolyModP& b);

  friend PolyModP operator+(const PolyModP& a, const PolyModP& b);
  friend PolyModP operator-(const PolyModP& a, const PolyModP& b);
  friend PolyModP operator*(const PolyModP& a, const PolyModP& b);

 private:
  void trim();

  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> c_;
};

// Quotient and remainder; throws DomainError on a zero divisor.
std::pair<PolyModP, PolyModP> divmod(const PolyModP& a, const PolyModP& b);
PolyModP operator/(const PolyModP& a, const PolyModP& b);
PolyModP operator%(const PolyModP& a, const PolyModP& b);

// Monic gcd; gcd(0, 0) = 0.
PolyModP poly_gcd(const PolyModP& a, const PolyModP& b);

PolyModP poly_powmod(const PolyModP& base, std::uint64_t exponent, const PolyModP& modulus);

struct FactorPower {
  PolyModP factor;
  unsigned multiplicity = 0;

  friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

// f = prod g_j^{m_j} with pairwise coprime square-free monic g_j, sorted by m_j.
std::vector<FactorPower> squarefree_decomposition(const PolyModP& f);

// Complete factorization into monic irreducibles, sorted canonically.
// The seed drives the randomized equal-degree step only; the result does not
// depend on it.
std::vector<FactorPower> factor_mod_p(const PolyModP& f, std::uint64_t seed = kDefaultSeed);

// Factorization shape without equal-degree splitting: `count` irreducible
// factors of degree `degree`, each occurring with `multiplicity`.
struct DegreeClass {
  unsigned multiplicity = 0;
  unsigned degree = 0;
  unsigned count = 0;
};
std::vector<DegreeClass> degree_pattern(const PolyModP& f);

}  // namespace rprime::gf
