#pragma once

// Number fields described by a defining polynomial plus optional invariants,
// and the splitting data of rational primes in them.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rprime/poly_gf.hpp"

namespace rprime {

// One prime ideal above p: ramification index e and residue degree f.
struct SplittingPart {
  unsigned e = 1;
  unsigned f = 1;

  // Canonical order is by f, then e.
  friend constexpr std::strong_ordering operator<=>(const SplittingPart& a, const SplittingPart& b) {
    if (auto c = a.f <=> b.f; c != 0) return c;
    return a.e <=> b.e;
  }
  friend constexpr bool operator==(const SplittingPart&, const SplittingPart&) = default;
};

class SplittingType {
 public:
  SplittingType() = default;
  // Sorts the parts canonically; throws DomainError when empty or a part is zero.
  explicit SplittingType(std::vector<SplittingPart> parts);

  const std::vector<SplittingPart>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  // sum of e_i * f_i
  unsigned degree() const;

  std::string to_string() const;

  friend bool operator==(const SplittingType&, const SplittingType&) = default;

 private:
  std::vector<SplittingPart> parts_;
};

struct FieldInvariants {
  std::optional<unsigned> r1;
  std::optional<unsigned> r2;
  std::optional<std::int64_t> h;
  std::optional<double> R;
  std::optional<std::int64_t> w;
  std::optional<std::int64_t> d_K;
  std::optional<double> c;

  bool has_class_number_inputs() const { return r1 && r2 && h && R && w && d_K; }
};

struct FieldSpec {
  std::string name;
  unsigned degree = 0;
  std::vector<std::int64_t> poly;  // constant term first, monic
  std::int64_t poly_disc = 0;
  bool poly_is_maximal = false;
  std::optional<FieldInvariants> invariants;
  std::map<std::uint64_t, SplittingType> overrides;

  bool is_quadratic_with_disc() const { return degree == 2 && invariants && invariants->d_K; }
};

// Parses and validates a JSON field-spec document. Throws ParseError.
FieldSpec parse_field_spec(std::string_view text);
FieldSpec load_field_spec(const std::filesystem::path& path);

// Canonical JSON rendering; parse_field_spec(to_json(f)) reproduces f.
std::string field_spec_to_json(const FieldSpec& field);

// Kronecker symbol (D | p) for a prime p. Throws DomainError if p is not prime.
int kronecker_symbol(std::int64_t D, std::uint64_t p);

// Decomposition type of p O_K. Order of precedence: explicit override, the
// Kronecker rule for quadratic fields with known d_K, then factorization of
// the defining polynomial mod p. Throws IndexDivisorError when p^2 divides
// poly_disc and neither an override nor poly_is_maximal vouches for p.
SplittingType splitting_type(const FieldSpec& field, std::uint64_t p, std::uint64_t seed = gf::kDefaultSeed);

namespace detail {
// splitting_type without the primality check, for callers iterating sieve output.
SplittingType splitting_type_of_prime(const FieldSpec& field, std::uint64_t p, std::uint64_t seed);
}  // namespace detail

struct ConstantC {
  double value = 0.0;
  // Set when both a direct c and the full invariant set are given and they
  // disagree by more than 1e-9 relative.
  std::optional<std::string> warning;
};

// c = 2^r1 (2 pi)^r2 h R / (w sqrt|d_K|); a directly supplied c wins.
// Throws DomainError when neither source is available.
ConstantC constant_c(const FieldSpec& field);

}  // namespace rprime
