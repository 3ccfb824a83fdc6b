#pragma once

// Norm-indexed Dirichlet coefficients of zeta_K and of 1/zeta_K, the ideal
// counting function I_K(x), and the Moebius-sum evaluation of V_m^r(x, K).

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rprime/field.hpp"

namespace rprime {

// Coefficients at p^0, p^1, ..., p^K with p^K <= N.
struct LocalSeries {
  std::vector<std::uint64_t> a;  // # ideals of norm p^k
  std::vector<std::int64_t> b;   // sum of mu over ideals of norm p^k
};

// Expands prod_i (1 - X^{f_i})^{-1} (a) and prod_i (1 - X^{f_i}) (b).
LocalSeries local_series(const SplittingType& split, std::uint64_t p, std::uint64_t N);

// Memory: 16 bytes per norm (a: u32, b: i32, prefix: u64). N = 1e8 needs ~1.6 GB.
inline constexpr std::uint64_t kMaxTableN = 100'000'000;

class CoefficientTable {
 public:
  CoefficientTable(std::string field_name, std::uint64_t fingerprint, std::vector<std::uint32_t> a,
                   std::vector<std::int32_t> b);

  const std::string& field_name() const { return field_name_; }
  std::uint64_t fingerprint() const { return fingerprint_; }
  std::uint64_t N() const { return a_.size() - 1; }

  // Arrays are indexed by norm; index 0 is unused and zero.
  std::span<const std::uint32_t> a() const { return a_; }
  std::span<const std::int32_t> b() const { return b_; }
  std::uint32_t a(std::uint64_t n) const { return a_[n]; }
  std::int32_t b(std::uint64_t n) const { return b_[n]; }
  // Sum of a[1..n].
  std::uint64_t prefix(std::uint64_t n) const { return prefix_[n]; }

 private:
  std::string field_name_;
  std::uint64_t fingerprint_;
  std::vector<std::uint32_t> a_;
  std::vector<std::int32_t> b_;
  std::vector<std::uint64_t> prefix_;
};

// Stable 64-bit hash of everything that determines the a/b tables.
std::uint64_t field_fingerprint(const FieldSpec& field);

CoefficientTable build_tables(const FieldSpec& field, std::uint64_t N, std::uint64_t seed = gf::kDefaultSeed);

// I_K(x) = #{ideals with norm <= x}. Throws RangeError for x > N.
std::uint64_t ideal_count(const CoefficientTable& table, double x);

// V_m^r(x, K) = sum_{n <= x^{1/r}} b[n] * I_K(x / n^r)^m, exactly.
// Throws RangeError outside 1 <= x <= N and OverflowError past 64 bits.
std::uint64_t vmr_via_mobius(const CoefficientTable& table, double x, unsigned m, unsigned r);

// Little-endian cache file: "RPTB" magic, u32 version, u64 fingerprint,
// u64 N, then a[1..N] as u32 and b[1..N] as i32.
void save_table(const CoefficientTable& table, const std::filesystem::path& path);
// Throws ParseError on a bad header or a fingerprint that does not match `field`.
CoefficientTable load_table(const std::filesystem::path& path, const FieldSpec& field);

}  // namespace rprime
