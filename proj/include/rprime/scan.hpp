#pragma once

// Error-term scans over geometric x-grids and log-log slope fits.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rprime/analytic.hpp"
#include "rprime/field.hpp"
#include "rprime/sieve.hpp"

namespace rprime {

inline constexpr const char* kToolVersion = "0.1.0";

struct ScanRecord {
  double x = 0.0;
  std::uint64_t V = 0;
  double main = 0.0;
  double E = 0.0;
  double log10_x = 0.0;
  std::optional<double> log10_absE;  // absent when E == 0
};

ScanRecord make_record(double x, std::uint64_t V, double main);

struct ScanConfig {
  unsigned m = 1;
  unsigned r = 2;
  double x_min = 0.0;
  double x_max = 0.0;
  unsigned grid_points = 2;
  // zeta_K tolerance, default 1e-6; tightened so the main-term error stays below 0.5.
  std::optional<double> tol;
  ZetaOptions zeta;
};

struct ScanResult {
  std::vector<ScanRecord> records;  // ascending x
  ZetaResult zeta;                  // zeta_K(rm), shared by all records
  double main_error_bound = 0.0;    // worst |main - exact main| over the grid
};

// Points x_min * (x_max / x_min)^{i/(k-1)}; endpoints exact, values within
// 1e-12 relative of an integer snapped to it.
std::vector<double> geometric_grid(double x_min, double x_max, unsigned points);

// One zeta_K(rm) evaluation serves every grid point, at tolerance
// min(config.tol, 0.45 / (c x_max)^m). When that needs primes beyond
// config.zeta.max_prime the product is taken at the cap and the achieved
// bound is reported in main_error_bound.
ScanResult run_error_scan(const FieldSpec& field, const CoefficientTable& table, const ScanConfig& config);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points_used = 0;
  std::size_t zero_error_points = 0;
};

// OLS of log10|E| on log10 x over records with E != 0. Throws DomainError
// with fewer than two usable records.
SlopeFit fit_slope(const std::vector<ScanRecord>& records);

// Header x,V,main,E,log10_x,log10_absE; %.17g reals; empty last field when E == 0.
void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records);
std::vector<ScanRecord> read_scan_csv(std::istream& is);

struct ScanMetadata {
  std::string field_name;
  unsigned m = 0;
  unsigned r = 0;
  std::uint64_t N = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
};

void write_scan_json(std::ostream& os, const ScanMetadata& meta, const ScanResult& result,
                     const std::optional<SlopeFit>& fit);

std::string format_real(double v);

}  // namespace rprime
