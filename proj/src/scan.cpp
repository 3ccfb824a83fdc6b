#include "rprime/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "rprime/error.hpp"

namespace rprime {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ScanRecord make_record(double x, std::uint64_t V, double main) {
  ScanRecord rec;
  rec.x = x;
  rec.V = V;
  rec.main = main;
  rec.E = static_cast<double>(V) - main;
  rec.log10_x = std::log10(x);
  if (rec.E != 0.0) rec.log10_absE = std::log10(std::fabs(rec.E));
  return rec;
}

std::vector<double> geometric_grid(double x_min, double x_max, unsigned points) {
  if (points < 2) throw DomainError("geometric_grid: need at least 2 points");
  if (!(x_min > 0.0) || !(x_min < x_max)) throw DomainError("geometric_grid: need 0 < x_min < x_max");
  std::vector<double> xs(points);
  const double log_ratio = std::log(x_max / x_min);
  for (unsigned i = 0; i < points; ++i) {
    double x = x_min * std::exp(log_ratio * i / (points - 1));
    const double nearest = std::round(x);
    if (std::fabs(x - nearest) <= 1e-12 * x) x = nearest;
    xs[i] = x;
  }
  xs.front() = x_min;
  xs.back() = x_max;
  return xs;
}

ScanResult run_error_scan(const FieldSpec& field, const CoefficientTable& table, const ScanConfig& config) {
  if (config.m < 1 || config.r < 1) throw DomainError("run_error_scan: m and r must be >= 1");
  if (config.x_min < 1.0) throw RangeError("run_error_scan: x_min must be >= 1");
  if (config.x_max > static_cast<double>(table.N())) {
    throw RangeError("run_error_scan: x_max exceeds the table cap N = " + std::to_string(table.N()));
  }
  if (config.r * config.m < 2) throw DomainError("run_error_scan: rm must be >= 2");
  const std::vector<double> xs = geometric_grid(config.x_min, config.x_max, config.grid_points);

  const double c = constant_c(field).value;
  const double m = config.m;
  const double top = std::pow(c * config.x_max, m);
  ZetaOptions zopt = config.zeta;
  zopt.strict = false;

  ScanResult out;
  const double tol = std::min(config.tol.value_or(1e-6), 0.45 / top);
  out.zeta = zeta_K(field, static_cast<double>(config.r * config.m), tol, zopt);
  const double zeta_lo = out.zeta.value - out.zeta.error_bound;
  for (double x : xs) {
    const double scale = std::pow(c * x, m);
    const double main = scale / out.zeta.value;
    out.main_error_bound = std::max(out.main_error_bound, scale / zeta_lo - main);
    out.records.push_back(make_record(x, vmr_via_mobius(table, x, config.m, config.r), main));
  }
  return out;
}

SlopeFit fit_slope(const std::vector<ScanRecord>& records) {
  SlopeFit fit;
  double sx = 0, sy = 0;
  for (const auto& rec : records) {
    if (!rec.log10_absE) {
      ++fit.zero_error_points;
      continue;
    }
    sx += rec.log10_x;
    sy += *rec.log10_absE;
    ++fit.points_used;
  }
  if (fit.points_used < 2) {
    throw DomainError("fit_slope: fewer than 2 records with nonzero error (" + std::to_string(fit.zero_error_points) +
                      " zero-error records)");
  }
  const double k = static_cast<double>(fit.points_used);
  const double mx = sx / k;
  const double my = sy / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& rec : records) {
    if (!rec.log10_absE) continue;
    const double dx = rec.log10_x - mx;
    const double dy = *rec.log10_absE - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DomainError("fit_slope: all usable records share one x");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (const auto& rec : records) {
    if (!rec.log10_absE) continue;
    const double e = *rec.log10_absE - (fit.intercept + fit.slope * rec.log10_x);
    ss_res += e * e;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return fit;
}

namespace {

constexpr const char* kCsvHeader = "x,V,main,E,log10_x,log10_absE";

double parse_double(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ParseError("scan csv line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& rec : records) {
    os << format_real(rec.x) << ',' << rec.V << ',' << format_real(rec.main) << ',' << format_real(rec.E) << ','
       << format_real(rec.log10_x) << ',';
    if (rec.log10_absE) os << format_real(*rec.log10_absE);
    os << '\n';
  }
}

std::vector<ScanRecord> read_scan_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw ParseError("scan csv: missing or wrong header");
  std::vector<ScanRecord> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 6) throw ParseError("scan csv line " + std::to_string(lineno) + ": expected 6 fields");
    ScanRecord rec;
    rec.x = parse_double(cells[0], lineno);
    try {
      std::size_t used = 0;
      rec.V = std::stoull(cells[1], &used);
      if (used != cells[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("scan csv line " + std::to_string(lineno) + ": bad count '" + cells[1] + "'");
    }
    rec.main = parse_double(cells[2], lineno);
    rec.E = parse_double(cells[3], lineno);
    rec.log10_x = parse_double(cells[4], lineno);
    if (!cells[5].empty()) rec.log10_absE = parse_double(cells[5], lineno);
    out.push_back(rec);
  }
  return out;
}

void write_scan_json(std::ostream& os, const ScanMetadata& meta, const ScanResult& result,
                     const std::optional<SlopeFit>& fit) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["metadata"] = {{"field", meta.field_name},
                     {"m", meta.m},
                     {"r", meta.r},
                     {"N", meta.N},
                     {"seed", meta.seed},
                     {"tol", meta.tol},
                     {"zeta", result.zeta.value},
                     {"zeta_error_bound", result.zeta.error_bound},
                     {"zeta_prime_bound", result.zeta.prime_bound},
                     {"main_error_bound", result.main_error_bound},
                     {"version", kToolVersion}};
  ordered_json recs = ordered_json::array();
  std::size_t zero = 0;
  for (const auto& rec : result.records) {
    ordered_json j = {{"x", rec.x},   {"V", rec.V},           {"main", rec.main},
                      {"E", rec.E},   {"log10_x", rec.log10_x}, {"log10_absE", nullptr}};
    if (rec.log10_absE) {
      j["log10_absE"] = *rec.log10_absE;
    } else {
      ++zero;
    }
    recs.push_back(std::move(j));
  }
  doc["records"] = std::move(recs);
  if (fit) {
    doc["fit"] = {{"slope", fit->slope},
                  {"intercept", fit->intercept},
                  {"r_squared", fit->r_squared},
                  {"points_used", fit->points_used},
                  {"zero_error_points", fit->zero_error_points}};
  } else {
    doc["fit"] = nullptr;
    doc["zero_error_points"] = zero;
  }
  os << doc.dump(2) << '\n';
}

}  // namespace rprime
