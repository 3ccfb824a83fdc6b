// rprime: command-line front end for counting relatively r-prime tuples of
// ideals, evaluating main terms and measuring error-term exponents.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rprime/analytic.hpp"
#include "rprime/error.hpp"
#include "rprime/field.hpp"
#include "rprime/ideal_enum.hpp"
#include "rprime/scan.hpp"
#include "rprime/sieve.hpp"

namespace {

using nlohmann::ordered_json;
using namespace rprime;

struct Common {
  std::string field_path;
  std::uint64_t N = 1'000'000;
  std::uint64_t seed = gf::kDefaultSeed;
  std::string out_path;
  std::string format = "csv";
  double tol = 1e-6;
  std::string cache_path;
};

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }
  bool to_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

FieldSpec require_field(const Common& c) {
  if (c.field_path.empty()) throw Error("--field is required");
  return load_field_spec(c.field_path);
}

CoefficientTable obtain_table(const FieldSpec& field, const Common& c) {
  if (!c.cache_path.empty()) return load_table(c.cache_path, field);
  return build_tables(field, c.N, c.seed);
}

void add_common(CLI::App* sub, Common& c, bool with_table) {
  sub->add_option("--field", c.field_path, "Field-spec JSON file");
  sub->add_option("--seed", c.seed, "Factorization seed")->capture_default_str();
  sub->add_option("--out", c.out_path, "Output file (default stdout)");
  sub->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--tol", c.tol, "Zeta tolerance")->capture_default_str();
  if (with_table) {
    sub->add_option("--N", c.N, "Coefficient table cap")->capture_default_str();
    sub->add_option("--cache", c.cache_path, "Load tables from a cache file instead of building");
  }
}

void emit_scalar(Sink& sink, const Common& c, const std::string& key, const ordered_json& meta,
                 const std::string& value_text, const ordered_json& value) {
  if (c.format == "json") {
    ordered_json doc = meta;
    doc[key] = value;
    doc["version"] = kToolVersion;
    sink.os() << doc.dump(2) << '\n';
  } else {
    sink.os() << value_text << '\n';
  }
}

std::string exponent_row(const std::string& kind, int n, int m, int r, const ExponentResult& e) {
  return kind + "," + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(r) + "," +
         to_string(e.exponent) + "," + to_string(e.log_power) + "," + (e.epsilon ? "true" : "false");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relatively r-prime ideal tuples: exact counts, main terms and error exponents"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("rprime ") + kToolVersion);

  Common c;
  double x = 0;
  unsigned m = 1, r = 1;
  double s = 2;
  double xmin = 0, xmax = 0;
  unsigned points = 11;
  bool do_fit = false;
  std::string in_path;
  int n = 3;
  std::string kind = "main";

  auto* tables = app.add_subcommand("tables", "Build coefficient tables and optionally cache them (--out)");
  add_common(tables, c, true);

  auto* count = app.add_subcommand("count", "Ideal count I_K(x)");
  add_common(count, c, true);
  count->add_option("--x", x, "Norm bound")->required();

  auto* vmr = app.add_subcommand("vmr", "V_m^r(x, K) via the Moebius sum");
  add_common(vmr, c, true);
  for (auto* sub : {vmr}) {
    sub->add_option("--x", x)->required();
    sub->add_option("--m", m)->required()->check(CLI::PositiveNumber);
    sub->add_option("--r", r)->required()->check(CLI::PositiveNumber);
  }

  auto* direct = app.add_subcommand("direct", "V_m^r(x, K) by brute-force enumeration");
  add_common(direct, c, false);
  direct->add_option("--x", x)->required();
  direct->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  direct->add_option("--r", r)->required()->check(CLI::PositiveNumber);

  auto* scan = app.add_subcommand("scan", "Error-term scan over a geometric x-grid");
  add_common(scan, c, true);
  scan->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  scan->add_option("--r", r)->required()->check(CLI::PositiveNumber);
  scan->add_option("--xmin", xmin)->required();
  scan->add_option("--xmax", xmax)->required();
  scan->add_option("--points", points)->capture_default_str();
  scan->add_flag("--fit", do_fit, "Fit log10|E| against log10 x");

  auto* fit = app.add_subcommand("fit", "Slope fit of a scan CSV");
  add_common(fit, c, false);
  fit->add_option("--in", in_path, "Scan CSV")->required();

  auto* exponents = app.add_subcommand("exponents", "Exact error-term exponent tables");
  add_common(exponents, c, false);
  exponents->add_option("--n", n, "Field degree")->required();
  exponents->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  exponents->add_option("--r", r)->required()->check(CLI::PositiveNumber);
  exponents->add_option("--kind", kind)
      ->check(CLI::IsMember({"main", "sittinger", "abelian", "all"}))
      ->capture_default_str();

  auto* zeta = app.add_subcommand("zeta", "Dedekind zeta at real s > 1");
  add_common(zeta, c, false);
  zeta->add_option("--s", s)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    Sink sink(c.out_path);

    if (*tables) {
      const FieldSpec field = require_field(c);
      const CoefficientTable table = obtain_table(field, c);
      if (!c.out_path.empty()) {
        save_table(table, c.out_path);
      } else {
        std::int64_t mertens = 0;
        for (std::uint64_t k = 1; k <= table.N(); ++k) mertens += table.b(k);
        if (c.format == "json") {
          ordered_json doc = {{"field", field.name},
                              {"N", table.N()},
                              {"fingerprint", table.fingerprint()},
                              {"I_N", table.prefix(table.N())},
                              {"sum_b", mertens},
                              {"version", kToolVersion}};
          std::cout << doc.dump(2) << '\n';
        } else {
          std::cout << "field,N,I_N,sum_b\n" << field.name << ',' << table.N() << ',' << table.prefix(table.N())
                    << ',' << mertens << '\n';
        }
      }
    } else if (*count) {
      const FieldSpec field = require_field(c);
      const CoefficientTable table = obtain_table(field, c);
      const std::uint64_t v = ideal_count(table, x);
      emit_scalar(sink, c, "I", {{"field", field.name}, {"x", x}, {"N", table.N()}}, std::to_string(v), v);
    } else if (*vmr) {
      const FieldSpec field = require_field(c);
      const CoefficientTable table = obtain_table(field, c);
      const std::uint64_t v = vmr_via_mobius(table, x, m, r);
      emit_scalar(sink, c, "V", {{"field", field.name}, {"x", x}, {"m", m}, {"r", r}, {"N", table.N()}},
                  std::to_string(v), v);
    } else if (*direct) {
      const FieldSpec field = require_field(c);
      EnumerationLimits limits;
      limits.seed = c.seed;
      const std::uint64_t v = count_rprime_direct(field, x, m, r, limits);
      emit_scalar(sink, c, "V", {{"field", field.name}, {"x", x}, {"m", m}, {"r", r}}, std::to_string(v), v);
    } else if (*scan) {
      const FieldSpec field = require_field(c);
      if (auto cc = constant_c(field); cc.warning) std::cerr << "warning: " << *cc.warning << '\n';
      const CoefficientTable table = obtain_table(field, c);
      ScanConfig cfg;
      cfg.m = m;
      cfg.r = r;
      cfg.x_min = xmin;
      cfg.x_max = xmax;
      cfg.grid_points = points;
      cfg.tol = c.tol;
      cfg.zeta.seed = c.seed;
      const ScanResult result = run_error_scan(field, table, cfg);
      if (result.main_error_bound >= 0.5) {
        std::cerr << "warning: main-term error bound " << format_real(result.main_error_bound)
                  << " (zeta_K product capped at p <= " << result.zeta.prime_bound << ")\n";
      }
      std::optional<SlopeFit> fitted;
      std::size_t zero = 0;
      for (const auto& rec : result.records) zero += rec.log10_absE ? 0 : 1;
      if (do_fit && result.records.size() - zero >= 2) fitted = fit_slope(result.records);

      if (c.format == "json") {
        write_scan_json(sink.os(), {field.name, m, r, table.N(), c.seed, c.tol}, result, fitted);
      } else {
        write_scan_csv(sink.os(), result.records);
        if (do_fit) {
          std::ostream& msg = sink.to_file() ? std::cout : std::cerr;
          if (fitted) {
            msg << "fit: slope=" << format_real(fitted->slope) << " intercept=" << format_real(fitted->intercept)
                << " r_squared=" << format_real(fitted->r_squared) << " points_used=" << fitted->points_used
                << " zero_error_points=" << fitted->zero_error_points << '\n';
          } else {
            msg << "fit: unavailable, zero_error_points=" << zero << '\n';
          }
        }
      }
    } else if (*fit) {
      std::ifstream in(in_path);
      if (!in) throw Error("cannot open " + in_path);
      const SlopeFit f = fit_slope(read_scan_csv(in));
      if (c.format == "json") {
        ordered_json doc = {{"slope", f.slope},
                            {"intercept", f.intercept},
                            {"r_squared", f.r_squared},
                            {"points_used", f.points_used},
                            {"zero_error_points", f.zero_error_points},
                            {"version", kToolVersion}};
        sink.os() << doc.dump(2) << '\n';
      } else {
        sink.os() << "slope,intercept,r_squared,points_used,zero_error_points\n"
                  << format_real(f.slope) << ',' << format_real(f.intercept) << ',' << format_real(f.r_squared)
                  << ',' << f.points_used << ',' << f.zero_error_points << '\n';
      }
    } else if (*exponents) {
      const int mi = static_cast<int>(m);
      const int ri = static_cast<int>(r);
      std::vector<std::pair<std::string, ExponentResult>> rows;
      auto attempt = [&](const std::string& k, auto fn) {
        if (kind != k && kind != "all") return;
        try {
          rows.emplace_back(k, fn());
        } catch (const DomainError&) {
          if (kind != "all") throw;
        }
      };
      attempt("main", [&] { return main_theorem_bound(n, mi, ri); });
      attempt("sittinger", [&] { return sittinger_exponent(n, mi, ri); });
      attempt("abelian", [&] { return abelian_exponent(n, mi, ri); });
      if (rows.empty()) throw DomainError("no exponent table covers n = " + std::to_string(n) + ", m, r");
      if (c.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& [k, e] : rows) {
          arr.push_back({{"kind", k},
                         {"n", n},
                         {"m", m},
                         {"r", r},
                         {"exponent", to_string(e.exponent)},
                         {"log_power", to_string(e.log_power)},
                         {"epsilon", e.epsilon}});
        }
        sink.os() << ordered_json{{"exponents", arr}, {"version", kToolVersion}}.dump(2) << '\n';
      } else {
        sink.os() << "kind,n,m,r,exponent,log_power,epsilon\n";
        for (const auto& [k, e] : rows) sink.os() << exponent_row(k, n, mi, ri, e) << '\n';
      }
    } else if (*zeta) {
      const FieldSpec field = require_field(c);
      ZetaOptions opt;
      opt.seed = c.seed;
      const ZetaResult z = zeta_K(field, s, c.tol, opt);
      if (c.format == "json") {
        ordered_json doc = {{"field", field.name},        {"s", s},
                            {"tol", c.tol},               {"value", z.value},
                            {"error_bound", z.error_bound}, {"prime_bound", z.prime_bound},
                            {"version", kToolVersion}};
        sink.os() << doc.dump(2) << '\n';
      } else {
        sink.os() << "s,value,error_bound,prime_bound\n"
                  << format_real(s) << ',' << format_real(z.value) << ',' << format_real(z.error_bound) << ','
                  << z.prime_bound << '\n';
      }
    }
  } catch (const rprime::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
