#include "rprime/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "rprime/error.hpp"
#include "rprime/primes.hpp"

namespace rprime {

using nlohmann::json;

SplittingType::SplittingType(std::vector<SplittingPart> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("splitting type needs at least one prime");
  for (const auto& part : parts_) {
    if (part.e == 0 || part.f == 0) throw DomainError("splitting type entries must be positive");
  }
  std::sort(parts_.begin(), parts_.end());
}

unsigned SplittingType::degree() const {
  unsigned n = 0;
  for (const auto& part : parts_) n += part.e * part.f;
  return n;
}

std::string SplittingType::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ",";
    os << "(" << parts_[i].e << "," << parts_[i].f << ")";
  }
  os << "]";
  return os.str();
}

namespace {

bool divides_square(std::uint64_t p, std::int64_t value) {
  const unsigned __int128 sq = static_cast<unsigned __int128>(p) * p;
  const unsigned __int128 mag = static_cast<unsigned __int128>(value < 0 ? -static_cast<__int128>(value) : value);
  return mag % sq == 0;
}

bool is_perfect_square(std::int64_t v) {
  if (v < 0) return false;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(v))));
  for (std::int64_t c = std::max<std::int64_t>(0, r - 2); c <= r + 2; ++c) {
    if (c * c == v) return true;
  }
  return false;
}

template <typename T>
T get_required(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("field spec: missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field spec: bad value for '") + key + "': " + e.what());
  }
}

template <typename T>
std::optional<T> get_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field spec: bad value for '") + key + "': " + e.what());
  }
}

FieldInvariants parse_invariants(const json& j, unsigned degree) {
  if (!j.is_object()) throw ParseError("field spec: 'invariants' must be an object");
  FieldInvariants inv;
  inv.r1 = get_optional<unsigned>(j, "r1");
  inv.r2 = get_optional<unsigned>(j, "r2");
  inv.h = get_optional<std::int64_t>(j, "h");
  inv.R = get_optional<double>(j, "R");
  inv.w = get_optional<std::int64_t>(j, "w");
  inv.d_K = get_optional<std::int64_t>(j, "d_K");
  inv.c = get_optional<double>(j, "c");

  if (inv.r1.has_value() != inv.r2.has_value()) throw ParseError("field spec: r1 and r2 must be given together");
  if (inv.r1 && *inv.r1 + 2 * *inv.r2 != degree) throw ParseError("field spec: r1 + 2*r2 must equal the degree");
  if (inv.h && *inv.h < 1) throw ParseError("field spec: class number must be >= 1");
  if (inv.w && *inv.w < 2) throw ParseError("field spec: w must be >= 2");
  if (inv.R && !(*inv.R > 0.0)) throw ParseError("field spec: regulator must be positive");
  if (inv.c && !(*inv.c > 0.0)) throw ParseError("field spec: c must be positive");
  if (inv.d_K) {
    if (*inv.d_K == 0) throw ParseError("field spec: d_K must be nonzero");
    const std::int64_t m4 = ((*inv.d_K % 4) + 4) % 4;
    if (m4 != 0 && m4 != 1) throw ParseError("field spec: d_K must be 0 or 1 mod 4");
    if (inv.r2 && ((*inv.d_K < 0) != (*inv.r2 % 2 == 1))) {
      throw ParseError("field spec: sign of d_K must be (-1)^r2");
    }
  }
  return inv;
}

void check_disc_consistency(const FieldSpec& f) {
  // For monic f, a prime q divides disc(f) iff f is not square-free mod q.
  for (std::uint64_t q : primes_up_to(100)) {
    const auto fq = gf::PolyModP::from_integers(q, f.poly);
    bool squarefree = true;
    for (const auto& cls : gf::degree_pattern(fq)) squarefree = squarefree && cls.multiplicity == 1;
    const bool divides = f.poly_disc % static_cast<std::int64_t>(q) == 0;
    if (divides == squarefree) {
      throw ParseError("field spec: poly_disc is inconsistent with poly modulo " + std::to_string(q));
    }
  }
}

}  // namespace

FieldSpec parse_field_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("field spec: malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("field spec: top level must be an object");

  FieldSpec f;
  f.name = get_required<std::string>(doc, "name");
  f.poly = get_required<std::vector<std::int64_t>>(doc, "poly");
  if (f.poly.size() < 2) throw ParseError("field spec: poly must have degree >= 1");
  if (f.poly.back() != 1) throw ParseError("field spec: poly must be monic (leading coefficient 1)");
  f.degree = static_cast<unsigned>(f.poly.size() - 1);
  if (auto n = get_optional<unsigned>(doc, "degree"); n && *n != f.degree) {
    throw ParseError("field spec: 'degree' does not match the polynomial");
  }
  f.poly_disc = get_required<std::int64_t>(doc, "poly_disc");
  if (f.poly_disc == 0) throw ParseError("field spec: poly_disc must be nonzero");
  f.poly_is_maximal = get_optional<bool>(doc, "poly_is_maximal").value_or(false);

  if (doc.contains("invariants") && !doc["invariants"].is_null()) {
    f.invariants = parse_invariants(doc["invariants"], f.degree);
    if (f.is_quadratic_with_disc()) {
      const std::int64_t dk = *f.invariants->d_K;
      if (f.poly_disc % dk != 0 || !is_perfect_square(f.poly_disc / dk)) {
        throw ParseError("field spec: poly_disc / d_K must be a perfect square");
      }
    }
  }

  if (doc.contains("overrides") && !doc["overrides"].is_null()) {
    const json& ov = doc["overrides"];
    if (!ov.is_array()) throw ParseError("field spec: 'overrides' must be an array");
    for (const json& entry : ov) {
      const auto p = get_required<std::uint64_t>(entry, "p");
      const auto raw = get_required<std::vector<std::vector<unsigned>>>(entry, "parts");
      if (!is_prime(p)) throw ParseError("field spec: override key " + std::to_string(p) + " is not prime");
      if (!divides_square(p, f.poly_disc)) {
        throw ParseError("field spec: override prime " + std::to_string(p) + " does not satisfy p^2 | poly_disc");
      }
      std::vector<SplittingPart> parts;
      for (const auto& ef : raw) {
        if (ef.size() != 2) throw ParseError("field spec: override parts must be [e, f] pairs");
        parts.push_back({ef[0], ef[1]});
      }
      SplittingType st;
      try {
        st = SplittingType(std::move(parts));
      } catch (const DomainError& e) {
        throw ParseError(std::string("field spec: ") + e.what());
      }
      if (st.degree() != f.degree) {
        throw ParseError("field spec: override for " + std::to_string(p) + " has sum e*f != degree");
      }
      if (!f.overrides.emplace(p, std::move(st)).second) {
        throw ParseError("field spec: duplicate override for " + std::to_string(p));
      }
    }
  }

  check_disc_consistency(f);
  return f;
}

FieldSpec load_field_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open field spec " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_field_spec(ss.str());
}

std::string field_spec_to_json(const FieldSpec& f) {
  json doc;
  doc["name"] = f.name;
  doc["poly"] = f.poly;
  doc["poly_disc"] = f.poly_disc;
  doc["poly_is_maximal"] = f.poly_is_maximal;
  if (f.invariants) {
    const auto& inv = *f.invariants;
    json j = json::object();
    if (inv.r1) j["r1"] = *inv.r1;
    if (inv.r2) j["r2"] = *inv.r2;
    if (inv.h) j["h"] = *inv.h;
    if (inv.R) j["R"] = *inv.R;
    if (inv.w) j["w"] = *inv.w;
    if (inv.d_K) j["d_K"] = *inv.d_K;
    if (inv.c) j["c"] = *inv.c;
    doc["invariants"] = j;
  }
  json ov = json::array();
  for (const auto& [p, st] : f.overrides) {
    json parts = json::array();
    for (const auto& part : st.parts()) parts.push_back({part.e, part.f});
    ov.push_back({{"p", p}, {"parts", parts}});
  }
  doc["overrides"] = ov;
  return doc.dump();
}

namespace {

int kronecker_odd_or_two(std::int64_t D, std::uint64_t p) {
  if (p == 2) {
    if (D % 2 == 0) return 0;
    const std::int64_t m8 = ((D % 8) + 8) % 8;
    return (m8 == 1 || m8 == 7) ? 1 : -1;
  }
  const auto sp = static_cast<std::int64_t>(p);
  std::int64_t r = D % sp;
  if (r < 0) r += sp;
  if (r == 0) return 0;
  return powmod(static_cast<std::uint64_t>(r), (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace

int kronecker_symbol(std::int64_t D, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("kronecker_symbol: " + std::to_string(p) + " is not prime");
  return kronecker_odd_or_two(D, p);
}

SplittingType splitting_type(const FieldSpec& field, std::uint64_t p, std::uint64_t seed) {
  if (!is_prime(p)) throw DomainError("splitting_type: " + std::to_string(p) + " is not prime");
  return detail::splitting_type_of_prime(field, p, seed);
}

namespace detail {

SplittingType splitting_type_of_prime(const FieldSpec& field, std::uint64_t p, std::uint64_t /*seed*/) {
  if (auto it = field.overrides.find(p); it != field.overrides.end()) return it->second;
  if (field.degree == 1) return SplittingType({{1, 1}});
  if (field.is_quadratic_with_disc()) {
    switch (kronecker_odd_or_two(*field.invariants->d_K, p)) {
      case 1:
        return SplittingType({{1, 1}, {1, 1}});
      case -1:
        return SplittingType({{1, 2}});
      default:
        return SplittingType({{2, 1}});
    }
  }
  if (!field.poly_is_maximal && divides_square(p, field.poly_disc)) {
    throw IndexDivisorError("splitting_type: p = " + std::to_string(p) +
                            " may divide the index of Z[theta]; supply an override or set poly_is_maximal");
  }
  // Dedekind: p O_K = prod P_i^{e_i} mirrors poly = prod g_i^{e_i} mod p.
  // Only the degrees matter, so equal-degree splitting is skipped.
  std::vector<SplittingPart> parts;
  for (const auto& cls : gf::degree_pattern(gf::PolyModP::from_integers(p, field.poly))) {
    for (unsigned k = 0; k < cls.count; ++k) parts.push_back({cls.multiplicity, cls.degree});
  }
  return SplittingType(std::move(parts));
}

}  // namespace detail

ConstantC constant_c(const FieldSpec& field) {
  const auto& inv = field.invariants;
  std::optional<double> from_invariants;
  if (inv && inv->has_class_number_inputs()) {
    from_invariants = std::pow(2.0, *inv->r1) * std::pow(2.0 * std::numbers::pi, *inv->r2) *
                 static_cast<double>(*inv->h) * *inv->R /
                 (static_cast<double>(*inv->w) * std::sqrt(std::fabs(static_cast<double>(*inv->d_K))));
  }
  if (inv && inv->c) {
    ConstantC out{*inv->c, std::nullopt};
    if (from_invariants && std::fabs(*from_invariants - *inv->c) > 1e-9 * std::fabs(*inv->c)) {
      std::ostringstream os;
      os.precision(17);
      os << "field '" << field.name << "': supplied c = " << *inv->c << " disagrees with invariants (" << *from_invariants
         << ")";
      out.warning = os.str();
    }
    return out;
  }
  if (from_invariants) return {*from_invariants, std::nullopt};
  throw DomainError("constant_c: field '" + field.name + "' has neither c nor the full invariant set");
}

}  // namespace rprime
