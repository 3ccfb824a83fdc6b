#include "rprime/sieve.hpp"

#include <array>
#include <cmath>
#include <fstream>

#include "rprime/error.hpp"
#include "rprime/primes.hpp"

namespace rprime {

LocalSeries local_series(const SplittingType& split, std::uint64_t p, std::uint64_t N) {
  if (N < p) throw DomainError("local_series: N must be >= p");
  std::size_t K = 0;
  for (unsigned __int128 q = p; q <= N; q *= p) ++K;

  LocalSeries out;
  out.a.assign(K + 1, 0);
  out.b.assign(K + 1, 0);
  out.a[0] = 1;
  out.b[0] = 1;
  for (const auto& part : split.parts()) {
    const std::size_t f = part.f;
    if (f > K) continue;
    // multiply by 1/(1 - X^f): ascending recurrence
    for (std::size_t k = f; k <= K; ++k) out.a[k] += out.a[k - f];
    // multiply by (1 - X^f): descending so b[k - f] is still the old value
    for (std::size_t k = K; k >= f; --k) {
      out.b[k] -= out.b[k - f];
      if (k == f) break;
    }
  }
  return out;
}

CoefficientTable::CoefficientTable(std::string field_name, std::uint64_t fingerprint, std::vector<std::uint32_t> a,
                                   std::vector<std::int32_t> b)
    : field_name_(std::move(field_name)), fingerprint_(fingerprint), a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() < 2 || a_.size() != b_.size()) throw DomainError("coefficient table: inconsistent sizes");
  prefix_.assign(a_.size(), 0);
  for (std::size_t n = 1; n < a_.size(); ++n) prefix_[n] = prefix_[n - 1] + a_[n];
}

std::uint64_t field_fingerprint(const FieldSpec& field) {
  // FNV-1a over a canonical rendering of the splitting-relevant data.
  std::string key = "poly:";
  for (auto c : field.poly) key += std::to_string(c) + ",";
  key += "|disc:" + std::to_string(field.poly_disc);
  key += field.poly_is_maximal ? "|max" : "|nomax";
  if (field.is_quadratic_with_disc()) key += "|dK:" + std::to_string(*field.invariants->d_K);
  for (const auto& [p, st] : field.overrides) key += "|ov" + std::to_string(p) + st.to_string();

  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::uint32_t checked_mul_u32(std::uint64_t x, std::uint64_t y) {
  const std::uint64_t v = x * y;  // both factors < 2^32
  if (v > UINT32_MAX) throw OverflowError("build_tables: a[n] exceeds 32 bits");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

CoefficientTable build_tables(const FieldSpec& field, std::uint64_t N, std::uint64_t seed) {
  if (N < 1 || N > kMaxTableN) throw RangeError("build_tables: N must be in [1, 1e8]");
  std::vector<std::uint32_t> a(N + 1, 1);
  std::vector<std::int32_t> b(N + 1, 1);
  a[0] = 0;
  b[0] = 0;

  for (std::uint64_t p : primes_up_to(N)) {
    const LocalSeries local = local_series(detail::splitting_type_of_prime(field, p, seed), p, N);
    std::uint64_t q = p;
    for (std::size_t k = 1; k < local.a.size(); ++k, q *= p) {
      const std::uint64_t ak = local.a[k];
      const std::int64_t bk = local.b[k];
      if (ak > UINT32_MAX) throw OverflowError("build_tables: local coefficient exceeds 32 bits");
      // n = q * t with p not dividing t gets exactly p^k
      std::uint64_t t = 1;
      for (std::uint64_t n = q; n <= N; n += q, ++t) {
        if (t % p == 0) continue;
        a[n] = checked_mul_u32(a[n], ak);
        b[n] = static_cast<std::int32_t>(b[n] * bk);
      }
    }
  }
  return CoefficientTable(field.name, field_fingerprint(field), std::move(a), std::move(b));
}

namespace {

std::uint64_t floor_in_range(const CoefficientTable& table, double x, const char* what) {
  if (std::isnan(x) || x < 0) throw RangeError(std::string(what) + ": x must be >= 0");
  if (x > static_cast<double>(table.N())) {
    throw RangeError(std::string(what) + ": x exceeds table cap N = " + std::to_string(table.N()));
  }
  return static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace

std::uint64_t ideal_count(const CoefficientTable& table, double x) {
  return table.prefix(floor_in_range(table, x, "ideal_count"));
}

std::uint64_t vmr_via_mobius(const CoefficientTable& table, double x, unsigned m, unsigned r) {
  if (m < 1 || r < 1) throw DomainError("vmr_via_mobius: m and r must be >= 1");
  if (x < 1) throw RangeError("vmr_via_mobius: x must be >= 1");
  const std::uint64_t X = floor_in_range(table, x, "vmr_via_mobius");

  __int128 total = 0;
  for (std::uint64_t n = 1;; ++n) {
    // n^r, stopping once it passes X
    unsigned __int128 nr = 1;
    for (unsigned i = 0; i < r && nr <= X; ++i) nr *= n;
    if (nr > X) break;
    const std::int32_t bn = table.b(n);
    if (bn == 0) continue;
    const std::uint64_t I = table.prefix(X / static_cast<std::uint64_t>(nr));
    __int128 power = 1;
    for (unsigned i = 0; i < m; ++i) {
      if (__builtin_mul_overflow(power, static_cast<__int128>(I), &power)) {
        throw OverflowError("vmr_via_mobius: I_K(x)^m overflows 128 bits");
      }
    }
    __int128 term;
    if (__builtin_mul_overflow(power, static_cast<__int128>(bn), &term) ||
        __builtin_add_overflow(total, term, &total)) {
      throw OverflowError("vmr_via_mobius: accumulator overflow");
    }
  }
  if (total < 0 || total > static_cast<__int128>(UINT64_MAX)) {
    throw OverflowError("vmr_via_mobius: count does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(total);
}

namespace {

constexpr std::array<char, 4> kMagic = {'R', 'P', 'T', 'B'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::ostream& os, T v) {
  auto u = static_cast<std::make_unsigned_t<T>>(v);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    os.put(static_cast<char>(u & 0xff));
    u = static_cast<decltype(u)>(u >> 8);
  }
}

template <typename T>
T get_le(std::istream& is) {
  std::make_unsigned_t<T> u = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int c = is.get();
    if (c == EOF) throw ParseError("table cache: truncated file");
    u |= static_cast<decltype(u)>(static_cast<decltype(u)>(c & 0xff) << (8 * i));
  }
  return static_cast<T>(u);
}

}  // namespace

void save_table(const CoefficientTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write table cache " + path.string());
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kVersion);
  put_le<std::uint64_t>(out, table.fingerprint());
  put_le<std::uint64_t>(out, table.N());
  for (std::uint64_t n = 1; n <= table.N(); ++n) put_le<std::uint32_t>(out, table.a(n));
  for (std::uint64_t n = 1; n <= table.N(); ++n) put_le<std::int32_t>(out, table.b(n));
  if (!out) throw Error("error writing table cache " + path.string());
}

CoefficientTable load_table(const std::filesystem::path& path, const FieldSpec& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open table cache " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw ParseError("table cache: bad magic");
  if (get_le<std::uint32_t>(in) != kVersion) throw ParseError("table cache: unsupported version");
  if (get_le<std::uint64_t>(in) != field_fingerprint(field)) {
    throw ParseError("table cache: fingerprint does not match field '" + field.name + "'");
  }
  const auto N = get_le<std::uint64_t>(in);
  if (N < 1 || N > kMaxTableN) throw ParseError("table cache: bad N");
  std::vector<std::uint32_t> a(N + 1, 0);
  std::vector<std::int32_t> b(N + 1, 0);
  for (std::uint64_t n = 1; n <= N; ++n) a[n] = get_le<std::uint32_t>(in);
  for (std::uint64_t n = 1; n <= N; ++n) b[n] = get_le<std::int32_t>(in);
  return CoefficientTable(field.name, field_fingerprint(field), std::move(a), std::move(b));
}

}  // namespace rprime
