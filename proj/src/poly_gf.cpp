#include "rprime/poly_gf.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "rprime/error.hpp"
#include "rprime/primes.hpp"

namespace rprime::gf {

namespace {

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DomainError("inverse of zero in F_p");
  return powmod(a, p - 2, p);
}

void require_same_modulus(const PolyModP& a, const PolyModP& b) {
  if (a.modulus() != b.modulus()) throw DomainError("polynomials over different prime fields");
}

}  // namespace

PolyModP::PolyModP(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2) throw DomainError("modulus must be prime");
  for (auto& v : c_) v %= p_;
  trim();
}

PolyModP PolyModP::from_integers(std::uint64_t p, std::span<const std::int64_t> coeffs) {
  std::vector<std::uint64_t> c;
  c.reserve(coeffs.size());
  const auto sp = static_cast<std::int64_t>(p);
  for (std::int64_t v : coeffs) {
    std::int64_t r = v % sp;
    if (r < 0) r += sp;
    c.push_back(static_cast<std::uint64_t>(r));
  }
  return PolyModP(p, std::move(c));
}

PolyModP PolyModP::constant(std::uint64_t p, std::uint64_t c) { return PolyModP(p, {c}); }

PolyModP PolyModP::x(std::uint64_t p) { return PolyModP(p, {0, 1}); }

void PolyModP::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyModP PolyModP::monic() const {
  if (is_zero()) return *this;
  const std::uint64_t inv = inverse_mod(leading(), p_);
  std::vector<std::uint64_t> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = mulmod(c_[i], inv, p_);
  return PolyModP(p_, std::move(c));
}

PolyModP PolyModP::derivative() const {
  if (c_.size() <= 1) return PolyModP(p_, {});
  std::vector<std::uint64_t> c(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = mulmod(c_[i], i % p_, p_);
  return PolyModP(p_, std::move(c));
}

std::uint64_t PolyModP::eval(std::uint64_t at) const {
  at %= p_;
  std::uint64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (mulmod(acc, at, p_) + *it) % p_;
  return acc;
}

std::string PolyModP::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const std::uint64_t c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::strong_ordering operator<=>(const PolyModP& a, const PolyModP& b) {
  if (auto c = a.p_ <=> b.p_; c != 0) return c;
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

PolyModP operator+(const PolyModP& a, const PolyModP& b) {
  require_same_modulus(a, b);
  const std::uint64_t p = a.modulus();
  std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + b[i]) % p;
  return PolyModP(p, std::move(c));
}

PolyModP operator-(const PolyModP& a, const PolyModP& b) {
  require_same_modulus(a, b);
  const std::uint64_t p = a.modulus();
  std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + p - b[i]) % p;
  return PolyModP(p, std::move(c));
}

PolyModP operator*(const PolyModP& a, const PolyModP& b) {
  require_same_modulus(a, b);
  const std::uint64_t p = a.modulus();
  if (a.is_zero() || b.is_zero()) return PolyModP(p, {});
  std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      c[i + j] = (c[i + j] + mulmod(a.c_[i], b.c_[j], p)) % p;
    }
  }
  return PolyModP(p, std::move(c));
}

std::pair<PolyModP, PolyModP> divmod(const PolyModP& a, const PolyModP& b) {
  require_same_modulus(a, b);
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const std::uint64_t p = a.modulus();
  if (a.degree() < b.degree()) return {PolyModP(p, {}), a};

  std::vector<std::uint64_t> rem = a.coeffs();
  const auto db = static_cast<std::size_t>(b.degree());
  std::vector<std::uint64_t> quot(rem.size() - db, 0);
  const std::uint64_t inv = inverse_mod(b.leading(), p);
  for (std::size_t k = rem.size(); k-- > db;) {
    const std::uint64_t q = mulmod(rem[k], inv, p);
    quot[k - db] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      rem[k - db + j] = (rem[k - db + j] + p - mulmod(q, b[j], p)) % p;
    }
  }
  rem.resize(db);
  return {PolyModP(p, std::move(quot)), PolyModP(p, std::move(rem))};
}

PolyModP operator/(const PolyModP& a, const PolyModP& b) { return divmod(a, b).first; }

PolyModP operator%(const PolyModP& a, const PolyModP& b) { return divmod(a, b).second; }

PolyModP poly_gcd(const PolyModP& a, const PolyModP& b) {
  require_same_modulus(a, b);
  PolyModP u = a;
  PolyModP v = b;
  while (!v.is_zero()) {
    PolyModP r = u % v;
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

PolyModP poly_powmod(const PolyModP& base, std::uint64_t exponent, const PolyModP& modulus) {
  require_same_modulus(base, modulus);
  if (modulus.is_zero()) throw DomainError("powmod with zero modulus");
  const std::uint64_t p = base.modulus();
  PolyModP result = PolyModP::constant(p, 1) % modulus;
  PolyModP b = base % modulus;
  while (exponent > 0) {
    if (exponent & 1) result = (result * b) % modulus;
    exponent >>= 1;
    if (exponent > 0) b = (b * b) % modulus;
  }
  return result;
}

namespace {

// g(x^p) -> g(x) coefficientwise; valid when f' = 0 in characteristic p.
PolyModP pth_root(const PolyModP& f) {
  const std::uint64_t p = f.modulus();
  std::vector<std::uint64_t> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);
  return PolyModP(p, std::move(c));
}

void squarefree_into(const PolyModP& f, unsigned scale, std::map<unsigned, PolyModP>& acc) {
  const std::uint64_t p = f.modulus();
  auto push = [&](const PolyModP& g, unsigned mult) {
    auto [it, inserted] = acc.try_emplace(mult, g);
    if (!inserted) it->second = (it->second * g).monic();
  };

  PolyModP c = poly_gcd(f, f.derivative());
  PolyModP w = f / c;
  unsigned i = 1;
  while (!w.is_one()) {
    PolyModP y = poly_gcd(w, c);
    PolyModP fac = w / y;
    if (fac.degree() > 0) push(fac.monic(), i * scale);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    squarefree_into(pth_root(c.monic()), scale * static_cast<unsigned>(p), acc);
  }
}

void require_monic_nonconstant(const PolyModP& f, const char* what) {
  if (f.is_zero()) throw DomainError(std::string(what) + ": zero polynomial");
  if (f.leading() != 1) throw DomainError(std::string(what) + ": polynomial is not monic");
}

// (factor, degree) pairs of a square-free monic polynomial, grouping all
// irreducible factors of one degree into a single product.
std::vector<std::pair<PolyModP, unsigned>> distinct_degree(const PolyModP& g) {
  const std::uint64_t p = g.modulus();
  std::vector<std::pair<PolyModP, unsigned>> out;
  PolyModP rest = g;
  const PolyModP x = PolyModP::x(p);
  PolyModP h = x % rest;
  unsigned d = 1;
  while (rest.degree() >= static_cast<int>(2 * d)) {
    h = poly_powmod(h, p, rest);
    PolyModP part = poly_gcd(rest, h - x);
    if (!part.is_one()) {
      out.emplace_back(part, d);
      rest = rest / part;
      h = h % rest;
    }
    ++d;
  }
  if (rest.degree() > 0) out.emplace_back(rest, static_cast<unsigned>(rest.degree()));
  return out;
}

PolyModP random_poly(std::uint64_t p, int below_degree, std::mt19937_64& rng) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(below_degree));
  for (auto& v : c) v = rng() % p;
  return PolyModP(p, std::move(c));
}

void equal_degree(const PolyModP& g, unsigned d, std::mt19937_64& rng, std::vector<PolyModP>& out) {
  if (g.degree() == static_cast<int>(d)) {
    out.push_back(g);
    return;
  }
  const std::uint64_t p = g.modulus();
  const PolyModP one = PolyModP::constant(p, 1);
  for (;;) {
    PolyModP a = random_poly(p, g.degree(), rng);
    if (a.degree() < 1) continue;
    PolyModP candidate;
    if (p == 2) {
      // Absolute trace F_{2^d} -> F_2.
      PolyModP cur = a;
      PolyModP acc = a;
      for (unsigned i = 1; i < d; ++i) {
        cur = (cur * cur) % g;
        acc = acc + cur;
      }
      candidate = acc;
    } else {
      // a^{(p^d-1)/2} = (a^{1+p+...+p^{d-1}})^{(p-1)/2}
      PolyModP cur = a;
      PolyModP acc = a;
      for (unsigned i = 1; i < d; ++i) {
        cur = poly_powmod(cur, p, g);
        acc = (acc * cur) % g;
      }
      candidate = poly_powmod(acc, (p - 1) / 2, g) - one;
    }
    PolyModP h = poly_gcd(candidate, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FactorPower> squarefree_decomposition(const PolyModP& f) {
  require_monic_nonconstant(f, "squarefree_decomposition");
  std::map<unsigned, PolyModP> acc;
  if (f.degree() > 0) squarefree_into(f, 1, acc);
  std::vector<FactorPower> out;
  for (auto& [mult, g] : acc) out.push_back({g, mult});
  return out;
}

std::vector<FactorPower> factor_mod_p(const PolyModP& f, std::uint64_t seed) {
  require_monic_nonconstant(f, "factor_mod_p");
  if (f.degree() < 1) throw DomainError("factor_mod_p: degree-0 input");
  std::mt19937_64 rng(seed);
  std::vector<FactorPower> out;
  for (const auto& [part, mult] : squarefree_decomposition(f)) {
    for (const auto& [group, d] : distinct_degree(part)) {
      std::vector<PolyModP> irreducibles;
      equal_degree(group, d, rng, irreducibles);
      for (auto& g : irreducibles) out.push_back({std::move(g), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const FactorPower& a, const FactorPower& b) {
    if (auto c = a.factor <=> b.factor; c != 0) return c < 0;
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

std::vector<DegreeClass> degree_pattern(const PolyModP& f) {
  require_monic_nonconstant(f, "degree_pattern");
  std::vector<DegreeClass> out;
  for (const auto& [part, mult] : squarefree_decomposition(f)) {
    for (const auto& [group, d] : distinct_degree(part)) {
      out.push_back({mult, d, static_cast<unsigned>(group.degree()) / d});
    }
  }
  return out;
}

}  // namespace rprime::gf
