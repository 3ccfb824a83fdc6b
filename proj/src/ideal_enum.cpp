#include "rprime/ideal_enum.hpp"

#include <algorithm>
#include <cmath>

#include "rprime/error.hpp"
#include "rprime/primes.hpp"

namespace rprime {

std::uint32_t FactoredIdeal::exponent_of(const PrimeLabel& label) const {
  auto it = std::lower_bound(factors.begin(), factors.end(), label,
                             [](const auto& entry, const PrimeLabel& l) { return entry.first < l; });
  return (it != factors.end() && it->first == label) ? it->second : 0;
}

FactoredIdeal make_ideal(std::vector<std::pair<PrimeLabel, std::uint32_t>> factors) {
  FactoredIdeal out;
  unsigned __int128 norm = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& [label, e] = factors[i];
    if (e == 0) throw DomainError("make_ideal: zero exponent");
    if (i > 0 && !(factors[i - 1].first < label)) throw DomainError("make_ideal: factors not strictly sorted");
    for (std::uint32_t k = 0; k < label.f * e; ++k) {
      norm *= label.p;
      if (norm > UINT64_MAX) throw OverflowError("make_ideal: norm exceeds 64 bits");
    }
  }
  out.factors = std::move(factors);
  out.norm = static_cast<std::uint64_t>(norm);
  return out;
}

namespace {

struct PrimeIdeal {
  PrimeLabel label;
  std::uint64_t norm;
};

std::vector<PrimeIdeal> prime_ideals_up_to(const FieldSpec& field, std::uint64_t X, std::uint64_t seed) {
  std::vector<PrimeIdeal> out;
  for (std::uint64_t p : primes_up_to(X)) {
    const SplittingType st = detail::splitting_type_of_prime(field, p, seed);
    for (std::size_t i = 0; i < st.size(); ++i) {
      const unsigned f = st.parts()[i].f;
      unsigned __int128 q = 1;
      for (unsigned k = 0; k < f && q <= X; ++k) q *= p;
      if (q <= X) out.push_back({{p, static_cast<std::uint32_t>(i), f}, static_cast<std::uint64_t>(q)});
    }
  }
  return out;
}

void descend(const std::vector<PrimeIdeal>& primes, std::size_t start, std::uint64_t X,
             std::vector<std::pair<PrimeLabel, std::uint32_t>>& current, std::uint64_t norm,
             std::vector<FactoredIdeal>& out) {
  out.push_back(FactoredIdeal{current, norm});
  for (std::size_t j = start; j < primes.size(); ++j) {
    if (primes[j].label.p > X / norm) break;
    const std::uint64_t q = primes[j].norm;
    std::uint64_t n = norm;
    for (std::uint32_t e = 1; q <= X / n; ++e) {
      n *= q;
      current.emplace_back(primes[j].label, e);
      descend(primes, j + 1, X, current, n, out);
      current.pop_back();
    }
  }
}

std::uint64_t checked_floor(double X, const EnumerationLimits& limits) {
  if (std::isnan(X) || X < 0) throw DomainError("enumerate_ideals: X must be >= 0");
  if (X > limits.max_norm) throw BudgetError("enumerate_ideals: X exceeds the materialization guard");
  return static_cast<std::uint64_t>(std::floor(X));
}

}  // namespace

std::vector<FactoredIdeal> enumerate_ideals(const FieldSpec& field, double X, const EnumerationLimits& limits) {
  const std::uint64_t Xi = checked_floor(X, limits);
  std::vector<FactoredIdeal> out;
  if (Xi < 1) return out;
  const auto primes = prime_ideals_up_to(field, Xi, limits.seed);
  std::vector<std::pair<PrimeLabel, std::uint32_t>> current;
  descend(primes, 0, Xi, current, 1, out);
  std::sort(out.begin(), out.end(), [](const FactoredIdeal& a, const FactoredIdeal& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.factors < b.factors;
  });
  return out;
}

int mobius_ideal(const FactoredIdeal& ideal) {
  for (const auto& [label, e] : ideal.factors) {
    if (e >= 2) return 0;
  }
  return ideal.factors.size() % 2 == 0 ? 1 : -1;
}

bool is_relatively_r_prime(std::span<const FactoredIdeal> tuple, unsigned r) {
  if (tuple.empty()) throw DomainError("is_relatively_r_prime: empty tuple");
  if (r == 0) throw DomainError("is_relatively_r_prime: r must be >= 1");
  for (const auto& [label, e] : tuple.front().factors) {
    if (e < r) continue;
    const bool shared = std::all_of(tuple.begin() + 1, tuple.end(),
                                    [&](const FactoredIdeal& other) { return other.exponent_of(label) >= r; });
    if (shared) return false;
  }
  return true;
}

namespace {

// Walks ordered m-tuples level by level. `common` holds the prime ideals P
// with P^r dividing every member chosen so far; once it is empty the
// remaining k coordinates are free and the branch is recorded as an event
// (k, largest norm so far) instead of being expanded.
class TupleWalker {
 public:
  TupleWalker(const std::vector<FactoredIdeal>& ideals, const std::vector<PrimeLabel>& labels, unsigned m,
              unsigned r, std::uint64_t X)
      : m_(m), events_(m, std::vector<std::uint64_t>(X + 1, 0)), scratch_(m) {
    norms_.reserve(ideals.size());
    heavy_.reserve(ideals.size());
    for (const auto& ideal : ideals) {
      norms_.push_back(ideal.norm);
      std::vector<std::uint32_t> ids;
      for (const auto& [label, e] : ideal.factors) {
        if (e < r) continue;
        auto it = std::lower_bound(labels.begin(), labels.end(), label);
        ids.push_back(static_cast<std::uint32_t>(it - labels.begin()));
      }
      heavy_.push_back(std::move(ids));
    }
  }

  void run() {
    for (std::size_t i = 0; i < norms_.size(); ++i) {
      if (heavy_[i].empty()) {
        ++events_[m_ - 1][norms_[i]];
      } else if (m_ > 1) {
        walk(1, heavy_[i], norms_[i]);
      }
    }
  }

  const std::vector<std::vector<std::uint64_t>>& events() const { return events_; }

 private:
  void walk(unsigned level, const std::vector<std::uint32_t>& common, std::uint64_t max_norm) {
    auto& next = scratch_[level];
    for (std::size_t i = 0; i < norms_.size(); ++i) {
      next.clear();
      std::set_intersection(common.begin(), common.end(), heavy_[i].begin(), heavy_[i].end(),
                            std::back_inserter(next));
      const std::uint64_t nm = std::max(max_norm, norms_[i]);
      if (next.empty()) {
        ++events_[m_ - level - 1][nm];
      } else if (level + 1 < m_) {
        // deeper levels write only to their own scratch slot
        walk(level + 1, next, nm);
      }
    }
  }

  unsigned m_;
  std::vector<std::uint64_t> norms_;
  std::vector<std::vector<std::uint32_t>> heavy_;
  std::vector<std::vector<std::uint64_t>> events_;  // [free coordinates][max norm]
  std::vector<std::vector<std::uint32_t>> scratch_;
};

}  // namespace

std::vector<std::uint64_t> count_rprime_direct_profile(const FieldSpec& field, double X, unsigned m, unsigned r,
                                                       const EnumerationLimits& limits) {
  if (m < 1 || r < 1) throw DomainError("count_rprime_direct: m and r must be >= 1");
  const std::uint64_t Xi = checked_floor(X, limits);
  const auto ideals = enumerate_ideals(field, X, limits);
  if (std::pow(static_cast<double>(ideals.size()), m) > limits.max_tuples) {
    throw BudgetError("count_rprime_direct: I_K(x)^m exceeds the iteration budget");
  }

  std::vector<PrimeLabel> labels;
  for (const auto& ideal : ideals) {
    for (const auto& [label, e] : ideal.factors) labels.push_back(label);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  TupleWalker walker(ideals, labels, m, r, Xi);
  walker.run();

  std::vector<std::uint64_t> ideals_upto(Xi + 1, 0);
  for (const auto& ideal : ideals) ++ideals_upto[ideal.norm];
  for (std::uint64_t x = 1; x <= Xi; ++x) ideals_upto[x] += ideals_upto[x - 1];

  std::vector<std::uint64_t> running(m, 0);
  std::vector<std::uint64_t> out(Xi + 1, 0);
  for (std::uint64_t x = 0; x <= Xi; ++x) {
    std::uint64_t total = 0;
    std::uint64_t power = 1;  // I(x)^k
    for (unsigned k = 0; k < m; ++k) {
      running[k] += walker.events()[k][x];
      total += running[k] * power;
      power *= ideals_upto[x];
    }
    out[x] = total;
  }
  return out;
}

std::uint64_t count_rprime_direct(const FieldSpec& field, double x, unsigned m, unsigned r,
                                  const EnumerationLimits& limits) {
  return count_rprime_direct_profile(field, x, m, r, limits).back();
}

}  // namespace rprime
