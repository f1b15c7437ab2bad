#include "lph/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "lph/kernels.hpp"
#include "lph/number_theory.hpp"

namespace lph {

FrequencyChain::FrequencyChain(std::vector<std::uint64_t> prefix, std::vector<std::uint64_t> rule)
    : prefix_(std::move(prefix)), rule_(std::move(rule)) {
  if (prefix_.empty()) throw ChainError("chain prefix is empty");
  if (prefix_.front() == 0) throw ChainError("chain entries must be positive");
  for (std::size_t i = 1; i < prefix_.size(); ++i) {
    const auto prev = prefix_[i - 1];
    const auto cur = prefix_[i];
    if (cur <= prev) {
      throw ChainError("prefix is not strictly increasing at entry " + std::to_string(i + 1));
    }
    if (cur % prev != 0) {
      throw ChainError(std::to_string(prev) + " does not divide " + std::to_string(cur));
    }
  }
  for (std::size_t i = 0; i < rule_.size(); ++i) {
    if (rule_[i] < 2) {
      throw ChainError("rule ratio " + std::to_string(i + 1) + " is below 2");
    }
  }
}

std::optional<std::uint64_t> FrequencyChain::try_term(std::size_t j) const {
  if (j == 0) throw std::out_of_range("chain terms are 1-indexed");
  const std::size_t p = prefix_.size();
  if (j <= p) return prefix_[j - 1];
  if (rule_.empty()) return prefix_.back();
  std::uint64_t value = prefix_.back();
  for (std::size_t step = p; step < j; ++step) {
    const auto next = checked_mul(value, rule_[(step - p) % rule_.size()]);
    if (!next) return std::nullopt;
    value = *next;
  }
  return value;
}

std::uint64_t FrequencyChain::term(std::size_t j) const {
  const auto v = try_term(j);
  if (!v) throw std::overflow_error("chain term " + std::to_string(j) + " exceeds 64 bits");
  return *v;
}

std::vector<std::uint64_t> FrequencyChain::terms(std::size_t count) const {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) {
    if (j == 1) {
      out.push_back(prefix_.front());
      continue;
    }
    const auto next = checked_mul(out.back(), ratio(j - 1));
    if (!next) throw std::overflow_error("chain term " + std::to_string(j) + " exceeds 64 bits");
    out.push_back(*next);
  }
  return out;
}

long double FrequencyChain::term_approx(std::size_t j) const {
  if (j == 0) throw std::out_of_range("chain terms are 1-indexed");
  const std::size_t p = prefix_.size();
  if (j <= p) return static_cast<long double>(prefix_[j - 1]);
  long double value = static_cast<long double>(prefix_.back());
  if (rule_.empty()) return value;
  for (std::size_t step = p; step < j; ++step) {
    value *= static_cast<long double>(rule_[(step - p) % rule_.size()]);
  }
  return value;
}

std::size_t FrequencyChain::representable_depth() const {
  if (rule_.empty()) return std::numeric_limits<std::size_t>::max();
  std::uint64_t value = prefix_.back();
  std::size_t j = prefix_.size();
  for (;; ++j) {
    const auto next = checked_mul(value, ratio(j));
    if (!next) return j;
    value = *next;
  }
}

std::uint64_t FrequencyChain::ratio(std::size_t j) const {
  if (j == 0) throw std::out_of_range("chain terms are 1-indexed");
  const std::size_t p = prefix_.size();
  if (j < p) return prefix_[j] / prefix_[j - 1];
  if (rule_.empty()) return 1;
  return rule_[(j - p) % rule_.size()];
}

FrequencyChain::Factors FrequencyChain::term_factors(std::size_t j) const {
  if (j == 0) throw std::out_of_range("chain terms are 1-indexed");
  const std::size_t p = prefix_.size();
  Factors out = factorize(prefix_[std::min(j, p) - 1]);
  if (j <= p || rule_.empty()) return out;
  const std::size_t steps = j - p;
  const std::size_t cycles = steps / rule_.size();
  const std::size_t rest = steps % rule_.size();
  for (std::size_t i = 0; i < rule_.size(); ++i) {
    const std::uint64_t times = cycles + (i < rest ? 1 : 0);
    if (times == 0) continue;
    for (const auto& [q, e] : factorize(rule_[i])) out[q] += e * times;
  }
  return out;
}

FrequencyChain FrequencyChain::subchain(std::size_t step) const {
  if (step == 0) throw ChainError("subchain step must be positive");
  const std::size_t p = prefix_.size();
  std::vector<std::uint64_t> prefix;
  if (rule_.empty()) {
    for (std::size_t j = step; j <= p; j += step) prefix.push_back(prefix_[j - 1]);
    if (prefix.empty() || prefix.back() != prefix_.back()) prefix.push_back(prefix_.back());
    return FrequencyChain{std::move(prefix)};
  }
  const std::size_t blocks = std::max<std::size_t>(1, (p + step - 1) / step);
  for (std::size_t m = 1; m <= blocks; ++m) prefix.push_back(term(m * step));
  const std::size_t cycle = rule_.size() / std::gcd(rule_.size(), step);
  std::vector<std::uint64_t> rule;
  for (std::size_t i = 0; i < cycle; ++i) {
    std::uint64_t r = 1;
    for (std::size_t j = step * (blocks + i); j < step * (blocks + i + 1); ++j) {
      const auto next = checked_mul(r, ratio(j));
      if (!next) throw std::overflow_error("subchain ratio exceeds 64 bits");
      r = *next;
    }
    rule.push_back(r);
  }
  return FrequencyChain{std::move(prefix), std::move(rule)};
}

Supernatural chain_limit(const FrequencyChain& chain) {
  Supernatural::FactorMap factors;
  for (const auto& [p, e] : factorize(chain.prefix().back())) factors.emplace(p, Exponent{e});
  for (const std::uint64_t r : chain.rule()) {
    for (const auto& kv : factorize(r)) factors[kv.first] = Exponent::infinite();
  }
  return Supernatural{std::move(factors)};
}

namespace {

// Walks the exact factorization of n_1, n_2, ... one ratio at a time.
class TermCursor {
 public:
  explicit TermCursor(const FrequencyChain& chain)
      : chain_(chain), factors_(factorize(chain.prefix().front())) {}

  std::size_t index() const { return index_; }
  const FrequencyChain::Factors& factors() const { return factors_; }
  bool exhausted() const { return chain_.is_finite() && index_ >= chain_.prefix().size(); }

  void advance() {
    for (const auto& [p, e] : factorize(chain_.ratio(index_))) factors_[p] += e;
    ++index_;
  }

 private:
  const FrequencyChain& chain_;
  std::size_t index_ = 1;
  FrequencyChain::Factors factors_;
};

bool factors_divide(const FrequencyChain::Factors& a, const FrequencyChain::Factors& b) {
  return std::all_of(a.begin(), a.end(), [&](const auto& kv) {
    const auto it = b.find(kv.first);
    return it != b.end() && kv.second <= it->second;
  });
}

std::vector<DivisibilityWitness> witnesses(const FrequencyChain& from, const FrequencyChain& into,
                                           std::size_t depth) {
  std::vector<DivisibilityWitness> out;
  TermCursor source(from);
  TermCursor target(into);
  for (std::size_t i = 1; i <= depth; ++i) {
    if (i > 1) source.advance();
    // Witness indices are nondecreasing because n_i | n_{i+1}.
    while (!factors_divide(source.factors(), target.factors())) {
      if (target.exhausted()) throw std::logic_error("isomorphic chains without a witness");
      target.advance();
    }
    out.push_back({i, from.try_term(i), target.index(), into.try_term(target.index())});
  }
  return out;
}

NonDominatedEntry find_counterexample(const FrequencyChain& a, const FrequencyChain& b,
                                      const Supernatural& la, const Supernatural& lb) {
  std::map<std::uint64_t, std::pair<Exponent, Exponent>> all;
  for (const auto& [p, e] : la.factors()) all[p].first = e;
  for (const auto& [p, e] : lb.factors()) all[p].second = e;
  for (const auto& [p, ex] : all) {
    if (ex.first == ex.second) continue;
    const bool a_larger = ex.first > ex.second;
    const FrequencyChain& big = a_larger ? a : b;
    const Exponent bound = a_larger ? ex.second : ex.first;
    TermCursor cursor(big);
    auto exponent_at = [&] {
      const auto it = cursor.factors().find(p);
      return it == cursor.factors().end() ? 0 : it->second;
    };
    while (exponent_at() <= bound.value()) cursor.advance();
    return {a_larger ? 'a' : 'b', cursor.index(), big.try_term(cursor.index()), p,
            Exponent{exponent_at()}, bound};
  }
  throw std::logic_error("limits differ but no prime separates them");
}

}  // namespace

IsomorphismVerdict hulls_isomorphic(const FrequencyChain& a, const FrequencyChain& b,
                                    std::size_t depth) {
  IsomorphismVerdict verdict{false, chain_limit(a), chain_limit(b), {}};
  verdict.isomorphic = verdict.order_a == verdict.order_b;
  if (verdict.isomorphic) {
    verdict.certificate.a_in_b = witnesses(a, b, depth);
    verdict.certificate.b_in_a = witnesses(b, a, depth);
  } else {
    verdict.certificate.counterexample = find_counterexample(a, b, verdict.order_a, verdict.order_b);
  }
  return verdict;
}

namespace {

void append_split(std::vector<std::uint64_t>& out, std::uint64_t ratio) {
  for (const auto& [p, e] : factorize(ratio)) {
    for (std::uint64_t i = 0; i < e; ++i) out.push_back(p);
  }
}

}  // namespace

FrequencyChain maximal_chain(const FrequencyChain& chain, std::size_t depth) {
  const std::size_t p = chain.prefix().size();
  const std::size_t covered = chain.is_finite() ? p : std::max(depth, p);

  std::vector<std::uint64_t> prefix{chain.prefix().front()};
  for (std::size_t j = 1; j < covered; ++j) {
    std::vector<std::uint64_t> primes;
    append_split(primes, chain.ratio(j));
    for (const std::uint64_t q : primes) {
      const auto next = checked_mul(prefix.back(), q);
      if (!next) throw std::overflow_error("maximal chain term exceeds 64 bits");
      prefix.push_back(*next);
    }
  }
  std::vector<std::uint64_t> rule;
  for (std::size_t i = 0; i < chain.rule().size(); ++i) append_split(rule, chain.ratio(covered + i));
  return FrequencyChain{std::move(prefix), std::move(rule)};
}

std::vector<double> FrequencyModuleView::generators() const {
  std::vector<double> out;
  out.reserve(level);
  for (std::size_t j = 1; j <= level; ++j) {
    out.push_back(static_cast<double>(2.0L * std::numbers::pi_v<long double> / chain.term_approx(j)));
  }
  return out;
}

BohrCoefficient bohr_coefficient(const Sequence& d, std::uint64_t q, std::int64_t window,
                                 BohrWindow shape) {
  if (q == 0) throw std::invalid_argument("frequency denominator must be positive");
  if (window <= 0 || static_cast<std::uint64_t>(window) < q) {
    throw std::invalid_argument("window N must satisfy N >= q");
  }
  const std::size_t count = static_cast<std::size_t>(2 * window + (shape == BohrWindow::closed ? 1 : 0));
  const auto values = kernels::omp::sample(d, -window, count);
  const std::complex<double> sum = kernels::omp::phase_sum(values, -window, q);
  const std::complex<double> value = sum / (2.0 * static_cast<double>(window));
  return {value, std::abs(value)};
}

std::uint64_t common_divisor_frequency(std::uint64_t q1, std::uint64_t q2) {
  if (q1 == 0 || q2 == 0) throw std::invalid_argument("frequency denominators must be positive");
  return lcm_checked(q1, q2);
}

}  // namespace lph
