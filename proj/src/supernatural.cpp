#include "lph/supernatural.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "lph/number_theory.hpp"

namespace lph {

Supernatural::Supernatural(FactorMap factors) {
  for (const auto& [p, e] : factors) {
    if (!is_prime(p)) throw SupernaturalError(std::to_string(p) + " is not prime");
    if (!e.is_zero()) factors_.emplace(p, e);
  }
}

Supernatural Supernatural::from_integer(std::uint64_t n) {
  if (n == 0) throw SupernaturalError("supernatural numbers are positive");
  Supernatural out;
  for (const auto& [p, e] : factorize(n)) out.factors_.emplace(p, Exponent{e});
  return out;
}

Exponent Supernatural::exponent(std::uint64_t p) const {
  const auto it = factors_.find(p);
  return it == factors_.end() ? Exponent{} : it->second;
}

bool Supernatural::is_finite() const {
  return std::none_of(factors_.begin(), factors_.end(),
                      [](const auto& kv) { return kv.second.is_infinite(); });
}

std::optional<std::uint64_t> Supernatural::to_integer() const {
  std::uint64_t out = 1;
  for (const auto& [p, e] : factors_) {
    if (e.is_infinite()) return std::nullopt;
    for (std::uint64_t i = 0; i < e.value(); ++i) {
      const auto next = checked_mul(out, p);
      if (!next) return std::nullopt;
      out = *next;
    }
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\n\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\n\r");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw SupernaturalError("malformed " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Supernatural parse_supernatural(std::string_view text) {
  text = trim(text);
  if (text == "1") return Supernatural{};
  if (text.empty()) throw SupernaturalError("empty factorization");

  Supernatural::FactorMap factors;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto stop = std::min(text.find('*', start), text.size());
    const auto term = trim(text.substr(start, stop - start));
    const auto caret = term.find('^');
    if (caret == std::string_view::npos) {
      throw SupernaturalError("term '" + std::string(term) + "' is not of the form p^e");
    }
    const std::uint64_t p = parse_u64(trim(term.substr(0, caret)), "base");
    const auto exp_text = trim(term.substr(caret + 1));
    Exponent e;
    if (exp_text == "inf") {
      e = Exponent::infinite();
    } else {
      const std::uint64_t v = parse_u64(exp_text, "exponent");
      if (v == 0) throw SupernaturalError("zero exponent for base " + std::to_string(p));
      e = Exponent{v};
    }
    if (!is_prime(p)) throw SupernaturalError(std::to_string(p) + " is not prime");
    if (!factors.emplace(p, e).second) {
      throw SupernaturalError("prime " + std::to_string(p) + " listed twice");
    }
    start = stop + 1;
  }
  return Supernatural{std::move(factors)};
}

std::string format(const Supernatural& n) {
  if (n.is_one()) return "1";
  std::string out;
  for (const auto& [p, e] : n.factors()) {
    if (!out.empty()) out += '*';
    out += std::to_string(p);
    out += '^';
    out += e.is_infinite() ? std::string("inf") : std::to_string(e.value());
  }
  return out;
}

bool divides(const Supernatural& a, const Supernatural& b) {
  return std::all_of(a.factors().begin(), a.factors().end(),
                     [&](const auto& kv) { return kv.second <= b.exponent(kv.first); });
}

Supernatural lcm(const Supernatural& a, const Supernatural& b) {
  Supernatural::FactorMap out = a.factors();
  for (const auto& [p, e] : b.factors()) {
    auto [it, inserted] = out.emplace(p, e);
    if (!inserted) it->second = std::max(it->second, e);
  }
  return Supernatural{std::move(out)};
}

Supernatural gcd(const Supernatural& a, const Supernatural& b) {
  Supernatural::FactorMap out;
  for (const auto& [p, e] : a.factors()) {
    const Exponent other = b.exponent(p);
    if (!other.is_zero()) out.emplace(p, std::min(e, other));
  }
  return Supernatural{std::move(out)};
}

}  // namespace lph
