#include "hpd/invariant.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "hpd/error.hpp"
#include "hpd/lexer.hpp"

namespace hpd {

Monomial Monomial::variable(std::string name, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(std::move(name), exponent);
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& [_, e] : factors_) d += e;
  return d;
}

std::uint32_t Monomial::degree_in(std::string_view symbol) const {
  for (const auto& [s, e] : factors_)
    if (s == symbol) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() ||
        (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [s, e] : factors_) {
    if (!out.empty()) out += '*';
    out += s;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da > db;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto ia = fa.begin();
  auto ib = fb.begin();
  while (ia != fa.end() && ib != fb.end()) {
    if (ia->first != ib->first) {
      // The smaller name is present in one monomial only.
      return ia->first < ib->first;
    }
    if (ia->second != ib->second) return ia->second > ib->second;
    ++ia;
    ++ib;
  }
  return ia != fa.end() && ib == fb.end();
}

InvariantExpr::InvariantExpr(long long constant) {
  if (constant != 0) terms_.emplace(Monomial{}, Integer(constant));
}

InvariantExpr::InvariantExpr(const Integer& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

InvariantExpr InvariantExpr::symbol(std::string name) {
  InvariantExpr out;
  out.terms_.emplace(Monomial::variable(std::move(name)), Integer(1));
  return out;
}

InvariantExpr InvariantExpr::parse(std::string_view text) {
  TokenCursor cursor(tokenize(text));
  InvariantExpr value = parse_polynomial(cursor);
  if (!cursor.at_end())
    cursor.fail("unexpected " + describe(cursor.peek()) +
                " after polynomial");
  return value;
}

bool InvariantExpr::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::optional<Integer> InvariantExpr::constant_value() const {
  if (terms_.empty()) return Integer(0);
  if (!is_constant()) return std::nullopt;
  return terms_.begin()->second;
}

std::set<std::string> InvariantExpr::symbols() const {
  std::set<std::string> out;
  for (const auto& [m, _] : terms_)
    for (const auto& [s, e] : m.factors()) out.insert(s);
  return out;
}

std::uint32_t InvariantExpr::degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

std::uint32_t InvariantExpr::degree_in(std::string_view symbol) const {
  std::uint32_t d = 0;
  for (const auto& [m, _] : terms_) d = std::max(d, m.degree_in(symbol));
  return d;
}

Integer InvariantExpr::evaluate(const Assignment& values) const {
  Integer total = 0;
  for (const auto& [m, c] : terms_) {
    Integer term = c;
    for (const auto& [s, e] : m.factors()) {
      auto it = values.find(s);
      if (it == values.end())
        throw std::out_of_range("no value for symbol '" + s + "'");
      term *= boost::multiprecision::pow(it->second, e);
    }
    total += term;
  }
  return total;
}

Integer InvariantExpr::evaluate_at_ones() const {
  Integer total = 0;
  for (const auto& [_, c] : terms_) total += c;
  return total;
}

std::string InvariantExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Integer magnitude = c < 0 ? Integer(-c) : c;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      out << magnitude;
    } else {
      if (magnitude != 1) out << magnitude << '*';
      out << m.to_string();
    }
  }
  return out.str();
}

void InvariantExpr::add_term(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

InvariantExpr InvariantExpr::operator-() const {
  InvariantExpr out = *this;
  for (auto& [_, c] : out.terms_) c = -c;
  return out;
}

InvariantExpr& InvariantExpr::operator+=(const InvariantExpr& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

InvariantExpr& InvariantExpr::operator-=(const InvariantExpr& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

InvariantExpr operator*(const InvariantExpr& a, const InvariantExpr& b) {
  InvariantExpr out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

InvariantExpr& InvariantExpr::operator*=(const InvariantExpr& other) {
  *this = *this * other;
  return *this;
}

InvariantExpr InvariantExpr::pow(std::uint32_t exponent) const {
  InvariantExpr result(1);
  InvariantExpr base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

InvariantExpr add(const InvariantExpr& a, const InvariantExpr& b) {
  return a + b;
}

InvariantExpr mul(const InvariantExpr& a, const InvariantExpr& b) {
  return a * b;
}

Difference sub(const InvariantExpr& a, const InvariantExpr& b) {
  Difference d;
  d.value = a - b;
  d.plausible = d.value.evaluate_at_ones() >= 0;
  return d;
}

bool eq(const InvariantExpr& a, const InvariantExpr& b) { return a == b; }

InvariantExpr sum(const std::vector<InvariantExpr>& values) {
  InvariantExpr total;
  for (const auto& v : values) total += v;
  return total;
}

std::string to_string(const Integer& value) { return value.str(); }

}  // namespace hpd
