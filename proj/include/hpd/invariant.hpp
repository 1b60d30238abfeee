#pragma once

// Exact multivariate integer polynomials used as values of additive
// invariants (K0 rank, total Hochschild dimension, ...).

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hpd {

using Integer = boost::multiprecision::cpp_int;

/// Integer values for symbols; used for evaluation and witnesses.
using Assignment = std::map<std::string, Integer>;

/// A power product of symbols, kept sorted by symbol name with positive
/// exponents.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(std::string name, std::uint32_t exponent = 1);

  const std::vector<std::pair<std::string, std::uint32_t>>& factors() const {
    return factors_;
  }
  std::uint32_t degree() const;
  std::uint32_t degree_in(std::string_view symbol) const;
  bool is_one() const { return factors_.empty(); }

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::pair<std::string, std::uint32_t>> factors_;
};

/// Graded lexicographic order, larger monomials first. Among equal total
/// degree, the monomial with the larger exponent on the alphabetically
/// smaller symbol comes first.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Canonical sparse polynomial with integer coefficients. Zero coefficients
/// are never stored, so structural equality is polynomial equality.
class InvariantExpr {
 public:
  using TermMap = std::map<Monomial, Integer, GrlexDescending>;

  InvariantExpr() = default;
  InvariantExpr(long long constant);  // NOLINT(google-explicit-constructor)
  explicit InvariantExpr(const Integer& constant);

  static InvariantExpr symbol(std::string name);

  /// Parses the textual syntax: integers, identifiers, + - * ^ and
  /// parentheses. Throws HpdError(Syntax) with a 1-based column.
  static InvariantExpr parse(std::string_view text);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<Integer> constant_value() const;

  std::set<std::string> symbols() const;
  std::uint32_t degree() const;
  std::uint32_t degree_in(std::string_view symbol) const;

  /// Symbols missing from `values` are an error (std::out_of_range).
  Integer evaluate(const Assignment& values) const;
  Integer evaluate_at_ones() const;

  std::string to_string() const;

  InvariantExpr operator-() const;
  InvariantExpr& operator+=(const InvariantExpr& other);
  InvariantExpr& operator-=(const InvariantExpr& other);
  InvariantExpr& operator*=(const InvariantExpr& other);
  friend InvariantExpr operator+(InvariantExpr a, const InvariantExpr& b) {
    return a += b;
  }
  friend InvariantExpr operator-(InvariantExpr a, const InvariantExpr& b) {
    return a -= b;
  }
  friend InvariantExpr operator*(const InvariantExpr& a,
                                 const InvariantExpr& b);
  friend bool operator==(const InvariantExpr& a, const InvariantExpr& b) {
    return a.terms_ == b.terms_;
  }

  /// Raises to a non-negative power.
  InvariantExpr pow(std::uint32_t exponent) const;

 private:
  void add_term(const Monomial& m, const Integer& c);

  TermMap terms_;
};

InvariantExpr add(const InvariantExpr& a, const InvariantExpr& b);
InvariantExpr mul(const InvariantExpr& a, const InvariantExpr& b);

/// Difference together with the plausibility flag: the value at the
/// all-ones assignment is non-negative. Negativity is reported, not fatal.
struct Difference {
  InvariantExpr value;
  bool plausible = true;
};
Difference sub(const InvariantExpr& a, const InvariantExpr& b);

bool eq(const InvariantExpr& a, const InvariantExpr& b);

InvariantExpr sum(const std::vector<InvariantExpr>& values);

std::string to_string(const Integer& value);

}  // namespace hpd
