#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace crossprod {

using QRational = boost::multiprecision::cpp_rational;

class FormulaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Coefficients over {1, n, fl(n/2), fl((n-1)/2), fl(n/2)*fl((n-1)/2)}.
struct FloorBasis {
  std::int64_t c1 = 0, cn = 0, cfl = 0, cflm1 = 0, cprod = 0;
  friend bool operator==(const FloorBasis&, const FloorBasis&) = default;
};

// Period-2 quadratic: a0 + a1 n + a2 n^2 with one coefficient triple per
// parity of n. Valid for n >= min_n.
class QuasiPoly2 {
 public:
  QuasiPoly2() = default;
  QuasiPoly2(std::array<QRational, 3> even, std::array<QRational, 3> odd, int min_n);
  static QuasiPoly2 from_basis(const FloorBasis& b, int min_n);
  static QuasiPoly2 constant(std::int64_t c, int min_n = 1);
  // Even branch of a, odd branch of b.
  static QuasiPoly2 splice(const QuasiPoly2& even_from, const QuasiPoly2& odd_from, int min_n);

  const std::array<QRational, 3>& even() const { return even_; }
  const std::array<QRational, 3>& odd() const { return odd_; }
  const std::array<QRational, 3>& branch(std::int64_t n) const { return (n % 2 == 0) ? even_ : odd_; }
  int min_n() const { return min_n_; }
  QuasiPoly2 with_min_n(int m) const;
  const std::optional<FloorBasis>& basis() const { return basis_; }

  // Exact value as a rational; no range check.
  QRational value(std::int64_t n) const;

  // Same branches (min_n and basis ignored).
  bool same_function(const QuasiPoly2& o) const { return even_ == o.even_ && odd_ == o.odd_; }
  friend bool operator==(const QuasiPoly2& a, const QuasiPoly2& b) {
    return a.same_function(b) && a.min_n_ == b.min_n_;
  }

  // Basis form when known, e.g. "6 fl(n/2) fl((n-1)/2) + 4n"; branch form otherwise.
  std::string str() const;

 private:
  std::array<QRational, 3> even_{}, odd_{};
  int min_n_ = 1;
  std::optional<FloorBasis> basis_;
};

// Nonnegative integer value; throws FormulaError below min_n or when the value
// is negative or fractional.
std::int64_t eval_formula(const QuasiPoly2& f, std::int64_t n);

enum class FormulaOrder { less, equal, greater, incomparable };
const char* to_string(FormulaOrder o);

// less: f <= g for all n >= n0 with equality only on equal_at; greater is the
// mirror. equal_at lists the isolated points of equality; equal_on_parity is
// set when one whole parity branch coincides.
struct FormulaComparison {
  FormulaOrder order = FormulaOrder::incomparable;
  std::vector<std::int64_t> equal_at;
  std::optional<int> equal_on_parity;
};

FormulaComparison compare_formulas(const QuasiPoly2& f, const QuasiPoly2& g, std::int64_t n0);

// Past this n the sign of a nonzero quadratic no longer changes (Cauchy bound).
std::int64_t sign_settles_after(const std::array<QRational, 3>& p);

nlohmann::ordered_json basis_to_json(const FloorBasis& b, int min_n);
// Reads c1, cn, cfl, cflm1, cprod, min_n; missing coefficients default to 0.
QuasiPoly2 quasipoly_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json quasipoly_to_json(const QuasiPoly2& f);

}  // namespace crossprod
