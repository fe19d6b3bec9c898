#include "crossprod/quasipoly.hpp"

#include <algorithm>
#include <sstream>

namespace crossprod {

namespace {

QRational q(std::int64_t a, std::int64_t b = 1) { return QRational(a, b); }

int sign(const QRational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// Sign of p(n) as n grows without bound.
int tail_sign(const std::array<QRational, 3>& p) {
  for (int i = 2; i >= 0; --i)
    if (p[i] != 0) return sign(p[i]);
  return 0;
}

std::string branch_str(const std::array<QRational, 3>& p) {
  std::ostringstream os;
  os << p[0] << " + " << p[1] << " n + " << p[2] << " n^2";
  return os.str();
}

}  // namespace

QuasiPoly2::QuasiPoly2(std::array<QRational, 3> even, std::array<QRational, 3> odd, int min_n)
    : even_(std::move(even)), odd_(std::move(odd)), min_n_(min_n) {}

QuasiPoly2 QuasiPoly2::from_basis(const FloorBasis& b, int min_n) {
  // even n: fl(n/2)=n/2, fl((n-1)/2)=(n-2)/2; odd n: both (n-1)/2
  QRational a1 = q(b.cn) + q(b.cfl, 2) + q(b.cflm1, 2) - q(b.cprod, 2);
  QRational a2 = q(b.cprod, 4);
  std::array<QRational, 3> even{q(b.c1) - q(b.cflm1), a1, a2};
  std::array<QRational, 3> odd{q(b.c1) - q(b.cfl, 2) - q(b.cflm1, 2) + q(b.cprod, 4), a1, a2};
  QuasiPoly2 f(even, odd, min_n);
  f.basis_ = b;
  return f;
}

QuasiPoly2 QuasiPoly2::constant(std::int64_t c, int min_n) {
  FloorBasis b;
  b.c1 = c;
  return from_basis(b, min_n);
}

QuasiPoly2 QuasiPoly2::splice(const QuasiPoly2& even_from, const QuasiPoly2& odd_from, int min_n) {
  QuasiPoly2 f(even_from.even_, odd_from.odd_, min_n);
  if (even_from.basis_ && odd_from.basis_ && *even_from.basis_ == *odd_from.basis_) f.basis_ = even_from.basis_;
  return f;
}

QuasiPoly2 QuasiPoly2::with_min_n(int m) const {
  QuasiPoly2 f = *this;
  f.min_n_ = m;
  return f;
}

QRational QuasiPoly2::value(std::int64_t n) const {
  const auto& p = branch(n < 0 ? -n : n);
  QRational x(n);
  return p[0] + p[1] * x + p[2] * x * x;
}

std::string QuasiPoly2::str() const {
  if (!basis_) return "[even: " + branch_str(even_) + " | odd: " + branch_str(odd_) + "]";
  const FloorBasis& b = *basis_;
  std::vector<std::pair<std::int64_t, std::string>> terms{
      {b.cprod, "fl(n/2) fl((n-1)/2)"}, {b.cfl, "fl(n/2)"}, {b.cflm1, "fl((n-1)/2)"}, {b.cn, "n"}, {b.c1, ""}};
  std::string out;
  for (const auto& [c, name] : terms) {
    if (c == 0) continue;
    std::int64_t mag = c < 0 ? -c : c;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (name.empty())
      out += std::to_string(mag);
    else if (mag == 1)
      out += name;
    else
      out += std::to_string(mag) + (name == "n" ? "" : " ") + name;
  }
  return out.empty() ? "0" : out;
}

std::int64_t eval_formula(const QuasiPoly2& f, std::int64_t n) {
  if (n < f.min_n())
    throw FormulaError("n = " + std::to_string(n) + " is below min_n = " + std::to_string(f.min_n()));
  QRational v = f.value(n);
  if (denominator(v) != 1) throw FormulaError("formula " + f.str() + " is fractional at n = " + std::to_string(n));
  if (v < 0) throw FormulaError("formula " + f.str() + " is negative at n = " + std::to_string(n));
  return static_cast<std::int64_t>(numerator(v));
}

const char* to_string(FormulaOrder o) {
  switch (o) {
    case FormulaOrder::less: return "f<g";
    case FormulaOrder::equal: return "f=g";
    case FormulaOrder::greater: return "f>g";
    case FormulaOrder::incomparable: return "incomparable";
  }
  return "?";
}

std::int64_t sign_settles_after(const std::array<QRational, 3>& p) {
  int lead = -1;
  for (int i = 2; i >= 0; --i)
    if (p[i] != 0) {
      lead = i;
      break;
    }
  if (lead <= 0) return 0;
  QRational m = 0;
  for (int i = 0; i < lead; ++i) m = std::max(m, QRational(abs(p[i] / p[lead])));
  // ceil(1 + m)
  QRational b = 1 + m;
  auto fl = numerator(b) / denominator(b);
  return static_cast<std::int64_t>(fl) + 1;
}

FormulaComparison compare_formulas(const QuasiPoly2& f, const QuasiPoly2& g, std::int64_t n0) {
  if (n0 < f.min_n() || n0 < g.min_n())
    throw FormulaError("compare_formulas: n0 = " + std::to_string(n0) + " below a formula's min_n");
  bool pos = false, neg = false;
  FormulaComparison out;
  for (int parity = 0; parity < 2; ++parity) {
    std::array<QRational, 3> d;
    const auto& fb = parity == 0 ? f.even() : f.odd();
    const auto& gb = parity == 0 ? g.even() : g.odd();
    for (int i = 0; i < 3; ++i) d[i] = gb[i] - fb[i];
    std::int64_t start = n0 + (((n0 % 2) + 2) % 2 != parity ? 1 : 0);
    int ts = tail_sign(d);
    if (ts == 0) {
      // identical branch: equality everywhere on it, recorded via order only
      continue;
    }
    if (ts > 0) pos = true;
    if (ts < 0) neg = true;
    std::int64_t last = std::max(start, sign_settles_after(d)) + 2;
    for (std::int64_t n = start; n <= last; n += 2) {
      QRational x(n);
      int s = sign(d[0] + d[1] * x + d[2] * x * x);
      if (s > 0) pos = true;
      if (s < 0) neg = true;
      if (s == 0) out.equal_at.push_back(n);
    }
  }
  std::sort(out.equal_at.begin(), out.equal_at.end());
  bool f_eq_even = f.even() == g.even(), f_eq_odd = f.odd() == g.odd();
  if (pos && neg)
    out.order = FormulaOrder::incomparable;
  else if (pos || neg) {
    out.order = pos ? FormulaOrder::less : FormulaOrder::greater;
    if (f_eq_even) out.equal_on_parity = 0;
    if (f_eq_odd) out.equal_on_parity = 1;
  } else {
    out.order = FormulaOrder::equal;
    out.equal_at.clear();
  }
  return out;
}

nlohmann::ordered_json basis_to_json(const FloorBasis& b, int min_n) {
  return {{"c1", b.c1}, {"cn", b.cn}, {"cfl", b.cfl}, {"cflm1", b.cflm1}, {"cprod", b.cprod}, {"min_n", min_n}};
}

QuasiPoly2 quasipoly_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw FormulaError("formula must be an object");
  static const char* allowed[] = {"c1", "cn", "cfl", "cflm1", "cprod", "min_n"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find_if(std::begin(allowed), std::end(allowed), [&](const char* a) { return it.key() == a; }) ==
        std::end(allowed))
      throw FormulaError("unknown formula key '" + it.key() + "'");
  auto get = [&](const char* k) -> std::int64_t {
    if (!j.contains(k)) return 0;
    if (!j.at(k).is_number_integer()) throw FormulaError(std::string("formula key ") + k + " must be an integer");
    return j.at(k).get<std::int64_t>();
  };
  if (!j.contains("min_n")) throw FormulaError("formula lacks min_n");
  FloorBasis b{get("c1"), get("cn"), get("cfl"), get("cflm1"), get("cprod")};
  return QuasiPoly2::from_basis(b, static_cast<int>(get("min_n")));
}

nlohmann::ordered_json quasipoly_to_json(const QuasiPoly2& f) {
  if (f.basis()) return basis_to_json(*f.basis(), f.min_n());
  auto br = [](const std::array<QRational, 3>& p) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& c : p) a.push_back(c.str());
    return a;
  };
  return {{"even", br(f.even())}, {"odd", br(f.odd())}, {"min_n", f.min_n()}};
}

}  // namespace crossprod
