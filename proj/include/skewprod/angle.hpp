#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewprod {

using Rational = boost::rational<long long>;

// boost::rational's heterogeneous comparison templates recurse infinitely
// under C++20 rewritten-candidate rules; these exact-match overloads win
// overload resolution and keep mixed comparisons safe
inline bool operator==(const Rational& a, long long b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const Rational& a, int b) { return a == static_cast<long long>(b); }
inline bool operator!=(const Rational& a, long long b) { return !(a == b); }
inline bool operator!=(const Rational& a, int b) { return !(a == b); }

inline Rational rat_floor(const Rational& r) {
  long long n = r.numerator(), d = r.denominator();
  long long q = n / d;
  if (n % d != 0 && n < 0) --q;
  return Rational(q);
}

// fractional part in [0, 1)
inline Rational rat_frac(const Rational& r) { return r - rat_floor(r); }

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  long long num = std::stoll(s.substr(0, slash));
  long long den = std::stoll(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rational(num, den);
}

inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Declared basis of real numbers assumed rationally independent together with 1.
// Witness values are used only by numeric oracles, never by exact decisions.
struct SymbolBasis {
  struct Symbol {
    std::string name;
    double witness;
  };
  std::vector<Symbol> symbols;

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < symbols.size(); ++i)
      if (symbols[i].name == name) return static_cast<int>(i);
    return -1;
  }
};

using SymbolBasisPtr = std::shared_ptr<const SymbolBasis>;

inline SymbolBasisPtr default_basis() {
  static SymbolBasisPtr b = std::make_shared<SymbolBasis>(SymbolBasis{{
      {"s1", std::sqrt(2.0) - 1.0},
      {"s2", std::sqrt(3.0) - 1.0},
      {"s3", std::sqrt(5.0) - 2.0},
  }});
  return b;
}

inline bool same_basis(const SymbolBasisPtr& a, const SymbolBasisPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->symbols.size() != b->symbols.size()) return false;
  for (std::size_t i = 0; i < a->symbols.size(); ++i)
    if (a->symbols[i].name != b->symbols[i].name) return false;
  return true;
}

// Angle 2*pi*(q0 + sum_i q_i * s_i) with rational coordinates over a symbol
// basis.  All phase decisions reduce q0 modulo 1 and compare coordinates
// exactly.
class Angle {
 public:
  Angle() : basis_(default_basis()), coeffs_(1 + default_basis()->symbols.size(), Rational(0)) {}

  explicit Angle(SymbolBasisPtr basis)
      : basis_(std::move(basis)), coeffs_(1 + basis_->symbols.size(), Rational(0)) {}

  Angle(SymbolBasisPtr basis, std::vector<Rational> coeffs)
      : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != 1 + basis_->symbols.size())
      throw std::invalid_argument("angle coefficient count does not match basis");
  }

  static Angle turns(const Rational& q0, SymbolBasisPtr basis = default_basis()) {
    Angle a(std::move(basis));
    a.coeffs_[0] = q0;
    return a;
  }

  static Angle symbol(const std::string& name, const Rational& coeff = Rational(1),
                      SymbolBasisPtr basis = default_basis()) {
    Angle a(basis);
    int idx = basis->index_of(name);
    if (idx < 0) throw std::invalid_argument("unknown symbol: " + name);
    a.coeffs_[1 + idx] = coeff;
    return a;
  }

  const SymbolBasisPtr& basis() const { return basis_; }
  std::size_t dim() const { return coeffs_.size(); }
  const Rational& coeff(std::size_t i) const { return coeffs_[i]; }
  Rational& coeff(std::size_t i) { return coeffs_[i]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool has_symbol_part() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return true;
    return false;
  }

  // e^{i angle} == 1
  bool is_trivial_phase() const {
    if (has_symbol_part()) return false;
    return rat_frac(coeffs_[0]) == 0;
  }

  Angle operator-() const {
    Angle r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Angle operator+(const Angle& o) const {
    require_same(o);
    Angle r(*this);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
  }

  Angle operator-(const Angle& o) const { return *this + (-o); }

  Angle scaled(const Rational& k) const {
    Angle r(*this);
    for (auto& c : r.coeffs_) c *= k;
    return r;
  }

  Angle scaled(long long k) const { return scaled(Rational(k)); }

  // canonical representative: q0 reduced mod 1
  Angle canonical() const {
    Angle r(*this);
    r.coeffs_[0] = rat_frac(r.coeffs_[0]);
    return r;
  }

  double to_radians() const {
    double v = boost::rational_cast<double>(coeffs_[0]);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      v += boost::rational_cast<double>(coeffs_[i]) * basis_->symbols[i - 1].witness;
    return 2.0 * M_PI * v;
  }

  void require_same(const Angle& o) const {
    if (!same_basis(basis_, o.basis_))
      throw std::invalid_argument("angles over different symbol bases");
  }

 private:
  SymbolBasisPtr basis_;
  std::vector<Rational> coeffs_;  // coeffs_[0] constant, coeffs_[i>=1] symbols
};

inline bool phase_equal(const Angle& a, const Angle& b) {
  a.require_same(b);
  if (rat_frac(a.coeff(0)) != rat_frac(b.coeff(0))) return false;
  for (std::size_t i = 1; i < a.dim(); ++i)
    if (a.coeff(i) != b.coeff(i)) return false;
  return true;
}

// m*a + n*b
inline Angle angle_combine(const Angle& a, long long m, const Angle& b, long long n) {
  return a.scaled(m) + b.scaled(n);
}

namespace detail {

struct CongruenceSet {
  long long base;    // one solution
  long long period;  // >= 1; full set is base + period*Z
};

inline long long mod_ll(__int128 a, long long m) {
  __int128 r = a % m;
  if (r < 0) r += m;
  return static_cast<long long>(r);
}

inline long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long long x1, y1;
  long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// solutions m of m*step == target (mod 1), for rational step and target
inline std::optional<CongruenceSet> solve_phase_congruence(const Rational& step,
                                                           const Rational& target) {
  Rational s = rat_frac(step), t = rat_frac(target);
  if (s == 0) {
    if (t == 0) return CongruenceSet{0, 1};
    return std::nullopt;
  }
  long long p = s.numerator(), q = s.denominator();
  long long a = t.numerator(), b = t.denominator();
  // m*p*b == a*q (mod q*b)
  long long M = q * b;
  long long A = mod_ll(static_cast<__int128>(p) * b, M);
  long long B = mod_ll(static_cast<__int128>(a) * q, M);
  long long g = std::gcd(A, M);
  if (B % g != 0) return std::nullopt;
  long long Mg = M / g;
  long long x, y;
  ext_gcd(A / g, Mg, x, y);
  long long m0 = mod_ll(static_cast<__int128>(mod_ll(x, Mg)) * (B / g), Mg);
  return CongruenceSet{m0, Mg};
}

// representative with least |m|, preferring the nonnegative one on ties
inline long long tie_break(const CongruenceSet& cs) {
  long long r = ((cs.base % cs.period) + cs.period) % cs.period;
  if (r == 0) return 0;
  return (r <= cs.period - r) ? r : r - cs.period;
}

}  // namespace detail

// Least |m| (nonnegative preferred on ties) with n*phi + m*theta a trivial
// phase, or nullopt when no integer m works.
inline std::optional<long long> solve_character(const Angle& theta, const Angle& phi,
                                                long long n) {
  theta.require_same(phi);
  std::optional<Rational> forced;
  for (std::size_t i = 1; i < theta.dim(); ++i) {
    Rational ti = theta.coeff(i);
    Rational pi = phi.coeff(i) * n;
    if (ti != 0) {
      Rational cand = -pi / ti;
      if (forced && *forced != cand) return std::nullopt;
      forced = cand;
    } else if (pi != 0) {
      return std::nullopt;
    }
  }
  if (forced) {
    if (forced->denominator() != 1) return std::nullopt;
    long long m = forced->numerator();
    Rational c = phi.coeff(0) * n + theta.coeff(0) * m;
    if (rat_frac(c) != 0) return std::nullopt;
    return m;
  }
  auto cs = detail::solve_phase_congruence(theta.coeff(0), -phi.coeff(0) * n);
  if (!cs) return std::nullopt;
  return detail::tie_break(*cs);
}

struct MinimalLevel {
  long long n;  // least n >= 1 with a solving m
  long long m;  // witness from solve_character(theta, phi, n)
};

// Least n >= 1 for which solve_character(theta, phi, n) has a solution; the
// solvable levels then form n*Z.
inline std::optional<MinimalLevel> minimal_level(const Angle& theta, const Angle& phi) {
  theta.require_same(phi);
  std::optional<Rational> ratio;
  for (std::size_t i = 1; i < theta.dim(); ++i) {
    Rational ti = theta.coeff(i), pi = phi.coeff(i);
    if (ti == 0) {
      if (pi != 0) return std::nullopt;
    } else {
      Rational r = -pi / ti;
      if (ratio && *ratio != r) return std::nullopt;
      ratio = r;
    }
  }
  long long n0;
  if (ratio) {
    // m forced to n*ratio; constant coordinate needs n*(phi0 + ratio*theta0) integer
    Rational c = phi.coeff(0) + (*ratio) * theta.coeff(0);
    n0 = std::lcm(ratio->denominator(), c.denominator());
  } else {
    // both symbol-free: frac(m*theta0) ranges over (1/q)Z for theta0 = p/q
    long long q = rat_frac(theta.coeff(0)).denominator();
    Rational c = phi.coeff(0) * q;
    n0 = c.denominator();
  }
  auto m = solve_character(theta, phi, n0);
  if (!m) throw std::logic_error("minimal_level witness inconsistent with solve_character");
  return MinimalLevel{n0, *m};
}

}  // namespace skewprod
