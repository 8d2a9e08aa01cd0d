// Exact scalars: rationals, the cyclotomic field Q(zeta_12) and its real
// subfield Q(sqrt 3).
#pragma once

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace residue_atlas {

using Rational = mpq_class;
using cplx = std::complex<double>;

inline Rational make_rational(long long num, long long den = 1) {
  Rational q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  return q;
}

// Best rational approximation with bounded denominator (continued fractions).
inline std::optional<Rational> rationalize(double x, long long max_den = 1000000,
                                           double tol = 1e-9) {
  if (!std::isfinite(x)) return std::nullopt;
  double v = x;
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Rational best;
  bool have = false;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(v);
    if (std::fabs(a) > 9e15) break;
    long long ai = static_cast<long long>(a);
    long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den || k2 <= 0) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    best = make_rational(h1, k1);
    have = true;
    double frac = v - a;
    if (std::fabs(static_cast<double>(h1) / static_cast<double>(k1) - x) < 1e-15) break;
    if (frac < 1e-18) break;
    v = 1.0 / frac;
  }
  if (!have) return std::nullopt;
  if (std::fabs(best.get_d() - x) > tol * std::max(1.0, std::fabs(x))) return std::nullopt;
  return best;
}

// Real element p + q*sqrt(3), totally ordered exactly.
struct Real3 {
  Rational p, q;
  Real3() = default;
  Real3(Rational a) : p(std::move(a)), q(0) {}
  Real3(Rational a, Rational b) : p(std::move(a)), q(std::move(b)) {}

  int sign() const {
    int sp = mpq_sgn(p.get_mpq_t()), sq = mpq_sgn(q.get_mpq_t());
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    Rational p2 = p * p, q2 = 3 * q * q;
    int c = cmp(p2, q2);
    if (c == 0) return 0;
    return c > 0 ? sp : sq;
  }
  double to_double() const { return p.get_d() + q.get_d() * std::sqrt(3.0); }
  friend Real3 operator+(const Real3& a, const Real3& b) { return {a.p + b.p, a.q + b.q}; }
  friend Real3 operator-(const Real3& a, const Real3& b) { return {a.p - b.p, a.q - b.q}; }
  friend Real3 operator-(const Real3& a) { return {-a.p, -a.q}; }
  friend Real3 operator*(const Real3& a, const Real3& b) {
    return {a.p * b.p + 3 * a.q * b.q, a.p * b.q + a.q * b.p};
  }
  Real3& operator+=(const Real3& b) { p += b.p; q += b.q; return *this; }
  Real3& operator-=(const Real3& b) { p -= b.p; q -= b.q; return *this; }
  friend bool operator==(const Real3& a, const Real3& b) { return a.p == b.p && a.q == b.q; }
  friend bool operator!=(const Real3& a, const Real3& b) { return !(a == b); }
  friend bool operator<(const Real3& a, const Real3& b) { return (b - a).sign() > 0; }
  friend bool operator>(const Real3& a, const Real3& b) { return b < a; }
  friend bool operator<=(const Real3& a, const Real3& b) { return !(b < a); }
  friend bool operator>=(const Real3& a, const Real3& b) { return !(a < b); }
  bool is_zero() const { return p == 0 && q == 0; }
  std::string key() const { return p.get_str() + "|" + q.get_str(); }
};

// Element c0 + c1 z + c2 z^2 + c3 z^3 of Q(z), z = exp(i pi / 6), z^4 = z^2 - 1.
class Cyclo {
 public:
  std::array<Rational, 4> c{};

  Cyclo() { for (auto& x : c) x = 0; }
  Cyclo(long long v) : Cyclo() { c[0] = make_rational(v); }
  Cyclo(const Rational& v) : Cyclo() { c[0] = v; }
  Cyclo(Rational a, Rational b, Rational cc, Rational d) : c{std::move(a), std::move(b), std::move(cc), std::move(d)} {}

  static Cyclo zeta() { return Cyclo(0, 1, 0, 0); }
  static Cyclo i() { return Cyclo(0, 0, 0, 1); }
  static Cyclo sqrt3() { return Cyclo(0, 2, 0, -1); }
  static Cyclo gaussian(const Rational& re, const Rational& im) {
    return Cyclo(re, 0, 0, im);
  }
  static Cyclo from_real3(const Real3& r) { return Cyclo(r.p, 2 * r.q, 0, -r.q); }

  // zeta_12^j
  static Cyclo zeta_pow(int j) {
    j %= 12;
    if (j < 0) j += 12;
    static const std::array<std::array<int, 4>, 12> table = {{
        {1, 0, 0, 0},   {0, 1, 0, 0},  {0, 0, 1, 0},  {0, 0, 0, 1},
        {-1, 0, 1, 0},  {0, -1, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0},
        {0, 0, -1, 0},  {0, 0, 0, -1}, {1, 0, -1, 0}, {0, 1, 0, -1},
    }};
    const auto& t = table[j];
    return Cyclo(t[0], t[1], t[2], t[3]);
  }
  // exp(2 pi i t / k) when it lies in the field (k divides 12).
  static std::optional<Cyclo> root_of_unity(int k, long long t) {
    if (k <= 0 || 12 % k != 0) return std::nullopt;
    long long j = (t % k + k) % k;
    return zeta_pow(static_cast<int>(j * (12 / k)));
  }

  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    return Cyclo(a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]);
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    return Cyclo(a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]);
  }
  friend Cyclo operator-(const Cyclo& a) { return Cyclo(-a.c[0], -a.c[1], -a.c[2], -a.c[3]); }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    std::array<Rational, 7> p;
    for (auto& x : p) x = 0;
    for (int i = 0; i < 4; ++i) {
      if (a.c[i] == 0) continue;
      for (int j = 0; j < 4; ++j) p[i + j] += a.c[i] * b.c[j];
    }
    p[0] -= p[6];
    p[3] += p[5];
    p[1] -= p[5];
    p[2] += p[4];
    p[0] -= p[4];
    return Cyclo(p[0], p[1], p[2], p[3]);
  }
  Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
  Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }
  Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }
  friend bool operator==(const Cyclo& a, const Cyclo& b) { return a.c == b.c; }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  // Galois automorphism z -> z^j, j in {1, 5, 7, 11}.
  Cyclo galois(int j) const {
    Cyclo r;
    for (int i = 0; i < 4; ++i) {
      if (c[i] == 0) continue;
      Cyclo t = zeta_pow(i * j);
      for (int m = 0; m < 4; ++m) r.c[m] += c[i] * t.c[m];
    }
    return r;
  }
  Cyclo conj() const { return galois(11); }

  Rational norm() const {
    Cyclo n = (*this) * galois(5) * galois(7) * galois(11);
    return n.c[0];
  }
  Cyclo inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Cyclo g = galois(5) * galois(7) * galois(11);
    Rational n = ((*this) * g).c[0];
    return Cyclo(g.c[0] / n, g.c[1] / n, g.c[2] / n, g.c[3] / n);
  }
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

  bool is_real() const { return c[2] == 0 && 2 * c[3] == -c[1]; }
  bool is_rational() const { return c[1] == 0 && c[2] == 0 && c[3] == 0; }
  // Requires is_real().
  Real3 as_real3() const { return Real3(c[0], c[1] / 2); }
  Real3 re() const { return ((*this + conj()) * Cyclo(make_rational(1, 2))).as_real3(); }
  Real3 im() const {
    // (x - conj x) / (2i), 1/i = -i
    Cyclo d = (*this - conj()) * Cyclo(0, 0, 0, make_rational(-1, 2));
    return d.as_real3();
  }
  bool is_gaussian_rational() const { return c[1] == 0 && c[2] == 0; }

  cplx to_complex() const {
    static const cplx z(std::sqrt(3.0) / 2.0, 0.5);
    return c[0].get_d() + c[1].get_d() * z + c[2].get_d() * z * z + c[3].get_d() * z * z * z;
  }
  Cyclo pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclo r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
  std::string key() const {
    return c[0].get_str() + "," + c[1].get_str() + "," + c[2].get_str() + "," + c[3].get_str();
  }
};

inline bool operator<(const Cyclo& a, const Cyclo& b) { return a.key() < b.key(); }

// Imaginary part of conj(a) * b: positive when b is counter-clockwise of a.
inline int cross_sign(const Cyclo& a, const Cyclo& b) { return (a.conj() * b).im().sign(); }
inline int dot_sign(const Cyclo& a, const Cyclo& b) { return (a.conj() * b).re().sign(); }
inline bool collinear(const Cyclo& a, const Cyclo& b) { return (a.conj() * b).is_real(); }

inline Cyclo cyclo_from_complex(cplx z, long long max_den = 1000000, double tol = 1e-9) {
  auto re = rationalize(z.real(), max_den, tol);
  auto im = rationalize(z.imag(), max_den, tol);
  if (!re || !im) throw std::invalid_argument("value cannot be rationalized within the denominator bound");
  return Cyclo::gaussian(*re, *im);
}

namespace detail {
// Solve a dense 4x4 real system by partial pivoting.
inline bool solve4(std::array<std::array<double, 5>, 4> m, std::array<double, 4>& x) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (std::fabs(m[piv][col]) < 1e-14) return false;
    std::swap(m[piv], m[col]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      double f = m[r][col] / m[col][col];
      for (int cc = col; cc < 5; ++cc) m[r][cc] -= f * m[col][cc];
    }
  }
  for (int r = 0; r < 4; ++r) x[r] = m[r][4] / m[r][r];
  return true;
}
}  // namespace detail

// Recover an element from its two embeddings z -> e^{i pi/6}, z -> e^{5 i pi/6}.
inline std::optional<Cyclo> reconstruct(cplx e1, cplx e5, long long max_den = 1000000) {
  std::array<std::array<double, 5>, 4> m{};
  for (int i = 0; i < 4; ++i) {
    cplx w1 = std::polar(1.0, M_PI * i / 6.0);
    cplx w5 = std::polar(1.0, 5.0 * M_PI * i / 6.0);
    m[0][i] = w1.real();
    m[1][i] = w1.imag();
    m[2][i] = w5.real();
    m[3][i] = w5.imag();
  }
  m[0][4] = e1.real();
  m[1][4] = e1.imag();
  m[2][4] = e5.real();
  m[3][4] = e5.imag();
  std::array<double, 4> x{};
  if (!detail::solve4(m, x)) return std::nullopt;
  Cyclo out;
  for (int i = 0; i < 4; ++i) {
    auto q = rationalize(x[i], max_den, 1e-7);
    if (!q) return std::nullopt;
    out.c[i] = *q;
  }
  return out;
}

inline cplx embed(const Cyclo& x, int j) { return x.galois(j).to_complex(); }

// All k-th roots of x inside the field (possibly empty). Exactly verified.
inline std::vector<Cyclo> kth_roots(const Cyclo& x, int k) {
  std::vector<Cyclo> out;
  if (k <= 0) return out;
  if (x.is_zero()) return {Cyclo(0)};
  if (k == 1) return {x};
  cplx a1 = embed(x, 1), a5 = embed(x, 5);
  for (int u = 0; u < k; ++u) {
    cplx y1 = std::polar(std::pow(std::abs(a1), 1.0 / k), (std::arg(a1) + 2 * M_PI * u) / k);
    for (int v = 0; v < k; ++v) {
      cplx y5 = std::polar(std::pow(std::abs(a5), 1.0 / k), (std::arg(a5) + 2 * M_PI * v) / k);
      auto y = reconstruct(y1, y5);
      if (!y || y->pow(k) != x) continue;
      bool dup = false;
      for (auto& o : out) dup = dup || o == *y;
      if (!dup) out.push_back(*y);
    }
  }
  return out;
}

}  // namespace residue_atlas
