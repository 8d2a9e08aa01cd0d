// Numerical oracle on the sphere: xi = c * prod (z - x_i)^{m_i} (dz)^k.
// Residues in closed form (Laurent series via the log of the product) and by
// contour integration; multi-start Levenberg-Marquardt fit to a target tuple.
#pragma once

#include <Eigen/Dense>
#include <boost/random/sobol.hpp>

#include <atomic>
#include <random>
#include <thread>

#include "classifier.hpp"

namespace residue_atlas {

class oracle_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Marked points in stratum order; the point `at_infinity` has no coordinate.
struct Configuration {
  int k = 1;
  std::vector<int> orders;
  std::vector<cplx> points;
  int at_infinity = -1;
  cplx scale{1, 0};

  double min_distance() const {
    double d = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < points.size(); ++i)
      for (size_t j = i + 1; j < points.size(); ++j)
        if (static_cast<int>(i) != at_infinity && static_cast<int>(j) != at_infinity)
          d = std::min(d, std::abs(points[i] - points[j]));
    return d;
  }

  json to_json() const {
    json pts = json::array();
    for (size_t i = 0; i < points.size(); ++i) {
      if (static_cast<int>(i) == at_infinity)
        pts.push_back("inf");
      else
        pts.push_back({points[i].real(), points[i].imag()});
    }
    return {{"k", k}, {"orders", orders}, {"points", pts}, {"scale", {scale.real(), scale.imag()}}};
  }

  static Configuration from_json(const json& j) {
    Configuration c;
    c.k = j.at("k").get<int>();
    c.orders = j.at("orders").get<std::vector<int>>();
    for (auto& p : j.at("points")) {
      if (p.is_string()) {
        c.at_infinity = static_cast<int>(c.points.size());
        c.points.push_back(0);
      } else {
        c.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      }
    }
    auto& s = j.at("scale");
    c.scale = {s.at(0).get<double>(), s.at(1).get<double>()};
    return c;
  }
};

namespace oracle_detail {

// Forward-mode derivative along one holomorphic direction.
struct Dual {
  cplx v, d;
  Dual(cplx a = 0, cplx b = 0) : v(a), d(b) {}
  friend Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
  Dual& operator+=(Dual b) { return *this = *this + b; }
};
inline Dual log(Dual a) { return {std::log(a.v), a.d / a.v}; }
inline Dual exp(Dual a) {
  cplx e = std::exp(a.v);
  return {e, e * a.d};
}
inline cplx value(const cplx& x) { return x; }
inline cplx value(const Dual& x) { return x.v; }

template <class T>
T ipow(T x, int n) {
  T r(1);
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

// Coefficient of t^{ell-1} in exp(a0 + sum a_n t^n), raised to the k-th power.
template <class T>
T series_residue(T A, const std::vector<T>& a, int ell, int k) {
  using std::exp;
  using std::log;
  std::vector<T> e(ell);
  e[0] = exp(log(A) / T(cplx(k)));
  for (int n = 1; n < ell; ++n) {
    T s(0);
    for (int j = 1; j <= n; ++j) s += T(cplx(j)) * a[j] * e[n - j];
    e[n] = s / T(cplx(n));
  }
  return ipow(e[ell - 1], k);
}

// k-residue (abelian residue when k = 1) at marked point p of order -k*ell.
template <class T>
T residue_at(const std::vector<int>& m, const std::vector<T>& x, int inf, const T& c, int k, int p) {
  const int ell = -m[p] / k;
  std::vector<T> a(ell, T(0));
  T A = c;
  const int n = static_cast<int>(m.size());
  if (p != inf) {
    for (int i = 0; i < n; ++i) {
      if (i == p || i == inf || m[i] == 0) continue;
      T d = x[p] - x[i];
      // (d + t)^{m} -> log d + sum_n (-1)^{n-1} m t^n / (n d^n)
      A = A * (m[i] >= 0 ? ipow(d, m[i]) : T(1) / ipow(d, -m[i]));
      T dn(1);
      for (int j = 1; j < ell; ++j) {
        dn = dn * d;
        double sgn = j % 2 ? 1.0 : -1.0;
        a[j] += T(cplx(sgn * m[i] / (double(j) * k))) / dn;
      }
    }
  } else {
    // w = 1/z: xi = c (-1)^k w^{m_inf} prod (1 - x_i w)^{m_i} (dw)^k
    if (k % 2) A = T(0) - A;
    for (int i = 0; i < n; ++i) {
      if (i == p || m[i] == 0) continue;
      T xn(1);
      for (int j = 1; j < ell; ++j) {
        xn = xn * x[i];
        a[j] += T(cplx(-double(m[i]) / (double(j) * k))) * xn;
      }
    }
  }
  return series_residue(A, a, ell, k);
}

}  // namespace oracle_detail

inline bool carries_k_residue(int order, int k) { return order <= -k && (-order) % k == 0; }

inline void check_configuration(const Configuration& c) {
  if (c.k < 1) throw std::invalid_argument("k must be at least 1");
  if (c.orders.size() != c.points.size()) throw std::invalid_argument("orders and points differ in length");
  long long sum = 0;
  for (int m : c.orders) sum += m;
  if (sum != -2LL * c.k) throw std::invalid_argument("orders must sum to -2k on the sphere");
  if (c.at_infinity >= static_cast<int>(c.points.size())) throw std::invalid_argument("bad point at infinity");
  if (c.scale == cplx(0)) throw std::invalid_argument("zero scale");
  if (c.min_distance() <= 1e-8) throw oracle_error("marked points collide");
}

// Closed-form k-residues at the k-divisible poles, in stratum order.
inline std::vector<cplx> series_residues(const Configuration& c) {
  check_configuration(c);
  std::vector<cplx> out;
  for (int p = 0; p < static_cast<int>(c.orders.size()); ++p)
    if (carries_k_residue(c.orders[p], c.k))
      out.push_back(oracle_detail::residue_at(c.orders, c.points, c.at_infinity, c.scale, c.k, p));
  return out;
}

// (1/2 pi i) times the loop integral of xi^{1/k}, branch continued by unwrapping
// the argument, raised to the k-th power. Trapezoid rule on 256 points,
// doubled until two resolutions agree.
inline cplx contour_k_residue(const Configuration& c, int p) {
  const int n = static_cast<int>(c.orders.size());
  bool at_inf = p == c.at_infinity;
  cplx centre = at_inf ? cplx(0) : c.points[p];
  double radius;
  if (at_inf) {
    double far = 0;
    for (int i = 0; i < n; ++i)
      if (i != p) far = std::max(far, std::abs(c.points[i]));
    radius = 2 * far + 1;
  } else {
    radius = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      if (i != p && i != c.at_infinity && c.orders[i] != 0) radius = std::min(radius, std::abs(c.points[i] - centre));
    if (!std::isfinite(radius)) radius = 1;
    radius *= 0.5;
  }
  if (radius < 1e-10) throw oracle_error("circle radius infeasible");
  auto integral = [&](int N) {
    cplx sum = 0;
    double prev_arg = 0, unwrapped = 0;
    for (int j = 0; j < N; ++j) {
      double th = 2 * std::numbers::pi * j / N;
      cplx u = std::polar(1.0, th), z = centre + radius * u;
      cplx logf = std::log(c.scale);
      for (int i = 0; i < n; ++i)
        if (i != c.at_infinity && c.orders[i] != 0) logf += double(c.orders[i]) * std::log(z - c.points[i]);
      double ar = logf.imag();
      if (j == 0) {
        unwrapped = ar;
      } else {
        double d = std::remainder(ar - prev_arg, 2 * std::numbers::pi);
        unwrapped += d;
      }
      prev_arg = ar;
      cplx root = std::exp(cplx(logf.real(), unwrapped) / double(c.k));
      sum += root * cplx(0, radius) * u;
    }
    cplx I = sum * (2 * std::numbers::pi / N) / cplx(0, 2 * std::numbers::pi);
    return at_inf ? -I : I;
  };
  cplx prev = integral(256);
  for (int N = 512; N <= (1 << 18); N *= 2) {
    cplx cur = integral(N);
    if (std::abs(cur - prev) <= 1e-10 * std::max(1.0, std::abs(cur))) return std::pow(cur, c.k);
    prev = cur;
  }
  throw oracle_error("contour integral did not settle");
}

// k-residues at the poles of order divisible by k (the residue poles of the
// stratum), in stratum order. k = 1 uses the closed form, k >= 2 contours.
inline std::vector<cplx> residues_of_configuration(const Configuration& c) {
  check_configuration(c);
  if (c.k == 1) return series_residues(c);
  std::vector<cplx> out;
  for (int p = 0; p < static_cast<int>(c.orders.size()); ++p)
    if (carries_k_residue(c.orders[p], c.k)) out.push_back(contour_k_residue(c, p));
  return out;
}

// k-residues of a configuration fitted to s (order-0 entries of s dropped),
// in residue-tuple order.
inline std::vector<cplx> residues_for(const Stratum& s, const Configuration& c) {
  auto raw = residues_of_configuration(c);
  std::vector<int> point(s.orders.size(), -1);
  int n = 0;
  for (size_t i = 0; i < s.orders.size(); ++i)
    if (s.orders[i] != 0) point[i] = n++;
  if (n != static_cast<int>(c.orders.size())) throw std::invalid_argument("configuration does not match the stratum");
  std::vector<int> slot(c.orders.size(), -1);
  int m = 0;
  for (int i = 0; i < n; ++i)
    if (carries_k_residue(c.orders[i], c.k)) slot[i] = m++;
  std::vector<cplx> out;
  for (auto& p : s.residue_poles()) out.push_back(raw[slot[point[p.index]]]);
  return out;
}

// Same differential with points a, b, d sent to infinity, 0, 1.
inline Configuration regauge(const Configuration& c, int a, int b, int d) {
  check_configuration(c);
  auto inf = [&](int j) { return j == c.at_infinity; };
  const cplx za = c.points[a], zb = c.points[b], zd = c.points[d];
  auto T = [&](cplx z) {
    if (inf(a)) return (z - zb) / (zd - zb);
    if (inf(b)) return (zd - za) / (z - za);
    if (inf(d)) return (z - zb) / (z - za);
    return (z - zb) * (zd - za) / ((z - za) * (zd - zb));
  };
  Configuration out = c;
  out.at_infinity = a;
  for (int i = 0; i < static_cast<int>(c.points.size()); ++i) {
    if (i == a)
      out.points[i] = 0;
    else if (i == b)
      out.points[i] = 0;
    else if (i == d)
      out.points[i] = 1;
    else if (inf(i))
      out.points[i] = (zd - za) / (zd - zb);
    else
      out.points[i] = T(c.points[i]);
  }
  // match the coefficients at a point away from the marked ones
  cplx z0(0.3141, 0.2718);
  for (int tries = 0; tries < 16; ++tries) {
    bool ok = true;
    for (int i = 0; i < static_cast<int>(c.points.size()); ++i)
      if (!inf(i) && std::abs(z0 - c.points[i]) < 1e-2) ok = false;
    if (ok) break;
    z0 = z0 * cplx(1.3, 0.7) + cplx(0.11, 0);
  }
  auto dT = [&](cplx z) {
    if (inf(a)) return 1.0 / (zd - zb);
    if (inf(b)) return -(zd - za) / ((z - za) * (z - za));
    if (inf(d)) return (zb - za) / ((z - za) * (z - za));
    return (zd - za) / (zd - zb) * (zb - za) / ((z - za) * (z - za));
  };
  cplx w0 = T(z0), dw = dT(z0);
  cplx lhs = std::log(c.scale), rhs = 0;
  for (int i = 0; i < static_cast<int>(c.points.size()); ++i) {
    if (!c.orders[i]) continue;
    if (!inf(i)) lhs += double(c.orders[i]) * std::log(z0 - c.points[i]);
    if (i != a) rhs += double(c.orders[i]) * std::log(w0 - out.points[i]);
  }
  out.scale = std::exp(lhs - rhs - double(c.k) * std::log(dw));
  return out;
}

// ---------------------------------------------------------------- fitting

struct StartLog {
  int index = 0;
  std::string outcome;  // converged, collided, diverged, stalled
  double residual = 0;
  int iterations = 0;
};

struct FitReport {
  bool found = false;
  std::optional<Configuration> config;
  double residual = std::numeric_limits<double>::infinity();
  int starts = 0;
  int reruns = 0;
  std::vector<StartLog> log;

  json to_json(bool with_log = false) const {
    json j{{"found", found}, {"residual", residual}, {"starts", starts}, {"reruns", reruns}};
    j["config"] = config ? config->to_json() : json(nullptr);
    std::map<std::string, int> tally;
    for (auto& s : log) ++tally[s.outcome];
    j["outcomes"] = tally;
    if (with_log) {
      json l = json::array();
      for (auto& s : log) l.push_back({{"start", s.index}, {"outcome", s.outcome}, {"residual", s.residual}, {"iterations", s.iterations}});
      j["log"] = l;
    }
    return j;
  }
};

struct FitOptions {
  int n_starts = 200;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int max_iterations = 300;
  int jobs = 0;  // 0: hardware concurrency
};

namespace oracle_detail {

// Gauge and unknowns for one stratum.
struct Problem {
  int k = 1;
  std::vector<int> m;      // orders of the marked points (order-0 entries dropped)
  int inf = -1, zero = -1, one = -1;
  std::vector<int> free;   // indices of free points
  std::vector<int> eqs;    // residue poles fitted
  std::vector<int> all_residue_points;  // residue poles in tuple order
  std::vector<cplx> target;             // per residue pole, tuple order
  double scale = 1;

  int unknowns() const { return static_cast<int>(free.size()) + 1; }

  template <class T>
  void unpack(const std::vector<T>& u, std::vector<T>& x, T& c) const {
    x.assign(m.size(), T(0));
    if (one >= 0) x[one] = T(1);
    for (size_t i = 0; i < free.size(); ++i) x[free[i]] = u[i];
    c = u.back();
  }

  Configuration configuration(const std::vector<cplx>& u) const {
    Configuration c;
    c.k = k;
    c.orders = m;
    cplx sc;
    unpack(u, c.points, sc);
    c.at_infinity = inf;
    c.scale = sc;
    return c;
  }

  // residue mismatch on the fitted equations
  template <class T>
  std::vector<T> eval(const std::vector<T>& u) const {
    std::vector<T> x;
    T c;
    unpack(u, x, c);
    std::vector<T> F;
    for (int q : eqs) {
      int slot = static_cast<int>(std::find(all_residue_points.begin(), all_residue_points.end(), q) - all_residue_points.begin());
      F.push_back((residue_at(m, x, inf, c, k, q) - T(target[slot])) / T(cplx(scale)));
    }
    return F;
  }

  Eigen::MatrixXcd jacobian(const std::vector<cplx>& u) const {
    const int n = unknowns();
    Eigen::MatrixXcd J(eqs.size(), n);
    for (int j = 0; j < n; ++j) {
      std::vector<Dual> ud(u.begin(), u.end());
      ud[j].d = 1;
      auto F = eval(ud);
      for (size_t i = 0; i < F.size(); ++i) J(i, j) = F[i].d;
    }
    return J;
  }

  double full_residual(const std::vector<cplx>& u) const {
    std::vector<cplx> x;
    cplx c;
    unpack(u, x, c);
    double s = 0;
    for (size_t i = 0; i < all_residue_points.size(); ++i)
      s += std::norm(residue_at(m, x, inf, c, k, all_residue_points[i]) - target[i]);
    return std::sqrt(s) / scale;
  }

  double min_distance(const std::vector<cplx>& u) const {
    std::vector<cplx> x;
    cplx c;
    unpack(u, x, c);
    double d = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < m.size(); ++i)
      for (size_t j = i + 1; j < m.size(); ++j)
        if (static_cast<int>(i) != inf && static_cast<int>(j) != inf) d = std::min(d, std::abs(x[i] - x[j]));
    return d;
  }
};

inline Problem make_problem(const Stratum& s, const ResidueTuple& r) {
  if (s.genus != 0) throw std::invalid_argument("the oracle fits genus-0 differentials only");
  if (!is_valid_partition(s)) throw std::invalid_argument("invalid stratum " + s.to_string());
  if (!residue_tuple_valid(s, r)) throw std::invalid_argument("residue tuple outside the residue space");
  Problem P;
  P.k = s.k;
  std::vector<int> map(s.orders.size(), -1);
  for (size_t i = 0; i < s.orders.size(); ++i)
    if (s.orders[i] != 0) {
      map[i] = static_cast<int>(P.m.size());
      P.m.push_back(s.orders[i]);
    }
  for (auto& p : s.residue_poles()) P.all_residue_points.push_back(map[p.index]);
  for (auto& x : r) P.target.push_back(x.to_complex());
  double norm = 0;
  for (auto& t : P.target) norm = std::max(norm, std::abs(t));
  P.scale = std::max(1.0, norm);
  const int n = static_cast<int>(P.m.size());
  auto is_res = [&](int i) { return carries_k_residue(P.m[i], P.k); };
  // infinity: a zero, else a pole without k-residue, else any pole
  for (int i = 0; i < n && P.inf < 0; ++i)
    if (P.m[i] > -P.k) P.inf = i;
  for (int i = 0; i < n && P.inf < 0; ++i)
    if (!is_res(i)) P.inf = i;
  if (P.inf < 0) P.inf = n - 1;
  for (int i = 0; i < n; ++i)
    if (i != P.inf) {
      if (P.zero < 0)
        P.zero = i;
      else if (P.one < 0)
        P.one = i;
      else
        P.free.push_back(i);
    }
  for (int q : P.all_residue_points) P.eqs.push_back(q);
  // the residue theorem makes one abelian equation redundant
  if (P.k == 1 && !P.eqs.empty()) {
    auto it = std::find(P.eqs.begin(), P.eqs.end(), P.inf);
    P.eqs.erase(it != P.eqs.end() ? it : P.eqs.end() - 1);
  }
  return P;
}

struct StartResult {
  StartLog log;
  std::vector<cplx> u;
};

inline StartResult run_start(const Problem& P, std::vector<cplx> u, const FitOptions& opt, int index) {
  StartResult res;
  res.log.index = index;
  auto norm = [](const std::vector<cplx>& F) {
    double s = 0;
    for (auto& f : F) s += std::norm(f);
    return std::sqrt(s);
  };
  auto finish = [&](const char* what, int it) {
    res.log.outcome = what;
    res.log.iterations = it;
    res.log.residual = P.full_residual(u);
    res.u = u;
    return res;
  };
  double lambda = 1e-3;
  auto F = P.eval(u);
  double f = norm(F);
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (f < 1e-2 * opt.tol) break;
    Eigen::MatrixXcd J = P.jacobian(u);
    Eigen::VectorXcd Fv(F.size());
    for (size_t i = 0; i < F.size(); ++i) Fv(i) = F[i];
    Eigen::MatrixXcd A = J.adjoint() * J;
    Eigen::VectorXcd g = J.adjoint() * Fv;
    bool moved = false;
    while (lambda < 1e12) {
      Eigen::MatrixXcd D = A;
      for (int i = 0; i < D.rows(); ++i) D(i, i) += lambda * (1 + std::abs(A(i, i)));
      Eigen::VectorXcd step = D.ldlt().solve(-g);
      std::vector<cplx> v = u;
      for (size_t i = 0; i < v.size(); ++i) v[i] += step(i);
      auto G = P.eval(v);
      double gnorm = norm(G);
      if (std::isfinite(gnorm) && gnorm < f) {
        u = std::move(v);
        F = std::move(G);
        f = gnorm;
        lambda = std::max(lambda / 5, 1e-15);
        moved = true;
        break;
      }
      lambda *= 4;
    }
    for (auto& x : u)
      if (!std::isfinite(std::abs(x)) || std::abs(x) > 1e8) return finish("diverged", it);
    if (std::abs(u.back()) < 1e-12) return finish("diverged", it);
    if (P.min_distance(u) < 1e-8) return finish("collided", it);
    if (!moved) break;
  }
  if (f < opt.tol) {
    // a true root is isolated: Newton keeps the points apart and settles
    return finish(P.min_distance(u) > 1e-8 ? "converged" : "collided", it);
  }
  return finish("stalled", it);
}

// Starting points from a Sobol sequence (shifted by the seed), mapped to the
// unit disk; points closer than 0.05 to each other or to 0 and 1 are skipped.
inline std::vector<std::vector<cplx>> starts(const Problem& P, int count, std::uint64_t seed, std::uint64_t offset) {
  const int nf = static_cast<int>(P.free.size());
  const int dim = std::max(2 * nf + 2, 1);
  boost::random::sobol sob(dim);
  sob.seed(offset + 1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<double> shift(dim);
  for (auto& s : shift) s = U(rng);
  std::vector<std::vector<cplx>> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < count && guard++ < 50 * count + 100) {
    std::vector<double> q(dim);
    for (auto& x : q) x = std::fmod(std::ldexp(static_cast<double>(sob()), -64) + shift[&x - &q[0]], 1.0);
    std::vector<cplx> u;
    std::vector<cplx> fixed{0};
    if (P.one >= 0) fixed.push_back(1);
    bool ok = true;
    for (int i = 0; i < nf && ok; ++i) {
      cplx z = std::polar(std::sqrt(q[2 * i]), 2 * std::numbers::pi * q[2 * i + 1]);
      for (auto& y : fixed)
        if (std::abs(z - y) < 0.05) ok = false;
      fixed.push_back(z);
      u.push_back(z);
    }
    if (!ok) continue;
    // best scale for these points: residues are linear in c
    u.push_back(1);
    std::vector<cplx> x;
    cplx c;
    P.unpack(u, x, c);
    cplx num = 0;
    double den = 0;
    for (size_t i = 0; i < P.all_residue_points.size(); ++i) {
      cplx R0 = residue_at(P.m, x, P.inf, cplx(1), P.k, P.all_residue_points[i]);
      num += std::conj(R0) * P.target[i];
      den += std::norm(R0);
    }
    u.back() = den > 1e-300 && std::abs(num) > 1e-12 * den ? num / den : std::polar(1.0, 2 * std::numbers::pi * q[dim - 1]);
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace oracle_detail

// Multi-start search for a genus-0 configuration with the given k-residues.
// NoSolutionFound (found = false) is evidence, never proof.
inline FitReport fit(const Stratum& s, const ResidueTuple& r, const FitOptions& opt = {}) {
  using namespace oracle_detail;
  if (opt.n_starts < 1) throw std::invalid_argument("need at least one start");
  Problem P = make_problem(s, r);
  FitReport rep;
  int want = opt.n_starts;
  std::uint64_t offset = 0;
  for (int round = 0; round < 2; ++round) {
    auto us = starts(P, want, opt.seed, offset);
    offset += 50ull * want + 100;
    std::vector<StartResult> results(us.size());
    unsigned jobs = opt.jobs > 0 ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i; (i = next++) < us.size();) results[i] = run_start(P, us[i], opt, rep.starts + static_cast<int>(i));
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<size_t>(jobs, us.size()); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    rep.starts += static_cast<int>(us.size());
    bool ambiguous = false;
    for (auto& res : results) {
      rep.log.push_back(res.log);
      if (res.log.outcome == "converged" && (!rep.found || res.log.residual < rep.residual)) {
        rep.found = true;
        rep.residual = res.log.residual;
        rep.config = P.configuration(res.u);
      }
      if (!rep.found && res.log.residual < rep.residual) rep.residual = res.log.residual;
      if (res.log.outcome == "stalled" && res.log.residual > 1e-9 && res.log.residual < 1e-4) ambiguous = true;
    }
    if (rep.found || !ambiguous || round == 1) break;
    ++rep.reruns;
    want = 4 * opt.n_starts;
  }
  return rep;
}

struct CrossCheck {
  bool conflict = false;
  Verdict verdict = Verdict::Undecided;
  FitReport fit;

  json to_json() const {
    return {{"status", conflict ? "CONFLICT" : "PASS"}, {"verdict", to_string(verdict)}, {"fit", fit.to_json()}};
  }
};

// A realizable verdict without a numerical witness, or a witness against a
// non-realizable verdict, is a conflict.
inline CrossCheck cross_check(const Stratum& s, const ResidueTuple& r, const Decision& d, const FitOptions& opt = {}) {
  CrossCheck cc;
  cc.verdict = d.verdict;
  cc.fit = fit(s, r, opt);
  cc.conflict = (d.verdict == Verdict::Realizable && !cc.fit.found) || (d.verdict == Verdict::NotRealizable && cc.fit.found);
  return cc;
}

}  // namespace residue_atlas
