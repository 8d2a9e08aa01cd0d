// Rule table deciding realizability of k-residue tuples.
#pragma once

#include "connection.hpp"
#include "io.hpp"
#include "untying.hpp"

#include <cstdlib>
#include <map>
#include <mutex>

namespace residue_atlas {

// ---------------------------------------------------------------------------
// Sporadic exceptions for k >= 3, genus 0, two zeros, only -k poles.

struct SporadicItem {
  int item = 0;
  int k = 0;          // 0 means any k >= k_min
  int k_min = 3;
  std::vector<int> zeros;  // sorted decreasing
  int s = 0;
  std::vector<ResidueTuple> excluded;
  std::vector<ResidueTuple> excluded_even, excluded_odd;

  bool applies(int kk, const std::vector<int>& z, int ss) const {
    if (k ? kk != k : kk < k_min) return false;
    return z == zeros && ss == s;
  }
  const std::vector<ResidueTuple>& patterns(int kk) const {
    if (!k) return kk % 2 == 0 ? excluded_even : excluded_odd;
    return excluded;
  }
};

struct SporadicTable {
  int version = 0;
  std::vector<SporadicItem> items;
};

inline SporadicTable parse_sporadic_table(const json& j) {
  SporadicTable t;
  t.version = j.at("version").get<int>();
  auto tuples = [](const json& arr) {
    std::vector<ResidueTuple> out;
    for (auto& e : arr) out.push_back(parse_tuple(e));
    return out;
  };
  for (auto& e : j.at("items")) {
    SporadicItem it;
    it.item = e.at("item").get<int>();
    if (e.at("k").is_string()) {
      it.k = 0;
      it.k_min = e.value("k_min", 3);
    } else {
      it.k = e.at("k").get<int>();
    }
    it.zeros = e.at("zeros").get<std::vector<int>>();
    std::sort(it.zeros.rbegin(), it.zeros.rend());
    it.s = e.at("s").get<int>();
    if (e.contains("excluded")) it.excluded = tuples(e.at("excluded"));
    if (e.contains("excluded_by_parity")) {
      it.excluded_even = tuples(e.at("excluded_by_parity").at("even"));
      it.excluded_odd = tuples(e.at("excluded_by_parity").at("odd"));
    }
    for (auto* v : {&it.excluded, &it.excluded_even, &it.excluded_odd})
      for (auto& p : *v)
        if (static_cast<int>(p.size()) != it.s)
          throw parse_error("sporadic item " + std::to_string(it.item) + ": pattern length differs from s");
    t.items.push_back(std::move(it));
  }
  return t;
}

inline std::string sporadic_table_path() {
  if (const char* env = std::getenv("RESIDUE_ATLAS_DATA"); env && *env) return env;
#ifdef RESIDUE_ATLAS_DEFAULT_DATA
  return RESIDUE_ATLAS_DEFAULT_DATA;
#else
  return "data/sporadic.json";
#endif
}

inline SporadicTable load_sporadic_table(const std::string& path) {
  return parse_sporadic_table(read_json_file(path));
}

// Loaded once; immutable afterwards.
inline const SporadicTable& sporadic_table() {
  static const SporadicTable table = load_sporadic_table(sporadic_table_path());
  return table;
}

// r = lambda * (a permutation of pattern) for some lambda != 0.
inline bool matches_pattern(const ResidueTuple& r, const ResidueTuple& pattern) {
  if (r.size() != pattern.size() || r.empty()) return false;
  auto keys = [](const ResidueTuple& t) {
    std::vector<std::string> k;
    for (auto& x : t) k.push_back(x.key());
    std::sort(k.begin(), k.end());
    return k;
  };
  auto target = keys(r);
  auto it = std::find_if(r.begin(), r.end(), [](const Cyclo& x) { return !x.is_zero(); });
  if (it == r.end()) return false;
  for (auto& pj : pattern) {
    if (pj.is_zero()) continue;
    if (keys(scale(pattern, *it / pj)) == target) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Triangular triples.

inline bool is_triangular(const Cyclo& a, const Cyclo& b, const Cyclo& c) {
  if (a.is_zero() || b.is_zero() || c.is_zero()) throw std::invalid_argument("triangularity needs nonzero entries");
  Cyclo v = a * a + b * b + c * c - Cyclo(2) * (a * b + b * c + c * a);
  return v.is_zero();
}

// ---------------------------------------------------------------------------
// Admissible decompositions (three zeros, only poles of order -k*l, l >= 2).

struct AdmissibleDecomposition {
  int special = 0;                 // index into the sorted zero list
  std::array<int, 2> others{};     // zero indices playing the roles j=2, j=3
  std::vector<int> s0, s11, s12, s13;  // pole indices (residue order)
  std::map<int, int> m;            // m_t^j for poles in S12 / S13
  int m0_2 = 0, m0_3 = 0;

  json to_json() const {
    json mj = json::object();
    for (auto& [t, v] : m) mj[std::to_string(t)] = v;
    return {{"type", "admissible-decomposition"}, {"special_zero", special}, {"others", others},
            {"S0", s0}, {"S11", s11}, {"S12", s12}, {"S13", s13}, {"m", mj},
            {"m0", {m0_2, m0_3}}};
  }
};

inline int ceil_div(int a, int k) { return a >= 0 ? (a + k - 1) / k : -((-a) / k); }

inline std::optional<AdmissibleDecomposition> admissible_decomposition(const Stratum& s) {
  if (!is_valid_partition(s) || s.genus != 0) throw std::invalid_argument("admissible decomposition needs a valid genus-0 stratum");
  auto z = s.zeros();
  if (z.size() != 3) throw std::invalid_argument("admissible decomposition needs exactly three zeros");
  auto ps = s.residue_poles();
  if (ps.size() < 2 || s.r() || s.s()) throw std::invalid_argument("admissible decomposition needs p >= 2 poles of order -k*l, l >= 2");
  if (forced_power_divisor(s) > 1 || is_empty_stratum(s).empty) throw std::invalid_argument("admissible decomposition needs a nonempty primitive stratum");
  const int k = s.k;
  const int p = static_cast<int>(ps.size());
  std::vector<int> specials;
  for (int i = 0; i < 3; ++i)
    if (z[i] % k == 0) specials.push_back(i);
  if (specials.empty()) specials = {0, 1, 2};

  for (int sp : specials) {
    std::array<int, 2> oth{};
    for (int i = 0, c = 0; i < 3; ++i)
      if (i != sp) oth[c++] = i;
    const int l2 = ceil_div(z[oth[0]], k), l3 = ceil_div(z[oth[1]], k);
    if (l2 < 0 || l3 < 0) continue;
    // S0 choices: one pole, or an ordered pair.
    std::vector<std::vector<int>> s0s;
    for (int a = 0; a < p; ++a) s0s.push_back({a});
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b)
        if (a != b) s0s.push_back({a, b});
    for (auto& s0 : s0s) {
      std::vector<int> rest;
      for (int t = 0; t < p; ++t)
        if (std::find(s0.begin(), s0.end(), t) == s0.end()) rest.push_back(t);
      // rest poles go to 1 (S11), 2 (S12) or 3 (S13)
      std::vector<int> where(rest.size(), 0);
      bool allow11 = s0.size() == 2;
      std::function<std::optional<AdmissibleDecomposition>(size_t, int, int, int, int)> go =
          [&](size_t i, int lo2, int hi2, int lo3, int hi3) -> std::optional<AdmissibleDecomposition> {
        if (lo2 > l2 || lo3 > l3) return std::nullopt;
        if (i == rest.size()) {
          int need2lo = std::max(0, l2 - hi2), need2hi = l2 - lo2;
          int need3lo = std::max(0, l3 - hi3), need3hi = l3 - lo3;
          int m02, m03;
          if (s0.size() == 1) {
            int L = ps[s0[0]].ell - 1;
            if (need2lo > std::min(need2hi, L) || need3lo > std::min(need3hi, L)) return std::nullopt;
            if (need2lo + need3lo > L) return std::nullopt;
            m02 = need2lo;
            m03 = need3lo;
          } else {
            int L2 = ps[s0[0]].ell - 1, L3 = ps[s0[1]].ell - 1;
            if (need2lo > std::min(need2hi, L2) || need3lo > std::min(need3hi, L3)) return std::nullopt;
            m02 = need2lo;
            m03 = need3lo;
          }
          AdmissibleDecomposition d;
          d.special = sp;
          d.others = oth;
          d.s0 = s0;
          d.m0_2 = m02;
          d.m0_3 = m03;
          int left2 = l2 - m02, left3 = l3 - m03;
          for (size_t q = 0; q < rest.size(); ++q) {
            int t = rest[q];
            if (where[q] == 1) d.s11.push_back(t);
            if (where[q] == 2) d.s12.push_back(t);
            if (where[q] == 3) d.s13.push_back(t);
          }
          // greedy fill: every pole gets 1, then top up to l-1
          auto fill = [&](const std::vector<int>& set, int total) {
            for (int t : set) d.m[t] = 1;
            total -= static_cast<int>(set.size());
            for (int t : set) {
              int add = std::min(total, ps[t].ell - 2);
              d.m[t] += add;
              total -= add;
            }
          };
          fill(d.s12, left2);
          fill(d.s13, left3);
          return d;
        }
        int L = ps[rest[i]].ell - 1;
        for (int w = 1; w <= 3; ++w) {
          if (w == 1 && !allow11) continue;
          where[i] = w;
          std::optional<AdmissibleDecomposition> r;
          if (w == 1) r = go(i + 1, lo2, hi2, lo3, hi3);
          if (w == 2) r = go(i + 1, lo2 + 1, hi2 + L, lo3, hi3);
          if (w == 3) r = go(i + 1, lo2, hi2, lo3 + 1, hi3 + L);
          if (r) return r;
        }
        return std::nullopt;
      };
      if (auto d = go(0, 0, 0, 0, 0)) return d;
    }
  }
  return std::nullopt;
}

// Checks the defining equalities and ranges of a decomposition.
inline bool check_admissible_decomposition(const Stratum& s, const AdmissibleDecomposition& d) {
  auto z = s.zeros();
  auto ps = s.residue_poles();
  const int p = static_cast<int>(ps.size());
  std::vector<int> seen(p, 0);
  for (auto* v : {&d.s0, &d.s11, &d.s12, &d.s13})
    for (int t : *v) {
      if (t < 0 || t >= p) return false;
      seen[t]++;
    }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) return false;
  if (d.s0.size() != 1 && d.s0.size() != 2) return false;
  if (d.s0.size() == 1 && !d.s11.empty()) return false;
  bool has_div = std::any_of(z.begin(), z.end(), [&](int a) { return a % s.k == 0; });
  if (has_div && z[d.special] % s.k != 0) return false;
  int sum2 = d.m0_2, sum3 = d.m0_3;
  if (d.m0_2 < 0 || d.m0_3 < 0) return false;
  if (d.s0.size() == 1) {
    if (d.m0_2 + d.m0_3 > ps[d.s0[0]].ell - 1) return false;
  } else if (d.m0_2 > ps[d.s0[0]].ell - 1 || d.m0_3 > ps[d.s0[1]].ell - 1) {
    return false;
  }
  for (int t : d.s12) {
    int m = d.m.at(t);
    if (m < 1 || m > ps[t].ell - 1) return false;
    sum2 += m;
  }
  for (int t : d.s13) {
    int m = d.m.at(t);
    if (m < 1 || m > ps[t].ell - 1) return false;
    sum3 += m;
  }
  return sum2 == ceil_div(z[d.others[0]], s.k) && sum3 == ceil_div(z[d.others[1]], s.k);
}

// ---------------------------------------------------------------------------
// The classifier.

namespace detail {

inline bool all_zero(const ResidueTuple& r) {
  return std::all_of(r.begin(), r.end(), [](const Cyclo& x) { return x.is_zero(); });
}

// Entries of r lie on one open ray from the origin.
inline bool same_ray(const ResidueTuple& r) {
  if (r.empty() || r[0].is_zero()) return false;
  Cyclo inv = r[0].inverse();
  for (auto& x : r) {
    Cyclo q = x * inv;
    if (!q.is_real() || q.as_real3().sign() <= 0) return false;
  }
  return true;
}

inline bool all_equal(const ResidueTuple& r, size_t from = 0) {
  for (size_t i = from; i < r.size(); ++i)
    if (r[i] != r[from]) return false;
  return true;
}

// Order-0 zeros are regular marked points; keep one if nothing else is a zero.
inline Stratum strip_marked_points(const Stratum& s) {
  Stratum out(s.k, s.genus, {});
  bool has_zero = false;
  for (int m : s.orders)
    if (m != 0) {
      out.orders.push_back(m);
      has_zero = has_zero || s.is_zero_order(m);
    }
  if (!has_zero) out.orders.push_back(0);
  return out;
}

inline bool multiset_eq(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// Divides r by each nonzero entry in turn and returns the first quotient
// tuple all of whose entries have d-th roots in the field, with those roots.
inline std::optional<std::vector<std::vector<Cyclo>>> normalized_roots(const ResidueTuple& r, int d) {
  if (all_zero(r)) return std::vector<std::vector<Cyclo>>(r.size(), std::vector<Cyclo>{Cyclo(0)});
  for (auto& u : r) {
    if (u.is_zero()) continue;
    Cyclo inv = u.inverse();
    std::vector<std::vector<Cyclo>> roots;
    bool ok = true;
    for (auto& x : r) {
      auto rt = kth_roots(x * inv, d);
      if (rt.empty()) {
        ok = false;
        break;
      }
      roots.push_back(std::move(rt));
    }
    if (ok) return roots;
  }
  return std::nullopt;
}

}  // namespace detail

Decision classify(const Stratum& s, const ResidueTuple& r);

namespace detail {

inline Decision classify_power(const Stratum& s, const ResidueTuple& r, int d) {
  Stratum t(s.k / d, s.genus, {});
  for (int m : s.orders) t.orders.push_back(m / d);
  auto roots = normalized_roots(r, d);
  json base{{"type", "transport"}, {"d", d}, {"stratum", stratum_to_json(t)}};
  if (!roots) return Decision::undecided("lem:puissk#roots-outside-field", base);
  size_t combos = 1;
  for (auto& v : *roots) {
    combos *= v.size();
    if (combos > 100000) return Decision::undecided("lem:puissk#too-many-roots", base);
  }
  bool undecided = false;
  std::vector<size_t> idx(roots->size(), 0);
  for (size_t c = 0; c < combos; ++c) {
    ResidueTuple rr;
    for (size_t i = 0; i < idx.size(); ++i) rr.push_back((*roots)[i][idx[i]]);
    for (size_t i = 0; i < idx.size(); ++i) {
      if (++idx[i] < (*roots)[i].size()) break;
      idx[i] = 0;
    }
    if (!residue_tuple_valid(t, rr)) continue;
    Decision inner;
    try {
      inner = classify(t, rr);
    } catch (const invalid_stratum&) {
      return Decision::not_realizable("lem:puissk#empty-root-stratum", base);
    }
    if (inner.verdict == Verdict::Realizable) {
      base["roots"] = tuple_to_json(rr);
      base["inner"] = inner.to_json();
      return Decision::realizable("lem:puissk", base);
    }
    undecided = undecided || inner.verdict == Verdict::Undecided;
  }
  if (undecided) return Decision::undecided("lem:puissk", base);
  return Decision::not_realizable("lem:puissk", base);
}

inline Decision classify_quadratic_pure(const Stratum& s, const ResidueTuple& r) {
  auto z = s.zeros();
  const int n = static_cast<int>(z.size());
  const int ss = s.s();
  bool ray = same_ray(r);
  if (n >= 3) {
    if (!ray) return Decision::realizable("thm:geq0quad2");
    int odd = 0;
    for (int a : z) odd += (a % 2 != 0);
    if (n >= 4 && odd >= 4) return Decision::realizable("prop:quadsurjbcpimp#1");
    if (n == 3)
      for (int i = 0; i < 3; ++i) {
        int a3 = z[i], rest = z[(i + 1) % 3] + z[(i + 2) % 3];
        if (a3 % 2 == 0 && rest < a3) return Decision::realizable("prop:quadsurjbcpimp#2");
      }
    return Decision::undecided("open:quadratic-same-ray-several-zeros");
  }
  // two zeros
  if (z[0] - z[1] == 2 && z[1] % 2 != 0) {
    int sp = (z[1] + 1) / 2;  // (2s'-1, 2s'+1)
    if (sp >= 0 && ss == 2 * sp + 2) {
      std::map<std::string, int> count;
      for (auto& x : r) count[x.key()]++;
      for (auto& [key, c] : count) {
        if (c < 2 * sp) continue;
        ResidueTuple rest;
        int skip = 2 * sp;
        for (auto& x : r) {
          if (skip && x.key() == key) {
            --skip;
            continue;
          }
          rest.push_back(x);
        }
        if (rest.size() == 2 && rest[0] == rest[1])
          return Decision::not_realizable("thm:geq0quad2#i", json{{"type", "pattern"}, {"pattern", "(1^2s',R,R)"}});
      }
    }
  }
  if (z[0] == z[1] && z[0] % 2 != 0 && z[0] >= 1) {
    int sp = (z[0] + 1) / 2;  // (2s'-1, 2s'-1)
    if (ss == 2 * sp + 1) {
      int need = 2 * sp - 1;
      std::map<std::string, int> count;
      for (auto& x : r) count[x.key()]++;
      for (size_t c3 = 0; c3 < r.size(); ++c3) {
        if (count[r[c3].key()] < need) continue;
        ResidueTuple rest;
        int skip = need;
        for (auto& x : r) {
          if (skip && x == r[c3]) {
            --skip;
            continue;
          }
          rest.push_back(x);
        }
        if (rest.size() == 2 && is_triangular(rest[0], rest[1], r[c3]))
          return Decision::not_realizable("thm:geq0quad2#ii", json{{"type", "pattern"}, {"pattern", "(R1,R2,R3^(2s'-1)) triangular"}});
      }
    }
  }
  if (!ray) return Decision::realizable("thm:geq0quad2");
  if (z[1] == -1 && z[0] == 2 * ss - 3) {
    // same ray: compare with the canonical double cover
    auto roots = normalized_roots(r, 2);
    if (!roots) return Decision::undecided("prop:quadmoinsun#roots-outside-field");
    ResidueTuple dbl;
    for (auto& v : *roots) {
      Cyclo pos = v[0];
      for (auto& c : v)
        if (c.is_real() && c.as_real3().sign() > 0) pos = c;
      dbl.push_back(pos);
    }
    for (size_t i = 0; i < roots->size(); ++i) dbl.push_back(-dbl[i]);
    std::vector<int> orders{2 * ss - 2};
    for (int i = 0; i < 2 * ss; ++i) orders.push_back(-1);
    auto d = decide_minimal_abelian(Stratum(1, 0, orders), dbl);
    if (d.verdict == Verdict::NotRealizable)
      return Decision::not_realizable("prop:quadmoinsun", json{{"type", "double-cover"}, {"abelian", d.to_json()}});
    return Decision::undecided("prop:quadmoinsun#symmetry-unchecked");
  }
  return Decision::undecided("open:quadratic-same-ray-two-zeros");
}

}  // namespace detail

inline Decision classify(const Stratum& s0, const ResidueTuple& r) {
  if (!is_valid_partition(s0)) throw invalid_stratum("invalid stratum: " + s0.to_string());
  if (!residue_tuple_valid(s0, r)) throw std::invalid_argument("residue tuple outside the residue space");
  const int d = forced_power_divisor(s0);
  auto em = is_empty_stratum(s0);
  if (em.empty && !(s0.genus == 0 && d > 1)) throw invalid_stratum("empty stratum: " + em.reason);

  const Stratum s = detail::strip_marked_points(s0);
  const int k = s.k, g = s.genus;
  if (r.empty()) return Decision::realizable("trivial:no-residue-poles");
  if (g == 0 && d > 1) return detail::classify_power(s, r, d);

  auto z = s.zeros();
  const int n = static_cast<int>(z.size());
  const int p = s.p(), rr = s.r(), ss = s.s();
  const bool zero = detail::all_zero(r);

  if (g >= 2) return Decision::realizable("thm:ggeq2");
  if (g == 1) {
    if (k == 2) {
      auto rp = s.residue_poles();
      bool only4 = p > 0 && rr == 0 && ss == 0 &&
                   std::all_of(rp.begin(), rp.end(), [](auto& q) { return q.order == -4; });
      bool only2 = p == 0 && rr == 0 && ss > 0;
      if (only4 && (z == std::vector<int>{4 * p} || z == std::vector<int>{2 * p + 1, 2 * p - 1})) {
        if (zero) return Decision::not_realizable("thm:geq1#i");
        return Decision::realizable("thm:geq1#iii");
      }
      if (only2 && ss % 2 == 0 && (z == std::vector<int>{2 * ss} || z == std::vector<int>{ss + 1, ss - 1})) {
        if (detail::all_equal(r)) return Decision::not_realizable("thm:geq1#ii");
        return Decision::realizable("thm:geq1#iii");
      }
    }
    return Decision::realizable("thm:geq1#iii");
  }

  // genus 0
  if (k == 1) {
    if (ss == 0) {
      int sumb = 0;
      for (auto& q : s.residue_poles()) sumb += -q.order;
      if (*std::max_element(z.begin(), z.end()) > sumb - (p + 1)) {
        if (zero) return Decision::not_realizable("thm:geq0keq1#i");
        return Decision::realizable("thm:geq0keq1#i");
      }
    }
    if (p == 0) {
      if (n == 1) return decide_minimal_abelian(s, r);
      return decide_multizero_abelian(s, r);
    }
    return Decision::realizable("thm:geq0keq1#iii");
  }

  if (rr >= 1) {
    if (rr == 1 && ss == 0 && n == 1 && zero) return Decision::not_realizable("thm:g=0gen1#i");
    return Decision::realizable("thm:g=0gen1#ii");
  }

  auto rp = s.residue_poles();
  if (ss >= 1 && p >= 1) {
    if (k == 2 && n == 2) {
      bool one4 = p == 1 && rp[0].order == -4;
      // (2s'-1, 2s'+1; -4; (-2^{2s'})) excludes C*(0; 1,...,1)
      if (one4 && ss % 2 == 0 && z == std::vector<int>{ss + 1, ss - 1} && r[0].is_zero() &&
          detail::all_equal(r, 1))
        return Decision::not_realizable("thm:r=0sneq0#i");
      // (2a-1, 2a+1; (-4^a); (-2^2)) excludes C*(0,...,0; 1, 1)
      bool all4 = std::all_of(rp.begin(), rp.begin() + p, [](auto& q) { return q.order == -4; });
      if (all4 && ss == 2 && z == std::vector<int>{2 * p + 1, 2 * p - 1} &&
          std::all_of(r.begin(), r.begin() + p, [](auto& x) { return x.is_zero(); }) && r[p] == r[p + 1])
        return Decision::not_realizable("thm:r=0sneq0#ii");
    }
    return Decision::realizable("thm:r=0sneq0");
  }

  if (ss == 0) {
    // only poles of order -k*l with l >= 2
    if (!zero) {
      if (k == 2 && p % 2 == 0 && z == std::vector<int>{2 * p - 1, 2 * p - 3} &&
          std::all_of(rp.begin(), rp.end(), [](auto& q) { return q.order == -4; }) && detail::all_equal(r))
        return Decision::not_realizable("thm:r=0s=0#exception");
      return Decision::realizable("thm:r=0s=0");
    }
    if (p == 1) {
      if (n >= 3) return Decision::realizable("thm:r=0s=0#p1");
      return Decision::not_realizable("thm:r=0s=0#p1");
    }
    if (n == 2) return Decision::not_realizable("thm:r=0s=0#p2n2");
    if (n == 3) {
      auto dec = admissible_decomposition(s);
      if (dec) return Decision::realizable("prop:polesdivkaveczero", dec->to_json());
      return Decision::not_realizable("prop:polesdivkaveczero", json{{"type", "exhausted"}});
    }
    return Decision::undecided("open:zero-tuple-four-or-more-zeros");
  }

  // only -k poles
  if (k == 2) return detail::classify_quadratic_pure(s, r);
  if (n >= 3) return Decision::realizable("thm:geq0kspe#surj");
  for (auto& item : sporadic_table().items) {
    if (!item.applies(k, z, ss)) continue;
    for (auto& pat : item.patterns(k))
      if (matches_pattern(r, pat))
        return Decision::not_realizable("thm:geq0kspe#" + std::to_string(item.item),
                                        json{{"type", "pattern"}, {"pattern", tuple_to_json(pat)}});
  }
  return Decision::realizable("thm:geq0kspe#surj");
}

}  // namespace residue_atlas
