// Strata of k-differentials, residue spaces and the basic predicates on them.
#pragma once

#include "field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace residue_atlas {

enum class PoleKind { Divisible, NonDivisible, MinusK };

struct Pole {
  int order = 0;   // negative
  int index = 0;   // position in Stratum::orders
  PoleKind kind = PoleKind::MinusK;
  int ell = 0;     // -order / k when divisible
};

struct Stratum {
  int k = 1;
  int genus = 0;
  std::vector<int> orders;

  Stratum() = default;
  Stratum(int k_, int g_, std::vector<int> o) : k(k_), genus(g_), orders(std::move(o)) {}

  bool is_zero_order(int m) const { return m > -k; }

  // Orders strictly above -k, sorted decreasing.
  std::vector<int> zeros() const {
    std::vector<int> z;
    for (int m : orders)
      if (is_zero_order(m)) z.push_back(m);
    std::sort(z.rbegin(), z.rend());
    return z;
  }

  // All poles in canonical order: divisible (-k l, l>=2) by decreasing l,
  // then non-divisible by decreasing |order|, then the -k poles.
  std::vector<Pole> poles() const {
    std::vector<Pole> div, nondiv, mk;
    for (int i = 0; i < static_cast<int>(orders.size()); ++i) {
      int m = orders[i];
      if (is_zero_order(m)) continue;
      Pole p;
      p.order = m;
      p.index = i;
      if (m == -k) {
        p.kind = PoleKind::MinusK;
        p.ell = 1;
        mk.push_back(p);
      } else if ((-m) % k == 0) {
        p.kind = PoleKind::Divisible;
        p.ell = -m / k;
        div.push_back(p);
      } else {
        p.kind = PoleKind::NonDivisible;
        nondiv.push_back(p);
      }
    }
    auto by_order = [](const Pole& a, const Pole& b) {
      return a.order != b.order ? a.order < b.order : a.index < b.index;
    };
    std::stable_sort(div.begin(), div.end(), by_order);
    std::stable_sort(nondiv.begin(), nondiv.end(), by_order);
    std::vector<Pole> out = div;
    out.insert(out.end(), nondiv.begin(), nondiv.end());
    out.insert(out.end(), mk.begin(), mk.end());
    return out;
  }

  // Poles carrying a k-residue, in canonical order (the ResidueTuple index).
  std::vector<Pole> residue_poles() const {
    std::vector<Pole> out;
    for (auto& p : poles())
      if (p.kind != PoleKind::NonDivisible) out.push_back(p);
    return out;
  }

  int n_zeros() const { return static_cast<int>(zeros().size()); }
  int count(PoleKind kind) const {
    int c = 0;
    for (auto& p : poles()) c += p.kind == kind;
    return c;
  }
  int p() const { return count(PoleKind::Divisible); }
  int r() const { return count(PoleKind::NonDivisible); }
  int s() const { return count(PoleKind::MinusK); }
  bool holomorphic() const { return poles().empty(); }

  // Orders in canonical layout: zeros decreasing then poles in canonical order.
  std::vector<int> canonical_orders() const {
    std::vector<int> out = zeros();
    for (auto& p : poles()) out.push_back(p.order);
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "k=" << k << " g=" << genus << " (";
    auto c = canonical_orders();
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ")";
    return os.str();
  }
  friend bool operator==(const Stratum& a, const Stratum& b) {
    return a.k == b.k && a.genus == b.genus && a.canonical_orders() == b.canonical_orders();
  }
};

using ResidueTuple = std::vector<Cyclo>;

enum class ViolationKind { BadK, BadGenus, Degree, SingleSimplePole };

struct Violation {
  ViolationKind kind;
  std::string message;
};

inline std::vector<Violation> validate_stratum(const Stratum& s) {
  std::vector<Violation> v;
  if (s.k < 1) v.push_back({ViolationKind::BadK, "k must be at least 1"});
  if (s.genus < 0) v.push_back({ViolationKind::BadGenus, "genus must be non-negative"});
  if (!v.empty()) return v;
  long long sum = 0;
  for (int m : s.orders) sum += m;
  long long want = static_cast<long long>(s.k) * (2LL * s.genus - 2);
  if (sum != want) {
    std::ostringstream os;
    os << "sum of orders is " << sum << ", expected " << want;
    v.push_back({ViolationKind::Degree, os.str()});
  }
  if (s.k == 1) {
    auto ps = s.poles();
    if (ps.size() == 1 && ps[0].order == -1)
      v.push_back({ViolationKind::SingleSimplePole,
                   "a lone simple pole would carry a nonzero residue summing to zero"});
  }
  return v;
}

inline bool is_valid_partition(const Stratum& s) {
  for (auto& v : validate_stratum(s))
    if (v.kind != ViolationKind::SingleSimplePole) return false;
  return true;
}

class invalid_stratum : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline int forced_power_divisor(const Stratum& s) {
  int d = s.k;
  for (int m : s.orders) d = std::gcd(d, std::abs(m));
  return d == 0 ? 1 : d;
}

struct Emptiness {
  bool empty = false;
  std::string reason;
};

// Accepts partitions flagged only by the lone-simple-pole rule, which is
// itself an emptiness reason.
inline Emptiness is_empty_stratum(const Stratum& s) {
  if (!is_valid_partition(s)) throw invalid_stratum("invalid stratum: " + s.to_string());
  if (s.k == 1) {
    auto ps = s.poles();
    if (ps.size() == 1 && ps[0].order == -1) return {true, "single simple pole"};
  }
  std::vector<int> nz;
  for (int m : s.orders)
    if (m != 0) nz.push_back(m);
  std::sort(nz.rbegin(), nz.rend());
  bool finite_area = std::all_of(nz.begin(), nz.end(), [&](int m) { return m > -s.k; });
  if (finite_area) {
    if (nz == std::vector<int>{1, -1}) return {true, "holomorphic exception (1,-1)"};
    if (nz.empty() && s.k >= 2) return {true, "holomorphic exception: empty signature with k>=2"};
    if (s.k == 2 && (nz == std::vector<int>{4} || nz == std::vector<int>{3, 1}))
      return {true, "quadratic holomorphic exception"};
  }
  if (s.genus == 0 && forced_power_divisor(s) > 1)
    return {true, "genus 0 and gcd(orders,k)=" + std::to_string(forced_power_divisor(s)) +
                      ": every differential is a power"};
  return {false, ""};
}

inline void require_tuple_length(const Stratum& s, const ResidueTuple& r) {
  if (r.size() != s.residue_poles().size())
    throw std::invalid_argument("residue tuple has " + std::to_string(r.size()) +
                                " entries, stratum has " +
                                std::to_string(s.residue_poles().size()) + " residue poles");
}

inline bool residue_tuple_valid(const Stratum& s, const ResidueTuple& r) {
  require_tuple_length(s, r);
  auto ps = s.residue_poles();
  Cyclo sum;
  for (size_t i = 0; i < r.size(); ++i) {
    if (ps[i].kind == PoleKind::MinusK && r[i].is_zero()) return false;
    sum += r[i];
  }
  if (s.k == 1 && !sum.is_zero()) return false;
  return true;
}

inline ResidueTuple scale(const ResidueTuple& r, const Cyclo& lambda) {
  ResidueTuple out;
  out.reserve(r.size());
  for (auto& x : r) out.push_back(x * lambda);
  return out;
}

}  // namespace residue_atlas
