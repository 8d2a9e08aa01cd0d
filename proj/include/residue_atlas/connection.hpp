// Connection graphs: bipartite weighted trees certifying collinear residues
// for one-zero abelian strata with simple poles.
#pragma once

#include "decision.hpp"
#include "stratum.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

namespace residue_atlas {

template <class W>
struct weight_traits;

template <>
struct weight_traits<std::int64_t> {
  static std::string key(std::int64_t w) { return std::to_string(w); }
  static bool positive(std::int64_t w) { return w > 0; }
  static json to_json(std::int64_t w) { return w; }
};

template <>
struct weight_traits<Real3> {
  static std::string key(const Real3& w) { return w.key(); }
  static bool positive(const Real3& w) { return w.sign() > 0; }
  static json to_json(const Real3& w) {
    if (w.q == 0) {
      if (w.p.get_den() == 1) return json(w.p.get_num().get_str());
      return json{{"num", w.p.get_num().get_str()}, {"den", w.p.get_den().get_str()}};
    }
    return json{{"rational", w.p.get_str()}, {"sqrt3", w.q.get_str()}};
  }
};

template <class W>
struct ConnectionGraph {
  std::vector<W> pos, neg;
  std::vector<std::pair<int, int>> edges;  // (pos index, neg index)

  json to_json() const {
    json j;
    j["type"] = "connection";
    j["pos"] = json::array();
    j["neg"] = json::array();
    for (auto& w : pos) j["pos"].push_back({{"w", weight_traits<W>::to_json(w)}});
    for (auto& w : neg) j["neg"].push_back({{"w", weight_traits<W>::to_json(w)}});
    j["edges"] = json::array();
    for (auto& e : edges) j["edges"].push_back({e.first, e.second});
    return j;
  }
};

class invalid_graph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Signed flow through each edge: the weight a leaf carries when that edge is
// peeled. Throws if the input is not a tree.
template <class W>
std::vector<W> edge_flows(const ConnectionGraph<W>& g) {
  int P = static_cast<int>(g.pos.size()), N = static_cast<int>(g.neg.size());
  int V = P + N;
  if (V == 0) throw invalid_graph("empty graph");
  if (static_cast<int>(g.edges.size()) != V - 1) throw invalid_graph("edge count is not V-1");
  std::vector<std::vector<std::pair<int, int>>> adj(V);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    auto [a, b] = g.edges[e];
    if (a < 0 || a >= P || b < 0 || b >= N) throw invalid_graph("edge endpoint out of range or not bipartite");
    adj[a].push_back({P + b, e});
    adj[P + b].push_back({a, e});
  }
  auto weight = [&](int v) { return v < P ? g.pos[v] : g.neg[v - P]; };
  std::vector<int> parent(V, -1), parent_edge(V, -1), order;
  std::vector<char> seen(V, 0);
  order.push_back(0);
  seen[0] = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (auto [u, e] : adj[v]) {
      if (seen[u]) {
        if (u != parent[v]) throw invalid_graph("graph has a cycle");
        continue;
      }
      seen[u] = 1;
      parent[u] = v;
      parent_edge[u] = e;
      order.push_back(u);
    }
  }
  if (static_cast<int>(order.size()) != V) throw invalid_graph("graph is not connected");
  // sub[v] = sum over the subtree of v, weighted + for v's class and - otherwise.
  std::vector<W> sub(V), flow(g.edges.size());
  for (int v = 0; v < V; ++v) sub[v] = weight(v);
  for (int i = V - 1; i > 0; --i) {
    int v = order[i];
    flow[parent_edge[v]] = sub[v];
    sub[parent[v]] = sub[parent[v]] - sub[v];
  }
  return flow;
}

// Conditions (i) and (ii). For (ii) every leaf-removal order keeps weights
// positive iff every edge flow is positive, which is also what any single
// complete removal order observes.
template <class W>
bool check_connection_graph(const ConnectionGraph<W>& g) {
  auto flow = edge_flows(g);
  for (auto& w : g.pos)
    if (!weight_traits<W>::positive(w)) return false;
  for (auto& w : g.neg)
    if (!weight_traits<W>::positive(w)) return false;
  W sp{}, sn{};
  for (auto& w : g.pos) sp = sp + w;
  for (auto& w : g.neg) sn = sn + w;
  if (!(sp == sn)) return false;
  for (auto& f : flow)
    if (!weight_traits<W>::positive(f)) return false;
  return true;
}

// Search for a connection graph with prescribed vertex weights. A valid tree
// with at least three vertices always has a leaf lighter than its neighbour;
// peeling it gives a valid tree on the reduced weights, and conversely.
template <class W>
class ConnectionSearch {
 public:
  bool realizable(std::vector<W> x, std::vector<W> y) {
    sort(x);
    sort(y);
    return solve(x, y);
  }

  std::optional<ConnectionGraph<W>> find(const std::vector<W>& x, const std::vector<W>& y) {
    struct Item {
      W w;
      int id;
    };
    std::vector<Item> X, Y;
    for (int i = 0; i < static_cast<int>(x.size()); ++i) X.push_back({x[i], i});
    for (int j = 0; j < static_cast<int>(y.size()); ++j) Y.push_back({y[j], j});
    if (!realizable(x, y)) return std::nullopt;
    ConnectionGraph<W> g{x, y, {}};
    auto weights = [](const std::vector<Item>& v) {
      std::vector<W> w;
      for (auto& it : v) w.push_back(it.w);
      return w;
    };
    while (!(X.size() == 1 && Y.size() == 1)) {
      bool done = false;
      for (int side = 0; side < 2 && !done; ++side) {
        auto& L = side == 0 ? X : Y;
        auto& B = side == 0 ? Y : X;
        for (size_t i = 0; i < L.size() && !done; ++i) {
          for (size_t j = 0; j < B.size() && !done; ++j) {
            if (!(L[i].w < B[j].w)) continue;
            auto L2 = L, B2 = B;
            B2[j].w = B2[j].w - L2[i].w;
            L2.erase(L2.begin() + i);
            bool ok = side == 0 ? realizable(weights(L2), weights(B2)) : realizable(weights(B2), weights(L2));
            if (!ok) continue;
            if (side == 0)
              g.edges.push_back({L[i].id, B[j].id});
            else
              g.edges.push_back({B[j].id, L[i].id});
            L = std::move(L2);
            B = std::move(B2);
            done = true;
          }
        }
      }
      if (!done) throw std::logic_error("connection search: memo and replay disagree");
    }
    g.edges.push_back({X[0].id, Y[0].id});
    return g;
  }

  size_t states() const { return memo_.size(); }

 private:
  std::unordered_map<std::string, bool> memo_;

  static void sort(std::vector<W>& v) { std::sort(v.begin(), v.end()); }

  static std::string key(const std::vector<W>& x, const std::vector<W>& y) {
    std::string k;
    for (auto& w : x) k += weight_traits<W>::key(w) + ";";
    k += "/";
    for (auto& w : y) k += weight_traits<W>::key(w) + ";";
    return k;
  }

  bool solve(const std::vector<W>& x, const std::vector<W>& y) {
    if (x.empty() || y.empty()) return false;
    if (x.size() == 1 && y.size() == 1) return x[0] == y[0];
    auto k = key(x, y);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    bool res = peel(x, y, false) || peel(y, x, true);
    memo_[k] = res;
    return res;
  }

  // Peel an element of `leaves` off a strictly heavier element of `big`.
  bool peel(const std::vector<W>& leaves, const std::vector<W>& big, bool swapped) {
    if (leaves.size() < 2) return false;
    for (size_t i = 0; i < leaves.size(); ++i) {
      if (i > 0 && leaves[i] == leaves[i - 1]) continue;
      for (size_t j = 0; j < big.size(); ++j) {
        if (j > 0 && big[j] == big[j - 1]) continue;
        if (!(leaves[i] < big[j])) continue;
        std::vector<W> l2 = leaves, b2 = big;
        b2[j] = b2[j] - leaves[i];
        l2.erase(l2.begin() + i);
        sort(b2);
        if (swapped ? solve(b2, l2) : solve(l2, b2)) return true;
      }
    }
    return false;
  }
};

// Scalar of r_i / u when all residues lie on the real line through u.
inline std::optional<std::vector<Real3>> collinear_weights(const ResidueTuple& r) {
  const Cyclo* u = nullptr;
  for (auto& x : r)
    if (!x.is_zero()) {
      u = &x;
      break;
    }
  if (!u) return std::nullopt;
  std::vector<Real3> out;
  Cyclo inv = u->inverse();
  for (auto& x : r) {
    Cyclo q = x * inv;
    if (!q.is_real()) return std::nullopt;
    out.push_back(q.as_real3());
  }
  return out;
}

inline void require_minimal_abelian(const Stratum& s, const ResidueTuple& r) {
  if (!is_valid_partition(s)) throw std::invalid_argument("invalid stratum " + s.to_string());
  if (s.k != 1 || s.genus != 0) throw std::invalid_argument("minimal decision needs k=1, genus 0");
  if (s.n_zeros() != 1) throw std::invalid_argument("minimal decision needs exactly one zero");
  for (auto& p : s.poles())
    if (p.order != -1) throw std::invalid_argument("minimal decision needs simple poles only");
  if (!residue_tuple_valid(s, r)) throw std::invalid_argument("residue tuple outside the residue space");
}

// Weights split by sign, keeping the original pole index of each vertex.
struct SignedSplit {
  std::vector<Real3> pos, neg;
  std::vector<int> pos_index, neg_index;
};

inline SignedSplit split_signed(const std::vector<Real3>& w) {
  SignedSplit sp;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (w[i].sign() > 0) {
      sp.pos.push_back(w[i]);
      sp.pos_index.push_back(i);
    } else {
      sp.neg.push_back(-w[i]);
      sp.neg_index.push_back(i);
    }
  }
  return sp;
}

inline Decision decide_minimal_abelian(const Stratum& s, const ResidueTuple& r) {
  require_minimal_abelian(s, r);
  auto w = collinear_weights(r);
  if (!w) return Decision::realizable("prop:g0p-1unzero#noncollinear", json{{"type", "residual-polygon"}});
  auto sp = split_signed(*w);
  ConnectionSearch<Real3> search;
  auto g = search.find(sp.pos, sp.neg);
  if (!g) {
    return Decision::not_realizable("prop:g0p-1unzero#connection",
                                    json{{"type", "exhausted"}, {"states", search.states()}});
  }
  json cert = g->to_json();
  cert["pos_poles"] = sp.pos_index;
  cert["neg_poles"] = sp.neg_index;
  return Decision::realizable("prop:g0p-1unzero#connection", cert);
}

// Integer tuple in canonical form: positives descending, then negatives
// descending (so -1 before -2).
using IntTuple = std::vector<std::int64_t>;

namespace detail {
inline void partitions_into(std::int64_t n, int parts, std::int64_t maxpart, IntTuple& cur,
                            std::vector<IntTuple>& out) {
  if (parts == 0) {
    if (n == 0) out.push_back(cur);
    return;
  }
  if (n < parts) return;
  std::int64_t hi = std::min(maxpart, n - (parts - 1));
  for (std::int64_t v = hi; v >= 1; --v) {
    if (v * parts < n) break;
    cur.push_back(v);
    partitions_into(n - v, parts - 1, v, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

// Partitions of n into exactly `parts` positive parts, each descending.
inline std::vector<IntTuple> integer_partitions(std::int64_t n, int parts) {
  std::vector<IntTuple> out;
  IntTuple cur;
  detail::partitions_into(n, parts, n, cur, out);
  return out;
}

// Forbidden primitive tuples with x-sum at most max_sum, optionally sharded.
inline std::vector<IntTuple> enumerate_forbidden_upto(int s1, int s2, std::int64_t max_sum, int jobs = 1) {
  if (s1 < 1 || s2 < 1) throw std::invalid_argument("s1 and s2 must be positive");
  struct Task {
    IntTuple x, y;
  };
  std::vector<Task> tasks;
  for (std::int64_t n = std::max(s1, s2); n <= max_sum; ++n) {
    auto xs = integer_partitions(n, s1), ys = integer_partitions(n, s2);
    for (auto& x : xs)
      for (auto& y : ys) {
        std::int64_t g = 0;
        for (auto v : x) g = std::gcd(g, v);
        for (auto v : y) g = std::gcd(g, v);
        if (g == 1) tasks.push_back({x, y});
      }
  }
  jobs = std::max(1, jobs);
  std::vector<std::vector<IntTuple>> shard_out(jobs);
  auto work = [&](int shard) {
    ConnectionSearch<std::int64_t> search;
    for (size_t t = shard; t < tasks.size(); t += jobs) {
      if (search.realizable(tasks[t].x, tasks[t].y)) continue;
      IntTuple tup = tasks[t].x;
      for (auto v : tasks[t].y) tup.push_back(-v);
      std::sort(tup.begin() + s1, tup.end(), std::greater<>());
      shard_out[shard].push_back(tup);
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> th;
    for (int j = 0; j < jobs; ++j) th.emplace_back(work, j);
    for (auto& t : th) t.join();
  }
  std::set<IntTuple> all;
  for (auto& v : shard_out) all.insert(v.begin(), v.end());
  return {all.begin(), all.end()};
}

inline std::int64_t forbidden_bound(int s1, int s2) { return static_cast<std::int64_t>(s1) * s2 / 2; }

inline std::vector<IntTuple> enumerate_forbidden(int s1, int s2, int jobs = 1) {
  return enumerate_forbidden_upto(s1, s2, forbidden_bound(s1, s2), jobs);
}

}  // namespace residue_atlas
