// Disjoint cylinders with prescribed circumferences in holomorphic abelian
// strata, via enriched graph representations.
#pragma once

#include "untying.hpp"

namespace residue_atlas {

struct CylinderGraph {
  std::vector<std::vector<int>> families;     // zero orders per vertex
  std::vector<int> vertex_genus;
  std::vector<std::pair<int, int>> edges;     // (tail, head); tail sees +lambda
  std::vector<int> edge_lambda;               // index into lambda

  json to_json() const {
    json j;
    j["type"] = "enriched";
    j["families"] = families;
    j["genus"] = vertex_genus;
    j["edges"] = json::array();
    for (size_t e = 0; e < edges.size(); ++e)
      j["edges"].push_back({edges[e].first, edges[e].second, edge_lambda[e]});
    return j;
  }
};

namespace detail {

// Set partitions of items into exactly b labelled non-empty blocks.
inline void labelled_blocks(const std::vector<int>& items, int b, std::vector<int>& owner, size_t i,
                            const std::function<bool()>& visit) {
  if (i == items.size()) {
    std::vector<char> used(b, 0);
    for (int o : owner) used[o] = 1;
    for (char u : used)
      if (!u) return;
    visit();
    return;
  }
  for (int v = 0; v < b; ++v) {
    owner[i] = v;
    labelled_blocks(items, b, owner, i + 1, visit);
  }
}

inline bool is_bridgeless_connected(int V, const std::vector<std::pair<int, int>>& edges) {
  auto connected_without = [&](int skip) {
    std::vector<int> comp(V);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> f = [&](int x) { return comp[x] == x ? x : comp[x] = f(comp[x]); };
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (e != skip) comp[f(edges[e].first)] = f(edges[e].second);
    for (int v = 0; v < V; ++v)
      if (f(v) != f(0)) return false;
    return true;
  };
  if (!connected_without(-1)) return false;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e)
    if (edges[e].first != edges[e].second && !connected_without(e)) return false;
  return true;
}

}  // namespace detail

class CylinderSearch {
 public:
  CylinderSearch(Stratum s, ResidueTuple lambda) : s_(std::move(s)), lambda_(std::move(lambda)) {}

  std::optional<CylinderGraph> run() {
    auto zeros = s_.zeros();
    int n = static_cast<int>(zeros.size());
    int t = static_cast<int>(lambda_.size());
    for (int V = 1; V <= n; ++V) {
      std::vector<std::pair<int, int>> slots;
      for (int a = 0; a < V; ++a)
        for (int b = a; b < V; ++b) slots.push_back({a, b});
      std::vector<int> pick(t, 0);
      // multisets of t slots
      std::function<bool(int, int)> choose = [&](int i, int from) -> bool {
        if (i == t) return try_graph(zeros, V, slots, pick);
        for (int sidx = from; sidx < static_cast<int>(slots.size()); ++sidx) {
          pick[i] = sidx;
          if (choose(i + 1, sidx)) return true;
        }
        return false;
      };
      if (t > 0 && choose(0, 0)) return result_;
    }
    return std::nullopt;
  }

 private:
  Stratum s_;
  ResidueTuple lambda_;
  CylinderGraph result_;
  std::map<std::string, bool> vertex_memo_;

  bool try_graph(const std::vector<int>& zeros, int V, const std::vector<std::pair<int, int>>& slots,
                 const std::vector<int>& pick) {
    std::vector<std::pair<int, int>> edges;
    for (int p : pick) edges.push_back(slots[p]);
    if (!detail::is_bridgeless_connected(V, edges)) return false;
    std::vector<int> valence(V, 0);
    for (auto& e : edges) {
      ++valence[e.first];
      ++valence[e.second];
    }
    std::vector<int> owner(zeros.size(), 0);
    bool ok = false;
    detail::labelled_blocks(zeros, V, owner, 0, [&]() {
      if (ok) return true;
      std::vector<std::vector<int>> fam(V);
      std::vector<int> genus(V);
      for (size_t i = 0; i < zeros.size(); ++i) fam[owner[i]].push_back(zeros[i]);
      for (int v = 0; v < V; ++v) {
        int sigma = std::accumulate(fam[v].begin(), fam[v].end(), 0);
        int twice = sigma - valence[v] + 2;
        if (twice < 0 || twice % 2) return false;
        genus[v] = twice / 2;
      }
      ok = assign_lambdas(fam, genus, edges);
      return ok;
    });
    return ok;
  }

  bool assign_lambdas(const std::vector<std::vector<int>>& fam, const std::vector<int>& genus,
                      const std::vector<std::pair<int, int>>& edges) {
    int t = static_cast<int>(edges.size());
    std::vector<int> perm(t);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (int mask = 0; mask < (1 << t); ++mask) {
        std::vector<std::pair<int, int>> oriented = edges;
        for (int e = 0; e < t; ++e)
          if (mask >> e & 1) std::swap(oriented[e].first, oriented[e].second);
        bool good = true;
        for (int v = 0; v < static_cast<int>(fam.size()) && good; ++v) {
          ResidueTuple res;
          for (int e = 0; e < t; ++e) {
            if (oriented[e].first == v) res.push_back(lambda_[perm[e]]);
            if (oriented[e].second == v) res.push_back(-lambda_[perm[e]]);
          }
          good = vertex_realizable(fam[v], genus[v], res);
        }
        if (good) {
          result_ = {fam, genus, oriented, perm};
          return true;
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  }

  bool vertex_realizable(const std::vector<int>& fam, int g, ResidueTuple res) {
    if (res.size() < 2) return false;
    if (g >= 1) return true;
    std::sort(res.begin(), res.end());
    std::string key;
    for (int a : fam) key += std::to_string(a) + ",";
    key += "|";
    for (auto& x : res) key += x.key() + ";";
    if (auto it = vertex_memo_.find(key); it != vertex_memo_.end()) return it->second;
    std::vector<int> orders = fam;
    for (size_t i = 0; i < res.size(); ++i) orders.push_back(-1);
    Stratum sv(1, 0, orders);
    bool ok = false;
    if (residue_tuple_valid(sv, res)) {
      ok = (fam.size() == 1 ? decide_minimal_abelian(sv, res) : decide_multizero_abelian(sv, res)).verdict ==
           Verdict::Realizable;
    }
    vertex_memo_[key] = ok;
    return ok;
  }
};

// With use_bound=false the maximal-cylinder bound is not applied and the
// graph search alone decides.
inline Decision decide_cylinders(const Stratum& s, const ResidueTuple& lambda, bool use_bound = true) {
  if (!is_valid_partition(s)) throw std::invalid_argument("invalid stratum " + s.to_string());
  if (s.k != 1) throw std::invalid_argument("cylinder decision needs k=1");
  if (s.genus < 1) throw std::invalid_argument("cylinder decision needs genus >= 1");
  for (int m : s.orders)
    if (m < 0) throw std::invalid_argument("cylinder decision needs a holomorphic stratum");
  for (auto& l : lambda)
    if (l.is_zero()) throw std::invalid_argument("circumferences must be nonzero");
  if (lambda.empty()) throw std::invalid_argument("at least one circumference is required");
  int t = static_cast<int>(lambda.size());
  if (use_bound && t > s.genus + s.n_zeros() - 1)
    return Decision::not_realizable("prop:cylindres#bound", json{{"t", t}, {"max", s.genus + s.n_zeros() - 1}});
  CylinderSearch search(s, lambda);
  if (auto g = search.run()) return Decision::realizable("prop:cylindresgraphe", g->to_json());
  return Decision::not_realizable("prop:cylindresgraphe", json{{"type", "exhausted"}});
}

}  // namespace residue_atlas
