// Untying graphs for genus-0 abelian strata with several zeros and simple
// poles: a tree over the zeros whose vertices carry realizable one-zero tuples.
#pragma once

#include "connection.hpp"

#include <map>

namespace residue_atlas {

// Labelled trees on n vertices, decoded from all Prüfer sequences.
inline std::vector<std::vector<std::pair<int, int>>> labelled_trees(int n) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (n <= 0) return out;
  if (n == 1) return {{}};
  if (n == 2) return {{{0, 1}}};
  std::vector<int> seq(n - 2, 0);
  while (true) {
    std::vector<int> deg(n, 1);
    for (int v : seq) ++deg[v];
    std::vector<std::pair<int, int>> edges;
    std::vector<int> d = deg;
    for (int v : seq) {
      int leaf = 0;
      while (d[leaf] != 1) ++leaf;
      edges.push_back({leaf, v});
      --d[leaf];
      --d[v];
    }
    int u = -1, w = -1;
    for (int i = 0; i < n; ++i)
      if (d[i] == 1) (u < 0 ? u : w) = i;
    edges.push_back({u, w});
    out.push_back(edges);
    int i = n - 3;
    while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return out;
}

struct UntyingGraph {
  std::vector<int> zero_orders;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> markings;  // pole indices per vertex
  std::vector<Cyclo> edge_weight;          // half-edge weight at edges[e].first

  json to_json() const {
    json j;
    j["type"] = "untying";
    j["zeros"] = zero_orders;
    j["edges"] = json::array();
    for (auto& e : edges) j["edges"].push_back({e.first, e.second});
    j["markings"] = markings;
    j["half_edge_weights"] = json::array();
    for (auto& w : edge_weight) j["half_edge_weights"].push_back(w.key());
    return j;
  }
};

// Tuple seen by vertex v: its markings, then incident half-edge weights.
inline ResidueTuple untying_vertex_tuple(const UntyingGraph& g, const ResidueTuple& r, int v) {
  ResidueTuple t;
  for (int idx : g.markings[v]) t.push_back(r[idx]);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (g.edges[e].first == v) t.push_back(g.edge_weight[e]);
    if (g.edges[e].second == v) t.push_back(-g.edge_weight[e]);
  }
  return t;
}

// Invariants (i)-(iii) of an untying graph for residues r.
inline bool check_untying_graph(const UntyingGraph& g, const ResidueTuple& r) {
  int n = static_cast<int>(g.zero_orders.size());
  if (static_cast<int>(g.edges.size()) != n - 1 || g.markings.size() != static_cast<size_t>(n)) return false;
  if (g.edge_weight.size() != g.edges.size()) return false;
  std::vector<int> used(r.size(), 0);
  for (auto& m : g.markings)
    for (int idx : m) {
      if (idx < 0 || idx >= static_cast<int>(r.size())) return false;
      ++used[idx];
    }
  for (int u : used)
    if (u != 1) return false;
  std::vector<int> valence(n, 0);
  for (auto& e : g.edges) {
    ++valence[e.first];
    ++valence[e.second];
  }
  for (auto& w : g.edge_weight)
    if (w.is_zero()) return false;
  for (int v = 0; v < n; ++v) {
    if (static_cast<int>(g.markings[v].size()) + valence[v] != g.zero_orders[v] + 2) return false;
    auto t = untying_vertex_tuple(g, r, v);
    Cyclo sum;
    for (auto& x : t) sum += x;
    if (!sum.is_zero()) return false;
    std::vector<int> orders{g.zero_orders[v]};
    for (size_t i = 0; i < t.size(); ++i) orders.push_back(-1);
    Stratum sv(1, 0, orders);
    if (!residue_tuple_valid(sv, t)) return false;
    if (decide_minimal_abelian(sv, t).verdict != Verdict::Realizable) return false;
  }
  // connectivity
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
  for (auto& e : g.edges) comp[find(e.first)] = find(e.second);
  for (int v = 0; v < n; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

class UntyingSearch {
 public:
  UntyingSearch(std::vector<int> zeros, ResidueTuple r) : zeros_(std::move(zeros)), r_(std::move(r)) {}

  std::optional<UntyingGraph> run() {
    int n = static_cast<int>(zeros_.size());
    for (auto& tree : labelled_trees(n)) {
      std::vector<int> valence(n, 0);
      for (auto& e : tree) {
        ++valence[e.first];
        ++valence[e.second];
      }
      std::vector<int> cap(n);
      bool ok = true;
      for (int v = 0; v < n; ++v) {
        cap[v] = zeros_[v] + 2 - valence[v];
        ok = ok && cap[v] >= 0;
      }
      if (!ok) continue;
      tree_ = tree;
      cap_ = cap;
      owner_.assign(r_.size(), -1);
      if (assign(0)) return result_;
    }
    return std::nullopt;
  }

 private:
  std::vector<int> zeros_;
  ResidueTuple r_;
  std::vector<std::pair<int, int>> tree_;
  std::vector<int> cap_, owner_;
  UntyingGraph result_;
  std::map<std::string, bool> vertex_memo_;

  // Equal residues are assigned to non-decreasing vertices to skip duplicates.
  bool assign(size_t i) {
    if (i == r_.size()) return evaluate();
    int lo = 0;
    for (size_t j = 0; j < i; ++j)
      if (r_[j] == r_[i]) lo = std::max(lo, owner_[j]);
    for (int v = lo; v < static_cast<int>(cap_.size()); ++v) {
      if (cap_[v] == 0) continue;
      --cap_[v];
      owner_[i] = v;
      if (assign(i + 1)) return true;
      ++cap_[v];
    }
    owner_[i] = -1;
    return false;
  }

  bool vertex_ok(int a, ResidueTuple t) {
    std::sort(t.begin(), t.end());
    std::string key = std::to_string(a) + ":";
    for (auto& x : t) key += x.key() + ";";
    if (auto it = vertex_memo_.find(key); it != vertex_memo_.end()) return it->second;
    std::vector<int> orders{a};
    for (size_t i = 0; i < t.size(); ++i) orders.push_back(-1);
    bool ok = decide_minimal_abelian(Stratum(1, 0, orders), t).verdict == Verdict::Realizable;
    vertex_memo_[key] = ok;
    return ok;
  }

  bool evaluate() {
    int n = static_cast<int>(zeros_.size());
    UntyingGraph g;
    g.zero_orders = zeros_;
    g.edges = tree_;
    g.markings.assign(n, {});
    for (size_t i = 0; i < r_.size(); ++i) g.markings[owner_[i]].push_back(static_cast<int>(i));
    // Half-edge weight at u on (u, v): minus the marking total on u's side.
    std::vector<std::vector<int>> adj(n);
    for (auto& e : tree_) {
      adj[e.first].push_back(e.second);
      adj[e.second].push_back(e.first);
    }
    for (auto& e : tree_) {
      std::vector<char> side(n, 0);
      std::vector<int> stack{e.first};
      side[e.first] = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x])
          if (!side[y] && !(x == e.first && y == e.second)) {
            side[y] = 1;
            stack.push_back(y);
          }
      }
      Cyclo total;
      for (size_t i = 0; i < r_.size(); ++i)
        if (side[owner_[i]]) total += r_[i];
      if (total.is_zero()) return false;
      g.edge_weight.push_back(-total);
    }
    for (int v = 0; v < n; ++v)
      if (!vertex_ok(zeros_[v], untying_vertex_tuple(g, r_, v))) return false;
    result_ = g;
    return true;
  }
};

inline Decision decide_multizero_abelian(const Stratum& s, const ResidueTuple& r) {
  if (!is_valid_partition(s)) throw std::invalid_argument("invalid stratum " + s.to_string());
  if (s.k != 1 || s.genus != 0) throw std::invalid_argument("multi-zero decision needs k=1, genus 0");
  for (auto& p : s.poles())
    if (p.order != -1) throw std::invalid_argument("multi-zero decision needs simple poles only");
  if (!residue_tuple_valid(s, r)) throw std::invalid_argument("residue tuple outside the residue space");
  auto zeros = s.zeros();
  if (zeros.size() <= 1) return decide_minimal_abelian(s, r);
  UntyingSearch search(zeros, r);
  if (auto g = search.run()) return Decision::realizable("prop:g0p-1plusieurszero#untying", g->to_json());
  return Decision::not_realizable("prop:g0p-1plusieurszero#untying", json{{"type", "exhausted"}});
}

}  // namespace residue_atlas
