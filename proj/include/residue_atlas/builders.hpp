// Polar parts and gluing recipes that produce flat-surface witnesses, plus
// the stratum-level surgeries (zero breaking, handle sewing).
#pragma once

#include "classifier.hpp"
#include "surface.hpp"

namespace residue_atlas {

// Collects pieces and identifications; edge ids match those of the glued
// FlatSurface.
class NetBuilder {
 public:
  explicit NetBuilder(int k) : k_(k) {}

  int add(Piece p) {
    offsets_.push_back(total_);
    total_ += p.size();
    pieces_.push_back(std::move(p));
    return static_cast<int>(pieces_.size()) - 1;
  }
  int edge(int piece, int i) const { return offsets_[piece] + i; }
  Cyclo vec(int id) const {
    int p = static_cast<int>(std::upper_bound(offsets_.begin(), offsets_.end(), id) - offsets_.begin()) - 1;
    return pieces_[p].vec(id - offsets_[p]);
  }
  void glue(int a, int b, int t = 0) { ids_.push_back({a, b, t}); }
  // Translation gluing of two segments with opposite vectors.
  void join(int a, int b) {
    if (vec(b) != -vec(a)) throw std::logic_error("join: segments are not opposite");
    glue(a, b, 0);
  }
  int k() const { return k_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  FlatSurface finish() const { return residue_atlas::glue(k_, pieces_, ids_); }

 private:
  int k_;
  int total_ = 0;
  std::vector<int> offsets_;
  std::vector<Piece> pieces_;
  std::vector<Identification> ids_;
};

namespace detail {

struct Domain {
  int piece = -1;
  int in_ray = -1, out_ray = -1;
  std::vector<int> segs;  // in chain order
};

// Half-infinite piece bounded by `chain` (incoming ray, segments, outgoing
// ray), closed through the corners of a large box. Built in a local frame
// and mapped by z -> u z.
inline Domain add_domain(NetBuilder& nb, const std::vector<Cyclo>& chain, const Cyclo& u, const Rational& M,
                         int label, const std::string& kind) {
  const int m = static_cast<int>(chain.size()) - 1;  // chain edges
  double aE = std::arg(chain.back().to_complex()), aS = std::arg(chain.front().to_complex());
  double sweep = aS - aE;
  while (sweep <= 1e-12) sweep += 2 * std::numbers::pi;
  std::vector<std::pair<double, Cyclo>> corners;
  const std::array<std::pair<int, int>, 4> sq = {{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
  for (auto [sx, sy] : sq) {
    Cyclo c = Cyclo::gaussian(sx * M, sy * M);
    double off = std::arg(c.to_complex()) - aE;
    while (off <= 0) off += 2 * std::numbers::pi;
    while (off > 2 * std::numbers::pi) off -= 2 * std::numbers::pi;
    if (off < sweep) corners.push_back({off, c});
  }
  std::sort(corners.begin(), corners.end(), [](auto& a, auto& b) { return a.first < b.first; });
  Piece p;
  p.kind = kind;
  for (auto& c : chain) p.vertices.push_back(c * u);
  for (auto& [off, c] : corners) p.vertices.push_back(c * u);
  for (int i = 0; i < m; ++i) p.edges.push_back(i == 0 || i == m - 1 ? EdgeKind::Ray : EdgeKind::Segment);
  for (size_t i = 0; i <= corners.size(); ++i) p.edges.push_back(EdgeKind::Infinity);
  p.pole.assign(p.edges.size(), -1);
  for (size_t i = m; i < p.edges.size(); ++i) p.pole[i] = label;
  Domain d;
  d.piece = nb.add(std::move(p));
  d.in_ray = nb.edge(d.piece, 0);
  d.out_ray = nb.edge(d.piece, m - 1);
  for (int i = 1; i < m - 1; ++i) d.segs.push_back(nb.edge(d.piece, i));
  return d;
}

inline std::vector<Cyclo> path_points(const std::vector<Cyclo>& v) {
  std::vector<Cyclo> pts{Cyclo(0)};
  for (auto& x : v) pts.push_back(pts.back() + x);
  return pts;
}

inline Cyclo sum(const std::vector<Cyclo>& v) {
  Cyclo s;
  for (auto& x : v) s += x;
  return s;
}

inline Rational ceil_rational(double x) { return Rational(static_cast<long>(std::ceil(x))); }

}  // namespace detail

enum class PolarKind { AbelianOrder1, AbelianOrderB, KDivisible, KNonDivisible };

inline const char* to_string(PolarKind k) {
  switch (k) {
    case PolarKind::AbelianOrder1: return "abelian-order-1";
    case PolarKind::AbelianOrderB: return "abelian-order-b";
    case PolarKind::KDivisible: return "k-divisible";
    case PolarKind::KNonDivisible: return "k-nondivisible";
  }
  return "?";
}

// Segment edges of an emitted part: upper[i] carries v_i (vector v_i),
// lower[j] carries w_j (vector -w_j in its piece).
struct PartEdges {
  std::vector<int> upper, lower;
};

// A pole neighbourhood of order `order` (pole order -order). For k | order the
// part is the abelian part of order order/k; otherwise a special domain
// closed up by a rotation.
struct PolarPart {
  int k = 1;
  int order = 1;
  int type = 0;
  std::vector<Cyclo> v, w;
  PolarKind kind = PolarKind::AbelianOrder1;
  Cyclo frame{1};
  Cyclo residue;

  bool trivial() const { return detail::sum(v) == detail::sum(w); }

  PartEdges emit(NetBuilder& nb, int label) const {
    std::vector<Cyclo> vl, wl;
    Cyclo inv = frame.inverse();
    for (auto& x : v) vl.push_back(x * inv);
    for (auto& x : w) wl.push_back(x * inv);
    double S = 1;
    for (auto& x : vl) S += std::abs(x.to_complex().real()) + std::abs(x.to_complex().imag());
    for (auto& x : wl) S += std::abs(x.to_complex().real()) + std::abs(x.to_complex().imag());
    Rational L = detail::ceil_rational(2 * S + 2), M = 4 * L + 4;
    const Cyclo Lc(L);
    PartEdges out;
    auto upper_chain = [&](const Cyclo& tail_dir) {
      auto pts = detail::path_points(vl);
      std::vector<Cyclo> chain{-Lc};
      chain.insert(chain.end(), pts.begin(), pts.end());
      chain.push_back(pts.back() + Lc * tail_dir);
      return chain;
    };
    auto lower_chain = [&](const Cyclo& head_dir) {
      auto pts = detail::path_points(wl);
      std::vector<Cyclo> chain{pts.back() + Lc * head_dir};
      chain.insert(chain.end(), pts.rbegin(), pts.rend());
      chain.push_back(-Lc);
      return chain;
    };
    auto add = [&](const std::vector<Cyclo>& chain, const std::string& kind) {
      return detail::add_domain(nb, chain, frame, M, label, kind);
    };
    auto take_lower = [&](const detail::Domain& d) {
      // segments appear as w_l, ..., w_1 along the piece
      out.lower.assign(d.segs.rbegin(), d.segs.rend());
    };
    // open domains made of two empty half-planes glued along one side
    struct Open {
      int upper, lower;
    };
    auto open_left = [&]() {
      auto p = add({-Lc, Cyclo(0), Lc}, "open-left+");
      auto m = add({Lc, Cyclo(0), -Lc}, "open-left-");
      nb.glue(p.out_ray, m.in_ray);
      return Open{p.in_ray, m.out_ray};
    };
    auto open_right = [&]() {
      auto p = add({-Lc, Cyclo(0), Lc}, "open-right+");
      auto m = add({Lc, Cyclo(0), -Lc}, "open-right-");
      nb.glue(p.in_ray, m.out_ray);
      return Open{p.out_ray, m.in_ray};
    };

    int ell = order / k;
    if (kind == PolarKind::AbelianOrder1 || (kind == PolarKind::KDivisible && ell == 1)) {
      if (!vl.empty()) {
        Cyclo V = detail::sum(vl), l = Cyclo::i() * V;
        Rational h = detail::ceil_rational(L.get_d() / std::abs(V.to_complex())) + 1;
        auto pts = detail::path_points(vl);
        std::vector<Cyclo> chain{l * Cyclo(h)};
        chain.insert(chain.end(), pts.begin(), pts.end());
        chain.push_back(V + l * Cyclo(h));
        auto d = add(chain, "half-cylinder");
        nb.glue(d.in_ray, d.out_ray);
        out.upper = d.segs;
      } else {
        Cyclo W = detail::sum(wl), l = -Cyclo::i() * W;
        Rational h = detail::ceil_rational(L.get_d() / std::abs(W.to_complex())) + 1;
        auto pts = detail::path_points(wl);
        std::vector<Cyclo> chain{W + l * Cyclo(h)};
        chain.insert(chain.end(), pts.rbegin(), pts.rend());
        chain.push_back(l * Cyclo(h));
        auto d = add(chain, "half-cylinder");
        nb.glue(d.in_ray, d.out_ray);
        take_lower(d);
      }
      return out;
    }
    if (kind == PolarKind::KNonDivisible) {
      int rbar = order % k;
      Cyclo z = *Cyclo::root_of_unity(k, rbar);
      std::vector<Open> opens;
      for (int i = 0; i + 1 < ell; ++i) opens.push_back(open_left());
      if (!vl.empty()) {
        auto sp = add(upper_chain(-z.inverse()), "special+");
        out.upper = sp.segs;
        int prev = sp.in_ray;
        for (auto& o : opens) {
          nb.glue(prev, o.lower);
          prev = o.upper;
        }
        nb.glue(prev, sp.out_ray, (k - rbar) % k);
      } else {
        auto sm = add(lower_chain(-z), "special-");
        take_lower(sm);
        int prev = sm.out_ray;
        for (auto& o : opens) {
          nb.glue(prev, o.upper);
          prev = o.lower;
        }
        nb.glue(prev, sm.in_ray, rbar);
      }
      return out;
    }
    // order ell >= 2: tau-1 open-left and ell-1-tau open-right domains
    auto dp = add(upper_chain(Cyclo(1)), "positive");
    auto dm = add(lower_chain(Cyclo(1)), "negative");
    out.upper = dp.segs;
    take_lower(dm);
    std::vector<Open> lefts, rights;
    for (int i = 0; i + 1 < type; ++i) lefts.push_back(open_left());
    for (int i = 0; i < ell - 1 - type; ++i) rights.push_back(open_right());
    int prev = dm.out_ray;
    for (auto& o : lefts) {
      nb.glue(prev, o.upper);
      prev = o.lower;
    }
    nb.glue(prev, dp.in_ray);
    prev = dm.in_ray;
    for (auto& o : rights) {
      nb.glue(prev, o.upper);
      prev = o.lower;
    }
    nb.glue(prev, dp.out_ray);
    return out;
  }

  json to_json() const {
    json j{{"k", k}, {"order", order}, {"type", type}, {"kind", to_string(kind)}};
    j["v"] = tuple_to_json(v);
    j["w"] = tuple_to_json(w);
    j["residue"] = scalar_to_json(residue);
    j["trivial"] = trivial();
    return j;
  }
};

// Builds and validates a polar part. Without an explicit frame, the part is
// laid out along the first direction (among the residue, v_1, w_1 and their
// rotations by multiples of pi/6) for which every piece is a simple polygon.
inline PolarPart make_polar_part(int order, int tau, std::vector<Cyclo> v, std::vector<Cyclo> w, int k,
                                 std::optional<Cyclo> frame = std::nullopt) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (order < 1) throw std::invalid_argument("pole order must be positive");
  for (auto& x : v)
    if (x.is_zero()) throw surface_error("zero vector in a polar part");
  for (auto& x : w)
    if (x.is_zero()) throw surface_error("zero vector in a polar part");
  PolarPart pp;
  pp.k = k;
  pp.order = order;
  pp.v = std::move(v);
  pp.w = std::move(w);
  Cyclo diff = detail::sum(pp.v) - detail::sum(pp.w);
  if (order % k == 0) {
    int ell = order / k;
    if (ell == 1) {
      pp.kind = k == 1 ? PolarKind::AbelianOrder1 : PolarKind::KDivisible;
      if (pp.v.empty() == pp.w.empty()) throw surface_error("an order-one part takes either upper or lower vectors");
      if (diff.is_zero()) throw surface_error("an order-one part needs a nonzero residue");
      pp.type = 0;
    } else {
      pp.kind = k == 1 ? PolarKind::AbelianOrderB : PolarKind::KDivisible;
      if (tau < 1 || tau > ell - 1) throw surface_error("type out of range");
      pp.type = tau;
    }
    pp.residue = diff.pow(k);
  } else {
    pp.kind = PolarKind::KNonDivisible;
    if (order < k) throw surface_error("order below k is a zero, not a pole");
    if (pp.v.empty() == pp.w.empty()) throw surface_error("a non-divisible part takes either upper or lower vectors");
    if (!Cyclo::root_of_unity(k, 1)) throw unsupported_construction("rotation by 2 pi / k is not exact for this k");
    pp.type = 0;
    pp.residue = Cyclo(0);
  }
  std::vector<Cyclo> frames;
  if (frame) {
    if (frame->is_zero()) throw std::invalid_argument("zero frame");
    frames.push_back(*frame);
  } else {
    std::vector<Cyclo> base;
    if (!diff.is_zero()) base.push_back(diff);
    if (!pp.v.empty()) base.push_back(pp.v[0]);
    if (!pp.w.empty()) base.push_back(pp.w[0]);
    base.push_back(Cyclo(1));
    for (auto& b : base)
      for (int j : {0, 1, 11, 2, 10, 3, 9, 4, 8, 5, 7, 6}) frames.push_back(b * Cyclo::zeta_pow(j));
  }
  std::string last = "no frame";
  for (auto& f : frames) {
    pp.frame = f;
    NetBuilder scratch(k);
    try {
      pp.emit(scratch, 0);
      for (auto& p : scratch.pieces()) check_piece(p);
      return pp;
    } catch (const surface_error& e) {
      last = e.what();
    }
  }
  throw surface_error("polar part broken line self-intersects (" + last + ")");
}

// ---------------------------------------------------------------- builders

namespace detail {

inline double arg_of(const Cyclo& x) { return std::arg(x.to_complex()); }

// Exposed upper segment `e` with vector x: thread trivial parts (x; x) of the
// given orders through it; returns the new exposed upper segment.
inline int thread_trivial_upper(NetBuilder& nb, int e, const Cyclo& x, const std::vector<std::pair<int, int>>& zs) {
  for (auto [order, label] : zs) {
    auto part = make_polar_part(order, 1, {x}, {x}, nb.k());
    auto pe = part.emit(nb, label);
    nb.join(e, pe.lower[0]);
    e = pe.upper[0];
  }
  return e;
}

// Exposed lower segment `e` with vector -x.
inline int thread_trivial_lower(NetBuilder& nb, int e, const Cyclo& x, const std::vector<std::pair<int, int>>& zs) {
  for (auto [order, label] : zs) {
    auto part = make_polar_part(order, 1, {x}, {x}, nb.k());
    auto pe = part.emit(nb, label);
    nb.join(e, pe.upper[0]);
    e = pe.lower[0];
  }
  return e;
}

// Order-one parts along a connection graph: vertex residues are the signed
// weights times u, segments are the edge flows.
inline void emit_connection_graph(NetBuilder& nb, const ConnectionGraph<Real3>& g, const Cyclo& u,
                                  const std::vector<int>& pos_label, const std::vector<int>& neg_label) {
  if (!check_connection_graph(g)) throw invalid_graph("not a connection graph");
  auto flow = edge_flows(g);
  int P = static_cast<int>(g.pos.size()), N = static_cast<int>(g.neg.size());
  std::vector<std::vector<int>> pe(P), ne(N);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    pe[g.edges[e].first].push_back(e);
    ne[g.edges[e].second].push_back(e);
  }
  std::vector<int> up_edge(g.edges.size()), low_edge(g.edges.size());
  for (int i = 0; i < P; ++i) {
    std::vector<Cyclo> v;
    for (int e : pe[i]) v.push_back(Cyclo::from_real3(flow[e]) * u);
    auto part = make_polar_part(1, 0, v, {}, nb.k(), u);
    auto ed = part.emit(nb, pos_label[i]);
    for (size_t j = 0; j < pe[i].size(); ++j) up_edge[pe[i][j]] = ed.upper[j];
  }
  for (int i = 0; i < N; ++i) {
    std::vector<Cyclo> w;
    for (int e : ne[i]) w.push_back(Cyclo::from_real3(flow[e]) * u);
    auto part = make_polar_part(1, 0, {}, w, nb.k(), u);
    auto ed = part.emit(nb, neg_label[i]);
    for (size_t j = 0; j < ne[i].size(); ++j) low_edge[ne[i][j]] = ed.lower[j];
  }
  for (size_t e = 0; e < g.edges.size(); ++e) nb.join(up_edge[e], low_edge[e]);
}

inline std::vector<int> iota_labels(int from, int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), from);
  return v;
}

}  // namespace detail

// Genus-0 surface with one zero and simple poles, one half-cylinder per
// vertex. Positive vertices get labels 0..P-1, negative ones P..P+N-1 unless
// given.
inline FlatSurface build_from_connection_graph(const ConnectionGraph<Real3>& g, const Cyclo& u = Cyclo(1),
                                               std::vector<int> pos_label = {}, std::vector<int> neg_label = {}) {
  int P = static_cast<int>(g.pos.size()), N = static_cast<int>(g.neg.size());
  if (pos_label.empty()) pos_label = detail::iota_labels(0, P);
  if (neg_label.empty()) neg_label = detail::iota_labels(P, N);
  NetBuilder nb(1);
  detail::emit_connection_graph(nb, g, u, pos_label, neg_label);
  return nb.finish();
}

inline FlatSurface build_from_connection_graph(const ConnectionGraph<std::int64_t>& g) {
  ConnectionGraph<Real3> h;
  for (auto w : g.pos) h.pos.push_back(Real3(Rational(static_cast<long>(w))));
  for (auto w : g.neg) h.neg.push_back(Real3(Rational(static_cast<long>(w))));
  h.edges = g.edges;
  return build_from_connection_graph(h);
}

namespace detail {

inline void one_zero_abelian(NetBuilder& nb, const Stratum& s, const ResidueTuple& r) {
  auto poles = s.poles();
  const int n = static_cast<int>(poles.size());
  std::vector<int> nz, zero;
  for (int j = 0; j < n; ++j) (r[j].is_zero() ? zero : nz).push_back(j);
  auto b = [&](int j) { return -poles[j].order; };
  auto part_for = [&](int j, std::vector<Cyclo> v, std::vector<Cyclo> w, std::optional<Cyclo> frame = std::nullopt) {
    return make_polar_part(b(j), b(j) >= 2 ? 1 : 0, std::move(v), std::move(w), 1, frame);
  };
  if (nz.empty()) {
    if (n != 1) throw unsupported_construction("zero residues at several poles with one zero");
    auto pe = part_for(0, {Cyclo(1)}, {Cyclo(1)}).emit(nb, 0);
    nb.join(pe.upper[0], pe.lower[0]);
    return;
  }
  ResidueTuple nzr;
  for (int j : nz) nzr.push_back(r[j]);
  auto w = collinear_weights(nzr);
  if (!w) {
    // residual polygon with edges -r_j in counter-clockwise order
    std::vector<int> ord = nz;
    std::stable_sort(ord.begin(), ord.end(), [&](int a, int c) { return arg_of(-r[a]) < arg_of(-r[c]); });
    std::vector<Cyclo> pts{Cyclo(0)};
    for (size_t i = 0; i + 1 < ord.size(); ++i) pts.push_back(pts.back() - r[ord[i]]);
    int poly = nb.add(polygon_piece(pts, "residual-polygon"));
    std::vector<std::pair<int, int>> zs;
    for (int j : zero) zs.push_back({b(j), j});
    for (size_t i = 0; i < ord.size(); ++i) {
      int j = ord[i];
      auto pe = part_for(j, {r[j]}, {}).emit(nb, j);
      int e = pe.upper[0];
      if (i == 0) e = thread_trivial_upper(nb, e, r[j], zs);
      nb.join(e, nb.edge(poly, static_cast<int>(i)));
    }
    return;
  }
  const Cyclo u = nzr[0];
  std::vector<Real3> wt(n);
  for (size_t i = 0; i < nz.size(); ++i) wt[nz[i]] = (*w)[i];
  if (b(0) == 1) {
    // simple poles only
    std::vector<Real3> all;
    for (int j = 0; j < n; ++j) all.push_back(wt[j]);
    auto sp = split_signed(all);
    ConnectionSearch<Real3> search;
    auto g = search.find(sp.pos, sp.neg);
    if (!g) throw unsupported_construction("collinear residues admit no connection graph");
    emit_connection_graph(nb, *g, u, sp.pos_index, sp.neg_index);
    return;
  }
  // degenerate polygon: pole 0 (order >= 2) absorbs the broken line
  std::vector<Cyclo> up, low;
  std::vector<int> up_of, low_of;
  for (int j : nz) {
    if (j == 0) continue;
    if (wt[j].sign() < 0) {
      up.push_back(-r[j]);
      up_of.push_back(j);
    } else {
      low.push_back(r[j]);
      low_of.push_back(j);
    }
  }
  auto p1 = part_for(0, up, low, u).emit(nb, 0);
  int host = -1;
  for (int j : nz)
    if (j != 0) {
      host = j;
      break;
    }
  std::vector<std::pair<int, int>> zs;
  for (int j : zero)
    if (j != 0) zs.push_back({b(j), j});
  for (size_t i = 0; i < up_of.size(); ++i) {
    int j = up_of[i];
    auto pe = part_for(j, {}, {-r[j]}).emit(nb, j);
    int e = pe.lower[0];
    if (j == host) e = thread_trivial_lower(nb, e, -r[j], zs);
    nb.join(e, p1.upper[i]);
  }
  for (size_t i = 0; i < low_of.size(); ++i) {
    int j = low_of[i];
    auto pe = part_for(j, {r[j]}, {}).emit(nb, j);
    int e = pe.upper[0];
    if (j == host) e = thread_trivial_upper(nb, e, r[j], zs);
    nb.join(e, p1.lower[i]);
  }
}

inline Cyclo preferred_root(const Cyclo& R, int k) {
  auto roots = kth_roots(R, k);
  if (roots.empty()) throw unsupported_construction("a k-residue has no k-th root in Q(zeta_12)");
  return *std::max_element(roots.begin(), roots.end(), [](const Cyclo& a, const Cyclo& b) {
    cplx x = a.to_complex(), y = b.to_complex();
    if (std::fabs(x.real() - y.real()) > 1e-12) return x.real() < y.real();
    return x.imag() < y.imag();
  });
}

inline void one_zero_k(NetBuilder& nb, const Stratum& s, const ResidueTuple& R) {
  const int k = s.k;
  auto poles = s.poles();
  std::vector<int> nd, res;  // labels
  for (int j = 0; j < static_cast<int>(poles.size()); ++j)
    (poles[j].kind == PoleKind::NonDivisible ? nd : res).push_back(j);
  if (nd.empty()) throw unsupported_construction("one zero and only divisible poles: not primitive");
  // residue tuple index of each residue pole label
  std::map<int, int> slot;
  for (size_t i = 0; i < res.size(); ++i) slot[res[i]] = static_cast<int>(i);
  std::vector<int> nz, zero;
  for (int j : res) (R[slot[j]].is_zero() ? zero : nz).push_back(j);
  auto ord = [&](int j) { return -poles[j].order; };

  if (nz.empty()) {
    if (nd.size() < 2) throw unsupported_construction("zero tuple with a single non-divisible pole");
    std::vector<Cyclo> ones(nd.size() - 1, Cyclo(1));
    auto p1 = make_polar_part(ord(nd[0]), 0, {}, ones, k).emit(nb, nd[0]);
    for (size_t i = 1; i < nd.size(); ++i) {
      auto pe = make_polar_part(ord(nd[i]), 0, {Cyclo(1)}, {}, k).emit(nb, nd[i]);
      int e = pe.upper[0];
      if (i == 1) {
        std::vector<std::pair<int, int>> zs;
        for (int j : zero) zs.push_back({ord(j), j});
        e = thread_trivial_upper(nb, e, Cyclo(1), zs);
      }
      nb.join(e, p1.lower[i - 1]);
    }
    return;
  }
  std::map<int, Cyclo> root;
  for (int j : nz) root[j] = preferred_root(R[slot[j]], k);
  struct Item {
    Cyclo x;
    int owner;  // label, or -1 for a unit segment of another non-divisible pole
  };
  std::vector<Item> items;
  for (size_t i = 1; i < nd.size(); ++i) items.push_back({Cyclo(1), static_cast<int>(i)});
  for (int j : nz) items.push_back({root[j], -1 - j});
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return arg_of(a.x) < arg_of(b.x); });
  std::vector<Cyclo> low;
  for (auto& it : items) low.push_back(it.x);
  auto p1 = make_polar_part(ord(nd[0]), 0, {}, low, k).emit(nb, nd[0]);
  std::vector<std::pair<int, int>> zs;
  for (int j : zero) zs.push_back({ord(j), j});
  for (size_t i = 0; i < items.size(); ++i) {
    int e;
    if (items[i].owner >= 0) {
      int label = nd[items[i].owner];
      e = make_polar_part(ord(label), 0, {Cyclo(1)}, {}, k).emit(nb, label).upper[0];
    } else {
      int j = -1 - items[i].owner;
      e = make_polar_part(ord(j), ord(j) > k ? 1 : 0, {root[j]}, {}, k).emit(nb, j).upper[0];
      if (j == nz[0]) e = thread_trivial_upper(nb, e, root[j], zs);
    }
    nb.join(e, p1.lower[i]);
  }
}

}  // namespace detail

// Genus-0 surface with a single zero realizing r. Marked points of order 0
// in the stratum are ignored (they can sit anywhere).
inline FlatSurface build_one_zero_genus0(const Stratum& s, const ResidueTuple& r) {
  if (!is_valid_partition(s)) throw invalid_stratum("invalid stratum: " + s.to_string());
  if (s.genus != 0) throw unsupported_construction("one-zero construction is for genus 0");
  int nonzero = 0;
  for (int z : s.zeros()) nonzero += z != 0;
  if (nonzero > 1) throw unsupported_construction("stratum has more than one zero");
  if (!residue_tuple_valid(s, r)) throw std::invalid_argument("residue tuple outside the residue space");
  NetBuilder nb(s.k);
  if (s.k == 1)
    detail::one_zero_abelian(nb, s, r);
  else
    detail::one_zero_k(nb, s, r);
  auto S = nb.finish();
  auto rep = verify_surface(S, s, r);
  if (!rep.ok) throw std::logic_error("construction failed verification: " + rep.details.dump());
  return S;
}

// Polygon r_1..r_s, t_1, t_2 with t_2 = zeta t_1: the first `split` roots on one
// side of the rotated pair, the rest on the other. Half-cylinders on the root
// edges, t_1 glued to t_2 by rotation. The rotation index and the order of the
// roots along each side are searched.
inline FlatSurface construct_c1_c2(int k, int a1, int a2, const std::vector<Cyclo>& roots, int split) {
  const int s = static_cast<int>(roots.size());
  if (k < 2) throw std::invalid_argument("construction needs k >= 2");
  if (split < 0 || split > s) throw std::invalid_argument("split out of range");
  if (a1 + a2 - k * s != -2 * k) throw std::invalid_argument("orders do not sum to -2k");
  if (!Cyclo::root_of_unity(k, 1)) throw unsupported_construction("rotation by 2 pi / k is not exact for this k");
  for (auto& x : roots)
    if (x.is_zero()) throw std::invalid_argument("zero root");
  std::vector<int> orders{a1, a2};
  for (int i = 0; i < s; ++i) orders.push_back(-k);
  Stratum st(k, 0, orders);
  ResidueTuple R;
  for (auto& x : roots) R.push_back(x.pow(k));

  std::vector<std::vector<int>> layouts;
  std::vector<int> given(s);
  std::iota(given.begin(), given.end(), 0);
  layouts.push_back(given);
  for (int dir : {1, -1}) {
    auto l = given;
    auto cmp = [&](int a, int b) { return dir * detail::arg_of(roots[a]) < dir * detail::arg_of(roots[b]); };
    std::stable_sort(l.begin(), l.begin() + split, cmp);
    std::stable_sort(l.begin() + split, l.end(), cmp);
    layouts.push_back(l);
  }
  for (auto& lay : layouts) {
    Cyclo S1, S2;
    for (int i = 0; i < s; ++i) (i < split ? S1 : S2) -= roots[lay[i]];
    for (int j = 1; j < k; ++j) {
      Cyclo rho = *Cyclo::root_of_unity(k, j);
      Cyclo t1 = -(S1 + S2) / (Cyclo(1) - rho);
      if (t1.is_zero()) continue;
      std::vector<Cyclo> pts{Cyclo(0)};
      std::vector<int> edge_root;  // root index per polygon edge, -1 for t edges
      for (int i = 0; i < split; ++i) {
        pts.push_back(pts.back() - roots[lay[i]]);
        edge_root.push_back(lay[i]);
      }
      pts.push_back(pts.back() + t1);
      edge_root.push_back(-1);
      int t1_edge = static_cast<int>(edge_root.size()) - 1;
      for (int i = split; i < s; ++i) {
        pts.push_back(pts.back() - roots[lay[i]]);
        edge_root.push_back(lay[i]);
      }
      edge_root.push_back(-1);
      int t2_edge = static_cast<int>(edge_root.size()) - 1;
      auto poly = polygon_piece(pts, "c1c2-polygon");
      try {
        check_piece(poly);
      } catch (const surface_error&) {
        continue;
      }
      NetBuilder nb(k);
      int pid = nb.add(poly);
      for (int e = 0; e < static_cast<int>(edge_root.size()); ++e) {
        int i = edge_root[e];
        if (i < 0) continue;
        auto pe = make_polar_part(k, 0, {roots[i]}, {}, k).emit(nb, i);
        nb.join(pe.upper[0], nb.edge(pid, e));
      }
      nb.glue(nb.edge(pid, t1_edge), nb.edge(pid, t2_edge), j);
      try {
        auto S = nb.finish();
        if (verify_surface(S, st, R).ok) return S;
      } catch (const surface_error&) {
      }
    }
  }
  throw surface_error("no non-self-intersecting polygon of type C1/C2 for these roots and split");
}

struct BrokenZero {
  Stratum stratum;
  bool applicable = true;
};

// Replace the zero at `index` (position in s.orders) by zeros of orders alpha.
inline BrokenZero break_zero(const Stratum& s, int index, const std::vector<int>& alpha) {
  if (index < 0 || index >= static_cast<int>(s.orders.size())) throw std::invalid_argument("zero index out of range");
  int a0 = s.orders[index];
  if (!s.is_zero_order(a0)) throw std::invalid_argument("index does not point at a zero");
  if (alpha.empty()) throw std::invalid_argument("need at least one part");
  long long sum = 0;
  for (int a : alpha) {
    if (a <= -s.k) throw std::invalid_argument("parts must exceed -k");
    sum += a;
  }
  if (sum != a0) throw std::invalid_argument("parts do not sum to the zero order");
  BrokenZero out;
  out.stratum = s;
  out.stratum.orders.erase(out.stratum.orders.begin() + index);
  out.stratum.orders.insert(out.stratum.orders.end(), alpha.begin(), alpha.end());
  int g = 0;
  for (int a : alpha) g = std::gcd(g, std::abs(a));
  bool obstructed = s.k >= 2 && alpha.size() == 2 && a0 % s.k == 0 && g % s.k != 0;
  out.applicable = !obstructed;
  return out;
}

inline Stratum sew_handle(const Stratum& s, int index) {
  if (index < 0 || index >= static_cast<int>(s.orders.size())) throw std::invalid_argument("zero index out of range");
  Stratum t = s;
  t.genus += 1;
  t.orders[index] += 2 * s.k;
  return t;
}

struct Witness {
  std::optional<FlatSurface> surface;
  std::string construction;
  std::string reason;
};

// Tries the constructive branches: one zero in genus 0, then two zeros with
// poles of order exactly -k (polygon with a rotated pair of sides).
inline Witness find_witness(const Stratum& s, const ResidueTuple& r) {
  Witness w;
  if (!is_valid_partition(s)) throw invalid_stratum("invalid stratum: " + s.to_string());
  if (!residue_tuple_valid(s, r)) throw std::invalid_argument("residue tuple outside the residue space");
  if (s.genus != 0) {
    w.reason = "no constructive branch in positive genus";
    return w;
  }
  std::vector<int> zs;
  for (int z : s.zeros())
    if (z != 0) zs.push_back(z);
  if (zs.size() <= 1) {
    try {
      w.surface = build_one_zero_genus0(s, r);
      w.construction = "one-zero";
    } catch (const unsupported_construction& e) {
      w.reason = e.what();
    } catch (const surface_error& e) {
      w.reason = e.what();
    }
    return w;
  }
  bool only_minus_k = true;
  for (auto& p : s.poles()) only_minus_k = only_minus_k && p.kind == PoleKind::MinusK;
  if (zs.size() != 2 || s.k < 2 || !only_minus_k || !Cyclo::root_of_unity(s.k, 1)) {
    w.reason = "no constructive branch for this stratum";
    return w;
  }
  std::vector<std::vector<Cyclo>> choices;
  for (auto& R : r) {
    auto roots = kth_roots(R, s.k);
    if (roots.empty()) {
      w.reason = "a k-residue has no k-th root in Q(zeta_12)";
      return w;
    }
    choices.push_back(roots);
  }
  const int n = static_cast<int>(r.size());
  std::vector<size_t> pick(n, 0);
  for (int budget = 0; budget < 256; ++budget) {
    std::vector<Cyclo> roots;
    for (int i = 0; i < n; ++i) roots.push_back(choices[i][pick[i]]);
    for (int split = 0; split <= n; ++split) {
      try {
        w.surface = construct_c1_c2(s.k, zs[0], zs[1], roots, split);
        w.construction = "rotated-pair polygon";
        return w;
      } catch (const surface_error&) {
      }
    }
    int i = 0;
    while (i < n && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == n) break;
  }
  w.reason = "no non-self-intersecting polygon found";
  return w;
}

}  // namespace residue_atlas
