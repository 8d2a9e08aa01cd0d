// Flat surfaces as polygon nets. Pieces are counter-clockwise polygons in
// exact coordinates; half-infinite pieces are truncated and their far edges
// flagged as infinity edges. Gluing a net computes genus, cone angles, pole
// orders and (k-)residues from the combinatorics and the corner angles.
#pragma once

#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

namespace residue_atlas {

class surface_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class unsupported_construction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EdgeKind { Segment, Ray, Infinity };

inline const char* to_string(EdgeKind e) {
  switch (e) {
    case EdgeKind::Segment: return "segment";
    case EdgeKind::Ray: return "ray";
    case EdgeKind::Infinity: return "infinity";
  }
  return "?";
}

inline EdgeKind edge_kind_from_string(const std::string& s) {
  if (s == "segment") return EdgeKind::Segment;
  if (s == "ray") return EdgeKind::Ray;
  if (s == "infinity") return EdgeKind::Infinity;
  throw parse_error("unknown edge kind " + s);
}

// Edge i runs from vertex i to vertex i+1. pole[i] labels infinity edges with
// the canonical index of the pole they surround (-1 = unlabelled).
struct Piece {
  std::string kind = "polygon";
  std::vector<Cyclo> vertices;
  std::vector<EdgeKind> edges;
  std::vector<int> pole;

  int size() const { return static_cast<int>(vertices.size()); }
  Cyclo vec(int i) const { return vertices[(i + 1) % size()] - vertices[i]; }
};

inline Piece polygon_piece(std::vector<Cyclo> vertices, std::string kind = "polygon") {
  Piece p;
  p.kind = std::move(kind);
  p.edges.assign(vertices.size(), EdgeKind::Segment);
  p.pole.assign(vertices.size(), -1);
  p.vertices = std::move(vertices);
  return p;
}

// Edge a is glued to edge b reversed by z -> exp(2 pi i t / k) z + c, so that
// vec(b) = -exp(2 pi i t / k) vec(a).
struct Identification {
  int a = 0, b = 0, t = 0;
};

// orient(p, q, r) > 0 when r lies left of the directed line pq.
inline int orient(const Cyclo& p, const Cyclo& q, const Cyclo& r) { return cross_sign(q - p, r - p); }

namespace detail {

inline bool on_segment(const Cyclo& p, const Cyclo& q, const Cyclo& x) {
  // x collinear with pq assumed
  return dot_sign(x - p, q - p) >= 0 && dot_sign(x - q, p - q) >= 0;
}

inline bool segments_meet(const Cyclo& a, const Cyclo& b, const Cyclo& c, const Cyclo& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

inline double corner_angle(const Piece& p, int i) {
  int n = p.size();
  cplx a = p.vertices[(i + n - 1) % n].to_complex(), b = p.vertices[i].to_complex(),
       c = p.vertices[(i + 1) % n].to_complex();
  cplx in = b - a, out = c - b;
  double turn = std::atan2(in.real() * out.imag() - in.imag() * out.real(),
                           in.real() * out.real() + in.imag() * out.imag());
  return std::numbers::pi - turn;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// Exact check that a piece is a simple counter-clockwise polygon.
inline void check_piece(const Piece& p) {
  int n = p.size();
  if (n < 3) throw surface_error("piece with fewer than three vertices");
  if (static_cast<int>(p.edges.size()) != n || static_cast<int>(p.pole.size()) != n)
    throw surface_error("piece edge data does not match its vertices");
  for (int i = 0; i < n; ++i)
    if (p.vec(i).is_zero()) throw surface_error("piece has a zero-length edge");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Cyclo &a = p.vertices[i], &b = p.vertices[(i + 1) % n];
      const Cyclo &c = p.vertices[j], &d = p.vertices[(j + 1) % n];
      bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (!adjacent) {
        if (detail::segments_meet(a, b, c, d)) throw surface_error("piece boundary self-intersects");
        continue;
      }
      // adjacent edges may only share their common vertex
      const Cyclo& far_other = j == i + 1 ? d : c;
      const Cyclo& shared = j == i + 1 ? b : a;
      const Cyclo& far_this = j == i + 1 ? a : b;
      if (orient(far_this, shared, far_other) == 0 && dot_sign(far_this - shared, far_other - shared) > 0)
        throw surface_error("piece boundary folds back on itself");
    }
  }
  Real3 area;
  for (int i = 0; i < n; ++i) area += (p.vertices[i].conj() * p.vertices[(i + 1) % n]).im();
  if (area.sign() <= 0) throw surface_error("piece is not counter-clockwise");
}

struct VertexClass {
  std::vector<int> corners;  // global corner ids
  double angle = 0;          // total angle for finite classes
  long long units = 0;       // angle in multiples of pi/k
  int order = 0;             // a with angle = (a + k) 2 pi / k
  bool truncation = false;
};

struct PoleEnd {
  int label = -1;
  int order = 0;
  bool carries_residue = false;
  Cyclo residue;  // k-residue, period convention
  std::vector<int> infinity_edges;
};

// A glued net. Built only through glue(); immutable afterwards.
class FlatSurface {
 public:
  int k = 1;
  std::vector<Piece> pieces;
  std::vector<Identification> identifications;

  int genus = 0;
  std::vector<VertexClass> classes;  // all vertex classes, truncation ones included
  std::vector<PoleEnd> poles;        // sorted by label

  int edge_count() const { return offsets_.empty() ? 0 : offsets_.back(); }
  int edge_id(int piece, int i) const { return offsets_[piece] + i; }
  std::pair<int, int> locate(int id) const {
    int p = static_cast<int>(std::upper_bound(offsets_.begin(), offsets_.end(), id) - offsets_.begin()) - 1;
    return {p, id - offsets_[p]};
  }
  Cyclo edge_vec(int id) const {
    auto [p, i] = locate(id);
    return pieces[p].vec(i);
  }
  EdgeKind edge_kind(int id) const {
    auto [p, i] = locate(id);
    return pieces[p].edges[i];
  }

  friend FlatSurface glue(int k, std::vector<Piece> pieces, std::vector<Identification> ids);

 private:
  std::vector<int> offsets_;
};

inline FlatSurface glue(int k, std::vector<Piece> pieces, std::vector<Identification> ids) {
  if (k < 1) throw surface_error("k must be at least 1");
  if (pieces.empty()) throw surface_error("no pieces");
  FlatSurface s;
  s.k = k;
  s.pieces = std::move(pieces);
  s.identifications = std::move(ids);
  s.offsets_.push_back(0);
  for (auto& p : s.pieces) {
    check_piece(p);
    s.offsets_.push_back(s.offsets_.back() + p.size());
  }
  const int E = s.edge_count();

  // edge pairing and congruence
  std::vector<int> partner(E, -1);
  std::vector<Cyclo> to_partner(E);  // linear part of the chart change across the edge
  for (auto& id : s.identifications) {
    if (id.a < 0 || id.a >= E || id.b < 0 || id.b >= E) throw surface_error("identification edge out of range");
    if (id.a == id.b) throw surface_error("edge glued to itself");
    if (id.t < 0 || id.t >= k) throw surface_error("rotation index not in 0..k-1");
    if (partner[id.a] >= 0 || partner[id.b] >= 0) throw surface_error("edge matched more than once");
    EdgeKind ka = s.edge_kind(id.a), kb = s.edge_kind(id.b);
    if (ka == EdgeKind::Infinity || kb == EdgeKind::Infinity) throw surface_error("infinity edges cannot be glued");
    if (ka != kb) throw surface_error("half-infinite edge glued to a finite one");
    auto rho = id.t == 0 ? std::optional<Cyclo>(Cyclo(1)) : Cyclo::root_of_unity(k, id.t);
    if (!rho) throw unsupported_construction("rotation by 2 pi t / k is not exact for k = " + std::to_string(k));
    if (s.edge_vec(id.b) != -(*rho) * s.edge_vec(id.a)) throw surface_error("glued edges are not congruent");
    partner[id.a] = id.b;
    partner[id.b] = id.a;
    to_partner[id.a] = *rho;
    to_partner[id.b] = rho->inverse();
  }
  int n_inf = 0;
  for (int e = 0; e < E; ++e) {
    bool inf = s.edge_kind(e) == EdgeKind::Infinity;
    n_inf += inf;
    if (!inf && partner[e] < 0) throw surface_error("unmatched edge " + std::to_string(e));
  }

  // corners: corner id = edge id of its outgoing edge
  auto next_in_piece = [&](int id) {
    auto [p, i] = s.locate(id);
    return s.edge_id(p, (i + 1) % s.pieces[p].size());
  };
  auto prev_in_piece = [&](int id) {
    auto [p, i] = s.locate(id);
    int n = s.pieces[p].size();
    return s.edge_id(p, (i + n - 1) % n);
  };
  detail::UnionFind uf(E);
  for (auto& id : s.identifications) {
    uf.unite(id.a, next_in_piece(id.b));
    uf.unite(next_in_piece(id.a), id.b);
  }
  std::map<int, int> class_of_root;
  std::vector<int> class_of(E);
  for (int c = 0; c < E; ++c) {
    int r = uf.find(c);
    auto [it, fresh] = class_of_root.emplace(r, static_cast<int>(s.classes.size()));
    if (fresh) s.classes.emplace_back();
    class_of[c] = it->second;
    s.classes[it->second].corners.push_back(c);
  }
  std::vector<double> corner_angle(E);
  for (int c = 0; c < E; ++c) {
    auto [p, i] = s.locate(c);
    corner_angle[c] = detail::corner_angle(s.pieces[p], i);
  }
  const double unit = std::numbers::pi / k;
  auto to_units = [&](double angle, const char* what) {
    double u = angle / unit;
    long long r = std::llround(u);
    if (std::fabs(u - r) > 1e-6) throw surface_error(std::string(what) + " angle is not a multiple of pi/k");
    return r;
  };
  for (auto& vc : s.classes) {
    int in_inf = 0, out_inf = 0;
    for (int c : vc.corners) {
      out_inf += s.edge_kind(c) == EdgeKind::Infinity;
      in_inf += s.edge_kind(prev_in_piece(c)) == EdgeKind::Infinity;
    }
    vc.truncation = in_inf + out_inf > 0;
    if (vc.truncation && (in_inf != 1 || out_inf != 1))
      throw surface_error("inconsistent complex at a truncation vertex");
    for (int c : vc.corners) vc.angle += corner_angle[c];
    if (!vc.truncation) {
      vc.units = to_units(vc.angle, "cone");
      if (vc.units % 2 != 0) throw surface_error("cone angle is not a multiple of 2 pi / k");
      vc.order = static_cast<int>(vc.units / 2 - k);
    }
  }

  // walk the boundary circle of each pole, surface on the left
  std::vector<char> seen(E, 0);
  int next_label = 0;
  for (int e = 0; e < E; ++e)
    if (s.edge_kind(e) == EdgeKind::Infinity) {
      auto [p, i] = s.locate(e);
      next_label = std::max(next_label, s.pieces[p].pole[i] + 1);
    }
  std::vector<PoleEnd> ends;
  for (int start = 0; start < E; ++start) {
    if (s.edge_kind(start) != EdgeKind::Infinity || seen[start]) continue;
    PoleEnd pe;
    Cyclo g(1), sum;
    double theta = 0;
    int e = start;
    int label = -2;
    do {
      seen[e] = 1;
      pe.infinity_edges.push_back(e);
      auto [p, i] = s.locate(e);
      int l = s.pieces[p].pole[i];
      if (label == -2) label = l;
      else if (label != l) throw surface_error("infinity edges of one pole carry different labels");
      sum += g * s.edge_vec(e);
      int c = next_in_piece(e);
      double phi = corner_angle[c];
      int visited = 1;
      while (s.edge_kind(c) != EdgeKind::Infinity) {
        g = g * to_partner[c].inverse();
        c = next_in_piece(partner[c]);
        phi += corner_angle[c];
        if (++visited > E) throw surface_error("corner walk does not terminate");
      }
      theta += phi - std::numbers::pi;
      e = c;
    } while (e != start);
    long long u = to_units(-theta, "pole");
    // theta = (m + k) 2 pi / k  ->  m = k theta / 2 pi - k
    if (u % 2 != 0) throw surface_error("pole angle is not a multiple of 2 pi / k");
    pe.order = static_cast<int>(-u / 2 - k);
    if (pe.order > -1) throw surface_error("infinity circle does not bound a pole");
    pe.carries_residue = (-pe.order) % k == 0;
    if (pe.carries_residue) {
      if (g != Cyclo(1)) throw surface_error("nontrivial rotation around a pole of order divisible by k");
      pe.residue = (-sum).pow(k);
    }
    pe.label = label >= 0 ? label : next_label++;
    ends.push_back(std::move(pe));
  }
  std::sort(ends.begin(), ends.end(), [](const PoleEnd& a, const PoleEnd& b) { return a.label < b.label; });
  for (size_t i = 1; i < ends.size(); ++i)
    if (ends[i].label == ends[i - 1].label) throw surface_error("two poles share a label");
  s.poles = std::move(ends);

  long long V = static_cast<long long>(s.classes.size());
  long long Ecount = static_cast<long long>(s.identifications.size()) + n_inf;
  long long F = static_cast<long long>(s.pieces.size()) + static_cast<long long>(s.poles.size());
  long long chi = V - Ecount + F;
  if (chi > 2 || (2 - chi) % 2 != 0) throw surface_error("glued complex is not a closed orientable surface");
  s.genus = static_cast<int>((2 - chi) / 2);
  return s;
}

struct ConeAngle {
  int vertex_class = 0;
  double angle = 0;
  long long units = 0;  // multiples of pi/k
  int order = 0;
};

inline std::vector<ConeAngle> cone_angles(const FlatSurface& s) {
  std::vector<ConeAngle> out;
  for (int c = 0; c < static_cast<int>(s.classes.size()); ++c) {
    auto& vc = s.classes[c];
    if (vc.truncation) continue;
    out.push_back({c, vc.angle, vc.units, vc.order});
  }
  return out;
}

inline int genus_of(const FlatSurface& s) { return s.genus; }

// Nonzero zero orders, decreasing. Regular points (order 0) are dropped.
inline std::vector<int> zero_orders(const FlatSurface& s) {
  std::vector<int> z;
  for (auto& c : cone_angles(s))
    if (c.order != 0) z.push_back(c.order);
  std::sort(z.rbegin(), z.rend());
  return z;
}

inline std::vector<int> pole_orders(const FlatSurface& s) {
  std::vector<int> p;
  for (auto& e : s.poles) p.push_back(e.order);
  return p;
}

// k-residues of the poles of order divisible by k, in label order. With
// canonical labels this is the ResidueTuple layout.
inline ResidueTuple residues_of(const FlatSurface& s) {
  ResidueTuple r;
  for (auto& e : s.poles)
    if (e.carries_residue) r.push_back(e.residue);
  return r;
}

inline long long order_sum(const FlatSurface& s) {
  long long t = 0;
  for (auto& c : cone_angles(s)) t += c.order;
  for (auto& e : s.poles) t += e.order;
  return t;
}

struct SurfaceReport {
  bool ok = false;
  bool k_ok = false, genus_ok = false, zeros_ok = false, poles_ok = false, residues_ok = false;
  json details;
  json to_json() const {
    return {{"ok", ok},           {"k", k_ok},           {"genus", genus_ok},       {"zeros", zeros_ok},
            {"poles", poles_ok}, {"residues", residues_ok}, {"details", details}};
  }
};

inline SurfaceReport verify_surface(const FlatSurface& S, const Stratum& s, const ResidueTuple& r) {
  SurfaceReport rep;
  rep.k_ok = S.k == s.k;
  rep.genus_ok = S.genus == s.genus;
  std::vector<int> want_zeros;
  for (int z : s.zeros())
    if (z != 0) want_zeros.push_back(z);
  std::sort(want_zeros.rbegin(), want_zeros.rend());
  auto got_zeros = zero_orders(S);
  rep.zeros_ok = want_zeros == got_zeros;
  std::vector<int> want_poles;
  for (auto& p : s.poles()) want_poles.push_back(p.order);
  auto got_poles = pole_orders(S);
  bool labels_ok = true;
  for (int i = 0; i < static_cast<int>(S.poles.size()); ++i) labels_ok = labels_ok && S.poles[i].label == i;
  rep.poles_ok = labels_ok && want_poles == got_poles;
  auto got_r = residues_of(S);
  rep.residues_ok = got_r == r;
  rep.ok = rep.k_ok && rep.genus_ok && rep.zeros_ok && rep.poles_ok && rep.residues_ok;
  json d;
  d["genus"] = {{"expected", s.genus}, {"found", S.genus}};
  d["zeros"] = {{"expected", want_zeros}, {"found", got_zeros}};
  d["poles"] = {{"expected", want_poles}, {"found", got_poles}};
  d["residues"] = {{"expected", tuple_to_json(r)}, {"found", tuple_to_json(got_r)}};
  d["order_sum"] = order_sum(S);
  d["gauss_bonnet"] = order_sum(S) == static_cast<long long>(S.k) * (2LL * S.genus - 2);
  rep.details = d;
  return rep;
}

inline json surface_to_json(const FlatSurface& S) {
  json j;
  j["k"] = S.k;
  j["pieces"] = json::array();
  for (int p = 0; p < static_cast<int>(S.pieces.size()); ++p) {
    auto& pc = S.pieces[p];
    json jp;
    jp["kind"] = pc.kind;
    jp["vertices"] = json::array();
    for (auto& v : pc.vertices) jp["vertices"].push_back(scalar_to_json(v));
    jp["edges"] = json::array();
    for (int i = 0; i < pc.size(); ++i) {
      json je{{"id", S.edge_id(p, i)}, {"kind", to_string(pc.edges[i])}};
      if (pc.edges[i] == EdgeKind::Infinity) je["pole"] = pc.pole[i];
      jp["edges"].push_back(je);
    }
    j["pieces"].push_back(jp);
  }
  j["identifications"] = json::array();
  for (auto& id : S.identifications) j["identifications"].push_back({id.a, id.b, id.t});
  return j;
}

inline FlatSurface surface_from_json(const json& j) {
  if (!j.is_object() || !j.contains("pieces")) throw parse_error("surface JSON needs pieces");
  int k = j.value("k", 1);
  std::vector<Piece> pieces;
  for (auto& jp : j.at("pieces")) {
    Piece p;
    p.kind = jp.value("kind", "polygon");
    for (auto& v : jp.at("vertices")) p.vertices.push_back(parse_scalar(v));
    int n = p.size();
    p.edges.assign(n, EdgeKind::Segment);
    p.pole.assign(n, -1);
    if (jp.contains("edges")) {
      if (static_cast<int>(jp.at("edges").size()) != n) throw parse_error("edge list length differs from vertex count");
      for (int i = 0; i < n; ++i) {
        auto& je = jp.at("edges")[i];
        p.edges[i] = edge_kind_from_string(je.value("kind", "segment"));
        if (je.contains("pole")) p.pole[i] = je.at("pole").get<int>();
      }
    }
    pieces.push_back(std::move(p));
  }
  std::vector<Identification> ids;
  for (auto& ji : j.at("identifications")) {
    if (!ji.is_array() || ji.size() != 3) throw parse_error("identification must be [edgeA, edgeB, rot_t]");
    ids.push_back({ji[0].get<int>(), ji[1].get<int>(), ji[2].get<int>()});
  }
  return glue(k, std::move(pieces), std::move(ids));
}

// Unglued net laid out left to right, edges labelled by identification.
inline std::string surface_svg(const FlatSurface& S) {
  std::map<int, int> label;
  for (int i = 0; i < static_cast<int>(S.identifications.size()); ++i) {
    label[S.identifications[i].a] = i;
    label[S.identifications[i].b] = i;
  }
  std::ostringstream os;
  double x0 = 0, height = 0;
  std::ostringstream body;
  for (int p = 0; p < static_cast<int>(S.pieces.size()); ++p) {
    auto& pc = S.pieces[p];
    double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
    for (auto& v : pc.vertices) {
      cplx z = v.to_complex();
      minx = std::min(minx, z.real());
      maxx = std::max(maxx, z.real());
      miny = std::min(miny, z.imag());
      maxy = std::max(maxy, z.imag());
    }
    double w = maxx - minx, h = maxy - miny;
    double sc = 200.0 / std::max({w, h, 1e-9});
    auto X = [&](cplx z) { return x0 + 10 + (z.real() - minx) * sc; };
    auto Y = [&](cplx z) { return 10 + (maxy - z.imag()) * sc; };
    for (int i = 0; i < pc.size(); ++i) {
      cplx a = pc.vertices[i].to_complex(), b = pc.vertices[(i + 1) % pc.size()].to_complex();
      bool inf = pc.edges[i] == EdgeKind::Infinity;
      body << "<line x1='" << X(a) << "' y1='" << Y(a) << "' x2='" << X(b) << "' y2='" << Y(b)
           << "' stroke='black'" << (inf ? " stroke-dasharray='4,3'" : "") << "/>\n";
      int id = S.edge_id(p, i);
      if (auto it = label.find(id); it != label.end()) {
        cplx m = 0.5 * (a + b);
        body << "<text x='" << X(m) << "' y='" << Y(m) << "' font-size='10'>" << it->second << "</text>\n";
      }
    }
    x0 += w * sc + 30;
    height = std::max(height, h * sc + 20);
  }
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << x0 << "' height='" << height << "'>\n"
     << body.str() << "</svg>\n";
  return os.str();
}

}  // namespace residue_atlas
