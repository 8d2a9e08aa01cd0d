// JSON encoding of scalars, strata, residue tuples and decisions.
#pragma once

#include "decision.hpp"
#include "stratum.hpp"

#include <fstream>
#include <sstream>

namespace residue_atlas {

class parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  if (j.is_number_float()) {
    auto q = rationalize(j.get<double>());
    if (!q) throw parse_error("cannot rationalize " + j.dump() + " with denominator <= 1e6");
    return *q;
  }
  if (j.is_string()) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw parse_error("bad rational string " + j.dump());
    q.canonicalize();
    return q;
  }
  if (j.is_object() && j.contains("num")) {
    Rational n = parse_rational(j.at("num"));
    Rational d = j.contains("den") ? parse_rational(j.at("den")) : Rational(1);
    if (d == 0) throw parse_error("zero denominator");
    return n / d;
  }
  throw parse_error("expected a rational, got " + j.dump());
}

// A scalar is a rational, an [re, im] pair, or {"cyclotomic": [c0, c1, c2, c3]}
// in the basis 1, z, z^2, z^3 with z = exp(i pi / 6).
inline Cyclo parse_scalar(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw parse_error("complex scalar must be [re, im]");
    return Cyclo::gaussian(parse_rational(j[0]), parse_rational(j[1]));
  }
  if (j.is_object() && j.contains("cyclotomic")) {
    const auto& c = j.at("cyclotomic");
    if (!c.is_array() || c.size() != 4) throw parse_error("cyclotomic needs four coordinates");
    return Cyclo(parse_rational(c[0]), parse_rational(c[1]), parse_rational(c[2]), parse_rational(c[3]));
  }
  return Cyclo(parse_rational(j));
}

inline json rational_to_json(const Rational& q) {
  if (q.get_den() == 1) {
    if (q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_num().get_str();
  }
  return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

inline json scalar_to_json(const Cyclo& x) {
  if (x.is_gaussian_rational()) return json::array({rational_to_json(x.c[0]), rational_to_json(x.c[3])});
  json c = json::array();
  for (auto& v : x.c) c.push_back(rational_to_json(v));
  return json{{"cyclotomic", c}};
}

inline ResidueTuple parse_tuple(const json& j) {
  if (!j.is_array()) throw parse_error("residue tuple must be an array");
  ResidueTuple r;
  for (auto& e : j) r.push_back(parse_scalar(e));
  return r;
}

inline json tuple_to_json(const ResidueTuple& r) {
  json j = json::array();
  for (auto& x : r) j.push_back(scalar_to_json(x));
  return j;
}

inline Stratum parse_stratum(const json& j) {
  if (!j.is_object()) throw parse_error("stratum must be an object");
  Stratum s;
  s.k = j.value("k", 1);
  s.genus = j.value("genus", 0);
  if (!j.contains("orders") || !j.at("orders").is_array()) throw parse_error("stratum needs an orders array");
  for (auto& o : j.at("orders")) {
    if (!o.is_number_integer()) throw parse_error("orders must be integers");
    s.orders.push_back(o.get<int>());
  }
  return s;
}

inline json stratum_to_json(const Stratum& s) {
  return json{{"k", s.k}, {"genus", s.genus}, {"orders", s.canonical_orders()}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
}

}  // namespace residue_atlas
