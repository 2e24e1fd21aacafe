#pragma once

// Polytope text format: "dim count", then count rows of dim rationals
// ("a" or "a/b"). The rows may be any point set; readers take the hull.

#include "toricy/polytope.hpp"

#include <fstream>
#include "json.hpp"
#include <sstream>

namespace toricy {

using Json = nlohmann::ordered_json;

inline Rational parse_rational(const std::string& tok) {
  Rational q;
  if (tok.empty() || q.set_str(tok, 10) != 0 || q.get_den() == 0)
    throw Error("bad rational '" + tok + "'");
  q.canonicalize();
  return q;
}

inline std::vector<RatVector> read_points(std::istream& in) {
  std::size_t dim = 0, count = 0;
  if (!(in >> dim >> count)) throw Error("polytope: missing 'dim count' header");
  std::vector<RatVector> pts(count, RatVector(dim));
  std::string tok;
  for (auto& p : pts)
    for (auto& x : p) {
      if (!(in >> tok)) throw Error("polytope: truncated body");
      x = parse_rational(tok);
    }
  return pts;
}

inline RationalPolytope read_polytope(std::istream& in) {
  auto pts = read_points(in);
  if (pts.empty()) throw Error("polytope: no points");
  return hull(pts);
}

inline RationalPolytope read_polytope_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  return read_polytope(f);
}

inline IntMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  return read_matrix(f);
}

inline void write_polytope(std::ostream& out, const RationalPolytope& p) {
  out << p.dim() << ' ' << p.vertices().size() << '\n';
  for (const auto& v : p.vertices()) {
    for (std::size_t j = 0; j < v.size(); ++j) out << (j ? " " : "") << v[j].get_str();
    out << '\n';
  }
}

inline Json to_json(std::span<const Rational> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

inline Json to_json(std::span<const Integer> v) {
  Json a = Json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p()) a.push_back(x.get_si());
    else a.push_back(x.get_str());
  }
  return a;
}

inline Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline Json polytope_json(const RationalPolytope& p) {
  Json j;
  j["dim"] = p.dim();
  Json vs = Json::array();
  for (const auto& v : p.vertices()) vs.push_back(to_json(std::span<const Rational>(v)));
  j["vertices"] = vs;
  return j;
}

inline RationalPolytope polytope_from_json(const Json& j) {
  std::size_t dim = j.at("dim").get<std::size_t>();
  std::vector<RatVector> pts;
  for (const auto& row : j.at("vertices")) {
    RatVector v;
    for (const auto& x : row) v.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
    if (v.size() != dim) throw Error("polytope json: vertex of wrong dimension");
    pts.push_back(std::move(v));
  }
  if (pts.empty()) throw Error("polytope json: no vertices");
  return hull(pts);
}

}  // namespace toricy
