#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "quantconvex/core/error.hpp"
#include "quantconvex/core/instance.hpp"
#include "quantconvex/core/types.hpp"

namespace qc::json {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Rendering

inline Json render(const Scalar& s) { return s.str(); }

inline Json render(const Point& p) {
  Json a = Json::array();
  for (const auto& c : p) a.push_back(c.str());
  return a;
}

inline Json render(const HalfSpace& h) {
  Json o = Json::object();
  o["a"] = render(h.normal());
  o["b"] = render(h.offset());
  return o;
}

template <class T>
Json render(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(render(x));
  return a;
}

inline Json render_indices(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto i : v) a.push_back(i);
  return a;
}

inline Json render(const Certificate& c) {
  Json o = Json::object();
  o["kind"] = std::string(to_string(c.kind));
  o["dim"] = c.dim;
  o["exact"] = c.exact;
  Json w = Json::object();
  if (!c.witness.points.empty()) {
    Json a = Json::array();
    for (const auto& p : c.witness.points) a.push_back(Json{{"at", render_indices(p.at)}, {"point", render(p.point)}});
    w["points"] = std::move(a);
  }
  if (!c.witness.halfspaces.empty()) {
    Json a = Json::array();
    for (const auto& h : c.witness.halfspaces) a.push_back(Json{{"at", render_indices(h.at)}, {"halfspace", render(h.halfspace)}});
    w["halfspaces"] = std::move(a);
  }
  if (!c.witness.parts.empty()) {
    Json a = Json::array();
    for (const auto& p : c.witness.parts) a.push_back(render_indices(p));
    w["parts"] = std::move(a);
  }
  if (!c.witness.unused.empty()) w["unused"] = render_indices(c.witness.unused);
  o["witness"] = std::move(w);
  Json cl = Json::object();
  const Claim& k = c.claim;
  if (k.target) cl["target"] = render(*k.target);
  if (k.anchor) cl["anchor"] = render(*k.anchor);
  if (!k.weights.empty()) {
    Json a = Json::array();
    for (const auto& w8 : k.weights) a.push_back(render(w8));
    cl["weights"] = std::move(a);
  }
  if (k.center) cl["center"] = render(*k.center);
  if (k.radius_squared) cl["radius_squared"] = render(*k.radius_squared);
  if (k.radius) cl["radius"] = render(*k.radius);
  if (k.ratio) cl["ratio"] = render(*k.ratio);
  if (k.bound) cl["bound"] = render(*k.bound);
  if (k.bound_met) cl["bound_met"] = *k.bound_met;
  o["claim"] = std::move(cl);
  o["verified"] = c.verified;
  return o;
}

inline Json render(const Instance& in) {
  Json o = Json::object();
  o["kind"] = std::string(to_string(in.kind));
  o["dim"] = in.dim;
  if (!in.classes.empty()) o["classes"] = render(in.classes);
  if (!in.body.empty()) o["body"] = render(in.body);
  if (!in.points.empty()) o["points"] = render(in.points);
  if (!in.sets.empty()) o["sets"] = render(in.sets);
  if (!in.colors.empty()) o["colors"] = render(in.colors);
  if (!in.halfspaces.empty()) o["halfspaces"] = render(in.halfspaces);
  if (!in.families.empty()) o["families"] = render(in.families);
  if (in.target) o["target"] = render(*in.target);
  if (in.anchor) o["anchor"] = render(*in.anchor);
  if (in.epsilon) o["epsilon"] = render(*in.epsilon);
  if (in.parts) o["parts"] = *in.parts;
  if (in.n_prime) o["n_prime"] = *in.n_prime;
  if (in.seed) o["seed"] = *in.seed;
  if (in.construction) o["construction"] = *in.construction;
  return o;
}

/// Two-space indented text with a trailing newline; the byte format of every file.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Parsing. Errors carry the JSON pointer of the offending value.

namespace detail {

[[noreturn]] inline void bad(const std::string& at, const std::string& what) {
  fail(ErrorCode::parse, (at.empty() ? std::string("/") : at) + ": " + what);
}

inline const Json& field(const Json& o, const char* key, const std::string& at) {
  if (!o.is_object()) bad(at, "expected an object");
  const auto it = o.find(key);
  if (it == o.end()) bad(at, std::string("missing field '") + key + "'");
  return *it;
}

inline Scalar scalar(const Json& j, const std::string& at) {
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const Error& e) {
      bad(at, e.what());
    }
  }
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  bad(at, "expected a rational string \"p/q\"");
}

inline Point point(const Json& j, const std::string& at) {
  if (!j.is_array() || j.empty()) bad(at, "expected a nonempty coordinate array");
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(scalar(j[i], at + "/" + std::to_string(i)));
  return Point(std::move(c));
}

inline HalfSpace halfspace(const Json& j, const std::string& at) {
  Point a = point(field(j, "a", at), at + "/a");
  Scalar b = scalar(field(j, "b", at), at + "/b");
  if (a.is_zero()) bad(at + "/a", "half-space normal must be nonzero");
  return HalfSpace(std::move(a), std::move(b));
}

inline std::size_t index(const Json& j, const std::string& at) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) bad(at, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline const Json& array(const Json& j, const std::string& at) {
  if (!j.is_array()) bad(at, "expected an array");
  return j;
}

template <class F>
auto list(const Json& j, const std::string& at, F&& item) {
  using T = decltype(item(j, at));
  std::vector<T> out;
  const Json& a = array(j, at);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(item(a[i], at + "/" + std::to_string(i)));
  return out;
}

inline std::vector<Point> points(const Json& j, const std::string& at) { return list(j, at, point); }
inline std::vector<std::vector<Point>> point_lists(const Json& j, const std::string& at) { return list(j, at, points); }
inline std::vector<HalfSpace> halfspaces(const Json& j, const std::string& at) { return list(j, at, halfspace); }
inline std::vector<std::size_t> indices(const Json& j, const std::string& at) { return list(j, at, index); }

inline CertificateKind kind(const Json& j, const std::string& at) {
  if (!j.is_string()) bad(at, "expected a kind string");
  try {
    return certificate_kind_from_string(j.get<std::string>());
  } catch (const Error& e) {
    bad(at, e.what());
  }
}

inline int dimension(const Json& j, const std::string& at) {
  if (!j.is_number_integer() || j.get<long long>() < 1) bad(at, "expected a positive dimension");
  return j.get<int>();
}

}  // namespace detail

/// Parses text, mapping syntax errors to ErrorCode::parse with the byte offset.
inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
  }
}

inline Certificate parse_certificate(const Json& j) {
  using namespace detail;
  Certificate c;
  c.kind = kind(field(j, "kind", ""), "/kind");
  c.dim = dimension(field(j, "dim", ""), "/dim");
  if (j.contains("exact")) {
    if (!j["exact"].is_boolean()) bad("/exact", "expected a boolean");
    c.exact = j["exact"].get<bool>();
  }
  if (j.contains("witness")) {
    const Json& w = j["witness"];
    if (!w.is_object()) bad("/witness", "expected an object");
    if (w.contains("points")) {
      c.witness.points = list(w["points"], "/witness/points", [](const Json& e, const std::string& at) {
        return PointPick{indices(field(e, "at", at), at + "/at"), point(field(e, "point", at), at + "/point")};
      });
    }
    if (w.contains("halfspaces")) {
      c.witness.halfspaces = list(w["halfspaces"], "/witness/halfspaces", [](const Json& e, const std::string& at) {
        return HalfSpacePick{indices(field(e, "at", at), at + "/at"), halfspace(field(e, "halfspace", at), at + "/halfspace")};
      });
    }
    if (w.contains("parts")) c.witness.parts = list(w["parts"], "/witness/parts", indices);
    if (w.contains("unused")) c.witness.unused = indices(w["unused"], "/witness/unused");
  }
  if (j.contains("claim")) {
    const Json& k = j["claim"];
    if (!k.is_object()) bad("/claim", "expected an object");
    Claim& cl = c.claim;
    if (k.contains("target")) cl.target = point(k["target"], "/claim/target");
    if (k.contains("anchor")) cl.anchor = point(k["anchor"], "/claim/anchor");
    if (k.contains("weights")) {
      cl.weights = list(k["weights"], "/claim/weights", [](const Json& e, const std::string& at) { return list(e, at, scalar); });
    }
    if (k.contains("center")) cl.center = point(k["center"], "/claim/center");
    if (k.contains("radius_squared")) cl.radius_squared = scalar(k["radius_squared"], "/claim/radius_squared");
    if (k.contains("radius")) cl.radius = scalar(k["radius"], "/claim/radius");
    if (k.contains("ratio")) cl.ratio = scalar(k["ratio"], "/claim/ratio");
    if (k.contains("bound")) cl.bound = scalar(k["bound"], "/claim/bound");
    if (k.contains("bound_met")) {
      if (!k["bound_met"].is_boolean()) bad("/claim/bound_met", "expected a boolean");
      cl.bound_met = k["bound_met"].get<bool>();
    }
  }
  if (j.contains("verified")) {
    if (!j["verified"].is_boolean()) bad("/verified", "expected a boolean");
    c.verified = j["verified"].get<bool>();
  }
  return c;
}

inline Instance parse_instance(const Json& j) {
  using namespace detail;
  Instance in;
  in.kind = kind(field(j, "kind", ""), "/kind");
  in.dim = dimension(field(j, "dim", ""), "/dim");
  if (j.contains("classes")) in.classes = point_lists(j["classes"], "/classes");
  if (j.contains("body")) in.body = points(j["body"], "/body");
  if (j.contains("points")) in.points = points(j["points"], "/points");
  if (j.contains("sets")) in.sets = point_lists(j["sets"], "/sets");
  if (j.contains("colors")) in.colors = list(j["colors"], "/colors", point_lists);
  if (j.contains("halfspaces")) in.halfspaces = halfspaces(j["halfspaces"], "/halfspaces");
  if (j.contains("families")) in.families = list(j["families"], "/families", halfspaces);
  if (j.contains("target")) in.target = point(j["target"], "/target");
  if (j.contains("anchor")) in.anchor = point(j["anchor"], "/anchor");
  if (j.contains("epsilon")) in.epsilon = scalar(j["epsilon"], "/epsilon");
  if (j.contains("parts")) in.parts = index(j["parts"], "/parts");
  if (j.contains("n_prime")) in.n_prime = index(j["n_prime"], "/n_prime");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad("/seed", "expected a nonnegative integer");
    in.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("construction")) {
    if (!j["construction"].is_string()) bad("/construction", "expected a string");
    in.construction = j["construction"].get<std::string>();
  }

  // Dimension agreement across every geometric field.
  auto check = [&](const Point& p, const std::string& at) {
    if (p.dim() != in.dim) bad(at, "dimension " + std::to_string(p.dim()) + " differs from dim " + std::to_string(in.dim));
  };
  auto check_all = [&](const std::vector<Point>& v, const std::string& at) {
    for (std::size_t i = 0; i < v.size(); ++i) check(v[i], at + "/" + std::to_string(i));
  };
  for (std::size_t i = 0; i < in.classes.size(); ++i) check_all(in.classes[i], "/classes/" + std::to_string(i));
  check_all(in.body, "/body");
  check_all(in.points, "/points");
  for (std::size_t i = 0; i < in.sets.size(); ++i) check_all(in.sets[i], "/sets/" + std::to_string(i));
  for (std::size_t c = 0; c < in.colors.size(); ++c) {
    for (std::size_t i = 0; i < in.colors[c].size(); ++i) {
      check_all(in.colors[c][i], "/colors/" + std::to_string(c) + "/" + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < in.halfspaces.size(); ++i) check(in.halfspaces[i].normal(), "/halfspaces/" + std::to_string(i));
  for (std::size_t f = 0; f < in.families.size(); ++f) {
    for (std::size_t i = 0; i < in.families[f].size(); ++i) {
      check(in.families[f][i].normal(), "/families/" + std::to_string(f) + "/" + std::to_string(i));
    }
  }
  if (in.target) check(*in.target, "/target");
  if (in.anchor) check(*in.anchor, "/anchor");
  return in;
}

inline Certificate read_certificate(const std::string& text) { return parse_certificate(parse_text(text)); }
inline Instance read_instance(const std::string& text) { return parse_instance(parse_text(text)); }

}  // namespace qc::json
