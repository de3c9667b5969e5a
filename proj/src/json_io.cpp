#include "tcx/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tcx {

AngleExpr angle_from_json(const Json& j) {
  if (!j.is_object()) throw Error("BadDocument", "angle literal must be an object");
  AngleExpr a;
  if (j.contains("pi")) {
    if (j["pi"].is_string())
      a += AngleExpr::pi(parse_rational(j["pi"].get<std::string>()));
    else if (j["pi"].is_number_integer())
      a += AngleExpr::pi(Rational(j["pi"].get<long long>()));
    else
      throw Error("BadDocument", "angle pi coefficient must be a rational string");
  }
  if (j.contains("atoms")) {
    for (const auto& [name, coeff] : j["atoms"].items()) {
      if (coeff.is_string())
        a += AngleExpr::atom(name, parse_rational(coeff.get<std::string>()));
      else if (coeff.is_number_integer())
        a += AngleExpr::atom(name, Rational(coeff.get<long long>()));
      else
        throw Error("BadDocument", "atom coefficient must be a rational string");
    }
  }
  return a;
}

Json angle_to_json(const AngleExpr& a) {
  Json j = Json::object();
  j["pi"] = rational_str(a.pi_coeff());
  if (!a.atom_terms().empty()) {
    Json atoms = Json::object();
    for (const auto& [name, c] : a.atom_terms()) atoms[name] = rational_str(c);
    j["atoms"] = atoms;
  }
  return j;
}

Json angle_report_json(const AngleExpr& a, const AtomEnv& env) {
  Json j = angle_to_json(a);
  j["numeric"] = a.numeric(env);
  return j;
}

TriangleComplex complex_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error("BadDocument", "complex document must be an object");
  TriangleComplex X;
  AtomEnv env;
  if (doc.contains("atoms")) {
    for (const auto& [name, val] : doc["atoms"].items()) {
      if (!val.is_number()) throw Error("BadDocument", "atom values are numbers");
      env.declare(name, val.get<double>());
    }
  }
  X.set_atoms(env);
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw Error("BadDocument", "missing vertices array");
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw Error("BadDocument", "vertex names are strings");
    X.add_vertex(v.get<std::string>());
  }
  auto vertex_id = [&](const Json& name) {
    if (!name.is_string()) throw Error("BadDocument", "vertex reference must be a name");
    auto v = X.vertex_by_name(name.get<std::string>());
    if (!v) throw Error("BadDocument", "unknown vertex '" + name.get<std::string>() + "'");
    return *v;
  };
  if (doc.contains("triangles")) {
    for (const auto& t : doc["triangles"]) {
      if (!t.contains("v") || !t.contains("angles") || !t.contains("sides") ||
          t["v"].size() != 3 || t["angles"].size() != 3 || t["sides"].size() != 3)
        throw Error("BadDocument", "triangle needs v/angles/sides triples");
      std::array<int, 3> v{vertex_id(t["v"][0]), vertex_id(t["v"][1]),
                           vertex_id(t["v"][2])};
      std::array<AngleExpr, 3> ang{angle_from_json(t["angles"][0]),
                                   angle_from_json(t["angles"][1]),
                                   angle_from_json(t["angles"][2])};
      std::array<double, 3> sides{t["sides"][0].get<double>(),
                                  t["sides"][1].get<double>(),
                                  t["sides"][2].get<double>()};
      X.add_triangle(v, ang, sides);
    }
  }
  if (doc.contains("edges")) {
    for (const auto& e : doc["edges"]) {
      if (!e.contains("v") || e["v"].size() != 2 || !e.contains("length"))
        throw Error("BadDocument", "bare edge needs v pair and length");
      X.add_bare_edge(vertex_id(e["v"][0]), vertex_id(e["v"][1]),
                      e["length"].get<double>());
    }
  }
  X.finalize();
  return X;
}

Json complex_to_json(const TriangleComplex& X) {
  Json doc = Json::object();
  if (!X.atoms().values().empty()) {
    Json atoms = Json::object();
    for (const auto& [name, val] : X.atoms().values()) atoms[name] = val;
    doc["atoms"] = atoms;
  }
  Json verts = Json::array();
  for (int v = 0; v < X.vertex_count(); ++v) verts.push_back(X.vertex_name(v));
  doc["vertices"] = verts;
  Json tris = Json::array();
  for (const auto& t : X.triangles()) {
    Json jt = Json::object();
    jt["v"] = {X.vertex_name(t.v[0]), X.vertex_name(t.v[1]), X.vertex_name(t.v[2])};
    jt["angles"] = {angle_to_json(t.angle[0]), angle_to_json(t.angle[1]),
                    angle_to_json(t.angle[2])};
    jt["sides"] = {t.side[0], t.side[1], t.side[2]};
    tris.push_back(jt);
  }
  doc["triangles"] = tris;
  Json bare = Json::array();
  for (const auto& e : X.edges())
    if (e.tris.empty()) {
      Json je = Json::object();
      je["v"] = {X.vertex_name(e.a), X.vertex_name(e.b)};
      je["length"] = e.length;
      bare.push_back(je);
    }
  if (!bare.empty()) doc["edges"] = bare;
  return doc;
}

TriangleComplex load_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("BadDocument", "cannot open '" + path + "'");
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw Error("BadDocument", std::string("JSON parse error: ") + e.what());
  }
  return complex_from_json(doc);
}

namespace {

std::string format_double(double v) {
  if (v == 0) v = 0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void dump_rec(const Json& j, std::ostringstream& os, int indent, int depth) {
  std::string pad(static_cast<size_t>(indent) * depth, ' ');
  std::string pad1(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad1 << Json(k).dump() << ": ";
        dump_rec(v, os, indent, depth + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad1;
        dump_rec(v, os, indent, depth + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
      return;
  }
}

}  // namespace

std::string dump_deterministic(const Json& j, int indent) {
  std::ostringstream os;
  dump_rec(j, os, indent, 0);
  os << "\n";
  return os.str();
}

}  // namespace tcx
