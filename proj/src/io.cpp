#include "laminata/io.hpp"

#include <fstream>
#include <sstream>

namespace laminata::io {

namespace {

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": expected an integer");
  return v.get<int>();
}

int int_or(const json& j, const char* key, int fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return as_int(j.at(key), where + "." + key);
}

/// Identifiers may be written as strings or integers.
std::string label(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InputError(where + ": expected a string or integer id");
}

std::string string_of(const json& v, const std::string& where) {
  if (!v.is_string()) throw InputError(where + ": expected a string");
  return v.get<std::string>();
}

Polygon polygon_of(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected a list of angles");
  std::vector<Angle> angles;
  for (const auto& a : v) {
    if (!a.is_string()) throw InputError(where + ": angles must be \"p/q\" strings");
    angles.push_back(Angle::parse(a.get<std::string>()));
  }
  return Polygon(std::move(angles));
}

std::vector<Polygon> polygons_of(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected a list of polygons");
  std::vector<Polygon> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(polygon_of(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

CollectionFile collection_of(const json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  CollectionFile c;
  c.degree = Degree(as_int(member(j, "degree", where), where + ".degree")).value();
  c.horizon = int_or(j, "horizon", 64, where);
  if (c.horizon < 0) throw InputError(where + ".horizon: must be >= 0");
  c.polygons = polygons_of(member(j, "polygons", where), where + ".polygons");
  c.n_prime = int_or(j, "n_prime", 0, where);
  if (c.n_prime < 0) throw InputError(where + ".n_prime: must be >= 0");
  return c;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << contents;
  if (!out) throw IoError("write failed for " + path);
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

LaminationFile parse_lamination(const json& j) {
  LaminationFile f;
  f.degree = Degree(as_int(member(j, "degree", "lamination"), "lamination.degree")).value();
  f.generators = polygons_of(member(j, "generators", "lamination"), "lamination.generators");
  return f;
}

json to_json(const LaminationFile& f) {
  json j;
  j["degree"] = f.degree;
  json gens = json::array();
  for (const auto& g : f.generators) {
    json poly = json::array();
    for (const auto& v : g.vertices()) poly.push_back(v.str());
    gens.push_back(std::move(poly));
  }
  j["generators"] = std::move(gens);
  return j;
}

std::vector<Chord> chords_of(const LaminationFile& f) {
  std::vector<Chord> out;
  for (const auto& g : f.generators) {
    if (g.size() == 1) {
      out.emplace_back(g.vertices()[0], g.vertices()[0]);
      continue;
    }
    for (const auto& c : g.boundary_chords()) out.push_back(c);
  }
  return out;
}

std::vector<CollectionFile> parse_collections(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  const json j = parse_json(text, "collection");
  std::vector<CollectionFile> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(collection_of(j[i], "collection[" + std::to_string(i) + "]"));
  } else {
    out.push_back(collection_of(j, "collection"));
  }
  return out;
}

fsi::Portrait parse_portrait(const json& j) {
  if (!j.is_object()) throw InputError("portrait: expected an object");
  fsi::Portrait p;
  p.degree = as_int(member(j, "degree", "portrait"), "portrait.degree");
  p.n_fatou_cycles = int_or(j, "fatou_cycles", 0, "portrait");

  if (j.contains("cycles")) {
    const auto& arr = j.at("cycles");
    if (!arr.is_array()) throw InputError("portrait.cycles: expected a list");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "portrait.cycles[" + std::to_string(i) + "]";
      const auto& c = arr[i];
      fsi::CycleRecord r;
      r.id = c.contains("id") ? label(c.at("id"), where + ".id") : "cycle" + std::to_string(i);
      r.period = int_or(c, "period", 1, where);
      const std::string kind = string_of(member(c, "kind", where), where + ".kind");
      const auto k = fsi::parse_cycle_kind(kind);
      if (!k) throw InputError(where + ".kind: unknown cycle kind '" + kind + "'");
      r.kind = *k;
      p.cycles.push_back(std::move(r));
    }
  }

  if (j.contains("criticals")) {
    const auto& arr = j.at("criticals");
    if (!arr.is_array()) throw InputError("portrait.criticals: expected a list");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "portrait.criticals[" + std::to_string(i) + "]";
      const auto& c = arr[i];
      fsi::CriticalRecord r;
      r.id = c.contains("id") ? label(c.at("id"), where + ".id") : "c" + std::to_string(i);
      const std::string cls = string_of(member(c, "class", where), where + ".class");
      const auto k = fsi::parse_critical_class(cls);
      if (!k) throw InputError(where + ".class: unknown critical class '" + cls + "'");
      r.cls = *k;
      // Without explicit labels every critical point is its own grand orbit and limit set.
      r.grand_orbit = c.contains("grand_orbit") ? label(c.at("grand_orbit"), where + ".grand_orbit") : r.id;
      r.limit_set = c.contains("limit_set") ? label(c.at("limit_set"), where + ".limit_set") : r.grand_orbit;
      r.multiplicity = int_or(c, "multiplicity", 1, where);
      if (c.contains("region")) {
        const std::string region = string_of(c.at("region"), where + ".region");
        const auto reg = fsi::parse_region(region);
        if (!reg) throw InputError(where + ".region: unknown region '" + region + "'");
        r.region = *reg;
      }
      if (c.contains("cycle")) r.cycle = label(c.at("cycle"), where + ".cycle");
      p.criticals.push_back(std::move(r));
    }
  }

  if (j.contains("wandering")) {
    const auto& arr = j.at("wandering");
    if (!arr.is_array()) throw InputError("portrait.wandering: expected a list");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "portrait.wandering[" + std::to_string(i) + "]";
      const auto& w = arr[i];
      fsi::WanderingEntry e;
      e.id = w.contains("id") ? label(w.at("id"), where + ".id") : "w" + std::to_string(i);
      e.eval = as_int(member(w, "eval", where), where + ".eval");
      const std::string loc = string_of(member(w, "location", where), where + ".location");
      const auto l = fsi::parse_location(loc);
      if (!l) throw InputError(where + ".location: unknown location '" + loc + "'");
      e.location = *l;
      if (w.contains("component")) e.component = label(w.at("component"), where + ".component");
      p.wandering.push_back(std::move(e));
    }
  }
  return p;
}

ray::PolySpec parse_polynomial(const json& j) {
  const auto& arr = member(j, "coefficients", "polynomial");
  if (!arr.is_array()) throw InputError("polynomial.coefficients: expected a list");
  std::vector<ray::cplx> coeffs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& c = arr[i];
    const std::string where = "polynomial.coefficients[" + std::to_string(i) + "]";
    if (c.is_number()) {
      coeffs.emplace_back(c.get<double>(), 0.0);
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    } else {
      throw InputError(where + ": expected [re, im]");
    }
  }
  return ray::PolySpec(std::move(coeffs));
}

json complex_json(ray::cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace laminata::io
