// JSON wire formats.  rendering goes through ordered maps so that the
// byte layout of a document is stable across runs and platforms.

#include "ellsurf/io.hpp"

#include <json.hpp>

#include <sstream>
#include <vector>

namespace ellsurf {

namespace {

using ojson = nlohmann::ordered_json;

const char* kSchema = "ellsurf/1";

ojson parse_text(const std::string& text) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid json: ") + e.what(),
                     e.byte > 0 ? e.byte - 1 : 0);
  }
}

Rational rational_from_json(const ojson& v, const char* what) {
  if (v.is_number_integer())
    return Rational(static_cast<long>(v.get<long long>()));
  if (v.is_string()) return rational_from_string(v.get<std::string>());
  throw ParseError(std::string(what) + ": expected integer or rational string");
}

UniPoly poly_from_json(const ojson& v, const char* what) {
  if (!v.is_array())
    throw ParseError(std::string(what) + ": expected coefficient array");
  std::vector<Rational> coeffs;
  for (const auto& c : v) coeffs.push_back(rational_from_json(c, what));
  return coeffs.empty() ? UniPoly::zero() : UniPoly(coeffs);
}

P1Point p1_from_json(const ojson& v, const char* what) {
  if (v.is_number_integer())
    return P1Point::finite(Rational(static_cast<long>(v.get<long long>())));
  if (v.is_string()) return P1Point::from_string(v.get<std::string>());
  throw ParseError(std::string(what) + ": expected \"inf\" or rational");
}

void reject_unknown(const ojson& obj, std::initializer_list<const char*> keys,
                    const char* what) {
  for (const auto& [k, v] : obj.items()) {
    (void)v;
    bool known = false;
    for (const char* key : keys)
      if (k == key) known = true;
    if (!known)
      throw ParseError(std::string(what) + ": unknown key \"" + k + "\"");
  }
}

QuadraticCover cover_from_json(const ojson& j) {
  if (!j.is_object()) throw ParseError("cover: expected object");
  reject_unknown(j, {"branch1", "branch2", "lambda"}, "cover");
  QuadraticCover c;
  if (j.contains("branch1")) c.branch1 = p1_from_json(j["branch1"], "branch1");
  if (j.contains("branch2")) c.branch2 = p1_from_json(j["branch2"], "branch2");
  if (j.contains("lambda"))
    c.lambda = rational_from_json(j["lambda"], "lambda");
  c.validate();
  return c;
}

WeierstrassModel model_from_json(const ojson& j) {
  if (!j.is_object()) throw ParseError("surface: expected object");
  reject_unknown(j, {"a1", "a2", "a3", "a4", "a6"}, "surface");
  WeierstrassModel m;
  if (j.contains("a1")) m.a1 = poly_from_json(j["a1"], "a1");
  if (j.contains("a2")) m.a2 = poly_from_json(j["a2"], "a2");
  if (j.contains("a3")) m.a3 = poly_from_json(j["a3"], "a3");
  if (j.contains("a4")) m.a4 = poly_from_json(j["a4"], "a4");
  if (j.contains("a6")) m.a6 = poly_from_json(j["a6"], "a6");
  return m;
}

ojson poly_to_json(const UniPoly& p) {
  ojson arr = ojson::array();
  if (p.is_zero()) return arr;
  for (int i = 0; i <= p.degree(); ++i)
    arr.push_back(rational_to_string(p.coeff(i)));
  return arr;
}

ojson model_to_json(const WeierstrassModel& m) {
  ojson j = ojson::object();
  if (!m.a1.is_zero()) j["a1"] = poly_to_json(m.a1);
  if (!m.a2.is_zero()) j["a2"] = poly_to_json(m.a2);
  if (!m.a3.is_zero()) j["a3"] = poly_to_json(m.a3);
  if (!m.a4.is_zero()) j["a4"] = poly_to_json(m.a4);
  if (!m.a6.is_zero()) j["a6"] = poly_to_json(m.a6);
  return j;
}

ojson fiber_to_json(const FiberReport& f) {
  ojson j = ojson::object();
  if (f.place.is_infinite())
    j["place"] = "inf";
  else
    j["place"] = poly_to_json(f.place.poly());
  j["place_str"] = f.place.to_string();
  j["degree"] = f.degree;
  j["type"] = f.type.to_string();
  j["euler"] = f.euler;
  j["components"] = f.components;
  j["reduced"] = f.reduced;
  return j;
}

ojson report_to_json(const SurfaceReport& r) {
  ojson j = ojson::object();
  j["fibers"] = ojson::array();
  for (const auto& f : r.fibers) j["fibers"].push_back(fiber_to_json(f));
  j["euler_total"] = r.euler_total;
  j["rational_elliptic"] = r.rational_elliptic;
  if (r.geometric_generic_rank)
    j["geometric_generic_rank"] = *r.geometric_generic_rank;
  else
    j["geometric_generic_rank"] = nullptr;
  return j;
}

std::string dump(ojson j) {
  ojson out = ojson::object();
  out["schema"] = kSchema;
  for (auto& [k, v] : j.items()) out[k] = v;
  return out.dump(2) + "\n";
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

void report_table_into(std::ostringstream& os, const SurfaceReport& r) {
  std::size_t place_w = 5;
  for (const auto& f : r.fibers)
    place_w = std::max(place_w, f.place.to_string().size());
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w < s.size() ? 0 : w - s.size(), ' ');
  };
  os << pad("place", place_w) << "  deg  type  euler  comps  reduced\n";
  for (const auto& f : r.fibers) {
    os << pad(f.place.to_string(), place_w) << "  " << pad(std::to_string(f.degree), 3)
       << "  " << pad(f.type.to_string(), 4) << "  "
       << pad(std::to_string(f.euler), 5) << "  "
       << pad(std::to_string(f.components), 5) << "  " << yesno(f.reduced)
       << "\n";
  }
  os << "euler total: " << r.euler_total
     << "  rational elliptic: " << yesno(r.rational_elliptic);
  if (r.geometric_generic_rank)
    os << "  geometric generic rank: " << *r.geometric_generic_rank;
  os << "\n";
}

ojson point_to_json(const CurvePoint& p) {
  ojson j = ojson::array();
  if (p.infinite) {
    j.push_back("inf");
    return j;
  }
  j.push_back(rational_to_string(p.x));
  j.push_back(rational_to_string(p.y));
  return j;
}

}  // namespace

WeierstrassModel parse_model_json(const std::string& text) {
  return model_from_json(parse_text(text));
}

QuadraticCover parse_cover_json(const std::string& text) {
  return cover_from_json(parse_text(text));
}

CoverTower parse_tower_json(const std::string& text) {
  ojson j = parse_text(text);
  if (!j.is_object() || !j.contains("covers") || !j["covers"].is_array())
    throw ParseError("tower: expected {\"covers\": [...]}");
  reject_unknown(j, {"covers"}, "tower");
  CoverTower t;
  for (const auto& c : j["covers"]) t.covers.push_back(cover_from_json(c));
  return t;
}

SurfaceWithCover parse_surface_cover_json(const std::string& text) {
  ojson j = parse_text(text);
  if (!j.is_object() || !j.contains("surface") || !j.contains("cover"))
    throw ParseError("expected {\"surface\": ..., \"cover\": ...}");
  reject_unknown(j, {"surface", "cover"}, "input");
  return SurfaceWithCover{model_from_json(j["surface"]),
                          cover_from_json(j["cover"])};
}

std::string render_model_json(const WeierstrassModel& m) {
  ojson j = ojson::object();
  j["kind"] = "surface";
  j["surface"] = model_to_json(m);
  return dump(j);
}

std::string render_report_json(const SurfaceReport& r) {
  ojson j = ojson::object();
  j["kind"] = "classification";
  ojson body = report_to_json(r);
  for (auto& [k, v] : body.items()) j[k] = v;
  return dump(j);
}

std::string render_report_table(const SurfaceReport& r) {
  std::ostringstream os;
  report_table_into(os, r);
  return os.str();
}

std::string render_rnrf_json(const RnrfReport& r) {
  ojson j = ojson::object();
  j["kind"] = "rnrf";
  switch (r.status) {
    case RnrfStatus::Exists:
      j["status"] = "exists";
      break;
    case RnrfStatus::Unknown:
      j["status"] = "unknown";
      break;
    case RnrfStatus::InsufficientData:
      j["status"] = "insufficient-data";
      break;
  }
  if (r.status == RnrfStatus::Exists) j["case"] = r.case_index;
  j["missing"] = ojson::array();
  for (const auto& m : r.missing) j["missing"].push_back(m);
  j["detail"] = r.detail;
  return dump(j);
}

std::string render_rnrf_table(const RnrfReport& r) {
  std::ostringstream os;
  os << "status: ";
  switch (r.status) {
    case RnrfStatus::Exists:
      os << "exists (case " << r.case_index << ")";
      break;
    case RnrfStatus::Unknown:
      os << "unknown";
      break;
    case RnrfStatus::InsufficientData:
      os << "insufficient data";
      break;
  }
  os << "\n";
  if (!r.missing.empty()) {
    os << "missing:";
    for (const auto& m : r.missing) os << " " << m;
    os << "\n";
  }
  if (!r.detail.empty()) os << "detail: " << r.detail << "\n";
  return os.str();
}

std::string render_basechange_json(const BaseChangeCheck& c) {
  ojson j = ojson::object();
  j["kind"] = "basechange";
  j["base"] = report_to_json(c.base);
  j["pulled"] = report_to_json(c.pulled);
  j["types_match"] = c.types_match;
  j["euler_consistent"] = c.euler_consistent;
  j["ok"] = c.ok();
  j["notes"] = ojson::array();
  for (const auto& n : c.notes) j["notes"].push_back(n);
  return dump(j);
}

std::string render_basechange_table(const BaseChangeCheck& c) {
  std::ostringstream os;
  os << "base:\n";
  report_table_into(os, c.base);
  os << "pulled back:\n";
  report_table_into(os, c.pulled);
  os << "types match: " << yesno(c.types_match)
     << "  euler consistent: " << yesno(c.euler_consistent)
     << "  ok: " << yesno(c.ok()) << "\n";
  for (const auto& n : c.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string render_tower_json(const TowerGenusResult& r) {
  ojson j = ojson::object();
  j["kind"] = "tower-genus";
  j["covers"] = r.cover_count;
  j["genus"] = r.genus;
  if (r.obstruction)
    j["obstruction_genus"] = *r.obstruction;
  else
    j["obstruction_genus"] = nullptr;
  return dump(j);
}

std::string render_tower_table(const TowerGenusResult& r) {
  std::ostringstream os;
  os << "covers: " << r.cover_count << "\n";
  os << "genus: " << r.genus << "\n";
  if (r.obstruction) os << "obstruction genus: " << *r.obstruction << "\n";
  return os.str();
}

std::string render_jump_json(const JumpReport& r) {
  ojson j = ojson::object();
  j["kind"] = "rank-jumps";
  j["generic_rank"] = r.generic_rank;
  j["hits"] = ojson::array();
  for (const auto& h : r.hits) {
    ojson e = ojson::object();
    e["t"] = rational_to_string(h.t);
    e["certified_rank"] = h.certified_rank;
    e["generators"] = ojson::array();
    for (const auto& p : h.generators) e["generators"].push_back(point_to_json(p));
    j["hits"].push_back(e);
  }
  j["skipped_singular"] = ojson::array();
  for (const auto& s : r.skipped_singular) {
    ojson e = ojson::object();
    e["t"] = rational_to_string(s.t);
    e["fiber_type"] = s.fiber_type;
    j["skipped_singular"].push_back(e);
  }
  return dump(j);
}

std::string render_jump_table(const JumpReport& r) {
  std::ostringstream os;
  os << "generic rank: " << r.generic_rank << "\n";
  if (r.hits.empty()) {
    os << "no rank jumps certified\n";
  } else {
    for (const auto& h : r.hits) {
      os << "t = " << rational_to_string(h.t)
         << ": certified rank " << h.certified_rank << ", generators";
      for (const auto& p : h.generators) {
        if (p.infinite)
          os << " (inf)";
        else
          os << " (" << rational_to_string(p.x) << ", "
             << rational_to_string(p.y) << ")";
      }
      os << "\n";
    }
  }
  for (const auto& s : r.skipped_singular)
    os << "skipped singular fiber at t = " << rational_to_string(s.t) << " ("
       << s.fiber_type << ")\n";
  return os.str();
}

}  // namespace ellsurf
