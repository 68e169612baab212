#include "toricount/problem.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace toricount {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

// Integers arrive as JSON numbers (lossless up to 64 bits) or as decimal
// strings for anything larger.
Int to_int(const json& v, const char* where) {
  if (v.is_number_integer()) return Int(v.get<int64_t>());
  if (v.is_number_unsigned()) {
    std::ostringstream os;
    os << v.get<uint64_t>();
    return Int(os.str());
  }
  if (v.is_string()) {
    try {
      return Int(v.get<std::string>(), 10);
    } catch (const std::invalid_argument&) {
      bad(std::string(where) + ": malformed decimal string");
    }
  }
  if (v.is_number_float())
    bad(std::string(where) + ": non-integral number; write big integers as decimal strings");
  bad(std::string(where) + ": expected an integer");
}

int to_small_int(const json& v, const char* where) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    bad(std::string(where) + ": expected a small integer");
  int64_t x = v.get<int64_t>();
  if (x < -(1 << 30) || x > (1 << 30)) bad(std::string(where) + ": index out of range");
  return static_cast<int>(x);
}

IntVec to_int_vec(const json& v, const char* where) {
  if (!v.is_array()) bad(std::string(where) + ": expected an array of integers");
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_int(x, where));
  return out;
}

json from_int(const Int& v) {
  // 2^53 - 1, the largest integer every JSON consumer reads exactly
  static const Int kMaxExact = (Int(1) << 53) - 1;
  if (v <= kMaxExact && v >= -kMaxExact) return json(static_cast<int64_t>(mpz_get_si(v.get_mpz_t())));
  return json(v.get_str());
}

json from_int_vec(const IntVec& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(from_int(x));
  return a;
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("not valid JSON");
  return j;
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) bad("problem file must be a JSON object");

  ProblemFile p;
  if (!j.contains("rank")) bad("missing \"rank\"");
  p.rank = to_small_int(j["rank"], "rank");
  if (p.rank < 0) bad("rank must be nonnegative");

  if (!j.contains("rays") || !j["rays"].is_array()) bad("missing \"rays\" array");
  for (const auto& r : j["rays"]) p.rays.push_back(to_int_vec(r, "rays"));

  if (!j.contains("maximal_cones") || !j["maximal_cones"].is_array())
    bad("missing \"maximal_cones\" array");
  for (const auto& c : j["maximal_cones"]) {
    if (!c.is_array()) bad("maximal_cones: expected arrays of ray indices");
    std::vector<int> ids;
    for (const auto& x : c) ids.push_back(to_small_int(x, "maximal_cones"));
    p.maximal_cones.push_back(std::move(ids));
  }

  if (!j.contains("systems") || !j["systems"].is_array()) bad("missing \"systems\" array");
  for (const auto& s : j["systems"]) {
    if (!s.is_object()) bad("systems: expected objects");
    SystemInput in;
    if (!s.contains("support") || !s["support"].is_array())
      bad("system: missing \"support\" array");
    for (const auto& pt : s["support"]) in.support.push_back(to_int_vec(pt, "support"));

    const bool has_cartier = s.contains("cartier");
    const bool has_rayvals = s.contains("ray_values");
    if (has_cartier == has_rayvals)
      bad("system: give exactly one of \"cartier\" or \"ray_values\"");
    if (has_cartier) {
      if (!s["cartier"].is_array()) bad("cartier: expected an array");
      for (const auto& e : s["cartier"]) {
        if (!e.is_object() || !e.contains("cone") || !e.contains("m"))
          bad("cartier: expected {\"cone\": i, \"m\": [...]} entries");
        int pos = to_small_int(e["cone"], "cartier.cone");
        IntVec m = to_int_vec(e["m"], "cartier.m");
        auto [it, inserted] = in.cartier.emplace(pos, m);
        if (!inserted && it->second != m) bad("cartier: conflicting data for one cone");
      }
    } else {
      in.ray_values = to_int_vec(s["ray_values"], "ray_values");
    }
    p.systems.push_back(std::move(in));
  }

  if (j.contains("expected_total")) p.expected_total = to_int(j["expected_total"], "expected_total");
  return p;
}

std::string serialize_problem(const ProblemFile& p) {
  json j;
  j["rank"] = p.rank;
  j["rays"] = json::array();
  for (const auto& r : p.rays) j["rays"].push_back(from_int_vec(r));
  j["maximal_cones"] = p.maximal_cones;
  j["systems"] = json::array();
  for (const auto& s : p.systems) {
    json e;
    e["support"] = json::array();
    for (const auto& pt : s.support) e["support"].push_back(from_int_vec(pt));
    if (s.ray_values) {
      e["ray_values"] = from_int_vec(*s.ray_values);
    } else {
      e["cartier"] = json::array();
      for (const auto& [pos, m] : s.cartier)
        e["cartier"].push_back(json{{"cone", pos}, {"m", from_int_vec(m)}});
    }
    j["systems"].push_back(std::move(e));
  }
  if (p.expected_total) j["expected_total"] = from_int(*p.expected_total);
  return j.dump(2) + "\n";
}

BuiltProblem build_problem(const ProblemFile& p, bool validate_fan) {
  std::vector<LatticeVector> rays;
  for (const auto& r : p.rays) {
    if (static_cast<int>(r.size()) != p.rank) throw NotAFan("ray of wrong rank");
    rays.push_back(LatticeVector{r});
  }
  BuiltProblem out{build_fan(p.rank, std::move(rays), p.maximal_cones, validate_fan), {}};

  // The file's cone positions refer to its own maximal-cone list; map them
  // onto canonical cone ids.
  std::vector<int> position_to_id;
  std::vector<std::vector<int>> listed = p.maximal_cones;
  if (listed.empty()) listed.push_back({});
  for (auto& l : listed) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    int id = out.fan.id_of(l);
    if (id < 0) throw InternalError("listed maximal cone missing from the built fan");
    position_to_id.push_back(id);
  }

  for (const auto& s : p.systems) {
    std::vector<Covector> support;
    for (const auto& pt : s.support) {
      if (static_cast<int>(pt.size()) != p.rank)
        throw ParseError("support character of wrong rank");
      support.push_back(Covector{pt});
    }
    SupportFunction psi;
    if (s.ray_values) {
      psi = support_from_ray_values(out.fan, *s.ray_values);
    } else {
      std::map<int, Covector> cartier;
      for (const auto& [pos, m] : s.cartier) {
        if (pos < 0 || pos >= static_cast<int>(position_to_id.size()))
          throw ParseError("cartier cone position out of range");
        auto [it, inserted] = cartier.emplace(position_to_id[pos], Covector{m});
        if (!inserted && !(it->second == Covector{m}))
          throw ParseError("cartier: conflicting data for one cone");
      }
      psi = make_support_function(out.fan, std::move(cartier));
    }
    out.data.push_back(make_system_datum(std::move(support), std::move(psi)));
  }
  return out;
}

SupportsFile parse_supports(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) bad("supports file must be a JSON object");
  SupportsFile f;
  if (!j.contains("rank")) bad("missing \"rank\"");
  f.rank = to_small_int(j["rank"], "rank");
  if (f.rank < 0) bad("rank must be nonnegative");
  if (!j.contains("supports") || !j["supports"].is_array()) bad("missing \"supports\" array");
  for (const auto& s : j["supports"]) {
    if (!s.is_array()) bad("supports: expected arrays of points");
    std::vector<Covector> pts;
    for (const auto& pt : s) {
      IntVec v = to_int_vec(pt, "supports");
      if (static_cast<int>(v.size()) != f.rank) bad("support point of wrong rank");
      pts.push_back(Covector{std::move(v)});
    }
    f.supports.push_back(make_point_set(f.rank, std::move(pts)));
  }
  return f;
}

namespace {

const char* case_name(KCase k) {
  switch (k) {
    case KCase::AllPositive:
      return "all_positive";
    case KCase::NegativeDefect:
      return "negative_defect";
    case KCase::ZeroDefect:
      return "zero_defect";
  }
  return "unknown";
}

json points_to_json(const PointSet& s) {
  json a = json::array();
  for (const auto& p : s.points) a.push_back(from_int_vec(p.coords));
  return a;
}

}  // namespace

std::string report_to_json(const ComponentReport& report, const Fan& f) {
  json j;
  j["schema_version"] = 1;
  j["rank"] = report.rank;
  j["total"] = from_int(report.total);
  json orbits = json::array();
  for (const auto& r : report.records) {
    json o;
    o["cone"] = r.cone_id;
    o["rays"] = f.cones[r.cone_id].ray_ids;
    o["cone_dim"] = r.cone_dim;
    o["orbit_dim"] = r.orbit_dim;
    o["degenerate_systems"] = r.degenerate;
    o["d_value"] = r.d_value;
    o["selected"] = r.selected;
    if (r.k) {
      json k;
      k["case"] = case_name(r.k->kase);
      k["j0"] = r.k->j0;
      k["value"] = from_int(r.k->value);
      json basis = json::array();
      for (const auto& b : r.k->lattice_basis) basis.push_back(from_int_vec(b.coords));
      k["lattice_basis"] = basis;
      json restricted = json::array();
      for (const auto& [i, rs] : r.restricted)
        restricted.push_back(json{{"system", i}, {"points", points_to_json(rs.points)}});
      k["restricted_supports"] = restricted;
      o["khovanskii"] = std::move(k);
    }
    o["contribution"] = from_int(r.contribution);
    orbits.push_back(std::move(o));
  }
  j["orbits"] = std::move(orbits);
  return j.dump(2) + "\n";
}

std::string report_to_text(const ComponentReport& report, const Fan& f, bool explain) {
  std::ostringstream os;
  os << "total components: " << report.total.get_str() << "\n";
  if (!explain) return os.str();
  os << "\ncone  rays            dim  orbit  D(sigma)      d  sel  case             value\n";
  for (const auto& r : report.records) {
    std::ostringstream rays;
    rays << "{";
    const auto& ids = f.cones[r.cone_id].ray_ids;
    for (size_t i = 0; i < ids.size(); ++i) rays << (i ? "," : "") << ids[i];
    rays << "}";
    std::ostringstream dset;
    dset << "{";
    for (size_t i = 0; i < r.degenerate.size(); ++i) dset << (i ? "," : "") << r.degenerate[i];
    dset << "}";
    os << std::left << std::setw(6) << r.cone_id << std::setw(16) << rays.str() << std::setw(5)
       << r.cone_dim << std::setw(7) << r.orbit_dim << std::setw(12) << dset.str() << std::right
       << std::setw(3) << r.d_value << "  " << (r.selected ? "  *" : "   ") << "  " << std::left
       << std::setw(17) << (r.k ? case_name(r.k->kase) : "-")
       << (r.k ? r.contribution.get_str() : std::string("-")) << "\n";
  }
  return os.str();
}

}  // namespace toricount
