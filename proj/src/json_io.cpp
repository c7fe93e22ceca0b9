#include "crepant/json_io.hpp"

#include <fstream>
#include <sstream>

#include "crepant/errors.hpp"

namespace crepant {

namespace {

const Int kJsonIntLimit = Int(1) << 53;

bool valid_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Json int_to_json(const Int& x) {
  if (abs(x) < kJsonIntLimit) {
    return Json(static_cast<std::int64_t>(x));
  }
  return Json(to_string(x));
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return Int(j.get<std::int64_t>());
  }
  if (j.is_number_unsigned()) {
    return Int(j.get<std::uint64_t>());
  }
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (!valid_integer_literal(s)) {
      throw ParseError("not an integer literal: \"" + s + "\"");
    }
    return Int(s);
  }
  throw ParseError("expected an integer (number or decimal string), got " +
                   std::string(j.type_name()));
}

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_integer_literal(s)) {
      throw ParseError("not a rational literal: \"" + s + "\"");
    }
    return Rat(Int(s));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!valid_integer_literal(num) || !valid_integer_literal(den) ||
      den.empty() || den[0] == '-') {
    throw ParseError("not a rational literal: \"" + s + "\"");
  }
  Int d(den);
  if (d == 0) throw ParseError("zero denominator in \"" + s + "\"");
  return Rat(Int(num), d);
}

Json fan_to_json(const Fan& f) {
  Json j;
  j["dim"] = f.dim;
  if (!f.name.empty()) j["name"] = f.name;

  std::vector<IntVec> rays = f.rays();
  Json jrays = Json::array();
  for (const IntVec& r : rays) {
    Json jr = Json::array();
    for (const Int& x : r) jr.push_back(int_to_json(x));
    jrays.push_back(std::move(jr));
  }
  j["rays"] = std::move(jrays);

  Json jcones = Json::array();
  for (const Cone& c : f.cones) {
    Json jc = Json::array();
    for (const IntVec& g : c.generators) {
      std::size_t idx = 0;
      while (idx < rays.size() && rays[idx] != g) ++idx;
      if (idx == rays.size()) throw std::logic_error("cone generator missing from ray list");
      jc.push_back(idx);
    }
    jcones.push_back(std::move(jc));
  }
  j["cones"] = std::move(jcones);
  return j;
}

Fan fan_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("fan file must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw ParseError("missing or non-integer \"dim\"");
  }
  std::int64_t dim = j["dim"].get<std::int64_t>();
  if (dim < 1 || dim > 64) throw ParseError("\"dim\" out of range");

  if (!j.contains("rays") || !j["rays"].is_array()) {
    throw ParseError("missing \"rays\" array");
  }
  std::vector<IntVec> rays;
  for (const Json& jr : j["rays"]) {
    if (!jr.is_array() || jr.size() != static_cast<std::size_t>(dim)) {
      throw ParseError("each ray must be an array of length dim");
    }
    IntVec r;
    for (const Json& x : jr) r.push_back(int_from_json(x));
    rays.push_back(std::move(r));
  }

  if (!j.contains("cones") || !j["cones"].is_array()) {
    throw ParseError("missing \"cones\" array");
  }
  Fan f;
  f.dim = static_cast<int>(dim);
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("\"name\" must be a string");
    f.name = j["name"].get<std::string>();
  }
  for (const Json& jc : j["cones"]) {
    if (!jc.is_array() || jc.empty()) {
      throw ParseError("each cone must be a nonempty array of ray indices");
    }
    Cone c;
    c.dim = f.dim;
    for (const Json& jx : jc) {
      if (!jx.is_number_integer() && !jx.is_number_unsigned()) {
        throw ParseError("cone entries must be ray indices");
      }
      std::int64_t idx = jx.get<std::int64_t>();
      if (idx < 0 || idx >= static_cast<std::int64_t>(rays.size())) {
        throw ParseError("ray index out of range: " + std::to_string(idx));
      }
      c.generators.push_back(rays[static_cast<std::size_t>(idx)]);
    }
    f.cones.push_back(std::move(c));
  }
  if (f.cones.empty()) throw ParseError("fan has no cones");
  return f;
}

std::string fan_file_text(const Fan& f) {
  Json j = fan_to_json(f);
  std::string s = "{\n  \"dim\": " + j["dim"].dump() + ",\n";
  if (j.contains("name")) s += "  \"name\": " + j["name"].dump() + ",\n";
  auto inline_row = [](const Json& row) {
    std::string t = "[";
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) t += ", ";
      t += row[i].dump();
    }
    return t + "]";
  };
  auto inline_list = [&](const Json& rows) {
    std::string t = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) t += ", ";
      t += inline_row(rows[i]);
    }
    return t + "]";
  };
  s += "  \"rays\": " + inline_list(j["rays"]) + ",\n";
  s += "  \"cones\": " + inline_list(j["cones"]) + "\n}\n";
  return s;
}

Fan load_fan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return fan_from_json(j);
}

void save_fan(const Fan& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << fan_file_text(f);
}

}  // namespace crepant
