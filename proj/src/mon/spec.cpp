#include "ltlrl/mon/spec.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ltlrl/errors.hpp"
#include "ltlrl/logic/parser.hpp"

namespace ltlrl::mon {

using nlohmann::json;

std::string to_string(CostMode m) {
  return m == CostMode::Pulse ? "pulse" : "sustained";
}

CostMode cost_mode_from_string(const std::string& s) {
  if (s == "pulse") return CostMode::Pulse;
  if (s == "sustained") return CostMode::Sustained;
  throw ConfigError("cost_mode must be \"pulse\" or \"sustained\", got \"" + s + "\"");
}

double SpecSet::aggregated_budget() const {
  double d = 0.0;
  for (const auto& s : specs) d += s.weight * s.budget;
  return d;
}

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!known.count(key)) throw ConfigError("unknown key \"" + key + "\" in " + where);
}

double nonnegative(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError(std::string(key) + " must be a number");
  double v = obj[key].get<double>();
  if (!(v >= 0.0)) throw ConfigError(std::string(key) + " must be nonnegative");
  return v;
}

}  // namespace

SpecSet parse_spec_set(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("spec file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("spec file must be a JSON object");
  reject_unknown_keys(doc, {"alphabet", "specs"}, "spec file");
  if (!doc.contains("specs") || !doc["specs"].is_array() || doc["specs"].empty())
    throw ConfigError("spec file needs a nonempty \"specs\" array");

  SpecSet out;
  if (doc.contains("alphabet")) {
    if (!doc["alphabet"].is_array()) throw ConfigError("\"alphabet\" must be an array");
    for (const auto& n : doc["alphabet"]) {
      if (!n.is_string()) throw ConfigError("\"alphabet\" entries must be strings");
      out.alphabet.add(n.get<std::string>());
    }
  } else {
    // Collect propositions from the formulas themselves, in first-use order.
    for (const auto& s : doc["specs"])
      if (s.is_object() && s.contains("formula") && s["formula"].is_string()) {
        logic::Alphabet inferred = logic::infer_alphabet(s["formula"].get<std::string>());
        for (const auto& name : inferred.names()) out.alphabet.add(name);
      }
  }

  std::set<std::string> ids;
  for (const auto& s : doc["specs"]) {
    if (!s.is_object()) throw ConfigError("each spec must be a JSON object");
    reject_unknown_keys(s, {"id", "formula", "weight", "budget", "cost_mode"}, "spec entry");
    if (!s.contains("id") || !s["id"].is_string())
      throw ConfigError("each spec needs a string \"id\"");
    if (!s.contains("formula") || !s["formula"].is_string())
      throw ConfigError("each spec needs a string \"formula\"");

    Spec spec;
    spec.id = s["id"].get<std::string>();
    if (!ids.insert(spec.id).second)
      throw ConfigError("duplicate spec id \"" + spec.id + "\"");
    spec.formula = logic::parse(s["formula"].get<std::string>(), out.alphabet);
    spec.weight = nonnegative(s, "weight", 1.0);
    spec.budget = nonnegative(s, "budget", 0.0);
    if (s.contains("cost_mode")) {
      if (!s["cost_mode"].is_string()) throw ConfigError("cost_mode must be a string");
      spec.cost_mode = cost_mode_from_string(s["cost_mode"].get<std::string>());
    }
    out.specs.push_back(std::move(spec));
  }
  return out;
}

SpecSet load_spec_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_set(buf.str());
}

std::vector<Letter> parse_trace(std::istream& in, const logic::Alphabet& alphabet) {
  std::vector<Letter> out;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    Letter l;
    std::istringstream toks(line);
    std::string name;
    while (toks >> name) {
      auto i = alphabet.find(name);
      if (!i) throw UnknownProposition(name, line_no);
      l.set(*i);
    }
    out.push_back(l);
  }
  return out;
}

}  // namespace ltlrl::mon
