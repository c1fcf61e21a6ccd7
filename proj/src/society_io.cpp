#include "circpierce/society_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace circpierce {

namespace {

using nlohmann::json;

const std::string& string_field(const json& obj, const char* key, std::size_t index) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw InputError("arc " + std::to_string(index) + ": field '" + key + "' must be a string");
  }
  return it->get_ref<const std::string&>();
}

template <CircleScalar T>
T parse_scalar(const std::string& text) {
  if constexpr (std::same_as<T, Rational>) {
    return parse_rational(text);
  } else {
    return parse_decimal(text);
  }
}

template <CircleScalar T>
Society<T> build(const json& arcs, std::string name) {
  std::vector<Arc<T>> out;
  out.reserve(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const json& a = arcs[i];
    const T left = parse_scalar<T>(string_field(a, "left", i));
    const T length = parse_scalar<T>(string_field(a, "length", i));
    Closure closure = Closure::closed;
    if (a.contains("closure")) {
      if (!a["closure"].is_string()) throw InputError("arc " + std::to_string(i) + ": bad closure");
      closure = parse_closure(a["closure"].get<std::string>());
    }
    try {
      out.emplace_back(Coord<T>::normalize(left), length, closure);
    } catch (const DomainError& e) {
      throw InputError("arc " + std::to_string(i) + ": " + e.what());
    }
  }
  return Society<T>(std::move(out), std::move(name));
}

}  // namespace

AnySociety society_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("society file must hold a JSON object");
  const auto arcs_it = doc.find("arcs");
  if (arcs_it == doc.end() || !arcs_it->is_array()) {
    throw InputError("society file needs an \"arcs\" array");
  }
  const json& arcs = *arcs_it;
  if (arcs.empty()) throw InputError("society has no arcs");

  std::string name;
  if (const auto n = doc.find("name"); n != doc.end()) {
    if (!n->is_string()) throw InputError("\"name\" must be a string");
    name = n->get<std::string>();
  }

  std::optional<NumericKind> file_kind;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (!arcs[i].is_object()) throw InputError("arc " + std::to_string(i) + " is not an object");
    for (const char* key : {"left", "length"}) {
      const LiteralClass cls = classify_literal(string_field(arcs[i], key, i));
      if (cls == LiteralClass::integer) continue;
      const NumericKind k = cls == LiteralClass::rational ? NumericKind::rational : NumericKind::floating;
      if (file_kind && *file_kind != k) {
        throw KindMismatch("society file mixes rational and decimal coordinates");
      }
      file_kind = k;
    }
  }

  if (file_kind.value_or(NumericKind::rational) == NumericKind::rational) {
    return build<Rational>(arcs, std::move(name));
  }
  return build<double>(arcs, std::move(name));
}

AnySociety parse_society(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  return society_from_json(doc);
}

AnySociety load_society(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_society(buf.str());
}

template <CircleScalar T>
nlohmann::json to_json(const Society<T>& society) {
  json arcs = json::array();
  for (const auto& a : society.arcs()) {
    arcs.push_back({{"left", format_scalar(a.left().value())},
                    {"length", format_scalar(a.length())},
                    {"closure", std::string(to_string(a.closure()))}});
  }
  json doc = json::object();
  if (!society.name().empty()) doc["name"] = society.name();
  doc["arcs"] = std::move(arcs);
  return doc;
}

template nlohmann::json to_json(const Society<Rational>&);
template nlohmann::json to_json(const Society<double>&);

nlohmann::json to_json(const AnySociety& society) {
  return std::visit([](const auto& s) { return to_json(s); }, society);
}

std::string dump_society(const AnySociety& society) { return to_json(society).dump(2); }

}  // namespace circpierce
