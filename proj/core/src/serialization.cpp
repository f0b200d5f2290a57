#include "nilharm/serialization.hpp"

#include <json.hpp>

#include "nilharm/errors.hpp"

namespace nilharm {

namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw InvalidArgument("group element JSON must be an object");
    return j;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("invalid group element JSON: ") + e.what());
  }
}

std::vector<double> numbers(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const json& a = j.at(key);
  if (!a.is_array()) throw InvalidArgument(std::string("\"") + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& v : a) {
    if (!v.is_number()) throw InvalidArgument(std::string("\"") + key + "\" must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

GroupSpec spec_of(const json& j) {
  if (!j.contains("m") || !j.at("m").is_number_integer()) {
    throw InvalidArgument("group element JSON needs an integer \"m\"");
  }
  return GroupSpec(j.at("m").get<int>());
}

}  // namespace

std::vector<double> row_major_entries(const UnipotentElement& g) {
  std::vector<double> out;
  const int m = g.spec().m();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) out.push_back(g.at(i, j));
  return out;
}

UnipotentElement from_row_major_entries(const GroupSpec& spec, const std::vector<double>& entries) {
  if (entries.size() != static_cast<std::size_t>(spec.dim_n())) {
    throw InvalidArgument("expected " + std::to_string(spec.dim_n()) + " entries, got " +
                          std::to_string(entries.size()));
  }
  UnipotentElement g(spec);
  std::size_t k = 0;
  for (int i = 0; i < spec.m(); ++i)
    for (int j = i + 1; j < spec.m(); ++j) g.set(i, j, entries[k++]);
  return g;
}

std::string to_json(const UnipotentElement& g) {
  json j;
  j["m"] = g.spec().m();
  j["entries"] = row_major_entries(g);
  return j.dump();
}

std::string to_json(const SolvableElement& p) {
  json j;
  j["m"] = p.spec().m();
  j["entries"] = row_major_entries(p.n);
  j["log_a"] = std::vector<double>(p.a.log_coords().begin(), p.a.log_coords().end());
  return j.dump();
}

UnipotentElement unipotent_from_json(std::string_view text) {
  const json j = parse(text);
  return from_row_major_entries(spec_of(j), numbers(j, "entries"));
}

SolvableElement solvable_from_json(std::string_view text) {
  const json j = parse(text);
  const GroupSpec spec = spec_of(j);
  UnipotentElement n = from_row_major_entries(spec, numbers(j, "entries"));
  if (!j.contains("log_a")) return {n, DiagonalElement(spec)};
  const std::vector<double> t = numbers(j, "log_a");
  return {n, DiagonalElement(spec, t)};
}

}  // namespace nilharm
