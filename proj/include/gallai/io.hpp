#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gallai/core.hpp"

namespace gallai {

struct TemplateFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Locale-independent shortest-faithful rendering at 9 significant digits.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

/// Canonical serialization: {"n":N,"classes":[E1,E2,E3]} with each E a
/// lexicographically sorted list of [u,v], u < v, no whitespace. Byte-stable
/// for equal templates.
inline std::string to_json(const ColouringTemplate& t) {
  std::string out = "{\"n\":" + std::to_string(t.vertex_count()) + ",\"classes\":[";
  for (int c = 0; c < 3; ++c) {
    if (c) out += ',';
    out += '[';
    bool first = true;
    for (const Edge& e : t.class_edges(c)) {
      if (!first) out += ',';
      first = false;
      out += '[' + std::to_string(e.first) + ',' + std::to_string(e.second) + ']';
    }
    out += ']';
  }
  out += "]}";
  return out;
}

inline ColouringTemplate template_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw TemplateFormatError(std::string("template parse error: ") + e.what());
  }
  if (!doc.is_object()) throw TemplateFormatError("template document must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw TemplateFormatError("field \"n\": missing or not an integer");
  long long n = doc["n"].get<long long>();
  if (n < 0 || n > ColouringTemplate::kMaxVertices)
    throw TemplateFormatError("field \"n\": out of range");
  if (!doc.contains("classes") || !doc["classes"].is_array() || doc["classes"].size() != 3)
    throw TemplateFormatError("field \"classes\": expected an array of 3 edge lists");
  std::array<std::vector<Edge>, 3> classes;
  for (std::size_t c = 0; c < 3; ++c) {
    const auto& lst = doc["classes"][c];
    if (!lst.is_array())
      throw TemplateFormatError("classes[" + std::to_string(c) + "]: expected an array");
    for (std::size_t i = 0; i < lst.size(); ++i) {
      const auto& pr = lst[i];
      std::string where = "classes[" + std::to_string(c) + "][" + std::to_string(i) + "]";
      if (!pr.is_array() || pr.size() != 2 || !pr[0].is_number_integer() || !pr[1].is_number_integer())
        throw TemplateFormatError(where + ": expected [u,v] with integer u,v");
      long long u = pr[0].get<long long>(), v = pr[1].get<long long>();
      if (u >= v) throw TemplateFormatError(where + ": expected u < v");
      if (u < 0 || v >= n) throw TemplateFormatError(where + ": vertex out of range");
      classes[c].emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    auto sorted = classes[c];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw TemplateFormatError("classes[" + std::to_string(c) + "]: duplicate pair");
  }
  return ColouringTemplate(static_cast<int>(n), std::move(classes));
}

inline ColouringTemplate read_template_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TemplateFormatError("cannot open template file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return template_from_json(ss.str());
}

inline void write_template_file(const ColouringTemplate& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << to_json(t) << '\n';
}

}  // namespace gallai
