#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "costgeom/betweenness.hpp"
#include "costgeom/chains.hpp"
#include "costgeom/cost_space.hpp"
#include "costgeom/dress.hpp"
#include "costgeom/pretop.hpp"
#include "costgeom/tightspan.hpp"

namespace costgeom::io {

// Insertion-ordered objects, so label-keyed maps print in label order.
using json = nlohmann::ordered_json;

/// Cost matrix as read from disk, before the numeric mode is fixed. Entries
/// keep their source text ("inf", "3/2", "0.25").
struct RawSpace {
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> entries;
  std::optional<NumericMode> mode;
};

inline std::optional<NumericMode> parse_mode(const std::string& text) {
  if (text == "rational" || text == "exact") return NumericMode::kRational;
  if (text == "float" || text == "double") return NumericMode::kFloat;
  throw InputError("unknown numeric mode '" + text + "'");
}

inline std::string mode_name(NumericMode m) {
  return m == NumericMode::kRational ? "rational" : "float";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

/// A JSON argument given inline (starting with '{' or '[') or as a file path.
inline json json_argument(const std::string& arg, const std::string& what) {
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    return parse_json(arg, what);
  }
  return parse_json(read_file(arg), what);
}

inline std::string entry_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return v.dump();
  if (v.is_null()) return "inf";
  throw InputError("cost entry must be a number or a string, got " + v.dump());
}

inline RawSpace raw_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("cost space must be a JSON object");
  if (!doc.contains("costs") || !doc["costs"].is_array()) {
    throw InputError("cost space needs a \"costs\" matrix");
  }
  RawSpace raw;
  for (const auto& row : doc["costs"]) {
    if (!row.is_array()) throw InputError("cost rows must be arrays");
    std::vector<std::string> cells;
    for (const auto& v : row) cells.push_back(entry_text(v));
    raw.entries.push_back(std::move(cells));
  }
  if (doc.contains("labels")) {
    for (const auto& l : doc["labels"]) {
      if (!l.is_string()) throw InputError("labels must be strings");
      raw.labels.push_back(l.get<std::string>());
    }
  } else {
    raw.labels = CostSpace<double>::default_labels(raw.entries.size());
  }
  if (doc.contains("mode")) raw.mode = parse_mode(doc["mode"].get<std::string>());
  return raw;
}

/// One CSV record; double quotes escape separators and "" is a literal quote.
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  if (quoted) throw InputError("unterminated quote in CSV line");
  cells.push_back(cell);
  for (auto& c : cells) {
    auto b = c.find_first_not_of(' ');
    auto e = c.find_last_not_of(' ');
    c = b == std::string::npos ? std::string() : c.substr(b, e - b + 1);
  }
  return cells;
}

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

/// Header row of labels then the matrix. A header with a leading empty cell
/// means every body row starts with its label, which is skipped.
inline RawSpace raw_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> records;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    records.push_back(split_csv_line(line));
  }
  if (records.empty()) throw InputError("empty CSV input");
  RawSpace raw;
  raw.labels = records.front();
  bool row_labels = !raw.labels.empty() && raw.labels.front().empty();
  if (row_labels) raw.labels.erase(raw.labels.begin());
  for (std::size_t r = 1; r < records.size(); ++r) {
    auto cells = records[r];
    if (row_labels) {
      if (cells.empty()) throw InputError("CSV row without a label");
      cells.erase(cells.begin());
    }
    raw.entries.push_back(std::move(cells));
  }
  return raw;
}

inline RawSpace read_raw(const std::string& path) {
  std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return raw_from_json(parse_json(text, path));
  return raw_from_csv(text);
}

template <class T>
CostSpace<T> to_space(const RawSpace& raw, double tolerance) {
  std::vector<std::vector<Extended<T>>> rows;
  for (const auto& r : raw.entries) {
    std::vector<Extended<T>> row;
    for (const auto& cell : r) row.push_back(parse_extended<T>(cell));
    rows.push_back(std::move(row));
  }
  return CostSpace<T>(raw.labels, std::move(rows), tolerance);
}

/// 12 significant digits for floats; exact "p/q" strings for rationals.
template <class T>
json value_json(const T& x) {
  if constexpr (kIsExact<T>) {
    return ScalarTraits<T>::format(x);
  } else {
    if (x == 0.0) return 0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double rounded = std::strtod(buf, nullptr);
    if (rounded == std::floor(rounded) && std::abs(rounded) < 1e15) {
      return static_cast<long long>(rounded);
    }
    return rounded;
  }
}

template <class T>
json value_json(const Extended<T>& x) {
  return x.is_inf() ? json("inf") : value_json(x.value());
}

template <class T>
json space_json(const CostSpace<T>& space) {
  json costs = json::array();
  for (Index i = 0; i < space.size(); ++i) {
    json row = json::array();
    for (Index j = 0; j < space.size(); ++j) row.push_back(value_json(space(i, j)));
    costs.push_back(std::move(row));
  }
  return {{"labels", space.labels()}, {"costs", costs}, {"mode", mode_name(ScalarTraits<T>::kMode)}};
}

template <class T>
std::string space_csv(const CostSpace<T>& space) {
  std::string out;
  for (Index j = 0; j < space.size(); ++j) out += (j ? "," : "") + csv_cell(space.label(j));
  out += '\n';
  for (Index i = 0; i < space.size(); ++i) {
    for (Index j = 0; j < space.size(); ++j) out += (j ? "," : "") + format(space(i, j));
    out += '\n';
  }
  return out;
}

inline json triple_json(const std::vector<std::string>& ground, const Triple& t) {
  return json::array({ground[t[0]], ground[t[1]], ground[t[2]]});
}

/// Triples in label order (the order of the ground).
inline json relation_json(const BetweennessRelation& rel) {
  std::vector<Triple> sorted(rel.triples().begin(), rel.triples().end());
  std::sort(sorted.begin(), sorted.end());
  json out = json::array();
  for (const auto& t : sorted) out.push_back(triple_json(rel.ground(), t));
  return out;
}

inline Index lookup(const std::vector<std::string>& ground, const std::string& label) {
  auto it = std::find(ground.begin(), ground.end(), label);
  if (it == ground.end()) throw InputError("unknown label '" + label + "'");
  return static_cast<Index>(it - ground.begin());
}

inline GroupWord word_from_json(const json& doc, const std::vector<std::string>& ground) {
  if (!doc.is_array()) throw InputError("a word is a JSON array of letters");
  GroupWord w;
  for (const auto& l : doc) {
    if (!l.is_object() || !l.contains("from") || !l.contains("to")) {
      throw InputError("letters need \"from\" and \"to\"");
    }
    int exp = l.value("exp", 1);
    Index s = lookup(ground, l["from"].get<std::string>());
    Index t = lookup(ground, l["to"].get<std::string>());
    if (s == t) throw InputError("letter with equal endpoints");
    if (exp != 1 && exp != -1) throw InputError("letter exponent must be 1 or -1");
    w.letters.push_back({{s, t}, exp});
  }
  return w;
}

inline json word_json(const GroupWord& w, const std::vector<std::string>& ground) {
  json out = json::array();
  for (const auto& l : w.letters) {
    out.push_back({{"from", ground[l.gen.source]}, {"to", ground[l.gen.target]}, {"exp", l.exp}});
  }
  return out;
}

inline RewriteStructure structure_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("type")) throw InputError("structure needs a \"type\"");
  const std::string type = doc["type"].get<std::string>();
  if (type == "cycle") {
    if (!doc.contains("n")) throw InputError("cycle structure needs \"n\"");
    return RewriteStructure::cycle(doc["n"].get<Index>());
  }
  if (type != "digraph") throw InputError("unknown structure type '" + type + "'");
  std::vector<std::string> vertices;
  if (doc.contains("vertices")) vertices = doc["vertices"].get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> named;
  for (const auto& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw InputError("edges are [from, to] pairs");
    named.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  if (!doc.contains("vertices")) {
    for (const auto& [a, b] : named) {
      for (const auto* v : {&a, &b}) {
        if (std::find(vertices.begin(), vertices.end(), *v) == vertices.end()) vertices.push_back(*v);
      }
    }
  }
  std::vector<std::pair<Index, Index>> edges;
  for (const auto& [a, b] : named) edges.emplace_back(lookup(vertices, a), lookup(vertices, b));
  return RewriteStructure::digraph(std::move(vertices), edges);
}

inline Subset subset_from_labels(const std::vector<std::string>& ground,
                                 const std::vector<std::string>& labels) {
  Subset s(ground.size());
  for (const auto& l : labels) s.set(lookup(ground, l));
  return s;
}

inline json subset_json(const std::vector<std::string>& ground, const Subset& s) {
  json out = json::array();
  for (auto i = s.find_first(); i != Subset::npos; i = s.find_next(i)) out.push_back(ground[i]);
  return out;
}

inline json preclosure_json(const AdditivePreclosure& pre) {
  json step = json::array();
  for (Index i = 0; i < pre.size(); ++i) {
    json row = json::array();
    for (Index j = 0; j < pre.size(); ++j) row.push_back(pre.step(i, j));
    step.push_back(std::move(row));
  }
  return {{"labels", pre.ground()}, {"step", step}};
}

/// {"labels": [...], "step": [[bool]]}, or a rule descriptor
/// {"rule": "cost", "radius": r, "space": {cost space}},
/// {"rule": "digraph", "labels": [...], "edges": [[a, b], ...]},
/// {"rule": "identity", "labels": [...]}.
template <class T>
AdditivePreclosure preclosure_from_json(const json& doc, double tolerance) {
  if (!doc.is_object()) throw InputError("preclosure must be a JSON object");
  if (doc.contains("step")) {
    auto labels = doc.at("labels").get<std::vector<std::string>>();
    const Index n = labels.size();
    const auto& step = doc["step"];
    if (!step.is_array() || step.size() != n) throw InputError("step matrix must be n x n");
    std::vector<Subset> rows;
    for (Index i = 0; i < n; ++i) {
      if (!step[i].is_array() || step[i].size() != n) throw InputError("step matrix must be n x n");
      Subset row(n);
      for (Index j = 0; j < n; ++j) {
        const auto& v = step[i][j];
        if (v.is_boolean() ? v.get<bool>() : v.get<int>() != 0) row.set(j);
      }
      rows.push_back(std::move(row));
    }
    return AdditivePreclosure(std::move(labels), std::move(rows));
  }
  const std::string rule = doc.value("rule", std::string());
  if (rule == "cost") {
    auto space = to_space<T>(raw_from_json(doc.at("space")), tolerance);
    return preclosure_from_cost(space, parse_extended<T>(entry_text(doc.at("radius"))).value());
  }
  if (rule == "digraph") {
    auto labels = doc.at("labels").get<std::vector<std::string>>();
    std::vector<std::pair<Index, Index>> edges;
    for (const auto& e : doc.at("edges")) {
      edges.emplace_back(lookup(labels, e.at(0).get<std::string>()),
                         lookup(labels, e.at(1).get<std::string>()));
    }
    return preclosure_from_digraph(std::move(labels), edges);
  }
  if (rule == "identity") return AdditivePreclosure::identity(doc.at("labels").get<std::vector<std::string>>());
  throw InputError("unknown preclosure rule '" + rule + "'");
}

template <class T>
std::vector<Extended<T>> function_from_json(const json& doc, const std::vector<std::string>& labels) {
  if (!doc.is_object()) throw InputError("a function is a JSON object label -> value");
  std::vector<Extended<T>> out;
  for (const auto& l : labels) {
    if (!doc.contains(l)) throw InputError("function has no value at '" + l + "'");
    out.push_back(parse_extended<T>(entry_text(doc[l])));
  }
  for (const auto& [key, value] : doc.items()) lookup(labels, key);
  return out;
}

template <class T>
json function_json(const std::vector<Extended<T>>& h, const std::vector<std::string>& labels) {
  json out = json::object();
  for (Index i = 0; i < labels.size(); ++i) out[labels[i]] = value_json(h[i]);
  return out;
}

template <class T>
FunctionPair<T> pair_from_json(const json& doc, const std::vector<std::string>& labels) {
  if (!doc.is_object() || !doc.contains("f") || !doc.contains("g")) {
    throw InputError("a pair is {\"f\": {...}, \"g\": {...}}");
  }
  return {function_from_json<T>(doc["f"], labels), function_from_json<T>(doc["g"], labels)};
}

template <class T>
json pair_json(const FunctionPair<T>& pair, const std::vector<std::string>& labels) {
  return {{"f", function_json(pair.f, labels)}, {"g", function_json(pair.g, labels)}};
}

inline Chain chain_from_json(const json& doc, const std::vector<std::string>& labels) {
  if (!doc.is_array()) throw InputError("a chain is a JSON array of labels");
  Chain c;
  for (const auto& l : doc) c.points.push_back(lookup(labels, l.get<std::string>()));
  if (c.points.empty()) throw InputError("empty chain");
  return c;
}

inline json chain_json(const Chain& c, const std::vector<std::string>& labels) {
  json out = json::array();
  for (Index i : c.points) out.push_back(labels[i]);
  return out;
}

}  // namespace costgeom::io
