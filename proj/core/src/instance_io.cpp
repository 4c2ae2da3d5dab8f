// Copyright 2026 The SCARP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scarp/instance_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <regex>
#include <sstream>

namespace scarp {

namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
    size_t start = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
    if (k > start) out.push_back(line.substr(start, k - start));
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long> to_long(std::string_view s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

Instance parse_canonical(std::string_view text) {
  static constexpr std::string_view kKeys[] = {"NAME", "VERTICES", "CAPACITY", "DEPOT", "EDGES"};
  std::string name;
  long n = 0;
  double capacity = 0.0;
  long depot = 0;
  long m = 0;
  size_t key_index = 0;
  std::vector<Edge> edges;
  int line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto tok = tokens(line);
    if (key_index < std::size(kKeys)) {
      const std::string_view key = kKeys[key_index];
      if (tok[0] != key)
        throw ParseError(line_no, "expected " + std::string(key) + ", found '" +
                                      std::string(tok[0]) + "'");
      if (tok.size() != 2) throw ParseError(line_no, std::string(key) + " takes one value");
      bool ok = true;
      switch (key_index) {
        case 0:
          name = std::string(tok[1]);
          break;
        case 1:
          ok = static_cast<bool>(to_long(tok[1]));
          if (ok) n = *to_long(tok[1]);
          if (ok && n <= 0) throw ParseError(line_no, "VERTICES must be positive");
          break;
        case 2:
          ok = static_cast<bool>(to_double(tok[1]));
          if (ok) capacity = *to_double(tok[1]);
          if (ok && !(capacity > 0.0)) throw ParseError(line_no, "CAPACITY must be positive");
          break;
        case 3:
          ok = static_cast<bool>(to_long(tok[1]));
          if (ok) depot = *to_long(tok[1]);
          if (ok && (depot < 1 || depot > n)) throw ParseError(line_no, "DEPOT out of range");
          break;
        case 4:
          ok = static_cast<bool>(to_long(tok[1]));
          if (ok) m = *to_long(tok[1]);
          if (ok && m == 0) throw ParseError(line_no, "EDGES count is zero");
          if (ok && m < 0) throw ParseError(line_no, "EDGES count is negative");
          break;
      }
      if (!ok) throw ParseError(line_no, "malformed value for " + std::string(key));
      ++key_index;
      continue;
    }
    if (static_cast<long>(edges.size()) == m)
      throw ParseError(line_no, "more edge lines than EDGES " + std::to_string(m));
    if (tok.size() != 4) throw ParseError(line_no, "edge line needs <i> <j> <cost> <demand>");
    auto i = to_long(tok[0]);
    auto j = to_long(tok[1]);
    auto c = to_double(tok[2]);
    auto d = to_double(tok[3]);
    if (!i || !j || !c || !d) throw ParseError(line_no, "malformed edge line");
    if (*i < 1 || *i > n || *j < 1 || *j > n)
      throw ParseError(line_no, "edge references a vertex outside 1.." + std::to_string(n));
    edges.push_back(Edge{static_cast<int>(*i - 1), static_cast<int>(*j - 1), *c, *d});
  }
  if (key_index < std::size(kKeys))
    throw ParseError(line_no, "missing " + std::string(kKeys[key_index]) + " header");
  if (static_cast<long>(edges.size()) != m)
    throw ParseError(line_no, "expected " + std::to_string(m) + " edge lines, found " +
                                  std::to_string(edges.size()));
  return Instance(name, static_cast<int>(n), std::move(edges), capacity,
                  static_cast<int>(depot - 1));
}

std::string write_canonical(const Instance& instance) {
  std::ostringstream out;
  out << "NAME " << instance.name() << '\n'
      << "VERTICES " << instance.num_vertices() << '\n'
      << "CAPACITY " << format_number(instance.capacity()) << '\n'
      << "DEPOT " << instance.depot() + 1 << '\n'
      << "EDGES " << instance.num_edges() << '\n';
  for (const Edge& e : instance.edges()) {
    out << e.i + 1 << ' ' << e.j + 1 << ' ' << format_number(e.cost) << ' '
        << format_number(e.demand) << '\n';
  }
  return out.str();
}

Instance parse_val(std::string_view text, ValMetadata* metadata) {
  static const std::regex kRequired(
      R"(^\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*coste\s+([-+0-9.eE]+)\s+demanda\s+([-+0-9.eE]+)$)");
  static const std::regex kPlain(R"(^\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*coste\s+([-+0-9.eE]+)$)");

  std::map<std::string, std::string, std::less<>> header;
  std::vector<Edge> required;
  std::vector<Edge> plain;
  enum class Section { kHeader, kRequired, kPlain } section = Section::kHeader;
  bool saw_required_list = false;
  int line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line == "END") break;
    if (line.front() == '(') {
      if (section == Section::kHeader) throw ParseError(line_no, "edge line outside an edge list");
      std::match_results<std::string_view::const_iterator> mt;
      const bool req = section == Section::kRequired;
      if (!std::regex_match(line.begin(), line.end(), mt, req ? kRequired : kPlain))
        throw ParseError(line_no, "malformed edge line");
      auto i = to_long(std::string_view(&*mt[1].first, static_cast<size_t>(mt[1].length())));
      auto j = to_long(std::string_view(&*mt[2].first, static_cast<size_t>(mt[2].length())));
      auto c = to_double(std::string_view(&*mt[3].first, static_cast<size_t>(mt[3].length())));
      std::optional<double> d = 0.0;
      if (req) d = to_double(std::string_view(&*mt[4].first, static_cast<size_t>(mt[4].length())));
      if (!i || !j || !c || !d) throw ParseError(line_no, "malformed number in edge line");
      Edge e{static_cast<int>(*i - 1), static_cast<int>(*j - 1), *c, *d};
      (req ? required : plain).push_back(e);
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected KEY : value");
    std::string key(trim(line.substr(0, colon)));
    std::string value(trim(line.substr(colon + 1)));
    static constexpr std::string_view kKnown[] = {
        "NOMBRE",    "COMENTARIO", "VERTICES",            "ARISTAS_REQ",     "ARISTAS_NOREQ",
        "VEHICULOS", "CAPACIDAD",  "TIPO_COSTES_ARISTAS", "COSTE_TOTAL_REQ", "DEPOSITO"};
    if (key == "LISTA_ARISTAS_REQ") {
      section = Section::kRequired;
      saw_required_list = true;
      continue;
    }
    if (key == "LISTA_ARISTAS_NOREQ") {
      section = Section::kPlain;
      continue;
    }
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown))
      throw ParseError(line_no, "unknown keyword '" + key + "'");
    section = Section::kHeader;
    header[key] = value;
  }

  auto require = [&](std::string_view key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) throw ParseError(0, "missing section " + std::string(key));
    return it->second;
  };
  auto require_long = [&](std::string_view key) {
    auto v = to_long(trim(require(key)));
    if (!v) throw ParseError(0, "malformed value for " + std::string(key));
    return *v;
  };
  const long n = require_long("VERTICES");
  const long n_req = require_long("ARISTAS_REQ");
  const long n_plain = header.count("ARISTAS_NOREQ") ? require_long("ARISTAS_NOREQ") : 0;
  const long vehicles = header.count("VEHICULOS") ? require_long("VEHICULOS") : 0;
  auto capacity = to_double(trim(require("CAPACIDAD")));
  if (!capacity) throw ParseError(0, "malformed value for CAPACIDAD");
  if (!saw_required_list) throw ParseError(0, "missing section LISTA_ARISTAS_REQ");
  const long depot = require_long("DEPOSITO");
  if (static_cast<long>(required.size()) != n_req)
    throw ParseError(0, "LISTA_ARISTAS_REQ has " + std::to_string(required.size()) +
                            " edges but ARISTAS_REQ is " + std::to_string(n_req));
  if (static_cast<long>(plain.size()) != n_plain)
    throw ParseError(0, "LISTA_ARISTAS_NOREQ has " + std::to_string(plain.size()) +
                            " edges but ARISTAS_NOREQ is " + std::to_string(n_plain));
  for (const Edge& e : required) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
      throw ParseError(0, "edge references a vertex outside 1.." + std::to_string(n));
  }
  std::vector<Edge> edges = std::move(required);
  edges.insert(edges.end(), plain.begin(), plain.end());
  if (metadata) {
    metadata->vehicles = static_cast<int>(vehicles);
    metadata->comment = header.count("COMENTARIO") ? header["COMENTARIO"] : "";
  }
  return Instance(require("NOMBRE"), static_cast<int>(n), std::move(edges), *capacity,
                  static_cast<int>(depot - 1));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

Instance load_instance(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  if (text.find("NOMBRE") != std::string::npos || text.find("LISTA_ARISTAS") != std::string::npos)
    return parse_val(text);
  return parse_canonical(text);
}

std::string write_solution(const SolutionFile& file) {
  auto number_or_null = [](const std::optional<double>& v) -> json {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
  };
  json doc;
  doc["instance"] = file.instance;
  doc["formulation"] = std::string(to_string(file.formulation));
  doc["objective"] = number_or_null(file.objective);
  doc["lower_bound"] = number_or_null(file.lower_bound);
  doc["gap_percent"] = number_or_null(file.gap_percent);
  json routes = json::array();
  for (const RouteEntry& r : file.routes) {
    json spray = json::array();
    for (const SprayEntry& s : r.spray) spray.push_back({{"edge", {s.i, s.j}}, {"amount", s.amount}});
    routes.push_back({{"robot", r.robot}, {"vertices", r.vertices}, {"spray", spray}});
  }
  doc["routes"] = routes;
  if (file.formulation == Formulation::kLarge) {
    json singles = json::array();
    for (const SingletonEntry& s : file.singletons)
      singles.push_back({{"edge", {s.i, s.j}}, {"count", s.count}});
    doc["singletons"] = singles;
  }
  return doc.dump(2) + "\n";
}

namespace {

std::pair<int, int> read_edge_ref(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ValidationError(where + ": edge must be a pair of integer vertex ids");
  const int a = j[0].get<int>();
  const int b = j[1].get<int>();
  if (a < 1 || b <= a)
    throw ValidationError(where + ": edge (" + std::to_string(a) + ", " + std::to_string(b) +
                          ") is not a valid (i, j) reference with 0 < i < j");
  return {a, b};
}

std::optional<double> read_optional_number(const json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  if (!doc[key].is_number()) throw ValidationError(std::string(key) + " must be a number or null");
  return doc[key].get<double>();
}

}  // namespace

SolutionFile read_solution(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("solution document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("solution document must be an object");
  SolutionFile file;
  try {
    file.instance = doc.at("instance").get<std::string>();
    file.formulation = parse_formulation(doc.at("formulation").get<std::string>());
    file.objective = read_optional_number(doc, "objective");
    file.lower_bound = read_optional_number(doc, "lower_bound");
    file.gap_percent = read_optional_number(doc, "gap_percent");
    for (const json& r : doc.at("routes")) {
      RouteEntry entry;
      entry.robot = r.at("robot").get<int>();
      entry.vertices = r.at("vertices").get<std::vector<int>>();
      const std::string where = "robot " + std::to_string(entry.robot);
      if (!entry.vertices.empty() &&
          (entry.vertices.size() < 2 || entry.vertices.front() != entry.vertices.back()))
        throw ValidationError(where + ": route must start and end at the same vertex");
      for (int v : entry.vertices)
        if (v < 1) throw ValidationError(where + ": vertex ids are 1-based");
      for (const json& s : r.at("spray")) {
        auto [a, b] = read_edge_ref(s.at("edge"), where);
        entry.spray.push_back(SprayEntry{a, b, s.at("amount").get<double>()});
      }
      file.routes.push_back(std::move(entry));
    }
    if (doc.contains("singletons")) {
      if (file.formulation != Formulation::kLarge)
        throw ValidationError("singletons are only valid for the large formulation");
      for (const json& s : doc.at("singletons")) {
        auto [a, b] = read_edge_ref(s.at("edge"), "singletons");
        const int count = s.at("count").get<int>();
        if (count < 0) throw ValidationError("singleton count must be non-negative");
        file.singletons.push_back(SingletonEntry{a, b, count});
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("solution schema violation: ") + e.what());
  }
  return file;
}

SolutionFile read_solution(std::string_view text, const Instance& instance) {
  SolutionFile file = read_solution(text);
  const int depot = instance.depot() + 1;
  auto check_edge = [&](int a, int b, const std::string& where) {
    if (b > instance.num_vertices() || !instance.find_edge(a - 1, b - 1))
      throw ValidationError(where + ": edge (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") does not exist in " + instance.name());
  };
  for (const RouteEntry& r : file.routes) {
    const std::string where = "robot " + std::to_string(r.robot);
    if (!r.vertices.empty() && r.vertices.front() != depot)
      throw ValidationError(where + ": route must start and end at the depot");
    for (int v : r.vertices)
      if (v > instance.num_vertices()) throw ValidationError(where + ": vertex out of range");
    for (const SprayEntry& s : r.spray) check_edge(s.i, s.j, where);
  }
  for (const SingletonEntry& s : file.singletons) check_edge(s.i, s.j, "singletons");
  return file;
}

SolutionFile make_solution_file(const Instance& instance, const ShortestPathTable& spt,
                                const Solution& solution, std::optional<double> lower_bound,
                                std::optional<double> gap_percent) {
  SolutionFile file;
  file.instance = instance.name();
  file.formulation = solution.formulation;
  file.objective = solution_cost(instance, spt, solution);
  file.lower_bound = lower_bound;
  file.gap_percent = gap_percent;
  for (int r = 0; r < solution.num_robots(); ++r) {
    RouteEntry entry;
    entry.robot = r + 1;
    for (int v : solution.routes[static_cast<size_t>(r)]) entry.vertices.push_back(v + 1);
    const auto& spray = solution.spray[static_cast<size_t>(r)];
    for (int e = 0; e < instance.num_edges(); ++e) {
      if (static_cast<size_t>(e) < spray.size() && spray[static_cast<size_t>(e)] > 0.0) {
        const Edge& ed = instance.edge(e);
        entry.spray.push_back(SprayEntry{ed.i + 1, ed.j + 1, spray[static_cast<size_t>(e)]});
      }
    }
    file.routes.push_back(std::move(entry));
  }
  for (size_t e = 0; e < solution.singletons.size(); ++e) {
    if (solution.singletons[e] > 0) {
      const Edge& ed = instance.edge(static_cast<int>(e));
      file.singletons.push_back(SingletonEntry{ed.i + 1, ed.j + 1, solution.singletons[e]});
    }
  }
  return file;
}

Solution solution_from_file(const Instance& instance, const SolutionFile& file) {
  Solution sol;
  sol.formulation = file.formulation;
  int robots = 0;
  for (const RouteEntry& r : file.routes) robots = std::max(robots, r.robot);
  sol.routes.assign(static_cast<size_t>(robots), {});
  sol.spray.assign(static_cast<size_t>(robots),
                   std::vector<double>(static_cast<size_t>(instance.num_edges()), 0.0));
  for (const RouteEntry& r : file.routes) {
    if (r.robot < 1) throw ValidationError("robot ids are 1-based");
    auto& route = sol.routes[static_cast<size_t>(r.robot - 1)];
    for (int v : r.vertices) route.push_back(v - 1);
    for (const SprayEntry& s : r.spray) {
      auto e = instance.find_edge(s.i - 1, s.j - 1);
      if (!e) throw ValidationError("spray references a missing edge");
      sol.spray[static_cast<size_t>(r.robot - 1)][static_cast<size_t>(*e)] += s.amount;
    }
  }
  if (file.formulation == Formulation::kLarge) {
    sol.singletons.assign(static_cast<size_t>(instance.num_edges()), 0);
    for (const SingletonEntry& s : file.singletons) {
      auto e = instance.find_edge(s.i - 1, s.j - 1);
      if (!e) throw ValidationError("singleton references a missing edge");
      sol.singletons[static_cast<size_t>(*e)] += s.count;
    }
  }
  return sol;
}

std::string write_trace_csv(std::span<const TracePoint> trace) {
  std::ostringstream out;
  out << "time_s,lb,ub,nodes,accepted_heuristics\n";
  for (const TracePoint& p : trace) {
    out << format_number(p.time_s) << ',' << format_number(p.lb) << ',' << format_number(p.ub)
        << ',' << p.nodes << ',' << p.accepted_heuristics << '\n';
  }
  return out.str();
}

}  // namespace scarp
