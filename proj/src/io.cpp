#include "rainbow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rainbow/errors.hpp"

namespace rainbow {

using nlohmann::json;

namespace {

template <class T>
T get(const json& j, const char* key, const std::string& what) {
  require(j.is_object() && j.contains(key), what + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(what + ": field \"" + key + "\" has the wrong type");
  }
}

Table table_from_json(const json& j, int m, const std::string& what) {
  require(j.is_array() && static_cast<int>(j.size()) == m, what + " must be an m x m array");
  Table t(m);
  for (int a = 0; a < m; ++a) {
    require(j[a].is_array() && static_cast<int>(j[a].size()) == m, what + " must be an m x m array");
    for (int b = 0; b < m; ++b) {
      require(j[a][b].is_number(), what + " entries must be numbers");
      t(a, b) = j[a][b].get<double>();
    }
  }
  return t;
}

json table_to_json(const Table& t) {
  json rows = json::array();
  for (int a = 0; a < t.size(); ++a) rows.push_back(std::vector<double>(t.row(a).begin(), t.row(a).end()));
  return rows;
}

}  // namespace

TemplateSpec template_from_json(const json& j) {
  const std::string what = "template";
  TemplateSpec t;
  const int n = get<int>(j, "n", what);
  require(n >= 0, "template: negative vertex count");
  t.graph = Multigraph(n);
  if (j.contains("edges")) {
    require(j.at("edges").is_array(), "template: \"edges\" must be an array");
    for (const json& e : j.at("edges")) {
      std::optional<EdgeId> id;
      if (e.contains("id")) id = get<int>(e, "id", "template edge");
      t.graph.add_edge(get<int>(e, "u", "template edge"), get<int>(e, "v", "template edge"), id);
    }
  }
  Color top = 0;
  if (j.contains("coloring")) {
    require(j.at("coloring").is_object(), "template: \"coloring\" must be an object");
    for (const auto& [key, val] : j.at("coloring").items()) {
      EdgeId id = 0;
      try {
        std::size_t used = 0;
        id = std::stoi(key, &used);
        require(used == key.size(), "");
      } catch (const std::exception&) {
        throw ValidationError("template: coloring key \"" + key + "\" is not an edge id");
      }
      require(val.is_number_integer(), "template: colors must be integers");
      const Color c = val.get<int>();
      t.psi.assignments[id] = c;
      top = std::max(top, c);
    }
  }
  t.k = j.contains("k") ? get<int>(j, "k", what) : top;
  require(t.k >= 0 && t.k <= kMaxColors, "template: k must lie in [0,8]");
  t.psi.k = t.k;
  if (j.contains("rainbow")) t.psi.rainbow = get<bool>(j, "rainbow", what);
  t.psi.validate(t.graph);
  return t;
}

json template_to_json(const TemplateSpec& t) {
  json edges = json::array();
  for (const Edge& e : t.graph.edges()) edges.push_back({{"u", e.u}, {"v", e.v}, {"id", e.id}});
  json coloring = json::object();
  for (const auto& [id, c] : t.psi.assignments) coloring[std::to_string(id)] = c;
  return {{"n", t.graph.vertex_count()}, {"edges", edges}, {"coloring", coloring},
          {"k", t.k}, {"rainbow", t.psi.rainbow}};
}

TemplateSpec template_from_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool header = false;
  TemplateSpec t;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<long long> nums;
    long long x;
    while (ls >> x) nums.push_back(x);
    require(ls.eof(), "edge list line " + std::to_string(lineno) + ": expected integers");
    if (nums.empty()) continue;
    if (!header) {
      require(nums.size() == 2, "edge list: header must be \"n k\"");
      require(nums[1] >= 0 && nums[1] <= kMaxColors, "edge list: k must lie in [0,8]");
      t.graph = Multigraph(static_cast<int>(nums[0]));
      t.k = static_cast<int>(nums[1]);
      t.psi.k = t.k;
      header = true;
      continue;
    }
    require(nums.size() == 2 || nums.size() == 3,
            "edge list line " + std::to_string(lineno) + ": expected \"u v [color]\"");
    const EdgeId id = t.graph.add_edge(static_cast<int>(nums[0]), static_cast<int>(nums[1]));
    if (nums.size() == 3) t.psi.assignments[id] = static_cast<Color>(nums[2]);
  }
  require(header, "edge list: missing header");
  t.psi.validate(t.graph);
  return t;
}

StepGraphonSystem system_from_json(const json& j) {
  const std::string what = "system";
  const int k = get<int>(j, "k", what);
  require(k >= 0 && k <= kMaxColors, "system: k must lie in [0,8]");
  const auto sizes = get<std::vector<double>>(j, "sizes", what);
  const int m = static_cast<int>(sizes.size());
  if (j.contains("m")) require(get<int>(j, "m", what) == m, "system: \"m\" disagrees with \"sizes\"");
  require(m >= 1, "system: need at least one part");
  require(j.contains("blocks") && j.at("blocks").is_object(), "system: missing \"blocks\" object");
  const json& blocks = j.at("blocks");
  const bool classical = j.contains("classical") && get<bool>(j, "classical", what);

  std::vector<std::optional<Table>> given(std::size_t{1} << k);
  for (const auto& [key, val] : blocks.items()) {
    const ColorSet I = parse_color_set(key, k);
    require(I != 0, "system: the empty block is implicit");
    given[I] = table_from_json(val, m, "system block \"" + key + "\"");
  }
  StepGraphonSystem W;
  if (classical) {
    std::vector<Table> factors;
    for (Color c = 1; c <= k; ++c) {
      require(given[color_bit(c)].has_value(), "system: classical system lacks block \"" + std::to_string(c) + "\"");
      factors.push_back(*given[color_bit(c)]);
    }
    W = span(factors, sizes);
    for (ColorSet I = 1; I < given.size(); ++I)
      if (given[I]) require(given[I]->max_abs_diff(W.block(I)) <= 1e-12,
                            "system: block \"" + to_text(I) + "\" is not the product of its colors");
  } else {
    W = StepGraphonSystem(k, sizes);
    for (ColorSet I = 1; I < given.size(); ++I) {
      require(given[I].has_value(), "system: missing block \"" + to_text(I) + "\" (set \"classical\": true to span)");
      W.block(I) = *given[I];
    }
  }
  W.validate();
  return W;
}

json system_to_json(const StepGraphonSystem& W) {
  json blocks = json::object();
  for (ColorSet I = 1; I < W.set_count(); ++I) blocks[to_text(I)] = table_to_json(W.block(I));
  return {{"k", W.colors()}, {"m", W.parts()}, {"sizes", W.sizes()}, {"blocks", blocks}};
}

GraphSystem graph_system_from_json(const json& j) {
  const std::string what = "graph system";
  const int n = get<int>(j, "n", what), k = get<int>(j, "k", what);
  require(n >= 0, "graph system: negative vertex count");
  require(k >= 0 && k <= kMaxColors, "graph system: k must lie in [0,8]");
  GraphSystem G(n, k);
  if (!j.contains("colors")) return G;
  const json& colors = j.at("colors");
  require(colors.is_array() && static_cast<int>(colors.size()) == k,
          "graph system: \"colors\" needs one edge list per color");
  for (int c = 0; c < k; ++c)
    for (const json& e : colors[c]) {
      require(e.is_array() && e.size() == 2, "graph system: edges are [u, v] pairs");
      const int u = e[0].get<int>(), v = e[1].get<int>();
      require(u >= 0 && v >= 0 && u < n && v < n && u != v, "graph system: bad edge endpoints");
      G.add_edge(c + 1, u, v);
    }
  return G;
}

json graph_system_to_json(const GraphSystem& G) {
  json colors = json::array();
  for (Color c = 1; c <= G.colors(); ++c) {
    json edges = json::array();
    for (auto [u, v] : G.edges_of(c)) edges.push_back({u, v});
    colors.push_back(edges);
  }
  return {{"n", G.vertex_count()}, {"k", G.colors()}, {"colors", colors}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot write " + path);
  out << text;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

TemplateSpec load_template(const std::string& path) {
  auto ends_with = [&](const std::string& s) {
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".txt") || ends_with(".edges")) return template_from_edge_list(read_text_file(path));
  return template_from_json(read_json_file(path));
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

}  // namespace rainbow
