#pragma once

// JSON and text formats for templates, step systems and graph systems.

#include <string>

#include "json.hpp"
#include "rainbow/combinatorics.hpp"
#include "rainbow/graphon.hpp"

namespace rainbow {

inline constexpr const char* kSchemaVersion = "1.0";

// A template multigraph with its pre-coloring and color count.
struct TemplateSpec {
  Multigraph graph;
  PreColoring psi;
  int k = 0;
};

// {"n": int, "edges": [{"u":..,"v":..,"id":..}], "coloring": {"<id>": c}, "k": int}
// "rainbow" (default true) selects the pre-coloring kind. Without "k" the
// largest used color is taken.
TemplateSpec template_from_json(const nlohmann::json& j);
nlohmann::json template_to_json(const TemplateSpec& t);
// Header "n k", then one "u v [color]" per line; '#' starts a comment.
TemplateSpec template_from_edge_list(const std::string& text);

// {"k","m","sizes","blocks":{"1":[[..]],"1,2":[[..]]}}. With "classical":
// true only the singleton blocks are read and the rest is their span.
StepGraphonSystem system_from_json(const nlohmann::json& j);
nlohmann::json system_to_json(const StepGraphonSystem& W);

// {"n","k","colors":[[[u,v],...], ...]} with one edge list per color.
GraphSystem graph_system_from_json(const nlohmann::json& j);
nlohmann::json graph_system_to_json(const GraphSystem& G);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
nlohmann::json parse_json(const std::string& text, const std::string& what);
nlohmann::json read_json_file(const std::string& path);

// Template from a file: JSON unless the extension is .txt/.edges.
TemplateSpec load_template(const std::string& path);

// Fixed 12-decimal rendering used by every numeric output.
std::string fmt12(double x);

}  // namespace rainbow
