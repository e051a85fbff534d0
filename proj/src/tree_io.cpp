#include "geokern/tree_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "geokern/common.hpp"

namespace geokern {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DataError(where + ": missing field '" + key + "'");
  return *it;
}

std::vector<double> read_vector(const json& value, const std::string& where) {
  if (!value.is_array()) throw DataError(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (const json& v : value) {
    if (!v.is_number()) throw DataError(where + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

GeometricTree tree_from_json(const json& obj) {
  if (!obj.is_object()) throw DataError("tree: expected a JSON object");
  const json& idv = require(obj, "id", "tree");
  if (!idv.is_string()) throw DataError("tree: 'id' must be a string");
  std::string id = idv.get<std::string>();
  const std::string where = "tree '" + id + "'";

  const json& nv = require(obj, "n", where);
  const json& dv = require(obj, "d", where);
  if (!nv.is_number_integer() || nv.get<long long>() <= 0) {
    throw DataError(where + ": 'n' must be a positive integer");
  }
  if (!dv.is_number_integer() || dv.get<long long>() < 0) {
    throw DataError(where + ": 'd' must be a non-negative integer");
  }
  const auto n = nv.get<std::size_t>();
  const auto d = dv.get<std::size_t>();

  const json& nodes_json = require(obj, "nodes", where);
  if (!nodes_json.is_array()) throw DataError(where + ": 'nodes' must be an array");

  std::unordered_map<long long, NodeIndex> position_of;
  for (std::size_t i = 0; i < nodes_json.size(); ++i) {
    const json& node_id = require(nodes_json[i], "id", where + " node " + std::to_string(i));
    if (!node_id.is_number_integer()) throw DataError(where + ": node ids must be integers");
    if (!position_of.emplace(node_id.get<long long>(), i).second) {
      throw DataError(where + ": duplicate node id " + node_id.dump());
    }
  }

  std::vector<Node> nodes;
  nodes.reserve(nodes_json.size());
  for (std::size_t i = 0; i < nodes_json.size(); ++i) {
    const json& nj = nodes_json[i];
    const std::string nwhere = where + " node " + nj["id"].dump();
    Node node;
    const json& parent = require(nj, "parent", nwhere);
    if (!parent.is_null()) {
      if (!parent.is_number_integer()) throw DataError(nwhere + ": 'parent' must be int or null");
      auto it = position_of.find(parent.get<long long>());
      if (it == position_of.end()) {
        throw DataError(nwhere + ": unknown parent id " + parent.dump());
      }
      node.parent = it->second;
    }
    node.x = read_vector(require(nj, "x", nwhere), nwhere + " x");
    if (d > 0) {
      node.a = read_vector(require(nj, "a", nwhere), nwhere + " a");
    } else if (nj.contains("a")) {
      throw DataError(nwhere + ": 'a' present but d = 0");
    }
    nodes.push_back(std::move(node));
  }
  return GeometricTree::build(std::move(id), n, d, std::move(nodes));
}

ordered_json tree_to_json(const GeometricTree& tree) {
  ordered_json obj;
  obj["id"] = tree.id();
  obj["n"] = tree.dim();
  obj["d"] = tree.attr_dim();
  ordered_json nodes = ordered_json::array();
  for (NodeIndex v = 0; v < tree.size(); ++v) {
    ordered_json node;
    node["id"] = v;
    if (auto p = tree.parent(v)) {
      node["parent"] = *p;
    } else {
      node["parent"] = nullptr;
    }
    auto x = tree.position(v);
    node["x"] = std::vector<double>(x.begin(), x.end());
    if (tree.attr_dim() > 0) {
      auto a = tree.attributes(v);
      node["a"] = std::vector<double>(a.begin(), a.end());
    }
    nodes.push_back(std::move(node));
  }
  obj["nodes"] = std::move(nodes);
  return obj;
}

json parse_json(std::string_view text, const std::string& where) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DataError(where + ": invalid JSON: " + e.what());
  }
}

}  // namespace

GeometricTree parse_tree(std::string_view json_text) {
  return tree_from_json(parse_json(json_text, "tree"));
}

std::string serialize_tree(const GeometricTree& tree) { return tree_to_json(tree).dump(); }

std::vector<GeometricTree> read_dataset(const std::filesystem::path& path) {
  std::vector<GeometricTree> trees;
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path());
      }
    }
    std::ranges::sort(files);
    for (const auto& f : files) trees.push_back(parse_tree(read_file(f)));
  } else {
    const json doc = parse_json(read_file(path), path.string());
    if (doc.is_array()) {
      trees.reserve(doc.size());
      for (const json& t : doc) trees.push_back(tree_from_json(t));
    } else {
      trees.push_back(tree_from_json(doc));
    }
  }
  return trees;
}

std::string serialize_dataset(const std::vector<GeometricTree>& trees) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < trees.size(); ++i) {
    out += serialize_tree(trees[i]);
    out += i + 1 < trees.size() ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

void write_dataset(const std::filesystem::path& path, const std::vector<GeometricTree>& trees) {
  write_file(path, serialize_dataset(trees));
}

LabelTable read_labels(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  LabelTable labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected 'tree_id,label'");
    }
    std::string id = line.substr(0, comma);
    std::string label = line.substr(comma + 1);
    if (line_no == 1 && id == "tree_id") continue;
    if (label != "0" && label != "1") {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": label must be 0 or 1");
    }
    labels.emplace_back(std::move(id), label == "1" ? 1 : 0);
  }
  return labels;
}

std::string serialize_labels(const LabelTable& labels) {
  std::string out = "tree_id,label\n";
  for (const auto& [id, label] : labels) {
    out += id;
    out += ',';
    out += std::to_string(label);
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace geokern
