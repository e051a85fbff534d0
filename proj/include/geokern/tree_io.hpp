#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geokern/tree.hpp"

namespace geokern {

/// Parses one tree object:
///   {"id": str, "n": int, "d": int,
///    "nodes": [{"id": int, "parent": int|null, "x": [..], "a": [..]}, ...]}
/// `a` is omitted iff d == 0. Node ids are arbitrary distinct integers.
GeometricTree parse_tree(std::string_view json_text);

/// Canonical single-line form; node ids are the canonical node indices.
std::string serialize_tree(const GeometricTree& tree);

/// A dataset is a JSON array of trees, or a directory of one-tree `.json`
/// files read in lexicographic filename order.
std::vector<GeometricTree> read_dataset(const std::filesystem::path& path);
std::string serialize_dataset(const std::vector<GeometricTree>& trees);
void write_dataset(const std::filesystem::path& path, const std::vector<GeometricTree>& trees);

/// `tree_id,label` rows with labels in {0,1}; a header row is optional on read.
using LabelTable = std::vector<std::pair<std::string, int>>;
LabelTable read_labels(const std::filesystem::path& path);
std::string serialize_labels(const LabelTable& labels);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace geokern
