#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "fuselab/group.hpp"

namespace fuselab {

using json = nlohmann::ordered_json;

// One group document: either a full Cayley table or permutation generators.
struct GroupSpec {
  std::string format;  // "cayley" | "perm"
  std::string name;
  int order = 0;                                       // cayley
  std::vector<std::vector<int>> table;                 // cayley
  int degree = 0;                                      // perm
  std::vector<std::vector<std::vector<int>>> generators;  // perm: cycles, 1-based
  std::vector<int> primes;                             // intended test primes
};

GroupSpec spec_from_json(const json& doc);
json spec_to_json(const GroupSpec& spec);
GroupPtr load_group(const GroupSpec& spec);
GroupPtr load_group_json(const json& doc);
GroupPtr load_group_file(const std::string& path);

// "(1 2 3)(4 5)" -> permutation on 0..degree-1
std::vector<uint8_t> parse_permutation_cycles(const std::string& text, int degree);
// comma-separated permutations in cycle notation
std::vector<std::vector<uint8_t>> parse_generator_list(const std::string& text, int degree);
std::vector<int> parse_index_list(const std::string& text);

const std::vector<GroupSpec>& builtin_catalog();
const GroupSpec* catalog_entry(const std::string& name);

uint64_t fnv1a64(const std::string& data);

struct Report {
  std::vector<std::string> command;
  json input;
  json result;
  double timing_ms = 0.0;
  std::string version;

  json to_json() const;
  static Report from_json(const json& doc);
};

// subgroup/system serialization helpers shared by CLI and bindings
json subgroup_to_json(const Subgroup& s);

}  // namespace fuselab
