#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "symframes/permutation.hpp"

namespace symframes {

struct SubgroupEntry {
  std::string name;
  std::uint64_t order = 0;
  std::string note;
  std::vector<Permutation> generators;
};

struct CatalogEntry {
  std::string name;
  std::size_t degree = 0;
  std::uint64_t order = 0;
  std::string provenance;
  std::vector<Permutation> generators;
  std::vector<SubgroupEntry> subgroups;

  const SubgroupEntry& subgroup(std::string_view name) const;
  // Stable hash of the degree and generator images, for cache keys.
  std::uint64_t generator_hash() const;
};

// Parses and checks orders and subgroup containment (by Schreier-Sims).
// Errors: ParseError (naming the line), OrderMismatch, SubgroupNotContained.
std::vector<CatalogEntry> parse_catalog(std::string_view text);
std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path);

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog, std::string_view name);

std::uint64_t hash_generators(std::size_t degree, const std::vector<Permutation>& gens);

}  // namespace symframes
