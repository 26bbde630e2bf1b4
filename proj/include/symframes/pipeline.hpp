#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symframes/catalog.hpp"
#include "symframes/codes.hpp"

namespace symframes {

struct CharacterSelector {
  long degree = 1;
  std::size_t index = 0;
};

// index unset: the first linear character of that order with multiplicity one in chi.
struct NuSelector {
  long order = 1;
  std::optional<std::size_t> index;
};

// Disk cache of computed rows; writes go to a temp file that is renamed into place.
class RowCache {
 public:
  explicit RowCache(std::filesystem::path dir);
  // SYMFRAMES_CACHE_DIR, else $XDG_CACHE_HOME/symframes, else ~/.cache/symframes.
  static std::filesystem::path default_directory();

  const std::filesystem::path& directory() const { return dir_; }
  std::optional<nlohmann::json> load(const std::string& key) const;
  void store(const std::string& key, const nlohmann::json& value) const;
  std::size_t clear() const;

 private:
  std::filesystem::path dir_;
};

nlohmann::json row_to_json(const TwistedSphericalRow& row);
RowPtr row_from_json(GroupPtr G, const ClassFunction& chi, GroupPtr H, const LinearCharacter& nu,
                     const nlohmann::json& j);
nlohmann::json cross_to_json(const CrossGramRow& row);
CrossPtr cross_from_json(GroupPtr G, const ClassFunction& chi, GroupPtr H1, const LinearCharacter& nu1,
                         GroupPtr H2, const LinearCharacter& nu2, const nlohmann::json& j);

// Catalog, memoized groups/tables and an optional row cache.
class Context {
 public:
  Context(std::vector<CatalogEntry> catalog, std::filesystem::path data_dir,
          std::optional<std::filesystem::path> cache_dir);

  const std::vector<CatalogEntry>& catalog() const { return catalog_; }
  const std::filesystem::path& data_directory() const { return data_dir_; }
  const RowCache* cache() const { return cache_ ? &*cache_ : nullptr; }

  const CatalogEntry& entry(const std::string& group) const { return find_entry(catalog_, group); }
  GroupPtr group(const std::string& group);
  GroupPtr subgroup(const std::string& group, const std::string& subgroup);
  const CharacterTable& table(const std::string& group);
  const ClassFunction& character(const std::string& group, const CharacterSelector& chi);
  const std::vector<LinearCharacter>& linear(const std::string& group, const std::string& subgroup);
  const LinearCharacter& nu(const std::string& group, const std::string& subgroup, const CharacterSelector& chi,
                            const NuSelector& nu);

  RowPtr row(const std::string& group, const CharacterSelector& chi, const std::string& subgroup,
             const NuSelector& nu);
  CrossPtr cross(const std::string& group, const CharacterSelector& chi, const std::string& subgroup1,
                 const NuSelector& nu1, const std::string& subgroup2, const NuSelector& nu2);

 private:
  std::string key(const std::string& kind, const std::string& group, const CharacterSelector& chi,
                  const std::vector<std::pair<std::string, const LinearCharacter*>>& parts) const;

  std::vector<CatalogEntry> catalog_;
  std::filesystem::path data_dir_;
  std::optional<RowCache> cache_;
  std::map<std::string, GroupPtr> groups_;
  std::map<std::string, CharacterTable> tables_;
  std::map<std::string, std::vector<LinearCharacter>> linear_;
};

// ---- recipes ----

struct RecipeFrame {
  std::string name, subgroup;
  NuSelector nu;
};
struct RecipeCross {
  std::string first, second;
  std::optional<std::pair<long, long>> phase;  // zeta_n^k, unset: resolve by scan
};
struct RecipeBlock {
  std::string name, source;  // frame name or explicit code name (e7, phi3, d7)
  std::pair<long, long> phase{1, 0};
};

struct Recipe {
  std::string name;
  std::string mode;  // "code" or "lines"
  std::string group;
  CharacterSelector chi;
  std::vector<RecipeFrame> frames;
  std::vector<RecipeCross> crosses;
  std::vector<RecipeBlock> blocks;
  bool explicit_code = false;
  bool realify = false;
  std::string lift;  // "" or "r11"
  long dimension = 0;
  std::optional<double> reference_coherence;
};

// Errors: ParseError.
Recipe parse_recipe(const nlohmann::json& j);
Recipe load_recipe(const std::filesystem::path& path);

struct RecipeResult {
  Recipe recipe;
  std::vector<std::pair<std::string, Cyclotomic>> chosen_phases;
  std::optional<GramAssembly> assembly;       // Gram-route codes
  std::optional<ExplicitCode> code;           // coordinate codes
  std::optional<ExactMatrix> gram;            // the matrix that was verified
  std::optional<KissingReport> kissing;
  std::optional<LineSystemSummary> lines;
  std::optional<Coherence> coherence;
};

// Builds the recipe; verification runs when `verify` is set (kissing codes) and always for lines.
RecipeResult run_recipe(Context& ctx, const Recipe& recipe, bool verify, std::optional<long> dimension = {});
nlohmann::json to_json(const RecipeResult& result);
nlohmann::json to_json(const KissingReport& report);
nlohmann::json to_json(const LineSystemSummary& summary);
nlohmann::json to_json(const TwistedSphericalRow& row, const std::optional<HomogenizedFrame>& frame);
nlohmann::json to_json(const CrossGramRow& row);
nlohmann::json to_json(const CharacterTable& table);
nlohmann::json group_info_json(Context& ctx, const std::string& group);
// One vector per line; exact entries followed by decimals.
std::string export_coordinates(const RecipeResult& result);

// ---- reproduction of the worked examples ----

struct ExpectationCheck {
  std::string label;
  std::string expected;
  std::string computed;
  std::string citation;
  std::string note;
  bool match = false;
};

struct ReproductionReport {
  std::string id;
  std::vector<ExpectationCheck> checks;
  double runtime_seconds = 0;
  bool ok() const;
  nlohmann::json to_json() const;
};

const std::vector<std::string>& reproducible_examples();
// Examples named but not reproducible at this scale, with the reason.
std::optional<std::string> unsupported_reason(const std::string& id);
// Errors: UnknownExample, Unsupported.
ReproductionReport reproduce(Context& ctx, const std::string& id);

}  // namespace symframes
