#include "symframes/pipeline.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "symframes/error.hpp"

namespace symframes {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << v;
  return out.str();
}

json values_json(const std::vector<RowCell>& cells) {
  json out = json::array();
  for (const auto& c : cells) out.push_back(c.value.to_json());
  return out;
}

}  // namespace

RowCache::RowCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path RowCache::default_directory() {
  if (const char* d = std::getenv("SYMFRAMES_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "symframes";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "symframes";
  return fs::temp_directory_path() / "symframes-cache";
}

std::optional<json> RowCache::load(const std::string& key) const {
  std::ifstream in(dir_ / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    return json::parse(in);
  } catch (const json::exception&) {
    return std::nullopt;  // a corrupt entry is recomputed and overwritten
  }
}

void RowCache::store(const std::string& key, const json& value) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return;  // caching is best effort
  fs::path target = dir_ / (key + ".json");
  fs::path tmp = dir_ / (key + ".json.tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << value.dump();
    if (!out) return;
  }
  fs::rename(tmp, target, ec);
  if (ec) fs::remove(tmp, ec);
}

std::size_t RowCache::clear() const {
  std::size_t removed = 0;
  std::error_code ec;
  if (!fs::exists(dir_, ec)) return 0;
  for (const auto& e : fs::directory_iterator(dir_, ec))
    if (e.path().extension() == ".json" || e.path().string().find(".json.tmp.") != std::string::npos)
      removed += fs::remove(e.path(), ec);
  return removed;
}

json row_to_json(const TwistedSphericalRow& row) {
  return {{"kind", "tsf"}, {"multiplicity", row.multiplicity}, {"cells", values_json(row.cells)}};
}

RowPtr row_from_json(GroupPtr Gp, const ClassFunction& chi, GroupPtr Hp, const LinearCharacter& nu, const json& j) {
  const auto& G = *Gp;
  auto labels = label_double_cosets(G, *Hp, nu, *Hp, nu);
  const auto& cells = j.at("cells");
  if (j.at("kind") != "tsf" || cells.size() != labels.cells.size())
    throw Error(ErrorCode::ParseError, "cached row does not fit the double cosets");
  long k = j.at("multiplicity").get<long>();
  auto row = std::make_shared<TwistedSphericalRow>(
      TwistedSphericalRow{Gp, chi, Hp, nu, chi.degree(), k, k > 1, {}, std::move(labels)});
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cell = row->labels.cells[c];
    row->cells.push_back({G.element(cell.representative), cell.representative, cell.size,
                          Cyclotomic::from_json(cells[c])});
  }
  if (row->evaluate(0) != Cyclotomic(k)) throw Error(ErrorCode::ParseError, "cached row fails its identity check");
  return row;
}

json cross_to_json(const CrossGramRow& row) {
  json abs2 = json::array();
  for (const auto& a : row.abs_squared) abs2.push_back(a.to_json());
  return {{"kind", "cross"},
          {"a", row.a},
          {"exact", row.exact_values},
          {"scale_squared", row.scale_squared.to_json()},
          {"scale", row.scale ? row.scale->to_json() : json()},
          {"cells", values_json(row.cells)},
          {"abs_squared", abs2}};
}

CrossPtr cross_from_json(GroupPtr Gp, const ClassFunction& chi, GroupPtr H1, const LinearCharacter& nu1, GroupPtr H2,
                         const LinearCharacter& nu2, const json& j) {
  const auto& G = *Gp;
  auto labels = label_double_cosets(G, *H1, nu1, *H2, nu2);
  const auto& cells = j.at("cells");
  const auto& abs2 = j.at("abs_squared");
  if (j.at("kind") != "cross" || cells.size() != labels.cells.size() || abs2.size() != cells.size())
    throw Error(ErrorCode::ParseError, "cached cross row does not fit the double cosets");
  auto out = std::make_shared<CrossGramRow>(CrossGramRow{Gp, chi, H1, nu1, H2, nu2, chi.degree(),
                                                         j.at("a").get<std::uint32_t>(), {}, {},
                                                         Cyclotomic::from_json(j.at("scale_squared")),
                                                         std::nullopt, j.at("exact").get<bool>(), true, {}});
  if (!j.at("scale").is_null()) out->scale = Cyclotomic::from_json(j.at("scale"));
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cell = labels.cells[c];
    out->cells.push_back(
        {G.element(cell.representative), cell.representative, cell.size, Cyclotomic::from_json(cells[c])});
    out->abs_squared.push_back(Cyclotomic::from_json(abs2[c]));
  }
  out->labels = std::move(labels);
  return out;
}

Context::Context(std::vector<CatalogEntry> catalog, fs::path data_dir, std::optional<fs::path> cache_dir)
    : catalog_(std::move(catalog)), data_dir_(std::move(data_dir)) {
  if (cache_dir) cache_.emplace(*cache_dir);
}

GroupPtr Context::group(const std::string& name) {
  auto it = groups_.find(name);
  if (it != groups_.end()) return it->second;
  const auto& e = entry(name);
  return groups_[name] = group_from_generators(e.degree, e.generators);
}

GroupPtr Context::subgroup(const std::string& g, const std::string& s) {
  std::string k = g + "\n" + s;
  auto it = groups_.find(k);
  if (it != groups_.end()) return it->second;
  const auto& e = entry(g);
  return groups_[k] = group_from_generators(e.degree, e.subgroup(s).generators);
}

const CharacterTable& Context::table(const std::string& g) {
  auto it = tables_.find(g);
  if (it != tables_.end()) return it->second;
  return tables_.emplace(g, character_table(group(g))).first->second;
}

const ClassFunction& Context::character(const std::string& g, const CharacterSelector& chi) {
  return identify_character(table(g), chi.degree, chi.index);
}

const std::vector<LinearCharacter>& Context::linear(const std::string& g, const std::string& s) {
  std::string k = g + "\n" + s;
  auto it = linear_.find(k);
  if (it != linear_.end()) return it->second;
  return linear_.emplace(k, linear_characters(subgroup(g, s))).first->second;
}

const LinearCharacter& Context::nu(const std::string& g, const std::string& s, const CharacterSelector& chi,
                                   const NuSelector& sel) {
  const auto& all = linear(g, s);
  if (sel.index) return select_linear_character(all, sel.order, *sel.index);
  const auto& c = character(g, chi);
  for (const auto& nu : all)
    if (nu.order == sel.order && multiplicity(c, nu.character) == 1) return nu;
  throw Error(ErrorCode::NoSuchCharacter, "no linear character of order " + std::to_string(sel.order) + " of " + s +
                                              " occurs once in the selected character");
}

std::string Context::key(const std::string& kind, const std::string& g, const CharacterSelector& chi,
                         const std::vector<std::pair<std::string, const LinearCharacter*>>& parts) const {
  const auto& e = entry(g);
  std::ostringstream s;
  s << kind << '|' << e.generator_hash() << '|' << chi.degree << ',' << chi.index;
  for (const auto& [sub, nu] : parts) {
    s << '|' << hash_generators(e.degree, e.subgroup(sub).generators) << ':';
    for (long x : nu->exponent) s << x << ',';
    s << '/' << nu->order;
  }
  return kind + "-" + hex(fnv1a(s.str()));
}

RowPtr Context::row(const std::string& g, const CharacterSelector& chi, const std::string& s, const NuSelector& sel) {
  const auto& c = character(g, chi);
  const auto& nu = this->nu(g, s, chi, sel);
  std::string k = key("tsf", g, chi, {{s, &nu}});
  if (cache_)
    if (auto j = cache_->load(k)) {
      try {
        return row_from_json(group(g), c, subgroup(g, s), nu, *j);
      } catch (const std::exception&) {
        // stale or corrupt entry: fall through and overwrite it
      }
    }
  auto row = twisted_spherical(group(g), c, subgroup(g, s), nu);
  if (cache_) cache_->store(k, row_to_json(*row));
  return row;
}

CrossPtr Context::cross(const std::string& g, const CharacterSelector& chi, const std::string& s1,
                        const NuSelector& sel1, const std::string& s2, const NuSelector& sel2) {
  const auto& c = character(g, chi);
  const auto& nu1 = nu(g, s1, chi, sel1);
  const auto& nu2 = nu(g, s2, chi, sel2);
  std::string k = key("cross", g, chi, {{s1, &nu1}, {s2, &nu2}});
  if (cache_)
    if (auto j = cache_->load(k)) {
      try {
        return cross_from_json(group(g), c, subgroup(g, s1), nu1, subgroup(g, s2), nu2, *j);
      } catch (const std::exception&) {
        // stale or corrupt entry: fall through and overwrite it
      }
    }
  auto row = cross_row(group(g), c, subgroup(g, s1), nu1, subgroup(g, s2), nu2);
  if (cache_) cache_->store(k, cross_to_json(*row));
  return row;
}

}  // namespace symframes
