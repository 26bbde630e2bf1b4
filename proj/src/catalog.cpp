#include "symframes/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "symframes/error.hpp"

namespace symframes {

namespace {

// Line of the first occurrence of `needle`, or 0.
std::size_t line_of(std::string_view text, std::string_view needle) {
  auto pos = text.find(needle);
  if (pos == std::string_view::npos) return 0;
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + pos, '\n'));
}

std::string where(std::string_view text, const nlohmann::json& node, const std::string& entry) {
  std::size_t line = line_of(text, node.dump());
  if (line == 0) line = line_of(text, "\"" + entry + "\"");
  return "line " + std::to_string(line) + " (entry " + entry + ")";
}

std::vector<Permutation> parse_generators(std::string_view text, const nlohmann::json& arr,
                                          std::size_t degree, const std::string& entry) {
  std::vector<Permutation> out;
  for (const auto& g : arr) {
    try {
      auto images = g.get<std::vector<int>>();
      if (images.size() != degree)
        throw Error(ErrorCode::ParseError, "generator has " + std::to_string(images.size()) +
                                               " images, degree is " + std::to_string(degree));
      out.push_back(Permutation::from_one_based(images));
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, where(text, g, entry) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, where(text, g, entry) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

const SubgroupEntry& CatalogEntry::subgroup(std::string_view wanted) const {
  for (const auto& s : subgroups)
    if (s.name == wanted) return s;
  throw Error(ErrorCode::ParseError, "group " + name + " has no subgroup named " + std::string(wanted));
}

std::uint64_t hash_generators(std::size_t degree, const std::vector<Permutation>& gens) {
  std::uint64_t h = 0x84222325cbf29ce4ull ^ degree;
  for (const auto& g : gens) h = (h ^ hash_points(g.images())) * 0x100000001b3ull;
  return h;
}

std::uint64_t CatalogEntry::generator_hash() const { return hash_generators(degree, generators); }

std::vector<CatalogEntry> parse_catalog(std::string_view text) {
  std::vector<CatalogEntry> out;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return out;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1 + static_cast<std::size_t>(
                               std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n'));
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + e.what());
  }
  try {
    for (const auto& g : doc.at("groups")) {
      CatalogEntry e;
      e.name = g.at("name").get<std::string>();
      e.degree = g.at("degree").get<std::size_t>();
      e.order = g.at("order").get<std::uint64_t>();
      e.provenance = g.value("provenance", "");
      e.generators = parse_generators(text, g.at("generators"), e.degree, e.name);
      std::uint64_t computed = schreier_sims_order(e.degree, e.generators);
      if (computed != e.order)
        throw Error(ErrorCode::OrderMismatch, "entry " + e.name + " states order " +
                                                  std::to_string(e.order) + ", generators give " +
                                                  std::to_string(computed));
      for (const auto& s : g.value("subgroups", nlohmann::json::array())) {
        SubgroupEntry sub;
        sub.name = s.at("name").get<std::string>();
        sub.order = s.at("order").get<std::uint64_t>();
        sub.note = s.value("note", "");
        sub.generators = parse_generators(text, s.at("generators"), e.degree, e.name + "/" + sub.name);
        auto joint = e.generators;
        joint.insert(joint.end(), sub.generators.begin(), sub.generators.end());
        if (schreier_sims_order(e.degree, joint) != e.order)
          throw Error(ErrorCode::SubgroupNotContained, "subgroup " + sub.name + " of " + e.name +
                                                           " is not contained in the group");
        std::uint64_t sub_order = schreier_sims_order(e.degree, sub.generators);
        if (sub_order != sub.order)
          throw Error(ErrorCode::OrderMismatch, "subgroup " + sub.name + " of " + e.name +
                                                    " states order " + std::to_string(sub.order) +
                                                    ", generators give " + std::to_string(sub_order));
        e.subgroups.push_back(std::move(sub));
      }
      out.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return out;
}

std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open catalog " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog, std::string_view name) {
  for (const auto& e : catalog)
    if (e.name == name) return e;
  throw Error(ErrorCode::ParseError, "catalog has no group named " + std::string(name));
}

}  // namespace symframes
