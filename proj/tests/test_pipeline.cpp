#include <doctest.h>

#include <fstream>
#include <sstream>
#include <unistd.h>
#include <set>

#include "symframes/error.hpp"
#include "symframes/pipeline.hpp"

using namespace symframes;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("symframes-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

std::vector<CatalogEntry> bundled() { return load_catalog(fs::path(SYMFRAMES_DATA_DIR) / "catalog.json"); }

std::set<std::string> files(const fs::path& dir) {
  std::set<std::string> out;
  if (fs::exists(dir))
    for (const auto& e : fs::directory_iterator(dir)) out.insert(e.path().filename().string());
  return out;
}

void same_cells(const std::vector<RowCell>& a, const std::vector<RowCell>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].representative_index == b[i].representative_index);
    CHECK(a[i].size == b[i].size);
    CHECK(a[i].value == b[i].value);
  }
}

// A5 on five points with the subgroups used below; `alt` swaps in different generators.
std::string a5_catalog(bool alt) {
  std::string gens = alt ? "[[2,3,1,4,5],[1,2,4,5,3],[2,1,4,3,5]]" : "[[2,3,4,5,1],[1,2,4,5,3]]";
  return R"({"groups": [{"name": "A5", "degree": 5, "order": 60, "generators": )" + gens +
         R"(, "subgroups": [{"name": "C5", "order": 5, "generators": [[2,3,4,5,1]]},
                            {"name": "S3", "order": 6, "generators": [[2,3,1,4,5],[2,1,3,5,4]]}]}]})";
}

}  // namespace

TEST_CASE("cached rows reload exactly") {
  auto dir = scratch("reload");
  Context warm(bundled(), SYMFRAMES_DATA_DIR, dir);
  Context cold(bundled(), SYMFRAMES_DATA_DIR, std::nullopt);
  const CharacterSelector chi{5, 0};
  auto r1 = warm.row("PSU(4,2)", chi, "3^3:S4", {2, 0});
  auto x1 = warm.cross("PSU(4,2)", chi, "3^3:S4", {2, 0}, "2.(A4xA4).2", {6, 0});
  CHECK(files(dir).size() == 2);  // the cross row is computed without the second twisted row

  Context reload(bundled(), SYMFRAMES_DATA_DIR, dir);
  auto r2 = reload.row("PSU(4,2)", chi, "3^3:S4", {2, 0});
  auto r3 = cold.row("PSU(4,2)", chi, "3^3:S4", {2, 0});
  same_cells(r2->cells, r3->cells);
  same_cells(r1->cells, r2->cells);
  CHECK(r2->multiplicity == r3->multiplicity);

  auto x2 = reload.cross("PSU(4,2)", chi, "3^3:S4", {2, 0}, "2.(A4xA4).2", {6, 0});
  auto x3 = cold.cross("PSU(4,2)", chi, "3^3:S4", {2, 0}, "2.(A4xA4).2", {6, 0});
  same_cells(x2->cells, x3->cells);
  CHECK(x2->abs_squared == x3->abs_squared);
  CHECK(x2->scale_squared == x3->scale_squared);
  CHECK(x2->a == x3->a);
  CHECK(x2->exact_values == x3->exact_values);
  // the reloaded row still evaluates like the computed one
  for (std::uint32_t g = 0; g < 200; ++g) CHECK(r2->evaluate(g * 97 % 25920) == r3->evaluate(g * 97 % 25920));
  fs::remove_all(dir);
}

TEST_CASE("cache writes leave no temporaries and survive corruption") {
  auto dir = scratch("atomic");
  auto cat = parse_catalog(a5_catalog(false));
  {
    Context ctx(cat, SYMFRAMES_DATA_DIR, dir);
    ctx.row("A5", {3, 0}, "C5", {5, std::nullopt});
  }
  auto names = files(dir);
  REQUIRE(names.size() == 1);
  for (const auto& n : names) CHECK(n.find(".tmp") == std::string::npos);

  // truncate the entry: the next context must recompute and overwrite it
  const auto entry = dir / *names.begin();
  { std::ofstream(entry) << "{\"kind\": \"tsf\", \"cells\": ["; }
  Context fresh(cat, SYMFRAMES_DATA_DIR, dir);
  auto row = fresh.row("A5", {3, 0}, "C5", {5, std::nullopt});
  Context nocache(cat, SYMFRAMES_DATA_DIR, std::nullopt);
  same_cells(row->cells, nocache.row("A5", {3, 0}, "C5", {5, std::nullopt})->cells);
  std::ifstream in(entry);
  CHECK_NOTHROW(json::parse(in));

  // an entry with the wrong shape is rejected rather than trusted
  { std::ofstream(entry) << R"({"kind": "tsf", "multiplicity": 1, "cells": []})"; }
  Context again(cat, SYMFRAMES_DATA_DIR, dir);
  same_cells(again.row("A5", {3, 0}, "C5", {5, std::nullopt})->cells, row->cells);

  RowCache cache(dir);
  CHECK(cache.clear() == 1);
  CHECK(files(dir).empty());
  CHECK(RowCache(dir / "missing").clear() == 0);
  fs::remove_all(dir);
}

TEST_CASE("cache keys follow the generators") {
  auto dir = scratch("keys");
  Context a(parse_catalog(a5_catalog(false)), SYMFRAMES_DATA_DIR, dir);
  a.row("A5", {3, 0}, "S3", {2, 0});
  Context b(parse_catalog(a5_catalog(true)), SYMFRAMES_DATA_DIR, dir);
  b.row("A5", {3, 0}, "S3", {2, 0});
  CHECK(files(dir).size() == 2);
  // a different nu on the same subgroup is a different entry too
  const auto& c = a.character("A5", {3, 0});
  std::vector<std::size_t> once;
  const auto& nus = a.linear("A5", "C5");
  for (std::size_t i = 0, k = 0; i < nus.size(); ++i)
    if (nus[i].order == 5) {
      if (multiplicity(c, nus[i].character) == 1) once.push_back(k);
      ++k;
    }
  REQUIRE(once.size() == 2);
  a.row("A5", {3, 0}, "C5", {5, once[0]});
  a.row("A5", {3, 0}, "C5", {5, once[1]});
  CHECK(files(dir).size() == 4);
  fs::remove_all(dir);
}

TEST_CASE("default cache directory honours the override") {
  ::setenv("SYMFRAMES_CACHE_DIR", "/tmp/override-here", 1);
  CHECK(RowCache::default_directory() == fs::path("/tmp/override-here"));
  ::unsetenv("SYMFRAMES_CACHE_DIR");
  ::setenv("XDG_CACHE_HOME", "/tmp/xdg", 1);
  CHECK(RowCache::default_directory() == fs::path("/tmp/xdg/symframes"));
  ::unsetenv("XDG_CACHE_HOME");
}

TEST_CASE("recipe parse errors") {
  auto parse_error = [](const json& j) {
    try {
      parse_recipe(j);
    } catch (const Error& e) {
      return e.code() == ErrorCode::ParseError;
    }
    return false;
  };
  CHECK(parse_error(json::array()));
  CHECK(parse_error(json{{"mode", "code"}}));
  CHECK(parse_error(json{{"name", "x"}, {"mode", "shape"}}));
  CHECK(parse_error(json{{"name", "x"}, {"group", "A5"}}));  // no character
  CHECK(parse_error(json{{"name", "x"}, {"group", "A5"}, {"character", {{"degree", 3}}}}));  // no blocks
  CHECK(parse_error(json{{"name", "x"}, {"explicit", true}, {"lift", "r12"}, {"blocks", json::array()}}));
  CHECK(parse_error(json::parse(R"({"name": "x", "explicit": true,
      "blocks": [{"name": "b", "source": "e7", "phase": [8]}]})")));
  CHECK_THROWS_AS(load_recipe("/nonexistent/recipe.json"), Error);

  auto r = parse_recipe(json::parse(R"({"name": "x", "group": "A5", "character": {"degree": 3},
      "frames": [{"name": "F", "subgroup": "C5", "nu": {"order": 5}}],
      "crosses": [{"first": "F", "second": "F", "phase": "scan"}],
      "blocks": [{"name": "F", "source": "F", "phase": [4, 1]}]})"));
  CHECK(r.chi.index == 0);
  CHECK_FALSE(r.frames[0].nu.index);
  CHECK_FALSE(r.crosses[0].phase);
  CHECK(r.blocks[0].phase == std::pair<long, long>{4, 1});

  Context ctx(bundled(), SYMFRAMES_DATA_DIR, std::nullopt);
  auto unknown = parse_recipe(json::parse(R"({"name": "u", "explicit": true,
      "blocks": [{"name": "b", "source": "e9"}]})"));
  CHECK_THROWS_WITH_AS(run_recipe(ctx, unknown, true), doctest::Contains("ParseError"), Error);
}

TEST_CASE("bundled recipes parse") {
  for (const auto& e : fs::directory_iterator(fs::path(SYMFRAMES_DATA_DIR) / "recipes")) {
    CAPTURE(e.path().string());
    CHECK_NOTHROW(load_recipe(e.path()));
  }
}

TEST_CASE("explicit recipe exports exact coordinates") {
  Context ctx(bundled(), SYMFRAMES_DATA_DIR, std::nullopt);
  auto r = parse_recipe(json::parse(R"({"name": "d7", "explicit": true, "dimension": 7,
      "blocks": [{"name": "d7", "source": "d7"}]})"));
  auto res = run_recipe(ctx, r, true);
  REQUIRE(res.kissing);
  CHECK(res.kissing->valid);
  std::istringstream in(export_coordinates(res));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    auto v = json::parse(line);
    REQUIRE(v.size() == 7);
    Cyclotomic norm(0);
    for (const auto& x : v) norm += abs_squared(Cyclotomic::from_json(x));
    CHECK(norm == Cyclotomic(1));
    ++n;
  }
  CHECK(n == 84);
  // the same report twice is byte-identical
  CHECK(to_json(res).dump() == to_json(run_recipe(ctx, r, true)).dump());
}

TEST_CASE("reproduction reports") {
  Context ctx(bundled(), SYMFRAMES_DATA_DIR, std::nullopt);
  CHECK_THROWS_WITH_AS(reproduce(ctx, "nope"), doctest::Contains("UnknownExample"), Error);
  for (const char* id : {"psp45", "w-e8", "st34"}) {
    CHECK_THROWS_WITH_AS(reproduce(ctx, id), doctest::Contains("cap"), Error);
    CHECK(unsupported_reason(id));
  }
  CHECK_FALSE(unsupported_reason("a5"));

  auto a5 = reproduce(ctx, "a5");
  CHECK_FALSE(a5.ok());
  std::set<std::string> mismatched;
  for (const auto& c : a5.checks) {
    CHECK_FALSE(c.citation.empty());
    CHECK_FALSE(c.expected.empty());
    if (!c.match) mismatched.insert(c.label);
  }
  // both disagreements trace back to the published values, see the notes
  CHECK(mismatched == std::set<std::string>{"cross row nu1/nu2, (modulus, size)", "twisted line count"});
  auto j = a5.to_json();
  CHECK(j["verdict"] == "mismatch");
  CHECK(j["checks"].size() == a5.checks.size());

  auto m12 = reproduce(ctx, "m12-78");
  CHECK(m12.ok());
  for (const auto& c : m12.checks) CHECK_FALSE(c.citation.empty());
}
