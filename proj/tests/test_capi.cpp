#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "symframes/symframes.h"

using nlohmann::json;

namespace {

struct Ctx {
  sf_context* p = nullptr;
  explicit Ctx(const char* cache = "") { REQUIRE(sf_context_new(nullptr, SYMFRAMES_DATA_DIR, cache, &p) == SF_OK); }
  ~Ctx() { sf_context_free(p); }
};

json take(char* s) {
  REQUIRE(s != nullptr);
  auto j = json::parse(s);
  sf_string_free(s);
  return j;
}

int run(const std::string& args, const std::string& cache) {
  std::string cmd = "SYMFRAMES_CACHE_DIR=" + cache + " " + SYMFRAMES_CLI + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string capture(const std::string& args) {
  std::string cmd = std::string(SYMFRAMES_CLI) + " --no-cache " + args;
  std::string out;
  FILE* f = ::popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, f)) out.append(buf, n);
  ::pclose(f);
  return out;
}

}  // namespace

TEST_CASE("context creation failures") {
  sf_context* p = nullptr;
  CHECK(sf_context_new("/nonexistent/catalog.json", nullptr, "", &p) == SF_PARSE_ERROR);
  CHECK(p == nullptr);
  CHECK(std::string(sf_last_error()).find("catalog") != std::string::npos);
  CHECK(sf_context_new(nullptr, nullptr, "", nullptr) == SF_INVALID_ARGUMENT);
  CHECK(std::string(sf_status_name(SF_PARSE_ERROR)) == "ParseError");
  CHECK(std::string(sf_status_name(SF_INTERNAL)) == "Internal");
  CHECK(std::string(sf_status_name(SF_MULTIPLICITY_NOT_ONE)) == "MultiplicityNotOne");
}

TEST_CASE("queries through the C interface") {
  Ctx ctx;
  char* out = nullptr;
  REQUIRE(sf_group_info(ctx.p, "A5", &out) == SF_OK);
  auto info = take(out);
  CHECK(info["order"] == 60);
  CHECK(info["classes"] == 5);

  REQUIRE(sf_chartab(ctx.p, "A5", &out) == SF_OK);
  auto tab = take(out);
  CHECK(tab["rows"].size() == 5);

  REQUIRE(sf_tsf(ctx.p, "A5", "C5", 3, 0, 1, 0, &out) == SF_OK);
  auto row = take(out);
  CHECK(row["cells"].size() == 4);
  CHECK(row["homogenized"]["lines"] == 6);

  REQUIRE(sf_tsf(ctx.p, "A5", "C5", 3, 0, 5, -1, &out) == SF_OK);
  CHECK(take(out)["homogenized"]["lines"] == 12);

  CHECK(sf_tsf(ctx.p, "A5", "C5", 2, 0, 1, 0, &out) == SF_NO_SUCH_CHARACTER);
  CHECK(sf_tsf(ctx.p, "A5", "C7", 3, 0, 1, 0, &out) == SF_PARSE_ERROR);
  CHECK(sf_tsf(ctx.p, "Nope", "C5", 3, 0, 1, 0, &out) != SF_OK);
  CHECK(sf_tsf(ctx.p, "A5", "C5", 0, 0, 1, 0, &out) == SF_INVALID_ARGUMENT);
  CHECK(std::string(sf_last_error()).size() > 0);

  REQUIRE(sf_cross(ctx.p, "A5", 3, 0, "C5", 5, -1, "C5", 1, 0, &out) == SF_OK);
  CHECK(take(out)["cells"].size() > 0);
}

TEST_CASE("recipes and reproduction through the C interface") {
  Ctx ctx;
  char *out = nullptr, *coords = nullptr;
  std::string recipe = std::string(SYMFRAMES_DATA_DIR) + "/recipes/psu42-r11.json";
  REQUIRE(sf_code_build(ctx.p, recipe.c_str(), 1, 0, &out, &coords) == SF_OK);
  auto res = take(out);
  CHECK(res["kissing"]["valid"] == true);
  CHECK(res["kissing"]["vectors"] == 592);
  std::string c = coords;
  sf_string_free(coords);
  CHECK(std::count(c.begin(), c.end(), '\n') == 592);

  CHECK(sf_code_build(ctx.p, "/nonexistent.json", 1, 0, &out, nullptr) == SF_PARSE_ERROR);

  int ok = -1;
  REQUIRE(sf_reproduce(ctx.p, "m12-78", &ok, &out) == SF_OK);
  CHECK(ok == 1);
  CHECK(take(out)["verdict"] == "match");
  CHECK(sf_reproduce(ctx.p, "psp45", &ok, &out) == SF_UNSUPPORTED);
  CHECK(std::string(sf_last_error()).find("4680000") != std::string::npos);
  CHECK(sf_reproduce(ctx.p, "zzz", &ok, &out) == SF_UNKNOWN_EXAMPLE);

  REQUIRE(sf_examples(&out) == SF_OK);
  auto ex = take(out);
  CHECK(ex["reproducible"].size() == 6);
  CHECK(ex["unsupported"].contains("w-e8"));
}

TEST_CASE("cache directory and clearing") {
  auto dir = std::filesystem::temp_directory_path() / ("symframes-capi-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  Ctx ctx(dir.c_str());
  char* out = nullptr;
  REQUIRE(sf_tsf(ctx.p, "A5", "C5", 3, 0, 1, 0, &out) == SF_OK);
  sf_string_free(out);
  REQUIRE(sf_cache_directory(ctx.p, &out) == SF_OK);
  CHECK(std::string(out) == dir.string());
  sf_string_free(out);
  std::size_t removed = 0;
  REQUIRE(sf_cache_clear(ctx.p, &removed) == SF_OK);
  CHECK(removed == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("command line exit codes and determinism") {
  auto dir = (std::filesystem::temp_directory_path() / ("symframes-cli-" + std::to_string(::getpid()))).string();
  CHECK(run("group info A5", dir) == 0);
  CHECK(run("chartab M12", dir) == 0);
  CHECK(run("tsf --group A5 --subgroup C5 --char-degree 3 --nu-order 5", dir) == 0);
  CHECK(run("tsf --group A5 --subgroup C5 --char-degree 9", dir) == 3);
  CHECK(run("tsf --group A5", dir) == 3);
  CHECK(run("reproduce m12-78", dir) == 0);
  CHECK(run("reproduce a5", dir) == 2);
  CHECK(run("reproduce psp45", dir) == 3);
  CHECK(run("reproduce nothing", dir) == 3);
  CHECK(run("reproduce --list", dir) == 0);
  CHECK(run("cache clear", dir) == 0);
  CHECK(run("frobnicate", dir) == 3);

  std::string a = capture("--json tsf --group 'PSU(4,2)' --subgroup '3^3:S4' --char-degree 5 --nu-order 2");
  CHECK(a.find("\"lines\": 40") != std::string::npos);
  CHECK(a == capture("--json tsf --group 'PSU(4,2)' --subgroup '3^3:S4' --char-degree 5 --nu-order 2"));
  std::string t1 = capture("chartab A5"), t2 = capture("chartab A5");
  CHECK(t1 == t2);
  CHECK(t1.find("E(5)") != std::string::npos);
  std::filesystem::remove_all(dir);
}
