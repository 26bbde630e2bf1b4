// Command-line front end. Talks to the library only through the C interface.
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "symframes/symframes.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0, kExitMismatch = 2, kExitInput = 3, kExitInternal = 4;

struct Options {
  bool as_json = false;
  std::string catalog, data_dir, cache_dir;
  bool no_cache = false;
};

class Failure : public std::runtime_error {
 public:
  Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

int exit_code_for(sf_status s) { return s == SF_INTERNAL ? kExitInternal : kExitInput; }

void check(sf_status s) {
  if (s != SF_OK) throw Failure(exit_code_for(s), sf_last_error());
}

std::string take(char* s) {
  std::string out = s ? s : "";
  sf_string_free(s);
  return out;
}

using ContextPtr = std::unique_ptr<sf_context, decltype(&sf_context_free)>;

ContextPtr open(const Options& o) {
  sf_context* ctx = nullptr;
  const char* cache = o.no_cache ? "" : (o.cache_dir.empty() ? nullptr : o.cache_dir.c_str());
  check(sf_context_new(o.catalog.empty() ? nullptr : o.catalog.c_str(), o.data_dir.empty() ? nullptr : o.data_dir.c_str(),
                       cache, &ctx));
  return {ctx, &sf_context_free};
}

std::string str(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void print_cells(const json& cells) {
  std::ostringstream exact, decimal, sizes;
  for (const auto& c : cells) {
    if (c.contains("exact")) {
      exact << '[' << str(c["exact"]) << ',' << c["size"] << ']';
      decimal << '[' << str(c["decimal"]) << ',' << c["size"] << ']';
    } else {
      exact << '[' << str(c["raw"]) << ',' << c["size"] << ']';
    }
    sizes << '[' << str(c["abs_squared"]) << ',' << c["size"] << ']';
  }
  std::cout << "  exact:    " << exact.str() << '\n';
  if (!decimal.str().empty()) std::cout << "  decimal:  " << decimal.str() << '\n';
  std::cout << "  |value|^2: " << sizes.str() << '\n';
}

void print_lines(const json& s) {
  std::cout << "lines " << s["lines"] << ", vectors " << s["vectors"] << ", gon order " << s["gon_order"]
            << ", line stabilizer order " << s["line_stabilizer_order"] << '\n';
  for (const auto& a : s["angles"]) {
    std::cout << "  |<u,v>| = " << (a["modulus"].is_null() ? "sqrt(" + str(a["abs_squared"]) + ")" : str(a["modulus"]))
              << "  (" << std::setprecision(12) << a["decimal"].get<double>() << "), " << a["pairs"] << " ordered pairs\n";
  }
}

void print_kissing(const json& k) {
  std::cout << "kissing check: " << (k["valid"].get<bool>() ? "VALID" : "INVALID") << '\n'
            << "  vectors " << k["vectors"] << " in dimension " << k["dimension"] << '\n'
            << "  max real part " << str(k["max_real_part"]["exact"]) << " (within bound: " << k["within_bound"] << ")\n"
            << "  unit diagonal " << k["unit_diagonal"] << ", distinct " << k["distinct"] << '\n'
            << "  psd " << k["psd"] << ", numerical rank " << k["numerical_rank"] << ", min eigenvalue "
            << k["min_eigenvalue"] << " (tolerance " << k["tolerance"] << ")\n  entry values:";
  for (const auto& v : k["entry_values"]) std::cout << ' ' << str(v);
  std::cout << '\n';
}

int emit(const Options& o, const json& j, void (*text)(const json&)) {
  if (o.as_json) std::cout << j.dump(2) << '\n';
  else text(j);
  return kExitOk;
}

void text_group(const json& j) {
  std::cout << j["name"].get<std::string>() << ": degree " << j["degree"] << ", order " << j["order"] << ", "
            << j["classes"] << " conjugacy classes\n";
  if (!j["provenance"].get<std::string>().empty()) std::cout << "  " << str(j["provenance"]) << '\n';
  for (const auto& g : j["generators"]) std::cout << "  generator " << str(g) << '\n';
  for (const auto& s : j["subgroups"]) {
    std::cout << "  subgroup " << str(s["name"]) << " of order " << s["order"] << ", linear character orders";
    for (const auto& k : s["linear_character_orders"]) std::cout << ' ' << k;
    std::cout << '\n';
  }
}

void text_chartab(const json& j) {
  std::cout << str(j["group"]) << ", order " << j["order"] << ", computed modulo p = " << j["prime"] << '\n';
  std::cout << "classes:";
  for (const auto& c : j["classes"]) std::cout << "  " << c["element_order"] << "x" << c["size"];
  std::cout << "  (element order x class size)\n";
  std::size_t i = 0;
  for (const auto& r : j["rows"]) {
    std::cout << "chi" << i++ << ':';
    for (const auto& v : r) std::cout << "  " << str(v["exact"]);
    std::cout << "\n     ";
    for (const auto& v : r) std::cout << "  " << str(v["decimal"]);
    std::cout << '\n';
  }
}

void text_tsf(const json& j) {
  std::cout << "row for " << str(j["group"]) << " / " << str(j["subgroup"]) << ": dimension " << j["dimension"]
            << ", nu order " << j["nu_order"] << ", multiplicity " << j["multiplicity"] << '\n';
  print_cells(j["cells"]);
  if (j.contains("homogenized")) print_lines(j["homogenized"]);
}

void text_cross(const json& j) {
  std::cout << "cross row for " << str(j["group"]) << " / " << str(j["subgroups"][0]) << ", " << str(j["subgroups"][1])
            << ": dimension " << j["dimension"] << ", a = " << str(j["a"]) << '\n';
  if (!j["exact_values"].get<bool>())
    std::cout << "  normalization is irrational; values shown up to the scale sqrt(" << str(j["scale_squared"]) << ")\n";
  print_cells(j["cells"]);
}

void text_recipe(const json& j) {
  std::cout << "recipe " << str(j["recipe"]) << " (" << str(j["mode"]) << ")\n";
  if (j.contains("chosen_phases"))
    for (const auto& [k, v] : j["chosen_phases"].items()) std::cout << "  cross phase " << k << " = " << str(v) << '\n';
  if (j.contains("blocks"))
    for (const auto& b : j["blocks"])
      std::cout << "  block " << str(b["name"]) << ": " << b["count"] << " vectors, phase " << str(b["phase"]) << '\n';
  if (j.contains("vectors")) std::cout << "  " << j["vectors"] << " vectors\n";
  if (j.contains("kissing")) print_kissing(j["kissing"]);
  if (j.contains("lines")) print_lines(j["lines"]);
  if (j.contains("coherence")) {
    const auto& c = j["coherence"];
    std::cout << "coherence " << (c["exact"].is_null() ? "sqrt(" + str(c["abs_squared"]) + ")" : str(c["exact"])) << " = "
              << std::setprecision(12) << c["decimal"].get<double>();
    if (!c["reference"].is_null()) std::cout << ", reference " << c["reference"].get<double>();
    std::cout << '\n';
  }
}

void text_report(const json& j) {
  std::cout << "example " << str(j["example"]) << ": " << str(j["verdict"]) << '\n';
  for (const auto& c : j["checks"]) {
    std::cout << (c["match"].get<bool>() ? "  [match]    " : "  [MISMATCH] ") << str(c["label"]) << '\n'
              << "      expected: " << str(c["expected"]) << '\n'
              << "      computed: " << str(c["computed"]) << '\n'
              << "      source:   " << str(c["citation"]) << '\n';
    if (!c["note"].get<std::string>().empty()) std::cout << "      note:     " << str(c["note"]) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symframes: group frames, line systems and spherical codes from finite groups"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.as_json, "emit JSON instead of text");
  app.add_option("--catalog", o.catalog, "group catalog file");
  app.add_option("--data-dir", o.data_dir, "directory holding the catalog and recipes");
  app.add_option("--cache-dir", o.cache_dir, "row cache directory (default: $SYMFRAMES_CACHE_DIR)");
  app.add_flag("--no-cache", o.no_cache, "do not read or write the row cache");

  auto* group = app.add_subcommand("group", "catalog groups");
  auto* group_info = group->add_subcommand("info", "describe a catalog group");
  group->require_subcommand(1);
  std::string group_name;
  group_info->add_option("group", group_name)->required();

  auto* chartab = app.add_subcommand("chartab", "character table of a catalog group");
  chartab->add_option("group", group_name)->required();

  std::string subgroup, subgroup2;
  int chi_degree = 0, chi_index = 0, nu_order = 1, nu_index = -1, nu2_order = 1, nu2_index = -1;
  auto* tsf = app.add_subcommand("tsf", "twisted spherical function row");
  tsf->add_option("--group", group_name)->required();
  tsf->add_option("--subgroup", subgroup)->required();
  tsf->add_option("--char-degree", chi_degree)->required();
  tsf->add_option("--char-index", chi_index);
  tsf->add_option("--nu-order", nu_order);
  tsf->add_option("--nu-index", nu_index, "default: first character of that order with multiplicity one");

  auto* cross = app.add_subcommand("cross", "cross-Gram row between two subgroup/character pairs");
  cross->add_option("--group", group_name)->required();
  cross->add_option("--char-degree", chi_degree)->required();
  cross->add_option("--char-index", chi_index);
  cross->add_option("--subgroup1", subgroup)->required();
  cross->add_option("--nu1-order", nu_order);
  cross->add_option("--nu1-index", nu_index);
  cross->add_option("--subgroup2", subgroup2)->required();
  cross->add_option("--nu2-order", nu2_order);
  cross->add_option("--nu2-index", nu2_index);

  auto* code = app.add_subcommand("code", "assemble and verify codes from recipes");
  code->require_subcommand(1);
  std::string recipe, export_path;
  long dim = 0;
  auto* build = code->add_subcommand("build", "assemble a recipe");
  build->add_option("--recipe", recipe)->required()->check(CLI::ExistingFile);
  build->add_option("--export", export_path, "write coordinates, one vector per line");
  auto* verify = code->add_subcommand("verify", "assemble a recipe and check it as a kissing configuration");
  verify->add_option("--recipe", recipe)->required()->check(CLI::ExistingFile);
  verify->add_option("--dim", dim, "target dimension (default: the recipe's)");

  auto* repro = app.add_subcommand("reproduce", "rerun a worked example against its reference values");
  std::string example;
  bool list = false;
  repro->add_option("example", example);
  repro->add_flag("--list", list, "list example ids");

  auto* cache = app.add_subcommand("cache", "row cache maintenance");
  cache->require_subcommand(1);
  auto* cache_clear = cache->add_subcommand("clear", "remove cached rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (group_info->parsed()) {
      auto ctx = open(o);
      char* out = nullptr;
      check(sf_group_info(ctx.get(), group_name.c_str(), &out));
      return emit(o, json::parse(take(out)), text_group);
    }
    if (chartab->parsed()) {
      auto ctx = open(o);
      char* out = nullptr;
      check(sf_chartab(ctx.get(), group_name.c_str(), &out));
      return emit(o, json::parse(take(out)), text_chartab);
    }
    if (tsf->parsed()) {
      auto ctx = open(o);
      char* out = nullptr;
      check(sf_tsf(ctx.get(), group_name.c_str(), subgroup.c_str(), chi_degree, chi_index, nu_order, nu_index, &out));
      return emit(o, json::parse(take(out)), text_tsf);
    }
    if (cross->parsed()) {
      auto ctx = open(o);
      char* out = nullptr;
      check(sf_cross(ctx.get(), group_name.c_str(), chi_degree, chi_index, subgroup.c_str(), nu_order, nu_index,
                     subgroup2.c_str(), nu2_order, nu2_index, &out));
      return emit(o, json::parse(take(out)), text_cross);
    }
    if (build->parsed() || verify->parsed()) {
      auto ctx = open(o);
      char *out = nullptr, *coords = nullptr;
      const bool checking = verify->parsed();
      check(sf_code_build(ctx.get(), recipe.c_str(), checking ? 1 : 0, dim, &out,
                          export_path.empty() ? nullptr : &coords));
      json j = json::parse(take(out));
      if (!export_path.empty()) {
        std::ofstream f(export_path);
        f << take(coords);
        if (!f) throw Failure(kExitInput, "cannot write " + export_path);
      }
      emit(o, j, text_recipe);
      if (checking && j.contains("kissing") && !j["kissing"]["valid"].get<bool>()) return kExitMismatch;
      return kExitOk;
    }
    if (repro->parsed()) {
      if (list || example.empty()) {
        char* out = nullptr;
        check(sf_examples(&out));
        json j = json::parse(take(out));
        if (o.as_json) {
          std::cout << j.dump(2) << '\n';
        } else {
          for (const auto& id : j["reproducible"]) std::cout << str(id) << '\n';
          for (const auto& [id, why] : j["unsupported"].items()) std::cout << id << " (unsupported: " << str(why) << ")\n";
        }
        return example.empty() && !list ? kExitInput : kExitOk;
      }
      auto ctx = open(o);
      char* out = nullptr;
      int ok = 0;
      sf_status s = sf_reproduce(ctx.get(), example.c_str(), &ok, &out);
      if (s == SF_UNSUPPORTED) throw Failure(kExitInput, std::string("unsupported example: ") + sf_last_error());
      check(s);
      emit(o, json::parse(take(out)), text_report);
      return ok ? kExitOk : kExitMismatch;
    }
    if (cache_clear->parsed()) {
      auto ctx = open(o);
      char* dir = nullptr;
      std::size_t removed = 0;
      check(sf_cache_directory(ctx.get(), &dir));
      check(sf_cache_clear(ctx.get(), &removed));
      std::string path = take(dir);
      if (o.as_json) std::cout << json{{"directory", path}, {"removed", removed}}.dump(2) << '\n';
      else std::cout << "removed " << removed << " cached entries from " << (path.empty() ? "(no cache)" : path) << '\n';
      return kExitOk;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.what() << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}
