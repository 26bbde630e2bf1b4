#include "symframes/symframes.h"

#include <cstring>
#include <cstdlib>
#include <new>

#include "symframes/error.hpp"
#include "symframes/pipeline.hpp"

#ifndef SYMFRAMES_DEFAULT_DATA_DIR
#define SYMFRAMES_DEFAULT_DATA_DIR "data"
#endif

struct sf_context {
  symframes::Context ctx;
};

namespace {

using namespace symframes;
using nlohmann::json;

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sf_status status_of(ErrorCode code) { return static_cast<sf_status>(static_cast<int>(code) + 1); }

template <class F>
sf_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return SF_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("ParseError: ") + e.what();
    return SF_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    last_error = "Internal: out of memory";
    return SF_INTERNAL;
  } catch (const std::exception& e) {
    last_error = std::string("Internal: ") + e.what();
    return SF_INTERNAL;
  }
}

sf_status invalid(const char* what) {
  last_error = std::string("invalid argument: ") + what;
  return SF_INVALID_ARGUMENT;
}

NuSelector nu_selector(int order, int index) {
  NuSelector s{order, std::nullopt};
  if (index >= 0) s.index = static_cast<std::size_t>(index);
  return s;
}

}  // namespace

extern "C" {

sf_status sf_context_new(const char* catalog_path, const char* data_dir, const char* cache_dir, sf_context** out) {
  if (!out) return invalid("out");
  *out = nullptr;
  return guarded([&] {
    std::filesystem::path data = data_dir ? data_dir : SYMFRAMES_DEFAULT_DATA_DIR;
    std::filesystem::path catalog = catalog_path ? std::filesystem::path(catalog_path) : data / "catalog.json";
    std::optional<std::filesystem::path> cache;
    if (!cache_dir) cache = RowCache::default_directory();
    else if (*cache_dir) cache = cache_dir;
    *out = new sf_context{Context(load_catalog(catalog), data, cache)};
  });
}

void sf_context_free(sf_context* ctx) { delete ctx; }

const char* sf_last_error(void) { return last_error.c_str(); }

const char* sf_status_name(sf_status status) {
  if (status == SF_OK) return "Ok";
  if (status == SF_INVALID_ARGUMENT) return "InvalidArgument";
  if (status < SF_OK || status > SF_INTERNAL) return "Unknown";
  return error_code_name(static_cast<ErrorCode>(static_cast<int>(status) - 1));
}

void sf_string_free(char* s) { std::free(s); }

sf_status sf_group_info(sf_context* ctx, const char* group, char** json_out) {
  if (!ctx || !group || !json_out) return invalid("null pointer");
  return guarded([&] { *json_out = dup(group_info_json(ctx->ctx, group).dump()); });
}

sf_status sf_chartab(sf_context* ctx, const char* group, char** json_out) {
  if (!ctx || !group || !json_out) return invalid("null pointer");
  return guarded([&] {
    json out = to_json(ctx->ctx.table(group));
    out["group"] = group;
    *json_out = dup(out.dump());
  });
}

sf_status sf_tsf(sf_context* ctx, const char* group, const char* subgroup, int chi_degree, int chi_index,
                 int nu_order, int nu_index, char** json_out) {
  if (!ctx || !group || !subgroup || !json_out) return invalid("null pointer");
  if (chi_degree <= 0 || chi_index < 0 || nu_order <= 0) return invalid("character selector");
  return guarded([&] {
    CharacterSelector chi{chi_degree, static_cast<std::size_t>(chi_index)};
    auto row = ctx->ctx.row(group, chi, subgroup, nu_selector(nu_order, nu_index));
    std::optional<HomogenizedFrame> frame;
    if (row->multiplicity == 1) frame = homogenize(row);
    json out = to_json(*row, frame);
    out["group"] = group;
    out["subgroup"] = subgroup;
    *json_out = dup(out.dump());
  });
}

sf_status sf_cross(sf_context* ctx, const char* group, int chi_degree, int chi_index, const char* subgroup1,
                   int nu1_order, int nu1_index, const char* subgroup2, int nu2_order, int nu2_index,
                   char** json_out) {
  if (!ctx || !group || !subgroup1 || !subgroup2 || !json_out) return invalid("null pointer");
  if (chi_degree <= 0 || chi_index < 0 || nu1_order <= 0 || nu2_order <= 0) return invalid("character selector");
  return guarded([&] {
    CharacterSelector chi{chi_degree, static_cast<std::size_t>(chi_index)};
    auto row = ctx->ctx.cross(group, chi, subgroup1, nu_selector(nu1_order, nu1_index), subgroup2,
                              nu_selector(nu2_order, nu2_index));
    json out = to_json(*row);
    out["group"] = group;
    out["subgroups"] = {subgroup1, subgroup2};
    *json_out = dup(out.dump());
  });
}

sf_status sf_code_build(sf_context* ctx, const char* recipe_path, int verify, long dimension, char** json_out,
                        char** coordinates_out) {
  if (!ctx || !recipe_path || !json_out) return invalid("null pointer");
  return guarded([&] {
    auto recipe = load_recipe(recipe_path);
    std::optional<long> dim;
    if (dimension > 0) dim = dimension;
    auto result = run_recipe(ctx->ctx, recipe, verify != 0, dim);
    std::string coords;
    if (coordinates_out) coords = export_coordinates(result);
    *json_out = dup(to_json(result).dump());
    if (coordinates_out) *coordinates_out = dup(coords);
  });
}

sf_status sf_examples(char** json_out) {
  if (!json_out) return invalid("null pointer");
  return guarded([&] {
    json out = {{"reproducible", reproducible_examples()}, {"unsupported", json::object()}};
    for (const char* id : {"psp45", "w-e8", "st34"}) out["unsupported"][id] = *unsupported_reason(id);
    *json_out = dup(out.dump());
  });
}

sf_status sf_reproduce(sf_context* ctx, const char* example_id, int* ok, char** json_out) {
  if (!ctx || !example_id || !ok || !json_out) return invalid("null pointer");
  return guarded([&] {
    auto report = reproduce(ctx->ctx, example_id);
    *ok = report.ok() ? 1 : 0;
    *json_out = dup(report.to_json().dump());
  });
}

sf_status sf_cache_directory(sf_context* ctx, char** path_out) {
  if (!ctx || !path_out) return invalid("null pointer");
  return guarded([&] { *path_out = dup(ctx->ctx.cache() ? ctx->ctx.cache()->directory().string() : ""); });
}

sf_status sf_cache_clear(sf_context* ctx, size_t* removed) {
  if (!ctx || !removed) return invalid("null pointer");
  return guarded([&] { *removed = ctx->ctx.cache() ? ctx->ctx.cache()->clear() : 0; });
}

}  // extern "C"
