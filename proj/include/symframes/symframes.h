/* C interface to the symframes library. All report outputs are JSON text owned by the
   caller and released with sf_string_free. */
#ifndef SYMFRAMES_H
#define SYMFRAMES_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SF_API __declspec(dllexport)
#else
#define SF_API __attribute__((visibility("default")))
#endif

typedef struct sf_context sf_context;

typedef enum sf_status {
  SF_OK = 0,
  SF_NON_BIJECTIVE_IMAGE,
  SF_DEGREE_MISMATCH,
  SF_ORDER_EXCEEDS_CAP,
  SF_NOT_A_SUBGROUP,
  SF_BUDGET_EXHAUSTED,
  SF_PRECISION_UNREACHABLE,
  SF_NOT_REAL,
  SF_NON_INTEGER_MULTIPLICITY,
  SF_NO_SUCH_CHARACTER,
  SF_ZERO_MULTIPLICITY,
  SF_NOT_LINEAR_CHARACTER,
  SF_ELEMENT_NOT_IN_GROUP,
  SF_STABILIZER_NOT_SUBGROUP,
  SF_MULTIPLICITY_NOT_ONE,
  SF_ALL_CHOICES_ZERO,
  SF_MISSING_CROSS_BLOCK,
  SF_INCONSISTENT_DIMENSIONS,
  SF_NO_FEASIBLE_PHASE,
  SF_NOT_PSD,
  SF_RANK_EXCEEDS_DIMENSION,
  SF_DUPLICATE_VECTORS,
  SF_COHERENCE_EXCEEDED,
  SF_NORMALIZATION_NOT_EXACT,
  SF_PARSE_ERROR,
  SF_ORDER_MISMATCH,
  SF_SUBGROUP_NOT_CONTAINED,
  SF_UNKNOWN_EXAMPLE,
  SF_UNSUPPORTED,
  SF_INTERNAL,
  SF_INVALID_ARGUMENT
} sf_status;

/* Pass NULL for any argument to use the default: the bundled catalog, the bundled data
   directory, and the cache directory from SYMFRAMES_CACHE_DIR / XDG_CACHE_HOME / HOME.
   An empty cache_dir string disables the disk cache. */
SF_API sf_status sf_context_new(const char* catalog_path, const char* data_dir, const char* cache_dir,
                                 sf_context** out);
SF_API void sf_context_free(sf_context* ctx);

/* Message of the last failure on this thread. Never NULL. */
SF_API const char* sf_last_error(void);
SF_API const char* sf_status_name(sf_status status);
SF_API void sf_string_free(char* s);

SF_API sf_status sf_group_info(sf_context* ctx, const char* group, char** json_out);
SF_API sf_status sf_chartab(sf_context* ctx, const char* group, char** json_out);

/* nu_index < 0 selects the first linear character of the given order with multiplicity one. */
SF_API sf_status sf_tsf(sf_context* ctx, const char* group, const char* subgroup, int chi_degree, int chi_index,
                        int nu_order, int nu_index, char** json_out);
SF_API sf_status sf_cross(sf_context* ctx, const char* group, int chi_degree, int chi_index, const char* subgroup1,
                          int nu1_order, int nu1_index, const char* subgroup2, int nu2_order, int nu2_index,
                          char** json_out);

/* dimension <= 0 keeps the recipe's dimension. coordinates_out may be NULL. */
SF_API sf_status sf_code_build(sf_context* ctx, const char* recipe_path, int verify, long dimension, char** json_out,
                               char** coordinates_out);

SF_API sf_status sf_examples(char** json_out);
/* *ok is set to 1 when every embedded expectation matched. */
SF_API sf_status sf_reproduce(sf_context* ctx, const char* example_id, int* ok, char** json_out);

SF_API sf_status sf_cache_directory(sf_context* ctx, char** path_out);
SF_API sf_status sf_cache_clear(sf_context* ctx, size_t* removed);

#ifdef __cplusplus
}
#endif

#endif
