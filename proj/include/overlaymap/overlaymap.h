/*
Copyright 2026 The overlaymap Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef OVERLAYMAP_H
#define OVERLAYMAP_H

#include <stddef.h>

#if defined(_WIN32)
   #ifdef OVERLAYMAP_EXPORTS
      #define OM_API __declspec(dllexport)
   #else
      #define OM_API __declspec(dllimport)
   #endif
#else
   #define OM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/*
 * Every function returning om_status reports failures through it; the
 * message of the last failure on the calling thread is available from
 * om_last_error(). Handles are immutable once created and may be shared
 * between threads for reading. Strings returned through char** are owned by
 * the caller and released with om_string_free(); const char* results point
 * into the handle they came from and live as long as it does.
 */

typedef enum om_status {
   OM_OK = 0,
   OM_E_INVALID_ARGUMENT = 1, /* null pointer, bad enum, precondition broken */
   OM_E_PARSE = 2,            /* malformed Pajek / CSV / JSON text */
   OM_E_DATA = 3,             /* well-formed input violating a domain invariant */
   OM_E_OUT_OF_RANGE = 4,     /* index past the end of a handle */
   OM_E_INTERNAL = 5
} om_status;

typedef enum om_symmetry_policy { OM_SYMMETRY_STRICT = 0, OM_SYMMETRY_SYMMETRIZE = 1 } om_symmetry_policy;
typedef enum om_unknown_policy { OM_UNKNOWN_ERROR = 0, OM_UNKNOWN_SKIP = 1 } om_unknown_policy;
typedef enum om_unit_kind {
   OM_KIND_PANEL_MEMBER = 0,
   OM_KIND_RESEARCH_GROUP = 1,
   OM_KIND_OTHER = 2
} om_unit_kind;
typedef enum om_mode { OM_MODE_RAW = 0, OM_MODE_BY_TOTAL = 1, OM_MODE_BY_ADAPTED_SUM = 2 } om_mode;
typedef enum om_representation { OM_REPR_BARYCENTER2D = 0, OM_REPR_ADAPTED = 1 } om_representation;
typedef enum om_aggregation { OM_AGG_PER_MEMBER = 0, OM_AGG_POOLED = 1 } om_aggregation;

typedef struct om_map om_map;
typedef struct om_profiles om_profiles;
typedef struct om_report om_report;

OM_API const char* om_version(void);
OM_API const char* om_last_error(void);
/* 1-based line of the last parse error, 0 when unknown. */
OM_API size_t om_last_error_line(void);
OM_API void om_string_free(char* s);

/* ---- maps --------------------------------------------------------------- */

typedef struct om_map_info {
   double max_asymmetry;     /* before symmetrization */
   size_t clamped_entries;   /* tiny negatives set to 0 */
   size_t diagonal_filled;   /* edge-list diagonal set to 1 */
   size_t zero_rows;         /* cosine normalization only */
   size_t ignored_sections;  /* Pajek sections skipped */
} om_map_info;

/* Parse Pajek text, extract a network (NULL selects the first one with
 * coordinates) and validate its similarity matrix, if any. With
 * cosine_normalize != 0 the network's matrix/link weights are read as
 * citing x cited counts and replaced by their row cosine similarities.
 * `info` may be NULL. */
OM_API om_status om_map_from_pajek(const char* text, size_t len, const char* network, int policy,
                                   int cosine_normalize, om_map** out, om_map_info* info);
/* Read map JSON. The similarity matrix is taken as stored; use
 * om_map_validated() to check it. */
OM_API om_status om_map_from_json(const char* text, size_t len, om_map** out);
OM_API om_status om_map_validated(const om_map* map, int policy, om_map** out, om_map_info* info);
OM_API om_status om_map_to_json(const om_map* map, char** out);
OM_API void om_map_free(om_map* map);

OM_API size_t om_map_size(const om_map* map);
OM_API int om_map_has_similarity(const om_map* map);
OM_API om_status om_map_category(const om_map* map, size_t index, const char** label, double* x, double* y);
OM_API om_status om_map_similarity(const om_map* map, size_t i, size_t j, double* value);

/* ---- profiles ----------------------------------------------------------- */

OM_API om_status om_profiles_from_csv(const char* text, size_t len, const om_map* map, int unknown_policy,
                                      om_profiles** out, size_t* skipped_rows);
/* New handle holding the profiles of one kind, in the same order. */
OM_API om_status om_profiles_select_kind(const om_profiles* profiles, int kind, om_profiles** out);
OM_API void om_profiles_free(om_profiles* profiles);

OM_API size_t om_profiles_count(const om_profiles* profiles);
OM_API om_status om_profile_info(const om_profiles* profiles, size_t index, const char** unit_id, int* kind,
                                 double* total);
/* Copies the dense count vector; out_len must equal the map size. */
OM_API om_status om_profile_counts(const om_profiles* profiles, size_t index, double* out, size_t out_len);

/* ---- core --------------------------------------------------------------- */

OM_API om_status om_barycenter_2d(const om_profiles* profiles, size_t index, const om_map* map, double* c1,
                                  double* c2);
/* S*M of one profile normalized by `mode`; out_len must equal the map size. */
OM_API om_status om_similarity_adapt(const om_profiles* profiles, size_t index, const om_map* map, int mode,
                                     double* out, size_t out_len);
/* Barycenter of k row-major vectors of length dim; weights may be NULL for
 * the unweighted mean. */
OM_API om_status om_weighted_barycenter(const double* weights, const double* vectors, size_t k, size_t dim,
                                        double* out);
/* rows x cols counts in, rows x rows similarities out; zero_rows may be NULL. */
OM_API om_status om_cosine_normalize(const double* counts, size_t rows, size_t cols, double* out,
                                     size_t* zero_rows);
OM_API om_status om_euclidean_distance(const double* a, const double* b, size_t dim, double* out);

/* ---- analysis ----------------------------------------------------------- */

OM_API om_status om_distance_report(const om_profiles* groups, const om_profiles* panel, const om_map* map,
                                    int representation, int mode, int aggregation, om_report** out);
OM_API void om_report_free(om_report* report);
OM_API size_t om_report_rows(const om_report* report);
OM_API size_t om_report_columns(const om_report* report);
OM_API const char* om_report_row_unit(const om_report* report, size_t row);
OM_API const char* om_report_column_unit(const om_report* report, size_t column);
OM_API om_status om_report_distance(const om_report* report, size_t row, size_t column, double* out);
/* Column index holding rank `rank` (0 = nearest) in `row`. */
OM_API om_status om_report_rank(const om_report* report, size_t row, size_t rank, size_t* column);
OM_API om_status om_report_to_csv(const om_report* report, int precision, char** out);
OM_API om_status om_report_to_json(const om_report* report, char** out);

OM_API om_status om_scale_audit(const om_profiles* profiles, size_t index, const om_map* map, int representation,
                                int mode, const double* scales, size_t n_scales, double tolerance,
                                double* max_drift, int* pass);
OM_API om_status om_normalization_audit(const om_profiles* profiles, size_t index, const om_map* map,
                                        double* coordinate_sum, double* deviation);
OM_API om_status om_bounding_box_check(const om_profiles* profiles, size_t index, const om_map* map, int* pass);

/* ---- plot --------------------------------------------------------------- */

typedef struct om_plot_options {
   double width;
   double height;
   double margin;
   int labels;         /* draw category and unit labels */
   int size_by_volume; /* scale category circles by summed profile counts */
} om_plot_options;

OM_API void om_plot_options_default(om_plot_options* options);
/* profiles may be NULL for a categories-only map. */
OM_API om_status om_render_svg(const om_map* map, const om_profiles* profiles, const om_plot_options* options,
                               char** out);

#ifdef __cplusplus
}
#endif

#endif
