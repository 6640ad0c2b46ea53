#ifndef MGR_MGR_H
#define MGR_MGR_H

#include <stdint.h>

#if defined(MGR_BUILDING_LIBRARY)
#define MGR_API __attribute__((visibility("default")))
#else
#define MGR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every command returns a JSON document through *out (also on error, where it
 * is an error document).  Release it with mgr_string_free. */

typedef enum {
  MGR_OK = 0,
  MGR_DOMAIN_ERROR = 2,    /* invalid mathematical input or no result */
  MGR_INVALID_ARGUMENT = 3, /* null handle or malformed argument */
  MGR_INTERNAL_ERROR = 4
} mgr_status;

typedef enum { MGR_FORMAT_JSON = 0, MGR_FORMAT_TSV = 1 } mgr_format;

typedef struct mgr_session mgr_session;
typedef struct mgr_form mgr_form;

MGR_API const char* mgr_version(void);
MGR_API void mgr_string_free(char* s);

/* $MGR_CACHE, else ${XDG_CACHE_HOME:-~/.cache}/mgr. */
MGR_API mgr_status mgr_default_cache_dir(char** out);
/* cache_dir: NULL disables the persistent matrix cache. */
MGR_API mgr_status mgr_session_new(const char* cache_dir, mgr_session** out);
MGR_API void mgr_session_free(mgr_session* s);
/* Cache entries read and missed so far. */
MGR_API void mgr_session_cache_stats(const mgr_session* s, int64_t* hits, int64_t* misses);
/* Warnings not carried by the last document (TSV output), as a JSON array. */
MGR_API mgr_status mgr_session_take_warnings(mgr_session* s, char** out);

/* Selector for a newform of the given level, weight and residue characteristic. */
MGR_API mgr_status mgr_form_new(int64_t level, int weight, uint64_t ell, mgr_form** out);
MGR_API void mgr_form_free(mgr_form* f);
/* value: decimal integer a_p (U_p at p | level). */
MGR_API mgr_status mgr_form_set_coefficient(mgr_form* f, int64_t p, const char* value);
/* poly: integer polynomial in x vanishing at a_p mod the chosen prime. */
MGR_API mgr_status mgr_form_add_relation(mgr_form* f, int64_t p, const char* poly);
MGR_API mgr_status mgr_form_set_character(mgr_form* f, const char* literal);
MGR_API mgr_status mgr_form_set_index(mgr_form* f, int index);
/* Lines "p a_p"; '#' starts a comment. */
MGR_API mgr_status mgr_form_load_file(mgr_form* f, const char* path, char** error);

/* ell = 0 skips the reduction data. */
MGR_API mgr_status mgr_character(mgr_session* s, const char* literal, uint64_t ell, char** out);
/* subgroup: "full", "trivial", "pm1" or comma-separated generators. */
MGR_API mgr_status mgr_subgroup(mgr_session* s, int64_t level, const char* subgroup, char** out);
MGR_API mgr_status mgr_genus(mgr_session* s, int64_t level, const char* subgroup, char** out);
MGR_API mgr_status mgr_msdim(mgr_session* s, int64_t level, const char* subgroup, int weight, char** out);
/* ell = 0 prints the integral matrix on the plus-cuspidal lattice. */
MGR_API mgr_status mgr_hecke(mgr_session* s, int64_t level, const char* subgroup, int weight, int64_t n, uint64_t ell, char** out);
MGR_API mgr_status mgr_eigensystems(mgr_session* s, int64_t level, const char* subgroup, int weight, uint64_t ell, int64_t bound, int include_bad,
                                    char** out);
/* truncate <= 0 uses the full bound. */
MGR_API mgr_status mgr_twist(mgr_session* s, const mgr_form* f, int64_t truncate, char** out);
MGR_API mgr_status mgr_realize(mgr_session* s, const mgr_form* f, int64_t truncate, int audit, char** out);
MGR_API mgr_status mgr_tables(mgr_session* s, uint64_t max_ell, int64_t truncate, mgr_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif
