#ifndef STABLECTL_H
#define STABLECTL_H

/* C interface to the stablectl library.
 *
 * Objects are opaque handles released with their *_free function. Text
 * results are heap strings released with stablectl_string_free. Every call
 * returns a status; on failure stablectl_last_error() describes it (the
 * message is per thread and valid until the next failing call). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define STABLECTL_API __declspec(dllexport)
#else
#define STABLECTL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    STABLECTL_OK = 0,
    STABLECTL_ERR_ARGUMENT = 1,
    STABLECTL_ERR_PARSE = 2,
    STABLECTL_ERR_INVALID = 3,
    STABLECTL_ERR_CAP = 4,
    STABLECTL_ERR_INTERNAL = 5
} stablectl_status;

typedef enum {
    STABLECTL_METHOD_AUTO = 0,
    STABLECTL_METHOD_POLY = 1,
    STABLECTL_METHOD_EXACT = 2
} stablectl_method;

typedef struct stablectl_instance stablectl_instance;
typedef struct stablectl_query stablectl_query;

/* Defaults of the enumeration caps: acceptable pairs and action candidates. */
#define STABLECTL_DEFAULT_MATCHING_CAP 24
#define STABLECTL_DEFAULT_CANDIDATE_CAP 20

STABLECTL_API const char* stablectl_last_error(void);
STABLECTL_API const char* stablectl_version(void);
STABLECTL_API void stablectl_string_free(char* s);

/* Instances */
STABLECTL_API stablectl_status stablectl_instance_parse(const char* text, stablectl_instance** out);
/* Syntax only; pair with stablectl_instance_validate. */
STABLECTL_API stablectl_status stablectl_instance_parse_unchecked(const char* text, stablectl_instance** out);
STABLECTL_API void stablectl_instance_free(stablectl_instance* inst);
STABLECTL_API stablectl_status stablectl_instance_serialize(const stablectl_instance* inst, char** out);
STABLECTL_API size_t stablectl_instance_agent_count(const stablectl_instance* inst);
/* One violation per line in *report; *count == 0 means valid. */
STABLECTL_API stablectl_status stablectl_instance_validate(const stablectl_instance* inst, size_t* count, char** report);

/* Stability */
/* *found is 1 and *matching holds `match` lines if a stable matching exists. */
STABLECTL_API stablectl_status stablectl_stable_matching(const stablectl_instance* inst, int* found, char** matching);
/* Every stable matching as a `matching <i>` line followed by its `match`
 * lines; *count receives the number of matchings. */
STABLECTL_API stablectl_status stablectl_enumerate_stable(const stablectl_instance* inst, size_t cap, size_t* count,
                                                        char** listing);
/* One `party (...)` line per party. */
STABLECTL_API stablectl_status stablectl_stable_partition(const stablectl_instance* inst, char** listing);
/* *stable is 1 iff the `match` lines in matching_text form a stable matching. */
STABLECTL_API stablectl_status stablectl_is_stable(const stablectl_instance* inst, const char* matching_text, int* stable);

/* Control queries. The descriptor holds `problem:`, `budget:`,
 * `target-agent:`, `target-pair:` and `match` lines; later keys win. */
STABLECTL_API stablectl_status stablectl_query_create(const stablectl_instance* inst, const char* descriptor,
                                                    stablectl_query** out);
STABLECTL_API void stablectl_query_free(stablectl_query* q);
STABLECTL_API stablectl_status stablectl_query_instance(const stablectl_query* q, char** instance_text);
STABLECTL_API stablectl_status stablectl_query_descriptor(const stablectl_query* q, char** descriptor);

/* *optimum is -1 when unknown; *actions holds the witness (empty for "no"). */
STABLECTL_API stablectl_status stablectl_solve(const stablectl_query* q, stablectl_method method, size_t cap, int* yes,
                                             int64_t* optimum, char** actions);
STABLECTL_API int stablectl_has_poly_solver(const char* problem);

/* Reductions: from "clique" or "is", to one of csm-addag-ma,
 * csm-addag-epsm, csr-addag-ms, csr-addag-esm, csr-addag-epsm. *name_map
 * receives one `role -> agent` line per gadget agent. */
STABLECTL_API stablectl_status stablectl_reduce(const char* graph_text, const char* from, const char* to, size_t k,
                                              stablectl_query** out, char** name_map);

/* Generators */
STABLECTL_API stablectl_status stablectl_generate_sr(size_t n, double density, uint64_t seed, stablectl_instance** out);
STABLECTL_API stablectl_status stablectl_generate_sm(size_t na, size_t nb, double density, uint64_t seed,
                                                   stablectl_instance** out);

#ifdef __cplusplus
}
#endif

#endif
