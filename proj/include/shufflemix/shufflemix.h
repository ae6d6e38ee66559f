/* C interface to the shufflemix library.
 *
 * Every call that can fail returns an smx_status. On failure the context
 * keeps a message readable through smx_last_error until the next call on
 * that context. Strings returned through char** out-parameters are owned by
 * the caller and released with smx_string_free. Rationals are returned as
 * "a" or "a/b" in lowest terms.
 *
 * A context is not thread-safe; use one per thread. Work inside a call may
 * still use several threads (see smx_context_set_threads).
 */
#ifndef SHUFFLEMIX_H
#define SHUFFLEMIX_H

#include <stddef.h>
#include <stdint.h>

#if defined(SMX_BUILDING_LIBRARY)
#define SMX_API __attribute__((visibility("default")))
#else
#define SMX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum smx_status {
  SMX_OK = 0,
  SMX_ERR_INVALID_ARGUMENT = 1, /* malformed request, null pointer, unknown name */
  SMX_ERR_DOMAIN = 2,           /* argument outside an operation's domain */
  SMX_ERR_RESOURCE = 3,         /* enumeration or word budget exceeded */
  SMX_ERR_VERIFY_FAILED = 4,    /* a verify suite ran and found failures */
  SMX_ERR_INTERNAL = 5
} smx_status;

typedef struct smx_context smx_context;
typedef struct smx_distribution smx_distribution;

SMX_API const char* smx_version(void);
SMX_API const char* smx_status_name(smx_status status);

SMX_API smx_status smx_context_create(smx_context** out);
SMX_API void smx_context_destroy(smx_context* ctx);
/* Largest n for which S_n may be enumerated (default 10). */
SMX_API smx_status smx_context_set_enum_limit(smx_context* ctx, int n);
/* Largest k^n for word-enumeration oracles (default 10^7). */
SMX_API smx_status smx_context_set_word_limit(smx_context* ctx, uint64_t limit);
/* Worker threads; results do not depend on it except for simulation, where
 * it is the number of random streams. */
SMX_API smx_status smx_context_set_threads(smx_context* ctx, unsigned threads);
SMX_API const char* smx_last_error(const smx_context* ctx);

SMX_API void smx_string_free(char* s);

/* Mass of a permutation ("2 1 3") under family riffle, cut-riffle, affine or
 * uniform. */
SMX_API smx_status smx_mass(smx_context* ctx, const char* family, int n, int64_t k, const char* perm,
                            char** out_rational);
/* Mass from statistics; pass -1 for the ones the family does not use. */
SMX_API smx_status smx_mass_from_stats(smx_context* ctx, const char* family, int n, int64_t k, int d, int cd,
                                       int maj, char** out_rational);
/* Exact ||R_{k,n} - C_{k,n}|| by "expr1", "expr2" or "expr3". */
SMX_API smx_status smx_tv_rc(smx_context* ctx, const char* expression, int n, int64_t k, char** out_rational);

/* Full laws on S_n, subject to the enumeration limit. */
SMX_API smx_status smx_distribution_create(smx_context* ctx, const char* family, int n, int64_t k,
                                           smx_distribution** out);
/* Uniform law on the n cyclic rotations. */
SMX_API smx_status smx_distribution_cut(smx_context* ctx, int n, smx_distribution** out);
/* Law of sigma o tau with tau ~ first and sigma ~ second. */
SMX_API smx_status smx_distribution_convolve(smx_context* ctx, const smx_distribution* first,
                                             const smx_distribution* second, smx_distribution** out);
SMX_API smx_status smx_distribution_mass(smx_context* ctx, const smx_distribution* dist, const char* perm,
                                         char** out_rational);
SMX_API smx_status smx_distribution_tv(smx_context* ctx, const smx_distribution* a, const smx_distribution* b,
                                       char** out_rational);
SMX_API smx_status smx_distribution_equal(smx_context* ctx, const smx_distribution* a, const smx_distribution* b,
                                          int* out_equal);
SMX_API int smx_distribution_n(const smx_distribution* dist);
SMX_API smx_status smx_distribution_json(smx_context* ctx, const smx_distribution* dist, char** out_json);
SMX_API void smx_distribution_destroy(smx_distribution* dist);

/* Runs a command ("eval", "tv", "mix-table", "simulate", "verify", "dist")
 * on a JSON object of arguments and returns the JSON payload. A verify run
 * with failures returns SMX_ERR_VERIFY_FAILED and still fills out_json. */
SMX_API smx_status smx_command_json(smx_context* ctx, const char* command, const char* args_json, char** out_json);
/* Mixing table as CSV with header m,k,tv_num,tv_den,tv_float. */
SMX_API smx_status smx_mix_table_csv(smx_context* ctx, const char* args_json, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* SHUFFLEMIX_H */
