/* C interface to the padq library. Results come back as JSON text owned by the caller
 * (release with padq_string_free); failures return a nonzero padq_status and leave a
 * message in padq_last_error() for the calling thread. */
#ifndef PADQ_H
#define PADQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PADQ_API __declspec(dllexport)
#else
#define PADQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum padq_status {
    PADQ_OK = 0,
    PADQ_ERR_INVALID_ARGUMENT = 1,
    PADQ_ERR_DIVISION_BY_ZERO = 2,
    PADQ_ERR_PRECISION_LOST = 3,
    PADQ_ERR_UNCERTIFIED = 4,
    PADQ_ERR_INDETERMINATE = 5,
    PADQ_ERR_INCOMPATIBLE = 6,
    PADQ_ERR_MALFORMED_MODULE = 7,
    PADQ_ERR_DIVERGENCE = 8,
    PADQ_ERR_CERTIFICATION = 9,
    PADQ_ERR_PARSE = 10,
    PADQ_ERR_RESOURCE_LIMIT = 11,
    PADQ_ERR_INTERNAL = 12
} padq_status;

typedef struct padq_system padq_system;   /* Y' = G Y on a region */
typedef struct padq_module padq_module;   /* sigma(Y) = A Y */
typedef struct padq_gamma padq_gamma;     /* certified Taylor series of Gamma_p at 0 */

PADQ_API const char* padq_version(void);
PADQ_API const char* padq_status_name(padq_status s);
/* Message of the last failure on this thread ("" when none). */
PADQ_API const char* padq_last_error(void);
PADQ_API void padq_string_free(char* s);

/* Scalar expression such as "1+3^2" as the JSON scalar encoding, exact when possible. */
PADQ_API padq_status padq_scalar_parse(const char* expr, unsigned p, int64_t prec, char** out_json);

PADQ_API padq_status padq_system_from_json(const char* json, int64_t prec, padq_system** out);
PADQ_API void padq_system_free(padq_system* sys);
PADQ_API padq_status padq_system_to_json(const padq_system* sys, char** out_json);

/* Compatibility certificate plus A_sigma (keys "certificate", "A", "module"). The module
 * handle is optional and receives the deformed difference module. A certificate that is not
 * compatible (inconclusive included) gives PADQ_ERR_INCOMPATIBLE with out_json still set, "A": null. */
PADQ_API padq_status padq_deform(const padq_system* sys, const char* q, const char* h, int64_t order, int64_t prec,
                                 char** out_json, padq_module** out_module);

PADQ_API padq_status padq_module_from_json(const char* json, int64_t prec, padq_module** out);
PADQ_API void padq_module_free(padq_module* mod);
PADQ_API padq_status padq_module_to_json(const padq_module* mod, char** out_json);
PADQ_API padq_status padq_module_compatible(const padq_module* mod, int64_t order, char** out_json);

/* method: "limit" or "derivative". levels bounds the limit iterates (0 = default). */
PADQ_API padq_status padq_confluence(const padq_module* mod, const char* method, int64_t order, int64_t prec,
                                     int levels, char** out_json);

/* Piece list of rho -> |(q-1)T + h|(x_{c,rho}) over exponents [r_lo, r_hi], plus the fixed point. */
PADQ_API padq_status padq_profile(unsigned p, const char* q, const char* h, const char* center, const char* r_lo,
                                  const char* r_hi, int64_t prec, char** out_json);

/* [n]_q, [n]_q!, kappa and omega_q. */
PADQ_API padq_status padq_qcalc(unsigned p, const char* q, const char* h, uint64_t n, int64_t prec,
                                char** out_json);

PADQ_API padq_status padq_gamma_create(unsigned p, int64_t order, int64_t prec, padq_gamma** out);
PADQ_API void padq_gamma_free(padq_gamma* g);
PADQ_API padq_status padq_gamma_taylor(padq_gamma* g, char** out_json);
PADQ_API padq_status padq_gamma_g0(padq_gamma* g, char** out_json);
/* Newton polygons of Gamma^0 and g_0, the radius bracket and Gauss norms of g_0 at sample exponents. */
PADQ_API padq_status padq_gamma_newton(padq_gamma* g, char** out_json);
PADQ_API padq_status padq_gamma_lvalues(padq_gamma* g, int64_t m_max, char** out_json);
PADQ_API padq_status padq_gamma_sums(padq_gamma* g, int64_t ell, int64_t n, int64_t m_max, char** out_json);
PADQ_API padq_status padq_gamma_residual(padq_gamma* g, int64_t n, int64_t upto, char** out_json);

/* Acceptance suite. only/n_only select criteria (NULL/0 = all). The callback, when given,
 * sees each result as JSON before the next criterion starts. */
typedef void (*padq_check_callback)(const char* result_json, void* user);
PADQ_API padq_status padq_check(unsigned p, int64_t prec, int64_t order, uint64_t seed, const int* only,
                                size_t n_only, padq_check_callback cb, void* user, char** out_json,
                                int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* PADQ_H */
