#ifndef K3B_H
#define K3B_H

#include <stdint.h>

#if defined(K3B_BUILDING_LIBRARY)
#define K3B_API __attribute__((visibility("default")))
#else
#define K3B_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum k3b_status {
    K3B_OK = 0,
    K3B_ERR_DOMAIN = 1,   /* mathematically invalid input */
    K3B_ERR_USAGE = 2,    /* malformed arguments */
    K3B_ERR_LIMIT = 3,    /* enumeration budget exceeded */
    K3B_ERR_INTERNAL = 4, /* a self-check failed */
    K3B_ERR_IO = 5
} k3b_status;

typedef enum k3b_format { K3B_FORMAT_JSON = 0, K3B_FORMAT_TABLE = 1 } k3b_format;

typedef struct k3b_context k3b_context;
typedef struct k3b_lattice k3b_lattice;

/* Integers cross the boundary as decimal strings, lattices as JSON arrays of
 * rows. Each operation replaces the context's output buffer; on failure the
 * buffer is empty and k3b_last_error describes the problem. */

K3B_API const char* k3b_version(void);

K3B_API k3b_context* k3b_context_new(void);
K3B_API void k3b_context_free(k3b_context* ctx);
K3B_API k3b_status k3b_set_enumeration_budget(k3b_context* ctx, uint64_t budget);
K3B_API k3b_status k3b_set_disc_enum_bound(k3b_context* ctx, uint64_t bound);
K3B_API k3b_status k3b_set_format(k3b_context* ctx, k3b_format format);
K3B_API const char* k3b_last_error(const k3b_context* ctx);
K3B_API const char* k3b_output(const k3b_context* ctx);

/* i and lambda_csv may be NULL; with both NULL the case table for (p, d) is returned. */
K3B_API k3b_status k3b_classify(k3b_context* ctx, const char* p, const char* d, const char* i, const char* lambda_csv);
/* toy_rank 0 means the full rank 20. */
K3B_API k3b_status k3b_counts(k3b_context* ctx, const char* p, const char* d, int brute, unsigned toy_rank);
K3B_API k3b_status k3b_kappa(k3b_context* ctx, const char* d, const char* p, const char* b, const char* c);
K3B_API k3b_status k3b_isom(k3b_context* ctx, const char* gram_a, const char* gram_b);
K3B_API k3b_status k3b_pell(k3b_context* ctx, const char* D, const char* n);
K3B_API k3b_status k3b_disc(k3b_context* ctx, const char* gram);
K3B_API k3b_status k3b_fiber(k3b_context* ctx, const char* d, const char* p);
K3B_API k3b_status k3b_fm(k3b_context* ctx, const char* n);
K3B_API k3b_status k3b_theta(k3b_context* ctx, const char* b, const char* c);
/* all_match may be NULL. */
K3B_API k3b_status k3b_paper_suite(k3b_context* ctx, int* all_match);

K3B_API k3b_status k3b_lattice_from_json(k3b_context* ctx, const char* gram, k3b_lattice** out);
K3B_API void k3b_lattice_free(k3b_lattice* lattice);
K3B_API int k3b_lattice_rank(const k3b_lattice* lattice);
/* Writes the determinant to the output buffer. */
K3B_API k3b_status k3b_lattice_det(k3b_context* ctx, const k3b_lattice* lattice);

#ifdef __cplusplus
}
#endif

#endif
