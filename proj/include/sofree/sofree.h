#ifndef SOFREE_H
#define SOFREE_H

/*
 * C interface to the sofree library.
 *
 * Every call returns a status code. On failure a message is available from
 * sofree_last_error() until the next call on the same thread. Strings
 * returned through char** out-parameters belong to the library and are
 * released with sofree_string_free().
 *
 * Rationals are serialized as "num/den" strings. Points are 1-based.
 */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SOFREE_BUILDING)
#define SOFREE_API __attribute__((visibility("default")))
#else
#define SOFREE_API
#endif

enum {
    SOFREE_OK = 0,
    SOFREE_CHECK_FAILED = 1, /* the computation ran; a checked claim is false */
    SOFREE_E_ARGUMENT = 2,   /* bad argument, malformed permutation or model */
    SOFREE_E_CAP = 3,        /* an enumeration cap was exceeded */
    SOFREE_E_DOMAIN = 4,     /* operation undefined for this model (truncation, not even, ...) */
    SOFREE_E_INTERNAL = 5
};

typedef struct sofree_model sofree_model;

/* Receives one JSON object per element; return nonzero to stop early. */
typedef int (*sofree_line_fn)(const char* line, void* user);

SOFREE_API const char* sofree_version(void);
SOFREE_API const char* sofree_last_error(void);
SOFREE_API void sofree_string_free(char* s);

/* Builtin name ("semicircular", "free_poisson:3/2", ...) or a JSON file path.
   truncation applies to builtins only; 0 picks the default. */
SOFREE_API int sofree_model_open(const char* ref, int truncation, sofree_model** out);
SOFREE_API int sofree_model_parse(const char* json_text, sofree_model** out);
SOFREE_API void sofree_model_free(sofree_model* m);
SOFREE_API int sofree_model_json(const sofree_model* m, char** out);

/* kind: nc (uses n), snc, psnc, pairings (use m, n), snc-k-alt (m, n, k).
   fn may be NULL to count only. Elements arrive in canonical order. */
SOFREE_API int sofree_enumerate(const char* kind, int m, int n, int k, sofree_line_fn fn, void* user,
                                long long* count);

/* direction "m2c" or "c2m"; order 1 or 2; words up to length cutoff. */
SOFREE_API int sofree_transform(const sofree_model* m, const char* direction, int order, int cutoff,
                                int verify_roundtrip, char** out);

/* direction "forward": determining sequences and the square's cumulants.
   "inverse": m describes the square (one self-adjoint letter); returns the
   determining sequences. */
SOFREE_API int sofree_square(const sofree_model* m, const char* direction, int cutoff, char** out);

/* target: series, rdiag, even (use a), mt1 (a = r, b = b), examples (no
   models; order selects one criterion, 0 for all). A report is produced
   whenever the status is SOFREE_OK or SOFREE_CHECK_FAILED. */
SOFREE_API int sofree_check(const char* target, const sofree_model* a, const sofree_model* b, int order,
                            char** out);

SOFREE_API int sofree_render_svg(const char* permutation, int m, int n, char** out);

SOFREE_API int sofree_acceptance_count(void);
SOFREE_API int sofree_acceptance_run(int id, char** out);

#ifdef __cplusplus
}
#endif

#endif
