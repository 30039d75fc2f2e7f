#ifndef RDC_RDC_H
#define RDC_RDC_H

/*
 * C interface to the library. Every handle is opaque and owned by the caller,
 * who releases it with the matching *_free function. Strings returned through
 * `char** out` are released with rdc_string_free. On failure a function
 * returns a nonzero status, leaves outputs untouched, and records a message
 * readable with rdc_last_error() on the calling thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RDC_API __declspec(dllexport)
#else
#define RDC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int rdc_status;
#define RDC_OK 0
#define RDC_ERR_MALFORMED 1
#define RDC_ERR_UNDETERMINED 2
#define RDC_ERR_NONCONVERGENCE 3
#define RDC_ERR_INTERNAL 4

typedef enum { RDC_FORMAT_TEXT = 0, RDC_FORMAT_JSON = 1 } rdc_format;
typedef enum { RDC_THEORY_BREDON = 0, RDC_THEORY_DELIGNE = 1, RDC_THEORY_BOREL = 2 } rdc_theory;
typedef enum { RDC_CURVE_H21 = 0, RDC_CURVE_PIC = 1, RDC_CURVE_BRAUER = 2 } rdc_curve_invariant;

typedef struct rdc_group rdc_group;
typedef struct rdc_class rdc_class;
typedef struct rdc_chow rdc_chow;
typedef struct rdc_field rdc_field;

RDC_API const char* rdc_version(void);
/* Message of the last failure on this thread ("" if none). */
RDC_API const char* rdc_last_error(void);
RDC_API void rdc_string_free(char* s);

RDC_API rdc_status rdc_theory_from_name(const char* name, rdc_theory* out);

/* Groups. */
RDC_API rdc_status rdc_point_group(rdc_theory theory, int64_t n, int64_t p, rdc_group** out);
RDC_API rdc_status rdc_group_render(const rdc_group* g, rdc_format format, char** out);
RDC_API int64_t rdc_group_free_rank(const rdc_group* g);
RDC_API int64_t rdc_group_real_rank(const rdc_group* g);
RDC_API size_t rdc_group_torsion_count(const rdc_group* g);
RDC_API size_t rdc_group_circle_count(const rdc_group* g);
/* 1 when equal, 0 otherwise. */
RDC_API int rdc_group_equal(const rdc_group* a, const rdc_group* b);
RDC_API void rdc_group_free(rdc_group* g);

/* Tables over n in [nmin, nmax], p in [pmin, pmax]; generators only in text form. */
RDC_API rdc_status rdc_table(rdc_theory theory, int64_t nmin, int64_t nmax, int64_t pmin, int64_t pmax,
                             rdc_format format, int generators, char** out);

/* Point classes (Bredon or Deligne). */
RDC_API rdc_status rdc_class_parse(const char* literal, rdc_theory theory, rdc_class** out);
/* RDC_ERR_UNDETERMINED when the product is not determined; the locus is in rdc_last_error(). */
RDC_API rdc_status rdc_class_mul(const rdc_class* x, const rdc_class* y, rdc_class** out);
RDC_API rdc_status rdc_class_render(const rdc_class* c, rdc_format format, char** out);
RDC_API rdc_status rdc_class_bidegree(const rdc_class* c, int64_t* n, int64_t* p);
RDC_API void rdc_class_free(rdc_class* c);

/* Cellular varieties. */
RDC_API rdc_status rdc_chow_from_json(const char* json, rdc_chow** out);
RDC_API rdc_status rdc_chow_projective(int64_t dim, rdc_chow** out);
RDC_API rdc_status rdc_chow_multi_projective(const int64_t* dims, size_t count, rdc_chow** out);
RDC_API rdc_status rdc_cellular_group(const rdc_chow* chow, int64_t n, int64_t p, rdc_group** out);
RDC_API rdc_status rdc_cellular_deligne_diagonal(const rdc_chow* chow, int64_t p, rdc_group** out);
RDC_API void rdc_chow_free(rdc_chow* chow);

/* Products of projective spaces P^{dims[0]} x ... (count 0 is the point). */
RDC_API rdc_status rdc_pbundle_group(const int64_t* dims, size_t count, int64_t n, int64_t p, rdc_group** out);
/* a cup xi^k over P^dim for a Bredon literal a of weight <= 0; reports the branch. */
RDC_API rdc_status rdc_pbundle_ppp(const char* a_literal, int64_t k, int64_t dim, rdc_format format, char** out);

/* Real curves; a Harnack warning (non-strict mode) goes to *warning when non-NULL. */
RDC_API rdc_status rdc_curve_group(int64_t genus, int64_t components, rdc_curve_invariant what, int strict,
                                   rdc_group** out, char** warning);

/* Number fields. */
RDC_API rdc_status rdc_field_from_json(const char* json, rdc_field** out);
RDC_API rdc_status rdc_field_h11(const rdc_field* f, rdc_group** out);
/* Embeddings, units, regulator and volumes; symbols_json (may be NULL) is a list
 * of symbols, each a list of elements given as coefficient lists. */
RDC_API rdc_status rdc_field_report(const rdc_field* f, unsigned precision, const char* symbols_json,
                                    rdc_format format, char** out);
RDC_API void rdc_field_free(rdc_field* f);

/* Smith normal form of a JSON matrix. */
RDC_API rdc_status rdc_snf(const char* matrix_json, rdc_format format, char** out);
/* Exactness report of a JSON sequence; *exact (when non-NULL) is set to 1 or 0. */
RDC_API rdc_status rdc_exactcheck(const char* sequence_json, rdc_format format, char** out, int* exact);

#ifdef __cplusplus
}
#endif

#endif
