/* motsteen C API: exact computations in the mod-l motivic Steenrod algebra
 * and its dual Hopf algebroid, behind opaque handles and status codes.
 *
 * Usage pattern:
 *   mst_session* s = NULL;
 *   mst_session_new(2, "closed", 0, &s);
 *   mst_element* e = NULL;
 *   mst_parse(s, "op", "Sq2 Sq2", &e);
 *   mst_element* n = NULL;
 *   mst_normalize(s, e, &n);
 *   char* text = NULL;
 *   mst_format(s, n, "text", &text);   // "t Sq3 Sq1"
 *   ...
 *   mst_string_free(text); mst_element_free(n); mst_element_free(e);
 *   mst_session_free(s);
 *
 * Every function returning mst_status stores a message retrievable with
 * mst_last_error on failure. Out-parameters are written only on MST_OK.
 */
#ifndef MOTSTEEN_H
#define MOTSTEEN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mst_status {
    MST_OK = 0,
    MST_ERR_BAD_ARGUMENT = 1,
    MST_ERR_PARSE = 2,
    MST_ERR_PRESET_MISMATCH = 3,
    MST_ERR_UNSUPPORTED_SCALAR = 4,
    MST_ERR_FUEL_EXHAUSTED = 5,
    MST_ERR_INTERNAL = 6
} mst_status;

/* A session fixes the prime, the coefficient preset ("closed" or
 * "universal"; the latter requires prime 2) and the rewrite fuel bound
 * (0 selects the default of 10^7 elementary rewrites per normalization). */
typedef struct mst_session mst_session;

/* Tagged element handle; kinds are "op", "dual", "classical", "tensor",
 * "scalar". */
typedef struct mst_element mst_element;

mst_status mst_session_new(uint32_t prime, const char* preset, uint64_t fuel,
                           mst_session** out);
void mst_session_free(mst_session* s);

const char* mst_last_error(const mst_session* s);
/* Byte offset for parse errors, (size_t)-1 otherwise. */
size_t mst_last_error_position(const mst_session* s);

void mst_string_free(char* s);
void mst_element_free(mst_element* e);

/* mode: "op", "dual" or "classical". */
mst_status mst_parse(mst_session* s, const char* mode, const char* text, mst_element** out);
const char* mst_element_kind(const mst_element* e);
/* format: "text" or "structured" (JSON). */
mst_status mst_format(mst_session* s, const mst_element* e, const char* format, char** out);
mst_status mst_element_equal(mst_session* s, const mst_element* a, const mst_element* b,
                             int* out);

/* Product (op: Adem-normalized; dual: Gamma product; classical: topological
 * Adem-normalized). Both elements must have the same kind. */
mst_status mst_multiply(mst_session* s, const mst_element* a, const mst_element* b,
                        mst_element** out);
/* Admissible normal form (op or classical elements). */
mst_status mst_normalize(mst_session* s, const mst_element* a, mst_element** out);
/* Dual-side structure maps (dual elements). */
mst_status mst_coproduct(mst_session* s, const mst_element* a, mst_element** out);
mst_status mst_counit(mst_session* s, const mst_element* a, mst_element** out);
mst_status mst_antipode(mst_session* s, const mst_element* a, mst_element** out);
/* Coefficient specialization rho -> 0, tau -> 1 (op element -> classical). */
mst_status mst_realize(mst_session* s, const mst_element* a, mst_element** out);
/* Milnor pairing of an op element against a dual element (closed presets). */
mst_status mst_pair(mst_session* s, const mst_element* op_elem, const mst_element* dual_elem,
                    mst_element** out);

/* Basis enumeration at one bidegree; mode "op" or "dual". */
mst_status mst_basis(mst_session* s, const char* mode, long long p, long long q,
                     const char* format, char** out);
/* Pairing matrix at one bidegree (closed presets). */
mst_status mst_pairing_matrix(mst_session* s, long long p, long long q, const char* format,
                              char** out);
/* Multiplication table of admissible monomials up to a degree bound. */
mst_status mst_table(mst_session* s, long long max_degree, const char* format, char** out);
/* Verification suites: "adem-oracle", "associativity", "coassoc",
 * "antipode", "basis-count", "pairing", "cross-model". Negative bounds pick
 * the suite defaults. *failures receives the number of failed checks. */
mst_status mst_verify(mst_session* s, const char* suite, long long max_p, long long max_degree,
                      const char* format, char** out, long long* failures);

#ifdef __cplusplus
}
#endif

#endif /* MOTSTEEN_H */
