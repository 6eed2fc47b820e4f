#ifndef EQTRACE_H
#define EQTRACE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum EqStatus {
  EQ_STATUS_OK = 0,
  EQ_STATUS_NULL_POINTER = 1,
  EQ_STATUS_INVALID_INPUT = 2,
  EQ_STATUS_PRECONDITION = 3,
  EQ_STATUS_CAP_EXCEEDED = 4,
  EQ_STATUS_UNSUPPORTED = 5,
  EQ_STATUS_CHECK_FAILED = 6,
  EQ_STATUS_PANIC = 7,
} EqStatus;

// A finite dimensional graded algebra given by a quiver with relations.
typedef struct EqAlgebra EqAlgebra;

// A finite permutation group.
typedef struct EqGroup EqGroup;

// A root datum `(X, Φ, X^∨, Φ^∨)`.
typedef struct EqRootDatum EqRootDatum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static NUL-terminated string.
const char *eqtrace_version(void);

// Message of the last failed call on this thread, or NULL. Valid until the next call.
const char *eqtrace_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from an `eqtrace_*` out-parameter and not be freed twice.
void eqtrace_string_free(char *s);

// Root datum of Cartan type `cartan_type` (e.g. `"A2"`, `"A1xT1"`) with
// characters `characters`: `"root"`, `"weight"`, or a JSON matrix of rows.
//
// # Safety
// String arguments must be NUL-terminated; `out` must be writable.
enum EqStatus eqtrace_root_datum_new(const char *cartan_type,
                                     const char *characters,
                                     struct EqRootDatum **out);

// # Safety
// `d` must come from [`eqtrace_root_datum_new`] and not be freed twice.
void eqtrace_root_datum_free(struct EqRootDatum *d);

// Order of the Schur multiplier `M(G) = Λ / X_der`.
//
// # Safety
// `d` must be a live handle; `order` must be writable.
enum EqStatus eqtrace_root_datum_schur_order(const struct EqRootDatum *d, uint64_t *order);

// `π_1` of the derived group as JSON `{free_rank, torsion}`.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum EqStatus eqtrace_root_datum_pi1_json(const struct EqRootDatum *d, char **out);

// Permutation group from JSON `{"degree": n, "generators": [[cycles]]}` with 1-based points.
//
// # Safety
// `json` must be NUL-terminated; `out` must be writable.
enum EqStatus eqtrace_group_from_json(const char *json, struct EqGroup **out);

// # Safety
// `g` must come from [`eqtrace_group_from_json`] and not be freed twice.
void eqtrace_group_free(struct EqGroup *g);

// Number of elements; 0 for a NULL handle.
//
// # Safety
// `g` must be NULL or a live handle.
size_t eqtrace_group_order(const struct EqGroup *g);

// Schur multiplier `H^3(G, Z)` as JSON `{free_rank, torsion}`.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum EqStatus eqtrace_group_schur_multiplier_json(const struct EqGroup *g, char **out);

// Algebra from the JSON quiver format `{vertices, arrows, relations}`.
//
// # Safety
// `json` must be NUL-terminated; `out` must be writable.
enum EqStatus eqtrace_algebra_from_json(const char *json, struct EqAlgebra **out);

// # Safety
// `a` must come from [`eqtrace_algebra_from_json`] and not be freed twice.
void eqtrace_algebra_free(struct EqAlgebra *a);

// Total dimension; 0 for a NULL handle.
//
// # Safety
// `a` must be NULL or a live handle.
size_t eqtrace_algebra_dim(const struct EqAlgebra *a);

// Whether `Ext^n` between simples is pure of weight `n` for all `n <= depth`.
//
// # Safety
// `a` must be a live handle; `koszul` must be writable.
enum EqStatus eqtrace_algebra_is_koszul(const struct EqAlgebra *a, size_t depth, bool *koszul);

// Orbit dimensions `{dim_g, centralizer, orbit, slice, rank_checked}` for a
// weighted Dynkin diagram given as comma separated weights.
//
// # Safety
// String arguments must be NUL-terminated; `out` must be writable.
enum EqStatus eqtrace_orbit_dims_json(const char *cartan_type, const char *weights, char **out);

// Runs acceptance criterion `id` (1-based) and reports whether it passed.
//
// # Safety
// `passed` must be writable.
enum EqStatus eqtrace_acceptance_criterion(uint32_t id, bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQTRACE_H */
