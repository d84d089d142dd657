#ifndef NCRK_H
#define NCRK_H

/*
 * C API for the ncrk library. Instances and results are opaque handles;
 * all payloads cross the boundary as JSON text. Every string returned
 * through a char** out-parameter is heap-allocated and must be released
 * with ncrk_string_free.
 *
 * Instance JSON:
 *   { "field": "Q" | "Fp:<prime>",
 *     "n": <size>,
 *     "matrices": [ [[elem, ...], ...], ... ] }
 * where elem is a JSON integer or a string ("-3", "2/7").
 *
 * Operations for ncrk_run: "rank", "ncrank", "wong", "bounds", "nullcone",
 * "oracle". Options are op-specific JSON (pass NULL for defaults); see README.
 */

#include <stddef.h>

#if defined(_WIN32)
#define NCRK_API __declspec(dllexport)
#else
#define NCRK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ncrk_status {
    NCRK_OK = 0,
    NCRK_EVERIFY = 1,   /* witness/certificate well-formed but invalid */
    NCRK_EINPUT = 2,    /* malformed input or parameters */
    NCRK_ERESOURCE = 3, /* field too small, unsupported characteristic, size caps */
    NCRK_EINTERNAL = 4  /* invariant violation inside the library */
} ncrk_status;

typedef struct ncrk_instance ncrk_instance;
typedef struct ncrk_result ncrk_result;

/* Library version string, static storage. */
NCRK_API const char* ncrk_version(void);

/* Parses an instance; returns NULL on failure with *err set when err != NULL. */
NCRK_API ncrk_instance* ncrk_instance_parse(const char* json, char** err);
NCRK_API void ncrk_instance_free(ncrk_instance* inst);

/* Runs an operation; on success *out holds a result handle. On failure *out
 * is NULL and *err carries a message when err != NULL. */
NCRK_API ncrk_status ncrk_run(const ncrk_instance* inst, const char* op, const char* options_json,
                     ncrk_result** out, char** err);

/* Checks a witness/certificate JSON document against the instance.
 * NCRK_OK: valid. NCRK_EVERIFY: parsed but does not certify the claim
 * (*err explains). Other codes: malformed input. */
NCRK_API ncrk_status ncrk_verify(const ncrk_instance* inst, const char* witness_json, char** err);

/* Result payload as JSON text; owned by the result handle. */
NCRK_API const char* ncrk_result_json(const ncrk_result* res);
NCRK_API void ncrk_result_free(ncrk_result* res);

NCRK_API void ncrk_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
