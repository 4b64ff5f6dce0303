/*
 * C interface to the fpsmax (weighted) partial MaxSAT local-search library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an fpsmax_status;
 * on failure fpsmax_last_error() describes the problem (thread-local, valid
 * until the next failing call on the same thread).
 */
#ifndef FPSMAX_H
#define FPSMAX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FPSMAX_BUILDING)
#    define FPSMAX_API __declspec(dllexport)
#  else
#    define FPSMAX_API __declspec(dllimport)
#  endif
#else
#  define FPSMAX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fpsmax_status {
    FPSMAX_OK = 0,
    FPSMAX_ERR_ARGUMENT = 1, /* null pointer, bad length, invalid config */
    FPSMAX_ERR_PARSE = 2,    /* malformed WCNF */
    FPSMAX_ERR_IO = 3,       /* unreadable file */
    FPSMAX_ERR_RANGE = 4,    /* instance exceeds an operation's bound */
    FPSMAX_ERR_INTERNAL = 5
} fpsmax_status;

typedef enum fpsmax_mode {
    FPSMAX_MODE_FPS = 0,
    FPSMAX_MODE_SINGLE = 1,
    FPSMAX_MODE_FPS_RANDOM_WALK = 2,
    FPSMAX_MODE_FPS_ALWAYS = 3,
    FPSMAX_MODE_FPS_NO_STOP = 4
} fpsmax_mode;

typedef enum fpsmax_dialect {
    FPSMAX_DIALECT_LEGACY = 0,
    FPSMAX_DIALECT_2022 = 1
} fpsmax_dialect;

typedef struct fpsmax_formula fpsmax_formula;
typedef struct fpsmax_result fpsmax_result;

typedef struct fpsmax_config {
    fpsmax_mode mode;
    uint32_t sc_num;
    uint32_t sv_num;
    double time_limit_s;
    uint64_t max_flips; /* 0 = no flip budget */
    uint64_t seed;
} fpsmax_config;

typedef struct fpsmax_generator_params {
    uint32_t num_vars;
    uint32_t num_hard;
    uint32_t num_soft;
    uint32_t hard_len;
    uint32_t soft_len_max;
    uint64_t max_weight;
    int planted;
    uint64_t seed;
} fpsmax_generator_params;

/* Called on every improvement of the best cost. */
typedef void (*fpsmax_improvement_fn)(uint64_t cost, double elapsed_s, void* user);

FPSMAX_API const char* fpsmax_last_error(void);
FPSMAX_API const char* fpsmax_version(void);

FPSMAX_API fpsmax_status fpsmax_formula_parse(const char* text, size_t len, fpsmax_formula** out);
FPSMAX_API fpsmax_status fpsmax_formula_load(const char* path, fpsmax_formula** out);
FPSMAX_API fpsmax_status fpsmax_formula_generate(const fpsmax_generator_params* params, fpsmax_formula** out);
FPSMAX_API void fpsmax_formula_free(fpsmax_formula* f);

FPSMAX_API uint32_t fpsmax_formula_num_vars(const fpsmax_formula* f);
FPSMAX_API size_t fpsmax_formula_num_clauses(const fpsmax_formula* f);
FPSMAX_API size_t fpsmax_formula_num_hard(const fpsmax_formula* f);
FPSMAX_API int fpsmax_formula_is_weighted(const fpsmax_formula* f);

/* Serializes f; *out is allocated by the library and released with
 * fpsmax_string_free. */
FPSMAX_API fpsmax_status fpsmax_formula_write(const fpsmax_formula* f, fpsmax_dialect dialect, char** out,
                                              size_t* len);
FPSMAX_API void fpsmax_string_free(char* s);

/* values[i] is the truth value of variable i + 1; n must equal num_vars.
 * *feasible is set to 0 or 1; *cost is written only when feasible. */
FPSMAX_API fpsmax_status fpsmax_evaluate(const fpsmax_formula* f, const uint8_t* values, size_t n, int* feasible,
                                         uint64_t* cost);

/* Exhaustive optimum for instances with at most 26 variables. model, if not
 * null, must hold num_vars bytes and receives the witness when feasible. */
FPSMAX_API fpsmax_status fpsmax_exact_solve(const fpsmax_formula* f, int* feasible, uint64_t* cost,
                                            uint8_t* model);

FPSMAX_API void fpsmax_config_default(fpsmax_config* cfg);
FPSMAX_API fpsmax_status fpsmax_mode_from_name(const char* name, fpsmax_mode* mode);
FPSMAX_API const char* fpsmax_mode_name(fpsmax_mode mode);

FPSMAX_API fpsmax_status fpsmax_solve(const fpsmax_formula* f, const fpsmax_config* cfg,
                                      fpsmax_improvement_fn on_improve, void* user, fpsmax_result** out);
FPSMAX_API void fpsmax_result_free(fpsmax_result* r);

FPSMAX_API int fpsmax_result_feasible(const fpsmax_result* r);
FPSMAX_API uint64_t fpsmax_result_cost(const fpsmax_result* r);
FPSMAX_API uint64_t fpsmax_result_flips(const fpsmax_result* r);
FPSMAX_API double fpsmax_result_elapsed(const fpsmax_result* r);
FPSMAX_API double fpsmax_result_time_to_best(const fpsmax_result* r);
FPSMAX_API uint32_t fpsmax_result_num_vars(const fpsmax_result* r);
/* Copies the best model into values (num_vars bytes). Fails when the run
 * found no feasible assignment. */
FPSMAX_API fpsmax_status fpsmax_result_model(const fpsmax_result* r, uint8_t* values, size_t n);

#ifdef __cplusplus
}
#endif

#endif
