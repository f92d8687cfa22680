#ifndef BADIC_BADIC_H
#define BADIC_BADIC_H

#include <stdint.h>

#if defined(_WIN32)
#define BADIC_API __declspec(dllexport)
#else
#define BADIC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum badic_status {
  BADIC_OK = 0,
  BADIC_E_DOMAIN = 1,    /* violated precondition or inequality */
  BADIC_E_IO = 2,
  BADIC_E_PARSE = 3,     /* malformed set file; message carries the line */
  BADIC_E_ARG = 4,       /* null or malformed argument */
  BADIC_E_INTERNAL = 5
} badic_status;

/* A cube tree (.bdt) or windowed set (.wdt). */
typedef struct badic_set badic_set;

/* Message of the last failed call on this thread; "" after success. */
BADIC_API const char* badic_last_error(void);

/* Strings returned through char** are owned by the caller. */
BADIC_API void badic_string_free(char* s);

BADIC_API badic_status badic_set_load(const char* path, badic_set** out);
BADIC_API badic_status badic_set_parse(const char* text, badic_set** out);
BADIC_API badic_status badic_set_save(const badic_set* set, const char* path);
BADIC_API badic_status badic_set_format(const badic_set* set, char** out);
BADIC_API void badic_set_free(badic_set* set);
/* 1 for windowed sets, 0 for trees. */
BADIC_API int badic_set_is_windowed(const badic_set* set);
/* Header line, leaf count and per-level (or per-window) counts. */
BADIC_API badic_status badic_set_info(const badic_set* set, char** out);

typedef struct badic_gen_params {
  const char* family;      /* digit-cantor, full-cube, lattice-window, ... */
  int base;
  int dim;
  int depth;
  const char* digits;      /* comma-separated, may be NULL */
  const char* int_digits;  /* comma-separated, may be NULL */
  int window_exp;
  int windows;
  int frac;
  uint64_t count;
  uint32_t max_children;
  uint64_t seed;
} badic_gen_params;

/* Fills the defaults used by the command line. */
BADIC_API void badic_gen_params_init(badic_gen_params* p);
BADIC_API badic_status badic_generate(const badic_gen_params* p, badic_set** out);

typedef struct badic_estimate_params {
  const char* kind;  /* star-local, star-global, assouad-ball, lower-cover, lower-pack */
  int k_max;         /* <= 0: the set's default */
  int workers;
  const char* radius;  /* ball kinds: R as a decimal or p/q; NULL means 1 */
} badic_estimate_params;

BADIC_API void badic_estimate_params_init(badic_estimate_params* p);
/* headline: "estimate=<v> kind=<kind> depth=<k>"; tsv: per-scale records. */
BADIC_API badic_status badic_estimate(const badic_set* set, const badic_estimate_params* p, char** headline,
                                      char** tsv);

typedef struct badic_assouad_params {
  const char* alpha;
  const char* eps;
  int M;
  int stages;
  const char* strategy;  /* "greedy" or "random:<seed>" */
  int strict;
  int workers;
  int ladder;            /* > 0: sandwich ladder with this many levels */
} badic_assouad_params;

BADIC_API void badic_assouad_params_init(badic_assouad_params* p);
/* out: the extracted subset (for a ladder, the innermost A_L); trace: TSV;
   summary: one line per headline/check. */
BADIC_API badic_status badic_extract_assouad(const badic_set* set, const badic_assouad_params* p, badic_set** out,
                                             char** trace, char** summary);

typedef struct badic_lower_params {
  const char* alpha;  /* p/q */
  int M;
  int depth;
  const char* R0;     /* NULL means 1 */
  int64_t anchor;     /* < 0: search */
} badic_lower_params;

BADIC_API void badic_lower_params_init(badic_lower_params* p);
/* Returns BADIC_E_DOMAIN when a ball-tree invariant or a scale-pair bound
   fails; out/report/summary are still filled in that case. */
BADIC_API badic_status badic_extract_lower(const badic_set* set, const badic_lower_params* p, badic_set** out,
                                           char** report, char** summary);

/* suite: h-star, packing-sandwich, prune-bound, lemma21. samples <= 0 uses
   the suite default. Returns BADIC_E_DOMAIN on any violation. */
BADIC_API badic_status badic_verify(const char* suite, uint64_t seed, int samples, char** summary,
                                    char** violations);

#ifdef __cplusplus
}
#endif

#endif
