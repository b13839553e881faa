#ifndef TAXOSIM_H
#define TAXOSIM_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define TAXOSIM_NO_CONCEPT UINT32_MAX

typedef enum TaxosimStatus {
  TAXOSIM_STATUS_OK = 0,
  TAXOSIM_STATUS_NULL_POINTER = 1,
  TAXOSIM_STATUS_INVALID_UTF8 = 2,
  TAXOSIM_STATUS_IO = 3,
  TAXOSIM_STATUS_PARSE = 4,
  TAXOSIM_STATUS_INVALID_TAXONOMY = 5,
  TAXOSIM_STATUS_UNKNOWN_CONCEPT = 6,
  TAXOSIM_STATUS_INVALID_ARGUMENT = 7,
  TAXOSIM_STATUS_STATISTICS = 8,
  TAXOSIM_STATUS_PANIC = 99,
} TaxosimStatus;

/**
 * Opaque scorer handle. Keeps its taxonomy alive.
 */
typedef struct TaxosimScorer TaxosimScorer;

/**
 * Opaque taxonomy handle.
 */
typedef struct TaxosimTaxonomy TaxosimTaxonomy;

typedef struct TaxosimPath {
  double length;
  double edge_part;
  double compensation_part;
} TaxosimPath;

typedef struct TaxosimScore {
  double value;
  /**
   * True when the raw value is a distance (smaller is more similar).
   */
  bool is_distance;
  /**
   * Set when a word had no senses; `value` is then the measure floor.
   */
  bool unknown_word;
  /**
   * Winning senses, or `UINT32_MAX` when `unknown_word` is set.
   */
  uint32_t sense1;
  uint32_t sense2;
} TaxosimScore;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *taxosim_version(void);

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *taxosim_last_error_message(void);

/**
 * Load WordNet `data.noun` and `index.noun` files.
 *
 * # Safety
 * Paths must be NUL-terminated strings; `out_taxonomy` must be writable.
 */
enum TaxosimStatus taxosim_taxonomy_load_wordnet(const char *data_path,
                                                 const char *index_path,
                                                 struct TaxosimTaxonomy **out_taxonomy);

/**
 * Load WordNet from a directory holding `data.noun` and `index.noun`.
 *
 * # Safety
 * `dir` must be a NUL-terminated string; `out_taxonomy` must be writable.
 */
enum TaxosimStatus taxosim_taxonomy_load_wordnet_dir(const char *dir,
                                                     struct TaxosimTaxonomy **out_taxonomy);

/**
 * Load a tab-separated `child<TAB>parent` edge list.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out_taxonomy` must be writable.
 */
enum TaxosimStatus taxosim_taxonomy_load_edge_list(const char *path,
                                                   struct TaxosimTaxonomy **out_taxonomy);

/**
 * Release a taxonomy. Scorers built from it stay valid. NULL is ignored.
 *
 * # Safety
 * `taxonomy` must come from a `taxosim_taxonomy_load_*` call and not be
 * freed twice.
 */
void taxosim_taxonomy_free(struct TaxosimTaxonomy *taxonomy);

/**
 * # Safety
 * `taxonomy` must be a live handle; `out_count` must be writable.
 */
enum TaxosimStatus taxosim_taxonomy_node_count(const struct TaxosimTaxonomy *taxonomy,
                                               size_t *out_count);

/**
 * # Safety
 * `taxonomy` must be a live handle; `out_depth` must be writable.
 */
enum TaxosimStatus taxosim_taxonomy_max_depth(const struct TaxosimTaxonomy *taxonomy,
                                              uint32_t *out_depth);

/**
 * # Safety
 * `taxonomy` must be a live handle; `out_count` must be writable.
 */
enum TaxosimStatus taxosim_taxonomy_leaf_count(const struct TaxosimTaxonomy *taxonomy,
                                               size_t *out_count);

/**
 * Resolve a concept key such as `00001740-n` to its id.
 *
 * # Safety
 * `taxonomy` must be a live handle, `key` NUL-terminated, `out_id` writable.
 */
enum TaxosimStatus taxosim_taxonomy_lookup(const struct TaxosimTaxonomy *taxonomy,
                                           const char *key,
                                           uint32_t *out_id);

/**
 * # Safety
 * `taxonomy` must be a live handle; `out_depth` must be writable.
 */
enum TaxosimStatus taxosim_taxonomy_depth(const struct TaxosimTaxonomy *taxonomy,
                                          uint32_t id,
                                          uint32_t *out_depth);

/**
 * Concept ids for a word. Writes up to `capacity` ids into `out_ids` and
 * always stores the total number of senses in `out_len`, so a first call
 * with `capacity = 0` sizes the buffer.
 *
 * # Safety
 * `out_ids` must hold `capacity` elements (may be NULL when 0).
 */
enum TaxosimStatus taxosim_taxonomy_senses(const struct TaxosimTaxonomy *taxonomy,
                                           const char *word,
                                           uint32_t *out_ids,
                                           size_t capacity,
                                           size_t *out_len);

/**
 * Shortest-path length between two concepts. `model` is `edge`,
 * `weighted`, `density` or `density:<lambda>`.
 *
 * # Safety
 * `taxonomy` must be a live handle, `model` NUL-terminated, `out_path`
 * writable.
 */
enum TaxosimStatus taxosim_path_length(const struct TaxosimTaxonomy *taxonomy,
                                       uint32_t c1,
                                       uint32_t c2,
                                       const char *model,
                                       struct TaxosimPath *out_path);

/**
 * Build a scorer. `path_model`, `ic_model`, `corpus_path` and `params`
 * may be NULL for defaults. `ic_model` is `seco`, `sanchez` or `corpus`
 * (which reads `word<TAB>count` lines from `corpus_path`). `params` is a
 * comma-separated `key=value` list such as `alpha=0.5,beta=0.55`.
 *
 * # Safety
 * `taxonomy` must be a live handle, strings NUL-terminated, `out_scorer`
 * writable.
 */
enum TaxosimStatus taxosim_scorer_new(const struct TaxosimTaxonomy *taxonomy,
                                      const char *measure,
                                      const char *path_model,
                                      const char *ic_model,
                                      const char *corpus_path,
                                      const char *params,
                                      struct TaxosimScorer **out_scorer);

/**
 * Release a scorer. NULL is ignored.
 *
 * # Safety
 * `scorer` must come from `taxosim_scorer_new` and not be freed twice.
 */
void taxosim_scorer_free(struct TaxosimScorer *scorer);

/**
 * Best score over all sense pairs of two words.
 *
 * # Safety
 * `scorer` must be a live handle, words NUL-terminated, `out_score`
 * writable.
 */
enum TaxosimStatus taxosim_scorer_sim_words(const struct TaxosimScorer *scorer,
                                            const char *word1,
                                            const char *word2,
                                            struct TaxosimScore *out_score);

/**
 * # Safety
 * `scorer` must be a live handle; `out_value` must be writable.
 */
enum TaxosimStatus taxosim_scorer_sim_concepts(const struct TaxosimScorer *scorer,
                                               uint32_t c1,
                                               uint32_t c2,
                                               double *out_value);

/**
 * Pearson r of the scorer against a built-in dataset (`mc30`, `rg65`).
 * Distance measures report the sign-flipped coefficient.
 *
 * # Safety
 * `scorer` must be a live handle, `dataset` NUL-terminated, `out_r`
 * writable.
 */
enum TaxosimStatus taxosim_scorer_evaluate(const struct TaxosimScorer *scorer,
                                           const char *dataset,
                                           double *out_r);

/**
 * Pearson correlation of two series of length `len`.
 *
 * # Safety
 * `xs` and `ys` must each point to `len` doubles; `out_r` must be writable.
 */
enum TaxosimStatus taxosim_pearson(const double *xs, const double *ys, size_t len, double *out_r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAXOSIM_H */
