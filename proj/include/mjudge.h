/* mjudge — multimodal judge orchestration library.
 *
 * C ABI over the judging toolkit: transcript parsing and format scoring,
 * counterfactual flips, composite rewards and group-relative advantages,
 * dataset loading with image-condition perturbations, and batch evaluation
 * against HTTP or scripted judges.
 *
 * Conventions:
 *   - Every fallible call returns mj_status; MJ_OK is 0.
 *   - On failure, mj_last_error() returns a thread-local message describing
 *     the most recent error on the calling thread.
 *   - Output strings (char**) are UTF-8, heap-allocated by the library, and
 *     must be released with mj_string_free().
 *   - Structured inputs and outputs are JSON documents; see README.md for
 *     the schemas.
 */

#ifndef MJUDGE_H
#define MJUDGE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MJ_API __declspec(dllexport)
#else
#define MJ_API __attribute__((visibility("default")))
#endif

typedef enum mj_status {
    MJ_OK = 0,
    MJ_ERR_INVALID_ARGUMENT = 1,
    MJ_ERR_CONFIG = 2,
    MJ_ERR_DATA = 3,
    MJ_ERR_IO = 4,
    MJ_ERR_TRANSPORT = 5,
    MJ_ERR_REQUEST = 6,
    MJ_ERR_CONTRACT = 7,
    MJ_ERR_INTERNAL = 8
} mj_status;

MJ_API const char* mj_version(void);
MJ_API const char* mj_status_name(mj_status status);
MJ_API const char* mj_last_error(void);
MJ_API void mj_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Transcript parsing and rewards                                      */
/* ------------------------------------------------------------------ */

/* Parses a judge transcript. Never fails on content: malformed input is
 * reported through the returned JSON {tag_status, sections, scores,
 * format_reward}. */
MJ_API mj_status mj_parse_transcript(const char* text, char** out_json);

/* Format reward alone: value = well_formed_count * 0.2/11. score_ok is 1
 * when a valid boxed score pair was extracted. */
MJ_API mj_status mj_format_reward(const char* text, double* out_value,
                                  int* out_well_formed_count, int* out_score_ok);

/* Last boxed {a, b} pair; out_found is 0 (and scores untouched) when no
 * valid pair exists. */
MJ_API mj_status mj_extract_scores(const char* text, int* out_found, int* out_score_a,
                                   int* out_score_b);

/* Composite reward for a transcript judged against label "A"/"B" with a
 * precomputed consistency bit. Returns {r_format, r_correct, r_cons, total,
 * zeroed_by_parse_failure}. */
MJ_API mj_status mj_composite_reward(const char* text, const char* label, int cons_bit,
                                     char** out_json);

/* advantage[i] = reward[i] - mean(reward); retained[i] = |advantage[i]| >
 * epsilon. Arrays hold `count` entries; retained may be NULL. */
MJ_API mj_status mj_group_advantages(const double* rewards, size_t count, double epsilon,
                                     double* out_advantages, unsigned char* out_retained);

/* ------------------------------------------------------------------ */
/* Counterfactual flip                                                 */
/* ------------------------------------------------------------------ */

/* Rewrites the reasoning prefix of a transcript for the swapped-response
 * continuation: sides exchanged, A/B references swapped, truncated after
 * consistency_verification. Fails with MJ_ERR_CONTRACT when the prefix tags
 * are not all well-formed. */
MJ_API mj_status mj_rewrite_prefix(const char* transcript_text, char** out_prefix);

/* Swaps response_a/response_b and the label of a sample JSON record. */
MJ_API mj_status mj_flip_sample(const char* sample_json, char** out_sample_json);

/* original/flipped are "A"/"B" verdicts; policy is "inversion" or "strict";
 * label is the original ground truth. */
MJ_API mj_status mj_check_inversion(const char* original_verdict, const char* flipped_verdict,
                                    const char* label, const char* policy, int* out_bit);

/* ------------------------------------------------------------------ */
/* Prompt construction                                                 */
/* ------------------------------------------------------------------ */

/* Renders the judge request for a sample JSON record. mode is "grounded" or
 * "open_ended". Returns a chat-message array JSON. */
MJ_API mj_status mj_build_judge_prompt(const char* sample_json, const char* mode,
                                       char** out_messages_json);

/* ------------------------------------------------------------------ */
/* Datasets                                                            */
/* ------------------------------------------------------------------ */

typedef struct mj_dataset mj_dataset;

MJ_API mj_status mj_dataset_open(const char* path, mj_dataset** out);
MJ_API void mj_dataset_close(mj_dataset* dataset);

/* {path, n_samples, subtask_counts, label_counts}. */
MJ_API mj_status mj_dataset_info(const mj_dataset* dataset, char** out_json);

/* condition: "real", "shuffled" (uses seed) or "blank". */
MJ_API mj_status mj_dataset_apply_condition(const mj_dataset* dataset, const char* condition,
                                            uint64_t seed, mj_dataset** out);

/* Seeded selection of up to per_task samples per subtask. */
MJ_API mj_status mj_dataset_subset(const mj_dataset* dataset, int per_task, uint64_t seed,
                                   mj_dataset** out);

/* Sample record JSON by id, or the first sample when id is NULL/empty. */
MJ_API mj_status mj_dataset_sample(const mj_dataset* dataset, const char* sample_id,
                                   char** out_sample_json);

/* Validates without keeping a handle. MJ_OK with a findings report when the
 * dataset loads cleanly; MJ_ERR_DATA with the problems in out_report_json
 * (one line each) otherwise. */
MJ_API mj_status mj_dataset_validate(const char* path, char** out_report_json);

/* ------------------------------------------------------------------ */
/* Judges and orchestration                                            */
/* ------------------------------------------------------------------ */

typedef struct mj_judge mj_judge;

/* spec: JSON ({"type":"http","base_url":...,"model":...},
 * {"type":"scripted","behavior":"content_oracle"|"position_biased_a"|
 * "random","seed":N}, {"type":"replay","dir":...}) or the shorthand
 * "scripted:content_oracle", "scripted:random:SEED", "replay:DIR".
 * HTTP judges read MJ_API_KEY / MJ_BASE_URL from the environment. */
MJ_API mj_status mj_judge_open(const char* spec, mj_judge** out);
MJ_API void mj_judge_close(mj_judge* judge);

/* One completion for a chat-message array JSON. kind/sample_id correlate
 * replay fixtures; pass NULL for live endpoints. */
MJ_API mj_status mj_generate(mj_judge* judge, const char* messages_json, const char* gen_json,
                             const char* sample_id, const char* kind, char** out_text);

/* options_json (all keys optional): {"mode":"grounded","condition":"real",
 * "condition_seed":0,"flip":true,"parallelism":4,"policy":"inversion",
 * "temperature":0.7,"max_tokens":6144,"seed":0,"group_size":32,
 * "epsilon":0.01,"config":{...embedded into reports...}}. */
MJ_API mj_status mj_judge_once(mj_judge* judge, const char* sample_json,
                               const char* options_json, char** out_record_json);

MJ_API mj_status mj_evaluate(mj_judge* judge, const mj_dataset* dataset,
                             const char* options_json, char** out_report_json);

MJ_API mj_status mj_ablation(mj_judge* judge, const mj_dataset* dataset,
                             const char* options_json, char** out_report_json);

MJ_API mj_status mj_conditions(mj_judge* judge, const mj_dataset* dataset,
                               const char* options_json, char** out_report_json);

/* Runs the 2N-completion group per sample and returns the JSONL export
 * (one record per completion; incomplete samples are listed in
 * out_skipped_json and excluded). */
MJ_API mj_status mj_grpo_export(mj_judge* judge, const mj_dataset* dataset,
                                const char* options_json, char** out_jsonl,
                                char** out_skipped_json);

/* ------------------------------------------------------------------ */
/* Report rendering and assets                                         */
/* ------------------------------------------------------------------ */

MJ_API mj_status mj_report_to_csv(const char* report_json, char** out_csv);
MJ_API mj_status mj_report_to_markdown(const char* report_json, char** out_markdown);

/* Frozen bytes of the canonical 512x512 blank-grey PNG. The pointer is
 * static; do not free. */
MJ_API mj_status mj_blank_image(const unsigned char** out_bytes, size_t* out_size);

#ifdef __cplusplus
}
#endif

#endif /* MJUDGE_H */
