#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core.hpp"
#include "counterfactual.hpp"
#include "dataset.hpp"
#include "modelio.hpp"
#include "prompting.hpp"
#include "rewards.hpp"

namespace mj {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 0;

struct HarnessOptions {
    PromptMode mode = PromptMode::Grounded;
    ImageCondition condition = ImageCondition::real();
    GenerationConfig gen;
    bool flip_enabled = true;
    int parallelism = 1;
    int repeats = 1;  // judgments per sample (each gets its own seed offset)
    ConsistencyPolicy policy = ConsistencyPolicy::Inversion;
    ReferenceLexicon lexicon = default_lexicon();
    PromptOptions prompt_options;
    nlohmann::json config_snapshot;  // resolved run configuration, embedded in reports
};

/// Outcome of judging one sample once: the original completion plus, when
/// the flip applied, the regenerated flipped completion sharing its
/// consistency bit.
struct JudgmentRecord {
    std::string sample_id;
    TaskKind task = TaskKind::T2i;
    Choice label = Choice::A;
    PromptMode mode = PromptMode::Grounded;
    int repeat = 0;  // 0..repeats-1
    CompletionRecord original;
    std::optional<CompletionRecord> flipped;
    bool flip_applicable = false;
    bool emulated_continuation = false;
    std::chrono::milliseconds latency{0};  // not serialized; reports stay byte-stable
};

struct EvalReport {
    int n_samples = 0;
    int n_repeats = 1;
    int n_judged = 0;  // records = samples x repeats - failures
    int n_failed = 0;
    int n_parse_failures = 0;
    int n_flip_not_applicable = 0;

    std::map<TaskKind, double> per_task_accuracy;
    std::map<TaskKind, int> per_task_counts;
    double overall_accuracy = 0.0;

    double consistency_rate = 0.0;  // over flip-applicable samples
    int consistency_denominator = 0;
    double consistency_rate_all_samples = 0.0;

    double a_preference_rate = 0.0;  // fraction of original verdicts == A
    int verdict_count = 0;

    std::string mode;
    std::string condition;
    nlohmann::json config_snapshot;

    std::vector<JudgmentRecord> records;  // sorted by sample id
    std::vector<std::pair<std::string, std::string>> failures;  // (sample_id, error)
};

struct GroupRunRecord {
    std::string sample_id;
    CompletionGroup group;
    bool incomplete = false;  // a transport failure hit one of the 2N trajectories
    std::string failure;
};

struct AblationReport {
    EvalReport open_ended;
    EvalReport grounded;
    std::map<TaskKind, double> delta_per_task;  // grounded - open_ended, in accuracy points
    double delta_overall = 0.0;
};

struct ConditionReport {
    struct Entry {
        std::string condition;
        double consistency_rate = 0.0;
        int consistency_denominator = 0;
        double accuracy = 0.0;
        double blank_asset_rate = 0.0;  // fraction of image slots holding the blank asset
        EvalReport report;
    };
    std::vector<Entry> entries;  // real, shuffled, blank
    nlohmann::json config_snapshot;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Judges one sample: generate, parse, and when enabled and applicable run
/// the counterfactual flip (temperature 0 continuation) and score both
/// records. Parse failures are zero-reward records, not errors.
JudgmentRecord judge_once(const PreferenceSample& sample, JudgeClient& judge,
                          const HarnessOptions& options);

/// Bounded-parallel judging of a whole manifest (condition applied first)
/// with deterministic aggregation. Transport failures are isolated per
/// sample; more than 50% failures aborts with a diagnostic.
EvalReport evaluate(const DatasetManifest& manifest, JudgeClient& judge,
                    const HarnessOptions& options);

/// N originals at the sampling temperature, each flipped and continued at
/// temperature 0, pooled into a 2N advantage group.
GroupRunRecord grpo_sample_run(const PreferenceSample& sample, JudgeClient& judge,
                               const GrpoConfig& grpo, const HarnessOptions& options);

/// Open-ended vs grounded prompting on real images, flip off.
AblationReport ablation_experiment(const DatasetManifest& manifest, JudgeClient& judge,
                                   const HarnessOptions& options);

/// real / shuffled(seed) / blank conditions with flip on.
ConditionReport condition_experiment(const DatasetManifest& manifest, JudgeClient& judge,
                                     const HarnessOptions& options, std::uint64_t shuffle_seed);

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

nlohmann::ordered_json judgment_to_json(const JudgmentRecord& record);
nlohmann::ordered_json report_to_json(const EvalReport& report);
nlohmann::ordered_json ablation_to_json(const AblationReport& report);
nlohmann::ordered_json conditions_to_json(const ConditionReport& report);

/// CSV / markdown views of a serialized report (any of the three kinds).
std::string render_report_csv(const nlohmann::json& report_json);
std::string render_report_markdown(const nlohmann::json& report_json);

}  // namespace mj
