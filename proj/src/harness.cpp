#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "errors.hpp"

namespace mj {

namespace {

bool is_per_sample_failure(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Transport:
        case ErrorKind::Request:
        case ErrorKind::Io:
            return true;
        default:
            return false;
    }
}

struct FlipOutcome {
    std::optional<CompletionRecord> record;
    int cons_bit = 0;
    bool applicable = false;
    bool emulated = false;
};

// Runs the counterfactual side of one judged completion. The consistency
// bit is only earned when both verdicts exist and invert per the policy.
FlipOutcome run_flip(const PreferenceSample& sample, const ParsedChain& original_chain,
                     JudgeClient& judge, const HarnessOptions& options,
                     const RequestContext& context, int pair_index) {
    FlipOutcome outcome;
    if (!original_chain.prefix_well_formed() || !original_chain.scores) return outcome;

    outcome.applicable = true;
    auto artifacts = make_flipped_artifacts(sample, original_chain, options.lexicon);
    auto messages = build_continuation_prompt(artifacts.flipped_sample,
                                              artifacts.rewritten_prefix, options.prompt_options);
    GenerationConfig continuation_gen = options.gen;
    continuation_gen.temperature = 0.0;  // flip regeneration is greedy

    auto result = judge.generate_full(messages, continuation_gen, context);
    outcome.emulated = result.continuation_emulated;

    ParsedChain flipped_chain = parse_transcript(artifacts.rewritten_prefix + result.text);
    if (flipped_chain.scores) {
        outcome.cons_bit = check_inversion(verdict_from_scores(*original_chain.scores),
                                           verdict_from_scores(*flipped_chain.scores),
                                           sample.label, options.policy);
    }

    CompletionRecord record;
    record.kind = CompletionRecord::Kind::Flipped;
    record.chain = std::move(flipped_chain);
    record.pair_index = pair_index;
    record.reward =
        composite_reward(record.chain, artifacts.flipped_sample.label, outcome.cons_bit);
    outcome.record = std::move(record);
    return outcome;
}

CompletionRecord degenerate_flipped_record(int pair_index, Choice flipped_label) {
    CompletionRecord record;
    record.kind = CompletionRecord::Kind::Flipped;
    record.chain = parse_transcript("");
    record.pair_index = pair_index;
    record.reward = composite_reward(record.chain, flipped_label, 0);
    return record;
}

double ratio(double numerator, int denominator) {
    return denominator > 0 ? numerator / denominator : 0.0;
}

std::string json_number(double value) {
    return nlohmann::json(value).dump();
}

}  // namespace

namespace {

JudgmentRecord judge_once_repeat(const PreferenceSample& sample, JudgeClient& judge,
                                 const HarnessOptions& options, int repeat) {
    auto start = std::chrono::steady_clock::now();

    JudgmentRecord record;
    record.sample_id = sample.id;
    record.task = sample.task;
    record.label = sample.label;
    record.mode = options.mode;
    record.repeat = repeat;

    // Repeat runs get their own seed offset and fixture keys.
    HarnessOptions run = options;
    std::string suffix;
    if (options.repeats > 1) {
        run.gen.seed = options.gen.seed.value_or(kDefaultSeed) + static_cast<std::uint64_t>(repeat);
        suffix = "@" + std::to_string(repeat);
    }

    auto messages = build_judge_prompt(sample, run.mode, run.prompt_options);
    auto result = judge.generate_full(messages, run.gen, {sample.id, "original" + suffix});

    record.original.kind = CompletionRecord::Kind::Original;
    record.original.chain = parse_transcript(result.text);
    record.original.pair_index = 0;

    int cons_bit = 0;
    if (run.flip_enabled) {
        FlipOutcome flip = run_flip(sample, record.original.chain, judge, run,
                                    {sample.id, "flipped" + suffix}, 0);
        record.flip_applicable = flip.applicable;
        record.emulated_continuation = flip.emulated;
        record.flipped = std::move(flip.record);
        cons_bit = flip.cons_bit;
    }
    record.original.reward = composite_reward(record.original.chain, sample.label, cons_bit);

    record.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    return record;
}

}  // namespace

JudgmentRecord judge_once(const PreferenceSample& sample, JudgeClient& judge,
                          const HarnessOptions& options) {
    return judge_once_repeat(sample, judge, options, 0);
}

EvalReport evaluate(const DatasetManifest& manifest, JudgeClient& judge,
                    const HarnessOptions& options) {
    if (manifest.samples.empty()) {
        throw_error(ErrorKind::InvalidArgument, "evaluate requires a non-empty manifest");
    }
    if (options.repeats < 1) {
        throw_error(ErrorKind::InvalidArgument, "repeats must be >= 1");
    }
    DatasetManifest conditioned = apply_condition(manifest, options.condition);
    const auto& samples = conditioned.samples;
    const std::size_t total = samples.size() * static_cast<std::size_t>(options.repeats);

    std::vector<std::optional<JudgmentRecord>> results(total);
    std::vector<std::optional<std::string>> errors(total);

    int worker_count = std::max(1, std::min<int>(options.parallelism, static_cast<int>(total)));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> fatal{false};
    std::exception_ptr fatal_error;
    std::mutex fatal_mutex;
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (int w = 0; w < worker_count; ++w) {
        workers.emplace_back([&] {
            while (!fatal.load()) {
                std::size_t index = next.fetch_add(1);
                if (index >= total) break;
                const auto& sample = samples[index / options.repeats];
                int repeat = static_cast<int>(index % options.repeats);
                try {
                    results[index] = judge_once_repeat(sample, judge, options, repeat);
                } catch (const Error& e) {
                    if (is_per_sample_failure(e)) {
                        errors[index] = e.what();
                        continue;
                    }
                    std::lock_guard lock(fatal_mutex);
                    if (!fatal_error) fatal_error = std::current_exception();
                    fatal.store(true);
                } catch (...) {
                    std::lock_guard lock(fatal_mutex);
                    if (!fatal_error) fatal_error = std::current_exception();
                    fatal.store(true);
                }
            }
        });
    }
    for (auto& worker : workers) worker.join();
    if (fatal_error) std::rethrow_exception(fatal_error);

    EvalReport report;
    report.n_samples = static_cast<int>(samples.size());
    report.n_repeats = options.repeats;
    report.mode = to_string(options.mode);
    report.condition = to_string(options.condition);
    report.config_snapshot = options.config_snapshot;

    for (std::size_t i = 0; i < total; ++i) {
        if (errors[i]) {
            report.failures.emplace_back(samples[i / options.repeats].id, *errors[i]);
        } else if (results[i]) {
            report.records.push_back(std::move(*results[i]));
        }
    }
    report.n_failed = static_cast<int>(report.failures.size());
    report.n_judged = static_cast<int>(report.records.size());
    if (report.n_failed * 2 > static_cast<int>(total)) {
        throw_error(ErrorKind::Transport,
                    "aborting: " + std::to_string(report.n_failed) + " of " +
                        std::to_string(total) + " judgments failed; first error: " +
                        (report.failures.empty() ? "?" : report.failures.front().second));
    }

    // Aggregation happens on (id, repeat)-sorted records so reports are
    // byte-identical regardless of worker interleaving.
    std::sort(report.records.begin(), report.records.end(),
              [](const JudgmentRecord& a, const JudgmentRecord& b) {
                  return std::tie(a.sample_id, a.repeat) < std::tie(b.sample_id, b.repeat);
              });
    std::sort(report.failures.begin(), report.failures.end());

    std::map<TaskKind, int> correct_per_task;
    int correct_total = 0;
    int cons_sum = 0;
    int verdict_a = 0;
    for (const auto& record : report.records) {
        report.per_task_counts[record.task] += 1;
        int correct = record.original.reward.r_correct;
        correct_per_task[record.task] += correct;
        correct_total += correct;
        if (record.original.chain.scores) {
            report.verdict_count += 1;
            if (verdict_from_scores(*record.original.chain.scores).choice == Choice::A) {
                ++verdict_a;
            }
        } else {
            report.n_parse_failures += 1;
        }
        if (record.flip_applicable) {
            report.consistency_denominator += 1;
            cons_sum += record.original.reward.r_cons;
        }
    }
    for (const auto& [task, count] : report.per_task_counts) {
        report.per_task_accuracy[task] = ratio(correct_per_task[task], count);
    }
    report.overall_accuracy = ratio(correct_total, report.n_judged);
    report.consistency_rate = ratio(cons_sum, report.consistency_denominator);
    report.consistency_rate_all_samples = ratio(cons_sum, report.n_judged);
    report.a_preference_rate = ratio(verdict_a, report.verdict_count);
    report.n_flip_not_applicable =
        options.flip_enabled ? report.n_judged - report.consistency_denominator : 0;
    return report;
}

GroupRunRecord grpo_sample_run(const PreferenceSample& sample, JudgeClient& judge,
                               const GrpoConfig& grpo, const HarnessOptions& options) {
    if (!grpo.valid()) throw_error(ErrorKind::InvalidArgument, "invalid GRPO config");

    GroupRunRecord run;
    run.sample_id = sample.id;

    auto messages = build_judge_prompt(sample, options.mode, options.prompt_options);
    std::uint64_t base_seed = options.gen.seed.value_or(kDefaultSeed);

    // Pairs are independent of each other; each flip continuation strictly
    // follows its own original within a worker.
    const int n = grpo.group_size_n;
    std::vector<std::optional<std::pair<CompletionRecord, CompletionRecord>>> slots(n);
    std::vector<std::optional<std::string>> failures(n);
    std::atomic<int> next{0};
    std::atomic<bool> fatal{false};
    std::exception_ptr fatal_error;
    std::mutex fatal_mutex;
    int worker_count = std::max(1, std::min(options.parallelism, n));
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (int w = 0; w < worker_count; ++w) {
        workers.emplace_back([&] {
            while (!fatal.load()) {
                int i = next.fetch_add(1);
                if (i >= n) break;
                GenerationConfig gen_i = options.gen;
                gen_i.seed = base_seed + static_cast<std::uint64_t>(i);
                HarnessOptions pair_options = options;
                pair_options.gen = gen_i;
                std::string suffix = "_" + std::to_string(i);
                try {
                    auto result =
                        judge.generate_full(messages, gen_i, {sample.id, "original" + suffix});

                    CompletionRecord original;
                    original.kind = CompletionRecord::Kind::Original;
                    original.chain = parse_transcript(result.text);
                    original.pair_index = i;

                    FlipOutcome flip = run_flip(sample, original.chain, judge, pair_options,
                                                {sample.id, "flipped" + suffix}, i);
                    original.reward =
                        composite_reward(original.chain, sample.label, flip.cons_bit);

                    CompletionRecord flipped =
                        flip.record ? std::move(*flip.record)
                                    : degenerate_flipped_record(i, flip_label(sample.label));
                    slots[i] = std::make_pair(std::move(original), std::move(flipped));
                } catch (const Error& e) {
                    if (is_per_sample_failure(e)) {
                        failures[i] = e.what();
                        continue;
                    }
                    std::lock_guard lock(fatal_mutex);
                    if (!fatal_error) fatal_error = std::current_exception();
                    fatal.store(true);
                } catch (...) {
                    std::lock_guard lock(fatal_mutex);
                    if (!fatal_error) fatal_error = std::current_exception();
                    fatal.store(true);
                }
            }
        });
    }
    for (auto& worker : workers) worker.join();
    if (fatal_error) std::rethrow_exception(fatal_error);

    std::vector<std::pair<CompletionRecord, CompletionRecord>> pairs;
    pairs.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (failures[i]) {
            run.incomplete = true;
            run.failure = *failures[i];
            break;
        }
        if (slots[i]) pairs.push_back(std::move(*slots[i]));
    }

    if (!run.incomplete) {
        run.group = build_group(pairs, grpo);
    }
    return run;
}

AblationReport ablation_experiment(const DatasetManifest& manifest, JudgeClient& judge,
                                   const HarnessOptions& options) {
    HarnessOptions base = options;
    base.condition = ImageCondition::real();
    base.flip_enabled = false;

    AblationReport report;
    base.mode = PromptMode::OpenEnded;
    report.open_ended = evaluate(manifest, judge, base);
    base.mode = PromptMode::Grounded;
    report.grounded = evaluate(manifest, judge, base);

    for (const auto& [task, accuracy] : report.grounded.per_task_accuracy) {
        auto it = report.open_ended.per_task_accuracy.find(task);
        double open_accuracy = it == report.open_ended.per_task_accuracy.end() ? 0.0 : it->second;
        report.delta_per_task[task] = (accuracy - open_accuracy) * 100.0;
    }
    report.delta_overall =
        (report.grounded.overall_accuracy - report.open_ended.overall_accuracy) * 100.0;
    return report;
}

ConditionReport condition_experiment(const DatasetManifest& manifest, JudgeClient& judge,
                                     const HarnessOptions& options, std::uint64_t shuffle_seed) {
    ConditionReport report;
    report.config_snapshot = options.config_snapshot;
    for (const ImageCondition& condition :
         {ImageCondition::real(), ImageCondition::shuffled(shuffle_seed),
          ImageCondition::blank()}) {
        HarnessOptions run_options = options;
        run_options.condition = condition;
        run_options.flip_enabled = true;

        ConditionReport::Entry entry;
        entry.condition = to_string(condition);
        entry.report = evaluate(manifest, judge, run_options);
        entry.consistency_rate = entry.report.consistency_rate;
        entry.consistency_denominator = entry.report.consistency_denominator;
        entry.accuracy = entry.report.overall_accuracy;

        DatasetManifest conditioned = apply_condition(manifest, condition);
        int slots = 0;
        int blank_slots = 0;
        for (const auto& sample : conditioned.samples) {
            for (const auto* parts : {&sample.prompt, &sample.response_a, &sample.response_b}) {
                for (const auto& part : *parts) {
                    if (part.kind != ContentPart::Kind::Image) continue;
                    ++slots;
                    if (is_blank_asset(part.image)) ++blank_slots;
                }
            }
        }
        entry.blank_asset_rate = slots > 0 ? static_cast<double>(blank_slots) / slots : 0.0;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

namespace {

nlohmann::ordered_json completion_to_json(const CompletionRecord& record) {
    nlohmann::ordered_json doc;
    doc["kind"] = to_string(record.kind);
    doc["pair_index"] = record.pair_index;
    if (record.chain.scores) {
        doc["score_a"] = record.chain.scores->a();
        doc["score_b"] = record.chain.scores->b();
        doc["verdict"] = to_string(verdict_from_scores(*record.chain.scores).choice);
    } else {
        doc["score_a"] = nullptr;
        doc["score_b"] = nullptr;
        doc["verdict"] = nullptr;
    }
    nlohmann::ordered_json tags;
    for (const auto& [name, state] : record.chain.tag_status) tags[name] = to_string(state);
    doc["tag_status"] = std::move(tags);
    doc["well_formed_tags"] = record.chain.well_formed_count();
    doc["r_format"] = record.reward.r_format;
    doc["r_correct"] = record.reward.r_correct;
    doc["r_cons"] = record.reward.r_cons;
    doc["total"] = record.reward.total;
    doc["zeroed_by_parse_failure"] = record.reward.zeroed_by_parse_failure;
    return doc;
}

nlohmann::ordered_json metrics_to_json(const EvalReport& report) {
    nlohmann::ordered_json doc;
    doc["n_samples"] = report.n_samples;
    doc["n_repeats"] = report.n_repeats;
    doc["n_judged"] = report.n_judged;
    doc["n_failed"] = report.n_failed;
    doc["n_parse_failures"] = report.n_parse_failures;
    doc["n_flip_not_applicable"] = report.n_flip_not_applicable;
    nlohmann::ordered_json per_task = nlohmann::ordered_json::object();
    for (const auto& [task, accuracy] : report.per_task_accuracy) {
        per_task[to_string(task)] = {{"accuracy", accuracy},
                                     {"count", report.per_task_counts.at(task)}};
    }
    doc["per_task"] = std::move(per_task);
    doc["overall_accuracy"] = report.overall_accuracy;
    doc["consistency_rate"] = report.consistency_rate;
    doc["consistency_denominator"] = report.consistency_denominator;
    doc["consistency_rate_all_samples"] = report.consistency_rate_all_samples;
    doc["a_preference_rate"] = report.a_preference_rate;
    doc["verdict_count"] = report.verdict_count;
    return doc;
}

}  // namespace

nlohmann::ordered_json judgment_to_json(const JudgmentRecord& record) {
    nlohmann::ordered_json doc;
    doc["sample_id"] = record.sample_id;
    doc["task"] = to_string(record.task);
    doc["label"] = to_string(record.label);
    doc["mode"] = to_string(record.mode);
    doc["repeat"] = record.repeat;
    doc["flip_applicable"] = record.flip_applicable;
    doc["emulated_continuation"] = record.emulated_continuation;
    doc["original"] = completion_to_json(record.original);
    if (record.flipped) {
        doc["flipped"] = completion_to_json(*record.flipped);
    } else {
        doc["flipped"] = nullptr;
    }
    return doc;
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["kind"] = "eval_report";
    doc["mode"] = report.mode;
    doc["condition"] = report.condition;
    doc["config"] = report.config_snapshot.is_null() ? nlohmann::json::object()
                                                     : report.config_snapshot;
    doc["metrics"] = metrics_to_json(report);
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& record : report.records) records.push_back(judgment_to_json(record));
    doc["records"] = std::move(records);
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const auto& [id, message] : report.failures) {
        failures.push_back({{"sample_id", id}, {"error", message}});
    }
    doc["failures"] = std::move(failures);
    return doc;
}

nlohmann::ordered_json ablation_to_json(const AblationReport& report) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["kind"] = "ablation_report";
    doc["open_ended"] = report_to_json(report.open_ended);
    doc["grounded"] = report_to_json(report.grounded);
    nlohmann::ordered_json deltas = nlohmann::ordered_json::object();
    for (const auto& [task, delta] : report.delta_per_task) deltas[to_string(task)] = delta;
    doc["delta_points_per_task"] = std::move(deltas);
    doc["delta_points_overall"] = report.delta_overall;
    return doc;
}

nlohmann::ordered_json conditions_to_json(const ConditionReport& report) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["kind"] = "condition_report";
    doc["config"] = report.config_snapshot.is_null() ? nlohmann::json::object()
                                                     : report.config_snapshot;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& entry : report.entries) {
        nlohmann::ordered_json item;
        item["condition"] = entry.condition;
        item["consistency_rate"] = entry.consistency_rate;
        item["consistency_denominator"] = entry.consistency_denominator;
        item["accuracy"] = entry.accuracy;
        item["blank_asset_rate"] = entry.blank_asset_rate;
        item["report"] = report_to_json(entry.report);
        entries.push_back(std::move(item));
    }
    doc["conditions"] = std::move(entries);
    return doc;
}

// ---------------------------------------------------------------------------
// CSV / markdown views over the serialized report form
// ---------------------------------------------------------------------------

namespace {

std::string percent(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.1f", value * 100.0);
    return buffer;
}

std::string signed_points(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%+.1f", value);
    return buffer;
}

std::string report_kind(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
        throw_error(ErrorKind::InvalidArgument, "not a report document (missing kind)");
    }
    return doc["kind"].get<std::string>();
}

std::string eval_csv(const nlohmann::json& doc) {
    std::string out =
        "sample_id,task,label,verdict,r_format,r_correct,r_cons,total,flip_applicable\n";
    for (const auto& record : doc.value("records", nlohmann::json::array())) {
        const auto& original = record["original"];
        out += record.value("sample_id", "");
        out += ',';
        out += record.value("task", "");
        out += ',';
        out += record.value("label", "");
        out += ',';
        out += original["verdict"].is_string() ? original["verdict"].get<std::string>() : "";
        out += ',';
        out += json_number(original.value("r_format", 0.0));
        out += ',';
        out += std::to_string(original.value("r_correct", 0));
        out += ',';
        out += std::to_string(original.value("r_cons", 0));
        out += ',';
        out += json_number(original.value("total", 0.0));
        out += ',';
        out += record.value("flip_applicable", false) ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string eval_markdown(const nlohmann::json& doc) {
    const auto& metrics = doc.at("metrics");
    std::ostringstream out;
    out << "## Evaluation report\n\n";
    out << "mode: " << doc.value("mode", "?") << ", condition: " << doc.value("condition", "?")
        << ", samples: " << metrics.value("n_samples", 0) << " (judged "
        << metrics.value("n_judged", 0) << ", failed " << metrics.value("n_failed", 0) << ")\n\n";
    out << "| Subtask | Accuracy (%) | Samples |\n|---|---|---|\n";
    for (const auto& [task, entry] : metrics.at("per_task").items()) {
        out << "| " << task << " | " << percent(entry.value("accuracy", 0.0)) << " | "
            << entry.value("count", 0) << " |\n";
    }
    out << "| **overall** | **" << percent(metrics.value("overall_accuracy", 0.0)) << "** | "
        << metrics.value("n_judged", 0) << " |\n\n";
    out << "consistency rate: " << percent(metrics.value("consistency_rate", 0.0)) << "% over "
        << metrics.value("consistency_denominator", 0) << " flip-applicable samples ("
        << percent(metrics.value("consistency_rate_all_samples", 0.0))
        << "% over all judged)\n\n";
    out << "A-preference rate: " << percent(metrics.value("a_preference_rate", 0.0)) << "% over "
        << metrics.value("verdict_count", 0)
        << " parsed verdicts; parse failures: " << metrics.value("n_parse_failures", 0) << "\n";
    return out.str();
}

std::string ablation_csv(const nlohmann::json& doc) {
    std::string out = "task,open_ended_accuracy,grounded_accuracy,delta_points\n";
    const auto& open_tasks = doc.at("open_ended").at("metrics").at("per_task");
    const auto& grounded_tasks = doc.at("grounded").at("metrics").at("per_task");
    for (const auto& [task, delta] : doc.at("delta_points_per_task").items()) {
        double open_accuracy =
            open_tasks.contains(task) ? open_tasks[task].value("accuracy", 0.0) : 0.0;
        double grounded_accuracy =
            grounded_tasks.contains(task) ? grounded_tasks[task].value("accuracy", 0.0) : 0.0;
        out += task + ',' + json_number(open_accuracy) + ',' + json_number(grounded_accuracy) +
               ',' + json_number(delta.get<double>()) + '\n';
    }
    return out;
}

std::string ablation_markdown(const nlohmann::json& doc) {
    std::ostringstream out;
    out << "## Prompting ablation\n\n";
    out << "| Subtask | Open-ended (%) | Grounded (%) | Delta (pts) |\n|---|---|---|---|\n";
    const auto& open_tasks = doc.at("open_ended").at("metrics").at("per_task");
    const auto& grounded_tasks = doc.at("grounded").at("metrics").at("per_task");
    for (const auto& [task, delta] : doc.at("delta_points_per_task").items()) {
        double open_accuracy =
            open_tasks.contains(task) ? open_tasks[task].value("accuracy", 0.0) : 0.0;
        double grounded_accuracy =
            grounded_tasks.contains(task) ? grounded_tasks[task].value("accuracy", 0.0) : 0.0;
        out << "| " << task << " | " << percent(open_accuracy) << " | "
            << percent(grounded_accuracy) << " | " << signed_points(delta.get<double>())
            << " |\n";
    }
    out << "| **overall** | **"
        << percent(doc.at("open_ended").at("metrics").value("overall_accuracy", 0.0)) << "** | **"
        << percent(doc.at("grounded").at("metrics").value("overall_accuracy", 0.0)) << "** | **"
        << signed_points(doc.value("delta_points_overall", 0.0)) << "** |\n";
    return out.str();
}

std::string conditions_csv(const nlohmann::json& doc) {
    std::string out =
        "condition,consistency_rate,consistency_denominator,accuracy,blank_asset_rate\n";
    for (const auto& entry : doc.at("conditions")) {
        out += entry.value("condition", "") + ',' +
               json_number(entry.value("consistency_rate", 0.0)) + ',' +
               std::to_string(entry.value("consistency_denominator", 0)) + ',' +
               json_number(entry.value("accuracy", 0.0)) + ',' +
               json_number(entry.value("blank_asset_rate", 0.0)) + '\n';
    }
    return out;
}

std::string conditions_markdown(const nlohmann::json& doc) {
    std::ostringstream out;
    out << "## Image-condition probe\n\n";
    out << "| Condition | Consistency (%) | Accuracy (%) | Blank-asset slots |\n|---|---|---|---|\n";
    for (const auto& entry : doc.at("conditions")) {
        out << "| " << entry.value("condition", "") << " | "
            << percent(entry.value("consistency_rate", 0.0)) << " | "
            << percent(entry.value("accuracy", 0.0)) << " | "
            << percent(entry.value("blank_asset_rate", 0.0)) << "% |\n";
    }
    return out.str();
}

}  // namespace

std::string render_report_csv(const nlohmann::json& report_json) {
    std::string kind = report_kind(report_json);
    if (kind == "eval_report") return eval_csv(report_json);
    if (kind == "ablation_report") return ablation_csv(report_json);
    if (kind == "condition_report") return conditions_csv(report_json);
    throw_error(ErrorKind::InvalidArgument, "unknown report kind: " + kind);
}

std::string render_report_markdown(const nlohmann::json& report_json) {
    std::string kind = report_kind(report_json);
    if (kind == "eval_report") return eval_markdown(report_json);
    if (kind == "ablation_report") return ablation_markdown(report_json);
    if (kind == "condition_report") return conditions_markdown(report_json);
    throw_error(ErrorKind::InvalidArgument, "unknown report kind: " + kind);
}

}  // namespace mj
