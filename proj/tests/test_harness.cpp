#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "base64.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "support/synthetic.hpp"

using namespace mj;
namespace mjt = mj::testing;
namespace fs = std::filesystem;

namespace {

DatasetManifest manifest_of(std::vector<PreferenceSample> samples) {
    DatasetManifest manifest;
    manifest.path = "<synthetic>";
    manifest.samples = std::move(samples);
    for (const auto& sample : manifest.samples) {
        manifest.subtask_counts[sample.task] += 1;
        manifest.label_counts[sample.label] += 1;
    }
    return manifest;
}

HarnessOptions offline_options() {
    HarnessOptions options;
    options.gen.temperature = 0.7;
    options.gen.max_tokens = 2048;
    options.flip_enabled = true;
    options.parallelism = 1;
    return options;
}

}  // namespace

TEST_CASE("judge_once with the content oracle earns full reward") {
    auto sample = mjt::make_marked_sample("j1", TaskKind::T2i, Choice::A);
    auto oracle = ScriptedJudge::content_oracle();
    auto record = judge_once(sample, *oracle, offline_options());

    CHECK(record.flip_applicable);
    REQUIRE(record.flipped.has_value());
    CHECK(record.original.reward.r_correct == 1);
    CHECK(record.original.reward.r_cons == 1);
    CHECK(record.original.reward.total == doctest::Approx(2.2).epsilon(1e-9));
    CHECK(record.flipped->reward.r_correct == 1);  // scored against the flipped label
    CHECK(record.flipped->reward.r_cons == 1);
}

TEST_CASE("judge_once with the position-biased judge never earns consistency") {
    for (Choice label : {Choice::A, Choice::B}) {
        auto sample = mjt::make_marked_sample("j2", TaskKind::Editing, label);
        auto biased = ScriptedJudge::position_biased_a();
        auto record = judge_once(sample, *biased, offline_options());
        CHECK(record.flip_applicable);
        CHECK(record.original.reward.r_cons == 0);
        CHECK(record.original.reward.r_correct == (label == Choice::A ? 1 : 0));
    }
}

TEST_CASE("judge_once on a malformed replay fixture zeroes the reward") {
    fs::path dir = fs::temp_directory_path() / "mj_malformed_replay";
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "j3.original.txt");
        out << "I prefer the first response, obviously.";  // no tags, no scores
    }
    auto judge = ScriptedJudge::replay(dir.string());
    auto sample = mjt::make_marked_sample("j3", TaskKind::T2i, Choice::A);
    auto record = judge_once(sample, *judge, offline_options());
    CHECK(!record.flip_applicable);
    CHECK(!record.flipped.has_value());
    CHECK(record.original.reward.total == 0.0);
    CHECK(record.original.reward.zeroed_by_parse_failure);
    fs::remove_all(dir);
}

TEST_CASE("evaluate with the oracle: accuracy and consistency 1.0") {
    auto manifest = manifest_of(mjt::balanced_samples(100));
    auto oracle = ScriptedJudge::content_oracle();
    HarnessOptions options = offline_options();
    options.parallelism = 8;
    auto report = evaluate(manifest, *oracle, options);

    CHECK(report.n_judged == 100);
    CHECK(report.overall_accuracy == doctest::Approx(1.0));
    CHECK(report.consistency_rate == doctest::Approx(1.0));
    CHECK(report.consistency_denominator == 100);
    CHECK(report.a_preference_rate == doctest::Approx(0.5));
    for (const auto& [task, accuracy] : report.per_task_accuracy) {
        CHECK(accuracy == doctest::Approx(1.0));
    }
}

TEST_CASE("evaluate with the biased judge: chance accuracy, zero consistency, all-A verdicts") {
    auto manifest = manifest_of(mjt::balanced_samples(100));
    auto biased = ScriptedJudge::position_biased_a();
    auto report = evaluate(manifest, *biased, offline_options());

    CHECK(report.overall_accuracy == doctest::Approx(0.5));  // labels are balanced
    CHECK(report.consistency_rate == doctest::Approx(0.0));
    CHECK(report.a_preference_rate == doctest::Approx(1.0));
}

TEST_CASE("evaluate with a random judge lands near chance") {
    auto manifest = manifest_of(mjt::balanced_samples(100));
    auto random_judge = ScriptedJudge::random(2024);
    auto report = evaluate(manifest, *random_judge, offline_options());
    // 0.5 +/- 0.15 covers >99.7% of binomial mass at n=100.
    CHECK(report.overall_accuracy > 0.35);
    CHECK(report.overall_accuracy < 0.65);
}

TEST_CASE("evaluate aggregation is deterministic across parallelism") {
    auto manifest = manifest_of(mjt::balanced_samples(40));
    auto oracle = ScriptedJudge::content_oracle();

    HarnessOptions serial = offline_options();
    serial.parallelism = 1;
    HarnessOptions wide = offline_options();
    wide.parallelism = 16;

    auto a = report_to_json(evaluate(manifest, *oracle, serial)).dump();
    auto b = report_to_json(evaluate(manifest, *oracle, wide)).dump();
    CHECK(a == b);
}

TEST_CASE("grpo_sample_run") {
    GrpoConfig grpo;
    grpo.group_size_n = 2;
    grpo.advantage_epsilon = 0.01;
    HarnessOptions options = offline_options();

    SUBCASE("content oracle: constant full-reward group, nothing retained, not skipped") {
        auto sample = mjt::make_marked_sample("g1", TaskKind::T2i, Choice::A);
        auto oracle = ScriptedJudge::content_oracle();
        auto run = grpo_sample_run(sample, *oracle, grpo, options);
        CHECK(!run.incomplete);
        CHECK(!run.group.skipped);
        REQUIRE(run.group.records.size() == 4);
        for (const auto& record : run.group.records) {
            CHECK(record.reward.total == doctest::Approx(2.2).epsilon(1e-9));
        }
        for (double advantage : run.group.advantages) {
            CHECK(advantage == doctest::Approx(0.0));
        }
        for (bool retained : run.group.retained_mask) CHECK(!retained);
    }

    SUBCASE("biased judge on a B-labeled sample: all originals wrong -> skipped") {
        auto sample = mjt::make_marked_sample("g2", TaskKind::T2i, Choice::B);
        auto biased = ScriptedJudge::position_biased_a();
        auto run = grpo_sample_run(sample, *biased, grpo, options);
        CHECK(!run.incomplete);
        CHECK(run.group.skipped);
        for (double advantage : run.group.advantages) CHECK(advantage == 0.0);
    }

    SUBCASE("missing fixture marks the sample incomplete") {
        auto sample = mjt::make_marked_sample("g3", TaskKind::T2i, Choice::A);
        auto replay = ScriptedJudge::replay("/nonexistent/fixtures");
        auto run = grpo_sample_run(sample, *replay, grpo, options);
        CHECK(run.incomplete);
        CHECK(!run.failure.empty());
    }
}

TEST_CASE("grpo export lines match the group") {
    GrpoConfig grpo;
    grpo.group_size_n = 3;
    auto sample = mjt::make_marked_sample("g4", TaskKind::Reasoning, Choice::A);
    auto oracle = ScriptedJudge::content_oracle();
    auto run = grpo_sample_run(sample, *oracle, grpo, offline_options());
    std::string jsonl = export_group_jsonl(run.sample_id, run.group);
    CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 6);  // 2N lines
}

TEST_CASE("ablation experiment is flat for the mode-agnostic oracle") {
    auto manifest = manifest_of(mjt::balanced_samples(24));
    auto oracle = ScriptedJudge::content_oracle();
    auto report = ablation_experiment(manifest, *oracle, offline_options());
    CHECK(report.open_ended.overall_accuracy == doctest::Approx(1.0));
    CHECK(report.grounded.overall_accuracy == doctest::Approx(1.0));
    CHECK(report.delta_overall == doctest::Approx(0.0));
    for (const auto& [task, delta] : report.delta_per_task) {
        CHECK(delta == doctest::Approx(0.0));
    }
    // Flip stays off in both runs.
    CHECK(report.grounded.consistency_denominator == 0);
}

TEST_CASE("condition experiment reports all three conditions") {
    auto samples = mjt::balanced_samples(12);
    // Give every sample one inline image so shuffled/blank apply.
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i].response_a.push_back(ContentPart::make_image(ImageRef::from_base64(
            base64_encode(std::vector<unsigned char>{static_cast<unsigned char>(i + 1)}),
            "image/png")));
    }
    auto manifest = manifest_of(samples);
    auto oracle = ScriptedJudge::content_oracle();
    auto report = condition_experiment(manifest, *oracle, offline_options(), 11);

    REQUIRE(report.entries.size() == 3);
    CHECK(report.entries[0].condition == "real");
    CHECK(report.entries[1].condition == "shuffled(seed=11)");
    CHECK(report.entries[2].condition == "blank");
    // The oracle reads planted text markers, so the real condition stays
    // perfectly consistent.
    CHECK(report.entries[0].consistency_rate == doctest::Approx(1.0));
    CHECK(report.entries[0].blank_asset_rate == doctest::Approx(0.0));
    CHECK(report.entries[2].blank_asset_rate == doctest::Approx(1.0));
}

TEST_CASE("strict policy also demands original correctness") {
    auto manifest = manifest_of(mjt::balanced_samples(20));
    HarnessOptions options = offline_options();
    options.policy = ConsistencyPolicy::Strict;

    // Content oracle: original always correct and the flip inverts -> 1.0
    // under strict as well.
    auto oracle = ScriptedJudge::content_oracle();
    CHECK(evaluate(manifest, *oracle, options).consistency_rate == doctest::Approx(1.0));

    // Biased judge: never inverts -> 0.0 under both policies.
    auto biased = ScriptedJudge::position_biased_a();
    CHECK(evaluate(manifest, *biased, options).consistency_rate == doctest::Approx(0.0));
}

TEST_CASE("overall accuracy equals the sample-weighted mean of per-task accuracies") {
    // Uneven task mix: biased judge gives per-task accuracies that differ.
    std::vector<PreferenceSample> samples;
    for (int i = 0; i < 6; ++i) {
        samples.push_back(mjt::make_marked_sample("w_t2i_" + std::to_string(i), TaskKind::T2i,
                                                  i < 4 ? Choice::A : Choice::B));
    }
    for (int i = 0; i < 3; ++i) {
        samples.push_back(mjt::make_marked_sample("w_edit_" + std::to_string(i),
                                                  TaskKind::Editing, Choice::B));
    }
    auto manifest = manifest_of(samples);
    auto biased = ScriptedJudge::position_biased_a();
    auto report = evaluate(manifest, *biased, offline_options());

    double weighted = 0.0;
    int count = 0;
    for (const auto& [task, accuracy] : report.per_task_accuracy) {
        weighted += accuracy * report.per_task_counts.at(task);
        count += report.per_task_counts.at(task);
    }
    CHECK(report.per_task_accuracy.at(TaskKind::T2i) == doctest::Approx(4.0 / 6.0));
    CHECK(report.per_task_accuracy.at(TaskKind::Editing) == doctest::Approx(0.0));
    CHECK(report.overall_accuracy == doctest::Approx(weighted / count));
}

TEST_CASE("repeats multiply the judged records and stay deterministic") {
    auto manifest = manifest_of(mjt::balanced_samples(8));
    auto random_judge = ScriptedJudge::random(77);
    HarnessOptions options = offline_options();
    options.repeats = 3;
    options.gen.seed = 5;
    options.parallelism = 4;

    auto report = evaluate(manifest, *random_judge, options);
    CHECK(report.n_samples == 8);
    CHECK(report.n_repeats == 3);
    CHECK(report.n_judged == 24);

    auto again = evaluate(manifest, *random_judge, options);
    CHECK(report_to_json(report).dump() == report_to_json(again).dump());

    // Different repeats of the same sample see different seeds, so the
    // random judge does not simply repeat itself 24 times in lockstep.
    bool any_difference = false;
    for (std::size_t i = 0; i + 1 < report.records.size(); ++i) {
        const auto& a = report.records[i];
        const auto& b = report.records[i + 1];
        if (a.sample_id == b.sample_id && a.original.chain.scores && b.original.chain.scores &&
            !(*a.original.chain.scores == *b.original.chain.scores)) {
            any_difference = true;
        }
    }
    CHECK(any_difference);
}

TEST_CASE("evaluate aborts when most samples fail") {
    auto manifest = manifest_of(mjt::balanced_samples(4));
    auto replay = ScriptedJudge::replay("/nonexistent/fixtures");
    CHECK_THROWS_AS(evaluate(manifest, *replay, offline_options()), Error);
}

TEST_CASE("failures are isolated when a minority of samples fail") {
    auto samples = mjt::balanced_samples(4);
    fs::path dir = fs::temp_directory_path() / "mj_partial_replay";
    fs::create_directories(dir);
    // Fixtures for all but one sample: a full transcript for each original
    // plus a continuation for each flip.
    auto oracle = ScriptedJudge::content_oracle();
    HarnessOptions options = offline_options();
    for (std::size_t i = 0; i < samples.size() - 1; ++i) {
        auto messages = build_judge_prompt(samples[i], PromptMode::Grounded);
        std::string original = oracle->generate(messages, options.gen, {});
        {
            std::ofstream out(dir / (samples[i].id + ".original.txt"), std::ios::binary);
            out << original;
        }
        auto artifacts = make_flipped_artifacts(samples[i], parse_transcript(original));
        auto continuation_messages =
            build_continuation_prompt(artifacts.flipped_sample, artifacts.rewritten_prefix);
        GenerationConfig continuation_gen = options.gen;
        continuation_gen.temperature = 0.0;
        auto continuation =
            oracle->generate_full(continuation_messages, continuation_gen, {}).text;
        {
            std::ofstream out(dir / (samples[i].id + ".flipped.txt"), std::ios::binary);
            out << continuation;
        }
    }

    auto replay = ScriptedJudge::replay(dir.string());
    auto report = evaluate(manifest_of(samples), *replay, options);
    CHECK(report.n_failed == 1);
    CHECK(report.n_judged == 3);
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].first == samples.back().id);
    CHECK(report.overall_accuracy == doctest::Approx(1.0));
    fs::remove_all(dir);
}
