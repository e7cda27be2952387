#include <doctest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "rewards.hpp"
#include "rng.hpp"
#include "support/synthetic.hpp"

using namespace mj;
namespace mjt = mj::testing;

namespace {

ChainSections plain_sections() {
    ChainSections s;
    s.obs_prompt = "prompt";
    s.obs_a = "Response A obs";
    s.obs_b = "Response B obs";
    s.claims_a = "Response A claims";
    s.claims_b = "Response B claims";
    s.verify_a = "Response A verified";
    s.verify_b = "Response B verified";
    s.evaluation = "weighing";
    return s;
}

ParsedChain chain_with_scores(int a, int b) {
    return parse_transcript(render_transcript(plain_sections(), a, b));
}

CompletionRecord record_of(CompletionRecord::Kind kind, int pair_index, double total,
                           int r_correct) {
    CompletionRecord record;
    record.kind = kind;
    record.pair_index = pair_index;
    record.reward.total = total;
    record.reward.r_correct = r_correct;
    return record;
}

}  // namespace

TEST_CASE("correctness_reward compares verdict to label") {
    CHECK(correctness_reward(*ScorePair::make(8, 5), Choice::A) == 1);
    CHECK(correctness_reward(*ScorePair::make(8, 5), Choice::B) == 0);
    CHECK(correctness_reward(*ScorePair::make(1, 10), Choice::B) == 1);
}

TEST_CASE("composite reward") {
    SUBCASE("fully formed, correct, consistent = 2.2") {
        auto reward = composite_reward(chain_with_scores(8, 3), Choice::A, 1);
        CHECK(reward.total == doctest::Approx(2.2).epsilon(1e-9));
        CHECK(reward.r_format == doctest::Approx(0.2).epsilon(1e-9));
        CHECK(reward.r_correct == 1);
        CHECK(reward.r_cons == 1);
        CHECK(!reward.zeroed_by_parse_failure);
    }
    SUBCASE("no boxed scores zeroes the total regardless of tags") {
        std::string raw = render_transcript(plain_sections(), 8, 3);
        auto at = raw.find("\\boxed");
        raw.replace(at, 6, "scores");
        auto reward = composite_reward(parse_transcript(raw), Choice::A, 1);
        CHECK(reward.total == 0.0);
        CHECK(reward.zeroed_by_parse_failure);
        CHECK(reward.r_correct == 0);
        CHECK(reward.r_cons == 0);
    }
    SUBCASE("fully formed but wrong and inconsistent = format only") {
        auto reward = composite_reward(chain_with_scores(8, 3), Choice::B, 0);
        CHECK(reward.total == doctest::Approx(0.2).epsilon(1e-9));
        CHECK(reward.r_correct == 0);
    }
}

TEST_CASE("group_advantages examples") {
    SUBCASE("constant group filters everything") {
        auto result = group_advantages({1.2, 1.2, 1.2, 1.2}, 0.01);
        for (double advantage : result.advantages) CHECK(advantage == 0.0);
        for (bool retained : result.retained) CHECK(!retained);
    }
    SUBCASE("two-point group") {
        auto result = group_advantages({2.0, 0.0}, 0.01);
        CHECK(result.advantages[0] == doctest::Approx(1.0));
        CHECK(result.advantages[1] == doctest::Approx(-1.0));
        CHECK(result.retained[0]);
        CHECK(result.retained[1]);
    }
    SUBCASE("near-constant group is fully filtered at epsilon 0.01") {
        auto result = group_advantages({1.0, 1.0, 1.0, 1.0000001}, 0.01);
        for (bool retained : result.retained) CHECK(!retained);
    }
    SUBCASE("empty list is a contract violation") {
        CHECK_THROWS_AS(group_advantages({}, 0.01), Error);
    }
    SUBCASE("epsilon comparison is strict") {
        auto result = group_advantages({1.0, 0.0}, 0.5);
        CHECK(result.advantages[0] == doctest::Approx(0.5));
        CHECK(!result.retained[0]);  // |0.5| > 0.5 is false
    }
}

TEST_CASE("advantages sum to zero and are shift-invariant") {
    SeededRng rng(2025);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng.next_below(64);
        std::vector<double> rewards;
        rewards.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            rewards.push_back(static_cast<double>(rng.next_below(23)) / 10.0);
        }
        auto result = group_advantages(rewards, 0.01);
        double sum = 0.0;
        for (double advantage : result.advantages) sum += advantage;
        CHECK(std::abs(sum) <= static_cast<double>(n) * 1e-12);

        // Adding a constant to every reward leaves advantages unchanged.
        std::vector<double> shifted = rewards;
        for (double& reward : shifted) reward += 3.7;
        auto shifted_result = group_advantages(shifted, 0.01);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(shifted_result.advantages[i] ==
                  doctest::Approx(result.advantages[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("build_group") {
    GrpoConfig config;
    config.advantage_epsilon = 0.01;

    SUBCASE("all originals wrong -> skipped") {
        std::vector<std::pair<CompletionRecord, CompletionRecord>> pairs;
        for (int i = 0; i < 4; ++i) {
            pairs.emplace_back(record_of(CompletionRecord::Kind::Original, i, 0.2, 0),
                               record_of(CompletionRecord::Kind::Flipped, i, 0.2, 0));
        }
        auto group = build_group(pairs, config);
        CHECK(group.skipped);
        CHECK(group.records.size() == 8);
        for (double advantage : group.advantages) CHECK(advantage == 0.0);
        for (bool retained : group.retained_mask) CHECK(!retained);
    }

    SUBCASE("mixed rewards produce mean-centered advantages") {
        std::vector<std::pair<CompletionRecord, CompletionRecord>> pairs;
        pairs.emplace_back(record_of(CompletionRecord::Kind::Original, 0, 2.2, 1),
                           record_of(CompletionRecord::Kind::Flipped, 0, 2.2, 1));
        pairs.emplace_back(record_of(CompletionRecord::Kind::Original, 1, 0.2, 0),
                           record_of(CompletionRecord::Kind::Flipped, 1, 0.2, 0));
        auto group = build_group(pairs, config);
        CHECK(!group.skipped);
        REQUIRE(group.advantages.size() == 4);
        CHECK(group.advantages[0] == doctest::Approx(1.0));
        CHECK(group.advantages[1] == doctest::Approx(1.0));
        CHECK(group.advantages[2] == doctest::Approx(-1.0));
        CHECK(group.advantages[3] == doctest::Approx(-1.0));
    }

    SUBCASE("single constant pair: nothing retained but not skipped") {
        std::vector<std::pair<CompletionRecord, CompletionRecord>> pairs;
        pairs.emplace_back(record_of(CompletionRecord::Kind::Original, 0, 1.2, 1),
                           record_of(CompletionRecord::Kind::Flipped, 0, 1.2, 1));
        auto group = build_group(pairs, config);
        CHECK(!group.skipped);
        CHECK(group.advantages == std::vector<double>{0.0, 0.0});
        CHECK(group.retained_mask == std::vector<bool>{false, false});
    }

    SUBCASE("contract violations") {
        std::vector<std::pair<CompletionRecord, CompletionRecord>> duplicate;
        duplicate.emplace_back(record_of(CompletionRecord::Kind::Original, 0, 1.0, 1),
                               record_of(CompletionRecord::Kind::Flipped, 0, 1.0, 1));
        duplicate.emplace_back(record_of(CompletionRecord::Kind::Original, 0, 1.0, 1),
                               record_of(CompletionRecord::Kind::Flipped, 0, 1.0, 1));
        CHECK_THROWS_AS(build_group(duplicate, config), Error);

        std::vector<std::pair<CompletionRecord, CompletionRecord>> sparse;
        sparse.emplace_back(record_of(CompletionRecord::Kind::Original, 1, 1.0, 1),
                            record_of(CompletionRecord::Kind::Flipped, 1, 1.0, 1));
        CHECK_THROWS_AS(build_group(sparse, config), Error);

        std::vector<std::pair<CompletionRecord, CompletionRecord>> swapped;
        swapped.emplace_back(record_of(CompletionRecord::Kind::Flipped, 0, 1.0, 1),
                             record_of(CompletionRecord::Kind::Original, 0, 1.0, 1));
        CHECK_THROWS_AS(build_group(swapped, config), Error);
    }
}

TEST_CASE("group export emits one record per completion with the schema fields") {
    GrpoConfig config;
    std::vector<std::pair<CompletionRecord, CompletionRecord>> pairs;
    pairs.emplace_back(record_of(CompletionRecord::Kind::Original, 0, 2.2, 1),
                       record_of(CompletionRecord::Kind::Flipped, 0, 0.2, 0));
    auto group = build_group(pairs, config);
    std::string jsonl = export_group_jsonl("sample-7", group);

    std::istringstream lines(jsonl);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        auto doc = nlohmann::json::parse(line);
        for (const char* key : {"sample_id", "pair_index", "kind", "r_format", "r_correct",
                                "r_cons", "total", "advantage", "retained"}) {
            CAPTURE(key);
            CHECK(doc.contains(key));
        }
        CHECK(doc["sample_id"] == "sample-7");
        ++count;
    }
    CHECK(count == 2);
}
