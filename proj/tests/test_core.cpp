#include <doctest.h>

#include "core.hpp"

using namespace mj;

TEST_CASE("verdict_from_scores follows the sign of the difference") {
    CHECK(verdict_from_scores(*ScorePair::make(8, 5)).choice == Choice::A);
    CHECK(verdict_from_scores(*ScorePair::make(3, 9)).choice == Choice::B);
    CHECK(verdict_from_scores(*ScorePair::make(10, 1)).choice == Choice::A);
}

TEST_CASE("ScorePair rejects out-of-range and tied inputs") {
    // Every integer pair in [-5, 15]^2: valid iff both in [1,10] and distinct.
    for (int a = -5; a <= 15; ++a) {
        for (int b = -5; b <= 15; ++b) {
            bool expect_valid = a >= 1 && a <= 10 && b >= 1 && b <= 10 && a != b;
            auto pair = ScorePair::make(a, b);
            CAPTURE(a);
            CAPTURE(b);
            CHECK(pair.has_value() == expect_valid);
            if (pair) {
                CHECK(pair->a() == a);
                CHECK(pair->b() == b);
            }
        }
    }
}

TEST_CASE("verdict is antisymmetric under argument swap") {
    for (int a = 1; a <= 10; ++a) {
        for (int b = 1; b <= 10; ++b) {
            if (a == b) continue;
            auto forward = verdict_from_scores(*ScorePair::make(a, b));
            auto reversed = verdict_from_scores(*ScorePair::make(b, a));
            CHECK(forward.choice == flip_label(reversed.choice));
        }
    }
}

TEST_CASE("flip_label is an involution") {
    CHECK(flip_label(Choice::A) == Choice::B);
    CHECK(flip_label(Choice::B) == Choice::A);
    CHECK(flip_label(flip_label(Choice::A)) == Choice::A);
    CHECK(flip_label(flip_label(Choice::B)) == Choice::B);
}

TEST_CASE("enum string round trips") {
    for (TaskKind task : all_task_kinds()) {
        CHECK(task_from_string(to_string(task)) == task);
    }
    CHECK(!task_from_string("poetry").has_value());
    CHECK(choice_from_string("A") == Choice::A);
    CHECK(!choice_from_string("C").has_value());
    CHECK(consistency_policy_from_string("strict") == ConsistencyPolicy::Strict);
    CHECK(!consistency_policy_from_string("lenient").has_value());
}

TEST_CASE("config validity bounds") {
    GenerationConfig gen;
    CHECK(gen.valid());
    gen.temperature = -0.5;
    CHECK(!gen.valid());
    gen.temperature = 0.0;
    gen.max_tokens = 0;
    CHECK(!gen.valid());

    GrpoConfig grpo;
    CHECK(grpo.valid());
    grpo.group_size_n = 0;
    CHECK(!grpo.valid());
    grpo.group_size_n = 1;
    grpo.advantage_epsilon = -1.0;
    CHECK(!grpo.valid());
}
