#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "transcript.hpp"

namespace mj {

// ---------------------------------------------------------------------------
// Composite reward
// ---------------------------------------------------------------------------

struct RewardBreakdown {
    double r_format = 0.0;  // [0, 0.2]
    int r_correct = 0;      // {0, 1}
    int r_cons = 0;         // {0, 1}
    double total = 0.0;     // [0, 2.2]; forced to 0 when scores are unparseable
    bool zeroed_by_parse_failure = false;
};

/// 1 iff the verdict implied by the scores matches the ground-truth label.
int correctness_reward(const ScorePair& scores, Choice label);

/// R = R_format + R_correct + R_cons. A transcript without a valid boxed
/// score pair earns total 0 no matter how many tags were well-formed
/// (r_format is still reported for diagnostics).
RewardBreakdown composite_reward(const ParsedChain& chain, Choice label, int cons_bit);

// ---------------------------------------------------------------------------
// Group-relative advantages
// ---------------------------------------------------------------------------

struct CompletionRecord {
    enum class Kind { Original, Flipped };

    Kind kind = Kind::Original;
    ParsedChain chain;
    RewardBreakdown reward;
    int pair_index = 0;  // links an original to its flipped copy
};

const char* to_string(CompletionRecord::Kind kind);

/// 2N pooled trajectories for one training prompt: N originals interleaved
/// with their flipped continuations, plus advantages and the retention mask.
struct CompletionGroup {
    std::vector<CompletionRecord> records;  // [orig_0, flip_0, orig_1, flip_1, ...]
    std::vector<double> advantages;
    std::vector<bool> retained_mask;  // |advantage| > epsilon
    bool skipped = false;             // every original had r_correct == 0
};

struct GroupAdvantages {
    std::vector<double> advantages;
    std::vector<bool> retained;
};

/// advantage_i = reward_i - mean(rewards); retained iff |advantage| > epsilon
/// (strict). Throws Contract on an empty list.
GroupAdvantages group_advantages(const std::vector<double>& rewards, double epsilon);

/// Builds the pooled group from (original, flipped) pairs. Pair indices must
/// be dense in [0, N). Groups whose originals are all wrong are skipped:
/// advantages zero, nothing retained.
CompletionGroup build_group(
    const std::vector<std::pair<CompletionRecord, CompletionRecord>>& pairs,
    const GrpoConfig& config);

/// Line-delimited export for downstream trainers, one JSON object per record
/// with fields {sample_id, pair_index, kind, r_format, r_correct, r_cons,
/// total, advantage, retained}.
std::string export_group_jsonl(const std::string& sample_id, const CompletionGroup& group);

}  // namespace mj
