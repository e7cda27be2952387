#include "rewards.hpp"

#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace mj {

int correctness_reward(const ScorePair& scores, Choice label) {
    return verdict_from_scores(scores).choice == label ? 1 : 0;
}

RewardBreakdown composite_reward(const ParsedChain& chain, Choice label, int cons_bit) {
    RewardBreakdown reward;
    reward.r_format = format_reward(chain).value;
    if (!chain.scores) {
        reward.zeroed_by_parse_failure = true;
        reward.total = 0.0;
        return reward;
    }
    reward.r_correct = correctness_reward(*chain.scores, label);
    reward.r_cons = cons_bit ? 1 : 0;
    reward.total = reward.r_format + reward.r_correct + reward.r_cons;
    return reward;
}

const char* to_string(CompletionRecord::Kind kind) {
    return kind == CompletionRecord::Kind::Original ? "original" : "flipped";
}

GroupAdvantages group_advantages(const std::vector<double>& rewards, double epsilon) {
    if (rewards.empty()) {
        throw_error(ErrorKind::Contract, "group_advantages requires a non-empty reward list");
    }
    double mean =
        std::accumulate(rewards.begin(), rewards.end(), 0.0) / static_cast<double>(rewards.size());
    GroupAdvantages result;
    result.advantages.reserve(rewards.size());
    result.retained.reserve(rewards.size());
    for (double reward : rewards) {
        double advantage = reward - mean;
        result.advantages.push_back(advantage);
        result.retained.push_back(std::abs(advantage) > epsilon);
    }
    return result;
}

CompletionGroup build_group(
    const std::vector<std::pair<CompletionRecord, CompletionRecord>>& pairs,
    const GrpoConfig& config) {
    if (pairs.empty()) throw_error(ErrorKind::Contract, "build_group requires at least one pair");
    const int n = static_cast<int>(pairs.size());

    std::vector<bool> seen(n, false);
    for (const auto& [original, flipped] : pairs) {
        if (original.kind != CompletionRecord::Kind::Original ||
            flipped.kind != CompletionRecord::Kind::Flipped) {
            throw_error(ErrorKind::Contract, "each pair must be (original, flipped)");
        }
        if (original.pair_index != flipped.pair_index) {
            throw_error(ErrorKind::Contract, "pair members carry different pair_index values");
        }
        int index = original.pair_index;
        if (index < 0 || index >= n || seen[index]) {
            throw_error(ErrorKind::Contract, "pair_index values must be distinct and dense");
        }
        seen[index] = true;
    }

    CompletionGroup group;
    group.records.reserve(2 * pairs.size());
    for (const auto& [original, flipped] : pairs) {
        group.records.push_back(original);
        group.records.push_back(flipped);
    }

    // Skip rule looks at originals only: a sample where every original is
    // wrong must not feed format-only signal into training.
    group.skipped = true;
    for (const auto& [original, flipped] : pairs) {
        if (original.reward.r_correct != 0) {
            group.skipped = false;
            break;
        }
    }

    if (group.skipped) {
        group.advantages.assign(group.records.size(), 0.0);
        group.retained_mask.assign(group.records.size(), false);
        return group;
    }

    std::vector<double> rewards;
    rewards.reserve(group.records.size());
    for (const auto& record : group.records) rewards.push_back(record.reward.total);
    auto result = group_advantages(rewards, config.advantage_epsilon);
    group.advantages = std::move(result.advantages);
    group.retained_mask = std::move(result.retained);
    return group;
}

std::string export_group_jsonl(const std::string& sample_id, const CompletionGroup& group) {
    std::string out;
    for (std::size_t i = 0; i < group.records.size(); ++i) {
        const auto& record = group.records[i];
        nlohmann::ordered_json line;
        line["sample_id"] = sample_id;
        line["pair_index"] = record.pair_index;
        line["kind"] = to_string(record.kind);
        line["r_format"] = record.reward.r_format;
        line["r_correct"] = record.reward.r_correct;
        line["r_cons"] = record.reward.r_cons;
        line["total"] = record.reward.total;
        line["advantage"] = group.advantages[i];
        line["retained"] = static_cast<bool>(group.retained_mask[i]);
        out += line.dump();
        out += "\n";
    }
    return out;
}

}  // namespace mj
