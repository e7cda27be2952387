#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "core.hpp"

namespace mj {

// ---------------------------------------------------------------------------
// Judge output grammar
// ---------------------------------------------------------------------------
//
// A judge transcript carries eleven tags: five standalone sections plus two
// parent sections that each wrap two nested sub-sections. Canonical order:

inline constexpr std::array<const char*, 11> kTagNames = {
    "prompt_img_understanding",
    "response_a_img_understanding",
    "response_b_img_understanding",
    "response_claims",            // parent of the two *_claims tags
    "response_a_claims",
    "response_b_claims",
    "consistency_verification",   // parent of the two *_verification tags
    "response_a_verification",
    "response_b_verification",
    "evaluate_criteria",
    "scores",
};

inline constexpr int kTagCount = 11;
inline constexpr double kFormatRewardCap = 0.2;

// Number of leading tags that form the reasoning prefix (everything up to and
// including the consistency_verification subtree).
inline constexpr int kPrefixTagCount = 9;

enum class TagState { WellFormed, Malformed, Missing };

const char* to_string(TagState state);

/// Structured decomposition of one judge transcript: the observation, claim,
/// verification and evaluation section bodies plus the extracted score pair.
/// Section bodies are verbatim (including any surrounding whitespace the
/// model emitted inside the tags).
struct ParsedChain {
    std::string obs_prompt;  // prompt_img_understanding body
    std::string obs_a;       // response_a_img_understanding body
    std::string obs_b;       // response_b_img_understanding body
    std::string claims_a;
    std::string claims_b;
    std::string verify_a;
    std::string verify_b;
    std::string evaluation;
    std::string scores_raw;  // scores section body, when its span is resolvable

    std::optional<ScorePair> scores;

    // Exactly kTagCount entries, one per tag name.
    std::map<std::string, TagState> tag_status;

    bool tag_well_formed(std::string_view name) const;
    int well_formed_count() const;

    /// All nine tags before evaluate_criteria are well-formed, which is the
    /// precondition for the counterfactual flip.
    bool prefix_well_formed() const;
};

struct FormatScore {
    int well_formed_count = 0;  // in [0, 11]
    double value = 0.0;         // well_formed_count * 0.2/11, in [0, 0.2]
    bool score_parse_ok = false;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Total over arbitrary input; never throws. A tag is well-formed iff its
/// opening and closing tags each occur exactly once, open before close, the
/// tags appear in canonical order relative to the other resolvable tags, and
/// nested tags sit inside their parent's span. The boxed score pair is
/// searched only inside the scores span when that tag is well-formed, and in
/// the whole text otherwise.
ParsedChain parse_transcript(std::string_view raw);

/// Last \boxed{a, b} with two comma-separated integers wins; whitespace
/// inside the braces is ignored. Out-of-range or tied scores yield nullopt.
std::optional<ScorePair> extract_scores(std::string_view text);

/// 0.2/11 per well-formed tag.
FormatScore format_reward(const ParsedChain& chain);

// ---------------------------------------------------------------------------
// Canonical rendering
// ---------------------------------------------------------------------------

/// Bare section contents used to render a synthetic transcript (scripted
/// judges, fixtures). render_transcript wraps each content in newlines and
/// the canonical tag layout, so parse_transcript round-trips body bytes.
struct ChainSections {
    std::string obs_prompt;
    std::string obs_a;
    std::string obs_b;
    std::string claims_a;
    std::string claims_b;
    std::string verify_a;
    std::string verify_b;
    std::string evaluation;
};

std::string render_transcript(const ChainSections& sections, int score_a, int score_b);

/// The evaluate_criteria + scores blocks alone, prefixed with the block
/// separator: exactly what follows a reasoning prefix in a full transcript.
std::string render_continuation(const std::string& evaluation, int score_a, int score_b);

/// Serializes the nine prefix tags of a parsed chain back to canonical text,
/// ending immediately after the consistency_verification closing tag. Bodies
/// are emitted verbatim. Requires prefix_well_formed().
std::string serialize_prefix(const ParsedChain& chain);

}  // namespace mj
