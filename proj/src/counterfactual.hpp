#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "transcript.hpp"

namespace mj {

// ---------------------------------------------------------------------------
// Reference lexicon
// ---------------------------------------------------------------------------

/// One swap pair. Occurrences of `a` become `b` and vice versa, exchanged
/// simultaneously so text mentioning both sides never double-substitutes.
struct LexiconPair {
    std::string a;
    std::string b;
};

using ReferenceLexicon = std::vector<LexiconPair>;

/// {"Response A"<->"Response B", "response A"<->"response B",
///  "RESPONSE A"<->"RESPONSE B", "R_A"<->"R_B", "Image A"<->"Image B"}.
/// Phrasings outside the lexicon ("the first response") pass through
/// unchanged; that is a documented limitation.
const ReferenceLexicon& default_lexicon();

/// Ordered pair list from a JSON file: [["Response A", "Response B"], ...].
ReferenceLexicon load_lexicon_file(const std::string& path);

/// Simultaneous swap of every lexicon token (longest match at each position
/// wins). Involutive for lexicons whose tokens are disjoint from each other's
/// replacements; text without lexicon tokens is returned byte-identical.
std::string swap_references(std::string_view text,
                            const ReferenceLexicon& lexicon = default_lexicon());

// ---------------------------------------------------------------------------
// Flip transformation
// ---------------------------------------------------------------------------

/// Swaps response_a/response_b and flips the label; id, task and prompt are
/// untouched. Involutive.
PreferenceSample flip_sample(const PreferenceSample& sample);

/// Rewrites the reasoning prefix of a parsed transcript for the flipped
/// sample: obs/claims/verification bodies change sides, A/B references
/// inside the exchanged bodies are swapped via the lexicon, the prompt
/// observation stays untouched, and the output ends immediately after the
/// consistency_verification close tag. Throws Contract ("flip not
/// applicable") unless all nine prefix tags are well-formed.
std::string rewrite_prefix(const ParsedChain& chain,
                           const ReferenceLexicon& lexicon = default_lexicon());

struct FlippedArtifacts {
    PreferenceSample flipped_sample;
    std::string rewritten_prefix;
};

FlippedArtifacts make_flipped_artifacts(const PreferenceSample& sample, const ParsedChain& chain,
                                        const ReferenceLexicon& lexicon = default_lexicon());

// ---------------------------------------------------------------------------
// Inversion check
// ---------------------------------------------------------------------------

/// Consistency bit for a judged pair.
///   inversion: 1 iff the flipped verdict is the flip of the original one.
///   strict:    1 iff the original verdict matches the label AND the flipped
///              verdict matches the flipped label.
/// `label` is the original (unflipped) ground truth.
int check_inversion(const Verdict& original_verdict, const Verdict& flipped_verdict,
                    Choice label, ConsistencyPolicy policy);

}  // namespace mj
