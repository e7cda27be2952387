#pragma once

// Shared generators and independent oracles for the test suites.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core.hpp"
#include "counterfactual.hpp"
#include "rng.hpp"
#include "transcript.hpp"

namespace mj::testing {

/// Synthetic preference sample whose better response (per `label`) carries
/// the content-oracle marker.
PreferenceSample make_marked_sample(const std::string& id, TaskKind task, Choice label);

/// n samples with alternating labels (A, B, A, ...) across rotating tasks.
std::vector<PreferenceSample> balanced_samples(int n);

/// Random printable section text free of tag tokens. When with_references
/// is true the text sprinkles in lexicon tokens ("Response A", "R_B", ...).
std::string random_section_text(SeededRng* rng, bool with_references);

ChainSections random_sections(SeededRng* rng, bool with_references);

/// Independent reference-swap oracle: two explicit phases over unique
/// placeholders instead of the single-pass implementation.
std::string two_phase_swap_oracle(const std::string& text, const ReferenceLexicon& lexicon);

/// Renders a transcript containing exactly the tags selected by `mask`
/// (bit i = kTagNames[i]). Nested tags whose parent bit is unset are emitted
/// at top level, which the parser must reject as malformed.
std::string masked_transcript(unsigned mask, const ChainSections& sections, int score_a,
                              int score_b);

/// Expected well-formed count for masked_transcript: standalone tags count
/// when present, nested tags only when their parent is present too.
int expected_mask_count(unsigned mask);

/// Random corruption of a transcript (span deletions, tag duplication, byte
/// noise, truncation).
std::string mutate_transcript(SeededRng* rng, const std::string& golden);

}  // namespace mj::testing
