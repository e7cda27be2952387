#include "counterfactual.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace mj {

namespace {

std::string prefix_from_bodies(std::string_view obs_prompt, std::string_view obs_a,
                               std::string_view obs_b, std::string_view claims_a,
                               std::string_view claims_b, std::string_view verify_a,
                               std::string_view verify_b) {
    ParsedChain chain;
    chain.obs_prompt = obs_prompt;
    chain.obs_a = obs_a;
    chain.obs_b = obs_b;
    chain.claims_a = claims_a;
    chain.claims_b = claims_b;
    chain.verify_a = verify_a;
    chain.verify_b = verify_b;
    for (int i = 0; i < kTagCount; ++i) {
        chain.tag_status[kTagNames[i]] =
            i < kPrefixTagCount ? TagState::WellFormed : TagState::Missing;
    }
    return serialize_prefix(chain);
}

}  // namespace

const ReferenceLexicon& default_lexicon() {
    static const ReferenceLexicon lexicon = {
        {"Response A", "Response B"},
        {"response A", "response B"},
        {"RESPONSE A", "RESPONSE B"},
        {"R_A", "R_B"},
        {"Image A", "Image B"},
    };
    return lexicon;
}

ReferenceLexicon load_lexicon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_error(ErrorKind::Io, "cannot open lexicon file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw_error(ErrorKind::Config, "lexicon file " + path + ": " + e.what());
    }
    if (!doc.is_array()) throw_error(ErrorKind::Config, "lexicon file must be a JSON array");
    ReferenceLexicon lexicon;
    for (const auto& entry : doc) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
            !entry[1].is_string()) {
            throw_error(ErrorKind::Config, "lexicon entries must be [a, b] string pairs");
        }
        LexiconPair pair{entry[0].get<std::string>(), entry[1].get<std::string>()};
        if (pair.a.empty() || pair.b.empty() || pair.a == pair.b) {
            throw_error(ErrorKind::Config, "lexicon pairs must be distinct non-empty strings");
        }
        lexicon.push_back(std::move(pair));
    }
    return lexicon;
}

std::string swap_references(std::string_view text, const ReferenceLexicon& lexicon) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const std::string* replacement = nullptr;
        std::size_t matched = 0;
        for (const auto& pair : lexicon) {
            if (pair.a.size() > matched && text.compare(i, pair.a.size(), pair.a) == 0) {
                matched = pair.a.size();
                replacement = &pair.b;
            }
            if (pair.b.size() > matched && text.compare(i, pair.b.size(), pair.b) == 0) {
                matched = pair.b.size();
                replacement = &pair.a;
            }
        }
        if (replacement) {
            out += *replacement;
            i += matched;
        } else {
            out += text[i];
            ++i;
        }
    }
    return out;
}

PreferenceSample flip_sample(const PreferenceSample& sample) {
    PreferenceSample flipped = sample;
    std::swap(flipped.response_a, flipped.response_b);
    flipped.label = flip_label(sample.label);
    return flipped;
}

std::string rewrite_prefix(const ParsedChain& chain, const ReferenceLexicon& lexicon) {
    if (!chain.prefix_well_formed()) {
        throw_error(ErrorKind::Contract,
                    "flip not applicable: reasoning prefix tags are missing or malformed");
    }
    // Bodies exchange sides and the exchanged text swaps its A/B references;
    // the prompt observation is carried over untouched.
    return prefix_from_bodies(chain.obs_prompt, swap_references(chain.obs_b, lexicon),
                              swap_references(chain.obs_a, lexicon),
                              swap_references(chain.claims_b, lexicon),
                              swap_references(chain.claims_a, lexicon),
                              swap_references(chain.verify_b, lexicon),
                              swap_references(chain.verify_a, lexicon));
}

FlippedArtifacts make_flipped_artifacts(const PreferenceSample& sample, const ParsedChain& chain,
                                        const ReferenceLexicon& lexicon) {
    return FlippedArtifacts{flip_sample(sample), rewrite_prefix(chain, lexicon)};
}

int check_inversion(const Verdict& original_verdict, const Verdict& flipped_verdict,
                    Choice label, ConsistencyPolicy policy) {
    if (policy == ConsistencyPolicy::Inversion) {
        return flipped_verdict.choice == flip_label(original_verdict.choice) ? 1 : 0;
    }
    return original_verdict.choice == label && flipped_verdict.choice == flip_label(label) ? 1
                                                                                           : 0;
}

}  // namespace mj
