#include "transcript.hpp"

#include <algorithm>
#include <cctype>

#include "errors.hpp"

namespace mj {

namespace {

// Parent tag index (into kTagNames) for nested tags, -1 for top-level tags.
constexpr std::array<int, kTagCount> kParentIndex = {
    -1, -1, -1,
    -1, 3, 3,  // response_a_claims / response_b_claims nest in response_claims
    -1, 6, 6,  // *_verification tags nest in consistency_verification
    -1, -1,
};

struct TagOccurrences {
    std::vector<std::size_t> opens;
    std::vector<std::size_t> closes;
    std::size_t open_len = 0;
    std::size_t close_len = 0;

    bool absent() const { return opens.empty() && closes.empty(); }
    // Unique pair with the open before the close: the span is resolvable.
    bool resolvable() const {
        return opens.size() == 1 && closes.size() == 1 && opens[0] < closes[0];
    }
    std::size_t body_begin() const { return opens[0] + open_len; }
    std::size_t body_end() const { return closes[0]; }
};

std::vector<std::size_t> find_all(std::string_view haystack, std::string_view needle) {
    std::vector<std::size_t> hits;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string_view::npos) {
        hits.push_back(pos);
        pos += needle.size();
    }
    return hits;
}

// Parses a decimal integer (optional leading '-') starting at *pos, skipping
// nothing. Saturates far outside the valid score range so huge literals are
// still "integers" that then fail validation.
bool parse_int(std::string_view text, std::size_t* pos, long long* out) {
    std::size_t i = *pos;
    bool negative = false;
    if (i < text.size() && text[i] == '-') {
        negative = true;
        ++i;
    }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    long long value = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        if (value < 1'000'000'000LL) value = value * 10 + (text[i] - '0');
        ++i;
    }
    *pos = i;
    *out = negative ? -value : value;
    return true;
}

void skip_spaces(std::string_view text, std::size_t* pos) {
    while (*pos < text.size() && std::isspace(static_cast<unsigned char>(text[*pos]))) ++(*pos);
}

std::string wrap(std::string_view tag, std::string_view body) {
    std::string out;
    out.reserve(tag.size() * 2 + body.size() + 5);
    out += '<';
    out += tag;
    out += '>';
    out += body;
    out += "</";
    out += tag;
    out += '>';
    return out;
}

// Canonical layout shared by render_transcript and serialize_prefix: parents
// indent their children by two spaces and children are separated by a blank
// line, matching the judge prompt's required output format.
std::string wrap_parent(std::string_view parent, std::string_view child_a_tag,
                        std::string_view child_a_body, std::string_view child_b_tag,
                        std::string_view child_b_body) {
    std::string inner = "\n  " + wrap(child_a_tag, child_a_body) + "\n\n  " +
                        wrap(child_b_tag, child_b_body) + "\n";
    return wrap(parent, inner);
}

std::string prefix_text(std::string_view obs_prompt, std::string_view obs_a,
                        std::string_view obs_b, std::string_view claims_a,
                        std::string_view claims_b, std::string_view verify_a,
                        std::string_view verify_b) {
    std::string out;
    out += wrap("prompt_img_understanding", obs_prompt);
    out += "\n\n";
    out += wrap("response_a_img_understanding", obs_a);
    out += "\n\n";
    out += wrap("response_b_img_understanding", obs_b);
    out += "\n\n";
    out += wrap_parent("response_claims", "response_a_claims", claims_a,
                       "response_b_claims", claims_b);
    out += "\n\n";
    out += wrap_parent("consistency_verification", "response_a_verification", verify_a,
                       "response_b_verification", verify_b);
    return out;
}

std::string pad(std::string_view content) {
    return "\n" + std::string(content) + "\n";
}

}  // namespace

const char* to_string(TagState state) {
    switch (state) {
        case TagState::WellFormed: return "well_formed";
        case TagState::Malformed: return "malformed";
        case TagState::Missing: return "missing";
    }
    return "unknown";
}

bool ParsedChain::tag_well_formed(std::string_view name) const {
    auto it = tag_status.find(std::string(name));
    return it != tag_status.end() && it->second == TagState::WellFormed;
}

int ParsedChain::well_formed_count() const {
    int count = 0;
    for (const auto& [name, state] : tag_status) {
        if (state == TagState::WellFormed) ++count;
    }
    return count;
}

bool ParsedChain::prefix_well_formed() const {
    for (int i = 0; i < kPrefixTagCount; ++i) {
        if (!tag_well_formed(kTagNames[i])) return false;
    }
    return true;
}

std::optional<ScorePair> extract_scores(std::string_view text) {
    constexpr std::string_view kBoxed = "\\boxed{";
    std::optional<std::pair<long long, long long>> last;
    std::size_t pos = 0;
    while ((pos = text.find(kBoxed, pos)) != std::string_view::npos) {
        std::size_t cursor = pos + kBoxed.size();
        pos += 1;  // next search restarts past this backslash either way
        long long a = 0;
        long long b = 0;
        skip_spaces(text, &cursor);
        if (!parse_int(text, &cursor, &a)) continue;
        skip_spaces(text, &cursor);
        if (cursor >= text.size() || text[cursor] != ',') continue;
        ++cursor;
        skip_spaces(text, &cursor);
        if (!parse_int(text, &cursor, &b)) continue;
        skip_spaces(text, &cursor);
        if (cursor >= text.size() || text[cursor] != '}') continue;
        last = {a, b};
    }
    if (!last) return std::nullopt;
    auto [a, b] = *last;
    if (a < ScorePair::kMin || a > ScorePair::kMax) return std::nullopt;
    if (b < ScorePair::kMin || b > ScorePair::kMax) return std::nullopt;
    return ScorePair::make(static_cast<int>(a), static_cast<int>(b));
}

ParsedChain parse_transcript(std::string_view raw) {
    std::array<TagOccurrences, kTagCount> occ;
    for (int i = 0; i < kTagCount; ++i) {
        std::string open = std::string("<") + kTagNames[i] + ">";
        std::string close = std::string("</") + kTagNames[i] + ">";
        occ[i].opens = find_all(raw, open);
        occ[i].closes = find_all(raw, close);
        occ[i].open_len = open.size();
        occ[i].close_len = close.size();
    }

    // Canonical-order check over the resolvable tags: each must open after
    // every canonically-earlier resolvable tag and before every later one.
    // A swapped pair malforms both members and leaves the rest untouched.
    std::array<bool, kTagCount> order_ok;
    order_ok.fill(true);
    for (int i = 0; i < kTagCount; ++i) {
        if (!occ[i].resolvable()) continue;
        for (int j = 0; j < kTagCount; ++j) {
            if (j == i || !occ[j].resolvable()) continue;
            bool expected_before = j < i;
            bool actually_before = occ[j].opens[0] < occ[i].opens[0];
            if (expected_before != actually_before) {
                order_ok[i] = false;
                break;
            }
        }
    }

    ParsedChain chain;
    std::array<bool, kTagCount> well_formed;
    for (int i = 0; i < kTagCount; ++i) {
        bool ok = occ[i].resolvable() && order_ok[i];
        if (ok && kParentIndex[i] >= 0) {
            const auto& parent = occ[kParentIndex[i]];
            ok = parent.resolvable() && occ[i].opens[0] >= parent.body_begin() &&
                 occ[i].closes[0] + occ[i].close_len <= parent.body_end();
        }
        well_formed[i] = ok;
        if (occ[i].absent()) {
            chain.tag_status[kTagNames[i]] = TagState::Missing;
        } else {
            chain.tag_status[kTagNames[i]] = ok ? TagState::WellFormed : TagState::Malformed;
        }
    }

    auto body_of = [&](int i) -> std::string {
        if (!occ[i].resolvable()) return {};
        return std::string(raw.substr(occ[i].body_begin(), occ[i].body_end() - occ[i].body_begin()));
    };

    chain.obs_prompt = body_of(0);
    chain.obs_a = body_of(1);
    chain.obs_b = body_of(2);
    chain.claims_a = body_of(4);
    chain.claims_b = body_of(5);
    chain.verify_a = body_of(7);
    chain.verify_b = body_of(8);
    chain.evaluation = body_of(9);
    chain.scores_raw = body_of(10);

    if (well_formed[10]) {
        chain.scores = extract_scores(chain.scores_raw);
    } else {
        chain.scores = extract_scores(raw);
    }
    return chain;
}

FormatScore format_reward(const ParsedChain& chain) {
    FormatScore score;
    score.well_formed_count = chain.well_formed_count();
    // count/11 first so a fully compliant transcript lands on 0.2 exactly.
    score.value = (static_cast<double>(score.well_formed_count) / kTagCount) * kFormatRewardCap;
    score.score_parse_ok = chain.scores.has_value();
    return score;
}

std::string render_transcript(const ChainSections& s, int score_a, int score_b) {
    return prefix_text(pad(s.obs_prompt), pad(s.obs_a), pad(s.obs_b), pad(s.claims_a),
                       pad(s.claims_b), pad(s.verify_a), pad(s.verify_b)) +
           render_continuation(s.evaluation, score_a, score_b);
}

std::string render_continuation(const std::string& evaluation, int score_a, int score_b) {
    std::string boxed =
        "\\boxed{" + std::to_string(score_a) + ", " + std::to_string(score_b) + "}";
    return "\n\n" + wrap("evaluate_criteria", pad(evaluation)) + "\n\n" +
           wrap("scores", pad(boxed));
}

std::string serialize_prefix(const ParsedChain& chain) {
    if (!chain.prefix_well_formed()) {
        throw_error(ErrorKind::Contract,
                    "cannot serialize prefix: reasoning tags are missing or malformed");
    }
    return prefix_text(chain.obs_prompt, chain.obs_a, chain.obs_b, chain.claims_a,
                       chain.claims_b, chain.verify_a, chain.verify_b);
}

}  // namespace mj
