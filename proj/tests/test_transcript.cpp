#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rng.hpp"
#include "support/synthetic.hpp"
#include "transcript.hpp"

using namespace mj;
namespace mjt = mj::testing;

namespace {

std::string read_fixture(const std::string& name) {
    std::filesystem::path path =
        std::filesystem::path(MJ_SOURCE_DIR) / "tests" / "fixtures" / name;
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing fixture ", path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ChainSections sample_sections() {
    ChainSections s;
    s.obs_prompt = "The prompt asks for a red bicycle against a green wall.";
    s.obs_a = "Response A image shows a red bicycle by a green wall.";
    s.obs_b = "Response B image shows a blue car in a garage.";
    s.claims_a = "Response A claims the bicycle is red.";
    s.claims_b = "Response B claims the car is parked.";
    s.verify_a = "Response A claims match the observations.";
    s.verify_b = "Response B claims do not match the prompt.";
    s.evaluation = "Response A wins on faithfulness and overall quality.";
    return s;
}

}  // namespace

TEST_CASE("fully compliant transcript parses to 11 well-formed tags") {
    std::string raw = render_transcript(sample_sections(), 7, 4);
    ParsedChain chain = parse_transcript(raw);
    CHECK(chain.well_formed_count() == 11);
    for (const char* name : kTagNames) CHECK(chain.tag_well_formed(name));
    REQUIRE(chain.scores.has_value());
    CHECK(chain.scores->a() == 7);
    CHECK(chain.scores->b() == 4);
    CHECK(chain.prefix_well_formed());
}

TEST_CASE("empty input yields 11 missing tags and no scores") {
    ParsedChain chain = parse_transcript("");
    CHECK(chain.well_formed_count() == 0);
    CHECK(chain.tag_status.size() == 11);
    for (const auto& [name, state] : chain.tag_status) {
        CAPTURE(name);
        CHECK(state == TagState::Missing);
    }
    CHECK(!chain.scores.has_value());
}

TEST_CASE("duplicated tag is malformed, others unaffected") {
    std::string raw = render_transcript(sample_sections(), 7, 4);
    raw += "\n\n<evaluate_criteria>\nsecond thoughts\n</evaluate_criteria>";
    ParsedChain chain = parse_transcript(raw);
    CHECK(chain.tag_status.at("evaluate_criteria") == TagState::Malformed);
    CHECK(chain.well_formed_count() == 10);
    CHECK(chain.scores.has_value());
}

TEST_CASE("out-of-order sections malform the swapped pair only") {
    ChainSections s = sample_sections();
    // Swap the claims and verification parent blocks wholesale.
    std::string raw = render_transcript(s, 7, 4);
    auto claims_at = raw.find("<response_claims>");
    auto claims_end = raw.find("</response_claims>") + std::string("</response_claims>").size();
    auto verify_at = raw.find("<consistency_verification>");
    auto verify_end =
        raw.find("</consistency_verification>") + std::string("</consistency_verification>").size();
    std::string claims_block = raw.substr(claims_at, claims_end - claims_at);
    std::string verify_block = raw.substr(verify_at, verify_end - verify_at);
    std::string swapped = raw.substr(0, claims_at) + verify_block +
                          raw.substr(claims_end, verify_at - claims_end) + claims_block +
                          raw.substr(verify_end);

    ParsedChain chain = parse_transcript(swapped);
    CHECK(chain.tag_status.at("response_claims") == TagState::Malformed);
    CHECK(chain.tag_status.at("consistency_verification") == TagState::Malformed);
    CHECK(chain.tag_status.at("prompt_img_understanding") == TagState::WellFormed);
    CHECK(chain.tag_status.at("evaluate_criteria") == TagState::WellFormed);
    CHECK(chain.tag_status.at("scores") == TagState::WellFormed);
}

TEST_CASE("nested tag outside its parent is malformed") {
    std::string raw = render_transcript(sample_sections(), 7, 4);
    // Move response_a_claims after its parent closes.
    auto open_at = raw.find("<response_a_claims>");
    auto close_tag = std::string("</response_a_claims>");
    auto close_at = raw.find(close_tag) + close_tag.size();
    std::string child = raw.substr(open_at, close_at - open_at);
    raw.erase(open_at, close_at - open_at);
    auto parent_close = raw.find("</response_claims>") + std::string("</response_claims>").size();
    raw.insert(parent_close, child);

    ParsedChain chain = parse_transcript(raw);
    CHECK(chain.tag_status.at("response_a_claims") == TagState::Malformed);
    CHECK(chain.tag_status.at("response_claims") == TagState::WellFormed);
}

TEST_CASE("extract_scores canonical and degenerate forms") {
    CHECK(extract_scores("\\boxed{8, 5}") == ScorePair::make(8, 5));
    CHECK(extract_scores("\\boxed{8,5}") == ScorePair::make(8, 5));
    CHECK(extract_scores("\\boxed{ 8 , 5 }") == ScorePair::make(8, 5));
    CHECK(!extract_scores("\\boxed{5, 5}").has_value());   // tie
    CHECK(!extract_scores("\\boxed{12, 3}").has_value());  // out of range
    CHECK(!extract_scores("\\boxed{0, 3}").has_value());
    CHECK(!extract_scores("\\boxed{-2, 3}").has_value());
    CHECK(!extract_scores("\\boxed{3.5, 2}").has_value());  // not integers
    CHECK(!extract_scores("no scores here").has_value());
    CHECK(!extract_scores("\\boxed{99999999999999999999, 1}").has_value());
}

TEST_CASE("extract_scores takes the last syntactic match") {
    CHECK(extract_scores("\\boxed{3, 9} ... actually \\boxed{9, 3}") == ScorePair::make(9, 3));
    // The last match is authoritative even when invalid.
    CHECK(!extract_scores("\\boxed{9, 3} ... \\boxed{5, 5}").has_value());
    // A malformed trailing expression is not a match; the earlier one stands.
    CHECK(extract_scores("\\boxed{9, 3} ... \\boxed{oops}") == ScorePair::make(9, 3));
}

TEST_CASE("scores are searched in the scores span first, whole text as fallback") {
    std::string raw = render_transcript(sample_sections(), 7, 4);
    SUBCASE("well-formed span wins over stray boxed text") {
        auto at = raw.find("<scores>");
        raw.insert(at, "\\boxed{1, 2}\n\n");
        ParsedChain chain = parse_transcript(raw);
        REQUIRE(chain.scores.has_value());
        CHECK(chain.scores->a() == 7);
    }
    SUBCASE("missing scores tag falls back to whole-text search") {
        ChainSections s = sample_sections();
        std::string prefixish = mjt::masked_transcript(0x3ff, s, 7, 4);  // all but the scores tag
        prefixish += "\n\nFinal: \\boxed{6, 2}";
        ParsedChain chain = parse_transcript(prefixish);
        CHECK(chain.tag_status.at("scores") == TagState::Missing);
        REQUIRE(chain.scores.has_value());
        CHECK(chain.scores->a() == 6);
        CHECK(chain.scores->b() == 2);
    }
}

TEST_CASE("format reward values") {
    ChainSections s = sample_sections();
    ParsedChain full = parse_transcript(render_transcript(s, 7, 4));
    FormatScore full_score = format_reward(full);
    CHECK(full_score.well_formed_count == 11);
    CHECK(full_score.value == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(full_score.score_parse_ok);

    ParsedChain empty = parse_transcript("");
    CHECK(format_reward(empty).value == 0.0);
    CHECK(!format_reward(empty).score_parse_ok);

    // Drop one tag: 10 * 0.2/11.
    std::string missing_one = mjt::masked_transcript(0x7ff & ~(1u << 9), s, 7, 4);
    ParsedChain ten = parse_transcript(missing_one);
    CHECK(format_reward(ten).well_formed_count == 10);
    CHECK(format_reward(ten).value == doctest::Approx(10.0 * 0.2 / 11.0).epsilon(1e-9));
}

TEST_CASE("render/parse round-trip preserves section bodies byte-for-byte") {
    SeededRng rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        ChainSections s = mjt::random_sections(&rng, true);
        int a = 1 + static_cast<int>(rng.next_below(10));
        int b = 1 + static_cast<int>((a + rng.next_below(9)) % 10);
        std::string raw = render_transcript(s, a, b);
        ParsedChain chain = parse_transcript(raw);
        REQUIRE(chain.well_formed_count() == 11);
        CHECK(chain.obs_prompt == "\n" + s.obs_prompt + "\n");
        CHECK(chain.obs_a == "\n" + s.obs_a + "\n");
        CHECK(chain.obs_b == "\n" + s.obs_b + "\n");
        CHECK(chain.claims_a == "\n" + s.claims_a + "\n");
        CHECK(chain.claims_b == "\n" + s.claims_b + "\n");
        CHECK(chain.verify_a == "\n" + s.verify_a + "\n");
        CHECK(chain.verify_b == "\n" + s.verify_b + "\n");
        CHECK(chain.evaluation == "\n" + s.evaluation + "\n");
        REQUIRE(chain.scores.has_value());
        CHECK(chain.scores->a() == a);
        CHECK(chain.scores->b() == b);
    }
}

TEST_CASE("removing a well-formed tag never increases the format reward") {
    SeededRng rng(7);
    ChainSections s = sample_sections();
    for (unsigned mask = 0; mask < (1u << kTagCount); mask += 1 + rng.next_below(37)) {
        double value =
            format_reward(parse_transcript(mjt::masked_transcript(mask, s, 7, 4))).value;
        for (int i = 0; i < kTagCount; ++i) {
            if (!(mask & (1u << i))) continue;
            unsigned reduced_mask = mask & ~(1u << i);
            double reduced = format_reward(
                                 parse_transcript(mjt::masked_transcript(reduced_mask, s, 7, 4)))
                                 .value;
            CAPTURE(mask);
            CAPTURE(i);
            CHECK(reduced <= value + 1e-12);
        }
    }
}

TEST_CASE("parser is total over arbitrary bytes") {
    SeededRng rng(99);
    std::string golden = render_transcript(sample_sections(), 7, 4);
    for (int trial = 0; trial < 300; ++trial) {
        std::string noise;
        if (trial % 3 == 0) {
            std::size_t len = rng.next_below(400);
            for (std::size_t i = 0; i < len; ++i) {
                noise += static_cast<char>(rng.next_below(256));
            }
        } else {
            noise = mjt::mutate_transcript(&rng, golden);
        }
        ParsedChain chain = parse_transcript(noise);
        CHECK(chain.tag_status.size() == 11);
    }
}

TEST_CASE("golden fixtures match their recorded expectations") {
    namespace fs = std::filesystem;
    fs::path dir = fs::path(MJ_SOURCE_DIR) / "tests" / "fixtures" / "golden";
    int checked = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".txt") continue;
        fs::path expected_path = entry.path();
        expected_path.replace_extension(".expected.json");
        REQUIRE_MESSAGE(fs::exists(expected_path), "missing ", expected_path.string());

        std::ifstream expected_in(expected_path);
        nlohmann::json expected;
        expected_in >> expected;

        ParsedChain chain = parse_transcript(
            read_fixture("golden/" + entry.path().filename().string()));
        CAPTURE(entry.path().filename().string());
        CHECK(chain.well_formed_count() == expected["well_formed_count"].get<int>());
        for (const auto& [name, state] : expected["tag_status"].items()) {
            CAPTURE(name);
            CHECK(to_string(chain.tag_status.at(name)) == state.get<std::string>());
        }
        if (expected["scores"].is_null()) {
            CHECK(!chain.scores.has_value());
        } else {
            REQUIRE(chain.scores.has_value());
            CHECK(chain.scores->a() == expected["scores"]["a"].get<int>());
            CHECK(chain.scores->b() == expected["scores"]["b"].get<int>());
        }
        ++checked;
    }
    CHECK(checked >= 4);
}
