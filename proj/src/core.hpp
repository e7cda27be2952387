#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mj {

// ---------------------------------------------------------------------------
// Task and label enums
// ---------------------------------------------------------------------------

enum class TaskKind { T2i, Editing, Interleaved, Reasoning };

constexpr int kTaskKindCount = 4;

const char* to_string(TaskKind task);
std::optional<TaskKind> task_from_string(std::string_view name);
std::vector<TaskKind> all_task_kinds();

// Which response slot a verdict or ground-truth label points at.
enum class Choice { A, B };

const char* to_string(Choice choice);
std::optional<Choice> choice_from_string(std::string_view name);

// A <-> B. Involutive.
Choice flip_label(Choice label);

// ---------------------------------------------------------------------------
// Content types
// ---------------------------------------------------------------------------

/// Reference to an image: a file path, a URL, or an inline base64 payload.
/// Exactly one source form is held at a time.
struct ImageRef {
    enum class Source { FilePath, Url, Base64 };

    Source source = Source::FilePath;
    std::string value;       // path, URL, or base64 payload depending on source
    std::string media_type;  // MIME string, e.g. "image/png"

    static ImageRef from_file(std::string path, std::string media_type);
    static ImageRef from_url(std::string url, std::string media_type);
    static ImageRef from_base64(std::string payload, std::string media_type);

    bool operator==(const ImageRef&) const = default;
};

struct ContentPart {
    enum class Kind { Text, Image };

    Kind kind = Kind::Text;
    std::string text;  // kind == Text
    ImageRef image;    // kind == Image

    static ContentPart make_text(std::string text);
    static ContentPart make_image(ImageRef ref);

    bool operator==(const ContentPart&) const = default;
};

/// One preference item: a prompt and two candidate responses, with the
/// ground-truth winner.
struct PreferenceSample {
    std::string id;
    TaskKind task = TaskKind::T2i;
    std::vector<ContentPart> prompt;
    std::vector<ContentPart> response_a;
    std::vector<ContentPart> response_b;
    Choice label = Choice::A;

    bool operator==(const PreferenceSample&) const = default;
};

// ---------------------------------------------------------------------------
// Scores and verdicts
// ---------------------------------------------------------------------------

/// Validated integer score pair. Both scores are in [1, 10] and differ, so a
/// verdict is always defined. Construct via make(); invalid input yields
/// nullopt rather than a clamped pair.
class ScorePair {
public:
    static std::optional<ScorePair> make(int score_a, int score_b);

    int a() const noexcept { return a_; }
    int b() const noexcept { return b_; }

    bool operator==(const ScorePair&) const = default;

    static constexpr int kMin = 1;
    static constexpr int kMax = 10;

private:
    ScorePair(int a, int b) : a_(a), b_(b) {}
    int a_;
    int b_;
};

struct Verdict {
    Choice choice = Choice::A;

    bool operator==(const Verdict&) const = default;
};

/// A iff score_a > score_b. Ties are unrepresentable in ScorePair.
Verdict verdict_from_scores(const ScorePair& scores);

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

struct GenerationConfig {
    double temperature = 0.7;
    int max_tokens = 6144;
    std::optional<std::uint64_t> seed;

    bool valid() const { return temperature >= 0.0 && max_tokens > 0; }
};

enum class ConsistencyPolicy {
    Inversion,  // flipped verdict must invert the original verdict
    Strict,     // original must match the label AND the flip must invert it
};

const char* to_string(ConsistencyPolicy policy);
std::optional<ConsistencyPolicy> consistency_policy_from_string(std::string_view name);

struct GrpoConfig {
    int group_size_n = 32;            // originals per prompt; group pools 2N
    double advantage_epsilon = 0.01;  // |advantage| must exceed this to be retained
    ConsistencyPolicy consistency_policy = ConsistencyPolicy::Inversion;

    bool valid() const { return group_size_n >= 1 && advantage_epsilon >= 0.0; }
};

}  // namespace mj
