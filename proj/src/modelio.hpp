#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core.hpp"
#include "prompting.hpp"

namespace mj {

// ---------------------------------------------------------------------------
// Endpoint configuration
// ---------------------------------------------------------------------------

struct ModelEndpoint {
    std::string base_url;    // e.g. "http://localhost:8000/v1"
    std::string model_name;
    std::string api_key;     // supply via MJ_API_KEY; never via flags/files
    std::chrono::milliseconds timeout{120000};
    int max_retries = 3;
    int max_concurrency = 4;

    // Native sends the partial assistant message through (vLLM-style
    // continuation); emulate re-asks via a user turn and strips the echoed
    // prefix. Emulate is the portable default.
    enum class Continuation { Native, Emulate };
    Continuation continuation = Continuation::Emulate;
};

/// Fills empty api_key / base_url fields from MJ_API_KEY / MJ_BASE_URL.
void apply_endpoint_env(ModelEndpoint* endpoint);

// ---------------------------------------------------------------------------
// Client interface
// ---------------------------------------------------------------------------

/// Correlation info passed alongside a request; replay judges key their
/// fixture lookup on it, live endpoints ignore it.
struct RequestContext {
    std::string sample_id;
    std::string kind;  // "original", "flipped", "original_3", ...
};

struct GenerationResult {
    std::string text;                     // continuation only, for prefix requests
    bool continuation_emulated = false;
};

class JudgeClient {
public:
    virtual ~JudgeClient() = default;

    /// Returns the assistant completion for `messages`. When the final
    /// message is a partial assistant prefix, returns only the continuation.
    virtual GenerationResult generate_full(const std::vector<ChatMessage>& messages,
                                           const GenerationConfig& gen,
                                           const RequestContext& context) = 0;

    std::string generate(const std::vector<ChatMessage>& messages, const GenerationConfig& gen,
                         const RequestContext& context = {}) {
        return generate_full(messages, gen, context).text;
    }

    virtual std::string describe() const = 0;
};

// ---------------------------------------------------------------------------
// Wire encoding
// ---------------------------------------------------------------------------

/// Chat-completions content array: text parts pass through, images become
/// base64 data URIs (files and URLs are fetched and inlined). Order is
/// preserved.
nlohmann::json encode_images(const std::vector<ContentPart>& parts);

nlohmann::json encode_messages(const std::vector<ChatMessage>& messages);

/// Loads the raw bytes behind an image ref (reads files, fetches URLs,
/// decodes inline payloads). Empty or oversized images are input errors.
std::vector<unsigned char> resolve_image_bytes(const ImageRef& ref);

// ---------------------------------------------------------------------------
// HTTP judge
// ---------------------------------------------------------------------------

/// Chat-completions client over HTTP(S) with bounded concurrency and
/// exponential-backoff retries. Shareable across threads.
class HttpJudge : public JudgeClient {
public:
    explicit HttpJudge(ModelEndpoint endpoint);
    ~HttpJudge() override;

    GenerationResult generate_full(const std::vector<ChatMessage>& messages,
                                   const GenerationConfig& gen,
                                   const RequestContext& context) override;

    std::string describe() const override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// ---------------------------------------------------------------------------
// Scripted judges
// ---------------------------------------------------------------------------

/// Token planted in synthetic samples to tell the content oracle which
/// response is ground-truth better.
inline constexpr const char* kPreferredMarker = "[[preferred]]";

/// Deterministic offline stand-ins that emit transcripts in the judge
/// grammar. content_oracle follows response content (finds the planted
/// marker, falling back to a content hash), position_biased_a always prefers
/// slot A, random derives scores from a seed + prompt hash, replay returns
/// fixture files keyed by (sample_id, kind).
class ScriptedJudge : public JudgeClient {
public:
    enum class Behavior { ContentOracle, PositionBiasedA, Random, Replay };

    static std::unique_ptr<ScriptedJudge> content_oracle();
    static std::unique_ptr<ScriptedJudge> position_biased_a();
    static std::unique_ptr<ScriptedJudge> random(std::uint64_t seed);
    static std::unique_ptr<ScriptedJudge> replay(std::string fixture_dir);

    GenerationResult generate_full(const std::vector<ChatMessage>& messages,
                                   const GenerationConfig& gen,
                                   const RequestContext& context) override;

    std::string describe() const override;

    Behavior behavior() const { return behavior_; }

private:
    ScriptedJudge(Behavior behavior, std::uint64_t seed, std::string fixture_dir);

    Behavior behavior_;
    std::uint64_t seed_ = 0;
    std::string fixture_dir_;
};

/// Builds a judge from a spec JSON: {"type":"scripted","behavior":...},
/// {"type":"replay","dir":...} or {"type":"http","base_url":...,
/// "model":...}. Also accepts the CLI shorthand strings
/// "scripted:content_oracle", "scripted:position_biased_a",
/// "scripted:random:SEED" and "replay:DIR".
std::unique_ptr<JudgeClient> open_judge(const std::string& spec);

}  // namespace mj
