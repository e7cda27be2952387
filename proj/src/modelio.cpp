#include "modelio.hpp"

#include <httplib.h>

#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "base64.hpp"
#include "errors.hpp"
#include "rng.hpp"
#include "transcript.hpp"

namespace fs = std::filesystem;

namespace mj {

namespace {

constexpr std::size_t kMaxImageBytes = 20 * 1024 * 1024;

std::string getenv_or(const char* name, const std::string& fallback) {
    const char* value = std::getenv(name);
    return value ? std::string(value) : fallback;
}

// "https://host:1234/v1" -> origin "https://host:1234", path prefix "/v1".
std::pair<std::string, std::string> split_base_url(const std::string& base_url) {
    auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw_error(ErrorKind::Config, "base_url must start with http:// or https://");
    }
    auto path_start = base_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {base_url, ""};
    std::string prefix = base_url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {base_url.substr(0, path_start), prefix};
}

std::vector<unsigned char> fetch_url_bytes(const std::string& url) {
    auto [origin, path] = split_base_url(url);
    httplib::Client client(origin);
    client.set_follow_location(true);
    auto res = client.Get(path.empty() ? "/" : path);
    if (!res) {
        throw_error(ErrorKind::Transport, "failed to fetch image URL: " + url);
    }
    if (res->status != 200) {
        throw_error(ErrorKind::InvalidArgument,
                    "image URL returned HTTP " + std::to_string(res->status) + ": " + url);
    }
    return {res->body.begin(), res->body.end()};
}

// Bounded number of in-flight requests per endpoint.
class ConcurrencyGate {
public:
    explicit ConcurrencyGate(int limit) : limit_(limit) {}

    void acquire() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return active_ < limit_; });
        ++active_;
    }

    void release() {
        {
            std::lock_guard lock(mutex_);
            --active_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    int limit_;
    int active_ = 0;
};

struct GateGuard {
    explicit GateGuard(ConcurrencyGate& gate) : gate_(gate) { gate_.acquire(); }
    ~GateGuard() { gate_.release(); }
    ConcurrencyGate& gate_;
};

std::string first_user_text(const std::vector<ChatMessage>& messages) {
    for (const auto& message : messages) {
        if (message.role != ChatMessage::Role::User) continue;
        for (const auto& part : message.content) {
            if (part.kind == ContentPart::Kind::Text) return part.text;
        }
    }
    return {};
}

// The judge prompt renders responses under fixed headers; scripted judges
// read them back out of the request.
struct PromptBlocks {
    std::string prompt;
    std::string response_a;
    std::string response_b;
};

PromptBlocks split_blocks(const std::string& text) {
    static const std::string kPrompt = "**Prompt:**\n";
    static const std::string kA = "**Response A:**\n";
    static const std::string kB = "**Response B:**\n";
    PromptBlocks blocks;
    auto p = text.find(kPrompt);
    auto a = text.find(kA);
    auto b = text.find(kB);
    if (p == std::string::npos || a == std::string::npos || b == std::string::npos || a < p ||
        b < a) {
        return blocks;
    }
    blocks.prompt = text.substr(p + kPrompt.size(), a - (p + kPrompt.size()));
    blocks.response_a = text.substr(a + kA.size(), b - (a + kA.size()));
    blocks.response_b = text.substr(b + kB.size());
    return blocks;
}

std::string trim(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    std::size_t end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::string excerpt(const std::string& text, std::size_t limit = 120) {
    std::string flat = trim(text);
    for (auto& c : flat) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    if (flat.size() > limit) flat = flat.substr(0, limit) + "...";
    return flat;
}

std::size_t common_prefix_length(std::string_view a, std::string_view b) {
    std::size_t n = std::min(a.size(), b.size());
    std::size_t i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

}  // namespace

void apply_endpoint_env(ModelEndpoint* endpoint) {
    // Environment fills gaps only; explicitly configured values win.
    if (endpoint->api_key.empty()) endpoint->api_key = getenv_or("MJ_API_KEY", "");
    if (endpoint->base_url.empty()) endpoint->base_url = getenv_or("MJ_BASE_URL", "");
}

nlohmann::json encode_images(const std::vector<ContentPart>& parts) {
    nlohmann::json content = nlohmann::json::array();
    for (const auto& part : parts) {
        if (part.kind == ContentPart::Kind::Text) {
            content.push_back({{"type", "text"}, {"text", part.text}});
            continue;
        }
        const ImageRef& ref = part.image;
        std::string payload;
        if (ref.source == ImageRef::Source::Base64) {
            auto bytes = base64_decode(ref.value);
            if (!bytes || bytes->empty()) {
                throw_error(ErrorKind::InvalidArgument, "inline image payload is empty or invalid");
            }
            if (bytes->size() > kMaxImageBytes) {
                throw_error(ErrorKind::InvalidArgument, "image exceeds size limit");
            }
            payload = ref.value;
        } else {
            auto bytes = resolve_image_bytes(ref);
            payload = base64_encode(bytes);
        }
        std::string uri = "data:" + ref.media_type + ";base64," + payload;
        content.push_back({{"type", "image_url"}, {"image_url", {{"url", std::move(uri)}}}});
    }
    return content;
}

nlohmann::json encode_messages(const std::vector<ChatMessage>& messages) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& message : messages) {
        out.push_back({{"role", to_string(message.role)}, {"content", encode_images(message.content)}});
    }
    return out;
}

std::vector<unsigned char> resolve_image_bytes(const ImageRef& ref) {
    switch (ref.source) {
        case ImageRef::Source::FilePath: {
            std::ifstream in(ref.value, std::ios::binary);
            if (!in) throw_error(ErrorKind::InvalidArgument, "cannot read image file: " + ref.value);
            std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                             std::istreambuf_iterator<char>()};
            if (bytes.empty()) {
                throw_error(ErrorKind::InvalidArgument, "image file is empty: " + ref.value);
            }
            if (bytes.size() > kMaxImageBytes) {
                throw_error(ErrorKind::InvalidArgument, "image exceeds size limit: " + ref.value);
            }
            return bytes;
        }
        case ImageRef::Source::Url: {
            auto bytes = fetch_url_bytes(ref.value);
            if (bytes.empty()) {
                throw_error(ErrorKind::InvalidArgument, "image URL returned no data: " + ref.value);
            }
            if (bytes.size() > kMaxImageBytes) {
                throw_error(ErrorKind::InvalidArgument, "image exceeds size limit: " + ref.value);
            }
            return bytes;
        }
        case ImageRef::Source::Base64: {
            auto bytes = base64_decode(ref.value);
            if (!bytes || bytes->empty()) {
                throw_error(ErrorKind::InvalidArgument, "inline image payload is empty or invalid");
            }
            return *bytes;
        }
    }
    throw_error(ErrorKind::InvalidArgument, "unknown image source");
}

// ---------------------------------------------------------------------------
// HttpJudge
// ---------------------------------------------------------------------------

struct HttpJudge::Impl {
    ModelEndpoint endpoint;
    std::string origin;
    std::string path_prefix;
    ConcurrencyGate gate;
    std::mt19937_64 jitter{std::random_device{}()};
    std::mutex jitter_mutex;

    explicit Impl(ModelEndpoint ep)
        : endpoint(std::move(ep)), gate(std::max(1, endpoint.max_concurrency)) {
        auto [o, p] = split_base_url(endpoint.base_url);
        origin = o;
        path_prefix = p;
    }

    std::chrono::milliseconds backoff_delay(int attempt) {
        auto base = std::chrono::milliseconds(500) * (1 << std::min(attempt, 5));
        std::uint64_t jitter_ms;
        {
            std::lock_guard lock(jitter_mutex);
            jitter_ms = jitter() % static_cast<std::uint64_t>(base.count() / 2 + 1);
        }
        auto delay = base + std::chrono::milliseconds(jitter_ms);
        return std::min(delay, std::chrono::milliseconds(10000));
    }
};

HttpJudge::HttpJudge(ModelEndpoint endpoint) : impl_(std::make_unique<Impl>(std::move(endpoint))) {
    if (impl_->endpoint.base_url.empty()) {
        throw_error(ErrorKind::Config, "model endpoint needs a base_url (flag or MJ_BASE_URL)");
    }
    if (impl_->endpoint.model_name.empty()) {
        throw_error(ErrorKind::Config, "model endpoint needs a model name");
    }
}

HttpJudge::~HttpJudge() = default;

std::string HttpJudge::describe() const {
    return "http:" + impl_->endpoint.model_name + "@" + impl_->endpoint.base_url;
}

GenerationResult HttpJudge::generate_full(const std::vector<ChatMessage>& messages,
                                          const GenerationConfig& gen,
                                          const RequestContext& /*context*/) {
    validate_messages(messages);
    if (!gen.valid()) throw_error(ErrorKind::InvalidArgument, "invalid generation config");

    const ModelEndpoint& ep = impl_->endpoint;
    bool has_prefix = messages.back().role == ChatMessage::Role::Assistant;
    bool emulate = has_prefix && ep.continuation == ModelEndpoint::Continuation::Emulate;

    std::string prefix_text;
    nlohmann::json wire_messages;
    if (emulate) {
        for (const auto& part : messages.back().content) {
            if (part.kind == ContentPart::Kind::Text) prefix_text += part.text;
        }
        std::vector<ChatMessage> rewritten(messages.begin(), messages.end() - 1);
        ChatMessage continuation_request;
        continuation_request.role = ChatMessage::Role::User;
        continuation_request.content.push_back(ContentPart::make_text(
            "Continue the partial response below exactly from where it stops. Output only the "
            "continuation; do not repeat any text that is already there.\n\nPARTIAL "
            "RESPONSE:\n" +
            prefix_text));
        rewritten.push_back(std::move(continuation_request));
        wire_messages = encode_messages(rewritten);
    } else {
        wire_messages = encode_messages(messages);
    }

    nlohmann::json request;
    request["model"] = ep.model_name;
    request["messages"] = std::move(wire_messages);
    request["temperature"] = gen.temperature;
    request["max_tokens"] = gen.max_tokens;
    if (gen.seed) request["seed"] = *gen.seed;
    if (has_prefix && !emulate) {
        // vLLM-style native continuation of the trailing assistant message.
        request["continue_final_message"] = true;
        request["add_generation_prompt"] = false;
    }
    std::string body = request.dump();

    GateGuard guard(impl_->gate);
    httplib::Headers headers;
    if (!ep.api_key.empty()) headers.emplace("Authorization", "Bearer " + ep.api_key);

    std::string last_failure = "no attempt made";
    for (int attempt = 0; attempt <= ep.max_retries; ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(impl_->backoff_delay(attempt - 1));

        httplib::Client client(impl_->origin);
        client.set_connection_timeout(ep.timeout);
        client.set_read_timeout(ep.timeout);
        client.set_write_timeout(ep.timeout);

        auto res = client.Post(impl_->path_prefix + "/chat/completions", headers, body,
                               "application/json");
        if (!res) {
            last_failure = "connection failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 408 || res->status == 429 || res->status >= 500) {
            last_failure = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw_error(ErrorKind::Request,
                        "HTTP " + std::to_string(res->status) + ": " + res->body);
        }

        nlohmann::json reply;
        try {
            reply = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
            throw_error(ErrorKind::Request, std::string("unparseable response body: ") + e.what());
        }
        if (!reply.contains("choices") || reply["choices"].empty()) {
            throw_error(ErrorKind::Request, "response has no choices: " + res->body);
        }
        const auto& content = reply["choices"][0]["message"]["content"];
        std::string text;
        if (content.is_string()) {
            text = content.get<std::string>();
        } else if (content.is_array()) {
            for (const auto& part : content) {
                if (part.value("type", "") == "text") text += part.value("text", "");
            }
        }

        GenerationResult result;
        result.continuation_emulated = emulate;
        if (emulate && !prefix_text.empty()) {
            text.erase(0, common_prefix_length(prefix_text, text));
        }
        result.text = std::move(text);
        return result;
    }
    throw_error(ErrorKind::Transport, "request failed after " +
                                          std::to_string(ep.max_retries + 1) +
                                          " attempts; last error: " + last_failure);
}

// ---------------------------------------------------------------------------
// ScriptedJudge
// ---------------------------------------------------------------------------

ScriptedJudge::ScriptedJudge(Behavior behavior, std::uint64_t seed, std::string fixture_dir)
    : behavior_(behavior), seed_(seed), fixture_dir_(std::move(fixture_dir)) {}

std::unique_ptr<ScriptedJudge> ScriptedJudge::content_oracle() {
    return std::unique_ptr<ScriptedJudge>(new ScriptedJudge(Behavior::ContentOracle, 0, ""));
}

std::unique_ptr<ScriptedJudge> ScriptedJudge::position_biased_a() {
    return std::unique_ptr<ScriptedJudge>(new ScriptedJudge(Behavior::PositionBiasedA, 0, ""));
}

std::unique_ptr<ScriptedJudge> ScriptedJudge::random(std::uint64_t seed) {
    return std::unique_ptr<ScriptedJudge>(new ScriptedJudge(Behavior::Random, seed, ""));
}

std::unique_ptr<ScriptedJudge> ScriptedJudge::replay(std::string fixture_dir) {
    return std::unique_ptr<ScriptedJudge>(
        new ScriptedJudge(Behavior::Replay, 0, std::move(fixture_dir)));
}

std::string ScriptedJudge::describe() const {
    switch (behavior_) {
        case Behavior::ContentOracle: return "scripted:content_oracle";
        case Behavior::PositionBiasedA: return "scripted:position_biased_a";
        case Behavior::Random: return "scripted:random:" + std::to_string(seed_);
        case Behavior::Replay: return "replay:" + fixture_dir_;
    }
    return "scripted:unknown";
}

GenerationResult ScriptedJudge::generate_full(const std::vector<ChatMessage>& messages,
                                              const GenerationConfig& gen,
                                              const RequestContext& context) {
    validate_messages(messages);
    if (!gen.valid()) throw_error(ErrorKind::InvalidArgument, "invalid generation config");

    if (behavior_ == Behavior::Replay) {
        if (context.sample_id.empty() || context.kind.empty()) {
            throw_error(ErrorKind::InvalidArgument,
                        "replay judge needs a request context (sample_id, kind)");
        }
        fs::path file = fs::path(fixture_dir_) / (context.sample_id + "." + context.kind + ".txt");
        std::ifstream in(file, std::ios::binary);
        if (!in) throw_error(ErrorKind::Io, "missing replay fixture: " + file.string());
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return {buffer.str(), false};
    }

    std::string user_text = first_user_text(messages);
    PromptBlocks blocks = split_blocks(user_text);

    int score_a = 0;
    int score_b = 0;
    switch (behavior_) {
        case Behavior::ContentOracle: {
            bool marker_a = blocks.response_a.find(kPreferredMarker) != std::string::npos;
            bool marker_b = blocks.response_b.find(kPreferredMarker) != std::string::npos;
            if (marker_a && !marker_b) {
                score_a = 8;
                score_b = 3;
            } else if (marker_b && !marker_a) {
                score_a = 3;
                score_b = 8;
            } else {
                // No marker: still judge by content so the verdict tracks a
                // swap. Hash order breaks the tie deterministically.
                std::uint64_t ha = fnv1a64(trim(blocks.response_a));
                std::uint64_t hb = fnv1a64(trim(blocks.response_b));
                if (ha == hb) {
                    score_a = 6;
                    score_b = 5;
                } else if (ha > hb) {
                    score_a = 7;
                    score_b = 4;
                } else {
                    score_a = 4;
                    score_b = 7;
                }
            }
            break;
        }
        case Behavior::PositionBiasedA:
            score_a = 8;
            score_b = 3;
            break;
        case Behavior::Random: {
            std::uint64_t hash = fnv1a64(user_text, seed_ ^ 0x9e3779b97f4a7c15ull);
            if (gen.seed) hash = fnv1a64(std::to_string(*gen.seed), hash);
            score_a = 1 + static_cast<int>(hash % 10);
            score_b = 1 + static_cast<int>((score_a - 1 + 1 + (hash >> 8) % 9) % 10);
            break;
        }
        case Behavior::Replay:
            break;  // handled above
    }

    if (messages.back().role == ChatMessage::Role::Assistant) {
        // Continuation request: emit only the evaluation + scores blocks.
        std::string evaluation =
            "Weighing the verified claims, Response " + std::string(score_a > score_b ? "A" : "B") +
            " better satisfies the criteria.";
        return {render_continuation(evaluation, score_a, score_b), false};
    }

    ChainSections sections;
    sections.obs_prompt = "The prompt asks: " + excerpt(blocks.prompt);
    sections.obs_a = "Response A shows: " + excerpt(blocks.response_a);
    sections.obs_b = "Response B shows: " + excerpt(blocks.response_b);
    sections.claims_a = "Response A claims: " + excerpt(blocks.response_a);
    sections.claims_b = "Response B claims: " + excerpt(blocks.response_b);
    sections.verify_a = "Response A claims are checked against the observations.";
    sections.verify_b = "Response B claims are checked against the observations.";
    sections.evaluation = "Weighing the verified claims, Response " +
                          std::string(score_a > score_b ? "A" : "B") +
                          " better satisfies the criteria.";
    return {render_transcript(sections, score_a, score_b), false};
}

// ---------------------------------------------------------------------------
// Judge factory
// ---------------------------------------------------------------------------

namespace {

std::unique_ptr<JudgeClient> open_judge_shorthand(const std::string& spec) {
    if (spec == "scripted:content_oracle" || spec == "scripted:content-oracle") {
        return ScriptedJudge::content_oracle();
    }
    if (spec == "scripted:position_biased_a" || spec == "scripted:position-biased-a") {
        return ScriptedJudge::position_biased_a();
    }
    if (spec.rfind("scripted:random", 0) == 0) {
        std::uint64_t seed = 0;
        auto colon = spec.find(':', std::string("scripted:").size());
        if (colon != std::string::npos) seed = std::stoull(spec.substr(colon + 1));
        return ScriptedJudge::random(seed);
    }
    if (spec.rfind("replay:", 0) == 0) {
        return ScriptedJudge::replay(spec.substr(std::string("replay:").size()));
    }
    throw_error(ErrorKind::Config, "unknown judge spec: " + spec);
}

}  // namespace

std::unique_ptr<JudgeClient> open_judge(const std::string& spec) {
    if (spec.empty()) throw_error(ErrorKind::Config, "empty judge spec");
    if (spec.front() != '{') return open_judge_shorthand(spec);

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(spec);
    } catch (const nlohmann::json::exception& e) {
        throw_error(ErrorKind::Config, std::string("invalid judge spec JSON: ") + e.what());
    }
    std::string type = doc.value("type", "");
    if (type == "scripted") {
        std::string behavior = doc.value("behavior", "");
        if (behavior == "content_oracle") return ScriptedJudge::content_oracle();
        if (behavior == "position_biased_a") return ScriptedJudge::position_biased_a();
        if (behavior == "random") return ScriptedJudge::random(doc.value("seed", 0ull));
        throw_error(ErrorKind::Config, "unknown scripted behavior: " + behavior);
    }
    if (type == "replay") {
        std::string dir = doc.value("dir", "");
        if (dir.empty()) throw_error(ErrorKind::Config, "replay judge needs a fixture dir");
        return ScriptedJudge::replay(dir);
    }
    if (type == "http") {
        ModelEndpoint endpoint;
        endpoint.base_url = doc.value("base_url", "");
        endpoint.model_name = doc.value("model", "");
        endpoint.timeout = std::chrono::milliseconds(doc.value("timeout_ms", 120000));
        endpoint.max_retries = doc.value("max_retries", 3);
        endpoint.max_concurrency = doc.value("max_concurrency", 4);
        if (doc.value("continuation", "emulate") == "native") {
            endpoint.continuation = ModelEndpoint::Continuation::Native;
        }
        apply_endpoint_env(&endpoint);
        return std::make_unique<HttpJudge>(std::move(endpoint));
    }
    throw_error(ErrorKind::Config, "judge spec needs type scripted|replay|http");
}

}  // namespace mj
