#include "core.hpp"

namespace mj {

const char* to_string(TaskKind task) {
    switch (task) {
        case TaskKind::T2i: return "t2i";
        case TaskKind::Editing: return "editing";
        case TaskKind::Interleaved: return "interleaved";
        case TaskKind::Reasoning: return "reasoning";
    }
    return "unknown";
}

std::optional<TaskKind> task_from_string(std::string_view name) {
    if (name == "t2i") return TaskKind::T2i;
    if (name == "editing") return TaskKind::Editing;
    if (name == "interleaved") return TaskKind::Interleaved;
    if (name == "reasoning") return TaskKind::Reasoning;
    return std::nullopt;
}

std::vector<TaskKind> all_task_kinds() {
    return {TaskKind::T2i, TaskKind::Editing, TaskKind::Interleaved, TaskKind::Reasoning};
}

const char* to_string(Choice choice) {
    return choice == Choice::A ? "A" : "B";
}

std::optional<Choice> choice_from_string(std::string_view name) {
    if (name == "A") return Choice::A;
    if (name == "B") return Choice::B;
    return std::nullopt;
}

Choice flip_label(Choice label) {
    return label == Choice::A ? Choice::B : Choice::A;
}

ImageRef ImageRef::from_file(std::string path, std::string media_type) {
    ImageRef ref;
    ref.source = Source::FilePath;
    ref.value = std::move(path);
    ref.media_type = std::move(media_type);
    return ref;
}

ImageRef ImageRef::from_url(std::string url, std::string media_type) {
    ImageRef ref;
    ref.source = Source::Url;
    ref.value = std::move(url);
    ref.media_type = std::move(media_type);
    return ref;
}

ImageRef ImageRef::from_base64(std::string payload, std::string media_type) {
    ImageRef ref;
    ref.source = Source::Base64;
    ref.value = std::move(payload);
    ref.media_type = std::move(media_type);
    return ref;
}

ContentPart ContentPart::make_text(std::string text) {
    ContentPart part;
    part.kind = Kind::Text;
    part.text = std::move(text);
    return part;
}

ContentPart ContentPart::make_image(ImageRef ref) {
    ContentPart part;
    part.kind = Kind::Image;
    part.image = std::move(ref);
    return part;
}

std::optional<ScorePair> ScorePair::make(int score_a, int score_b) {
    if (score_a < kMin || score_a > kMax) return std::nullopt;
    if (score_b < kMin || score_b > kMax) return std::nullopt;
    if (score_a == score_b) return std::nullopt;
    return ScorePair(score_a, score_b);
}

Verdict verdict_from_scores(const ScorePair& scores) {
    return Verdict{scores.a() > scores.b() ? Choice::A : Choice::B};
}

const char* to_string(ConsistencyPolicy policy) {
    return policy == ConsistencyPolicy::Inversion ? "inversion" : "strict";
}

std::optional<ConsistencyPolicy> consistency_policy_from_string(std::string_view name) {
    if (name == "inversion") return ConsistencyPolicy::Inversion;
    if (name == "strict") return ConsistencyPolicy::Strict;
    return std::nullopt;
}

}  // namespace mj
