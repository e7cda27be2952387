#include "prompting.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "transcript.hpp"

namespace mj {

namespace {

const std::string kGroundedTemplate = R"TPL(You are an expert in multimodal quality analysis and
generative AI evaluation. Your role is to act as an
objective judge for comparing two AI-generated responses
to the same prompt. You will evaluate which response is
better based on a comprehensive rubric.

**Reason through your evaluation using this structure:**
1. Extract key observations from any provided image(s).
2. Extract verifiable claims from each response.
3. Check whether each claim is consistent with your
   observations.
4. Using your consistency verification, evaluate both
   responses against each evaluation criterion to
   determine which performs better.
5. Provide final scores (no ties allowed).

**Evaluation Criteria:**
{EVALUATION_CRITERIA}

**REQUIRED OUTPUT FORMAT:**

<prompt_img_understanding>
[Describe what the prompt image shows (if it exists)]
</prompt_img_understanding>

<response_a_img_understanding>
[Describe what response A image shows (if it exists)]
</response_a_img_understanding>

<response_b_img_understanding>
[Describe what response B image shows (if it exists)]
</response_b_img_understanding>

<response_claims>
  <response_a_claims>
  [Verifiable claims from response A]
  </response_a_claims>

  <response_b_claims>
  [Verifiable claims from response B]
  </response_b_claims>
</response_claims>

<consistency_verification>
  <response_a_verification>
  [Verify Response A's claims against observations]
  </response_a_verification>

  <response_b_verification>
  [Verify Response B's claims against observations]
  </response_b_verification>
</consistency_verification>

<evaluate_criteria>
[For each criterion, evaluate both responses and explain
which performs better based on observations and
verification.]
</evaluate_criteria>

<scores>
\boxed{response_A_score, response_B_score}
</scores>

**Rules:**
- Scores are integers from 1 to 10 (higher is better)
- Scores must be different (no ties allowed)
- Higher accuracy and consistency = higher score
- Check for errors, hallucinations, and missing
  requirements
)TPL";

// Open-ended baseline: same judging task with no structural guidance, but
// the boxed score line stays mandatory so outputs remain machine-readable.
const std::string kOpenEndedTemplate = R"TPL(You are an expert in multimodal quality analysis and
generative AI evaluation. Your role is to act as an
objective judge for comparing two AI-generated responses
to the same prompt. Compare the responses and select the
better one.

Reason about the comparison however you see fit. When you
are done, give final scores for both responses on the last
line, in exactly this format:

\boxed{response_A_score, response_B_score}

**Rules:**
- Scores are integers from 1 to 10 (higher is better)
- Scores must be different (no ties allowed)
)TPL";

CriteriaSet make_t2i_criteria() {
    return CriteriaSet{
        TaskKind::T2i,
        {
            {"faithfulness_to_prompt",
             "Which response better adheres to the composition, objects, attributes, and "
             "spatial relationships described in the text prompt?"},
            {"text_rendering",
             "If either response contains rendered text, which one has better text quality "
             "(spelling, legibility, integration)? If none, state \"Not Applicable.\""},
            {"input_faithfulness",
             "If an input image is provided, which response better respects and incorporates "
             "the key elements and style of that source image? If none, state \"Not "
             "Applicable.\""},
            {"image_consistency",
             "If multiple images are generated, which response has better visual consistency "
             "between images? If none, state \"Not Applicable.\""},
            {"text_image_alignment",
             "Which response has better alignment between text descriptions and visual "
             "content?"},
            {"text_quality",
             "If text was generated, which response has better linguistic quality "
             "(correctness, coherence, grammar, tone)?"},
            {"overall_quality",
             "Which response has better general technical and aesthetic quality, realism, "
             "coherence, and fewer visual artifacts?"},
        },
    };
}

CriteriaSet make_editing_criteria() {
    return CriteriaSet{
        TaskKind::Editing,
        {
            {"text_faithfulness",
             "Which response better adheres to the text editing instruction? Consider how "
             "well each response follows the specific editing instructions (e.g., adding "
             "objects, changing colors, modifying scenes)."},
            {"image_faithfulness",
             "Which response better preserves important aspects of the original image "
             "(composition, lighting, style, background elements) while making the requested "
             "changes?"},
            {"overall_image_quality",
             "Which response has better general technical and aesthetic quality, with fewer "
             "visual artifacts or inconsistencies introduced during editing?"},
            {"text_rendering",
             "If either response contains rendered text, which one has better text quality "
             "(spelling, legibility, integration)? If none, state \"Not Applicable.\""},
        },
    };
}

CriteriaSet make_interleaved_criteria() {
    return CriteriaSet{
        TaskKind::Interleaved,
        {
            {"text_faithfulness", "Which response better adheres to the text instruction?"},
            {"image_faithfulness",
             "Which response better respects and incorporates the key elements of the input "
             "image? If no input image, state \"Not Applicable.\""},
            {"overall_image_quality",
             "Which response has better overall quality of generated images?"},
            {"congruence",
             "If multiple images are generated, which response has better cross-generation "
             "visual consistency? If none, state \"Not Applicable.\""},
            {"text_image_alignment",
             "Which response has better generated text-image alignment?"},
            {"text_quality",
             "If text was generated, which response has better linguistic quality? If none, "
             "state \"Not Applicable.\""},
            {"text_rendering",
             "If either response contains rendered text within images, which has better "
             "correctness? If none, state \"Not Applicable.\""},
        },
    };
}

CriteriaSet make_reasoning_criteria() {
    return CriteriaSet{
        TaskKind::Reasoning,
        {
            {"visual_understanding",
             "Which response demonstrates better comprehension of the visual content? "
             "Consider accuracy in identifying objects, spatial relationships, colors, "
             "quantities, and other visual details."},
            {"reasoning_quality",
             "Which response shows stronger logical reasoning and analytical thinking? "
             "Evaluate the coherence of arguments, validity of inferences, and ability to "
             "connect visual observations to conclusions."},
            {"accuracy",
             "Which response provides more accurate and factually correct information based "
             "on the provided images and context?"},
            {"completeness",
             "Which response more thoroughly addresses all aspects of the question?"},
            {"clarity",
             "Which response communicates its analysis more clearly and effectively?"},
            {"depth",
             "Which response provides deeper insight and analysis beyond surface-level "
             "observations?"},
            {"helpfulness",
             "Which response would be more helpful to someone trying to understand the "
             "visual content or solve the reasoning problem?"},
        },
    };
}

std::string joined_text(const std::vector<ContentPart>& parts) {
    std::string out;
    for (const auto& part : parts) {
        if (part.kind != ContentPart::Kind::Text) continue;
        if (!out.empty()) out += "\n";
        out += part.text;
    }
    return out;
}

std::vector<ImageRef> images_of(const std::vector<ContentPart>& parts) {
    std::vector<ImageRef> images;
    for (const auto& part : parts) {
        if (part.kind == ContentPart::Kind::Image) images.push_back(part.image);
    }
    return images;
}

void append_captioned_images(std::vector<ContentPart>* content, const std::string& origin,
                             const std::vector<ImageRef>& images) {
    for (std::size_t k = 0; k < images.size(); ++k) {
        content->push_back(
            ContentPart::make_text(origin + " image " + std::to_string(k + 1) + ":"));
        content->push_back(ContentPart::make_image(images[k]));
    }
}

std::string replace_placeholder(const std::string& text, const std::string& placeholder,
                                const std::string& value) {
    std::size_t pos = text.find(placeholder);
    if (pos == std::string::npos) {
        throw_error(ErrorKind::Config, "template is missing placeholder " + placeholder);
    }
    std::string out = text;
    out.replace(pos, placeholder.size(), value);
    return out;
}

}  // namespace

const CriteriaSet& builtin_criteria(TaskKind task) {
    static const CriteriaSet t2i = make_t2i_criteria();
    static const CriteriaSet editing = make_editing_criteria();
    static const CriteriaSet interleaved = make_interleaved_criteria();
    static const CriteriaSet reasoning = make_reasoning_criteria();
    switch (task) {
        case TaskKind::T2i: return t2i;
        case TaskKind::Editing: return editing;
        case TaskKind::Interleaved: return interleaved;
        case TaskKind::Reasoning: return reasoning;
    }
    throw_error(ErrorKind::Config, "unknown task kind");
}

CriteriaSet load_criteria_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_error(ErrorKind::Io, "cannot open criteria file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw_error(ErrorKind::Config, "criteria file " + path + ": " + e.what());
    }
    CriteriaSet set;
    auto task = task_from_string(doc.value("task", ""));
    if (!task) throw_error(ErrorKind::Config, "criteria file " + path + ": unknown task");
    set.task = *task;
    if (!doc.contains("criteria") || !doc["criteria"].is_array() || doc["criteria"].empty()) {
        throw_error(ErrorKind::Config, "criteria file " + path + ": empty criteria list");
    }
    for (const auto& entry : doc["criteria"]) {
        Criterion criterion;
        criterion.name = entry.value("name", "");
        criterion.description = entry.value("description", "");
        if (criterion.name.empty() || criterion.description.empty()) {
            throw_error(ErrorKind::Config,
                        "criteria file " + path + ": criterion needs name and description");
        }
        for (const auto& existing : set.criteria) {
            if (existing.name == criterion.name) {
                throw_error(ErrorKind::Config,
                            "criteria file " + path + ": duplicate criterion " + criterion.name);
            }
        }
        set.criteria.push_back(std::move(criterion));
    }
    return set;
}

CriteriaRegistry::CriteriaRegistry() {
    for (TaskKind task : all_task_kinds()) sets_[task] = builtin_criteria(task);
}

void CriteriaRegistry::set(CriteriaSet set) {
    sets_[set.task] = std::move(set);
}

const CriteriaSet& CriteriaRegistry::get(TaskKind task) const {
    auto it = sets_.find(task);
    if (it == sets_.end()) {
        throw_error(ErrorKind::Config,
                    std::string("no criteria configured for task ") + to_string(task));
    }
    return it->second;
}

std::string render_criteria(const CriteriaSet& set) {
    std::string out;
    for (std::size_t i = 0; i < set.criteria.size(); ++i) {
        if (i > 0) out += "\n";
        out += std::to_string(i + 1) + ". **" + set.criteria[i].name +
               "**: " + set.criteria[i].description;
    }
    return out;
}

const char* to_string(PromptMode mode) {
    return mode == PromptMode::Grounded ? "grounded" : "open_ended";
}

std::optional<PromptMode> prompt_mode_from_string(std::string_view name) {
    if (name == "grounded") return PromptMode::Grounded;
    if (name == "open_ended" || name == "open-ended") return PromptMode::OpenEnded;
    return std::nullopt;
}

const char* to_string(ChatMessage::Role role) {
    switch (role) {
        case ChatMessage::Role::System: return "system";
        case ChatMessage::Role::User: return "user";
        case ChatMessage::Role::Assistant: return "assistant";
    }
    return "unknown";
}

const std::string& grounded_template() { return kGroundedTemplate; }
const std::string& open_ended_template() { return kOpenEndedTemplate; }

std::string load_template_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_error(ErrorKind::Io, "cannot open template file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<ChatMessage> build_judge_prompt(const PreferenceSample& sample, PromptMode mode,
                                            const PromptOptions& options) {
    std::string instructions;
    if (mode == PromptMode::Grounded) {
        const std::string& tpl =
            options.grounded_template ? *options.grounded_template : kGroundedTemplate;
        const CriteriaSet& criteria = options.registry
                                          ? options.registry->get(sample.task)
                                          : builtin_criteria(sample.task);
        instructions =
            replace_placeholder(tpl, "{EVALUATION_CRITERIA}", render_criteria(criteria));
    } else {
        instructions =
            options.open_ended_template ? *options.open_ended_template : kOpenEndedTemplate;
    }

    std::string body = instructions;
    body += "\n---\n\n**Prompt:**\n";
    body += joined_text(sample.prompt);
    body += "\n\n**Response A:**\n";
    body += joined_text(sample.response_a);
    body += "\n\n**Response B:**\n";
    body += joined_text(sample.response_b);

    ChatMessage message;
    message.role = ChatMessage::Role::User;
    message.content.push_back(ContentPart::make_text(std::move(body)));
    append_captioned_images(&message.content, "Prompt", images_of(sample.prompt));
    append_captioned_images(&message.content, "Response A", images_of(sample.response_a));
    append_captioned_images(&message.content, "Response B", images_of(sample.response_b));

    return {std::move(message)};
}

std::vector<ChatMessage> build_continuation_prompt(const PreferenceSample& flipped_sample,
                                                   const std::string& rewritten_prefix,
                                                   const PromptOptions& options) {
    static const std::string kBoundary = "</consistency_verification>";
    if (rewritten_prefix.size() < kBoundary.size() ||
        rewritten_prefix.compare(rewritten_prefix.size() - kBoundary.size(), kBoundary.size(),
                                 kBoundary) != 0) {
        throw_error(ErrorKind::Contract,
                    "continuation prefix must end at the consistency_verification close tag");
    }
    for (const char* tag : {"evaluate_criteria", "scores"}) {
        if (rewritten_prefix.find("<" + std::string(tag) + ">") != std::string::npos ||
            rewritten_prefix.find("</" + std::string(tag) + ">") != std::string::npos) {
            throw_error(ErrorKind::Contract,
                        std::string("continuation prefix must not contain ") + tag + " content");
        }
    }

    auto messages = build_judge_prompt(flipped_sample, PromptMode::Grounded, options);
    ChatMessage partial;
    partial.role = ChatMessage::Role::Assistant;
    partial.content.push_back(ContentPart::make_text(rewritten_prefix));
    messages.push_back(std::move(partial));
    return messages;
}

void validate_messages(const std::vector<ChatMessage>& messages) {
    if (messages.empty()) throw_error(ErrorKind::InvalidArgument, "empty message list");
    std::size_t i = 0;
    if (messages[0].role == ChatMessage::Role::System) i = 1;
    if (i >= messages.size()) {
        throw_error(ErrorKind::InvalidArgument, "message list has no user turn");
    }
    ChatMessage::Role expected = ChatMessage::Role::User;
    for (; i < messages.size(); ++i) {
        if (messages[i].role != expected) {
            throw_error(ErrorKind::InvalidArgument,
                        "messages must alternate user/assistant after an optional system turn");
        }
        expected = expected == ChatMessage::Role::User ? ChatMessage::Role::Assistant
                                                       : ChatMessage::Role::User;
    }
    // Ending on either role is legal: user = fresh request, assistant =
    // partial prefix to continue.
}

}  // namespace mj
