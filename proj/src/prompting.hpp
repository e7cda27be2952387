#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace mj {

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

struct Criterion {
    std::string name;
    std::string description;
};

/// Ordered task-specific rubric substituted into the judge template.
struct CriteriaSet {
    TaskKind task = TaskKind::T2i;
    std::vector<Criterion> criteria;
};

/// Built-in rubric for each task kind (7 for t2i, 4 for editing, 7 for
/// interleaved, 7 for reasoning).
const CriteriaSet& builtin_criteria(TaskKind task);

/// Loads a rubric from a JSON file: {"task": "...", "criteria":
/// [{"name": "...", "description": "..."}]}. Names must be unique.
CriteriaSet load_criteria_file(const std::string& path);

/// Task -> rubric table, seeded with the built-ins. Custom rubrics replace
/// the entry for their task.
class CriteriaRegistry {
public:
    CriteriaRegistry();

    void set(CriteriaSet set);
    const CriteriaSet& get(TaskKind task) const;  // throws Config if absent

private:
    std::map<TaskKind, CriteriaSet> sets_;
};

std::string render_criteria(const CriteriaSet& set);

// ---------------------------------------------------------------------------
// Prompt construction
// ---------------------------------------------------------------------------

enum class PromptMode { Grounded, OpenEnded };

const char* to_string(PromptMode mode);
std::optional<PromptMode> prompt_mode_from_string(std::string_view name);

struct ChatMessage {
    enum class Role { System, User, Assistant };

    Role role = Role::User;
    std::vector<ContentPart> content;

    bool operator==(const ChatMessage&) const = default;
};

const char* to_string(ChatMessage::Role role);

/// Embedded template texts (also shipped under templates/ as versioned
/// files; the two must stay byte-identical).
const std::string& grounded_template();
const std::string& open_ended_template();

/// Reads a replacement template from disk. It must contain the
/// {EVALUATION_CRITERIA} placeholder when used in grounded mode.
std::string load_template_file(const std::string& path);

struct PromptOptions {
    const CriteriaRegistry* registry = nullptr;        // defaults to built-ins
    const std::string* grounded_template = nullptr;    // defaults to embedded
    const std::string* open_ended_template = nullptr;  // defaults to embedded
};

/// Renders the judging request for one sample: a single user message whose
/// first part is the instruction text (template + criteria + prompt/response
/// texts) followed by captioned image parts in prompt, A, B order.
std::vector<ChatMessage> build_judge_prompt(const PreferenceSample& sample, PromptMode mode,
                                            const PromptOptions& options = {});

/// Judge prompt for the flipped sample plus a partial assistant message
/// holding the rewritten reasoning prefix; the model continues from there.
/// The prefix must end exactly at the consistency_verification closing tag
/// and must not contain evaluation or scores tags.
std::vector<ChatMessage> build_continuation_prompt(const PreferenceSample& flipped_sample,
                                                   const std::string& rewritten_prefix,
                                                   const PromptOptions& options = {});

/// System-optional, user/assistant alternating, ending in a user message or
/// a partial assistant prefix. Throws InvalidArgument otherwise.
void validate_messages(const std::vector<ChatMessage>& messages);

}  // namespace mj
