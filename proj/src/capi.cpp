#include "mjudge.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "blank_image.hpp"
#include "core.hpp"
#include "counterfactual.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "modelio.hpp"
#include "prompting.hpp"
#include "rewards.hpp"
#include "transcript.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

thread_local std::string g_last_error;

mj_status status_of(mj::ErrorKind kind) {
    switch (kind) {
        case mj::ErrorKind::InvalidArgument: return MJ_ERR_INVALID_ARGUMENT;
        case mj::ErrorKind::Config: return MJ_ERR_CONFIG;
        case mj::ErrorKind::Data: return MJ_ERR_DATA;
        case mj::ErrorKind::Io: return MJ_ERR_IO;
        case mj::ErrorKind::Transport: return MJ_ERR_TRANSPORT;
        case mj::ErrorKind::Request: return MJ_ERR_REQUEST;
        case mj::ErrorKind::Contract: return MJ_ERR_CONTRACT;
    }
    return MJ_ERR_INTERNAL;
}

char* dup_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

std::string guess_image_mime(const std::string& url) {
    std::string path = url.substr(0, url.find('?'));
    auto ends_with = [&](const char* suffix) {
        std::string_view sv(path);
        std::string_view suffix_view(suffix);
        return sv.size() >= suffix_view.size() &&
               sv.substr(sv.size() - suffix_view.size()) == suffix_view;
    };
    if (ends_with(".jpg") || ends_with(".jpeg")) return "image/jpeg";
    if (ends_with(".webp")) return "image/webp";
    if (ends_with(".gif")) return "image/gif";
    if (ends_with(".bmp")) return "image/bmp";
    return "image/png";
}

/// Runs `body`, translating exceptions into status codes + the thread-local
/// error message.
template <typename Fn>
mj_status guarded(Fn&& body) {
    try {
        body();
        g_last_error.clear();
        return MJ_OK;
    } catch (const mj::Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const nlohmann::json::exception& e) {
        g_last_error = e.what();
        return MJ_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MJ_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return MJ_ERR_INTERNAL;
    }
}

void require(bool condition, const char* message) {
    if (!condition) mj::throw_error(mj::ErrorKind::InvalidArgument, message);
}

mj::Choice parse_label(const char* label) {
    require(label != nullptr, "label must not be NULL");
    auto choice = mj::choice_from_string(label);
    if (!choice) mj::throw_error(mj::ErrorKind::InvalidArgument, "label must be \"A\" or \"B\"");
    return *choice;
}

// Options document shared by the orchestration entry points. Owns the
// storage behind the prompt-option pointers, so it is heap-allocated and
// kept alive for the duration of the call.
struct ParsedOptions {
    mj::HarnessOptions harness;
    mj::GrpoConfig grpo;
    std::uint64_t condition_seed = 0;

    std::optional<mj::CriteriaRegistry> registry;
    std::optional<std::string> grounded_template;
    std::optional<std::string> open_ended_template;
};

std::unique_ptr<ParsedOptions> parse_options(const char* options_json) {
    auto parsed = std::make_unique<ParsedOptions>();
    if (options_json == nullptr || options_json[0] == '\0') return parsed;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(options_json);
    } catch (const nlohmann::json::exception& e) {
        mj::throw_error(mj::ErrorKind::InvalidArgument,
                        std::string("options must be a JSON object: ") + e.what());
    }
    if (!doc.is_object()) {
        mj::throw_error(mj::ErrorKind::InvalidArgument, "options must be a JSON object");
    }

    if (doc.contains("mode")) {
        auto mode = mj::prompt_mode_from_string(doc["mode"].get<std::string>());
        if (!mode) mj::throw_error(mj::ErrorKind::InvalidArgument, "unknown mode");
        parsed->harness.mode = *mode;
    }
    parsed->condition_seed = doc.value("condition_seed", 0ull);
    if (doc.contains("condition")) {
        auto condition = mj::image_condition_from_string(doc["condition"].get<std::string>(),
                                                         parsed->condition_seed);
        if (!condition) mj::throw_error(mj::ErrorKind::InvalidArgument, "unknown condition");
        parsed->harness.condition = *condition;
    }
    parsed->harness.flip_enabled = doc.value("flip", true);
    parsed->harness.parallelism = doc.value("parallelism", 1);
    parsed->harness.repeats = doc.value("repeats", 1);
    if (parsed->harness.repeats < 1) {
        mj::throw_error(mj::ErrorKind::InvalidArgument, "repeats must be >= 1");
    }
    if (doc.contains("policy")) {
        auto policy = mj::consistency_policy_from_string(doc["policy"].get<std::string>());
        if (!policy) mj::throw_error(mj::ErrorKind::InvalidArgument, "unknown policy");
        parsed->harness.policy = *policy;
    }
    parsed->harness.gen.temperature = doc.value("temperature", parsed->harness.gen.temperature);
    parsed->harness.gen.max_tokens = doc.value("max_tokens", parsed->harness.gen.max_tokens);
    if (doc.contains("seed")) parsed->harness.gen.seed = doc["seed"].get<std::uint64_t>();
    if (!parsed->harness.gen.valid()) {
        mj::throw_error(mj::ErrorKind::InvalidArgument,
                        "temperature must be >= 0 and max_tokens > 0");
    }
    if (doc.contains("lexicon_file")) {
        parsed->harness.lexicon = mj::load_lexicon_file(doc["lexicon_file"].get<std::string>());
    }
    if (doc.contains("criteria_file")) {
        parsed->registry.emplace();
        parsed->registry->set(mj::load_criteria_file(doc["criteria_file"].get<std::string>()));
        parsed->harness.prompt_options.registry = &*parsed->registry;
    }
    if (doc.contains("grounded_template_file")) {
        parsed->grounded_template =
            mj::load_template_file(doc["grounded_template_file"].get<std::string>());
        parsed->harness.prompt_options.grounded_template = &*parsed->grounded_template;
    }
    if (doc.contains("open_ended_template_file")) {
        parsed->open_ended_template =
            mj::load_template_file(doc["open_ended_template_file"].get<std::string>());
        parsed->harness.prompt_options.open_ended_template = &*parsed->open_ended_template;
    }
    parsed->grpo.group_size_n = doc.value("group_size", parsed->grpo.group_size_n);
    parsed->grpo.advantage_epsilon = doc.value("epsilon", parsed->grpo.advantage_epsilon);
    parsed->grpo.consistency_policy = parsed->harness.policy;
    if (!parsed->grpo.valid()) {
        mj::throw_error(mj::ErrorKind::InvalidArgument,
                        "group_size must be >= 1 and epsilon >= 0");
    }
    if (doc.contains("config")) parsed->harness.config_snapshot = doc["config"];
    return parsed;
}

mj::PreferenceSample sample_from_cstr(const char* sample_json) {
    require(sample_json != nullptr, "sample_json must not be NULL");
    return mj::parse_sample_json(sample_json, ".");
}

nlohmann::ordered_json chain_to_json(const mj::ParsedChain& chain) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json tags;
    for (const char* name : mj::kTagNames) {
        tags[name] = mj::to_string(chain.tag_status.at(name));
    }
    doc["tag_status"] = std::move(tags);
    doc["well_formed_count"] = chain.well_formed_count();
    doc["prefix_well_formed"] = chain.prefix_well_formed();
    nlohmann::ordered_json sections;
    sections["prompt_img_understanding"] = chain.obs_prompt;
    sections["response_a_img_understanding"] = chain.obs_a;
    sections["response_b_img_understanding"] = chain.obs_b;
    sections["response_a_claims"] = chain.claims_a;
    sections["response_b_claims"] = chain.claims_b;
    sections["response_a_verification"] = chain.verify_a;
    sections["response_b_verification"] = chain.verify_b;
    sections["evaluate_criteria"] = chain.evaluation;
    sections["scores_raw"] = chain.scores_raw;
    doc["sections"] = std::move(sections);
    if (chain.scores) {
        doc["scores"] = {{"a", chain.scores->a()}, {"b", chain.scores->b()}};
        doc["verdict"] = mj::to_string(mj::verdict_from_scores(*chain.scores).choice);
    } else {
        doc["scores"] = nullptr;
        doc["verdict"] = nullptr;
    }
    auto format = mj::format_reward(chain);
    doc["format_reward"] = {{"well_formed_count", format.well_formed_count},
                            {"value", format.value},
                            {"score_parse_ok", format.score_parse_ok}};
    return doc;
}

}  // namespace

extern "C" {

struct mj_dataset {
    mj::DatasetManifest manifest;
};

struct mj_judge {
    std::unique_ptr<mj::JudgeClient> client;
};

const char* mj_version(void) { return kVersion; }

const char* mj_status_name(mj_status status) {
    switch (status) {
        case MJ_OK: return "ok";
        case MJ_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case MJ_ERR_CONFIG: return "config_error";
        case MJ_ERR_DATA: return "data_error";
        case MJ_ERR_IO: return "io_error";
        case MJ_ERR_TRANSPORT: return "transport_error";
        case MJ_ERR_REQUEST: return "request_error";
        case MJ_ERR_CONTRACT: return "contract_violation";
        case MJ_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* mj_last_error(void) { return g_last_error.c_str(); }

void mj_string_free(char* s) { std::free(s); }

mj_status mj_parse_transcript(const char* text, char** out_json) {
    return guarded([&] {
        require(text != nullptr && out_json != nullptr, "text and out_json must not be NULL");
        *out_json = dup_string(chain_to_json(mj::parse_transcript(text)).dump(2));
    });
}

mj_status mj_format_reward(const char* text, double* out_value, int* out_well_formed_count,
                           int* out_score_ok) {
    return guarded([&] {
        require(text != nullptr, "text must not be NULL");
        auto format = mj::format_reward(mj::parse_transcript(text));
        if (out_value) *out_value = format.value;
        if (out_well_formed_count) *out_well_formed_count = format.well_formed_count;
        if (out_score_ok) *out_score_ok = format.score_parse_ok ? 1 : 0;
    });
}

mj_status mj_extract_scores(const char* text, int* out_found, int* out_score_a,
                            int* out_score_b) {
    return guarded([&] {
        require(text != nullptr && out_found != nullptr, "text and out_found must not be NULL");
        auto scores = mj::extract_scores(text);
        *out_found = scores.has_value() ? 1 : 0;
        if (scores) {
            if (out_score_a) *out_score_a = scores->a();
            if (out_score_b) *out_score_b = scores->b();
        }
    });
}

mj_status mj_composite_reward(const char* text, const char* label, int cons_bit,
                              char** out_json) {
    return guarded([&] {
        require(text != nullptr && out_json != nullptr, "text and out_json must not be NULL");
        auto reward =
            mj::composite_reward(mj::parse_transcript(text), parse_label(label), cons_bit);
        nlohmann::ordered_json doc;
        doc["r_format"] = reward.r_format;
        doc["r_correct"] = reward.r_correct;
        doc["r_cons"] = reward.r_cons;
        doc["total"] = reward.total;
        doc["zeroed_by_parse_failure"] = reward.zeroed_by_parse_failure;
        *out_json = dup_string(doc.dump(2));
    });
}

mj_status mj_group_advantages(const double* rewards, size_t count, double epsilon,
                              double* out_advantages, unsigned char* out_retained) {
    return guarded([&] {
        require(rewards != nullptr && out_advantages != nullptr,
                "rewards and out_advantages must not be NULL");
        require(count > 0, "count must be > 0");
        require(epsilon >= 0.0, "epsilon must be >= 0");
        std::vector<double> values(rewards, rewards + count);
        auto result = mj::group_advantages(values, epsilon);
        for (size_t i = 0; i < count; ++i) {
            out_advantages[i] = result.advantages[i];
            if (out_retained) out_retained[i] = result.retained[i] ? 1 : 0;
        }
    });
}

mj_status mj_rewrite_prefix(const char* transcript_text, char** out_prefix) {
    return guarded([&] {
        require(transcript_text != nullptr && out_prefix != nullptr,
                "transcript_text and out_prefix must not be NULL");
        *out_prefix = dup_string(mj::rewrite_prefix(mj::parse_transcript(transcript_text)));
    });
}

mj_status mj_flip_sample(const char* sample_json, char** out_sample_json) {
    return guarded([&] {
        require(out_sample_json != nullptr, "out_sample_json must not be NULL");
        *out_sample_json = dup_string(mj::sample_to_json(mj::flip_sample(sample_from_cstr(sample_json))));
    });
}

mj_status mj_check_inversion(const char* original_verdict, const char* flipped_verdict,
                             const char* label, const char* policy, int* out_bit) {
    return guarded([&] {
        require(out_bit != nullptr, "out_bit must not be NULL");
        require(policy != nullptr, "policy must not be NULL");
        auto parsed_policy = mj::consistency_policy_from_string(policy);
        if (!parsed_policy) {
            mj::throw_error(mj::ErrorKind::InvalidArgument,
                            "policy must be \"inversion\" or \"strict\"");
        }
        *out_bit = mj::check_inversion(mj::Verdict{parse_label(original_verdict)},
                                       mj::Verdict{parse_label(flipped_verdict)},
                                       parse_label(label), *parsed_policy);
    });
}

mj_status mj_build_judge_prompt(const char* sample_json, const char* mode,
                                char** out_messages_json) {
    return guarded([&] {
        require(mode != nullptr && out_messages_json != nullptr,
                "mode and out_messages_json must not be NULL");
        auto parsed_mode = mj::prompt_mode_from_string(mode);
        if (!parsed_mode) {
            mj::throw_error(mj::ErrorKind::InvalidArgument,
                            "mode must be \"grounded\" or \"open_ended\"");
        }
        auto messages = mj::build_judge_prompt(sample_from_cstr(sample_json), *parsed_mode);
        *out_messages_json = dup_string(mj::encode_messages(messages).dump(2));
    });
}

mj_status mj_dataset_open(const char* path, mj_dataset** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "path and out must not be NULL");
        auto dataset = std::make_unique<mj_dataset>();
        dataset->manifest = mj::load_dataset(path);
        *out = dataset.release();
    });
}

void mj_dataset_close(mj_dataset* dataset) { delete dataset; }

mj_status mj_dataset_info(const mj_dataset* dataset, char** out_json) {
    return guarded([&] {
        require(dataset != nullptr && out_json != nullptr,
                "dataset and out_json must not be NULL");
        nlohmann::ordered_json doc;
        doc["path"] = dataset->manifest.path;
        doc["n_samples"] = dataset->manifest.samples.size();
        nlohmann::ordered_json tasks = nlohmann::ordered_json::object();
        for (const auto& [task, count] : dataset->manifest.subtask_counts) {
            tasks[mj::to_string(task)] = count;
        }
        doc["subtask_counts"] = std::move(tasks);
        nlohmann::ordered_json labels = nlohmann::ordered_json::object();
        for (const auto& [label, count] : dataset->manifest.label_counts) {
            labels[mj::to_string(label)] = count;
        }
        doc["label_counts"] = std::move(labels);
        *out_json = dup_string(doc.dump(2));
    });
}

mj_status mj_dataset_apply_condition(const mj_dataset* dataset, const char* condition,
                                     uint64_t seed, mj_dataset** out) {
    return guarded([&] {
        require(dataset != nullptr && condition != nullptr && out != nullptr,
                "dataset, condition and out must not be NULL");
        auto parsed = mj::image_condition_from_string(condition, seed);
        if (!parsed) {
            mj::throw_error(mj::ErrorKind::InvalidArgument,
                            "condition must be real|shuffled|blank");
        }
        auto next = std::make_unique<mj_dataset>();
        next->manifest = mj::apply_condition(dataset->manifest, *parsed);
        *out = next.release();
    });
}

mj_status mj_dataset_subset(const mj_dataset* dataset, int per_task, uint64_t seed,
                            mj_dataset** out) {
    return guarded([&] {
        require(dataset != nullptr && out != nullptr, "dataset and out must not be NULL");
        auto next = std::make_unique<mj_dataset>();
        next->manifest = mj::select_subset(dataset->manifest, per_task, seed);
        *out = next.release();
    });
}

mj_status mj_dataset_sample(const mj_dataset* dataset, const char* sample_id,
                            char** out_sample_json) {
    return guarded([&] {
        require(dataset != nullptr && out_sample_json != nullptr,
                "dataset and out_sample_json must not be NULL");
        const mj::PreferenceSample* found = nullptr;
        if (sample_id == nullptr || sample_id[0] == '\0') {
            found = &dataset->manifest.samples.front();
        } else {
            for (const auto& sample : dataset->manifest.samples) {
                if (sample.id == sample_id) {
                    found = &sample;
                    break;
                }
            }
        }
        if (!found) {
            mj::throw_error(mj::ErrorKind::Data,
                            std::string("no sample with id ") + (sample_id ? sample_id : ""));
        }
        *out_sample_json = dup_string(mj::sample_to_json(*found));
    });
}

mj_status mj_dataset_validate(const char* path, char** out_report_json) {
    return guarded([&] {
        require(path != nullptr, "path must not be NULL");
        nlohmann::ordered_json doc;
        try {
            auto manifest = mj::load_dataset(path);
            doc["valid"] = true;
            doc["n_samples"] = manifest.samples.size();
            nlohmann::ordered_json labels = nlohmann::ordered_json::object();
            for (const auto& [label, count] : manifest.label_counts) {
                labels[mj::to_string(label)] = count;
            }
            doc["label_counts"] = std::move(labels);
            if (out_report_json) *out_report_json = dup_string(doc.dump(2));
        } catch (const mj::Error& e) {
            if (e.kind() != mj::ErrorKind::Data) throw;
            doc["valid"] = false;
            doc["problems"] = e.what();
            if (out_report_json) *out_report_json = dup_string(doc.dump(2));
            throw;
        }
    });
}

mj_status mj_judge_open(const char* spec, mj_judge** out) {
    return guarded([&] {
        require(spec != nullptr && out != nullptr, "spec and out must not be NULL");
        auto judge = std::make_unique<mj_judge>();
        judge->client = mj::open_judge(spec);
        *out = judge.release();
    });
}

void mj_judge_close(mj_judge* judge) { delete judge; }

mj_status mj_generate(mj_judge* judge, const char* messages_json, const char* gen_json,
                      const char* sample_id, const char* kind, char** out_text) {
    return guarded([&] {
        require(judge != nullptr && messages_json != nullptr && out_text != nullptr,
                "judge, messages_json and out_text must not be NULL");
        nlohmann::json doc = nlohmann::json::parse(messages_json);
        std::vector<mj::ChatMessage> messages;
        for (const auto& entry : doc) {
            mj::ChatMessage message;
            std::string role = entry.value("role", "user");
            if (role == "system") {
                message.role = mj::ChatMessage::Role::System;
            } else if (role == "assistant") {
                message.role = mj::ChatMessage::Role::Assistant;
            } else {
                message.role = mj::ChatMessage::Role::User;
            }
            const auto& content = entry.at("content");
            if (content.is_string()) {
                message.content.push_back(mj::ContentPart::make_text(content.get<std::string>()));
            } else {
                for (const auto& part : content) {
                    std::string type = part.value("type", "text");
                    if (type == "text") {
                        message.content.push_back(
                            mj::ContentPart::make_text(part.value("text", "")));
                    } else if (type == "image_url") {
                        std::string url = part.at("image_url").value("url", "");
                        if (url.rfind("data:", 0) == 0) {
                            auto comma = url.find(',');
                            auto semi = url.find(";base64", 5);
                            require(comma != std::string::npos && semi != std::string::npos,
                                    "image_url must be a base64 data URI");
                            message.content.push_back(mj::ContentPart::make_image(
                                mj::ImageRef::from_base64(url.substr(comma + 1),
                                                          url.substr(5, semi - 5))));
                        } else {
                            message.content.push_back(mj::ContentPart::make_image(
                                mj::ImageRef::from_url(url, guess_image_mime(url))));
                        }
                    }
                }
            }
            messages.push_back(std::move(message));
        }

        mj::GenerationConfig gen;
        if (gen_json != nullptr && gen_json[0] != '\0') {
            nlohmann::json gen_doc = nlohmann::json::parse(gen_json);
            gen.temperature = gen_doc.value("temperature", gen.temperature);
            gen.max_tokens = gen_doc.value("max_tokens", gen.max_tokens);
            if (gen_doc.contains("seed")) gen.seed = gen_doc["seed"].get<std::uint64_t>();
        }
        mj::RequestContext context{sample_id ? sample_id : "", kind ? kind : ""};
        *out_text = dup_string(judge->client->generate(messages, gen, context));
    });
}

mj_status mj_judge_once(mj_judge* judge, const char* sample_json, const char* options_json,
                        char** out_record_json) {
    return guarded([&] {
        require(judge != nullptr && out_record_json != nullptr,
                "judge and out_record_json must not be NULL");
        auto options = parse_options(options_json);
        auto record =
            mj::judge_once(sample_from_cstr(sample_json), *judge->client, options->harness);
        *out_record_json = dup_string(mj::judgment_to_json(record).dump(2));
    });
}

mj_status mj_evaluate(mj_judge* judge, const mj_dataset* dataset, const char* options_json,
                      char** out_report_json) {
    return guarded([&] {
        require(judge != nullptr && dataset != nullptr && out_report_json != nullptr,
                "judge, dataset and out_report_json must not be NULL");
        auto options = parse_options(options_json);
        auto report = mj::evaluate(dataset->manifest, *judge->client, options->harness);
        *out_report_json = dup_string(mj::report_to_json(report).dump(2));
    });
}

mj_status mj_ablation(mj_judge* judge, const mj_dataset* dataset, const char* options_json,
                      char** out_report_json) {
    return guarded([&] {
        require(judge != nullptr && dataset != nullptr && out_report_json != nullptr,
                "judge, dataset and out_report_json must not be NULL");
        auto options = parse_options(options_json);
        auto report = mj::ablation_experiment(dataset->manifest, *judge->client, options->harness);
        *out_report_json = dup_string(mj::ablation_to_json(report).dump(2));
    });
}

mj_status mj_conditions(mj_judge* judge, const mj_dataset* dataset, const char* options_json,
                        char** out_report_json) {
    return guarded([&] {
        require(judge != nullptr && dataset != nullptr && out_report_json != nullptr,
                "judge, dataset and out_report_json must not be NULL");
        auto options = parse_options(options_json);
        auto report = mj::condition_experiment(dataset->manifest, *judge->client, options->harness,
                                               options->condition_seed);
        *out_report_json = dup_string(mj::conditions_to_json(report).dump(2));
    });
}

mj_status mj_grpo_export(mj_judge* judge, const mj_dataset* dataset, const char* options_json,
                         char** out_jsonl, char** out_skipped_json) {
    return guarded([&] {
        require(judge != nullptr && dataset != nullptr && out_jsonl != nullptr,
                "judge, dataset and out_jsonl must not be NULL");
        auto options = parse_options(options_json);
        std::string jsonl;
        nlohmann::ordered_json incomplete = nlohmann::ordered_json::array();
        for (const auto& sample : dataset->manifest.samples) {
            auto run = mj::grpo_sample_run(sample, *judge->client, options->grpo, options->harness);
            if (run.incomplete) {
                incomplete.push_back({{"sample_id", run.sample_id}, {"error", run.failure}});
                continue;
            }
            jsonl += mj::export_group_jsonl(run.sample_id, run.group);
        }
        *out_jsonl = dup_string(jsonl);
        if (out_skipped_json) *out_skipped_json = dup_string(incomplete.dump(2));
    });
}

mj_status mj_report_to_csv(const char* report_json, char** out_csv) {
    return guarded([&] {
        require(report_json != nullptr && out_csv != nullptr,
                "report_json and out_csv must not be NULL");
        *out_csv = dup_string(mj::render_report_csv(nlohmann::json::parse(report_json)));
    });
}

mj_status mj_report_to_markdown(const char* report_json, char** out_markdown) {
    return guarded([&] {
        require(report_json != nullptr && out_markdown != nullptr,
                "report_json and out_markdown must not be NULL");
        *out_markdown = dup_string(mj::render_report_markdown(nlohmann::json::parse(report_json)));
    });
}

mj_status mj_blank_image(const unsigned char** out_bytes, size_t* out_size) {
    return guarded([&] {
        require(out_bytes != nullptr && out_size != nullptr,
                "out_bytes and out_size must not be NULL");
        auto png = mj::blank_image_png();
        *out_bytes = png.data();
        *out_size = png.size();
    });
}

}  // extern "C"
