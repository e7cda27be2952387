// mj — command line front end for the mjudge library.
//
// Subcommands: judge, eval, ablation, conditions, grpo-rewards, flip, parse,
// validate. Exit codes: 0 success, 1 usage, 2 data/config error, 3
// transport error. Everything runs through the C API in mjudge.h.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mjudge.h"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitTransport = 3;

int exit_code_for(mj_status status) {
    switch (status) {
        case MJ_OK: return kExitOk;
        case MJ_ERR_TRANSPORT:
        case MJ_ERR_REQUEST: return kExitTransport;
        default: return kExitData;
    }
}

[[noreturn]] void fail(mj_status status) {
    std::cerr << "error (" << mj_status_name(status) << "): " << mj_last_error() << "\n";
    std::exit(exit_code_for(status));
}

void check(mj_status status) {
    if (status != MJ_OK) fail(status);
}

struct OwnedString {
    char* value = nullptr;
    ~OwnedString() { mj_string_free(value); }
    std::string str() const { return value ? std::string(value) : std::string(); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        std::exit(kExitData);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(kExitData);
    }
    out << content;
}

// ---------------------------------------------------------------------------
// Layered run configuration: flag > environment > config file > default.
// Every resolved value is recorded with its source layer and embedded into
// reports (secrets excluded).
// ---------------------------------------------------------------------------

class RunConfig {
public:
    void load_file(const std::string& path) {
        if (path.empty()) return;
        try {
            file_ = json::parse(read_file(path));
        } catch (const json::exception& e) {
            std::cerr << "error: config file " << path << ": " << e.what() << "\n";
            std::exit(kExitData);
        }
        if (!file_.is_object()) {
            std::cerr << "error: config file must hold a JSON object\n";
            std::exit(kExitData);
        }
        file_path_ = path;
    }

    template <typename T>
    T resolve(const std::string& key, bool flag_given, const T& flag_value, const char* env_name,
              const T& fallback) {
        if (flag_given) return record(key, flag_value, "flag");
        if (env_name != nullptr) {
            if (const char* env = std::getenv(env_name)) {
                return record(key, parse_env<T>(env), std::string("env:") + env_name);
            }
        }
        if (file_.contains(key)) {
            try {
                return record(key, file_[key].get<T>(), "file:" + file_path_);
            } catch (const json::exception& e) {
                std::cerr << "error: config key " << key << ": " << e.what() << "\n";
                std::exit(kExitData);
            }
        }
        return record(key, fallback, "default");
    }

    void note(const std::string& key, const json& value, const std::string& source) {
        resolved_[key] = {{"value", value}, {"source", source}};
    }

    json snapshot() const { return resolved_; }

private:
    template <typename T>
    static T parse_env(const std::string& text) {
        if constexpr (std::is_same_v<T, std::string>) {
            return text;
        } else {
            return json::parse(text).get<T>();
        }
    }

    template <typename T>
    T record(const std::string& key, const T& value, const std::string& source) {
        resolved_[key] = {{"value", value}, {"source", source}};
        return value;
    }

    json file_ = json::object();
    std::string file_path_;
    json resolved_ = json::object();
};

// ---------------------------------------------------------------------------
// Shared option bundle
// ---------------------------------------------------------------------------

struct CommonFlags {
    std::string config_file;
    std::string dataset;
    std::string model;
    std::string base_url;
    std::string mode = "grounded";
    std::string condition = "real";
    std::string policy = "inversion";
    bool flip = true;
    int group_size = 32;
    double epsilon = 0.01;
    int parallelism = 4;
    std::uint64_t seed = 0;
    int subset = 500;
    bool full = false;
    int repeats = 1;
    double temperature = 0.7;
    int max_tokens = 6144;
    std::string out;
    std::string csv;
    std::string md;
    std::string sample_id;
    std::string criteria_file;
    std::string lexicon_file;
    std::string grounded_template_file;
    std::string open_ended_template_file;
};

void add_model_flags(CLI::App* cmd, CommonFlags* flags) {
    cmd->add_option("--model", flags->model,
                    "Judge: model name (HTTP), scripted:content_oracle, "
                    "scripted:position_biased_a, scripted:random:SEED, or replay:DIR");
    cmd->add_option("--base-url", flags->base_url, "Chat-completions base URL (or MJ_BASE_URL)");
    cmd->add_option("--temperature", flags->temperature, "Sampling temperature");
    cmd->add_option("--max-tokens", flags->max_tokens, "Completion token budget");
}

void add_run_flags(CLI::App* cmd, CommonFlags* flags) {
    cmd->add_option("--mode", flags->mode, "Prompting mode")
        ->check(CLI::IsMember({"grounded", "open-ended", "open_ended"}));
    cmd->add_option("--condition", flags->condition, "Image condition")
        ->check(CLI::IsMember({"real", "shuffled", "blank"}));
    cmd->add_flag("--flip,!--no-flip", flags->flip, "Run the counterfactual flip");
    cmd->add_option("--consistency-policy", flags->policy, "Consistency policy")
        ->check(CLI::IsMember({"inversion", "strict"}));
    cmd->add_option("--parallelism", flags->parallelism, "Concurrent samples");
    cmd->add_option("--seed", flags->seed, "Base seed (shuffles, subsets, generation)");
    cmd->add_option("--subset", flags->subset, "Per-subtask sample cap");
    cmd->add_flag("--full", flags->full, "Evaluate the full dataset (no subset)");
    cmd->add_option("--repeats", flags->repeats, "Judgments per sample");
    cmd->add_option("--criteria", flags->criteria_file, "Custom criteria JSON file");
    cmd->add_option("--lexicon", flags->lexicon_file, "Custom reference-swap lexicon JSON file");
    cmd->add_option("--grounded-template", flags->grounded_template_file,
                    "Override the grounded prompt template file");
    cmd->add_option("--open-ended-template", flags->open_ended_template_file,
                    "Override the open-ended prompt template file");
}

std::string normalize_mode(const std::string& mode) {
    return mode == "open-ended" ? "open_ended" : mode;
}

// Builds the judge spec string handed to mj_judge_open. Plain model names
// become HTTP judges against the resolved base URL.
std::string judge_spec(const CommonFlags& flags, RunConfig* config, CLI::App* cmd) {
    bool model_given = cmd->count("--model") > 0;
    bool base_given = cmd->count("--base-url") > 0;
    std::string model =
        config->resolve<std::string>("model", model_given, flags.model, nullptr, "");
    if (model.empty()) {
        std::cerr << "error: --model is required (or set \"model\" in the config file)\n";
        std::exit(kExitUsage);
    }
    if (model.rfind("scripted:", 0) == 0 || model.rfind("replay:", 0) == 0) return model;

    std::string base_url = config->resolve<std::string>("base_url", base_given, flags.base_url,
                                                        "MJ_BASE_URL", "");
    if (base_url.empty()) {
        std::cerr << "error: HTTP judges need --base-url or MJ_BASE_URL\n";
        std::exit(kExitUsage);
    }
    config->note("api_key", std::getenv("MJ_API_KEY") ? "<set>" : "<unset>", "env:MJ_API_KEY");
    ordered_json spec;
    spec["type"] = "http";
    spec["model"] = model;
    spec["base_url"] = base_url;
    // Endpoint tuning comes from the config file layer only.
    spec["timeout_ms"] =
        config->resolve<int>("timeout_ms", false, 0, nullptr, 120000);
    spec["max_retries"] = config->resolve<int>("max_retries", false, 0, nullptr, 3);
    spec["max_concurrency"] = config->resolve<int>("max_concurrency", false, 0, nullptr, 4);
    spec["continuation"] =
        config->resolve<std::string>("continuation", false, "", nullptr, "emulate");
    return spec.dump();
}

std::string options_json(const CommonFlags& flags, RunConfig* config, CLI::App* cmd) {
    // Not every subcommand declares every flag; absent options count as not
    // given rather than throwing.
    auto given = [&](const char* name) {
        const CLI::Option* option = cmd->get_option_no_throw(name);
        return option != nullptr && option->count() > 0;
    };
    ordered_json options;
    options["mode"] = normalize_mode(
        config->resolve<std::string>("mode", given("--mode"), flags.mode, nullptr, "grounded"));
    options["condition"] = config->resolve<std::string>("condition", given("--condition"),
                                                        flags.condition, nullptr, "real");
    options["condition_seed"] =
        config->resolve<std::uint64_t>("seed", given("--seed"), flags.seed, nullptr, 0);
    options["flip"] = config->resolve<bool>("flip", given("--flip"), flags.flip, nullptr, true);
    options["parallelism"] = config->resolve<int>("parallelism", given("--parallelism"),
                                                  flags.parallelism, nullptr, 4);
    options["policy"] = config->resolve<std::string>("consistency_policy",
                                                     given("--consistency-policy"), flags.policy,
                                                     nullptr, "inversion");
    options["temperature"] = config->resolve<double>("temperature", given("--temperature"),
                                                     flags.temperature, nullptr, 0.7);
    options["max_tokens"] =
        config->resolve<int>("max_tokens", given("--max-tokens"), flags.max_tokens, nullptr, 6144);
    options["seed"] = options["condition_seed"];
    options["group_size"] =
        config->resolve<int>("group_size", given("--group-size"), flags.group_size, nullptr, 32);
    options["epsilon"] =
        config->resolve<double>("epsilon", given("--epsilon"), flags.epsilon, nullptr, 0.01);
    options["repeats"] =
        config->resolve<int>("repeats", given("--repeats"), flags.repeats, nullptr, 1);
    if (std::string path = config->resolve<std::string>("criteria_file", given("--criteria"),
                                                        flags.criteria_file, nullptr, "");
        !path.empty()) {
        options["criteria_file"] = path;
    }
    if (std::string path = config->resolve<std::string>("lexicon_file", given("--lexicon"),
                                                        flags.lexicon_file, nullptr, "");
        !path.empty()) {
        options["lexicon_file"] = path;
    }
    if (std::string path = config->resolve<std::string>(
            "grounded_template_file", given("--grounded-template"),
            flags.grounded_template_file, nullptr, "");
        !path.empty()) {
        options["grounded_template_file"] = path;
    }
    if (std::string path = config->resolve<std::string>(
            "open_ended_template_file", given("--open-ended-template"),
            flags.open_ended_template_file, nullptr, "");
        !path.empty()) {
        options["open_ended_template_file"] = path;
    }
    json snapshot = config->snapshot();
    // Execution-only knobs stay out of the report bytes: the same run at a
    // different worker count must produce an identical report.
    snapshot.erase("parallelism");
    options["config"] = snapshot;
    return options.dump();
}

struct DatasetHandle {
    mj_dataset* ptr = nullptr;
    ~DatasetHandle() { mj_dataset_close(ptr); }
};

struct JudgeHandle {
    mj_judge* ptr = nullptr;
    ~JudgeHandle() { mj_judge_close(ptr); }
};

// Opens the dataset and applies the default per-subtask subset unless
// --full was given.
void open_dataset(const CommonFlags& flags, RunConfig* config, CLI::App* cmd,
                  DatasetHandle* dataset) {
    bool dataset_given = cmd->count("--dataset") > 0;
    std::string path =
        config->resolve<std::string>("dataset", dataset_given, flags.dataset, nullptr, "");
    if (path.empty()) {
        std::cerr << "error: --dataset is required\n";
        std::exit(kExitUsage);
    }
    check(mj_dataset_open(path.c_str(), &dataset->ptr));

    bool full = config->resolve<bool>("full", cmd->count("--full") > 0, flags.full, nullptr, false);
    int subset =
        config->resolve<int>("subset", cmd->count("--subset") > 0, flags.subset, nullptr, 500);
    if (!full && subset > 0) {
        mj_dataset* reduced = nullptr;
        check(mj_dataset_subset(dataset->ptr, subset, flags.seed, &reduced));
        mj_dataset_close(dataset->ptr);
        dataset->ptr = reduced;
    }
}

void write_artifacts(const CommonFlags& flags, const std::string& report_json) {
    if (!flags.out.empty()) write_file(flags.out, report_json);
    if (!flags.csv.empty()) {
        OwnedString csv;
        check(mj_report_to_csv(report_json.c_str(), &csv.value));
        write_file(flags.csv, csv.str());
    }
    if (!flags.md.empty()) {
        OwnedString md;
        check(mj_report_to_markdown(report_json.c_str(), &md.value));
        write_file(flags.md, md.str());
    }
}

void print_markdown_summary(const std::string& report_json) {
    OwnedString md;
    check(mj_report_to_markdown(report_json.c_str(), &md.value));
    std::cout << md.str();
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

int run_parse(const std::string& transcript_path) {
    std::string text = read_file(transcript_path);
    OwnedString parsed;
    check(mj_parse_transcript(text.c_str(), &parsed.value));
    json doc = json::parse(parsed.str());

    std::cout << "tag status:\n";
    for (const auto& [name, state] : doc["tag_status"].items()) {
        std::cout << "  " << name << ": " << state.get<std::string>() << "\n";
    }
    int count = doc["well_formed_count"].get<int>();
    std::cout << "well-formed tags: " << count << "/11\n";
    std::cout << "format reward: " << doc["format_reward"]["value"].dump() << "\n";
    if (doc["scores"].is_object()) {
        std::cout << "scores: " << doc["scores"]["a"] << ", " << doc["scores"]["b"]
                  << " -> verdict " << doc["verdict"].get<std::string>() << "\n";
    } else {
        std::cout << "scores: none (no valid boxed pair)\n";
    }
    return kExitOk;
}

int run_flip(const std::string& transcript_path, const std::string& sample_path,
             const std::string& out_sample) {
    std::string text = read_file(transcript_path);
    OwnedString prefix;
    check(mj_rewrite_prefix(text.c_str(), &prefix.value));
    std::cout << prefix.str();
    if (!sample_path.empty()) {
        std::string sample_json = read_file(sample_path);
        OwnedString flipped;
        check(mj_flip_sample(sample_json.c_str(), &flipped.value));
        if (out_sample.empty()) {
            std::cerr << flipped.str() << "\n";
        } else {
            write_file(out_sample, flipped.str() + "\n");
        }
    }
    return kExitOk;
}

int run_validate(const std::string& dataset_path) {
    OwnedString report;
    mj_status status = mj_dataset_validate(dataset_path.c_str(), &report.value);
    if (status == MJ_OK) {
        json doc = json::parse(report.str());
        std::cout << "dataset ok: " << doc["n_samples"] << " samples, labels "
                  << doc["label_counts"].dump() << "\n";
        return kExitOk;
    }
    std::cerr << mj_last_error() << "\n";
    return exit_code_for(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mjudge: grounded multimodal judging, rewards, and evaluation"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags like --config may follow the subcommand

    CommonFlags flags;
    app.add_option("--config", flags.config_file, "JSON config file (layer below env and flags)");

    // judge
    auto* judge_cmd = app.add_subcommand("judge", "Judge one sample and print the breakdown");
    judge_cmd->add_option("--dataset", flags.dataset, "Dataset directory or samples.jsonl");
    judge_cmd->add_option("--id", flags.sample_id, "Sample id (default: first sample)");
    add_model_flags(judge_cmd, &flags);
    add_run_flags(judge_cmd, &flags);
    judge_cmd->add_option("--out", flags.out, "Write the judgment record JSON here");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a dataset");
    eval_cmd->add_option("--dataset", flags.dataset, "Dataset directory or samples.jsonl");
    add_model_flags(eval_cmd, &flags);
    add_run_flags(eval_cmd, &flags);
    eval_cmd->add_option("--out", flags.out, "Write the JSON report here");
    eval_cmd->add_option("--csv", flags.csv, "Write the per-sample CSV here");
    eval_cmd->add_option("--md", flags.md, "Write the markdown tables here");

    // ablation
    auto* ablation_cmd =
        app.add_subcommand("ablation", "Open-ended vs grounded prompting comparison");
    ablation_cmd->add_option("--dataset", flags.dataset, "Dataset directory or samples.jsonl");
    add_model_flags(ablation_cmd, &flags);
    add_run_flags(ablation_cmd, &flags);
    ablation_cmd->add_option("--out", flags.out, "Write the JSON report here");
    ablation_cmd->add_option("--csv", flags.csv, "Write the CSV summary here");
    ablation_cmd->add_option("--md", flags.md, "Write the markdown tables here");

    // conditions
    auto* conditions_cmd =
        app.add_subcommand("conditions", "real / shuffled / blank image-condition probe");
    conditions_cmd->add_option("--dataset", flags.dataset, "Dataset directory or samples.jsonl");
    add_model_flags(conditions_cmd, &flags);
    add_run_flags(conditions_cmd, &flags);
    conditions_cmd->add_option("--out", flags.out, "Write the JSON report here");
    conditions_cmd->add_option("--csv", flags.csv, "Write the CSV summary here");
    conditions_cmd->add_option("--md", flags.md, "Write the markdown tables here");

    // grpo-rewards
    auto* grpo_cmd = app.add_subcommand("grpo-rewards", "Export 2N-group rewards and advantages");
    grpo_cmd->add_option("--dataset", flags.dataset, "Dataset directory or samples.jsonl");
    add_model_flags(grpo_cmd, &flags);
    add_run_flags(grpo_cmd, &flags);
    grpo_cmd->add_option("--group-size", flags.group_size, "Originals per sample (N)");
    grpo_cmd->add_option("--epsilon", flags.epsilon, "Advantage retention threshold");
    grpo_cmd->add_option("--out", flags.out, "Write the JSONL export here (default stdout)");

    // flip
    auto* flip_cmd = app.add_subcommand("flip", "Rewrite a transcript prefix for the swap");
    std::string transcript_path;
    std::string sample_path;
    std::string out_sample;
    flip_cmd->add_option("--transcript", transcript_path, "Transcript file")->required();
    flip_cmd->add_option("--sample", sample_path, "Sample JSON record to flip alongside");
    flip_cmd->add_option("--out-sample", out_sample, "Write the flipped sample here");

    // parse
    auto* parse_cmd = app.add_subcommand("parse", "Parse a transcript file");
    parse_cmd->add_option("--transcript", transcript_path, "Transcript file")->required();

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Lint a dataset");
    validate_cmd->add_option("--dataset", flags.dataset, "Dataset directory or samples.jsonl")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (parse_cmd->parsed()) return run_parse(transcript_path);
    if (flip_cmd->parsed()) return run_flip(transcript_path, sample_path, out_sample);
    if (validate_cmd->parsed()) return run_validate(flags.dataset);

    RunConfig config;
    config.load_file(flags.config_file);
    CLI::App* active = app.get_subcommands().front();

    if (judge_cmd->parsed()) {
        DatasetHandle dataset;
        bool dataset_given = judge_cmd->count("--dataset") > 0;
        std::string path =
            config.resolve<std::string>("dataset", dataset_given, flags.dataset, nullptr, "");
        if (path.empty()) {
            std::cerr << "error: --dataset is required\n";
            return kExitUsage;
        }
        check(mj_dataset_open(path.c_str(), &dataset.ptr));
        OwnedString sample;
        check(mj_dataset_sample(dataset.ptr, flags.sample_id.c_str(), &sample.value));

        JudgeHandle judge;
        check(mj_judge_open(judge_spec(flags, &config, judge_cmd).c_str(), &judge.ptr));
        OwnedString record;
        check(mj_judge_once(judge.ptr, sample.value,
                            options_json(flags, &config, judge_cmd).c_str(), &record.value));

        json doc = json::parse(record.str());
        std::cout << "sample " << doc["sample_id"].get<std::string>() << " (task "
                  << doc["task"].get<std::string>() << ", label "
                  << doc["label"].get<std::string>() << ")\n";
        const auto& original = doc["original"];
        std::cout << "tag status:\n";
        for (const auto& [name, state] : original["tag_status"].items()) {
            std::cout << "  " << name << ": " << state.get<std::string>() << "\n";
        }
        std::cout << "well-formed tags: " << original["well_formed_tags"] << "/11\n";
        if (original["verdict"].is_string()) {
            std::cout << "scores: " << original["score_a"] << ", " << original["score_b"]
                      << " -> verdict " << original["verdict"].get<std::string>() << "\n";
        } else {
            std::cout << "scores: none (no valid boxed pair)\n";
        }
        std::cout << "rewards: format " << original["r_format"].dump() << ", correct "
                  << original["r_correct"] << ", consistency " << original["r_cons"]
                  << ", total " << original["total"].dump() << "\n";
        std::cout << "flip applicable: " << (doc["flip_applicable"].get<bool>() ? "yes" : "no")
                  << "\n";
        if (!flags.out.empty()) write_file(flags.out, record.str());
        return kExitOk;
    }

    DatasetHandle dataset;
    open_dataset(flags, &config, active, &dataset);
    JudgeHandle judge;
    check(mj_judge_open(judge_spec(flags, &config, active).c_str(), &judge.ptr));
    std::string options = options_json(flags, &config, active);

    if (eval_cmd->parsed()) {
        OwnedString report;
        check(mj_evaluate(judge.ptr, dataset.ptr, options.c_str(), &report.value));
        print_markdown_summary(report.str());
        write_artifacts(flags, report.str());
        return kExitOk;
    }
    if (ablation_cmd->parsed()) {
        OwnedString report;
        check(mj_ablation(judge.ptr, dataset.ptr, options.c_str(), &report.value));
        print_markdown_summary(report.str());
        write_artifacts(flags, report.str());
        return kExitOk;
    }
    if (conditions_cmd->parsed()) {
        OwnedString report;
        check(mj_conditions(judge.ptr, dataset.ptr, options.c_str(), &report.value));
        print_markdown_summary(report.str());
        write_artifacts(flags, report.str());
        return kExitOk;
    }
    if (grpo_cmd->parsed()) {
        OwnedString jsonl;
        OwnedString skipped;
        check(mj_grpo_export(judge.ptr, dataset.ptr, options.c_str(), &jsonl.value,
                             &skipped.value));
        if (flags.out.empty()) {
            std::cout << jsonl.str();
        } else {
            write_file(flags.out, jsonl.str());
            std::cout << "wrote group export to " << flags.out << "\n";
        }
        json skipped_doc = json::parse(skipped.str());
        if (!skipped_doc.empty()) {
            std::cerr << "incomplete samples (excluded from export):\n";
            for (const auto& entry : skipped_doc) {
                std::cerr << "  " << entry["sample_id"].get<std::string>() << ": "
                          << entry["error"].get<std::string>() << "\n";
            }
        }
        return kExitOk;
    }

    std::cerr << "error: no subcommand\n";
    return kExitUsage;
}
