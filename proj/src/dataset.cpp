#include "dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "base64.hpp"
#include "blank_image.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace fs = std::filesystem;

namespace mj {

namespace {

std::string media_type_from_path(const std::string& path) {
    auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == "png") return "image/png";
    if (ext == "jpg" || ext == "jpeg") return "image/jpeg";
    if (ext == "webp") return "image/webp";
    if (ext == "gif") return "image/gif";
    if (ext == "bmp") return "image/bmp";
    return "";
}

ImageRef image_ref_from_string(const std::string& spec, const std::string& base_dir) {
    if (spec.rfind("data:", 0) == 0) {
        auto comma = spec.find(',');
        auto semi = spec.find(";base64", 5);
        if (comma == std::string::npos || semi == std::string::npos || semi > comma) {
            throw_error(ErrorKind::Data, "malformed data URI");
        }
        return ImageRef::from_base64(spec.substr(comma + 1), spec.substr(5, semi - 5));
    }
    if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0) {
        std::string media = media_type_from_path(spec);
        return ImageRef::from_url(spec, media.empty() ? "image/png" : media);
    }
    std::string media = media_type_from_path(spec);
    if (media.empty()) {
        throw_error(ErrorKind::Data, "cannot infer image MIME type from path: " + spec);
    }
    fs::path p(spec);
    if (p.is_relative()) p = fs::path(base_dir) / p;
    return ImageRef::from_file(p.string(), media);
}

std::vector<ContentPart> build_parts(const std::string& text,
                                     const std::vector<std::string>& image_specs,
                                     const std::string& base_dir) {
    std::vector<ContentPart> parts;
    if (!text.empty()) parts.push_back(ContentPart::make_text(text));
    for (const auto& spec : image_specs) {
        parts.push_back(ContentPart::make_image(image_ref_from_string(spec, base_dir)));
    }
    return parts;
}

std::vector<std::string> string_array(const nlohmann::json& doc, const char* key) {
    std::vector<std::string> out;
    if (!doc.contains(key)) return out;
    if (!doc[key].is_array()) throw_error(ErrorKind::Data, std::string(key) + " must be an array");
    for (const auto& entry : doc[key]) {
        if (!entry.is_string()) {
            throw_error(ErrorKind::Data, std::string(key) + " entries must be strings");
        }
        out.push_back(entry.get<std::string>());
    }
    return out;
}

std::vector<std::string> image_specs_of(const std::vector<ContentPart>& parts) {
    std::vector<std::string> specs;
    for (const auto& part : parts) {
        if (part.kind != ContentPart::Kind::Image) continue;
        const auto& ref = part.image;
        switch (ref.source) {
            case ImageRef::Source::FilePath:
            case ImageRef::Source::Url:
                specs.push_back(ref.value);
                break;
            case ImageRef::Source::Base64:
                specs.push_back("data:" + ref.media_type + ";base64," + ref.value);
                break;
        }
    }
    return specs;
}

// Pointers to every image slot of a sample, in structural order.
std::vector<ImageRef*> image_slots(PreferenceSample& sample) {
    std::vector<ImageRef*> slots;
    for (auto* parts : {&sample.prompt, &sample.response_a, &sample.response_b}) {
        for (auto& part : *parts) {
            if (part.kind == ContentPart::Kind::Image) slots.push_back(&part.image);
        }
    }
    return slots;
}

std::vector<ImageRef> image_set(const PreferenceSample& sample) {
    std::vector<ImageRef> images;
    for (const auto* parts : {&sample.prompt, &sample.response_a, &sample.response_b}) {
        for (const auto& part : *parts) {
            if (part.kind == ContentPart::Kind::Image) images.push_back(part.image);
        }
    }
    return images;
}

void check_image_resolvable(const ImageRef& ref, std::vector<std::string>* missing) {
    switch (ref.source) {
        case ImageRef::Source::FilePath: {
            std::error_code ec;
            if (!fs::exists(ref.value, ec) || fs::file_size(ref.value, ec) == 0 || ec) {
                missing->push_back(ref.value);
            }
            break;
        }
        case ImageRef::Source::Base64: {
            auto bytes = base64_decode(ref.value);
            if (!bytes || bytes->empty()) missing->push_back("<inline base64 payload>");
            break;
        }
        case ImageRef::Source::Url:
            // Resolvability of remote refs is only known at fetch time.
            break;
    }
}

void count_manifest(DatasetManifest* manifest) {
    manifest->subtask_counts.clear();
    manifest->label_counts.clear();
    for (const auto& sample : manifest->samples) {
        manifest->subtask_counts[sample.task] += 1;
        manifest->label_counts[sample.label] += 1;
    }
}

ImageRef blank_ref() {
    auto png = blank_image_png();
    return ImageRef::from_base64(base64_encode(png), "image/png");
}

}  // namespace

std::string to_string(const ImageCondition& condition) {
    switch (condition.kind) {
        case ImageCondition::Kind::Real: return "real";
        case ImageCondition::Kind::Shuffled:
            return "shuffled(seed=" + std::to_string(condition.seed) + ")";
        case ImageCondition::Kind::Blank: return "blank";
    }
    return "unknown";
}

std::optional<ImageCondition> image_condition_from_string(std::string_view name,
                                                          std::uint64_t seed) {
    if (name == "real") return ImageCondition::real();
    if (name == "shuffled") return ImageCondition::shuffled(seed);
    if (name == "blank") return ImageCondition::blank();
    return std::nullopt;
}

PreferenceSample parse_sample_json(const std::string& line, const std::string& base_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw_error(ErrorKind::Data, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw_error(ErrorKind::Data, "record must be a JSON object");

    PreferenceSample sample;
    sample.id = doc.value("id", "");
    if (sample.id.empty()) throw_error(ErrorKind::Data, "missing or empty id");

    auto task = task_from_string(doc.value("task", ""));
    if (!task) {
        throw_error(ErrorKind::Data, "task must be one of t2i|editing|interleaved|reasoning");
    }
    sample.task = *task;

    auto label = choice_from_string(doc.value("label", ""));
    if (!label) throw_error(ErrorKind::Data, "label must be \"A\" or \"B\"");
    sample.label = *label;

    sample.prompt =
        build_parts(doc.value("prompt_text", ""), string_array(doc, "prompt_images"), base_dir);
    sample.response_a = build_parts(doc.value("response_a_text", ""),
                                    string_array(doc, "response_a_images"), base_dir);
    sample.response_b = build_parts(doc.value("response_b_text", ""),
                                    string_array(doc, "response_b_images"), base_dir);

    if (sample.prompt.empty()) throw_error(ErrorKind::Data, "prompt needs text or images");
    if (sample.response_a.empty()) throw_error(ErrorKind::Data, "response_a needs text or images");
    if (sample.response_b.empty()) throw_error(ErrorKind::Data, "response_b needs text or images");
    return sample;
}

std::string sample_to_json(const PreferenceSample& sample) {
    nlohmann::ordered_json doc;
    doc["id"] = sample.id;
    doc["task"] = to_string(sample.task);
    auto text_of = [](const std::vector<ContentPart>& parts) {
        std::string text;
        for (const auto& part : parts) {
            if (part.kind == ContentPart::Kind::Text) {
                if (!text.empty()) text += "\n";
                text += part.text;
            }
        }
        return text;
    };
    doc["prompt_text"] = text_of(sample.prompt);
    doc["prompt_images"] = image_specs_of(sample.prompt);
    doc["response_a_text"] = text_of(sample.response_a);
    doc["response_a_images"] = image_specs_of(sample.response_a);
    doc["response_b_text"] = text_of(sample.response_b);
    doc["response_b_images"] = image_specs_of(sample.response_b);
    doc["label"] = to_string(sample.label);
    return doc.dump();
}

DatasetManifest load_dataset(const std::string& path) {
    fs::path root(path);
    fs::path file;
    std::error_code ec;
    if (fs::is_directory(root, ec)) {
        file = root / "samples.jsonl";
    } else {
        file = root;
        root = root.parent_path();
    }
    std::ifstream in(file);
    if (!in) throw_error(ErrorKind::Io, "cannot open dataset file: " + file.string());

    DatasetManifest manifest;
    manifest.path = root.string();

    std::vector<std::string> problems;
    std::vector<std::string> missing_images;
    std::set<std::string> ids;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        try {
            PreferenceSample sample = parse_sample_json(line, root.string());
            if (!ids.insert(sample.id).second) {
                problems.push_back("line " + std::to_string(line_number) + ": duplicate id \"" +
                                   sample.id + "\"");
                continue;
            }
            for (const auto& image : image_set(sample)) {
                check_image_resolvable(image, &missing_images);
            }
            manifest.samples.push_back(std::move(sample));
        } catch (const Error& e) {
            problems.push_back("line " + std::to_string(line_number) + ": " + e.what());
        }
    }

    if (!missing_images.empty()) {
        std::string message = "unresolvable images:";
        for (const auto& image : missing_images) message += "\n  " + image;
        problems.push_back(message);
    }
    if (!problems.empty()) {
        std::string message = "dataset " + file.string() + " failed validation:";
        for (const auto& problem : problems) message += "\n" + problem;
        throw_error(ErrorKind::Data, message);
    }
    if (manifest.samples.empty()) {
        throw_error(ErrorKind::Data, "dataset " + file.string() + " contains no samples");
    }

    count_manifest(&manifest);
    return manifest;
}

DatasetManifest apply_condition(const DatasetManifest& manifest,
                                const ImageCondition& condition) {
    DatasetManifest out = manifest;
    switch (condition.kind) {
        case ImageCondition::Kind::Real:
            return out;
        case ImageCondition::Kind::Blank: {
            ImageRef blank = blank_ref();
            for (auto& sample : out.samples) {
                for (ImageRef* slot : image_slots(sample)) *slot = blank;
            }
            return out;
        }
        case ImageCondition::Kind::Shuffled: {
            std::vector<std::size_t> bearing;
            for (std::size_t i = 0; i < out.samples.size(); ++i) {
                if (!image_set(out.samples[i]).empty()) bearing.push_back(i);
            }
            if (bearing.size() < 2) {
                throw_error(ErrorKind::Data,
                            "shuffled condition needs at least 2 image-bearing samples");
            }
            // Derangement: lay the image-bearing samples out in a seeded
            // order and let each receive the previous one's image set. A
            // single cycle over >= 2 elements has no fixed points.
            SeededRng rng(condition.seed);
            auto order = rng.permutation(bearing.size());
            std::vector<std::vector<ImageRef>> donor_sets(out.samples.size());
            for (std::size_t i : bearing) donor_sets[i] = image_set(manifest.samples[i]);
            for (std::size_t k = 0; k < order.size(); ++k) {
                std::size_t recipient = bearing[order[k]];
                std::size_t donor = bearing[order[(k + 1) % order.size()]];
                const auto& images = donor_sets[donor];
                auto slots = image_slots(out.samples[recipient]);
                for (std::size_t j = 0; j < slots.size(); ++j) {
                    *slots[j] = images[j % images.size()];
                }
            }
            return out;
        }
    }
    return out;
}

DatasetManifest select_subset(const DatasetManifest& manifest, int per_task, std::uint64_t seed) {
    if (per_task < 1) throw_error(ErrorKind::InvalidArgument, "subset size must be >= 1");
    std::map<TaskKind, std::vector<std::size_t>> by_task;
    for (std::size_t i = 0; i < manifest.samples.size(); ++i) {
        by_task[manifest.samples[i].task].push_back(i);
    }
    std::vector<std::size_t> chosen;
    for (auto& [task, indices] : by_task) {
        SeededRng rng(seed ^ fnv1a64(to_string(task)));
        auto order = rng.permutation(indices.size());
        std::size_t take = std::min(indices.size(), static_cast<std::size_t>(per_task));
        for (std::size_t k = 0; k < take; ++k) chosen.push_back(indices[order[k]]);
    }
    std::sort(chosen.begin(), chosen.end());

    DatasetManifest out;
    out.path = manifest.path;
    for (std::size_t index : chosen) out.samples.push_back(manifest.samples[index]);
    count_manifest(&out);
    return out;
}

bool is_blank_asset(const ImageRef& ref) {
    if (ref.source != ImageRef::Source::Base64) return false;
    auto bytes = base64_decode(ref.value);
    if (!bytes) return false;
    auto asset = blank_image_png();
    return bytes->size() == asset.size() &&
           std::equal(bytes->begin(), bytes->end(), asset.begin());
}

}  // namespace mj
