#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "base64.hpp"
#include "blank_image.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "rng.hpp"

using namespace mj;
namespace fs = std::filesystem;

namespace {

// Writes a dataset directory with tiny real PNGs and returns its path.
class TempDataset {
public:
    explicit TempDataset(const std::string& name) {
        dir_ = fs::temp_directory_path() / ("mj_ds_" + name);
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        fs::copy_file(fs::path(MJ_SOURCE_DIR) / "tests/fixtures/images/red_16.png",
                      dir_ / "red.png");
        fs::copy_file(fs::path(MJ_SOURCE_DIR) / "tests/fixtures/images/green_16.png",
                      dir_ / "green.png");
        fs::copy_file(fs::path(MJ_SOURCE_DIR) / "tests/fixtures/images/blue_16.png",
                      dir_ / "blue.png");
    }
    ~TempDataset() { fs::remove_all(dir_); }

    void write_samples(const std::string& jsonl) {
        std::ofstream out(dir_ / "samples.jsonl");
        out << jsonl;
    }

    std::string path() const { return dir_.string(); }

private:
    fs::path dir_;
};

const char* kValidJsonl = R"({"id": "a1", "task": "t2i", "prompt_text": "a red square", "response_a_text": "red", "response_a_images": ["red.png"], "response_b_text": "green", "response_b_images": ["green.png"], "label": "A"}
{"id": "a2", "task": "editing", "prompt_text": "make it blue", "prompt_images": ["blue.png"], "response_a_text": "blue", "response_a_images": ["blue.png"], "response_b_text": "still blue", "response_b_images": ["blue.png"], "label": "A"}
{"id": "a3", "task": "reasoning", "prompt_text": "which is taller?", "response_a_text": "the tower", "response_b_text": "the shed", "label": "B"}
)";

}  // namespace

TEST_CASE("load_dataset accepts a valid file and counts tasks/labels") {
    TempDataset dataset("valid");
    dataset.write_samples(kValidJsonl);
    auto manifest = load_dataset(dataset.path());
    CHECK(manifest.samples.size() == 3);
    CHECK(manifest.subtask_counts.at(TaskKind::T2i) == 1);
    CHECK(manifest.subtask_counts.at(TaskKind::Editing) == 1);
    CHECK(manifest.label_counts.at(Choice::A) == 2);
    CHECK(manifest.label_counts.at(Choice::B) == 1);
    // Relative image paths resolve against the dataset directory.
    CHECK(manifest.samples[0].response_a[1].image.source == ImageRef::Source::FilePath);
    CHECK(manifest.samples[0].response_a[1].image.value.find("red.png") != std::string::npos);
}

TEST_CASE("loader reports schema violations with line numbers") {
    TempDataset dataset("badlabel");
    dataset.write_samples(
        R"({"id": "x1", "task": "t2i", "prompt_text": "p", "response_a_text": "a", "response_b_text": "b", "label": "C"}
)");
    try {
        load_dataset(dataset.path());
        FAIL("expected a data error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Data);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
        CHECK(std::string(e.what()).find("label") != std::string::npos);
    }
}

TEST_CASE("loader rejects duplicate ids") {
    TempDataset dataset("dupid");
    dataset.write_samples(
        R"({"id": "x1", "task": "t2i", "prompt_text": "p", "response_a_text": "a", "response_b_text": "b", "label": "A"}
{"id": "x1", "task": "t2i", "prompt_text": "p", "response_a_text": "a", "response_b_text": "b", "label": "B"}
)");
    try {
        load_dataset(dataset.path());
        FAIL("expected a data error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("duplicate id") != std::string::npos);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("loader lists missing images exactly") {
    TempDataset dataset("missingimg");
    dataset.write_samples(
        R"({"id": "x1", "task": "t2i", "prompt_text": "p", "response_a_text": "a", "response_a_images": ["nowhere.png"], "response_b_text": "b", "label": "A"}
)");
    try {
        load_dataset(dataset.path());
        FAIL("expected a data error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("nowhere.png") != std::string::npos);
    }
}

TEST_CASE("real condition is the identity") {
    TempDataset dataset("real");
    dataset.write_samples(kValidJsonl);
    auto manifest = load_dataset(dataset.path());
    auto conditioned = apply_condition(manifest, ImageCondition::real());
    CHECK(conditioned.samples == manifest.samples);
}

TEST_CASE("blank condition replaces every image with the canonical asset") {
    TempDataset dataset("blank");
    dataset.write_samples(kValidJsonl);
    auto manifest = load_dataset(dataset.path());
    auto conditioned = apply_condition(manifest, ImageCondition::blank());

    int images = 0;
    for (std::size_t i = 0; i < conditioned.samples.size(); ++i) {
        const auto& sample = conditioned.samples[i];
        const auto& before = manifest.samples[i];
        CHECK(sample.id == before.id);
        CHECK(sample.label == before.label);
        for (const auto* parts : {&sample.prompt, &sample.response_a, &sample.response_b}) {
            for (const auto& part : *parts) {
                if (part.kind != ContentPart::Kind::Image) continue;
                ++images;
                CHECK(is_blank_asset(part.image));
                auto bytes = base64_decode(part.image.value);
                REQUIRE(bytes.has_value());
                auto asset = blank_image_png();
                CHECK(bytes->size() == asset.size());
            }
        }
    }
    CHECK(images == 5);
    // Idempotent.
    auto twice = apply_condition(conditioned, ImageCondition::blank());
    CHECK(twice.samples == conditioned.samples);
}

TEST_CASE("shuffled condition is a seeded derangement over image-bearing samples") {
    TempDataset dataset("shuffled");
    dataset.write_samples(kValidJsonl);
    auto manifest = load_dataset(dataset.path());

    auto first = apply_condition(manifest, ImageCondition::shuffled(7));
    auto second = apply_condition(manifest, ImageCondition::shuffled(7));
    for (std::size_t i = 0; i < first.samples.size(); ++i) {
        CHECK(first.samples[i] == second.samples[i]);  // same seed, same permutation
    }

    // Image-bearing samples a1 and a2 must exchange image sets (2 bearers ->
    // the only derangement is the swap); text and labels never change.
    CHECK(first.samples[0].id == "a1");
    CHECK(first.samples[0].response_a[0].text == manifest.samples[0].response_a[0].text);
    CHECK(first.samples[2] == manifest.samples[2]);  // no images, untouched

    auto images_of = [](const PreferenceSample& sample) {
        std::vector<std::string> values;
        for (const auto* parts : {&sample.prompt, &sample.response_a, &sample.response_b}) {
            for (const auto& part : *parts) {
                if (part.kind == ContentPart::Kind::Image) values.push_back(part.image.value);
            }
        }
        return values;
    };
    auto a1_before = images_of(manifest.samples[0]);
    auto a1_after = images_of(first.samples[0]);
    auto a2_before = images_of(manifest.samples[1]);
    REQUIRE(a1_after.size() == a1_before.size());
    // a1 now carries images drawn from a2's set only.
    std::set<std::string> a2_set(a2_before.begin(), a2_before.end());
    for (const auto& value : a1_after) CHECK(a2_set.count(value) == 1);
    for (const auto& value : a1_after) {
        CHECK(std::find(a1_before.begin(), a1_before.end(), value) == a1_before.end());
    }
}

TEST_CASE("shuffled condition needs at least two image-bearing samples") {
    TempDataset dataset("onebearer");
    dataset.write_samples(
        R"({"id": "x1", "task": "t2i", "prompt_text": "p", "response_a_text": "a", "response_a_images": ["red.png"], "response_b_text": "b", "label": "A"}
{"id": "x2", "task": "t2i", "prompt_text": "p", "response_a_text": "a", "response_b_text": "b", "label": "A"}
)");
    auto manifest = load_dataset(dataset.path());
    CHECK_THROWS_AS(apply_condition(manifest, ImageCondition::shuffled(1)), Error);
}

TEST_CASE("subsets are seeded, capped per task, and order-preserving") {
    TempDataset dataset("subset");
    std::string jsonl;
    for (int i = 0; i < 10; ++i) {
        jsonl += R"({"id": "t)" + std::to_string(i) +
                 R"(", "task": "t2i", "prompt_text": "p", "response_a_text": "a", "response_b_text": "b", "label": "A"}
)";
    }
    for (int i = 0; i < 4; ++i) {
        jsonl += R"({"id": "e)" + std::to_string(i) +
                 R"(", "task": "editing", "prompt_text": "p", "response_a_text": "a", "response_b_text": "b", "label": "B"}
)";
    }
    dataset.write_samples(jsonl);
    auto manifest = load_dataset(dataset.path());

    auto subset = select_subset(manifest, 3, 99);
    CHECK(subset.subtask_counts.at(TaskKind::T2i) == 3);
    CHECK(subset.subtask_counts.at(TaskKind::Editing) == 3);

    auto again = select_subset(manifest, 3, 99);
    for (std::size_t i = 0; i < subset.samples.size(); ++i) {
        CHECK(subset.samples[i].id == again.samples[i].id);
    }
    // Original relative order is preserved.
    std::vector<std::string> ids;
    for (const auto& sample : subset.samples) ids.push_back(sample.id);
    auto position = [&](const std::string& id) {
        for (std::size_t i = 0; i < manifest.samples.size(); ++i) {
            if (manifest.samples[i].id == id) return i;
        }
        return std::size_t(-1);
    };
    for (std::size_t i = 1; i < ids.size(); ++i) {
        CHECK(position(ids[i - 1]) < position(ids[i]));
    }
}

TEST_CASE("derangement holds across sizes and seeds") {
    // Direct check of the permutation structure across many sizes, using
    // inline base64 images so no files are needed.
    for (int size : {2, 3, 5, 17}) {
        DatasetManifest manifest;
        for (int i = 0; i < size; ++i) {
            PreferenceSample sample;
            sample.id = "s" + std::to_string(i);
            sample.task = TaskKind::T2i;
            sample.label = Choice::A;
            sample.prompt.push_back(ContentPart::make_text("p"));
            sample.response_a.push_back(ContentPart::make_text("a"));
            sample.response_a.push_back(ContentPart::make_image(ImageRef::from_base64(
                base64_encode(std::vector<unsigned char>{static_cast<unsigned char>(i + 1)}),
                "image/png")));
            sample.response_b.push_back(ContentPart::make_text("b"));
            manifest.samples.push_back(std::move(sample));
        }
        for (std::uint64_t seed : {0ull, 1ull, 42ull}) {
            auto conditioned = apply_condition(manifest, ImageCondition::shuffled(seed));
            for (int i = 0; i < size; ++i) {
                CHECK(conditioned.samples[i].response_a[1].image.value !=
                      manifest.samples[i].response_a[1].image.value);
            }
        }
    }
}
