#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace mj {

/// Loaded preference dataset. Immutable after load; conditions and subsets
/// produce new manifests.
struct DatasetManifest {
    std::string path;  // directory the samples were loaded from
    std::vector<PreferenceSample> samples;
    std::map<TaskKind, int> subtask_counts;
    std::map<Choice, int> label_counts;
};

/// Image regime for the grounding probes: untouched, deranged across
/// samples, or replaced by the canonical blank-grey square.
struct ImageCondition {
    enum class Kind { Real, Shuffled, Blank };

    Kind kind = Kind::Real;
    std::uint64_t seed = 0;  // Shuffled only

    static ImageCondition real() { return {Kind::Real, 0}; }
    static ImageCondition shuffled(std::uint64_t seed) { return {Kind::Shuffled, seed}; }
    static ImageCondition blank() { return {Kind::Blank, 0}; }
};

std::string to_string(const ImageCondition& condition);
std::optional<ImageCondition> image_condition_from_string(std::string_view name,
                                                          std::uint64_t seed);

/// Loads samples from `path` (a directory containing samples.jsonl, or the
/// .jsonl file itself). Validates ids, labels, tasks, and that every image
/// reference resolves; schema problems are reported with line numbers and
/// missing images as an exact list, all in one Data error.
DatasetManifest load_dataset(const std::string& path);

/// Parses one JSONL record. Relative image paths resolve against base_dir.
PreferenceSample parse_sample_json(const std::string& line, const std::string& base_dir);

std::string sample_to_json(const PreferenceSample& sample);

/// real: identity. shuffled: each image-bearing sample receives the image
/// set of a different sample (seeded derangement; needs >= 2 image-bearing
/// samples). blank: every image becomes the canonical blank asset. Text,
/// labels, ids and order never change.
DatasetManifest apply_condition(const DatasetManifest& manifest, const ImageCondition& condition);

/// Seeded selection of up to per_task samples per subtask, preserving the
/// original sample order.
DatasetManifest select_subset(const DatasetManifest& manifest, int per_task, std::uint64_t seed);

/// True iff the ref is an inline payload holding exactly the canonical blank
/// asset bytes.
bool is_blank_asset(const ImageRef& ref);

}  // namespace mj
