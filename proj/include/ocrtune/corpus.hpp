#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocrtune/ocr.hpp"
#include "ocrtune/random.hpp"
#include "ocrtune/raster.hpp"

namespace ocrtune {

enum class Typology {
    Letter,
    ProcessCover,
    StructuredReport,
    TheatrePlayCover,
    NonStructuredReport,
    Other,
};

std::string_view typology_name(Typology t);
/// Throws NotFound listing the allowed values.
Typology typology_from_name(std::string_view name);

struct Document {
    std::string id;
    std::filesystem::path image_path;
    std::filesystem::path transcription_path;
    Typology typology = Typology::Other;
    std::string series_code;

    bool operator==(const Document&) const = default;
};

/// Tab-separated: id, image path, transcription path, typology, series code.
/// Relative paths resolve against the manifest's directory. Blank lines and
/// lines starting with '#' are skipped. All problems are reported together
/// in a ManifestError.
std::vector<Document> load_manifest(const std::filesystem::path& path, bool check_files = true);
void write_manifest(const std::filesystem::path& path, std::span<const Document> docs);

/// Per typology: ceil(5%) of every series at random, then round-robin top-up
/// across series until the typology holds min(60, available) documents.
std::vector<Document> sample_by_series(std::span<const Document> docs, Rng& rng);

struct SplitResult {
    std::vector<Document> parameterization;
    std::vector<Document> evaluation;
    std::vector<std::string> warnings;
};

/// Stratified random halves; odd typology counts put the extra document in
/// the parameterization half.
SplitResult split_halves(std::span<const Document> sample, Rng& rng);

/// Loaded document: raster plus NFC ground truth.
struct Sample {
    Document doc;
    Raster image;
    std::string ground_truth;
};

std::vector<Sample> load_samples(std::span<const Document> docs);

struct SyntheticCorpus {
    std::vector<Document> documents;
    std::filesystem::path manifest;
};

/// Writes `count` rendered documents (images/, text/), manifest.tsv and
/// provenance.json into `out_dir`. Deterministic per seed.
SyntheticCorpus generate_synthetic(int count, const std::map<Typology, double>& typology_mix,
                                   const NoiseProfile& noise, std::uint64_t seed,
                                   const std::filesystem::path& out_dir);

/// "letter=0.5,structured-report=0.5"
std::map<Typology, double> parse_typology_mix(std::string_view text);

}  // namespace ocrtune
