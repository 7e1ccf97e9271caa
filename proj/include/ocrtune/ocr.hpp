#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "ocrtune/raster.hpp"

namespace ocrtune {

struct NoiseProfile {
    double salt_pepper_p = 0.0;   // [0,1]
    double contrast_scale = 1.0;  // (0,1]
    int background = 255;         // [0,255]
};

/// Draws `text` (lines separated by '\n') as dark glyphs on a light
/// background, one kCellWidth x kCellHeight cell per character, then applies
/// contrast scaling toward mid-gray and seeded salt-and-pepper flips.
/// Throws MalformedInput for characters outside the glyph font.
Raster render_synthetic(std::string_view text, const NoiseProfile& noise, std::uint64_t seed);

/// Uniform OCR boundary. recognize must be safe to call concurrently.
class OcrEngine {
public:
    virtual ~OcrEngine() = default;
    virtual std::string recognize(const Raster& r) const = 0;
    virtual std::string_view kind() const noexcept = 0;
};

/// Template-matching reader for rasters produced by render_synthetic.
/// Each cell is point-sampled at the centre of every font pixel, binarised
/// at 128 and matched to the nearest glyph by Hamming distance. Cells whose
/// best distance exceeds the rejection threshold decode to a wrong character
/// chosen by a seeded hash of (cell index, cell bits).
class MockOcrEngine final : public OcrEngine {
public:
    explicit MockOcrEngine(std::uint64_t seed = 0, int rejection_threshold = 10)
        : seed_(seed), rejection_threshold_(rejection_threshold) {}

    std::string recognize(const Raster& r) const override;
    std::string_view kind() const noexcept override { return "synthetic-mock"; }

private:
    std::uint64_t seed_;
    int rejection_threshold_;
};

struct TesseractConfig {
    std::filesystem::path binary = "tesseract";
    std::string language = "por";
    std::optional<int> page_segmentation_mode;
    std::vector<std::string> extra_args;
    std::filesystem::path work_dir = std::filesystem::temp_directory_path();
    int max_concurrent = 4;
    // Receives one line per invocation with the full argument list.
    std::function<void(const std::string&)> log;
};

/// Runs an external engine binary: `<binary> <input.pgm> <outbase> -l <lang>
/// [--psm N] [extra...]` and reads `<outbase>.txt`. OCRTUNE_TESSERACT, when
/// set, overrides the configured binary path.
class TesseractEngine final : public OcrEngine {
public:
    explicit TesseractEngine(TesseractConfig config);

    std::string recognize(const Raster& r) const override;
    std::string_view kind() const noexcept override { return "external-process"; }

    const TesseractConfig& config() const noexcept { return config_; }
    std::vector<std::string> command_line(const std::filesystem::path& input,
                                          const std::filesystem::path& outbase) const;

private:
    TesseractConfig config_;
    std::shared_ptr<std::counting_semaphore<1024>> slots_;
};

/// Builds an engine from key/value configuration.
/// kind: "mock" | "tesseract"; mock keys: seed, rejection; tesseract keys:
/// binary, language, psm, max_concurrent, work_dir. Unknown keys are rejected.
std::unique_ptr<OcrEngine> make_engine(const std::map<std::string, std::string>& config);

}  // namespace ocrtune
