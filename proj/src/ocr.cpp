#include "ocrtune/ocr.hpp"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ocrtune/errors.hpp"
#include "ocrtune/glyph_font.hpp"
#include "ocrtune/pgm.hpp"
#include "ocrtune/random.hpp"
#include "ocrtune/text.hpp"

extern char** environ;

namespace ocrtune {
namespace {

std::vector<std::u32string> split_lines(std::u32string_view s) {
    std::vector<std::u32string> lines(1);
    for (char32_t c : s) {
        if (c == U'\n') {
            lines.emplace_back();
        } else if (c != U'\r') {
            lines.back().push_back(c);
        }
    }
    return lines;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Scoped temporary directory for one engine invocation.
class TempDir {
public:
    explicit TempDir(const std::filesystem::path& parent) {
        std::string pattern = (parent / "ocrtune-XXXXXX").string();
        if (::mkdtemp(pattern.data()) == nullptr) {
            throw IoError("cannot create temporary directory under " + parent.string());
        }
        path_ = pattern;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

// Runs argv with stdout and stderr sent to `log_path`; returns the exit status
// or throws EngineFailure when the process cannot be started.
int run_process(const std::vector<std::string>& argv, const std::filesystem::path& log_path) {
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, log_path.c_str(),
                                     O_WRONLY | O_CREAT | O_TRUNC, 0644);
    posix_spawn_file_actions_adddup2(&actions, STDOUT_FILENO, STDERR_FILENO);

    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    pid_t pid = 0;
    const int rc = posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) {
        throw EngineFailure("cannot start OCR engine '" + argv[0] + "'", std::strerror(rc));
    }
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR) throw EngineFailure("waitpid failed", std::strerror(errno));
    }
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

class SlotGuard {
public:
    explicit SlotGuard(std::counting_semaphore<1024>& s) : s_(s) { s_.acquire(); }
    ~SlotGuard() { s_.release(); }
    SlotGuard(const SlotGuard&) = delete;
    SlotGuard& operator=(const SlotGuard&) = delete;

private:
    std::counting_semaphore<1024>& s_;
};

std::string trim_trailing(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\f' || s.back() == ' ' ||
                          s.back() == '\r' || s.back() == '\t')) {
        s.pop_back();
    }
    return s;
}

}  // namespace

Raster render_synthetic(std::string_view text, const NoiseProfile& noise, std::uint64_t seed) {
    if (noise.salt_pepper_p < 0.0 || noise.salt_pepper_p > 1.0) {
        throw InvalidParameter("salt_pepper_p must be in [0,1]");
    }
    if (!(noise.contrast_scale > 0.0) || noise.contrast_scale > 1.0) {
        throw InvalidParameter("contrast_scale must be in (0,1]");
    }
    if (noise.background < 0 || noise.background > 255) {
        throw InvalidParameter("background must be in [0,255]");
    }

    const auto lines = split_lines(text::scalars(text));
    std::size_t columns = 1;
    for (const auto& line : lines) columns = std::max(columns, line.size());

    auto level = [&](int v) { return saturate_round(128.0 + (v - 128.0) * noise.contrast_scale); };
    const std::uint8_t ink = level(0);
    Raster out(static_cast<int>(columns) * kCellWidth, static_cast<int>(lines.size()) * kCellHeight,
               level(noise.background));

    for (std::size_t row = 0; row < lines.size(); ++row) {
        for (std::size_t col = 0; col < lines[row].size(); ++col) {
            const auto bits = glyph_for(lines[row][col]);
            if (!bits) {
                throw MalformedInput("character '" + text::to_utf8(std::u32string(1, lines[row][col])) +
                                     "' is not in the glyph font");
            }
            const int top = static_cast<int>(row) * kCellHeight;
            const int left = static_cast<int>(col) * kCellWidth;
            for (int gy = 0; gy < kGlyphHeight; ++gy) {
                for (int gx = 0; gx < kGlyphWidth; ++gx) {
                    if (!bits->test(static_cast<std::size_t>(gy * kGlyphWidth + gx))) continue;
                    out.pixels()
                        .block(top + gy * kGlyphScale, left + gx * kGlyphScale, kGlyphScale, kGlyphScale)
                        .setConstant(ink);
                }
            }
        }
    }

    if (noise.salt_pepper_p > 0.0) {
        Rng rng(seed);
        std::bernoulli_distribution flip(noise.salt_pepper_p);
        std::bernoulli_distribution coin(0.5);
        for (auto& px : out.data()) {
            if (flip(rng)) px = coin(rng) ? 255 : 0;
        }
    }
    return out;
}

std::string MockOcrEngine::recognize(const Raster& r) const {
    const int rows = r.height() / kCellHeight;
    const int cols = r.width() / kCellWidth;
    const auto font = glyph_font();
    constexpr int kCenter = kGlyphScale / 2;

    std::u32string result;
    for (int row = 0; row < rows; ++row) {
        std::u32string line;
        for (int col = 0; col < cols; ++col) {
            GlyphBits cell;
            for (int gy = 0; gy < kGlyphHeight; ++gy) {
                for (int gx = 0; gx < kGlyphWidth; ++gx) {
                    const int y = row * kCellHeight + gy * kGlyphScale + kCenter;
                    const int x = col * kCellWidth + gx * kGlyphScale + kCenter;
                    if (r(y, x) < 128) cell.set(static_cast<std::size_t>(gy * kGlyphWidth + gx));
                }
            }
            std::size_t best = 0;
            int best_distance = kGlyphPixels + 1;
            for (std::size_t g = 0; g < font.size(); ++g) {
                const int d = static_cast<int>((font[g].bits ^ cell).count());
                if (d < best_distance) {
                    best_distance = d;
                    best = g;
                }
            }
            if (best_distance > rejection_threshold_) {
                const auto cell_index = static_cast<std::uint64_t>(row) * static_cast<std::uint64_t>(cols) +
                                        static_cast<std::uint64_t>(col);
                const auto h = derive_seed(seed_, {cell_index, cell.to_ullong()});
                auto pick = static_cast<std::size_t>(h % (font.size() - 1));
                if (pick >= best) ++pick;
                best = pick;
            }
            line.push_back(font[best].character);
        }
        while (!line.empty() && line.back() == U' ') line.pop_back();
        if (row > 0) result.push_back(U'\n');
        result += line;
    }
    while (!result.empty() && result.back() == U'\n') result.pop_back();
    return text::to_utf8(result);
}

TesseractEngine::TesseractEngine(TesseractConfig config) : config_(std::move(config)) {
    if (const char* env = std::getenv("OCRTUNE_TESSERACT"); env != nullptr && *env != '\0') {
        config_.binary = env;
    }
    if (config_.max_concurrent < 1 || config_.max_concurrent > 1024) {
        throw InvalidParameter("max_concurrent must be in [1,1024]");
    }
    slots_ = std::make_shared<std::counting_semaphore<1024>>(config_.max_concurrent);
}

std::vector<std::string> TesseractEngine::command_line(const std::filesystem::path& input,
                                                       const std::filesystem::path& outbase) const {
    std::vector<std::string> argv = {config_.binary.string(), input.string(), outbase.string(), "-l",
                                     config_.language};
    if (config_.page_segmentation_mode) {
        argv.push_back("--psm");
        argv.push_back(std::to_string(*config_.page_segmentation_mode));
    }
    argv.insert(argv.end(), config_.extra_args.begin(), config_.extra_args.end());
    return argv;
}

std::string TesseractEngine::recognize(const Raster& r) const {
    SlotGuard slot(*slots_);
    TempDir dir(config_.work_dir);
    const auto input = dir.path() / "input.pgm";
    const auto outbase = dir.path() / "output";
    const auto log_path = dir.path() / "engine.log";
    pgm::write(input, r);

    const auto argv = command_line(input, outbase);
    if (config_.log) {
        std::string line = "ocr-engine:";
        for (const auto& a : argv) line += " " + a;
        config_.log(line);
    }
    const int status = run_process(argv, log_path);
    if (status != 0) {
        throw EngineFailure("OCR engine exited with status " + std::to_string(status), slurp(log_path));
    }
    const auto text_path = outbase.string() + ".txt";
    if (!std::filesystem::exists(text_path)) {
        throw EngineFailure("OCR engine produced no output file", slurp(log_path));
    }
    return trim_trailing(slurp(text_path));
}

std::unique_ptr<OcrEngine> make_engine(const std::map<std::string, std::string>& config) {
    const auto kind_it = config.find("kind");
    const std::string kind = kind_it == config.end() ? "mock" : kind_it->second;
    auto get_int = [&](const std::string& key, long long fallback) -> long long {
        const auto it = config.find(key);
        if (it == config.end()) return fallback;
        try {
            std::size_t used = 0;
            const long long v = std::stoll(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument(key);
            return v;
        } catch (const std::exception&) {
            throw InvalidParameter("engine option " + key + " must be an integer");
        }
    };
    auto reject_unknown = [&](std::initializer_list<std::string_view> allowed) {
        for (const auto& [key, value] : config) {
            bool ok = key == "kind";
            for (auto a : allowed) ok = ok || key == a;
            if (!ok) throw InvalidParameter("unknown engine option '" + key + "' for " + kind);
        }
    };

    if (kind == "mock" || kind == "synthetic-mock") {
        reject_unknown({"seed", "rejection"});
        return std::make_unique<MockOcrEngine>(static_cast<std::uint64_t>(get_int("seed", 0)),
                                               static_cast<int>(get_int("rejection", 10)));
    }
    if (kind == "tesseract" || kind == "external-process") {
        reject_unknown({"binary", "language", "psm", "max_concurrent", "work_dir"});
        TesseractConfig tc;
        if (auto it = config.find("binary"); it != config.end()) tc.binary = it->second;
        if (auto it = config.find("language"); it != config.end()) tc.language = it->second;
        if (auto it = config.find("work_dir"); it != config.end()) tc.work_dir = it->second;
        if (config.contains("psm")) tc.page_segmentation_mode = static_cast<int>(get_int("psm", 3));
        tc.max_concurrent = static_cast<int>(get_int("max_concurrent", 4));
        return std::make_unique<TesseractEngine>(std::move(tc));
    }
    throw InvalidParameter("unknown engine kind '" + kind + "'");
}

}  // namespace ocrtune
