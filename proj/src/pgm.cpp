#include "ocrtune/pgm.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ocrtune/errors.hpp"

namespace ocrtune::pgm {
namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    long number(const char* what) {
        skip_space_and_comments();
        long value = 0;
        const char* first = bytes_.data() + pos_;
        const char* last = bytes_.data() + bytes_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) {
            throw MalformedInput(std::string("PGM header: bad ") + what);
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    std::string_view take(std::size_t n) {
        const auto out = bytes_.substr(pos_, n);
        pos_ += n;
        return out;
    }

    std::size_t pos() const { return pos_; }
    void advance() { ++pos_; }
    bool at_end() const { return pos_ >= bytes_.size(); }
    char peek() const { return bytes_[pos_]; }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

Raster decode(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        throw MalformedInput("not a binary PGM (P5) stream");
    }
    HeaderReader reader(bytes);
    reader.take(2);
    const long width = reader.number("width");
    const long height = reader.number("height");
    const long maxval = reader.number("maxval");
    if (width < 1 || height < 1) throw MalformedInput("PGM dimensions must be positive");
    if (maxval != 255) throw MalformedInput("only maxval 255 is supported");
    // Exactly one whitespace byte separates the header from the raster.
    if (reader.at_end() || !std::isspace(static_cast<unsigned char>(reader.peek()))) {
        throw MalformedInput("PGM header not terminated");
    }
    reader.advance();
    const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const auto body = reader.take(n);
    if (body.size() != n) throw MalformedInput("PGM raster truncated");

    Raster out(static_cast<int>(width), static_cast<int>(height));
    auto dst = out.data();
    for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<std::uint8_t>(body[i]);
    return out;
}

std::string encode(const Raster& r) {
    std::string out = "P5\n" + std::to_string(r.width()) + " " + std::to_string(r.height()) +
                      "\n255\n";
    const auto px = r.data();
    out.append(reinterpret_cast<const char*>(px.data()), px.size());
    return out;
}

Raster read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return decode(buffer.str());
    } catch (const MalformedInput& e) {
        throw MalformedInput(path.string() + ": " + e.what());
    }
}

void write(const std::filesystem::path& path, const Raster& r) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    const auto bytes = encode(r);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace ocrtune::pgm
