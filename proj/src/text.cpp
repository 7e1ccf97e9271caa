#include "ocrtune/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "ocrtune/errors.hpp"

namespace ocrtune::text {
namespace {

icu::UnicodeString normalized(std::string_view utf8) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc_form = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw Error("ICU NFC normaliser unavailable");
    const auto src = icu::UnicodeString::fromUTF8(
        icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    icu::UnicodeString out = nfc_form->normalize(src, status);
    if (U_FAILURE(status)) throw MalformedInput("text normalisation failed");
    return out;
}

}  // namespace

std::string nfc(std::string_view utf8) {
    std::string out;
    normalized(utf8).toUTF8String(out);
    return out;
}

std::u32string scalars(std::string_view utf8) {
    const icu::UnicodeString s = normalized(utf8);
    std::u32string out;
    out.reserve(static_cast<std::size_t>(s.length()));
    for (int32_t i = 0; i < s.length();) {
        const UChar32 c = s.char32At(i);
        out.push_back(static_cast<char32_t>(c));
        i += U16_LENGTH(c);
    }
    return out;
}

std::string to_utf8(std::u32string_view s) {
    icu::UnicodeString u = icu::UnicodeString::fromUTF32(
        reinterpret_cast<const UChar32*>(s.data()), static_cast<int32_t>(s.size()));
    std::string out;
    u.toUTF8String(out);
    return out;
}

std::vector<std::u32string> tokenize(std::string_view utf8) {
    std::vector<std::u32string> tokens;
    std::u32string current;
    for (char32_t c : scalars(utf8)) {
        if (u_isUWhiteSpace(static_cast<UChar32>(c))) {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

}  // namespace ocrtune::text
