#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ocrtune::csv {

using Row = std::vector<std::string>;

/// Quotes a field when it holds a comma, quote or line break.
std::string quote(std::string_view field);
std::string format_row(const Row& row);
/// Shortest "%.10g" rendering.
std::string number(double value);

void write(const std::filesystem::path& path, const Row& header, const std::vector<Row>& rows);
/// Header is row 0. Throws IoError / MalformedInput.
std::vector<Row> read(const std::filesystem::path& path);
std::vector<Row> parse(std::string_view content);

}  // namespace ocrtune::csv
