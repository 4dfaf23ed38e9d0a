#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "bsdom/sample_set.hpp"

namespace bsdom {

// Parses rows of "x,y" or "x,y,w" (comma, semicolon, tab or space
// separated). A first row whose leading cell is not numeric is treated as a
// header; blank lines and lines starting with '#' are skipped. Missing
// weights default to 1; weights are normalized and duplicate points merged
// by SampleSet construction. Errors carry source_name:line positions:
// non-numeric cells and wrong column counts are parse errors, negative
// weights and files without data rows are validation errors.
SampleSet parse_samples(std::string_view text, std::string_view source_name);

SampleSet ingest(const std::filesystem::path& path);

// Shortest round-trip decimal representation (deterministic, locale-free).
std::string format_double(double v);

}  // namespace bsdom
