#pragma once

#include <cumcal/dataset.hpp>
#include <cumcal/experiments.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cumcal {

// Parses "score,response" text. Throws ValidationError naming the offending line.
auto parse_csv(std::string_view text) -> std::vector<RawPair>;
// Throws IoError if the file cannot be read.
auto read_csv(std::filesystem::path const& path) -> std::vector<RawPair>;

// Header plus one row per pair; scores with 17 significant digits so they round-trip exactly.
auto format_csv(std::span<RawPair const> pairs) -> std::string;
auto write_csv(std::span<RawPair const> pairs, std::filesystem::path const& path) -> void;

auto to_pairs(Dataset const& ds) -> std::vector<RawPair>;

// "axis,<series names...>" then one row per axis point.
auto format_sweep_csv(SweepResult const& result) -> std::string;

// Writes to a sibling temporary file and renames it into place, so readers never see a partial file.
// Throws IoError naming the path on failure.
auto write_file_atomic(std::filesystem::path const& path, std::string_view contents) -> void;

} // namespace cumcal
