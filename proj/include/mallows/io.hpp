#pragma once

// Text formats: rankings CSV (one assessor per row), small CSV helpers and
// content digests for run manifests.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mallows/perm_core.hpp"

namespace mallows {

/// Splits one CSV record. Double-quoted fields may contain commas and "".
std::vector<std::string> split_csv_line(const std::string& line);

std::string trim(const std::string& s);

struct RankingDataset {
  std::vector<std::string> items;  ///< header names, one per column
  RankingSample sample;
};

/// Header "item_1,...,item_n" (any names), then one row of integer ranks per
/// assessor. Rows that are not rankings are rejected with their line number.
RankingDataset parse_rankings_csv(const std::string& text);
RankingDataset read_rankings_csv(const std::filesystem::path& path);

void write_rankings_csv(std::ostream& out, const RankingSample& s,
                        const std::vector<std::string>& items = {});

std::string read_file(const std::filesystem::path& path);

/// FNV-1a 64-bit digest as 16 hex digits.
std::string digest_hex(const std::string& bytes);

}  // namespace mallows
