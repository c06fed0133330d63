#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "gtsp/instance.hpp"

namespace gtsp {

/// Reads a TSPLIB file (TYPE: TSP or GTSP; GTSP sets are ignored for TSP).
/// Supports EUC_2D, GEO and EXPLICIT with FULL_MATRIX, LOWER_DIAG_ROW,
/// UPPER_DIAG_ROW, LOWER_ROW and UPPER_ROW. Throws ParseError.
TspInstance parse_tsp(std::string_view text);

/// Reads a GTSP file. EXPLICIT entries equal to the sentinel announced by a
/// "COMMENT: INFINITY_SENTINEL: <value>" line become Weight::infinity().
GtspInstance parse_gtsp(std::string_view text);

/// EXPLICIT FULL_MATRIX form; INFINITY is written as `sentinel`, which must
/// strictly exceed every finite weight (ContractViolation otherwise).
std::string write_gtsp(const GtspInstance& instance, std::int64_t sentinel);

/// NODE_COORD_SECTION form for coordinate instances without INFINITY
/// entries. Coordinates are printed in shortest round-trip form.
std::string write_gtsp_coordinates(const GtspInstance& instance);

/// Smallest "nice" sentinel above every finite weight: 999999999 unless the
/// instance needs something larger.
std::int64_t default_sentinel(const GtspInstance& instance);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace gtsp
