#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "l1rank/bitmatrix.hpp"

namespace l1rank {

// Matrix text format: a header line "m n", then m lines of exactly n
// characters from {0,1}. Any other character is a ParseError that cites the
// line and column (both 1-based).
BitMatrix parse_matrix(std::string_view text);
BitMatrix read_matrix_file(const std::string& path);

std::string format_matrix(const BitMatrix& m);
void write_matrix_file(const std::string& path, const BitMatrix& m);

}  // namespace l1rank
