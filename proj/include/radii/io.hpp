#pragma once

#include <string>
#include <string_view>

#include "radii/complex_matrix.hpp"

namespace radii {

// MatrixFile: {"rows": r, "cols": c, "data": [[[re, im], ...], ...]}.
// Writing uses 17 significant digits so a read of the output is bit-exact.
std::string matrix_to_json(const ComplexMatrix& x);

// Throws ParseError naming the offending field.
ComplexMatrix matrix_from_json(std::string_view text);

ComplexMatrix read_matrix_file(const std::string& path);

std::string read_text_file(const std::string& path);

// Writes to a sibling temp file and renames it over `path`.
void write_text_atomic(const std::string& path, std::string_view content);

}  // namespace radii
