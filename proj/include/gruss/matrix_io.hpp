#pragma once

#include <string>

#include "gruss/types.hpp"

namespace gruss {

// Matrix JSON format: {"n": <int>, "re": n x n reals, "im": n x n reals};
// a missing "im" means the zero matrix.
Matrix read_matrix_json(const std::string& path);
void write_matrix_json(const Matrix& m, const std::string& path);
std::string matrix_to_json_string(const Matrix& m);
Matrix matrix_from_json_string(const std::string& text);

}  // namespace gruss
