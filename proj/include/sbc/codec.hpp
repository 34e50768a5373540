#pragma once
#include <string>

#include "sbc/cube.hpp"

namespace sbc {

// Canonical structured encoding: keys in the order n, start, mask, layers;
// mask omitted when all-true; arrays are layer-major (layers[k][i][j]).
std::string encode_cube(const Cube& c);
Cube decode_cube_json(const std::string& text);

// Appendix-style text form: one n x n grid per layer, "." for holes, blank
// line between layers. start is 0 in this form.
std::string encode_cube_text(const Cube& c);
Cube decode_cube_text(const std::string& text);

// Sniffs the format: leading '{' means the structured form.
Cube decode_cube(const std::string& text);

}  // namespace sbc
