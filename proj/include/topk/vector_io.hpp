#pragma once

#include <string>
#include <vector>

#include "topk/core.hpp"

namespace topk {

// ".txt": one decimal value per line (written with 17 significant digits).
// ".f64": little-endian uint64 length, then that many little-endian doubles.
// Other extensions raise ArgumentError; unreadable or malformed files IoError.
std::vector<double> read_vector(const std::string& path);
void write_vector(const std::string& path, std::span<const double> data);

}  // namespace topk
