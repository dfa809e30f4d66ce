#pragma once

#include <cstdint>
#include <string>

#include "crange/matrix.hpp"

namespace crange {

/// Matrix JSON schema used repo-wide:
///   { "n": <int>, "entries": [[[re, im], ...], ...] }
/// with `entries` exactly n x n and each entry a 2-array of doubles.
std::string matrix_to_json(const CMat& m);
CMat matrix_from_json(const std::string& text);

CMat load_matrix(const std::string& path);
void save_matrix(const std::string& path, const CMat& m);

/// FNV-1a over the raw entry bytes; used to reference matrices by content.
std::string content_hash(const CMat& m);

} // namespace crange
