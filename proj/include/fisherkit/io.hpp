#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fisherkit/graham_pollak.hpp"
#include "fisherkit/set_family.hpp"
#include "fisherkit/types.hpp"

namespace fisher {

// Family text format: header line `n=<int>`, then one line per set with
// space-separated 1-based element indices. The structured twin is
// {"n": <int>, "sets": [[...], ...]}. Parse/serialize round-trips are
// lossless in both.
std::string serialize_family(const SetFamily& family);
std::string serialize_family_json(const SetFamily& family);
SetFamily parse_family_text(const std::string& text);
SetFamily parse_family_json(const std::string& text);
// Sniffs JSON by a leading '{', text otherwise.
SetFamily parse_family(const std::string& text);

// Matrix text format: header `m=<int> n=<int>`, then m rows of n integers.
std::string serialize_matrix(const IntMatrix& X);
IntMatrix parse_matrix(const std::string& text);

// Partition text format: header `n=<int>`, then one line per part with the
// two sides separated by `|`, e.g. `1 2 | 3 4`. The structured twin is
// {"n": <int>, "parts": [{"left": [...], "right": [...]}, ...]}.
std::string serialize_partition(const BicliquePartition& p);
std::string serialize_partition_json(const BicliquePartition& p);
BicliquePartition parse_partition_text(const std::string& text);
BicliquePartition parse_partition_json(const std::string& text);
BicliquePartition parse_partition(const std::string& text);

// True when the text's first header token is `m=`, i.e. matrix rather than
// family input.
bool looks_like_matrix(const std::string& text);

// FNV-1a over the canonical text serialization, printed as 16 hex digits.
// Stable content fingerprints for certificates.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex_digest(std::uint64_t value);
std::string family_digest(const SetFamily& family);
std::string matrix_digest(const IntMatrix& X);

// Whole-file helpers; throw InputError with the path on failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace fisher
