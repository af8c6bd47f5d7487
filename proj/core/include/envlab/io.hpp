#pragma once

// JSON forms of the library types. Atom indices are 1-based on disk.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "envlab/complement.hpp"
#include "envlab/ergodic.hpp"

namespace envlab {

using Json = nlohmann::json;

/// {"n": int, "p": number | "inf", "weights": [...]}; weights default to 1.
Json to_json(const Space& space);
Space space_from_json(const Json& j);

Json to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// Row-major nested arrays.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"basis": [[...], ...]}: the canonical basis.
Json to_json(const Subspace& y);
/// Canonicalises the listed vectors.
Subspace subspace_from_json(const Space& space, const Json& j);

Json to_json(const Partition& partition);
Partition partition_from_json(const Json& j);

Json to_json(const SignedPermutation& g);
SignedPermutation signed_permutation_from_json(const Json& j);

Json to_json(const ErgodicReport& report);
Json to_json(const ProjectionSearchResult& result);

/// Parses a file; ParseError messages carry the path and byte offset or
/// the JSON pointer of the offending value.
Json load_json(const std::filesystem::path& path);
Json parse_json(const std::string& text, const std::string& origin = "<input>");
void save_json(const std::filesystem::path& path, const Json& j);

}  // namespace envlab
