#pragma once

// JSON formats. Exact values are written as strings "a+b*sqrt5"; floats are
// rounded to 12 significant digits so that output is stable across runs.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "quasilattice/generator.hpp"

namespace quasilattice {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double round12(double v);

Json to_json(const GoldenScalar& v);
Json to_json(const GoldenVector& v);
Json to_json(const GoldenMatrix& m);
GoldenScalar golden_from_json(const Json& j);
GoldenVector golden_vector_from_json(const Json& j);
GoldenMatrix golden_matrix_from_json(const Json& j);

/// {name, k, n, gram, generators: [{perm (1-based), signs}], relations,
/// embedding?}
Json cluster_to_json(const ClusterSpec& c);
/// Throws FormatError on malformed input or when validation fails.
ClusterSpec cluster_from_json(const Json& j);
ClusterSpec load_cluster_file(const std::filesystem::path& path);

/// {cluster, k, n, gamma, radius, kappa_float, embedding, points, edges}
Json pattern_to_json(const Pattern& p, const NeighborGraph& g);
Json pattern_to_json(const Pattern& p);
Pattern pattern_from_json(const Json& j);
bool same_pattern(const Pattern& a, const Pattern& b);

Json reduction_to_json(const std::string& cluster, const ReducedScheme& r);
Json surface_to_json(const AtomicSurface& s);

Json occupancy_to_json(const OccupancyStats& st);

/// Deterministic text: two-space indent, trailing newline.
std::string dump(const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace quasilattice
