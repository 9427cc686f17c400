#pragma once

#include "shadowlab/analysis.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace shadowlab {

using Json = nlohmann::json;

/// A self-contained experiment instance: polytope, objective, optional
/// auxiliary objective (parametric convention), start vertex, and an audit
/// trail of how the instance was produced. All facet indices in files are
/// 1-based; in memory everything is 0-based.
struct InstanceBundle {
  HPolytope polytope;
  RVec c;
  std::optional<RVec> w;  // parametric convention
  std::vector<int> start_tight;
  std::string generator;
  Json params;                      // generator parameters
  std::uint64_t seed = 0;
  std::vector<std::string> chain;   // transforms applied, in order

  VertexBasis resolve_start() const;
  std::optional<ShadowSpec> shadow_spec() const;  // parametric, when w is present
};

Json rvec_to_json(const RVec& v);
RVec rvec_from_json(const Json& j);
Json rmat_to_json(const RMat& m);
RMat rmat_from_json(const Json& j);

Json polytope_to_json(const HPolytope& p);
HPolytope polytope_from_json(const Json& j);

Json bundle_to_json(const InstanceBundle& bundle);
InstanceBundle bundle_from_json(const Json& j);

Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json path_record_to_json(const PathRecord& record);

Json report_to_json(const VerificationReport& report);

/// One-line CSV row: instance id, n, m, target, samples, min_length,
/// certificate_ok, seed.
std::string report_to_csv(const std::string& instance_id, int n, int m,
                          const VerificationReport& report);

/// Polyhedral-norm generator file: {"rows": [[rational, ...], ...]}.
RMat norm_generators_from_json(const Json& j);

InstanceBundle load_bundle(const std::string& path, std::size_t vertex_cap = kDefaultVertexCap);
void save_bundle(const InstanceBundle& bundle, const std::string& path);
Json load_json(const std::string& path);
void save_json(const Json& j, const std::string& path);

}  // namespace shadowlab
