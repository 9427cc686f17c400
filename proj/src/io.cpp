#include "shadowlab/io.hpp"

#include <algorithm>
#include <fstream>

namespace shadowlab {

VertexBasis InstanceBundle::resolve_start() const {
  auto solved = vertex_from_basis(polytope, start_tight);
  if (solved.outcome != BasisOutcome::vertex) {
    fail(Errc::bad_input, "bundle: start tight set does not resolve to a vertex");
  }
  return std::move(*solved.vertex);
}

std::optional<ShadowSpec> InstanceBundle::shadow_spec() const {
  if (!w) return std::nullopt;
  return ShadowSpec(*w, c, Convention::parametric);
}

Json rvec_to_json(const RVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(rat_to_string(v(i)));
  return out;
}

RVec rvec_from_json(const Json& j) {
  if (!j.is_array()) fail(Errc::io_error, "expected an array of rationals");
  RVec out(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    out(static_cast<int>(i)) = rat_from_string(j[i].get<std::string>());
  }
  return out;
}

Json rmat_to_json(const RMat& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) out.push_back(rvec_to_json(RVec(m.row(i).transpose())));
  return out;
}

RMat rmat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail(Errc::io_error, "expected a nonempty array of rows");
  const RVec first = rvec_from_json(j[0]);
  RMat out(static_cast<int>(j.size()), first.size());
  out.row(0) = first.transpose();
  for (std::size_t i = 1; i < j.size(); ++i) {
    const RVec row = rvec_from_json(j[i]);
    if (row.size() != first.size()) fail(Errc::io_error, "ragged matrix rows");
    out.row(static_cast<int>(i)) = row.transpose();
  }
  return out;
}

Json polytope_to_json(const HPolytope& p) {
  return Json{{"dim", p.dim()},
              {"A", rmat_to_json(p.a)},
              {"b", rvec_to_json(p.b)},
              {"labels", p.labels},
              {"trusted_bounded", p.trusted_bounded}};
}

HPolytope polytope_from_json(const Json& j) {
  HPolytope p;
  p.a = rmat_from_json(j.at("A"));
  p.b = rvec_from_json(j.at("b"));
  if (j.contains("labels")) p.labels = j.at("labels").get<std::vector<std::string>>();
  if (j.contains("trusted_bounded")) p.trusted_bounded = j.at("trusted_bounded").get<bool>();
  if (j.contains("dim") && j.at("dim").get<int>() != p.dim()) {
    fail(Errc::io_error, "polytope: declared dim disagrees with A");
  }
  if (p.b.size() != p.a.rows()) fail(Errc::io_error, "polytope: |b| != row count");
  return p;
}

namespace {

std::vector<int> indices_from_json_1based(const Json& j) {
  std::vector<int> out;
  for (const auto& e : j) {
    const int idx = e.get<int>();
    if (idx < 1) fail(Errc::io_error, "facet indices in files are 1-based");
    out.push_back(idx - 1);
  }
  return out;
}

Json indices_to_json_1based(const std::vector<int>& idx) {
  Json out = Json::array();
  for (int i : idx) out.push_back(i + 1);
  return out;
}

}  // namespace

Json bundle_to_json(const InstanceBundle& bundle) {
  Json meta{{"generator", bundle.generator},
            {"params", bundle.params},
            {"seed", bundle.seed},
            {"chain", bundle.chain}};
  Json out{{"schema", "shadowlab/bundle-v1"},
           {"polytope", polytope_to_json(bundle.polytope)},
           {"c", rvec_to_json(bundle.c)},
           {"start", indices_to_json_1based(bundle.start_tight)},
           {"metadata", meta}};
  out["w"] = bundle.w ? rvec_to_json(*bundle.w) : Json(nullptr);
  return out;
}

InstanceBundle bundle_from_json(const Json& j) {
  InstanceBundle out;
  out.polytope = polytope_from_json(j.at("polytope"));
  out.c = rvec_from_json(j.at("c"));
  if (j.contains("w") && !j.at("w").is_null()) out.w = rvec_from_json(j.at("w"));
  out.start_tight = indices_from_json_1based(j.at("start"));
  std::sort(out.start_tight.begin(), out.start_tight.end());
  if (j.contains("metadata")) {
    const Json& meta = j.at("metadata");
    if (meta.contains("generator")) out.generator = meta.at("generator").get<std::string>();
    if (meta.contains("params")) out.params = meta.at("params");
    if (meta.contains("seed")) out.seed = meta.at("seed").get<std::uint64_t>();
    if (meta.contains("chain")) out.chain = meta.at("chain").get<std::vector<std::string>>();
  }
  return out;
}

Json certificate_to_json(const Certificate& cert) {
  Json points = Json::array();
  for (const auto& p : cert.segment_points) points.push_back(rvec_to_json(p));
  auto ball = [](const Ball& d) {
    return Json{{"center", rvec_to_json(d.center)}, {"radius", rat_to_string(d.radius)}};
  };
  return Json{{"alpha", cert.alpha},
              {"epsilon", rat_to_string(cert.epsilon)},
              {"segment_points", points},
              {"D_w", ball(cert.d_w)},
              {"D_c", ball(cert.d_c)},
              {"cut_facets", Json::array({indices_to_json_1based(cert.cut_facets[0]),
                                          indices_to_json_1based(cert.cut_facets[1])})}};
}

Certificate certificate_from_json(const Json& j) {
  Certificate cert;
  cert.alpha = j.at("alpha").get<long>();
  cert.epsilon = rat_from_string(j.at("epsilon").get<std::string>());
  for (const auto& p : j.at("segment_points")) cert.segment_points.push_back(rvec_from_json(p));
  auto ball = [](const Json& b) {
    return Ball{rvec_from_json(b.at("center")), rat_from_string(b.at("radius").get<std::string>())};
  };
  cert.d_w = ball(j.at("D_w"));
  cert.d_c = ball(j.at("D_c"));
  const Json& cuts = j.at("cut_facets");
  if (!cuts.is_array() || cuts.size() != 2) fail(Errc::io_error, "certificate: cut_facets must hold two lists");
  cert.cut_facets[0] = indices_from_json_1based(cuts[0]);
  cert.cut_facets[1] = indices_from_json_1based(cuts[1]);
  return cert;
}

Json path_record_to_json(const PathRecord& record) {
  Json vertices = Json::array();
  for (const auto& v : record.vertices) {
    vertices.push_back(Json{{"point", rvec_to_json(v.point)},
                            {"tight", indices_to_json_1based(v.tight)}});
  }
  Json c_values = Json::array();
  for (const auto& value : record.c_values) c_values.push_back(rat_to_string(value));
  Json out{{"rule", record.rule_name},
           {"length", record.length},
           {"vertices", vertices},
           {"c_values", c_values}};
  if (record.w_values) {
    Json w_values = Json::array();
    for (const auto& value : *record.w_values) w_values.push_back(rat_to_string(value));
    out["w_values"] = w_values;
  } else {
    out["w_values"] = Json(nullptr);
  }
  return out;
}

Json report_to_json(const VerificationReport& report) {
  return Json{{"samples", report.samples},
              {"min_length", report.min_length},
              {"max_length", report.max_length},
              {"seed", report.seed},
              {"failures", report.failures},
              {"certificate_ok", report.certificate_ok},
              {"resampled", report.resampled},
              {"target", report.target}};
}

std::string report_to_csv(const std::string& instance_id, int n, int m,
                          const VerificationReport& report) {
  return instance_id + "," + std::to_string(n) + "," + std::to_string(m) + "," +
         std::to_string(report.target) + "," + std::to_string(report.samples) + "," +
         std::to_string(report.min_length) + "," + (report.certificate_ok ? "true" : "false") +
         "," + std::to_string(report.seed);
}

RMat norm_generators_from_json(const Json& j) { return rmat_from_json(j.at("rows")); }

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "' for reading");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::io_error, "malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

void save_json(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) fail(Errc::io_error, "write to '" + path + "' failed");
}

InstanceBundle load_bundle(const std::string& path, std::size_t vertex_cap) {
  InstanceBundle bundle = bundle_from_json(load_json(path));
  validate_polytope(bundle.polytope, vertex_cap);
  return bundle;
}

void save_bundle(const InstanceBundle& bundle, const std::string& path) {
  save_json(bundle_to_json(bundle), path);
}

}  // namespace shadowlab
