// Command-line front end: generate instances, apply the polytope transforms,
// run pivot rules, verify the path-length bounds, and emit CSV/SVG artifacts.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "shadowlab/analysis.hpp"
#include "shadowlab/io.hpp"

using namespace shadowlab;

namespace {

constexpr const char* kSvgVersionComment = "<!-- shadowlab svg v1 -->";

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::generation_failed:
      return 2;
    case Errc::io_error:
      return 3;
    case Errc::tie:
      return 4;
    case Errc::step_cap_exceeded:
      return 5;
    case Errc::degenerate_projection:
      return 6;
    case Errc::not_interior:
    case Errc::eps_too_large:
    case Errc::ball_not_interior:
    case Errc::delta_underflow:
    case Errc::degenerate_path:
    case Errc::k_search_exhausted:
      return 7;
    case Errc::degenerate:
    case Errc::non_generic:
    case Errc::duplicate_values:
    case Errc::singular:
    case Errc::infeasible:
    case Errc::unbounded_edge:
      return 8;
    default:
      return 9;
  }
}

RVec parse_vector(const std::string& text) {
  std::vector<Rat> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    parts.push_back(rat_from_string(
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  RVec out(static_cast<int>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) out(static_cast<int>(i)) = parts[i];
  return out;
}

RMat poly_file_loader(const std::string& path) {
  return norm_generators_from_json(load_json(path));
}

struct GlobalOpts {
  std::uint64_t seed = 0;
  long step_cap = kDefaultStepCap;
  std::size_t vertex_cap = kDefaultVertexCap;
  bool quiet = false;
};

void say(const GlobalOpts& g, const std::string& line) {
  if (!g.quiet) std::cout << line << "\n";
}

// ---------------- generate ----------------

RVec doubling_objective(int n) {
  RVec c(n);
  Rat p = 1;
  for (int i = 0; i < n; ++i, p *= 2) c(i) = p;
  return c;
}

int cmd_generate(const GlobalOpts& g, const std::string& kind, int n,
                 const std::optional<std::string>& eps_text, const std::string& out) {
  InstanceBundle bundle;
  bundle.seed = g.seed;
  if (kind == "goldfarb") {
    std::optional<Rat> preset;
    if (eps_text) preset = rat_from_string(*eps_text);
    const auto inst = goldfarb_cube(n, preset);
    bundle.polytope = inst.polytope;
    bundle.c = inst.spec.c;
    bundle.w = inst.spec.parametric_w();
    bundle.start_tight = inst.start.tight;
    bundle.generator = "goldfarb";
    bundle.params = Json{{"n", n}, {"eps", rat_to_string(inst.eps_param)}};
    bundle.chain = {"generate goldfarb n=" + std::to_string(n) +
                    " eps=" + rat_to_string(inst.eps_param)};
  } else if (kind == "cube") {
    HPolytope p;
    p.a = RMat::Zero(2 * n, n);
    p.b = RVec(2 * n);
    for (int i = 0; i < n; ++i) {
      p.a(i, i) = -1;
      p.b(i) = 0;
      p.a(n + i, i) = 1;
      p.b(n + i) = 1;
      p.labels.push_back("lo" + std::to_string(i + 1));
    }
    for (int i = 0; i < n; ++i) p.labels.push_back("hi" + std::to_string(i + 1));
    bundle.polytope = std::move(p);
    bundle.c = doubling_objective(n);
    for (int i = 0; i < n; ++i) bundle.start_tight.push_back(i);
    bundle.generator = "cube";
    bundle.params = Json{{"n", n}};
    bundle.chain = {"generate cube n=" + std::to_string(n)};
  } else if (kind == "klee-minty-style") {
    const Rat eps(1, 3);
    RMat a = RMat::Zero(2 * n, n);
    RVec b(2 * n);
    std::vector<std::string> labels(2 * n);
    for (int j = 0; j < n; ++j) {
      a(j, j) = -1;
      if (j > 0) a(j, j - 1) = eps;
      b(j) = 0;
      labels[j] = "lo" + std::to_string(j + 1);
      a(n + j, j) = 1;
      if (j > 0) a(n + j, j - 1) = eps;
      b(n + j) = 1;
      labels[n + j] = "hi" + std::to_string(j + 1);
    }
    bundle.polytope = HPolytope{std::move(a), std::move(b), std::move(labels), false};
    RVec c(n);
    Rat t = 1;
    for (int i = n - 1; i >= 0; --i) {
      c(i) = t;
      t /= 8;
    }
    bundle.c = c;
    for (int i = 0; i < n; ++i) bundle.start_tight.push_back(i);
    bundle.generator = "klee-minty-style";
    bundle.params = Json{{"n", n}, {"eps", rat_to_string(eps)}};
    bundle.chain = {"generate klee-minty-style n=" + std::to_string(n)};
  } else {
    fail(Errc::bad_input, "unknown generator kind '" + kind + "'");
  }
  save_bundle(bundle, out);
  say(g, "wrote " + out + " (" + std::to_string(bundle.polytope.facet_count()) + " facets, dim " +
             std::to_string(bundle.polytope.dim()) + ")");
  return 0;
}

// ---------------- transform ----------------

int cmd_transform(const GlobalOpts& g, const std::string& op, const std::string& in,
                  const std::string& out, const std::string& cert_out,
                  const std::optional<std::string>& vertex_text,
                  const std::optional<std::string>& w_text,
                  const std::optional<std::string>& eps_text,
                  const std::optional<std::string>& center_text,
                  const std::optional<std::string>& radius_text,
                  const std::optional<std::string>& k_text) {
  InstanceBundle bundle = load_bundle(in, g.vertex_cap);

  auto require_w = [&]() -> RVec {
    if (w_text) return parse_vector(*w_text);
    if (bundle.w) return *bundle.w;
    fail(Errc::bad_input, op + " needs an auxiliary objective (bundle w or --w)");
  };

  if (op == "vertex-cut") {
    if (!vertex_text) fail(Errc::bad_input, "vertex-cut needs --vertex");
    const VertexBasis v = vertex_from_point(bundle.polytope, parse_vector(*vertex_text));
    if (!w_text) fail(Errc::bad_input, "vertex-cut needs --w");
    const RVec w = parse_vector(*w_text);
    std::optional<Rat> eps;
    if (eps_text) eps = rat_from_string(*eps_text);
    bundle.polytope = vertex_cut(bundle.polytope, v, w, eps);
    if (vertex_from_basis(bundle.polytope, bundle.start_tight).outcome != BasisOutcome::vertex) {
      bundle.start_tight = find_any_vertex(bundle.polytope)->tight;
    }
    bundle.chain.push_back("vertex-cut at " + *vertex_text);
  } else if (op == "thin-cone") {
    if (!vertex_text) fail(Errc::bad_input, "thin-cone needs --vertex");
    const VertexBasis v = vertex_from_point(bundle.polytope, parse_vector(*vertex_text));
    const SimplicialCone cone = normal_cone(bundle.polytope, v);
    RVec center;
    if (center_text) {
      center = parse_vector(*center_text);
    } else {
      center = zero_vector(bundle.polytope.dim());
      for (int i = 0; i < cone.rays.rows(); ++i) center += RVec(cone.rays.row(i).transpose());
    }
    Rat radius;
    if (radius_text) {
      radius = rat_from_string(*radius_text);
    } else {
      radius = cone_linf_inradius(cone, center) / 2;
    }
    auto res = thin_cone(bundle.polytope, v, Ball{center, radius});
    bundle.polytope = std::move(res.polytope);
    bundle.start_tight = res.new_vertex.tight;
    bundle.chain.push_back("thin-cone at " + *vertex_text + " radius " + rat_to_string(radius));
  } else if (op == "many-from-one" || op == "fixed-c") {
    const RVec w = require_w();
    const ShadowSpec spec(w, bundle.c, Convention::parametric);
    Certificate cert;
    VertexBasis a, b;
    if (op == "many-from-one") {
      auto res = many_from_one(bundle.polytope, spec);
      bundle.polytope = std::move(res.q);
      cert = std::move(res.cert);
      a = std::move(res.a);
      b = std::move(res.b);
    } else {
      auto res = fixed_c_variant(bundle.polytope, spec);
      bundle.polytope = std::move(res.q);
      cert = std::move(res.cert);
      a = std::move(res.a);
      b = std::move(res.b);
    }
    bundle.start_tight = a.tight;
    Json b_tight = Json::array();
    for (int t : b.tight) b_tight.push_back(t + 1);
    bundle.params["b_tight"] = b_tight;
    bundle.params["alpha"] = cert.alpha;
    bundle.chain.push_back(op + " alpha=" + std::to_string(cert.alpha));
    const std::string cert_path = cert_out.empty() ? out + ".cert.json" : cert_out;
    save_json(certificate_to_json(cert), cert_path);
    say(g, "wrote " + cert_path);
  } else if (op == "compress") {
    if (!k_text) fail(Errc::bad_input, "compress needs --k");
    const CompressSpec cs{require_w(), rat_from_string(*k_text)};
    auto [pk, ck] = compress(bundle.polytope, bundle.c, cs);
    const VertexBasis start = bundle.resolve_start();
    bundle.polytope = std::move(pk);
    bundle.c = std::move(ck);
    // A_k fixes w, so the stored auxiliary objective remains valid.
    bundle.start_tight = compress_vertex(cs, start).tight;
    bundle.chain.push_back("compress k=" + *k_text);
  } else if (op == "canonicalize") {
    const RVec w = require_w();
    const ShadowSpec spec(w, bundle.c, Convention::parametric);
    auto res = canonicalize_w_to_e1(bundle.polytope, spec, bundle.resolve_start());
    bundle.polytope = std::move(res.polytope);
    bundle.c = res.spec.c;
    bundle.w = res.spec.parametric_w();
    bundle.start_tight = res.start.tight;
    bundle.chain.push_back("canonicalize");
  } else {
    fail(Errc::bad_input, "unknown transform '" + op + "'");
  }

  save_bundle(bundle, out);
  say(g, "wrote " + out + " (" + std::to_string(bundle.polytope.facet_count()) + " facets)");
  return 0;
}

// ---------------- run ----------------

int cmd_run(const GlobalOpts& g, const std::string& rule_text, const std::string& in,
            const std::string& report_out) {
  const InstanceBundle bundle = load_bundle(in, g.vertex_cap);
  const VertexBasis start = bundle.resolve_start();
  const ParsedRule parsed = parse_rule_spec(rule_text, poly_file_loader);

  PivotRuleSpec rule{DantzigRule{}, TiePolicy::error};
  if (parsed.kind == "dantzig") {
    rule.rule = DantzigRule{};
  } else if (parsed.kind == "greatest") {
    rule.rule = GreatestImprovementRule{};
  } else if (parsed.kind == "shadow") {
    RVec w_proj;
    if (parsed.shadow_w) {
      w_proj = *parsed.shadow_w;
    } else if (bundle.w) {
      w_proj = -*bundle.w;  // bundle stores the parametric convention
    } else {
      fail(Errc::bad_input, "shadow rule needs a w (bundle w or shadow:<w>)");
    }
    rule.rule = ShadowRule{ShadowSpec(w_proj, bundle.c, Convention::projection)};
  } else {
    rule.rule = SteepestEdgeRule{*parsed.norm};
  }

  const PathRecord rec = run_simplex(bundle.polytope, bundle.c, start, rule, g.step_cap);
  std::cout << "length " << rec.length << "\n";
  if (!report_out.empty()) save_json(path_record_to_json(rec), report_out);
  return 0;
}

// ---------------- verify ----------------

VertexBasis resolve_tight_1based(const HPolytope& p, const Json& tight_json) {
  std::vector<int> tight;
  for (const auto& e : tight_json) tight.push_back(e.get<int>() - 1);
  std::sort(tight.begin(), tight.end());
  auto solved = vertex_from_basis(p, tight);
  if (solved.outcome != BasisOutcome::vertex) {
    fail(Errc::bad_input, "recorded tight set does not resolve to a vertex");
  }
  return std::move(*solved.vertex);
}

std::vector<NormSpec> battery_norms(int n, long total, std::uint64_t seed) {
  std::vector<NormSpec> norms = {NormSpec::l1(),        NormSpec::l2(),
                                 NormSpec::linf(),      NormSpec::lp(Rat(3, 2)),
                                 NormSpec::lp(Rat(3)),  NormSpec::lp(Rat(10))};
  // Seeded random regular polyhedral norms: random full-rank generators with
  // every column rescaled so eta(e_i) = 1.
  for (long i = static_cast<long>(norms.size()); i < total; ++i) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      auto rng = make_rng(seed, static_cast<std::uint64_t>(i), attempt);
      RMat gen(2 * n, n);
      for (int r = 0; r < gen.rows(); ++r) {
        for (int col = 0; col < n; ++col) gen(r, col) = random_rational(rng, 6, 3);
      }
      if (rank(gen) != n) continue;
      bool ok = true;
      for (int col = 0; col < n && ok; ++col) {
        Rat col_max = 0;
        for (int r = 0; r < gen.rows(); ++r) {
          Rat v = gen(r, col) < 0 ? Rat(-gen(r, col)) : gen(r, col);
          if (v > col_max) col_max = v;
        }
        if (col_max == 0) {
          ok = false;
          break;
        }
        for (int r = 0; r < gen.rows(); ++r) gen(r, col) /= col_max;
      }
      if (!ok) continue;
      norms.push_back(NormSpec::polyhedral(std::move(gen), "seeded" + std::to_string(i)));
      break;
    }
  }
  return norms;
}

int finish_report(const GlobalOpts& g, VerificationReport& report, bool pass,
                  const std::string& report_out, const std::string& csv_out,
                  const std::string& instance_id, int n, int m) {
  if (!report_out.empty()) save_json(report_to_json(report), report_out);
  if (!csv_out.empty()) {
    std::ofstream csv(csv_out, std::ios::app);
    if (!csv) fail(Errc::io_error, "cannot open '" + csv_out + "'");
    csv << report_to_csv(instance_id, n, m, report) << "\n";
  }
  say(g, pass ? "PASS" : "FAIL");
  if (!pass && !g.quiet) {
    for (const auto& f : report.failures) std::cerr << "  " << f << "\n";
  }
  return pass ? 0 : 1;
}

std::string instance_id_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = stem.find_last_of('.');
  return dot == std::string::npos ? stem : stem.substr(0, dot);
}

int cmd_verify(const GlobalOpts& g, const std::string& mode, const std::string& in,
               const std::string& cert_path, long samples, long samples_norms,
               const std::string& report_out, const std::string& csv_out) {
  const InstanceBundle bundle = load_bundle(in, g.vertex_cap);
  const std::string id = instance_id_of(in);
  const int n = bundle.polytope.dim();
  const int m = bundle.polytope.facet_count();

  if (mode == "thm-3-3" || mode == "thm-1-1") {
    if (cert_path.empty()) fail(Errc::bad_input, mode + " needs --cert");
    const Certificate cert = certificate_from_json(load_json(cert_path));
    const VertexBasis a = bundle.resolve_start();
    VertexBasis b;
    if (!cert.cut_facets[1].empty()) {
      std::vector<int> tight = cert.cut_facets[1];
      std::sort(tight.begin(), tight.end());
      auto solved = vertex_from_basis(bundle.polytope, tight);
      if (solved.outcome != BasisOutcome::vertex) {
        fail(Errc::bad_input, "certificate cut set does not resolve to a vertex");
      }
      b = std::move(*solved.vertex);
    } else if (bundle.params.contains("b_tight")) {
      b = resolve_tight_1based(bundle.polytope, bundle.params.at("b_tight"));
    } else {
      fail(Errc::bad_input, "cannot locate the target vertex b");
    }
    const CertCheck check = check_certificate(bundle.polytope, a, b, cert);
    std::optional<RVec> fixed_c;
    if (cert.cut_facets[1].empty()) fixed_c = bundle.c;
    VerificationReport report =
        sample_shadow_paths(bundle.polytope, a, b, cert.alpha, samples, g.seed, fixed_c);
    report.certificate_ok = check.ok;
    for (const auto& r : check.reasons) report.failures.push_back("certificate: " + r);
    const bool pass = check.ok && report.failures.empty();
    return finish_report(g, report, pass, report_out, csv_out, id, n, m);
  }

  if (mode == "thm-1-3") {
    if (!bundle.w) fail(Errc::bad_input, "thm-1-3 needs a bundle with w");
    const ShadowSpec spec(*bundle.w, bundle.c, Convention::parametric);
    const VertexBasis start = bundle.resolve_start();
    const auto verts = enumerate_vertices(bundle.polytope, start, g.vertex_cap);
    const long target = static_cast<long>(verts.size()) - 1;
    RVec weights(n);
    for (int i = 0; i < n; ++i) weights(i) = i + 1;
    const std::vector<NormSpec> norms = {NormSpec::l1(),       NormSpec::l2(),
                                         NormSpec::linf(),     NormSpec::lp(Rat(3, 2)),
                                         NormSpec::lp(Rat(3)), NormSpec::weighted_l1(weights)};
    VerificationReport report;
    report.seed = g.seed;
    report.target = target;
    report.samples = static_cast<long>(norms.size());
    for (const auto& norm : norms) {
      try {
        const auto res = find_k_for_norm(bundle.polytope, spec, start, norm);
        say(g, norm.to_string() + ": k=" + rat_to_string(res.k) + " length " +
                   std::to_string(res.record.length));
        if (report.min_length < 0 || res.record.length < report.min_length) {
          report.min_length = res.record.length;
        }
        if (res.record.length > report.max_length) report.max_length = res.record.length;
        if (res.record.length != target) {
          report.failures.push_back(norm.to_string() + ": wrong length");
        }
      } catch (const Error& e) {
        report.failures.push_back(norm.to_string() + ": " + e.what());
      }
    }
    return finish_report(g, report, report.failures.empty(), report_out, csv_out, id, n, m);
  }

  if (mode == "thm-1-4") {
    if (!bundle.w) fail(Errc::bad_input, "thm-1-4 needs a bundle with w");
    const ShadowSpec spec(*bundle.w, bundle.c, Convention::parametric);
    const auto canon = canonicalize_w_to_e1(bundle.polytope, spec, bundle.resolve_start());
    const long requested = samples_norms > 0 ? samples_norms : 25;
    const auto norms = battery_norms(n, requested, g.seed);
    VerificationReport report;
    report.seed = g.seed;
    for (Rat k = 2; k <= Rat(BigInt(1) << 40); k *= 2) {
      const CompressSpec cs{canon.spec.parametric_w(), k};
      auto [pk, ck] = compress(canon.polytope, canon.spec.c, cs);
      report = all_norms_battery(pk, ck, compress_vertex(cs, canon.start), norms, g.step_cap);
      report.seed = g.seed;
      if (report.failures.empty()) {
        say(g, "battery of " + std::to_string(norms.size()) + " regular norms passes at k=" +
                   rat_to_string(k));
        return finish_report(g, report, true, report_out, csv_out, id, n, m);
      }
    }
    report.failures.push_back("no k up to 2^40 made the battery pass");
    return finish_report(g, report, false, report_out, csv_out, id, n, m);
  }

  if (mode == "agreement") {
    if (!bundle.w) fail(Errc::bad_input, "agreement needs a bundle with w");
    const ShadowSpec spec(*bundle.w, bundle.c, Convention::parametric);
    const VertexBasis start = bundle.resolve_start();
    VerificationReport report;
    report.seed = g.seed;
    report.samples = 1;
    const bool agree = local_path_agreement(bundle.polytope, spec, start);
    if (!agree) report.failures.push_back("projection rule deviates from the parametric path");
    const auto par = parametric_path(bundle.polytope, spec, start);
    const auto poly = shadow_polygon(
        bundle.polytope, ShadowSpec(spec.projection_w(), spec.c, Convention::projection),
        g.vertex_cap);
    if (par.record.length + 1 > poly.hull_size) {
      report.failures.push_back("path length + 1 exceeds the shadow hull size");
    }
    report.min_length = report.max_length = par.record.length;
    report.target = par.record.length;
    return finish_report(g, report, report.failures.empty(), report_out, csv_out, id, n, m);
  }

  fail(Errc::bad_input, "unknown verify mode '" + mode + "'");
}

// ---------------- plot ----------------

struct Frame {
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  double px(double x) const { return 40 + (x - min_x) / (max_x - min_x) * 520; }
  double py(double y) const { return 560 - (y - min_y) / (max_y - min_y) * 520; }
};

std::string svg_head() {
  return std::string("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n") + kSvgVersionComment +
         "\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
         "viewBox=\"0 0 600 600\">\n";
}

int cmd_plot(const GlobalOpts& g, const std::string& kind, const std::string& in,
             const std::string& out) {
  const InstanceBundle bundle = load_bundle(in, g.vertex_cap);
  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg.precision(6);

  if (kind == "shadow-polygon") {
    if (!bundle.w) fail(Errc::bad_input, "shadow-polygon needs a bundle with w");
    const ShadowSpec spec(*bundle.w, bundle.c, Convention::parametric);
    const ShadowSpec proj(spec.projection_w(), spec.c, Convention::projection);
    const auto poly = shadow_polygon(bundle.polytope, proj, g.vertex_cap);

    Frame f;
    bool first = true;
    for (const auto& [x, y] : poly.projected) {
      const double dx = static_cast<double>(x);
      const double dy = static_cast<double>(y);
      if (first || dx < f.min_x) f.min_x = dx;
      if (first || dx > f.max_x) f.max_x = dx;
      if (first || dy < f.min_y) f.min_y = dy;
      if (first || dy > f.max_y) f.max_y = dy;
      first = false;
    }
    if (f.max_x == f.min_x) f.max_x = f.min_x + 1;
    if (f.max_y == f.min_y) f.max_y = f.min_y + 1;

    svg << svg_head();
    svg << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (int idx : poly.hull) {
      svg << f.px(static_cast<double>(poly.projected[idx].first)) << ","
          << f.py(static_cast<double>(poly.projected[idx].second)) << " ";
    }
    svg << "\"/>\n";
    for (const auto& [x, y] : poly.projected) {
      svg << "<circle cx=\"" << f.px(static_cast<double>(x)) << "\" cy=\""
          << f.py(static_cast<double>(y)) << "\" r=\"3\" fill=\"gray\"/>\n";
    }
    // highlight the parametric shadow path
    const auto par = parametric_path(bundle.polytope, spec, bundle.resolve_start());
    svg << "<polyline fill=\"none\" stroke=\"red\" stroke-width=\"2.5\" points=\"";
    for (const auto& v : par.record.vertices) {
      const double x = static_cast<double>(dot(proj.w, v.point));
      const double y = static_cast<double>(dot(proj.c, v.point));
      svg << f.px(x) << "," << f.py(y) << " ";
    }
    svg << "\"/>\n</svg>\n";
  } else if (kind == "fan-2d") {
    if (bundle.polytope.dim() != 2) fail(Errc::bad_input, "fan-2d needs a 2-dimensional instance");
    const auto verts =
        enumerate_vertices(bundle.polytope, *find_any_vertex(bundle.polytope), g.vertex_cap);
    Frame f;
    f.min_x = f.min_y = -1.4;
    f.max_x = f.max_y = 1.4;
    svg << svg_head();
    svg << "<line x1=\"" << f.px(-1.3) << "\" y1=\"" << f.py(0) << "\" x2=\"" << f.px(1.3)
        << "\" y2=\"" << f.py(0) << "\" stroke=\"#cccccc\"/>\n";
    svg << "<line x1=\"" << f.px(0) << "\" y1=\"" << f.py(-1.3) << "\" x2=\"" << f.px(0)
        << "\" y2=\"" << f.py(1.3) << "\" stroke=\"#cccccc\"/>\n";
    for (const auto& v : verts) {
      const SimplicialCone cone = normal_cone(bundle.polytope, v);
      for (int i = 0; i < cone.rays.rows(); ++i) {
        const double x = static_cast<double>(cone.rays(i, 0));
        const double y = static_cast<double>(cone.rays(i, 1));
        const double len = std::sqrt(x * x + y * y);
        svg << "<line x1=\"" << f.px(0) << "\" y1=\"" << f.py(0) << "\" x2=\"" << f.px(x / len)
            << "\" y2=\"" << f.py(y / len) << "\" stroke=\"black\"/>\n";
      }
    }
    if (bundle.w) {
      const RVec w = *bundle.w;
      auto draw_point = [&](const RVec& z, const char* color) {
        const double x = static_cast<double>(z(0));
        const double y = static_cast<double>(z(1));
        const double len = std::max(1e-9, std::sqrt(x * x + y * y));
        svg << "<circle cx=\"" << f.px(x / len) << "\" cy=\"" << f.py(y / len)
            << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        return std::pair<double, double>{x / len, y / len};
      };
      const auto pw = draw_point(w, "red");
      const auto pc = draw_point(bundle.c, "blue");
      svg << "<line x1=\"" << f.px(pw.first) << "\" y1=\"" << f.py(pw.second) << "\" x2=\""
          << f.px(pc.first) << "\" y2=\"" << f.py(pc.second)
          << "\" stroke=\"blue\" stroke-dasharray=\"6,4\"/>\n";
    }
    svg << "</svg>\n";
  } else {
    fail(Errc::bad_input, "unknown plot kind '" + kind + "'");
  }

  std::ofstream file(out);
  if (!file) fail(Errc::io_error, "cannot open '" + out + "' for writing");
  file << svg.str();
  say(g, "wrote " + out);
  return 0;
}

// ---------------- info ----------------

int cmd_info(const GlobalOpts& g, const std::string& in) {
  const InstanceBundle bundle = load_bundle(in, g.vertex_cap);
  std::cout << "instance: " << instance_id_of(in) << "\n";
  std::cout << "dim " << bundle.polytope.dim() << ", facets " << bundle.polytope.facet_count()
            << "\n";
  std::cout << "generator: " << (bundle.generator.empty() ? "(unknown)" : bundle.generator)
            << ", seed " << bundle.seed << "\n";
  std::cout << "w: " << (bundle.w ? "present" : "absent") << "\n";
  try {
    const auto verts =
        enumerate_vertices(bundle.polytope, bundle.resolve_start(), g.vertex_cap);
    std::cout << "vertices: " << verts.size() << "\n";
  } catch (const Error&) {
    std::cout << "vertices: (enumeration capped)\n";
  }
  if (!bundle.chain.empty()) {
    std::cout << "chain:\n";
    for (const auto& step : bundle.chain) std::cout << "  " << step << "\n";
  }
  (void)g;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shadowlab: exact-arithmetic lab for worst-case simplex pivot-rule geometry"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for all randomized steps");
  app.add_option("--step-cap", g.step_cap, "simplex step cap");
  app.add_option("--vertex-cap", g.vertex_cap, "vertex enumeration cap");
  app.add_flag("--quiet", g.quiet, "suppress progress output");

  // generate
  auto* gen = app.add_subcommand("generate", "generate an instance bundle");
  std::string gen_kind;
  int gen_n = 3;
  std::optional<std::string> gen_eps;
  std::string gen_out = "instance.json";
  gen->add_option("kind", gen_kind, "goldfarb | cube | klee-minty-style")->required();
  gen->add_option("--n", gen_n, "dimension")->required();
  gen->add_option("--eps", gen_eps, "deformation parameter override (rational)");
  gen->add_option("-o,--out", gen_out, "output bundle path");

  // transform
  auto* tr = app.add_subcommand("transform", "apply a polytope transform");
  std::string tr_op, tr_in, tr_out = "out.json", tr_cert;
  std::optional<std::string> tr_vertex, tr_w, tr_eps, tr_center, tr_radius, tr_k;
  tr->add_option("op", tr_op,
                 "vertex-cut | thin-cone | many-from-one | fixed-c | compress | canonicalize")
      ->required();
  tr->add_option("-i,--in", tr_in, "input bundle")->required();
  tr->add_option("-o,--out", tr_out, "output bundle");
  tr->add_option("--cert", tr_cert, "certificate output path (many-from-one / fixed-c)");
  tr->add_option("--vertex", tr_vertex, "target vertex coordinates, comma-separated rationals");
  tr->add_option("--w", tr_w, "direction vector, comma-separated rationals");
  tr->add_option("--eps", tr_eps, "cut depth (rational)");
  tr->add_option("--center", tr_center, "ball center (thin-cone)");
  tr->add_option("--radius", tr_radius, "ball radius (thin-cone)");
  tr->add_option("--k", tr_k, "compression factor (rational)");

  // run
  auto* run = app.add_subcommand("run", "run a pivot rule");
  std::string run_rule, run_in, run_report;
  run->add_option("--rule", run_rule, "dantzig | greatest | shadow[:<w>] | steepest:<norm>")
      ->required();
  run->add_option("-i,--in", run_in, "input bundle")->required();
  run->add_option("--report", run_report, "path record output");

  // verify
  auto* ver = app.add_subcommand("verify", "verify a path-length bound");
  std::string ver_mode, ver_in, ver_cert, ver_report, ver_csv;
  long ver_samples = 200, ver_samples_norms = 25;
  ver->add_option("mode", ver_mode, "thm-3-3 | thm-1-1 | thm-1-3 | thm-1-4 | agreement")
      ->required();
  ver->add_option("-i,--in", ver_in, "input bundle")->required();
  ver->add_option("--cert", ver_cert, "certificate file");
  ver->add_option("--samples", ver_samples, "number of sampled objective pairs");
  ver->add_option("--samples-norms", ver_samples_norms, "battery size for thm-1-4");
  ver->add_option("--report", ver_report, "verification report output");
  ver->add_option("--csv", ver_csv, "append a CSV summary row here");

  // plot
  auto* plot = app.add_subcommand("plot", "emit an SVG picture");
  std::string plot_kind, plot_in, plot_out = "plot.svg";
  plot->add_option("kind", plot_kind, "shadow-polygon | fan-2d")->required();
  plot->add_option("-i,--in", plot_in, "input bundle")->required();
  plot->add_option("-o,--out", plot_out, "output SVG path");

  // info
  auto* info = app.add_subcommand("info", "summarize a bundle");
  std::string info_in;
  info->add_option("-i,--in", info_in, "input bundle")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(g, gen_kind, gen_n, gen_eps, gen_out);
    if (tr->parsed()) {
      return cmd_transform(g, tr_op, tr_in, tr_out, tr_cert, tr_vertex, tr_w, tr_eps, tr_center,
                           tr_radius, tr_k);
    }
    if (run->parsed()) return cmd_run(g, run_rule, run_in, run_report);
    if (ver->parsed()) {
      return cmd_verify(g, ver_mode, ver_in, ver_cert, ver_samples, ver_samples_norms, ver_report,
                        ver_csv);
    }
    if (plot->parsed()) return cmd_plot(g, plot_kind, plot_in, plot_out);
    if (info->parsed()) return cmd_info(g, info_in);
  } catch (const Error& e) {
    std::cerr << errc_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 9;
  }
  return 0;
}
