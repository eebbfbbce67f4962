#include "laminata/cli.hpp"

#include <chrono>
#include <ctime>
#include <functional>
#include <optional>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "laminata/io.hpp"
#include "laminata/lamination.hpp"
#include "laminata/ledger.hpp"
#include "laminata/rayfield.hpp"
#include "laminata/render.hpp"
#include "laminata/wandering.hpp"

namespace laminata::cli {

namespace {

using io::json;

enum class Format { text, json };

struct Output {
  std::ostream& out;
  Format format = Format::text;
  bool banner = true;
};

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number_float()) return fmt::format("{:.12g}", v.get<double>());
  if (v.is_null()) return "-";
  if (v.is_array()) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
    return s + ")";
  }
  return v.dump();
}

bool flat(const json& v) {
  if (!v.is_array()) return !v.is_object();
  for (const auto& x : v) {
    if (x.is_object() || (x.is_array() && !flat(x))) return false;
  }
  return true;
}

void text_object(std::string& s, const json& obj, int indent) {
  const std::string pad(indent, ' ');
  for (const auto& [key, v] : obj.items()) {
    s += pad + key + ":";
    if (v.is_object()) {
      s += "\n";
      text_object(s, v, indent + 2);
    } else if (v.is_array() && !flat(v)) {
      s += "\n";
      for (const auto& item : v) {
        if (item.is_object()) {
          std::string block;
          text_object(block, item, indent + 4);
          s += pad + "  - " + block.substr(indent + 4);
        } else {
          s += pad + "  - " + scalar_text(item) + "\n";
        }
      }
    } else if (v.is_array()) {
      if (v.empty()) {
        s += " (none)\n";
      } else {
        s += " ";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
        s += "\n";
      }
    } else {
      s += " " + scalar_text(v) + "\n";
    }
  }
}

void emit(const Output& o, const json& report) {
  if (o.format == Format::json) {
    json full;
    if (o.banner) full["banner"] = std::string("laminata ") + kVersion + " " + timestamp();
    for (const auto& [k, v] : report.items()) full[k] = v;
    o.out << full.dump(2) << "\n";
    return;
  }
  std::string s;
  if (o.banner) s += std::string("# laminata ") + kVersion + " " + timestamp() + "\n";
  text_object(s, report, 0);
  o.out << s;
}

json angles_json(const std::vector<Angle>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

io::LaminationFile load_lamination(const std::string& path) {
  return io::parse_lamination(io::parse_json(io::read_file(path), path));
}

// ---------------------------------------------------------------------------

int cmd_orbit(const Output& o, const std::string& angle, int degree, std::optional<int> steps) {
  const Angle t = Angle::parse(angle);
  const Degree d(degree);
  const OrbitInfo info = orbit_info(t, d);
  const int count = steps ? *steps + 1 : info.preperiod + info.period;
  if (count < 1) throw InputError("steps must be >= 0");
  std::vector<Angle> orbit;
  Angle cur = t;
  for (int i = 0; i < count; ++i) {
    orbit.push_back(cur);
    cur = sigma(cur, d);
  }
  json r;
  r["command"] = "orbit";
  r["angle"] = t.str();
  r["degree"] = degree;
  r["orbit"] = angles_json(orbit);
  r["preperiod"] = info.preperiod;
  r["period"] = info.period;
  emit(o, r);
  return 0;
}

int cmd_lam_build(const Output& o, const std::string& path, int depth, const std::string& output) {
  const auto f = load_lamination(path);
  const lam::GeneratingFamily family(Degree(f.degree), f.generators);
  json r;
  r["command"] = "lam build";
  r["degree"] = f.degree;
  r["depth"] = depth;
  try {
    const lam::Closure cl = lam::pullback_closure(family, depth);
    io::LaminationFile built{f.degree, {}};
    for (const auto& c : cl.lamination.chords()) {
      built.generators.push_back(c.degenerate() ? Polygon({c.lo()}) : Polygon({c.lo(), c.hi()}));
    }
    r["chord_count"] = cl.lamination.size();
    json gens = json::array();
    for (const auto& g : cl.generations) gens.push_back(g.size());
    r["generation_sizes"] = gens;
    r["selected_preimages"] = cl.selected_preimages;
    if (!output.empty()) {
      io::write_file(output, io::to_json(built).dump(2) + "\n");
      r["output"] = output;
    } else {
      json chords = json::array();
      for (const auto& c : cl.lamination.chords()) chords.push_back(c.str());
      r["chords"] = chords;
    }
    emit(o, r);
    return 0;
  } catch (const lam::PullbackError& e) {
    r["status"] = "pullback-failed";
    r["reason"] = e.what();
    emit(o, r);
    return 1;
  }
}

int cmd_lam_check(const Output& o, const std::string& path, bool forward_only) {
  const auto f = load_lamination(path);
  const Degree d(f.degree);
  const auto chords = io::chords_of(f);
  const auto vr = lam::validate_prelamination(chords, d);
  json r;
  r["command"] = "lam check";
  r["degree"] = f.degree;
  r["chord_count"] = vr.ok() ? vr.lamination->size() : chords.size();
  r["valid"] = vr.ok();
  json viol = json::array();
  for (const auto& v : vr.violations) viol.push_back({{"first", v.first.str()}, {"second", v.second.str()}});
  r["violations"] = viol;
  if (!vr.ok()) {
    emit(o, r);
    return 1;
  }
  bool ok = true;
  const auto fwd = lam::check_forward_invariant(*vr.lamination);
  json missing = json::array();
  for (const auto& c : fwd.missing) missing.push_back(c.str());
  r["forward_invariant"] = {{"passed", fwd.passed}, {"missing_images", missing}};
  ok = ok && fwd.passed;
  if (!forward_only) {
    const auto full = lam::check_full_invariant(*vr.lamination);
    json def = json::array();
    for (const auto& x : full.deficient) def.push_back({{"leaf", x.leaf.str()}, {"found", x.found}});
    r["full_invariant"] = {{"passed", full.passed}, {"deficient", def}};
    ok = ok && full.passed;
  }
  emit(o, r);
  return ok ? 0 : 1;
}

int cmd_lam_classify(const Output& o, const std::string& path, int horizon) {
  const auto f = load_lamination(path);
  const Degree d(f.degree);
  json rows = json::array();
  bool ok = true;
  for (const auto& g : f.generators) {
    const auto c = lam::classify_gap(g, d, horizon);
    json row;
    row["polygon"] = g.str();
    row["kind"] = lam::to_string(c.kind);
    row["criticality"] = lam::to_string(c.criticality);
    row["dynamics"] = c.dynamics_str();
    if (c.dynamics != lam::DynamicsKind::wandering_at_horizon) row["set_period"] = c.set_period;
    if (c.strict_inclusion_step) row["strict_inclusion_step"] = *c.strict_inclusion_step;
    row["inclusion_violation"] = c.inclusion_violation;
    ok = ok && !c.inclusion_violation;
    rows.push_back(row);
  }
  json r;
  r["command"] = "lam classify";
  r["degree"] = f.degree;
  r["horizon"] = horizon;
  r["gaps"] = rows;
  emit(o, r);
  return ok ? 0 : 1;
}

struct FigureOptions {
  int canvas = 512;
  std::string style = "euclidean-chord";
  bool labels = false;
};

render::FigureSpec figure_spec(const FigureOptions& fo) {
  render::FigureSpec spec;
  spec.canvas = fo.canvas;
  spec.labels = fo.labels;
  spec.style = fo.style == "hyperbolic-arc" ? render::GeodesicStyle::hyperbolic_arc
                                            : render::GeodesicStyle::euclidean_chord;
  return spec;
}

int cmd_lam_render(const Output& o, const std::string& path, int depth, const std::string& output,
                   const FigureOptions& fo) {
  const auto f = load_lamination(path);
  const Degree d(f.degree);
  std::optional<lam::Prelamination> l;
  if (depth > 0) {
    const lam::GeneratingFamily family(d, f.generators);
    try {
      l = lam::pullback_closure(family, depth).lamination;
    } catch (const lam::PullbackError& e) {
      json r;
      r["command"] = "lam render";
      r["status"] = "pullback-failed";
      r["reason"] = e.what();
      emit(o, r);
      return 1;
    }
  } else {
    l = lam::make_prelamination(io::chords_of(f), d);
  }
  const auto spec = figure_spec(fo);
  io::write_file(output, render::render_lamination(*l, spec));
  std::size_t critical = 0;
  for (const auto& c : l->chords()) {
    if (!c.degenerate() && is_critical_chord(c, d)) ++critical;
  }
  json r;
  r["command"] = "lam render";
  r["degree"] = f.degree;
  r["depth"] = depth;
  r["chord_count"] = l->size();
  r["critical_chords"] = critical;
  r["style"] = render::to_string(spec.style);
  r["output"] = output;
  emit(o, r);
  return 0;
}

int cmd_wander(const Output& o, const std::string& path, std::optional<int> horizon_override,
               const std::string& tolerance) {
  const auto collections = io::parse_collections(io::read_file(path));
  json items = json::array();
  bool ok = true;
  for (const auto& c : collections) {
    const Degree d(c.degree);
    const int horizon = horizon_override.value_or(c.horizon);
    if (horizon < 0) throw InputError("horizon must be >= 0");
    json item;
    item["degree"] = c.degree;
    item["horizon"] = horizon;
    json polys = json::array();
    for (const auto& p : c.polygons) polys.push_back(p.str());
    item["polygons"] = polys;

    const auto cert = wander::check_wandering(c.polygons, d, horizon);
    item["certificate"] = cert.status_str();
    if (!cert.wandering) item["failure_detail"] = cert.detail;
    ok = ok && cert.wandering;

    json kiwi = json::array();
    for (const auto& p : c.polygons) {
      const auto k = wander::kiwi_bound_check(p, d);
      kiwi.push_back({{"polygon", p.str()},
                      {"vertices", k.vertices},
                      {"within_d", k.within_kiwi},
                      {"within_2_pow_d", k.within_general},
                      {"rejected", k.rejected()}});
    }
    item["vertex_bounds"] = kiwi;

    wander::CollectionStats stats;
    stats.degree = c.degree;
    stats.n_prime = c.n_prime;
    for (const auto& p : c.polygons) stats.sizes.push_back(static_cast<int>(p.size()));
    json bl;
    bl["sizes"] = stats.sizes;
    bl["n_prime"] = c.n_prime;
    try {
      const auto v = wander::blolev_inequality(stats);
      bl["lhs"] = v.lhs;
      bl["rhs"] = v.rhs;
      bl["holds"] = v.holds;
      bl["equality"] = v.equality;
      ok = ok && v.holds;
    } catch (const InputError& e) {
      bl["applicable"] = false;
      bl["note"] = e.what();
    }
    item["gap_count_inequality"] = bl;

    const Rational tol = tolerance.empty() ? wander::default_limit_tolerance() : Angle::parse(tolerance).value();
    json cands = json::array();
    for (const auto& cand : wander::detect_critical_limit_chords(c.polygons, d, horizon, tol)) {
      Rational best = cand.evidence.front().gap;
      for (const auto& e : cand.evidence) best = std::min(best, e.gap);
      cands.push_back({{"target", Angle(cand.k_over_d).str()},
                       {"chord", cand.chord.str()},
                       {"first_step", cand.evidence.front().step},
                       {"evidence_count", cand.evidence.size()},
                       {"closest_gap", Angle(best).str()}});
    }
    item["critical_limit_candidates"] = cands;
    items.push_back(item);
  }
  json r;
  r["command"] = "wander";
  r["collections"] = items;
  r["passed"] = ok;
  emit(o, r);
  return ok ? 0 : 1;
}

json class_json(const fsi::ClassCount& c) { return {{"size", c.size}, {"K", c.K}, {"L", c.L}}; }

int cmd_fsi(const Output& o, const std::string& path, bool strict) {
  const auto p = io::parse_portrait(io::parse_json(io::read_file(path), path));
  json r;
  r["command"] = "fsi";
  r["strict"] = strict;
  const auto violations = fsi::validate_portrait(p, strict);
  if (!violations.empty()) {
    json v = json::array();
    for (const auto& x : violations) v.push_back({{"record", x.record}, {"rule", x.rule}, {"message", x.message}});
    r["valid"] = false;
    r["violations"] = v;
    emit(o, r);
    return 2;
  }
  const auto rep = fsi::run_ledger(p);
  const auto& k = rep.counts;
  r["valid"] = true;
  r["degree"] = p.degree;
  json counts;
  counts["N_FC"] = k.N_FC;
  counts["N_irr"] = k.N_irr;
  counts["N_co"] = k.N_co;
  counts["chi_m"] = k.chi_m;
  counts["m"] = k.m;
  counts["m_prime"] = k.m_prime;
  counts["chi_m_prime"] = k.chi_m_prime;
  counts["sum_eval_excess_periodic"] = k.sum_excess_periodic;
  counts["sum_eval_excess_wandering"] = k.sum_excess_wandering;
  counts["C_wr"] = class_json(k.C_wr);
  counts["C'_wr"] = class_json(k.C_wr_prime);
  counts["C_esc"] = class_json(k.C_esc);
  json per;
  for (const auto& [cls, cc] : k.per_class) per[fsi::to_string(cls)] = class_json(cc);
  counts["classes"] = per;
  r["counts"] = counts;

  json recs = json::array();
  for (const auto& rec : rep.records) {
    json x;
    x["name"] = rec.name;
    x["applicable"] = rec.applicable;
    if (rec.applicable) {
      x["statement"] = rec.statement;
      x["relation"] = rec.equation ? "=" : "<=";
      x["terms"] = rec.labels;
      x["values"] = rec.terms;
      x["lhs"] = rec.lhs();
      x["rhs"] = rec.rhs();
      x["holds"] = rec.holds;
      x["equality"] = rec.equality;
    }
    if (!rec.note.empty()) x["note"] = rec.note;
    recs.push_back(x);
  }
  r["inequalities"] = recs;
  r["consistent"] = rep.consistent();
  emit(o, r);
  return rep.consistent() ? 0 : 1;
}

struct RayOptions {
  std::vector<std::string> angles;
  long long sample = 0;
  ray::RayParams params;
  bool no_refine = false;
  double colanding_tol = 1e-6;
  int threads = 0;
  bool polyline = false;
  std::string svg;
  std::string pgm;
  int pgm_size = 256;
  std::vector<double> view{0.0, 0.0, 2.0};
  std::vector<double> equipotentials;
  int equipotential_samples = 256;
  std::string lamination_out;
  FigureOptions figure;
};

json trace_json(const ray::RayTrace& t, bool polyline) {
  json x;
  x["angle"] = t.angle.str();
  x["status"] = ray::to_string(t.status);
  if (t.status == ray::RayStatus::landed) {
    x["landing"] = io::complex_json(t.landing);
    x["residual"] = t.residual;
    x["refined"] = t.refined;
  } else if (t.status == ray::RayStatus::non_smooth_suspect) {
    x["case"] = t.label;
    x["near_precritical"] = io::complex_json(t.near_precritical);
    x["level"] = t.flag_level;
  }
  x["points"] = t.points.size();
  x["last_level"] = t.levels.empty() ? 0.0 : t.levels.back();
  if (!t.diagnostic.empty()) x["diagnostic"] = t.diagnostic;
  if (polyline) {
    json pts = json::array();
    for (std::size_t i = 0; i < t.points.size(); ++i) {
      pts.push_back({t.levels[i], t.points[i].real(), t.points[i].imag()});
    }
    x["polyline"] = pts;
  }
  return x;
}

json groups_json(const std::vector<ray::CoLandingGroup>& groups) {
  json g = json::array();
  for (const auto& x : groups) {
    g.push_back({{"angles", angles_json(x.angles)},
                 {"landing_point", io::complex_json(x.landing_point)},
                 {"spread", x.spread}});
  }
  return g;
}

int cmd_ray(const Output& o, const std::string& path, RayOptions opt) {
  const auto poly = io::parse_polynomial(io::parse_json(io::read_file(path), path));
  auto& prm = opt.params;
  prm.refine_landing = !opt.no_refine;
  if (!(prm.start_level > 0) || !(prm.shrink > 1) || prm.steps_per_stage < 1 || !(prm.landing_tolerance > 0) ||
      !(prm.min_level > 0) || prm.max_points < 2 || !(prm.precritical_radius > 0) || !(prm.newton_level > 0) ||
      !(prm.budget.escape_radius > 1) || prm.budget.max_iterations < 1 || !(opt.colanding_tol > 0)) {
    throw InputError("ray parameters out of range");
  }
  if (opt.view.size() != 3 || !(opt.view[2] > 0)) throw InputError("--view expects cx,cy,half_width");
  if (opt.angles.empty() == (opt.sample == 0)) throw InputError("give exactly one of --angles or --sample");

  const auto q = ray::normalize(poly);
  json r;
  r["command"] = "ray";
  r["degree"] = poly.degree();
  r["normalization"] = {{"lambda", io::complex_json(q.lambda)}, {"shift", io::complex_json(q.shift)}};
  r["parameters"] = {{"start_level", prm.start_level},
                     {"shrink", prm.shrink},
                     {"steps_per_stage", prm.steps_per_stage},
                     {"landing_tolerance", prm.landing_tolerance},
                     {"min_level", prm.min_level},
                     {"max_points", prm.max_points},
                     {"precritical_radius", prm.precritical_radius},
                     {"newton_level", prm.newton_level},
                     {"refine_landing", prm.refine_landing},
                     {"escape_radius", prm.budget.escape_radius},
                     {"max_iterations", prm.budget.max_iterations},
                     {"colanding_tolerance", opt.colanding_tol}};

  json crit = json::array();
  for (const auto& c : ray::critical_points(poly, prm.budget)) {
    crit.push_back({{"z", io::complex_json(c.z)},
                    {"multiplicity", c.multiplicity},
                    {"level", c.green.level},
                    {"escaping", c.green.level > 0.0},
                    {"residual_ok", c.residual_ok}});
  }
  r["critical_points"] = crit;

  std::vector<ray::RayTrace> traces;
  std::vector<ray::CoLandingGroup> groups;
  std::optional<ray::SampledLamination> sample;
  if (opt.sample > 0) {
    sample = ray::sample_lamination(poly, opt.sample, prm, opt.colanding_tol, opt.threads);
    traces = sample->traces;
    groups = sample->groups;
  } else {
    std::vector<Angle> angles;
    for (const auto& a : opt.angles) angles.push_back(Angle::parse(a));
    traces = ray::trace_rays(poly, angles, prm, opt.threads);
    groups = ray::co_landing_groups(traces, opt.colanding_tol);
  }

  std::vector<std::vector<ray::cplx>> curves;
  for (double level : opt.equipotentials) {
    curves.push_back(ray::trace_equipotential(poly, level, opt.equipotential_samples, prm));
  }

  json rays = json::array();
  std::size_t failed = 0;
  for (const auto& t : traces) {
    rays.push_back(trace_json(t, opt.polyline));
    if (t.status == ray::RayStatus::truncated) ++failed;
  }
  r["rays"] = rays;
  r["co_landing_groups"] = groups_json(groups);

  io::LaminationFile lf{poly.degree(), {}};
  for (const auto& g : groups) lf.generators.emplace_back(g.angles);
  if (sample) {
    json s;
    s["q"] = sample->q;
    json chords = json::array();
    for (const auto& c : sample->chords) chords.push_back(c.str());
    s["chords"] = chords;
    json art = json::array();
    for (const auto& a : sample->artifacts) art.push_back({{"first", a.first.str()}, {"second", a.second.str()}});
    s["sampling_artifacts"] = art;
    s["failures"] = sample->failures;
    s["advisory"] = sample->advisory;
    r["sample"] = s;
  }
  if (!opt.lamination_out.empty()) {
    io::write_file(opt.lamination_out, io::to_json(lf).dump(2) + "\n");
    r["lamination_output"] = opt.lamination_out;
  }
  if (!opt.svg.empty()) {
    const render::Viewport view{opt.view[0], opt.view[1], opt.view[2]};
    io::write_file(opt.svg, render::render_rayfield(traces, curves, figure_spec(opt.figure), view));
    r["figure"] = opt.svg;
  }
  if (!opt.pgm.empty()) {
    if (opt.pgm_size < 1) throw InputError("--pgm-size must be positive");
    const render::Viewport view{opt.view[0], opt.view[1], opt.view[2]};
    io::write_file(opt.pgm, render::render_backdrop_pgm(poly, view, opt.pgm_size, opt.pgm_size, prm.budget));
    r["backdrop"] = opt.pgm;
  }
  emit(o, r);
  return !traces.empty() && failed == traces.size() ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Laminations, wandering polygons, Fatou-Shishikura counts and external rays"};
  app.name("laminata");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  bool no_banner = false;
  std::string format = "text";
  app.add_flag("--no-banner", no_banner, "Suppress the version and timestamp line");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));

  std::function<int(const Output&)> action;

  // orbit
  auto* orbit = app.add_subcommand("orbit", "Forward orbit, preperiod and period of an angle");
  std::string orbit_angle;
  int orbit_degree = 2;
  std::optional<int> orbit_steps;
  orbit->add_option("angle", orbit_angle, "Angle p/q")->required();
  orbit->add_option("-d,--degree", orbit_degree, "Degree of the circle map");
  orbit->add_option("--steps", orbit_steps, "Number of iterates to list");
  orbit->callback([&] {
    action = [&](const Output& o) { return cmd_orbit(o, orbit_angle, orbit_degree, orbit_steps); };
  });

  // lam
  auto* lam_cmd = app.add_subcommand("lam", "Lamination build, check, classify and render");
  lam_cmd->require_subcommand(1);
  std::string lam_file;
  std::string lam_output;
  int lam_depth = 0;
  int lam_horizon = lam::kDefaultHorizon;
  bool forward_only = false;
  FigureOptions lam_fig;

  auto* build = lam_cmd->add_subcommand("build", "Pullback closure to a given depth");
  build->add_option("file", lam_file, "Lamination file")->required();
  build->add_option("--depth", lam_depth, "Pullback depth")->required()->check(CLI::NonNegativeNumber);
  build->add_option("-o,--output", lam_output, "Write the closure as a lamination file");
  build->callback([&] {
    action = [&](const Output& o) { return cmd_lam_build(o, lam_file, lam_depth, lam_output); };
  });

  auto* check = lam_cmd->add_subcommand("check", "Validity and invariance report");
  check->add_option("file", lam_file, "Lamination file")->required();
  check->add_flag("--forward-only", forward_only, "Skip the full invariance check");
  check->callback([&] { action = [&](const Output& o) { return cmd_lam_check(o, lam_file, forward_only); }; });

  auto* classify = lam_cmd->add_subcommand("classify", "Classify every generator");
  classify->add_option("file", lam_file, "Lamination file")->required();
  classify->add_option("--horizon", lam_horizon, "Iteration horizon")->check(CLI::PositiveNumber);
  classify->callback([&] { action = [&](const Output& o) { return cmd_lam_classify(o, lam_file, lam_horizon); }; });

  auto* rend = lam_cmd->add_subcommand("render", "Draw the lamination as SVG");
  rend->add_option("file", lam_file, "Lamination file")->required();
  rend->add_option("--depth", lam_depth, "Pullback depth before drawing")->check(CLI::NonNegativeNumber);
  rend->add_option("-o,--output", lam_output, "SVG output file")->required();
  rend->add_option("--canvas", lam_fig.canvas, "Canvas size in pixels");
  rend->add_option("--style", lam_fig.style, "Geodesic style")
      ->check(CLI::IsMember({"euclidean-chord", "hyperbolic-arc"}));
  rend->add_flag("--labels", lam_fig.labels, "Label chord endpoints");
  rend->callback([&] {
    action = [&](const Output& o) { return cmd_lam_render(o, lam_file, lam_depth, lam_output, lam_fig); };
  });

  // wander
  auto* wand = app.add_subcommand("wander", "Finite-horizon wandering certificates");
  std::string wander_file;
  std::optional<int> wander_horizon;
  std::string wander_tol;
  wand->add_option("file", wander_file, "Collection file")->required();
  wand->add_option("--horizon", wander_horizon, "Override the file horizon");
  wand->add_option("--tolerance", wander_tol, "Critical-limit tolerance p/q (default 1/64)");
  wand->callback([&] {
    action = [&](const Output& o) { return cmd_wander(o, wander_file, wander_horizon, wander_tol); };
  });

  // fsi
  auto* fsi_cmd = app.add_subcommand("fsi", "Counting inequalities for a portrait");
  std::string fsi_file;
  bool strict = false;
  fsi_cmd->add_option("file", fsi_file, "Portrait file")->required();
  fsi_cmd->add_flag("--strict", strict, "Require critical points associated to non-repelling cycles");
  fsi_cmd->callback([&] { action = [&](const Output& o) { return cmd_fsi(o, fsi_file, strict); }; });

  // ray
  auto* ray_cmd = app.add_subcommand("ray", "External rays, co-landing and sampled laminations");
  std::string poly_file;
  RayOptions ro;
  ray_cmd->add_option("file", poly_file, "Polynomial file")->required();
  auto* angles_opt = ray_cmd->add_option("--angles", ro.angles, "Comma separated angles")->delimiter(',');
  auto* sample_opt = ray_cmd->add_option("--sample", ro.sample, "Trace k/q for k < q")->check(CLI::PositiveNumber);
  angles_opt->excludes(sample_opt);
  ray_cmd->add_option("--start-level", ro.params.start_level, "Seed level");
  ray_cmd->add_option("--shrink", ro.params.shrink, "Level shrink factor per stage");
  ray_cmd->add_option("--steps-per-stage", ro.params.steps_per_stage, "Newton targets per stage");
  ray_cmd->add_option("--landing-tol", ro.params.landing_tolerance, "Landing tolerance");
  ray_cmd->add_option("--min-level", ro.params.min_level, "Lowest traced level");
  ray_cmd->add_option("--max-points", ro.params.max_points, "Point budget per ray");
  ray_cmd->add_option("--precritical-radius", ro.params.precritical_radius, "Non-smooth flag radius");
  ray_cmd->add_option("--newton-level", ro.params.newton_level, "Level at which Newton targets are placed");
  ray_cmd->add_option("--escape-radius", ro.params.budget.escape_radius, "Escape radius");
  ray_cmd->add_option("--max-iterations", ro.params.budget.max_iterations, "Escape iteration budget");
  ray_cmd->add_flag("--no-refine", ro.no_refine, "Land by the tail criterion only");
  ray_cmd->add_option("--colanding-tol", ro.colanding_tol, "Co-landing clustering distance");
  ray_cmd->add_option("--threads", ro.threads, "Worker threads (default LAMINATA_THREADS or all cores)");
  ray_cmd->add_flag("--polyline", ro.polyline, "Include traced points (level, re, im)");
  ray_cmd->add_option("--svg", ro.svg, "Ray field figure");
  ray_cmd->add_option("--pgm", ro.pgm, "Escape-rate backdrop raster");
  ray_cmd->add_option("--pgm-size", ro.pgm_size, "Backdrop raster size");
  ray_cmd->add_option("--view", ro.view, "Viewport cx,cy,half_width")->delimiter(',')->expected(3);
  ray_cmd->add_option("--equipotential", ro.equipotentials, "Equipotential levels to draw")->delimiter(',');
  ray_cmd->add_option("--equipotential-samples", ro.equipotential_samples, "Points per equipotential");
  ray_cmd->add_option("--lamination-out", ro.lamination_out, "Write co-landing polygons as a lamination file");
  ray_cmd->add_option("--canvas", ro.figure.canvas, "Figure canvas size");
  ray_cmd->callback([&] { action = [&](const Output& o) { return cmd_ray(o, poly_file, ro); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Output o{out, format == "json" ? Format::json : Format::text, !no_banner};
  try {
    return action ? action(o) : 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace laminata::cli
