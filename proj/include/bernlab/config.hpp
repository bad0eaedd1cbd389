#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "bernlab/anisotropy.hpp"
#include "bernlab/bernoulli.hpp"
#include "bernlab/errors.hpp"
#include "bernlab/geometry.hpp"
#include "bernlab/lemma_lab.hpp"

namespace bernlab {

struct ExperimentConfig {
  std::string name;
  ConvexPolygon K = ConvexPolygon::regular_polygon({0, 0}, 1.0, 96);
  Anisotropy q = Anisotropy::constant(1.0);
  SolverParams params;
  std::vector<double> j_schedule{2.0, 4.0, 8.0, 16.0};  // staged usc solves
  std::filesystem::path out_dir = "out";
};

namespace cfg_detail {

using nlohmann::json;

inline void check_keys(const json& j, const std::vector<std::string>& allowed,
                       const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ConfigInvalid("unknown key '" + it.key() + "' in " + where);
  }
}

inline double num(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigInvalid("missing key '" + key + "' in " + where);
  if (!j[key].is_number()) throw ConfigInvalid("key '" + key + "' in " + where + " must be a number");
  return j[key].get<double>();
}

inline Vec2 vec2(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigInvalid(where + " must be a [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline ConvexPolygon parse_shape(const json& j) {
  if (!j.is_object() || !j.contains("shape")) throw ConfigInvalid("K: missing 'shape'");
  const std::string shape = j["shape"].get<std::string>();
  try {
    if (shape == "circle") {
      check_keys(j, {"shape", "center", "radius", "segments"}, "K (circle)");
      const Vec2 c = j.contains("center") ? vec2(j["center"], "K.center") : Vec2{0, 0};
      const double r = num(j, "radius", "K");
      const int n = j.contains("segments") ? j["segments"].get<int>() : 128;
      return ConvexPolygon::regular_polygon(c, r, n);
    }
    if (shape == "square") {
      check_keys(j, {"shape", "center", "halfwidth"}, "K (square)");
      const Vec2 c = j.contains("center") ? vec2(j["center"], "K.center") : Vec2{0, 0};
      const double w = num(j, "halfwidth", "K");
      if (w <= 0) throw ConfigInvalid("K.halfwidth: must be positive");
      return ConvexPolygon::box(c - Vec2{w, w}, c + Vec2{w, w});
    }
    if (shape == "regular") {
      check_keys(j, {"shape", "center", "radius", "n", "phase"}, "K (regular)");
      const Vec2 c = j.contains("center") ? vec2(j["center"], "K.center") : Vec2{0, 0};
      const double r = num(j, "radius", "K");
      const int n = j.contains("n") ? j["n"].get<int>() : 6;
      const double phase = j.contains("phase") ? j["phase"].get<double>() : 0.0;
      return ConvexPolygon::regular_polygon(c, r, n, phase);
    }
    if (shape == "polygon") {
      check_keys(j, {"shape", "vertices"}, "K (polygon)");
      if (!j.contains("vertices") || !j["vertices"].is_array())
        throw ConfigInvalid("K.vertices: missing vertex list");
      std::vector<Vec2> pts;
      for (const auto& v : j["vertices"]) pts.push_back(vec2(v, "K.vertices entry"));
      return ConvexPolygon::from_vertices(std::move(pts));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigInvalid(std::string("K: ") + e.what());
  }
  throw ConfigInvalid("K.shape: unknown shape '" + shape + "'");
}

inline std::vector<Anisotropy::Knot> parse_knots(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ConfigInvalid(where + " must be a nonempty array");
  std::vector<Anisotropy::Knot> out;
  for (const auto& kv : j) {
    const Vec2 p = vec2(kv, where + " entry");
    out.push_back({p.x, p.y});
  }
  return out;
}

inline Anisotropy parse_anisotropy(const json& j, const std::string& where = "anisotropy") {
  if (!j.is_object() || !j.contains("kind")) throw ConfigInvalid(where + ": missing 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "constant") {
      check_keys(j, {"kind", "value"}, where);
      return Anisotropy::constant(num(j, "value", where));
    }
    if (kind == "piecewise_linear") {
      check_keys(j, {"kind", "knots"}, where);
      if (!j.contains("knots")) throw ConfigInvalid(where + ".knots: required");
      return Anisotropy::piecewise_linear(parse_knots(j["knots"], where + ".knots"));
    }
    if (kind == "usc_jumps") {
      check_keys(j, {"kind", "base", "jumps"}, where);
      if (!j.contains("base") || !j.contains("jumps"))
        throw ConfigInvalid(where + ": usc_jumps needs 'base' and 'jumps'");
      return Anisotropy::usc_jumps(parse_anisotropy(j["base"], where + ".base"),
                                   parse_knots(j["jumps"], where + ".jumps"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigInvalid(where + ": " + e.what());
  }
  throw ConfigInvalid(where + ".kind: unknown kind '" + kind + "'");
}

inline SolverParams parse_solver(const json& j) {
  SolverParams p;
  check_keys(j, {"h", "fb_tol", "step0", "max_iter", "r_reg", "boundary_samples", "solver_tol"},
             "solver");
  if (j.contains("h")) p.h = j["h"].get<double>();
  if (j.contains("fb_tol")) p.fb_tol = j["fb_tol"].get<double>();
  if (j.contains("step0")) p.step0 = j["step0"].get<double>();
  if (j.contains("max_iter")) p.max_iter = j["max_iter"].get<int>();
  if (j.contains("r_reg")) p.r_reg = j["r_reg"].get<double>();
  if (j.contains("boundary_samples")) p.boundary_samples = j["boundary_samples"].get<int>();
  if (j.contains("solver_tol")) p.solver_tol = j["solver_tol"].get<double>();
  if (p.fb_tol <= 0.0 || p.fb_tol > 0.1)
    throw ConfigInvalid("solver.fb_tol: must be in (0, 0.1]");
  return p;
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigInvalid(what + ": invalid JSON: " + e.what());
  }
}

}  // namespace cfg_detail

inline ExperimentConfig parse_experiment_config(const std::string& text) {
  using cfg_detail::json;
  const json j = cfg_detail::parse_json(text, "experiment config");
  if (!j.is_object()) throw ConfigInvalid("experiment config: top level must be an object");
  cfg_detail::check_keys(j, {"name", "K", "anisotropy", "solver", "j_schedule", "out_dir"},
                         "experiment config");
  ExperimentConfig cfg;
  if (j.contains("name")) cfg.name = j["name"].get<std::string>();
  if (!j.contains("K")) throw ConfigInvalid("experiment config: missing key 'K'");
  cfg.K = cfg_detail::parse_shape(j["K"]);
  if (!j.contains("anisotropy")) throw ConfigInvalid("experiment config: missing key 'anisotropy'");
  cfg.q = cfg_detail::parse_anisotropy(j["anisotropy"]);
  if (j.contains("solver")) cfg.params = cfg_detail::parse_solver(j["solver"]);
  if (j.contains("j_schedule")) {
    cfg.j_schedule.clear();
    for (const auto& v : j["j_schedule"]) cfg.j_schedule.push_back(v.get<double>());
    for (size_t i = 1; i < cfg.j_schedule.size(); ++i)
      if (cfg.j_schedule[i] <= cfg.j_schedule[i - 1])
        throw ConfigInvalid("j_schedule: must be strictly increasing");
  }
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  return cfg;
}

inline SuiteConfig parse_suite_config(const std::string& text) {
  using cfg_detail::json;
  const json j = cfg_detail::parse_json(text, "suite config");
  if (!j.is_object()) throw ConfigInvalid("suite config: top level must be an object");
  cfg_detail::check_keys(j, {"checks", "out_dir", "jobs", "overrides"}, "suite config");
  SuiteConfig cfg;
  if (j.contains("checks")) {
    cfg.checks.clear();
    for (const auto& v : j["checks"]) {
      const std::string name = v.get<std::string>();
      bool known = false;
      for (const auto& k : default_check_names()) known = known || k == name;
      if (!known) throw ConfigInvalid("unknown check name: " + name);
      cfg.checks.push_back(name);
    }
  }
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
  if (j.contains("overrides")) {
    const json& o = j["overrides"];
    cfg_detail::check_keys(o, default_check_names(), "overrides");
    if (o.contains("facet_convexity")) {
      const json& c = o["facet_convexity"];
      cfg_detail::check_keys(
          c, {"k_halfwidth", "v_halfwidth", "h_levels", "tol_conv", "tau_count", "samples"},
          "overrides.facet_convexity");
      auto& fc = cfg.facet_convexity;
      if (c.contains("k_halfwidth")) fc.k_halfwidth = c["k_halfwidth"].get<double>();
      if (c.contains("v_halfwidth")) fc.v_halfwidth = c["v_halfwidth"].get<double>();
      if (c.contains("h_levels")) {
        fc.h_levels.clear();
        for (const auto& v : c["h_levels"]) fc.h_levels.push_back(v.get<double>());
      }
      if (c.contains("tol_conv")) fc.tol_conv = c["tol_conv"].get<double>();
      if (c.contains("tau_count")) fc.tau_count = c["tau_count"].get<int>();
      if (c.contains("samples")) fc.samples = c["samples"].get<int>();
    }
    if (o.contains("counterexample")) {
      const json& c = o["counterexample"];
      cfg_detail::check_keys(c, {"h", "x_range", "samples", "max_rel_err"},
                             "overrides.counterexample");
      auto& ce = cfg.counterexample;
      if (c.contains("h")) ce.h = c["h"].get<double>();
      if (c.contains("x_range")) ce.x_range = c["x_range"].get<double>();
      if (c.contains("samples")) ce.samples = c["samples"].get<int>();
      if (c.contains("max_rel_err")) ce.max_rel_err = c["max_rel_err"].get<double>();
    }
    if (o.contains("comparison")) {
      const json& c = o["comparison"];
      cfg_detail::check_keys(c, {"h", "fb_tol", "k_segments"}, "overrides.comparison");
      if (c.contains("h")) cfg.comparison.h = c["h"].get<double>();
      if (c.contains("fb_tol")) cfg.comparison.fb_tol = c["fb_tol"].get<double>();
      if (c.contains("k_segments")) cfg.comparison.k_segments = c["k_segments"].get<int>();
    }
    if (o.contains("straszewicz")) {
      const json& c = o["straszewicz"];
      cfg_detail::check_keys(c, {"resolutions", "bound_factor"}, "overrides.straszewicz");
      if (c.contains("resolutions")) {
        cfg.straszewicz.resolutions.clear();
        for (const auto& v : c["resolutions"]) cfg.straszewicz.resolutions.push_back(v.get<int>());
      }
      if (c.contains("bound_factor")) cfg.straszewicz.bound_factor = c["bound_factor"].get<double>();
    }
    if (o.contains("monotone_usc")) {
      const json& c = o["monotone_usc"];
      cfg_detail::check_keys(
          c, {"h", "fb_tol", "jump_theta", "jump_value", "base_value", "j_schedule", "k_segments"},
          "overrides.monotone_usc");
      auto& mu = cfg.monotone_usc;
      if (c.contains("h")) mu.h = c["h"].get<double>();
      if (c.contains("fb_tol")) mu.fb_tol = c["fb_tol"].get<double>();
      if (c.contains("jump_theta")) mu.jump_theta = c["jump_theta"].get<double>();
      if (c.contains("jump_value")) mu.jump_value = c["jump_value"].get<double>();
      if (c.contains("base_value")) mu.base_value = c["base_value"].get<double>();
      if (c.contains("j_schedule")) {
        mu.j_schedule.clear();
        for (const auto& v : c["j_schedule"]) mu.j_schedule.push_back(v.get<double>());
      }
      if (c.contains("k_segments")) mu.k_segments = c["k_segments"].get<int>();
    }
  }
  return cfg;
}

}  // namespace bernlab
