#include "parasurf/runner.hpp"

#include "parasurf/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace parasurf {

using nlohmann::json;

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

json breakdown_to_json(const Breakdown& b) {
  json out = json::object();
  for (const auto& r : b) out[r.name] = r.value;
  return out;
}

json thresholds_to_json(const Breakdown& b) {
  json out = json::object();
  for (const auto& r : b) out[r.name] = std::isfinite(r.tolerance) ? json(r.tolerance) : json(nullptr);
  return out;
}

json suite_to_json(const TheoremReport& r) {
  json samples = json::array();
  for (const auto& s : r.per_sample)
    samples.push_back({{"sample", s.sample_index}, {"max", s.max_residual}, {"breakdown", breakdown_to_json(s.breakdown)}});
  json out = {
      {"id", to_string(r.id)},
      {"status", to_string(r.status)},
      {"passed", r.passed},
      {"vacuous", r.vacuous},
      {"gate_bypassed", r.gate_bypassed},
      {"note", r.note},
      {"max_residual", r.max_residual},
      {"per_sample", std::move(samples)},
  };
  if (!r.per_sample.empty()) out["thresholds"] = thresholds_to_json(r.per_sample.front().breakdown);
  return out;
}

json pointwise_to_json(const PointEvaluation& p) {
  return {
      {"u", vector_to_json(p.u)},
      {"h", matrix_to_json(p.induced.h)},
      {"S", matrix_to_json(p.induced.S)},
      {"tau", vector_to_json(p.induced.tau)},
      {"xi", vector_to_json(p.para.xi)},
      {"eta", vector_to_json(p.para.eta)},
      {"signature", {p.metric.signature.plus, p.metric.signature.minus}},
  };
}

bool suite_ok(const TheoremReport& r) {
  return r.status == SuiteStatus::Passed || r.status == SuiteStatus::Vacuous ||
         r.status == SuiteStatus::NotApplicable;
}

std::string format_matrix_1x1(const Eigen::MatrixXd& m) { return m.size() == 1 ? sci(m(0, 0)) : "-"; }

} // namespace

RunResult run_verify(const SceneFile& file, const RunOptions& options) {
  RunResult result;
  const Tolerances& tol = file.scene.tolerances;
  json timing = json::object();

  auto start = std::chrono::steady_clock::now();
  result.evaluation = evaluate_scene(file.scene);
  timing["evaluate"] = elapsed_ms(start);
  const SceneEvaluation& eval = result.evaluation;

  // Engine self-test: the fundamental equations hold for every transversal field.
  FundamentalResiduals worst;
  json self_samples = json::array();
  json skipped = json::array();
  json pointwise = json::array();
  for (const auto& s : eval.samples) {
    if (!s.eval) {
      skipped.push_back({{"sample", s.index}, {"reason", s.failure}});
      continue;
    }
    const auto& f = s.eval->fundamental;
    worst.gauss = std::max(worst.gauss, f.gauss);
    worst.codazzi_h = std::max(worst.codazzi_h, f.codazzi_h);
    worst.codazzi_s = std::max(worst.codazzi_s, f.codazzi_s);
    worst.ricci = std::max(worst.ricci, f.ricci);
    self_samples.push_back({{"sample", s.index},
                            {"gauss", f.gauss},
                            {"codazzi_h", f.codazzi_h},
                            {"codazzi_s", f.codazzi_s},
                            {"ricci", f.ricci}});
    pointwise.push_back(pointwise_to_json(*s.eval));
  }
  const bool engine_ok = eval.admissible() > 0 && worst.max() <= tol.engine;
  const bool degenerate = eval.admissible() == 0 || eval.skipped_fraction() > kMaxSkippedFraction;

  json suites = json::array();
  bool all_suites_ok = true;
  for (TheoremId id : file.suites) {
    start = std::chrono::steady_clock::now();
    TheoremReport r = run_theorem(id, eval, tol, options.diagnostic);
    timing[to_string(id)] = elapsed_ms(start);
    all_suites_ok = all_suites_ok && suite_ok(r);
    suites.push_back(suite_to_json(r));
    result.suites.push_back(std::move(r));
  }

  const bool pass = engine_ok && all_suites_ok;
  result.exit_code = degenerate ? kExitDegenerate : (pass ? kExitPass : kExitFail);

  json& report = result.report;
  report["version"] = 1;
  report["scene"] = file.source;
  report["diagnostic"] = options.diagnostic;
  report["samples"] = {{"requested", eval.samples.size()}, {"admissible", eval.admissible()}, {"skipped", skipped}};
  report["engine_self_test"] = {
      {"passed", engine_ok},
      {"tolerance", tol.engine},
      {"max", {{"gauss", worst.gauss}, {"codazzi_h", worst.codazzi_h}, {"codazzi_s", worst.codazzi_s}, {"ricci", worst.ricci}}},
      {"per_sample", self_samples},
  };
  report["pointwise"] = pointwise;
  report["suites"] = suites;
  report["overall"] = pass && !degenerate ? "pass" : "fail";
  report["exit_code"] = result.exit_code;
  if (options.timing) report["timing_ms"] = timing;

  std::ostringstream text;
  text << "scene: " << to_string(file.scene.family) << " n=" << file.scene.n << "  samples " << eval.admissible()
       << "/" << eval.samples.size() << " admissible" << (options.diagnostic ? "  [diagnostic]" : "") << "\n";
  text << pad("engine self-test", 18) << (engine_ok ? "PASS" : "FAIL") << "  gauss=" << sci(worst.gauss)
       << " codazzi_h=" << sci(worst.codazzi_h) << " codazzi_s=" << sci(worst.codazzi_s)
       << " ricci=" << sci(worst.ricci) << "\n";
  if (file.scene.n == 0) {
    for (const auto& s : eval.samples) {
      if (!s.eval) continue;
      text << pad("pointwise", 18) << "sample " << s.index << ": h=" << format_matrix_1x1(s.eval->induced.h)
           << " S=" << format_matrix_1x1(s.eval->induced.S) << " tau=" << sci(s.eval->induced.tau(0))
           << " xi=" << sci(s.eval->para.xi(0)) << " eta=" << sci(s.eval->para.eta(0)) << "\n";
      break;
    }
  }
  for (const auto& r : result.suites) {
    std::string verdict;
    switch (r.status) {
      case SuiteStatus::Passed: verdict = "PASS"; break;
      case SuiteStatus::Failed: verdict = "FAIL"; break;
      case SuiteStatus::HypothesisNotMet: verdict = "SKIP (hypothesis not met)"; break;
      case SuiteStatus::Vacuous: verdict = "PASS (vacuous)"; break;
      case SuiteStatus::NotApplicable: verdict = "N/A"; break;
    }
    text << pad(to_string(r.id), 18) << verdict;
    if (!r.per_sample.empty()) text << "  max=" << sci(r.max_residual);
    if (r.status == SuiteStatus::Failed) {
      // Name the entries that failed anywhere.
      std::vector<std::string> failed;
      for (const auto& s : r.per_sample)
        for (const auto& e : s.breakdown)
          if (!e.ok() && std::find(failed.begin(), failed.end(), e.name) == failed.end()) failed.push_back(e.name);
      if (!failed.empty()) {
        text << "  failing:";
        for (const auto& name : failed) text << " " << name;
      }
    }
    if (!r.note.empty()) text << "  (" << r.note << ")";
    text << "\n";
  }
  if (degenerate) text << "numeric degeneracy: " << (eval.samples.size() - eval.admissible()) << " samples skipped\n";
  text << "overall: " << (result.exit_code == kExitPass ? "PASS" : "FAIL") << "\n";
  result.summary = text.str();
  return result;
}

json make_quadric_scene_file(int n, std::uint64_t seed) {
  const QuadricSpec spec = random_quadric_spec(n, seed);
  const AmbientVector x0 = find_base_point(spec, seed);
  json params = quadric_to_json(spec);
  params["base_point"] = vector_to_json(x0);
  params["tangent_basis"] = matrix_to_json(tangent_basis(spec, x0));
  return {
      {"version", 1},
      {"scene",
       {{"family", "quadric_radial"}, {"n", n}, {"params", params}, {"seed", seed}, {"num_samples", 20}, {"sample_box", 0.4}}},
      {"tolerances", {{"engine", 1e-8}, {"theorem", 1e-6}}},
      {"suites", "all"},
  };
}

int cmd_verify(const std::string& path, const std::optional<std::string>& json_path, const RunOptions& options,
               std::ostream& out, std::ostream& err) {
  SceneFile file;
  try {
    file = load_scene_file(path);
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BasePointNotFound& e) {
    err << "error: " << e.what() << "\n";
    return kExitDegenerate;
  }
  const RunResult result = run_verify(file, options);
  out << result.summary;
  if (json_path) {
    std::ofstream f(*json_path);
    if (!f) {
      err << "error: cannot write " << *json_path << "\n";
      return kExitInput;
    }
    f << result.report.dump(2) << "\n";
  }
  return result.exit_code;
}

int cmd_gen_quadric(int n, std::uint64_t seed, const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (n < 0 || n > 4) {
    err << "error: --n must be in 0..4\n";
    return kExitInput;
  }
  json doc;
  try {
    doc = make_quadric_scene_file(n, seed);
  } catch (const BasePointNotFound& e) {
    err << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDegenerate;
  }
  std::ofstream f(out_path);
  if (!f) {
    err << "error: cannot write " << out_path << "\n";
    return kExitInput;
  }
  f << doc.dump(2) << "\n";
  out << "wrote " << out_path << "\n";
  return kExitPass;
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw SchemaError("values: '" + item + "' is not a number");
    }
    if (used != item.size()) throw SchemaError("values: '" + item + "' is not a number");
    out.push_back(v);
  }
  return out;
}

int cmd_sweep(const std::string& path, const std::string& param, const std::vector<double>& values,
              std::ostream& out, std::ostream& err) {
  if (param != "epsilon") {
    err << "error: unsupported sweep parameter '" << param << "'\n";
    return kExitInput;
  }
  if (values.empty()) {
    err << "error: sweep needs at least one value\n";
    return kExitInput;
  }
  SceneFile base;
  try {
    base = load_scene_file(path);
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BasePointNotFound& e) {
    err << "error: " << e.what() << "\n";
    return kExitDegenerate;
  }
  if (base.scene.family != Family::PerturbedTransversal) {
    err << "error: family " << to_string(base.scene.family) << " has no epsilon parameter\n";
    return kExitInput;
  }

  int code = kExitPass;
  out << pad("epsilon", 14) << pad("metric", 14) << pad("S_plus_id", 14) << pad("tau", 14) << "verify_exit\n";
  for (double eps : values) {
    SceneFile file = base;
    file.scene.epsilon = eps;
    const RunResult r = run_verify(file, {.diagnostic = true, .timing = false});
    double metric = 0.0, s_plus_id = 0.0, tau = 0.0;
    for (const auto& s : r.evaluation.samples) {
      if (!s.eval) continue;
      const auto& in = s.eval->induced;
      const Eigen::Index m = in.S.rows();
      metric = std::max(metric, s.eval->metric.metric_residual);
      s_plus_id = std::max(s_plus_id, (in.S + Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff());
      tau = std::max(tau, in.tau.cwiseAbs().maxCoeff());
    }
    out << pad(sci(eps), 14) << pad(sci(metric), 14) << pad(sci(s_plus_id), 14) << pad(sci(tau), 14) << r.exit_code
        << "\n";
    if (r.exit_code == kExitDegenerate) code = kExitDegenerate;
  }
  return code;
}

} // namespace parasurf
