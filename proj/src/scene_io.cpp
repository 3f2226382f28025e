#include "parasurf/scene_io.hpp"

#include "parasurf/errors.hpp"
#include "parasurf/rng.hpp"

#include <fstream>
#include <sstream>

namespace parasurf {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing field");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

long long as_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& path) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, path + "." + key);
}

Eigen::VectorXd as_vector(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  Eigen::VectorXd out(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out(i) = as_number(j[i], path + "[" + std::to_string(i) + "]");
  return out;
}

Eigen::MatrixXd as_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Eigen::MatrixXd out(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) fail(row_path, "rows must be arrays of equal length");
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = as_number(j[r][c], row_path + "[" + std::to_string(c) + "]");
  }
  return out;
}

Polynomial as_polynomial(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of monomials");
  Polynomial out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string term_path = path + "[" + std::to_string(i) + "]";
    Monomial term;
    term.coeff = as_number(require(j[i], "coeff", term_path), term_path + ".coeff");
    const json& ex = require(j[i], "exponents", term_path);
    if (!ex.is_array()) fail(term_path + ".exponents", "expected an array of integers");
    for (std::size_t k = 0; k < ex.size(); ++k)
      term.exponents.push_back(static_cast<int>(as_integer(ex[k], term_path + ".exponents[" + std::to_string(k) + "]")));
    out.push_back(std::move(term));
  }
  return out;
}

} // namespace

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json quadric_to_json(const QuadricSpec& spec) {
  if (!spec.is_structured()) return {{"A", matrix_to_json(spec.A())}, {"unchecked", true}};
  return {{"P", matrix_to_json(spec.P())}, {"R_skew", matrix_to_json(spec.R_skew())}};
}

QuadricSpec quadric_from_json(const json& params) {
  try {
    if (params.value("unchecked", false)) return QuadricSpec::unchecked(as_matrix(require(params, "A", "params"), "params.A"));
    return QuadricSpec::from_blocks(as_matrix(require(params, "P", "params"), "params.P"),
                                    as_matrix(require(params, "R_skew", "params"), "params.R_skew"));
  } catch (const ShapeError& e) {
    fail("scene.params", e.what());
  }
}

SceneFile parse_scene_file(const json& doc) {
  SceneFile out;
  out.source = doc;
  const long long version = as_integer(require(doc, "version", "$"), "version");
  if (version != 1) fail("version", "unsupported version " + std::to_string(version));
  out.version = 1;

  const json& s = require(doc, "scene", "$");
  const std::string sp = "scene";
  const json& fam = require(s, "family", sp);
  if (!fam.is_string()) fail(sp + ".family", "expected a string");
  Family family;
  try {
    family = family_from_string(fam.get<std::string>());
  } catch (const SchemaError& e) {
    fail(sp + ".family", e.what());
  }

  const long long n = as_integer(require(s, "n", sp), sp + ".n");
  if (n < 0 || n > 4) fail(sp + ".n", "must be in 0..4");

  if (auto it = s.find("seed"); it != s.end()) {
    const long long seed = as_integer(*it, sp + ".seed");
    if (seed < 0) fail(sp + ".seed", "must be >= 0");
    out.seed = static_cast<std::uint64_t>(seed);
  }
  if (auto it = s.find("num_samples"); it != s.end()) {
    const long long count = as_integer(*it, sp + ".num_samples");
    if (count < 1) fail(sp + ".num_samples", "must be >= 1");
    out.num_samples = static_cast<int>(count);
  }
  out.sample_box = number_or(s, "sample_box", 0.4, sp);
  if (!(out.sample_box > 0.0)) fail(sp + ".sample_box", "must be > 0");

  const json params = s.contains("params") ? s.at("params") : json::object();
  if (!params.is_object()) fail(sp + ".params", "expected an object");
  const std::string pp = sp + ".params";
  const int m = 2 * static_cast<int>(n) + 1;

  try {
    switch (family) {
      case Family::Hyperbola:
        if (n != 0) fail(sp + ".n", "hyperbola requires n = 0");
        out.scene = make_hyperbola_scene();
        break;
      case Family::QuadricRadial:
      case Family::PerturbedTransversal: {
        const QuadricSpec spec = quadric_from_json(params);
        if (spec.n() != n) fail(pp, "matrix size does not match n");
        const AmbientVector x0 = params.contains("base_point")
                                     ? as_vector(params.at("base_point"), pp + ".base_point")
                                     : find_base_point(spec, out.seed);
        const Eigen::MatrixXd basis = params.contains("tangent_basis")
                                          ? as_matrix(params.at("tangent_basis"), pp + ".tangent_basis")
                                          : tangent_basis(spec, x0);
        if (family == Family::QuadricRadial) {
          out.scene = make_quadric_scene(spec, x0, basis);
        } else {
          const double eps = as_number(require(params, "epsilon", pp), pp + ".epsilon");
          AmbientVector dir(spec.ambient_dim());
          if (params.contains("direction")) {
            dir = as_vector(params.at("direction"), pp + ".direction");
          } else {
            SeededUniform rng(out.seed ^ 0x5bd1e995ULL);
            for (Eigen::Index k = 0; k < dir.size(); ++k) dir(k) = rng.uniform(-1.0, 1.0);
          }
          out.scene = make_perturbed_scene(spec, x0, basis, eps, dir);
        }
        break;
      }
      case Family::ExplicitGraph: {
        Polynomial graph = as_polynomial(require(params, "graph", pp), pp + ".graph");
        std::vector<Polynomial> transversal;
        if (params.contains("transversal")) {
          const json& t = params.at("transversal");
          if (!t.is_array()) fail(pp + ".transversal", "expected an array of polynomials");
          for (std::size_t k = 0; k < t.size(); ++k)
            transversal.push_back(as_polynomial(t[k], pp + ".transversal[" + std::to_string(k) + "]"));
        } else {
          transversal.assign(m + 1, Polynomial{});
          transversal.back().push_back({1.0, std::vector<int>(m, 0)});
        }
        out.scene = make_graph_scene(static_cast<int>(n), std::move(graph), std::move(transversal));
        break;
      }
    }
  } catch (const ShapeError& e) {
    fail(pp, e.what());
  }

  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (!t.is_object()) fail("tolerances", "expected an object");
    out.scene.tolerances.engine = number_or(t, "engine", 1e-8, "tolerances");
    out.scene.tolerances.theorem = number_or(t, "theorem", 1e-6, "tolerances");
    if (!(out.scene.tolerances.engine > 0.0)) fail("tolerances.engine", "must be > 0");
    if (!(out.scene.tolerances.theorem > 0.0)) fail("tolerances.theorem", "must be > 0");
  }

  const json suites = doc.contains("suites") ? doc.at("suites") : json("all");
  if (suites.is_string()) {
    if (suites.get<std::string>() != "all") fail("suites", "expected \"all\" or a list of theorem ids");
    out.suites = all_theorems();
  } else if (suites.is_array()) {
    for (std::size_t i = 0; i < suites.size(); ++i) {
      if (!suites[i].is_string()) fail("suites[" + std::to_string(i) + "]", "expected a theorem id");
      try {
        out.suites.push_back(theorem_from_string(suites[i].get<std::string>()));
      } catch (const SchemaError& e) {
        fail("suites[" + std::to_string(i) + "]", e.what());
      }
    }
  } else {
    fail("suites", "expected \"all\" or a list of theorem ids");
  }

  if (s.contains("samples")) {
    const json& list = s.at("samples");
    if (!list.is_array() || list.empty()) fail(sp + ".samples", "expected a non-empty array of chart points");
    for (std::size_t i = 0; i < list.size(); ++i) {
      Eigen::VectorXd u = as_vector(list[i], sp + ".samples[" + std::to_string(i) + "]");
      if (u.size() != m) fail(sp + ".samples[" + std::to_string(i) + "]", "chart point must have 2n+1 entries");
      out.scene.samples.push_back(std::move(u));
    }
    out.num_samples = static_cast<int>(list.size());
  } else {
    out.scene.samples = generate_samples(out.scene, out.seed, out.num_samples, out.sample_box);
  }
  return out;
}

SceneFile load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": malformed JSON: " + e.what());
  }
  return parse_scene_file(doc);
}

} // namespace parasurf
