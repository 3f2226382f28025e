#pragma once

// JSON scene files (version 1).
//
//   {
//     "version": 1,
//     "scene": {
//       "family": "quadric_radial" | "perturbed_transversal" | "hyperbola" | "explicit_graph",
//       "n": 1,
//       "params": { ... family specific ... },
//       "seed": 7, "num_samples": 20, "sample_box": 0.4,
//       "samples": [[...], ...]            // optional, overrides seeded draws
//     },
//     "tolerances": {"engine": 1e-8, "theorem": 1e-6},
//     "suites": "all" | ["TW_WZORY", ...]
//   }
//
// Family params:
//   quadric_radial:        P, R_skew (row-major nested arrays) or A + "unchecked": true;
//                          optional base_point, tangent_basis (rows = ambient coordinates).
//   perturbed_transversal: as quadric_radial, plus epsilon and optional direction.
//   explicit_graph:        graph: [{"coeff": c, "exponents": [...]}, ...],
//                          optional transversal: one such list per ambient coordinate.
//   hyperbola:             none.

#include "parasurf/hypersurface.hpp"
#include "parasurf/theorems.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace parasurf {

struct SceneFile {
  int version = 1;
  ImmersionScene scene;  // samples already drawn
  std::uint64_t seed = 0;
  int num_samples = 20;
  double sample_box = 0.4;
  std::vector<TheoremId> suites;
  nlohmann::json source;  // the parsed file, echoed in reports
};

/// Throws SchemaError naming the offending field.
SceneFile parse_scene_file(const nlohmann::json& doc);
SceneFile load_scene_file(const std::string& path);

nlohmann::json quadric_to_json(const QuadricSpec& spec);
QuadricSpec quadric_from_json(const nlohmann::json& params);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
nlohmann::json vector_to_json(const Eigen::VectorXd& v);

} // namespace parasurf
