#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <vector>

#include "rndop/commands.hpp"
#include "rndop/io.hpp"

namespace py = pybind11;
using namespace rndop;

namespace {

using PyPoint = std::array<double, 3>;
using PyPoints = std::vector<PyPoint>;

Vec3 to_vec(const PyPoint& p) { return {p[0], p[1], p[2]}; }

PyPoint from_vec(const Vec3& v) { return {v.x, v.y, v.z}; }

AnchorSet to_anchors(const PyPoints& pts) {
  std::vector<Vec3> v;
  v.reserve(pts.size());
  for (const PyPoint& p : pts) v.push_back(to_vec(p));
  return AnchorSet(v);
}

PyPoints from_anchors(const std::vector<Vec3>& pts) {
  PyPoints out;
  out.reserve(pts.size());
  for (const Vec3& p : pts) out.push_back(from_vec(p));
  return out;
}

AnchorMatrix centered_matrix_of(const PyPoints& pts) {
  return anchor_matrix(to_anchors(pts).centered_copy());
}

DopKind to_kind(const std::string& kind) {
  if (kind == "xyz") return DopKind::xyz;
  if (kind == "xy") return DopKind::xy;
  throw Error(Errc::invalid_config, "kind must be 'xyz' or 'xy'");
}

py::dict run_to_dict(const PlacementRun& run) {
  py::dict out;
  out["mode"] = mode_name(run.mode);
  out["method"] = method_name(run.method);
  out["status"] = run_status_name(run.status);
  out["initial_anchors"] = from_anchors(run.initial_gcs);
  out["final_anchors"] = from_anchors(run.final_gcs);
  out["initial_sq_rndop"] = run.initial_sq_rndop;
  out["failed_anchors"] = run.failed_anchors;
  py::list iters;
  for (const IterationRecord& rec : run.iterations) {
    py::dict it;
    it["k"] = rec.anchor_count;
    it["anchor"] = from_vec(rec.anchor_gcs);
    it["achieved_sq_rndop"] = rec.achieved_sq_rndop;
    it["lb_iter"] = rec.bounds.lower;
    it["ub_iter"] = rec.bounds.upper;
    it["valid"] = rec.valid;
    iters.append(it);
  }
  out["iterations"] = iters;
  return out;
}

}  // namespace

PYBIND11_MODULE(_rndop, m) {
  m.doc() = "Anchor placement and DOP evaluation for ToA localization beyond the anchors' convex hull";

  py::register_exception<Error>(m, "RndopError");

  m.def(
      "rndop",
      [](const PyPoints& anchors, double theta, double phi, const std::string& kind) {
        return rndop_eval(centered_matrix_of(anchors), theta, phi, to_kind(kind)).value;
      },
      py::arg("anchors"), py::arg("theta"), py::arg("phi") = M_PI / 2.0, py::arg("kind") = "xyz",
      "Range-normalized DOP of the (centered) anchor geometry in a direction");

  m.def(
      "rndop_bounds",
      [](const PyPoints& anchors, const std::string& kind) {
        const RndopBounds b = rndop_bounds(centered_matrix_of(anchors), to_kind(kind));
        return std::make_pair(b.lower.value, b.upper.value);
      },
      py::arg("anchors"), py::arg("kind") = "xyz",
      "Direction-independent (lower, upper) RNDOP bounds");

  m.def(
      "max_rndop",
      [](const PyPoints& anchors, const std::string& kind) {
        return std::sqrt(max_sq_rndop(centered_matrix_of(anchors), to_kind(kind)));
      },
      py::arg("anchors"), py::arg("kind") = "xyz", "Worst-case RNDOP over all directions");

  m.def(
      "exact_dop",
      [](const PyPoints& anchors, const PyPoint& target, const std::string& kind) {
        return exact_dop(to_anchors(anchors), Target::cartesian(to_vec(target)), to_kind(kind))
            .value;
      },
      py::arg("anchors"), py::arg("target"), py::arg("kind") = "xyz",
      "Exact DOP for a target position");

  m.def(
      "far_away_threshold",
      [](const PyPoints& anchors) { return far_away_threshold(centered_matrix_of(anchors)); },
      py::arg("anchors"), "Range beyond which the far-away RNDOP forms apply");

  m.def(
      "minimax_lower_bounds",
      [](const PyPoints& anchors) {
        const MinimaxLowerBounds b = minimax_lower_bounds(to_anchors(anchors).centered_copy());
        return std::make_pair(b.config_specific, b.universal);
      },
      py::arg("anchors"),
      "(configuration-specific, universal) lower bounds on the worst-case RNDOP per unit range");

  m.def(
      "place",
      [](const PyPoints& initial, const PyPoint& box_lower, const PyPoint& box_upper,
         double min_separation, int additional, const std::string& method,
         const std::string& mode, std::uint64_t seed) {
        PlacementProblem problem;
        problem.method = parse_method(method);
        problem.mode = parse_mode(mode);
        problem.box = {to_vec(box_lower), to_vec(box_upper)};
        problem.sep.min_distance = min_separation;
        problem.additional = additional;
        problem.seed = seed;
        return run_to_dict(run_placement(problem, to_anchors(initial)));
      },
      py::arg("initial"), py::arg("box_lower"), py::arg("box_upper"), py::arg("min_separation"),
      py::arg("additional"), py::arg("method") = "tr", py::arg("mode") = "3d",
      py::arg("seed") = 0,
      "Iteratively add anchors minimizing the worst-case RNDOP; returns the run record");

  m.def(
      "simulate_ranges",
      [](const PyPoints& anchors, const PyPoint& target, double bias, double sigma,
         std::uint64_t seed) {
        Rng rng(seed);
        return simulate_ranges(to_anchors(anchors), to_vec(target), RangeModel{bias, sigma}, rng);
      },
      py::arg("anchors"), py::arg("target"), py::arg("bias") = 1.0, py::arg("sigma") = 6.0,
      py::arg("seed") = 0, "Biased-Gaussian ToA range draws");

  m.def(
      "nls_fix",
      [](const PyPoints& anchors, const std::vector<double>& ranges, const PyPoint& guess,
         const std::string& mode, double plane_z) {
        const FixResult fix =
            nls_fix(to_anchors(anchors), ranges, parse_mode(mode), to_vec(guess), plane_z);
        py::dict out;
        out["position"] = from_vec(fix.position);
        out["residual_norm"] = fix.residual_norm;
        out["iterations"] = fix.iterations;
        out["converged"] = fix.converged;
        return out;
      },
      py::arg("anchors"), py::arg("ranges"), py::arg("guess"), py::arg("mode") = "3d",
      py::arg("plane_z") = 0.0, "Nonlinear least-squares position fix");
}
