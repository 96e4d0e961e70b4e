// Python face of the toolkit. Every function speaks JSON strings with the
// same schemas as the CLI, so the python package is a thin json.loads/dumps
// wrapper and the two front ends cannot drift apart.

#include "adjointkit/json_io.hpp"
#include "adjointkit/linalg.hpp"
#include "adjointkit/pipeline.hpp"
#include "adjointkit/simplex_cover.hpp"
#include "adjointkit/surface.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;

namespace {

using namespace adjointkit;

json parse(const std::string& text) { return json::parse(text); }

std::string common_point_s(const std::string& poly) {
  return to_json(common_point(polytope_from_json(parse(poly)))).dump();
}

std::string cover_s(const std::string& c_text, const std::string& parts_text) {
  Polytope c = polytope_from_json(parse(c_text));
  std::vector<Polytope> parts;
  for (const json& pj : parse(parts_text)) parts.push_back(polytope_from_json(pj));
  SimplexCover cover = cover_respecting(c, parts);
  std::optional<std::string> err = verify_cover(c, parts, cover);
  json report{{"ok", !err.has_value()}};
  if (err) report["note"] = *err;
  return json{{"cover", to_json(cover)}, {"report", report}}.dump();
}

std::string zariski_s(const std::string& surface, const std::string& divisor) {
  return to_json(zariski(surface_from_json(parse(surface)), qvec_from_json(parse(divisor))))
      .dump();
}

std::string mmp_s(const std::string& surface, const std::string& delta) {
  return to_json(run_mmp(surface_from_json(parse(surface)), qvec_from_json(parse(delta)))).dump();
}

Polytope chart_or_simplex(const std::string& chart, int cdim) {
  if (!chart.empty()) return polytope_from_json(parse(chart));
  QMat corners;
  for (int i = 0; i < cdim; ++i) {
    QVec e(cdim, Rat(0));
    e[i] = Rat(1);
    corners.push_back(e);
  }
  corners.push_back(QVec(cdim, Rat(0)));
  return convex_hull(cdim, corners);
}

std::string pseff_region_s(const std::string& surface, const std::string& boundaries,
                           const std::string& chart) {
  NumericalSurface s = surface_from_json(parse(surface));
  QMat deltas = qmat_from_json(parse(boundaries));
  if (deltas.size() < 2) throw std::invalid_argument("region: need at least two boundary rows");
  return to_json(pseff_region(s, deltas, chart_or_simplex(chart, static_cast<int>(deltas.size()) - 1)))
      .dump();
}

std::string wlc_s(const std::string& surface, const std::string& boundaries,
                  const std::string& chart) {
  NumericalSurface s = surface_from_json(parse(surface));
  QMat deltas = qmat_from_json(parse(boundaries));
  if (deltas.size() < 2) throw std::invalid_argument("region: need at least two boundary rows");
  std::vector<Chamber> chambers =
      wlc_decomposition(s, deltas, chart_or_simplex(chart, static_cast<int>(deltas.size()) - 1));
  json arr = json::array();
  for (const Chamber& ch : chambers) arr.push_back(to_json(ch));
  return arr.dump();
}

std::string semiample_generators_s(const std::string& polygons) {
  std::vector<QMat> polys;
  for (const json& pj : parse(polygons)) polys.push_back(qmat_from_json(pj));
  return to_json(semiample_generators(polys)).dump();
}

std::string toric_surface_s(const std::string& rays_text, const std::string& k_text) {
  std::vector<ZVec> rays;
  for (const json& v : parse(rays_text)) rays.push_back(zvec_from_json(v));
  return to_json(toric_surface(rays, qvec_from_json(parse(k_text)))).dump();
}

std::string adjoint_slice_s(const std::string& instance, long long bound) {
  AdjointInstance inst = instance_from_json(parse(instance));
  json arr = json::array();
  for (const MonoidElem& e : adjoint_slice(inst, inst.deltas, bound)) arr.push_back(to_json(e));
  return arr.dump();
}

std::string run_pipeline_s(const std::string& instance, long long bound) {
  AdjointInstance inst = instance_from_json(parse(instance));
  std::vector<std::string> lines;
  PipelineResult res =
      run_pipeline(inst, bound, [&lines](const std::string& line) { lines.push_back(line); });
  return json{{"result", to_json(res)}, {"trace", lines}}.dump();
}

std::string verify_trace_s(const std::vector<std::string>& lines) {
  return to_json(verify_trace(lines)).dump();
}

}  // namespace

PYBIND11_MODULE(_adjointkit, m) {
  m.doc() = "exact adjoint-ring toolkit; all functions take and return JSON strings";

  py::register_exception<inconsistency_error>(m, "InconsistencyError");

  m.def("common_point", &common_point_s, py::arg("polytope"),
        "point in every delete-one-vertex hull, with certificates");
  m.def("cover", &cover_s, py::arg("c"), py::arg("parts"),
        "aligned simplex cover of c respecting the parts, with a report");
  m.def("zariski", &zariski_s, py::arg("surface"), py::arg("divisor"),
        "Zariski decomposition of a pseudoeffective divisor");
  m.def("mmp", &mmp_s, py::arg("surface"), py::arg("delta"),
        "adjoint minimal model program");
  m.def("pseff_region", &pseff_region_s, py::arg("surface"), py::arg("boundaries"),
        py::arg("chart") = std::string(),
        "chart region where the adjoint divisor is pseudoeffective");
  m.def("wlc_decomposition", &wlc_s, py::arg("surface"), py::arg("boundaries"),
        py::arg("chart") = std::string(),
        "chamber decomposition of the pseudoeffective region");
  m.def("semiample_generators", &semiample_generators_s, py::arg("polygons"),
        "generators of the multigraded section monoid of lattice polygons");
  m.def("toric_surface", &toric_surface_s, py::arg("rays"), py::arg("k"),
        "numerical surface of a smooth complete fan");
  m.def("adjoint_slice", &adjoint_slice_s, py::arg("instance"), py::arg("bound"),
        "direct enumeration of adjoint-ring elements up to the bound");
  m.def("run_pipeline", &run_pipeline_s, py::arg("instance"), py::arg("bound") = 8,
        "full reduction pipeline; returns the result and its trace lines");
  m.def("verify_trace", &verify_trace_s, py::arg("lines"),
        "replay a recorded trace and check it line by line");
}
