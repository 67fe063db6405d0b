#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gpttomo/entanglement.hpp"
#include "gpttomo/linalg.hpp"
#include "gpttomo/runner.hpp"
#include "gpttomo/theories.hpp"
#include "gpttomo/tomography.hpp"

namespace py = pybind11;
using namespace gpttomo;

namespace {

// Results cross the boundary as JSON strings; the python wrapper parses them.
std::string run_json(const std::string& verb, const std::string& theory,
                     const std::string& state, const std::string& state_json,
                     const std::string& demo, int bit, int bit_x, int bit_y,
                     std::uint64_t seed) {
  Command cmd;
  cmd.verb = verb;
  cmd.theory = theory;
  cmd.state_name = state;
  cmd.state_json = state_json;
  cmd.demo_name = demo;
  cmd.bit = bit;
  cmd.bit_x = bit_x;
  cmd.bit_y = bit_y;
  cmd.seed = seed;
  const RunResult r = run(cmd);
  nlohmann::json wrapped;
  wrapped["exit_code"] = r.exit_code;
  wrapped["output"] = r.output;
  return wrapped.dump();
}

std::vector<std::vector<double>> mat_rows(const Mat& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

}  // namespace

PYBIND11_MODULE(_gpttomo, m) {
  m.doc() = "Composite state spaces, holistic decompositions, entanglement "
            "classification and protocol demos";

  m.def("run_json", &run_json, py::arg("verb"), py::arg("theory") = "",
        py::arg("state") = "", py::arg("state_json") = "", py::arg("demo") = "",
        py::arg("bit") = 0, py::arg("bit_x") = 0, py::arg("bit_y") = 0,
        py::arg("seed") = kDefaultSeed);

  m.def("composite_names", &composite_names);

  m.def("named_states", [] {
    std::map<std::string, Vec> out;
    for (const auto& [k, v] : named_states()) out[k] = v;
    return out;
  });

  m.def("projector_tl", [](const std::string& theory) {
    return mat_rows(build_pi_tl(make_composite(theory)));
  });
  m.def("projector_tnl", [](const std::string& theory) {
    return mat_rows(build_pi_tnl(make_composite(theory)));
  });

  m.def("min_eigenvalue_symmetric", [](const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    Mat mat(n, rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) mat(i, j) = rows[i][j];
    return min_eigenvalue_symmetric(mat);
  });

  m.def("iota_embed", [](const Vec& state) { return mat_rows(iota_embed(state)); });

  m.attr("__version__") = "1.0.0";
  m.attr("SCHEMA_VERSION") = kSchemaVersion;
  m.attr("DEFAULT_SEED") = kDefaultSeed;
}
