#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orbitcone/asymptotic.hpp"
#include "orbitcone/cartan.hpp"
#include "orbitcone/catalog.hpp"
#include "orbitcone/cone.hpp"
#include "orbitcone/induction.hpp"
#include "orbitcone/orbits.hpp"
#include "orbitcone/report.hpp"
#include "orbitcone/tempered.hpp"

namespace py = pybind11;
using namespace orbitcone;

namespace {

py::object to_python(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null: return py::none();
    case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
    case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& x : j) out.append(to_python(x));
      return std::move(out);
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return std::move(out);
    }
    default: return py::none();
  }
}

std::vector<Vec> directions_of(const ConeDescription& c) { return direction_samples(c, 0.02); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coadjoint orbits, asymptotic cones and wave front sets";

  static py::exception<Error> error(m, "OrbitconeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<MatrixLieAlgebra>(m, "LieAlgebra")
      .def_property_readonly("name", &MatrixLieAlgebra::name)
      .def_property_readonly("dim", &MatrixLieAlgebra::dim)
      .def_property_readonly("gram", &MatrixLieAlgebra::gram)
      .def("bracket", &MatrixLieAlgebra::bracket, py::arg("x"), py::arg("y"))
      .def("ad_matrix", py::overload_cast<const Vec&>(&MatrixLieAlgebra::ad_matrix, py::const_), py::arg("x"))
      .def("structure_defects", [](const MatrixLieAlgebra& L) {
        const auto d = structure_defects(L);
        return py::dict(py::arg("antisymmetry") = d.antisymmetry, py::arg("jacobi") = d.jacobi,
                        py::arg("invariance") = d.invariance, py::arg("matrix_bracket") = d.matrix_bracket);
      })
      .def("__repr__", [](const MatrixLieAlgebra& L) { return "<LieAlgebra " + L.name() + ">"; });

  m.def("build_algebra", &build_algebra, py::arg("spec"));

  m.def(
      "classify",
      [](const std::string& algebra, const Vec& point) {
        return std::string(to_string(classify_element(build_algebra(algebra), Covector{point}).tag));
      },
      py::arg("algebra"), py::arg("point"));

  m.def(
      "orbit_invariants",
      [](const std::string& algebra, const Vec& point) { return orbit_invariants(build_algebra(algebra), Covector{point}); },
      py::arg("algebra"), py::arg("point"));

  m.def(
      "orbit_sample",
      [](const std::string& algebra, const Vec& point, int n, std::uint64_t seed) {
        const auto pts = orbit_sample(generic_orbit(build_algebra(algebra), Covector{point}), n, seed);
        Mat out(static_cast<Eigen::Index>(pts.size()), point.size());
        for (size_t i = 0; i < pts.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
        return out;
      },
      py::arg("algebra"), py::arg("point"), py::arg("n") = 1000, py::arg("seed") = 1);

  m.def(
      "exp_jacobian",
      [](const std::string& algebra, const Vec& x) {
        const auto j = exp_jacobian(build_algebra(algebra), AlgebraElement{x});
        return py::make_tuple(j.j, j.j_sqrt);
      },
      py::arg("algebra"), py::arg("x"));

  m.def(
      "density_ratio",
      [](const std::string& algebra, const Vec& point) { return density_ratio_F(build_algebra(algebra), Covector{point}); },
      py::arg("algebra"), py::arg("point"));

  m.def(
      "dual_cone",
      [](const std::vector<Vec>& generators) {
        if (generators.empty()) throw Error(ErrorCode::EmptyFamily, "dual_cone needs generators");
        const int n = static_cast<int>(generators.front().size());
        return dual_cone(ConeDescription::polyhedral(generators, n)).as_polyhedral().generators;
      },
      py::arg("generators"));

  m.def(
      "wavefront",
      [](const std::string& label, std::uint64_t seed) {
        const auto spec = parse_representation(label);
        const auto cone = wavefront_of(spec, AcOptions{}, seed);
        const auto expected = ConeDescription::exact(spec.expected, 3, "sl2R");
        return py::dict(py::arg("expected") = to_string(spec.expected),
                        py::arg("defect") = hausdorff_distance(cone, expected),
                        py::arg("directions") = directions_of(cone));
      },
      py::arg("label"), py::arg("seed") = 1);

  m.def(
      "tempered",
      [](const std::string& pair) { return to_python(bk_weak_containment(build_pair(pair)).to_json()); },
      py::arg("pair"));

  m.def(
      "saturation",
      [](const std::string& pair, int budget, std::uint64_t seed) {
        return std::string(to_string(saturation_is_full(build_pair(pair), budget, seed).verdict));
      },
      py::arg("pair"), py::arg("budget") = 20000, py::arg("seed") = 1);

  m.def(
      "tensor",
      [](int n, char s1, int k, char s2, int samples, std::uint64_t seed) {
        return to_python(tensor_analysis(n, s1, k, s2, samples, seed).to_json());
      },
      py::arg("n"), py::arg("s1"), py::arg("m"), py::arg("s2"), py::arg("samples") = 10000, py::arg("seed") = 1);

  m.def(
      "sopq_conditions",
      [](int p, int q, const std::vector<std::pair<int, int>>& blocks) {
        return py::make_tuple(sopq_bk_condition(p, q, blocks), sopq_saturation_condition(p, q, blocks));
      },
      py::arg("p"), py::arg("q"), py::arg("blocks"));

  m.def(
      "golden_table",
      [](std::uint64_t seed, double angular_tol) {
        py::gil_scoped_release release;
        const auto t = golden_table(seed, angular_tol);
        py::gil_scoped_acquire acquire;
        return to_python(t.to_json());
      },
      py::arg("seed") = 1, py::arg("angular_tol") = 0.05);

  m.def(
      "run",
      [](const std::string& command, const std::string& algebra, const std::string& pair, const std::string& rep,
         const std::string& point, const std::string& generators, std::uint64_t seed, std::optional<int> samples,
         const std::vector<double>& radii, double angular_tol) {
        RunConfig c;
        c.command = command;
        c.algebra = algebra;
        c.pair = pair;
        c.rep = rep;
        c.point = point;
        c.generators = generators;
        c.seed = seed;
        c.samples = samples;
        c.radii = radii;
        c.angular_tol = angular_tol;
        const auto r = run(c);
        return py::make_tuple(to_python(r.report), r.exit_code, r.side_files);
      },
      py::arg("command"), py::arg("algebra") = "", py::arg("pair") = "", py::arg("rep") = "", py::arg("point") = "",
      py::arg("generators") = "", py::arg("seed") = 1, py::arg("samples") = py::none(),
      py::arg("radii") = std::vector<double>{}, py::arg("angular_tol") = 0.05);
}
