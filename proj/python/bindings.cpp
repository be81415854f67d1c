#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hopfsub/algebra.hpp"
#include "hopfsub/classify.hpp"
#include "hopfsub/geometry.hpp"
#include "hopfsub/verify.hpp"

namespace py = pybind11;
using namespace hopfsub;

namespace {

AlgebraName parse_algebra(const std::string& name) { return algebra_tag(name).name; }

std::vector<double> py_mul(const std::string& alg, std::vector<double> x, std::vector<double> y) {
    const AlgebraName name = parse_algebra(alg);
    return mul(make_element(name, std::move(x)), make_element(name, std::move(y))).coeffs;
}

std::vector<double> py_conj(const std::string& alg, std::vector<double> x) {
    return conj(make_element(parse_algebra(alg), std::move(x))).coeffs;
}

double py_norm(const std::string& alg, std::vector<double> x) {
    return norm_form(make_element(parse_algebra(alg), std::move(x)));
}

double py_inner(const std::string& alg, std::vector<double> x, std::vector<double> y) {
    const AlgebraName name = parse_algebra(alg);
    return inner(make_element(name, std::move(x)), make_element(name, std::move(y)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Composition algebras, pseudo-hyperbolic spaces and the Hopf "
              "pseudo-Riemannian submersions between them, with numerical "
              "verification of their structure equations";

    // --- algebra ------------------------------------------------------------
    m.def("algebras", [] {
        return std::vector<std::string>{"C", "A", "H", "B", "O", "Oprime"};
    });
    m.def("mul", &py_mul, py::arg("algebra"), py::arg("x"), py::arg("y"),
          "product of two coefficient vectors");
    m.def("conj", &py_conj, py::arg("algebra"), py::arg("x"));
    m.def("norm_form", &py_norm, py::arg("algebra"), py::arg("x"));
    m.def("inner", &py_inner, py::arg("algebra"), py::arg("x"), py::arg("y"));
    m.def("multiplication_table_json",
          [](const std::string& alg) {
              return multiplication_table(parse_algebra(alg)).to_json();
          },
          py::arg("algebra"));

    // --- spaces ---------------------------------------------------------------
    py::class_<PseudoHyperbolicSpace>(m, "Space")
        .def_readonly("dim", &PseudoHyperbolicSpace::dim)
        .def_readonly("index", &PseudoHyperbolicSpace::index)
        .def_readonly("curvature", &PseudoHyperbolicSpace::curvature)
        .def("inner", [](const PseudoHyperbolicSpace& s, const Vec& x,
                         const Vec& y) { return inner(s, x, y); })
        .def("geodesic", [](const PseudoHyperbolicSpace& s, const Vec& p, const Vec& v,
                            double t) { return geodesic(s, p, v, t); })
        .def("__repr__", &PseudoHyperbolicSpace::str);
    m.def("space", &make_space, py::arg("dim"), py::arg("index"), py::arg("curvature") = -1.0);

    // --- fibrations -------------------------------------------------------------
    py::class_<Fibration>(m, "Fibration")
        .def(py::init([](const std::string& id, int mm, int tt) {
                 return make_fibration(id, mm, tt);
             }),
             py::arg("id"), py::arg("m") = 2, py::arg("t") = 1)
        .def_readonly("id", &Fibration::id)
        .def_readonly("total", &Fibration::total)
        .def_property_readonly("base_dim", [](const Fibration& f) { return f.base.dim; })
        .def_property_readonly("base_index", [](const Fibration& f) { return f.base.index; })
        .def_property_readonly("fibre_dim", [](const Fibration& f) { return f.fibre.dim; })
        .def_property_readonly("fibre_index", [](const Fibration& f) { return f.fibre.index; })
        .def_property_readonly("fibre_model", [](const Fibration& f) { return f.fibre.model; })
        .def_property_readonly("explicit_target",
                               [](const Fibration& f) { return f.kind == TargetKind::Explicit; })
        .def("evaluate", &Fibration::evaluate, py::arg("p"))
        .def("differential", &Fibration::differential, py::arg("p"))
        .def("vertical_frame", &Fibration::vertical_frame, py::arg("p"))
        .def("horizontal_frame", &Fibration::horizontal_frame, py::arg("p"))
        .def("same_fibre", &Fibration::same_fibre, py::arg("p"), py::arg("q"),
             py::arg("tol") = 1e-9)
        .def("basic_transport", &Fibration::basic_transport, py::arg("p"), py::arg("x"),
             py::arg("q"))
        .def("random_point",
             [](const Fibration& f, std::uint64_t seed) {
                 std::mt19937_64 rng(seed);
                 return f.random_point(rng);
             },
             py::arg("seed") = 0)
        .def("to_json", &Fibration::to_json);
    m.def("fibration_ids", [] { return fibration_ids(); });
    m.def("compose", &compose, py::arg("outer"), py::arg("inner"));
    m.def("pi9_polynomial", &pi9_polynomial, py::arg("p"));

    // --- geometry -----------------------------------------------------------------
    m.def("a_tensor",
          [](const Fibration& f, const Vec& X, const Vec& E, const Vec& p) {
              return a_tensor(f, X, E, p);
          },
          py::arg("fibration"), py::arg("x"), py::arg("e"), py::arg("p"));
    m.def("jacobi_eigenvalues",
          [](const Fibration& f, const Vec& p, const Vec& X) {
              return jacobi_operator(f, p, X).eigenvalues;
          },
          py::arg("fibration"), py::arg("p"), py::arg("x"));

    // --- classification --------------------------------------------------------------
    m.def("admissible",
          [](int n, int s, int r, int rp) {
              std::vector<std::tuple<int, int, int>> out;
              for (const auto& sol : classify::admissible(n, s, r, rp).solutions)
                  out.emplace_back(sol.k, sol.q1, sol.q2);
              return out;
          },
          py::arg("n"), py::arg("s"), py::arg("r"), py::arg("rp"));
    m.def("catalog_json", &classify::catalog_to_json);
    m.def("catalog_markdown", &classify::catalog_to_markdown);
    m.def("lookup", [](int a, int l) {
        std::vector<std::string> ids;
        for (const auto& e : classify::lookup(a, l)) ids.push_back(e.id);
        return ids;
    });
    m.def("sweep", [](int n_max) {
        std::vector<std::tuple<int, int, int, int, bool>> rows;
        for (const auto& row : classify::sweep(n_max))
            rows.emplace_back(row.n, row.s, row.r, row.rp, row.exists);
        return rows;
    });

    // --- verification ------------------------------------------------------------------
    m.def("verify",
          [](const std::vector<std::string>& fibrations, int samples, std::uint64_t seed,
             bool expensive, int mm, int tt, const std::map<std::string, double>& tolerances) {
              RunConfig config;
              config.fibrations = fibrations;
              config.samples = samples;
              config.seed = seed;
              config.expensive = expensive;
              config.m = mm;
              config.t = tt;
              config.tolerance_overrides = tolerances;
              return summary_to_json(run_verify(config), config);
          },
          py::arg("fibrations") = std::vector<std::string>{}, py::arg("samples") = 100,
          py::arg("seed") = 12345, py::arg("expensive") = false, py::arg("m") = 2,
          py::arg("t") = 1, py::arg("tolerances") = std::map<std::string, double>{});
    m.def("check_pi9",
          [](int samples, std::uint64_t seed) {
              Tolerances tol;
              return pi9_conformance(samples, seed, tol).max_residual;
          },
          py::arg("samples") = 1000, py::arg("seed") = 1);
}
