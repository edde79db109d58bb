#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ewt/classifier.hpp"
#include "ewt/maps.hpp"
#include "ewt/states.hpp"
#include "ewt/witnesses.hpp"

namespace py = pybind11;
using namespace ewt;

namespace {

BipartiteOperator op_from_numpy(const Matrix& m, int dA, int dB) {
  return BipartiteOperator{m, dA, dB};
}

OptimOptions make_opts(std::uint64_t seed, int restarts, double cert_tol) {
  OptimOptions o;
  o.seed = seed;
  o.restarts = restarts;
  o.cert_tol = cert_tol;
  return o;
}

}  // namespace

PYBIND11_MODULE(_ewt, m) {
  m.doc() = "entanglement witness toolkit core";

  py::class_<BipartiteOperator>(m, "BipartiteOperator")
      .def(py::init(&op_from_numpy), py::arg("mat"), py::arg("d_a"), py::arg("d_b"))
      .def_readonly("d_a", &BipartiteOperator::dA)
      .def_readonly("d_b", &BipartiteOperator::dB)
      .def_property_readonly("mat",
                             [](const BipartiteOperator& o) { return o.mat; });

  py::class_<PureState>(m, "PureState")
      .def(py::init([](const Vector& v, int dA, int dB) { return PureState{v, dA, dB}; }),
           py::arg("vec"), py::arg("d_a"), py::arg("d_b"))
      .def_readonly("d_a", &PureState::dA)
      .def_readonly("d_b", &PureState::dB)
      .def_property_readonly("vec", [](const PureState& s) { return s.vec; });

  py::class_<SchmidtData>(m, "SchmidtData")
      .def_readonly("coefficients", &SchmidtData::coefficients)
      .def_readonly("rank", &SchmidtData::rank)
      .def_readonly("left", &SchmidtData::left)
      .def_readonly("right", &SchmidtData::right);

  // tensor core
  m.def("tensor_product",
        [](const Matrix& a, const Matrix& b) { return tensor_product(a, b); });
  m.def(
      "partial_transpose",
      [](const BipartiteOperator& x, const std::string& side) {
        return partial_transpose(x, side == "A" ? Side::A : Side::B);
      },
      py::arg("x"), py::arg("side") = "B");
  m.def(
      "partial_trace",
      [](const BipartiteOperator& x, const std::string& traced) {
        return partial_trace(x, traced == "A" ? Side::A : Side::B);
      },
      py::arg("x"), py::arg("traced") = "B");
  m.def("realign", &realign);
  m.def("schmidt_decompose", &schmidt_decompose);
  m.def("k_norm_squared", &k_norm_squared);

  // states
  m.def("max_entangled", &max_entangled);
  m.def("max_entangled_projector", &max_entangled_projector);
  m.def("flip", &flip);
  m.def("isotropic", &isotropic);
  m.def("werner", &werner);
  m.def("weyl_operator",
        [](int d, int mm, int n) { return weyl_operator(d, mm, n); });
  m.def("bell_projector", &bell_projector);
  m.def("subspace_projector", &subspace_projector);
  m.def("tiles_upb", &tiles_upb);
  m.def("upb_state", &upb_state);
  m.def("ghz_state", []() { return three_qubit_states().ghz; });
  m.def("w_state", []() { return three_qubit_states().w; });

  // witnesses
  m.def("reduction_witness", &reduction_witness);
  m.def("w_ab_witness", &w_ab_witness);
  m.def("w_abc_witness", &w_abc_witness);
  m.def("w_dk_witness", &w_dk_witness);
  m.def("chsh_witness", &chsh_witness);
  m.def("mub_witness", &mub_witness);
  m.def("standard_mub", &standard_mub);
  m.def("breuer_hall_witness", [](const Matrix& u) { return breuer_hall(u).witness; });
  m.def("robertson_witness", [](int n) { return robertson_block(n).witness; });
  m.def("canonical_antisymmetric_unitary", &canonical_antisymmetric_unitary);

  py::class_<WAbcClassification>(m, "WAbcClassification")
      .def_readonly("is_positive", &WAbcClassification::is_positive)
      .def_readonly("is_ew", &WAbcClassification::is_ew)
      .def_readonly("is_indecomposable", &WAbcClassification::is_indecomposable)
      .def_readonly("is_3_schmidt", &WAbcClassification::is_3_schmidt);
  m.def("classify_w_abc", &classify_w_abc);

  // classifier
  py::class_<OptimResult>(m, "OptimResult")
      .def_readonly("min_value", &OptimResult::min_value)
      .def_readonly("restarts_used", &OptimResult::restarts_used)
      .def_readonly("iterations", &OptimResult::iterations)
      .def_readonly("seed", &OptimResult::seed)
      .def_property_readonly("certified_negative",
                             [](const OptimResult& r) {
                               return r.status == OptimStatus::certified_negative;
                             })
      .def_property_readonly("vector",
                             [](const OptimResult& r) { return r.witness_vector.vec; });

  m.def(
      "min_schmidt_k_expectation",
      [](const BipartiteOperator& w, int k, std::uint64_t seed, int restarts,
         double cert_tol) {
        return min_schmidt_k_expectation(w, k, make_opts(seed, restarts, cert_tol));
      },
      py::arg("w"), py::arg("k"), py::arg("seed") = 0, py::arg("restarts") = 0,
      py::arg("cert_tol") = 1e-7);

  m.def("ppt_check", [](const BipartiteOperator& x) {
    auto r = ppt_check(x);
    return py::make_tuple(r.is_ppt, r.min_pt_eigenvalue);
  });
  m.def("realignment_check", [](const BipartiteOperator& x) {
    auto r = realignment_check(x);
    return py::make_tuple(r.sum, r.flags_entangled);
  });
  m.def("detect", &detect);
  m.def(
      "spanning_dimension",
      [](const BipartiteOperator& w, std::uint64_t seed) {
        OptimOptions o;
        o.seed = seed;
        return spanning_dimension(w, o);
      },
      py::arg("w"), py::arg("seed") = 0);
  m.def("spa", [](const BipartiteOperator& w) {
    auto r = spa(w);
    py::dict d;
    d["p_star"] = r.p_star;
    d["was_positive"] = r.was_positive;
    d["spa_state"] = r.spa_state;
    d["ppt"] = r.ppt.is_ppt;
    d["ccnr_sum"] = r.ccnr.sum;
    return d;
  });

  // maps
  m.def("phi_p_k_positivity", [](int d, double p) { return phi_p(d, p).k_positivity; });
  m.def("phi_p_choi", [](int d, double p) { return phi_p(d, p).map.choi; });
  m.def("transposition_choi", [](int d) { return transposition_map(d).choi; });
  m.def("reduction_choi", [](int d) { return reduction_map(d).choi; });

  m.attr("__version__") = "0.1.0";
}
