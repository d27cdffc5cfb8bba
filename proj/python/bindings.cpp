#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bsz/arfilter.hpp"
#include "bsz/errors.hpp"
#include "bsz/fullmeasure.hpp"
#include "bsz/gdvrep.hpp"
#include "bsz/reconstruct.hpp"
#include "bsz/soscert.hpp"

namespace py = pybind11;
using namespace bsz;

namespace {

// Coefficient arrays: polynomials are (n+1, m+1) with row = z-power; moment
// tables are (2J+1, 2K+1) centred at c_{0,0}; trig polynomials likewise.
MomentTable table_of(const CMatrix& c) {
  if (c.rows() % 2 == 0 || c.cols() % 2 == 0) throw Error(ErrorCode::InvalidInput, "moment array needs odd dimensions");
  return MomentTable(static_cast<int>(c.rows() / 2), static_cast<int>(c.cols() / 2), c);
}

TrigPoly trig_of(const CMatrix& c) {
  if (c.rows() % 2 == 0 || c.cols() % 2 == 0) throw Error(ErrorCode::InvalidInput, "trig array needs odd dimensions");
  TrigPoly t(static_cast<int>(c.rows() / 2), static_cast<int>(c.cols() / 2));
  t.coeffs = c;
  return t;
}

py::dict report_dict(const StratificationReport& r) {
  py::dict d;
  d["holds"] = r.holds;
  d["max_violation"] = r.max_violation;
  d["a_norm"] = r.a_norm;
  d["dimA"] = r.dimA;
  d["dimB"] = r.dimB;
  d["d_min"] = r.d_min;
  d["d_max"] = r.d_max;
  return d;
}

py::list coeff_list(const std::vector<BiPoly>& ps) {
  py::list out;
  for (const auto& p : ps) out.append(p.coeffs());
  return out;
}

}  // namespace

PYBIND11_MODULE(bszego, m) {
  m.doc() = "Bernstein-Szego measures on the bicircle";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> exc_type;
  exc_type.call_once_and_store_result([&]() { return py::object(py::exception<Error>(m, "Error", PyExc_RuntimeError)); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& type = exc_type.get_stored();
      py::object inst = type(e.what());
      inst.attr("code") = error_name(e.code());
      inst.attr("value") = e.value();
      PyErr_SetObject(type.ptr(), inst.ptr());
    }
  });

  m.def(
      "moments_from_density",
      [](const CMatrix& p, int jmax, int kmax) { return moments_from_density(BiPoly(p), jmax, kmax).data(); },
      py::arg("p"), py::arg("jmax"), py::arg("kmax"));
  m.def(
      "moments_from_trig", [](const CMatrix& t, int jmax, int kmax) { return moments_from_trig(trig_of(t), jmax, kmax).data(); },
      py::arg("t"), py::arg("jmax"), py::arg("kmax"));
  m.def(
      "check_matrix_condition",
      [](const CMatrix& c, int n, int mm, double tol) {
        MomentSpace s(table_of(c), n, mm);
        return report_dict(check_matrix_condition(build_operators(s, n, mm), tol));
      },
      py::arg("moments"), py::arg("n"), py::arg("m"), py::arg("tol") = kConditionTolerance);
  m.def(
      "enumerate_split_polys",
      [](const CMatrix& p) {
        BiPoly q(p);
        MomentSpace s(moments_from_density(q, q.n(), q.m()), q.n(), q.m());
        py::list out;
        for (auto& [poly, d] : enumerate_split_polys(s, canonical_phase(q))) out.append(py::make_tuple(poly.coeffs(), d));
        return out;
      },
      py::arg("p"));
  m.def(
      "reconstruct",
      [](const CMatrix& c, int n, int mm, double tol) { return reconstruct_p(table_of(c), n, mm, tol).coeffs(); },
      py::arg("moments"), py::arg("n"), py::arg("m"), py::arg("tol") = kConditionTolerance);
  m.def(
      "factor_trig", [](const CMatrix& t, int n, int mm) { return factor_trig(trig_of(t), n, mm).coeffs(); },
      py::arg("t"), py::arg("n"), py::arg("m"));
  m.def(
      "sos_certificate",
      [](const CMatrix& p, bool open_face, const std::string& variant) {
        CertVariant v = variant == "G" ? CertVariant::G : CertVariant::L;
        SosCertificate c = open_face ? certificate_open_face(BiPoly(p), kDefaultSchedule, 1e-8, v)
                                     : certificate_closed_face(BiPoly(p), v);
        py::dict d;
        d["A"] = coeff_list(c.A);
        d["B"] = coeff_list(c.B);
        d["C"] = coeff_list(c.C);
        d["n1"] = c.n1;
        d["n2"] = c.n2;
        d["residual"] = c.residual;
        d["t"] = c.t;
        d["inside_roots"] = inside_root_count(c);
        return d;
      },
      py::arg("p"), py::arg("open_face") = false, py::arg("variant") = "L");
  m.def(
      "build_detrep",
      [](const CMatrix& p) {
        DetRep r = build_detrep(BiPoly(p));
        py::dict d;
        d["U"] = r.U;
        d["m"] = r.m;
        d["n1"] = r.n1;
        d["n2"] = r.n2;
        d["scale"] = r.scale;
        d["residual"] = r.residual;
        d["unitarity"] = r.unitarity;
        return d;
      },
      py::arg("p"));
  m.def(
      "detrep_eval", &detrep_eval, py::arg("U"), py::arg("m"), py::arg("n1"), py::arg("n2"), py::arg("z"), py::arg("w"));
  m.def(
      "check_full_measure",
      [](const CMatrix& c, int n, int mm, int nmax, int mmax, double tol) {
        FullMeasureReport r = check_full_measure(table_of(c), n, mm, nmax, mmax, tol);
        double e2 = 0.0, h = 0.0;
        for (const auto& cell : r.e2_conditions) e2 = std::max(e2, cell.max_entry);
        for (const auto& cell : r.h_conditions) h = std::max(h, cell.max_entry);
        py::dict d;
        d["verdict"] = verdict_name(r.verdict);
        d["positivity_ok"] = r.positivity_ok;
        d["e2_max"] = e2;
        d["h_max"] = h;
        d["depth"] = py::make_tuple(r.depth_n, r.depth_m);
        return d;
      },
      py::arg("moments"), py::arg("n"), py::arg("m"), py::arg("nmax") = -1, py::arg("mmax") = -1,
      py::arg("tol") = 1e-7);
  m.def(
      "solve_ar",
      [](const CMatrix& c, int n, int mm, double tol) {
        ArSolution s = solve_ar({n, mm, table_of(c)}, tol);
        py::dict d;
        d["classification"] = ar_class_name(s.classification);
        d["a"] = s.a.coeffs();
        d["a_norm"] = s.a_norm;
        return d;
      },
      py::arg("autocorr"), py::arg("n"), py::arg("m"), py::arg("tol") = kConditionTolerance);
}
