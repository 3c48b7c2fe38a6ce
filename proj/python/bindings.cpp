#include "stochdil/cli.hpp"
#include "stochdil/coarse_grain.hpp"
#include "stochdil/core.hpp"
#include "stochdil/entropy.hpp"
#include "stochdil/env_dilation.hpp"
#include "stochdil/error.hpp"
#include "stochdil/sinkhorn.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace stochdil;

namespace {

// Entries are exact when given as str or fractions.Fraction, float otherwise.
Scalar to_scalar(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return Scalar::parse_exact(h.cast<std::string>());
  if (py::isinstance(h, py::module_::import("fractions").attr("Fraction")) || py::isinstance<py::int_>(h)) {
    return Scalar::parse_exact(py::str(h).cast<std::string>());
  }
  return Scalar(h.cast<double>());
}

Vector to_vector(const py::sequence& seq) {
  Vector v;
  for (const auto& item : seq) v.push_back(to_scalar(item));
  bool any_float = false;
  for (const auto& s : v) any_float = any_float || !s.is_exact();
  if (any_float)
    for (auto& s : v) s = s.to_mode(Mode::Float);
  return v;
}

Matrix to_matrix(const py::sequence& rows) {
  std::vector<Vector> out;
  for (const auto& row : rows) out.push_back(to_vector(row.cast<py::sequence>()));
  bool any_float = false;
  for (const auto& r : out)
    for (const auto& s : r) any_float = any_float || !s.is_exact();
  if (any_float)
    for (auto& r : out)
      for (auto& s : r) s = s.to_mode(Mode::Float);
  return Matrix::from_rows(out);
}

ProbVec to_probvec(const py::sequence& seq) { return ProbVec(to_vector(seq)); }

py::object from_scalar(const Scalar& s) {
  if (s.is_exact()) return py::module_::import("fractions").attr("Fraction")(s.to_string());
  return py::float_(s.to_double());
}

py::list from_vector(const Vector& v) {
  py::list out;
  for (const auto& s : v) out.append(from_scalar(s));
  return out;
}

py::list from_matrix(const Matrix& m) {
  py::list out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    py::list row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.append(from_scalar(m(r, c)));
    out.append(row);
  }
  return out;
}

py::list from_probvec(const ProbVec& p) { return from_vector(p.entries()); }

py::object json_to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stochastic dilations, coarse graining and entropy bookkeeping";

  static PyObject* error_type = py::exception<Error>(m, "StochdilError").release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def("validate", [](const py::sequence& t, double tol) {
    const auto r = validate(to_matrix(t), tol);
    py::dict d;
    d["left"] = r.left;
    d["right"] = r.right;
    d["bi"] = r.bi;
    d["irreducible"] = r.irreducible;
    d["max_column_defect"] = from_scalar(r.max_column_defect);
    d["max_row_defect"] = from_scalar(r.max_row_defect);
    return d;
  }, py::arg("t"), py::arg("tol") = tolerance::kValidation);

  m.def("fixed_point", [](const py::sequence& t) {
    const auto f = fixed_point(to_matrix(t));
    py::dict d;
    d["representative"] = from_probvec(f.representative);
    d["face_dimension"] = f.face_dimension;
    d["is_unique"] = f.is_unique;
    py::list vertices;
    for (const auto& v : f.vertices) vertices.append(from_probvec(v));
    d["vertices"] = vertices;
    return d;
  }, py::arg("t"));

  m.def("apply", [](const py::sequence& t, const py::sequence& p) {
    return from_probvec(apply(to_matrix(t), to_probvec(p)));
  }, py::arg("t"), py::arg("p"));

  m.def("iterate", [](const py::sequence& t, const py::sequence& p, int steps) {
    py::list out;
    for (const auto& s : iterate(to_matrix(t), to_probvec(p), steps).states) out.append(from_probvec(s));
    return out;
  }, py::arg("t"), py::arg("p"), py::arg("steps"));

  m.def("coarse_grain", [](const py::sequence& s, const std::vector<std::vector<std::size_t>>& classes,
                           std::optional<py::sequence> y) {
    const Matrix sm = to_matrix(s);
    const Partition part(sm.rows(), classes);
    const RightInverse inv = y ? custom_right_inverse(part, to_matrix(*y)) : uniform_right_inverse(part, sm.mode());
    return from_matrix(coarse_grain(sm, part, inv));
  }, py::arg("s"), py::arg("classes"), py::arg("y") = py::none());

  m.def("uniform_dilation", [](const py::sequence& t, const py::sequence& p) {
    const auto u = uniform_dilation(to_matrix(t), to_probvec(p));
    py::dict d;
    d["S"] = from_matrix(u.s);
    d["Y"] = from_matrix(u.y.y);
    d["classes"] = u.partition.classes();
    d["verified"] = u.verified();
    return d;
  }, py::arg("t"), py::arg("p"));

  m.def("noisy_dilation", [](const py::sequence& t) { return from_matrix(noisy_dilation(to_matrix(t)).r); },
        py::arg("t"));

  m.def("extract", [](const py::sequence& r, std::size_t zero_index) {
    return from_matrix(extract_dilated(to_matrix(r), zero_index));
  }, py::arg("r"), py::arg("zero_index") = 0);

  m.def("unistochastic", [](const py::sequence& t) {
    const auto u = unistochastic_dilation(to_matrix(t));
    py::dict d;
    d["U"] = from_matrix(u.u);
    d["R"] = from_matrix(u.r);
    return d;
  }, py::arg("t"));

  m.def("entropy", [](const py::sequence& p) { return shannon_entropy(to_probvec(p)); }, py::arg("p"));

  m.def("in_decreasing_region", [](const py::sequence& t, const py::sequence& p) {
    return in_decreasing_region(to_matrix(t), to_probvec(p));
  }, py::arg("t"), py::arg("p"));

  m.def("ledger", [](const py::sequence& t, const py::sequence& p) {
    const auto l = entropy_ledger(to_matrix(t), to_probvec(p));
    py::dict d;
    d["h_input"] = l.h_input;
    d["h_lifted"] = l.h_lifted;
    d["h_evolved"] = l.h_evolved;
    d["h_marginal_1"] = l.h_marginal_1;
    d["h_marginal_2"] = l.h_marginal_2;
    d["h_output"] = l.h_output;
    d["marginal_total"] = l.marginal_total();
    return d;
  }, py::arg("t"), py::arg("p"));

  m.def("birkhoff", [](const py::sequence& s) {
    py::list out;
    for (const auto& term : birkhoff_decompose(to_matrix(s)).terms) out.append(py::make_tuple(from_scalar(term.weight), term.perm));
    return out;
  }, py::arg("s"));

  m.def("sinkhorn", [](const py::sequence& t, double tol, int max_iter) {
    const auto r = sinkhorn_knopp(to_matrix(t), tol, max_iter);
    py::dict d;
    d["S"] = from_matrix(r.s);
    d["d1"] = r.d1;
    d["d2"] = r.d2;
    d["iterations"] = r.iterations;
    d["final_defect"] = r.final_defect;
    return d;
  }, py::arg("t"), py::arg("tol") = 1e-10, py::arg("max_iter") = 10000);

  m.def("sinkhorn_2x2", [](double a, double b) {
    const auto c = sinkhorn_2x2(a, b);
    py::dict d;
    d["d1"] = std::vector<double>(c.d1.begin(), c.d1.end());
    d["d2"] = std::vector<double>(c.d2.begin(), c.d2.end());
    d["p"] = c.p;
    return d;
  }, py::arg("a"), py::arg("b"));

  m.def("demo", [] { return json_to_python(cli::demo_maxwell().to_json()); });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
