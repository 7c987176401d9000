#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qs/chain.hpp"
#include "qs/error.hpp"
#include "qs/finite_oracle.hpp"
#include "qs/intmat.hpp"
#include "qs/job.hpp"
#include "qs/presentation.hpp"
#include "qs/simplicity.hpp"

namespace py = pybind11;
using namespace qs;

namespace {

// Python ints cross the boundary as decimal strings so that no size limit applies.
Integer to_integer(const py::handle& h) {
  if (!py::isinstance<py::int_>(h)) throw Error(ErrorCode::InvalidArgument, "expected an int");
  return Integer(py::str(h).cast<std::string>());
}

py::int_ to_py(const Integer& z) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(z.get_str().c_str(), nullptr, 10))); }

py::list to_py(const IntVector& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

py::list to_py(const IntMatrix& m) {
  py::list out;
  for (std::size_t r = 0; r < m.dim(); ++r) out.append(to_py(m.row(r)));
  return out;
}

IntVector to_vector(const py::handle& h) {
  IntVector v;
  for (const auto& x : py::iter(h)) v.push_back(to_integer(x));
  return v;
}

IntMatrix to_matrix(const py::handle& h) {
  std::vector<IntVector> rows;
  for (const auto& r : py::iter(h)) rows.push_back(to_vector(r));
  if (rows.empty()) throw Error(ErrorCode::DimensionMismatch, "matrix must be non-empty");
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  return IntMatrix::from_rows(rows);
}

py::object fraction(const mpq_class& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_py(Integer(q.get_num())), to_py(Integer(q.get_den())));
}

mpq_class to_rational(const py::handle& h) {
  if (py::isinstance<py::int_>(h)) return mpq_class(to_integer(h));
  mpq_class q(to_integer(h.attr("numerator")), to_integer(h.attr("denominator")));
  q.canonicalize();
  return q;
}

py::dict lattice_dict(const RationalLattice& l) {
  py::dict d;
  d["denominator"] = to_py(l.denom());
  d["basis"] = to_py(l.basis());
  d["index"] = to_py(l.index());
  return d;
}

py::dict trace_dict(const ChainTrace& t) {
  py::list pos, neg, joins, ann, idx;
  for (const auto& l : t.pos) pos.append(lattice_dict(l));
  for (const auto& l : t.neg) neg.append(lattice_dict(l));
  for (const auto& l : t.joins) joins.append(lattice_dict(l));
  for (const auto& a : t.annihilators) ann.append(to_py(a.basis()));
  for (const auto& i : t.indices) idx.append(to_py(i));
  py::dict d;
  d["depth"] = t.depth;
  d["pos"] = pos;
  d["neg"] = neg;
  d["joins"] = joins;
  d["annihilators"] = ann;
  d["indices"] = idx;
  return d;
}

DensityOptions density_options(std::size_t max_depth, const py::handle& norm_bound, bool algebraic) {
  DensityOptions o;
  o.max_depth = max_depth;
  o.norm_bound = to_integer(norm_bound);
  o.algebraic = algebraic;
  return o;
}

py::dict density_dict(const DensityVerdict& v) {
  py::dict d;
  d["status"] = std::string(to_string(v.status));
  d["evidence"] = std::string(to_string(v.evidence));
  d["witness"] = v.witness ? py::object(to_py(*v.witness)) : py::object(py::none());
  d["depth_used"] = v.depth_used;
  d["annihilator"] = to_py(v.annihilator_at_depth.basis());
  d["transfer_charpoly"] = to_py(v.transfer_charpoly);
  d["unit_factor"] = v.unit_factor ? py::object(to_py(*v.unit_factor)) : py::object(py::none());
  d["reason"] = v.reason;
  return d;
}

py::object tribool(Tribool t) {
  if (t == Tribool::Unknown) return py::none();
  return py::bool_(t == Tribool::True);
}

py::dict verdict_dict(const SimplicityVerdict& v) {
  py::dict h;
  h["det_f"] = to_py(v.hypotheses.det_f);
  h["det_g"] = to_py(v.hypotheses.det_g);
  h["ker_f_size"] = to_py(v.hypotheses.ker_f_size);
  h["ker_g_size"] = to_py(v.hypotheses.ker_g_size);
  h["condition_L"] = tribool(v.hypotheses.condition_L);
  h["both_automorphisms"] = v.hypotheses.both_automorphisms;
  py::list rules;
  for (const auto& r : v.rules) rules.append(py::make_tuple(r.id, std::string(to_string(r.concluded)), r.reason));
  py::dict d;
  d["status"] = std::string(to_string(v.status));
  d["rules"] = rules;
  d["hypotheses"] = h;
  d["kirchberg"] = v.kirchberg_flag;
  d["witness"] = v.density && v.density->witness ? py::object(to_py(*v.density->witness)) : py::object(py::none());
  d["density"] = v.density ? py::object(density_dict(*v.density)) : py::object(py::none());
  if (v.normal_form) d["normal_form"] = py::make_tuple(to_py(v.normal_form->n), to_py(v.normal_form->t));
  else d["normal_form"] = py::none();
  d["trace"] = v.trace ? py::object(trace_dict(*v.trace)) : py::object(py::none());
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact simplicity decisions for relation algebras of integer torus endomorphisms";

  static py::exception<Error> qs_error(m, "QsError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(qs_error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("det", [](const py::object& a) { return to_py(det(to_matrix(a))); });
  m.def("adjugate", [](const py::object& a) { return to_py(adjugate(to_matrix(a))); });
  m.def("is_unimodular", [](const py::object& a) { return is_unimodular(to_matrix(a)); });
  m.def("hnf", [](const py::object& a) {
    const HermiteForm f = hnf(to_matrix(a));
    return py::make_tuple(to_py(f.h), to_py(f.u));
  }, "Row Hermite form (h, u) with h = u·a.");
  m.def("snf", [](const py::object& a) {
    const SmithDecomposition s = snf(to_matrix(a));
    return py::make_tuple(to_py(s.u), to_py(s.d), to_py(s.v));
  }, "Smith decomposition (u, d, v) with a = u·d·v.");
  m.def("mod_inverse_reduced", [](const py::object& b, const py::object& a) {
    return to_py(mod_inverse_reduced(to_integer(b), to_integer(a)));
  });

  m.def("is_dilation", [](const py::object& f) { return is_dilation(to_matrix(f)); });
  m.def("triangular_criterion", [](const py::object& n, const py::object& g) {
    return triangular_criterion(to_integer(n), to_matrix(g));
  });
  m.def("normalize", [](const py::object& f, const py::object& g) {
    const NormalForm nf = normalize(to_matrix(f), to_matrix(g));
    return py::make_tuple(to_py(nf.n), to_py(nf.t), nf.transcript);
  });

  m.def("compute_chain", [](const py::object& f, const py::object& g, std::size_t depth) {
    return trace_dict(compute_chain(to_matrix(f), to_matrix(g), depth));
  }, py::arg("f"), py::arg("g"), py::arg("depth"));

  m.def("decide_density",
        [](const py::object& f, const py::object& g, std::size_t max_depth, const py::object& norm_bound,
           bool algebraic) {
          const IntMatrix ff = to_matrix(f), gg = to_matrix(g);
          const DensityOptions o = density_options(max_depth, norm_bound, algebraic);
          py::gil_scoped_release release;
          const DensityVerdict v = decide_density(ff, gg, o);
          py::gil_scoped_acquire acquire;
          return density_dict(v);
        },
        py::arg("f"), py::arg("g"), py::arg("max_depth") = 24, py::arg("norm_bound") = 10000,
        py::arg("algebraic") = true);

  m.def("decide",
        [](const py::object& f, const py::object& g, std::size_t max_depth, const py::object& norm_bound,
           bool algebraic) {
          DecideOptions o;
          o.density = density_options(max_depth, norm_bound, algebraic);
          const IntMatrix ff = to_matrix(f), gg = to_matrix(g);
          SimplicityVerdict v;
          {
            py::gil_scoped_release release;
            v = decide(ff, gg, o);
          }
          return verdict_dict(v);
        },
        py::arg("f"), py::arg("g"), py::arg("max_depth") = 24, py::arg("norm_bound") = 10000,
        py::arg("algebraic") = true);

  m.def("present",
        [](const py::object& f, const py::object& g, bool toeplitz, const std::string& format) {
          return render(present(to_matrix(f), to_matrix(g), toeplitz), format);
        },
        py::arg("f"), py::arg("g"), py::arg("toeplitz") = false, py::arg("format") = "json",
        "Rendered presentation in json, latex or text.");

  m.def("condition_L_finite", [](long mod, long a, long b) { return condition_L_finite(FiniteQuiver(mod, a, b)); });
  m.def("minimal_finite", [](long mod, long a, long b) { return minimal_finite(FiniteQuiver(mod, a, b)); });
  m.def("gamma0_finite", [](long mod, long a, long b) {
    const Gamma0Result r = gamma0_finite(FiniteQuiver(mod, a, b));
    py::dict d;
    d["elements"] = r.elements;
    d["order"] = r.order;
    d["out_of_theorem_scope"] = r.out_of_theorem_scope;
    return d;
  });
  m.def("verify_minimality_theorem",
        [](long m_max, long subset_m_max, unsigned jobs) {
          std::string json;
          {
            py::gil_scoped_release release;
            json = verify_minimality_theorem(m_max, subset_m_max, jobs).to_json();
          }
          return py::module_::import("json").attr("loads")(json);
        },
        py::arg("m_max"), py::arg("subset_m_max") = 12, py::arg("jobs") = 1);
  m.def("density_1d",
        [](long f, long g, long depth, const py::object& epsilon) {
          const Density1dResult r = density_1d(f, g, depth, to_rational(epsilon));
          py::dict d;
          d["kind"] = std::string(to_string(r.kind));
          d["gap"] = fraction(r.gap);
          d["order"] = to_py(Integer(r.order));
          d["depth_reached"] = r.depth_reached;
          return d;
        },
        py::arg("f"), py::arg("g"), py::arg("depth"), py::arg("epsilon"));

  m.def("run_job", [](const std::string& line) {
    JobResult r;
    {
      py::gil_scoped_release release;
      r = run_line(line, 24, OutputFormat::Json);
    }
    return py::make_tuple(r.exit_code, r.output);
  }, "Runs one JSON job line; returns (exit_code, output).");
}
