#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "bevholt/analysis.hpp"
#include "bevholt/figures.hpp"
#include "bevholt/solver.hpp"
#include "bevholt/symmetry.hpp"

namespace py = pybind11;

namespace PYBIND11_NAMESPACE {
namespace detail {

// bevholt::Rational <-> fractions.Fraction (ints and floats load exactly)
template <>
struct type_caster<bevholt::Rational> {
 public:
  PYBIND11_TYPE_CASTER(bevholt::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    PyObject* ptr = src.ptr();
    try {
      if (PyLong_Check(ptr)) {
        value = bevholt::Rational(bevholt::BigInt(std::string(py::str(src))), bevholt::BigInt(1));
        return true;
      }
      if (PyFloat_Check(ptr)) {
        value = bevholt::Rational::from_double(PyFloat_AsDouble(ptr));
        return true;
      }
      if (py::isinstance<py::str>(src)) {
        value = bevholt::Rational::parse(std::string(py::str(src)));
        return true;
      }
      if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator")) {
        value = bevholt::Rational(bevholt::BigInt(std::string(py::str(src.attr("numerator")))),
                                  bevholt::BigInt(std::string(py::str(src.attr("denominator")))));
        return true;
      }
    } catch (const bevholt::Error&) {
      return false;
    }
    return false;
  }

  static handle cast(const bevholt::Rational& src, return_value_policy, handle) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::str(src.str())).release();
  }
};

}  // namespace detail
}  // namespace PYBIND11_NAMESPACE

namespace {

using namespace bevholt;

template <class T>
void bind_backend(py::module_& m) {
  using Seq = CoefficientSequence<T>;
  using Mod = Model<T>;
  using Traj = Trajectory<T>;
  using Family = InfinitesimalFamily<T>;

  py::class_<Seq>(m, "CoefficientSequence")
      .def_static("constant", [](T v) { return Seq::constant(std::move(v)); }, py::arg("value"))
      .def_static("periodic", [](std::vector<T> v) { return Seq::periodic(std::move(v)); },
                  py::arg("values"))
      .def_static(
          "formula",
          [](const std::string& source, std::optional<Index> period) {
            return Seq::sampled(Formula::parse(source), period);
          },
          py::arg("source"), py::arg("period") = std::nullopt)
      .def("sample", &Seq::sample, py::arg("n"))
      .def_property_readonly("period", &Seq::period)
      .def_property_readonly("constant_", &Seq::is_constant)
      .def("__repr__", [](const Seq& s) { return "CoefficientSequence(" + s.describe() + ")"; });

  py::class_<Mod>(m, "Model")
      .def_readonly("order", &Mod::order)
      .def_property_readonly("ecological", [](const Mod& mod) { return mod.mode == Mode::ecological; })
      .def_readonly("A", &Mod::A)
      .def_readonly("B", &Mod::B)
      .def("coefficient_a", &Mod::coeff_a, py::arg("n"))
      .def("coefficient_b", &Mod::coeff_b, py::arg("n"))
      .def("k_periodic_coefficients", &Mod::k_periodic_coefficients)
      .def("constant_coefficients", &Mod::constant_coefficients)
      .def("__repr__", [](const Mod& mod) {
        return "Model(k=" + std::to_string(mod.order) + ", A=" + mod.A.describe() +
               ", B=" + mod.B.describe() + ")";
      });

  m.def(
      "model", [](Index k, Seq a, Seq b) { return make_model<T>(k, std::move(a), std::move(b)); },
      py::arg("k"), py::arg("A"), py::arg("B"));
  m.def(
      "model",
      [](Index k, std::vector<T> a, std::vector<T> b) {
        return make_model<T>(k, Seq::periodic(std::move(a)), Seq::periodic(std::move(b)));
      },
      py::arg("k"), py::arg("A"), py::arg("B"));
  m.def(
      "model",
      [](Index k, T a, T b) {
        return make_model<T>(k, Seq::constant(std::move(a)), Seq::constant(std::move(b)));
      },
      py::arg("k"), py::arg("A"), py::arg("B"));
  m.def(
      "ecological_model",
      [](Index k, Seq mu, Seq K) { return make_ecological_model<T>(k, std::move(mu), std::move(K)); },
      py::arg("k"), py::arg("mu"), py::arg("K"));
  m.def(
      "ecological_model",
      [](Index k, T mu, T K) {
        return make_ecological_model<T>(k, Seq::constant(std::move(mu)), Seq::constant(std::move(K)));
      },
      py::arg("k"), py::arg("mu"), py::arg("K"));
  m.def(
      "coefficients_from_ecology",
      [](const Seq& mu, const Seq& K) { return coefficients_from_ecology<T>(mu, K); },
      py::arg("mu"), py::arg("K"));
  m.def("step", &step<T>, py::arg("model"), py::arg("z"), py::arg("n"));

  py::class_<Traj>(m, "Trajectory")
      .def_readonly("order", &Traj::order)
      .def_readonly("values", &Traj::values)
      .def_property_readonly("complete", &Traj::is_complete)
      .def_readonly("truncated_at", &Traj::truncated_at)
      .def_readonly("truncation_reason", &Traj::truncation_reason)
      .def("strand", &Traj::strand, py::arg("j"))
      .def("__len__", &Traj::size)
      .def("__getitem__",
           [](const Traj& t, Index n) {
             if (n >= t.size()) throw py::index_error();
             return t.values[n];
           });

  m.def(
      "iterate",
      [](const Mod& model, std::vector<T> ic, Index horizon) {
        return iterate<T>(model, ic, horizon);
      },
      py::arg("model"), py::arg("initial"), py::arg("horizon"));
  m.def(
      "closed_form_general",
      [](const Mod& model, std::vector<T> ic, Index n, Index j) {
        return closed_form_general<T>(model, ic, n, j);
      },
      py::arg("model"), py::arg("initial"), py::arg("n"), py::arg("j"));
  m.def(
      "closed_form_ecological",
      [](const Mod& model, std::vector<T> ic, Index n, Index j) {
        return closed_form_ecological<T>(model, ic, n, j);
      },
      py::arg("model"), py::arg("initial"), py::arg("n"), py::arg("j"));
  m.def(
      "closed_form_k_periodic",
      [](const Mod& model, std::vector<T> ic, Index n, Index j) {
        return closed_form_k_periodic<T>(model, ic, n, j);
      },
      py::arg("model"), py::arg("initial"), py::arg("n"), py::arg("j"));
  m.def(
      "closed_form_constant",
      [](const Mod& model, std::vector<T> ic, Index n, Index j) {
        return closed_form_constant<T>(model, ic, n, j);
      },
      py::arg("model"), py::arg("initial"), py::arg("n"), py::arg("j"));
  m.def(
      "compare_methods",
      [](const Mod& model, std::vector<T> ic, Index horizon) {
        return compare_methods<T>(model, ic, horizon);
      },
      py::arg("model"), py::arg("initial"), py::arg("horizon"));

  py::class_<Family>(m, "InfinitesimalFamily")
      .def_static(
          "zeta1",
          [](Mod model, std::vector<T> seeds, Index n_max) {
            return Family::zeta1(std::move(model), seeds, n_max);
          },
          py::arg("model"), py::arg("seeds"), py::arg("n_max"))
      .def_static(
          "zeta2",
          [](Mod model, std::vector<T> seeds, Index n_max) {
            return Family::zeta2(std::move(model), seeds, n_max);
          },
          py::arg("model"), py::arg("seeds"), py::arg("n_max"))
      .def_static(
          "zeta3",
          [](Mod model, std::vector<T> seeds, Index p, Index n_max) {
            return Family::zeta3(std::move(model), seeds, p, n_max);
          },
          py::arg("model"), py::arg("seeds"), py::arg("p"), py::arg("n_max"))
      .def_property_readonly("kind", &Family::kind)
      .def_property_readonly("built_to", &Family::built_to)
      .def("coefficient", &Family::coefficient, py::arg("n"))
      .def("value", &Family::value, py::arg("n"), py::arg("z"));

  m.def("characteristic_value", &characteristic_value<T>, py::arg("family"), py::arg("n"),
        py::arg("z"));
  m.def("symmetry_residual", &symmetry_residual<T>, py::arg("model"), py::arg("family"),
        py::arg("n"), py::arg("z"));
  m.def("zeta1_admissible", &zeta1_admissible<T>, py::arg("model"), py::arg("n_max"));
  m.def("canonical_coordinate", &canonical_coordinate<T>, py::arg("family"), py::arg("n"),
        py::arg("z"));
  m.def(
      "build_alpha",
      [](const Mod& model, std::vector<T> seeds, Index n_max) {
        return build_alpha<T>(model, seeds, n_max);
      },
      py::arg("model"), py::arg("seeds"), py::arg("n_max"));
  m.def(
      "build_beta",
      [](const Mod& model, std::vector<T> seeds, Index n_max) {
        return build_beta<T>(model, seeds, n_max);
      },
      py::arg("model"), py::arg("seeds"), py::arg("n_max"));
  m.def(
      "build_gamma",
      [](const Mod& model, std::vector<T> seeds, Index p, Index n_max) {
        return build_gamma<T>(model, seeds, p, n_max);
      },
      py::arg("model"), py::arg("seeds"), py::arg("p"), py::arg("n_max"));

  py::class_<LinearizationReport<T>>(m, "LinearizationReport")
      .def_readonly("s", &LinearizationReport<T>::s)
      .def_readonly("truncated_at", &LinearizationReport<T>::truncated_at)
      .def_readonly("recurrence_exact", &LinearizationReport<T>::recurrence_exact)
      .def_readonly("direct_exact", &LinearizationReport<T>::direct_exact)
      .def_readonly("max_recurrence_residual", &LinearizationReport<T>::max_recurrence_residual)
      .def_readonly("max_direct_deviation", &LinearizationReport<T>::max_direct_deviation);
  m.def(
      "linearized_trajectory",
      [](const Mod& model, std::vector<T> ic, Index horizon) {
        return linearized_trajectory<T>(model, ic, horizon);
      },
      py::arg("model"), py::arg("initial"), py::arg("horizon"));

  py::class_<EquilibriumReport<T>>(m, "EquilibriumReport")
      .def_readonly("equilibrium", &EquilibriumReport<T>::equilibrium)
      .def_readonly("multiplier", &EquilibriumReport<T>::multiplier)
      .def_readonly("roots", &EquilibriumReport<T>::roots)
      .def_readonly("classification", &EquilibriumReport<T>::classification);
  m.def("equilibria", &equilibria<T>, py::arg("model"));
  m.def("characteristic_roots", &characteristic_roots<T>, py::arg("model"), py::arg("equilibrium"));
  m.def("classify", &classify<T>, py::arg("model"), py::arg("equilibrium"));
  m.def("characteristic_coefficients", &characteristic_coefficients<T>, py::arg("model"),
        py::arg("equilibrium"));

  m.def("detect_period", &detect_period<T>, py::arg("trajectory"), py::arg("rel_tol") = 1e-9);
  m.def("periodic_initial_conditions", &periodic_initial_conditions<T>, py::arg("model"));
  m.def(
      "certified_period",
      [](const Mod& model, std::vector<T> ic, Index horizon, double rel_tol) {
        return certified_period<T>(model, ic, horizon, rel_tol);
      },
      py::arg("model"), py::arg("initial"), py::arg("horizon"), py::arg("rel_tol") = 1e-9);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Higher-order Beverton-Holt recurrence toolkit: iteration, closed-form "
            "solutions, symmetry verification, linearization, periodicity and "
            "equilibrium stability analysis over exact-rational, float and complex "
            "backends.";

  py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);

  py::enum_<Stability>(m, "Stability")
      .value("locally_asymptotically_stable", Stability::locally_asymptotically_stable)
      .value("unstable", Stability::unstable)
      .value("non_hyperbolic", Stability::non_hyperbolic);
  py::enum_<FamilyKind>(m, "FamilyKind")
      .value("zeta1", FamilyKind::zeta1)
      .value("zeta2", FamilyKind::zeta2)
      .value("zeta3", FamilyKind::zeta3);
  py::enum_<PeriodCertificate>(m, "PeriodCertificate")
      .value("exact_equality", PeriodCertificate::exact_equality)
      .value("tolerance", PeriodCertificate::tolerance)
      .value("k_periodic_seed", PeriodCertificate::k_periodic_seed)
      .value("constant_seed", PeriodCertificate::constant_seed)
      .value("two_cycle", PeriodCertificate::two_cycle);

  py::class_<PeriodReport>(m, "PeriodReport")
      .def_readonly("minimal_period", &PeriodReport::minimal_period)
      .def_readonly("certified_by", &PeriodReport::certified_by)
      .def_readonly("tolerance", &PeriodReport::tolerance)
      .def_readonly("window", &PeriodReport::window)
      .def_readonly("trajectory_truncated", &PeriodReport::trajectory_truncated)
      .def_readonly("note", &PeriodReport::note);

  py::class_<MethodComparison>(m, "MethodComparison")
      .def_readonly("method", &MethodComparison::method)
      .def_readonly("applicable", &MethodComparison::applicable)
      .def_readonly("exact_match", &MethodComparison::exact_match)
      .def_readonly("max_rel_error", &MethodComparison::max_rel_error)
      .def_readonly("first_mismatch", &MethodComparison::first_mismatch)
      .def_readonly("truncated_at", &MethodComparison::truncated_at);
  py::class_<CompareReport>(m, "CompareReport")
      .def_readonly("horizon", &CompareReport::horizon)
      .def_readonly("exact_backend", &CompareReport::exact_backend)
      .def_readonly("iterate_truncated_at", &CompareReport::iterate_truncated_at)
      .def_readonly("methods", &CompareReport::methods)
      .def_readonly("truncation_agreement", &CompareReport::truncation_agreement)
      .def("max_rel_error", &CompareReport::max_rel_error)
      .def("all_exact", &CompareReport::all_exact);

  m.def("build_lambda", &build_lambda, py::arg("k"), py::arg("p"), py::arg("n_max"));
  m.def(
      "sufficient_stability",
      [](std::vector<double> p) { return sufficient_stability(p); }, py::arg("p_coefficients"));

  auto rational = m.def_submodule("rational", "exact rational backend (values are fractions.Fraction)");
  bind_backend<Rational>(rational);
  auto real = m.def_submodule("real", "64-bit float backend");
  bind_backend<double>(real);
  auto cplx = m.def_submodule("cplx", "128-bit complex backend");
  bind_backend<Complex>(cplx);

  m.attr("__version__") = "0.1.0";
}
