#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypercontact/contact/chow.hpp"
#include "hypercontact/contact/contact.hpp"
#include "hypercontact/experiment/config.hpp"
#include "hypercontact/experiment/suites.hpp"
#include "hypercontact/fb/pushout_io.hpp"
#include "hypercontact/kobayashi/kobayashi.hpp"
#include "hypercontact/obstacle/disk_estimate.hpp"
#include "hypercontact/util/errors.hpp"

namespace py = pybind11;
using namespace hypercontact;

namespace {

using Coeffs = std::vector<std::vector<Complex>>;

ContactPoint point(const std::vector<Complex>& c) {
  if (c.size() < 3 || c.size() % 2 == 0) throw DimensionMismatch("expected 2n+1 coordinates");
  return ContactPoint::from_flat(c);
}

TangentVector vec(const std::vector<Complex>& c) {
  if (c.size() < 3 || c.size() % 2 == 0) throw DimensionMismatch("expected 2n+1 components");
  return TangentVector::from_flat(c);
}

Coeffs curve_coeffs(const HolomorphicCurve& f) {
  Coeffs out;
  for (const CPolynomial* p : f.components()) out.push_back(p->coefficients());
  return out;
}

HolomorphicCurve curve_from(const Coeffs& c) {
  if (c.size() < 3 || c.size() % 2 == 0) throw DimensionMismatch("expected 2n+1 components");
  HolomorphicCurve f;
  const std::size_t n = (c.size() - 1) / 2;
  for (std::size_t j = 0; j < n; ++j) {
    f.x.push_back(CPolynomial::from_coefficients(c[2 * j]));
    f.y.push_back(CPolynomial::from_coefficients(c[2 * j + 1]));
  }
  f.z = CPolynomial::from_coefficients(c.back());
  return f;
}

SearchBudget budget(int restarts, int sweeps, double lambda_max) {
  SearchBudget b;
  b.restarts = restarts;
  b.sweeps = sweeps;
  b.lambda_max = lambda_max;
  return b;
}

py::dict report_dict(const RunReport& r) { return py::module_::import("json").attr("loads")(to_json(r).dump()); }

}  // namespace

PYBIND11_MODULE(_hypercontact, m) {
  m.doc() = "Directed Kobayashi bounds, push-out shear constructions and horizontal disks";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def(
      "alpha0", [](const std::vector<Complex>& p, const std::vector<Complex>& v) { return alpha0_eval(point(p), vec(v)); },
      py::arg("p"), py::arg("v"), "dz + sum x_j dy_j at p applied to v (interleaved x_1, y_1, ..., z)");

  m.def(
      "legendrian_from_xy",
      [](const Coeffs& x, const Coeffs& y, Complex z0) {
        std::vector<CPolynomial> xs, ys;
        for (const auto& c : x) xs.push_back(CPolynomial::from_coefficients(c));
        for (const auto& c : y) ys.push_back(CPolynomial::from_coefficients(c));
        if (xs.size() != ys.size() || xs.empty()) throw DimensionMismatch("x and y need the same positive length");
        return curve_coeffs(legendrian_from_xy(std::move(xs), std::move(ys), z0));
      },
      py::arg("x"), py::arg("y"), py::arg("z0") = Complex(0.0, 0.0),
      "Monomial coefficients of every component of the horizontal lift");
  m.def(
      "legendrian_line",
      [](const std::vector<Complex>& p, const std::vector<Complex>& v) {
        return curve_coeffs(legendrian_line(point(p), vec(v)));
      },
      py::arg("p"), py::arg("v"));
  m.def(
      "horizontality_residual", [](const Coeffs& c) { return horizontality_residual(curve_from(c)).coefficients(); },
      py::arg("components"), "Coefficients of z' + sum x_j y_j'; empty for a horizontal curve");

  m.def(
      "chow_path",
      [](const std::vector<Complex>& p, const std::vector<Complex>& q) {
        const PathPlan plan = chow_path(point(p), point(q));
        py::list segs;
        for (const auto& s : plan.segments) segs.append(curve_coeffs(s));
        return py::make_tuple(segs, plan.end().flat());
      },
      py::arg("p"), py::arg("q"), "Segments (coefficients on t in [0, 1]) and the reached endpoint");

  m.def(
      "norm_bracket",
      [](const std::vector<Complex>& p, const std::vector<Complex>& v, int i_max, int restarts, int sweeps,
         double lambda_max, std::uint64_t seed) {
        const ContactPoint pp = point(p);
        const TangentVector vv = vec(v);
        const ShellUnion K = standard_obstacle(pp.n(), i_max, HeightRule::hyperbolic());
        NormBracket b;
        {
          py::gil_scoped_release release;
          b = directed_norm_bracket(pp, vv, K, budget(restarts, sweeps, lambda_max), seed);
        }
        py::dict d;
        d["lower"] = b.lower.lower;
        d["upper"] = b.upper.upper;
        d["N0"] = b.lower.certificate.N0;
        d["mu"] = b.upper.lambda;
        d["witness"] = py::none();
        if (b.upper.witness) d["witness"] = curve_coeffs(*b.upper.witness);
        return d;
      },
      py::arg("p"), py::arg("v"), py::arg("i_max") = 6, py::arg("restarts") = 32, py::arg("sweeps") = 120,
      py::arg("lambda_max") = 1e3, py::arg("seed") = 1,
      "Lower and upper bounds for the directed norm off the standard obstacle");
  m.def(
      "norm_upper_full_space",
      [](const std::vector<Complex>& p, const std::vector<Complex>& v, double lambda_max) {
        return directed_norm_upper(point(p), vec(v), DiskDomain::full_space(), budget(1, 0, lambda_max)).upper;
      },
      py::arg("p"), py::arg("v"), py::arg("lambda_max") = 1e3);
  m.def(
      "distance_upper_full_space",
      [](const std::vector<Complex>& p, const std::vector<Complex>& q, double lambda_max, int nodes) {
        return cck_distance_upper(point(p), point(q), DiskDomain::full_space(), budget(1, 0, lambda_max), 1, nodes)
            .value;
      },
      py::arg("p"), py::arg("q"), py::arg("lambda_max") = 1e3, py::arg("nodes") = 64);

  py::class_<PushOutState>(m, "PushOut", "A finite prefix of the push-out shear construction")
      .def_static(
          "desk",
          [](int dim, int i_max, int k_max) { return build_pushout(dim, desk_schedule(dim, i_max), k_max); },
          py::arg("dim") = 2, py::arg("i_max") = 6, py::arg("k_max") = 6)
      .def_static("from_json", &pushout_from_json, py::arg("text"))
      .def("to_json", &pushout_to_json)
      .def_property_readonly("dim", &PushOutState::dim)
      .def_property_readonly("rounds", &PushOutState::rounds_built)
      .def(
          "classify",
          [](const PushOutState& s, const std::vector<Complex>& p) {
            const OmegaResult r = omega_membership(s, p);
            return py::make_tuple(std::string(to_string(r.verdict)), r.round);
          },
          py::arg("point"), "Verdict and the round at which it was reached")
      .def(
          "evaluate",
          [](const PushOutState& s, const std::vector<Complex>& p) {
            const FbValue v = fb_map_eval(s, p);
            return py::make_tuple(v.value, v.error_bound);
          },
          py::arg("point"), "Theta_k(point) and the tail bound; the point must be certified")
      .def(
          "round_contract",
          [](const PushOutState& s, int k, int samples, int identity_samples, std::uint64_t seed) {
            const RoundContractReport r = check_round_contract(s, k, samples, identity_samples, seed);
            py::dict d;
            d["pass"] = r.pass();
            d["containment_failures"] = r.containment_failures;
            d["min_margin"] = ext::to_double(r.min_containment_margin);
            d["sampled_identity_sup"] = r.sampled_identity_sup;
            d["certified_identity_bound"] = r.certified_identity_bound;
            d["eps"] = r.eps;
            d["avoidance_slack"] = ext::to_double(r.avoidance_slack);
            return d;
          },
          py::arg("k"), py::arg("samples") = 100, py::arg("identity_samples") = 100, py::arg("seed") = 1);

  m.def(
      "validate_config",
      [](const std::string& path) {
        return py::module_::import("json").attr("loads")(to_json(validate_config(path)).dump());
      },
      py::arg("path"), "Parsed config with defaults filled in");
  m.def(
      "run_experiment",
      [](const std::string& config_path, const std::string& suite, const std::string& out_dir) {
        const ExperimentConfig c = validate_config(config_path);
        RunReport r;
        {
          py::gil_scoped_release release;
          r = run_experiment(c, suite_from_string(suite), out_dir);
        }
        return report_dict(r);
      },
      py::arg("config"), py::arg("suite"), py::arg("out_dir"));
}
