#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "momentbody/arcsine.hpp"
#include "momentbody/beta_function.hpp"
#include "momentbody/json_io.hpp"
#include "momentbody/principal.hpp"
#include "momentbody/rates.hpp"
#include "momentbody/sampling.hpp"

namespace py = pybind11;
using namespace momentbody;

namespace {

MomentVector moments_from_list(const std::vector<double>& c) {
  return MomentVector::floating(c);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Truncated power-moment problem on [0,1]: canonical moments, Hankel "
            "determinants, extremal representations, uniform sampling of the "
            "moment body, and the attached rate functions.";

  py::register_exception<Error>(m, "MomentBodyError");

  m.def("arcsine_moment", [](unsigned long k) { return arcsine::moment_d(k); },
        py::arg("k"), "k-th power moment of the arcsine law, C(2k,k)/4^k");
  m.def("arcsine_moment_exact",
        [](unsigned long k) { return format_rational(arcsine::moment_exact(k)); }, py::arg("k"));
  m.def("arcsine_cdf", &arcsine::cdf, py::arg("x"));
  m.def("binomial", [](unsigned long n, unsigned long k) { return binomial(n, k).get_str(); },
        py::arg("n"), py::arg("k"));

  m.def("nu_quadrature", [](std::size_t order) {
    const QuadratureRule r = nu_quadrature(order);
    return py::make_tuple(r.nodes, r.weights);
  }, py::arg("order"), "Chebyshev-type rule for the arcsine law: (nodes, weights)");
  m.def("integrate_nu",
        [](const std::function<double(double)>& f, double tol) { return integrate_nu(f, tol); },
        py::arg("f"), py::arg("tol") = 1e-10);

  m.def("regularized_incomplete_beta", &regularized_incomplete_beta, py::arg("a"), py::arg("b"),
        py::arg("x"));
  m.def("log_beta_sf", &log_beta_sf, py::arg("a"), py::arg("b"), py::arg("x"));

  m.def("classify",
        [](const std::vector<double>& c) { return to_string(classify(moments_from_list(c))); },
        py::arg("moments"));
  m.def("moments_to_canonical", [](const std::vector<double>& c) {
    return moments_to_canonical(moments_from_list(c)).to_doubles();
  }, py::arg("moments"));
  m.def("canonical_to_moments", [](const std::vector<double>& p) {
    return canonical_to_moments(CanonicalVector::floating(p)).to_doubles();
  }, py::arg("canonical"));
  m.def("moments_to_canonical_exact", [](const std::vector<std::string>& c) {
    std::vector<Rational> entries;
    for (const auto& s : c) entries.push_back(parse_rational(s));
    const CanonicalVector p = moments_to_canonical(MomentVector::exact(std::move(entries)));
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= p.size(); ++i) out.push_back(p.entry(i).to_string());
    return out;
  }, py::arg("moments"), "exact-rational conversion over \"p/q\" strings");
  m.def("canonical_to_moments_exact", [](const std::vector<std::string>& p) {
    std::vector<Rational> entries;
    for (const auto& s : p) entries.push_back(parse_rational(s));
    const MomentVector c = canonical_to_moments(CanonicalVector::exact(std::move(entries)));
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= c.size(); ++i) out.push_back(c.entry(i).to_string());
    return out;
  }, py::arg("canonical"));

  m.def("moment_range", [](const std::vector<double>& c) {
    const MomentRange r = moment_range(moments_from_list(c));
    return py::make_tuple(r.c_minus.to_double(), r.c_plus.to_double(), r.width.to_double());
  }, py::arg("moments"), "(c_minus, c_plus, width) for the next moment");
  m.def("hankel", [](const std::vector<double>& c, std::size_t mm) {
    const HankelPair h = hankel(moments_from_list(c), mm);
    return py::make_tuple(h.lower.to_double(), h.upper.to_double());
  }, py::arg("moments"), py::arg("m"));
  m.def("range_width_product", [](const std::vector<double>& p) {
    return range_width_product(CanonicalVector::floating(p)).to_double();
  }, py::arg("canonical"));

  m.def("principal_representation", [](const std::vector<double>& c, const std::string& side) {
    const DiscreteMeasure mu = principal_representation(
        moments_from_list(c), side == "lower" ? Side::lower : Side::upper);
    std::vector<std::pair<double, double>> atoms;
    for (const auto& a : mu.atoms) atoms.emplace_back(a.x, a.w);
    return atoms;
  }, py::arg("moments"), py::arg("side") = "upper",
     "atoms [(x, w), ...] of the extremal representation");

  m.def("beta_sample", [](double a, double b, std::uint64_t seed, std::uint64_t stream) {
    return beta_sample(a, b, SeededStream{seed, stream});
  }, py::arg("a"), py::arg("b"), py::arg("seed"), py::arg("stream") = 0);
  m.def("sample_uniform_moment_body",
        [](std::size_t n, std::uint64_t seed, std::uint64_t stream) {
          const UniformMomentSample s = sample_uniform_moment_body(n, SeededStream{seed, stream});
          return py::make_tuple(s.canonical, s.moments);
        },
        py::arg("n"), py::arg("seed"), py::arg("stream") = 0, "(canonical, moments) of one draw");
  m.def("sample_batch",
        [](std::size_t n, std::size_t count, std::uint64_t seed, std::size_t prefix_k,
           unsigned workers) {
          BatchOptions b;
          b.n = n;
          b.count = count;
          b.prefix_k = prefix_k == 0 ? n : prefix_k;
          b.seed = seed;
          b.workers = workers;
          return sample_moment_batch(b);
        },
        py::arg("n"), py::arg("count"), py::arg("seed"), py::arg("prefix_k") = 0,
        py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());

  m.def("rate_i1", &rate_I1_beta, py::arg("x"));
  m.def("rate_ik", [](const std::vector<double>& c) { return rate_Ik(moments_from_list(c)); },
        py::arg("moments"));
  m.def("rate_jk", &rate_Jk, py::arg("x"));
  m.def("md_sigma", [](std::size_t k) {
    const MDCoefficients md = md_coefficients(k);
    return md.sigma_d();
  }, py::arg("k"));
  m.def("reversed_kullback",
        [](const std::function<double(double)>& g, double tol) {
          MeasureSpec mu;
          mu.density = g;
          return reversed_kullback(mu, tol);
        },
        py::arg("density"), py::arg("tol") = 1e-9,
        "I(mu) = K(nu, mu) for mu = density * nu");
  m.def("dual_hk", [](const std::vector<double>& c, double tol) {
    DualOptions opts;
    opts.tol = tol;
    const DualSolution sol = dual_Hk_maximize(moments_from_list(c), opts);
    py::dict d;
    d["value"] = sol.value;
    d["lambda0"] = sol.lambda0;
    d["lambda"] = sol.lambda;
    d["grad_norm"] = sol.grad_norm;
    return d;
  }, py::arg("moments"), py::arg("tol") = 1e-9);
  m.def("range_size", [](const std::vector<double>& c) {
    return range_size(moments_from_list(c)).to_double();
  }, py::arg("moments"));
  m.def("polynomial_case_range", [](const std::vector<double>& coeffs, std::size_t j) {
    const PolynomialCaseResult r = polynomial_case_range(coeffs, j);
    py::dict d;
    d["moments"] = r.moments;
    d["predicted_width"] = r.predicted_width;
    d["computed_width"] = r.computed_width;
    d["kullback"] = r.kullback;
    return d;
  }, py::arg("poly"), py::arg("j"));
  m.def("tilt_limit", [](const std::function<double(double)>& f0, double tol) {
    const TiltSolution sol = tilt_limit(f0, tol);
    py::dict d;
    d["case"] = sol.kind == TiltCase::absolutely_continuous ? "absolutely-continuous"
                                                            : "atom-at-maximizer";
    d["lambda_bar"] = sol.lambda_bar;
    d["chi0"] = sol.chi0;
    d["lambda_star"] = sol.lambda_star;
    d["x0"] = sol.x0;
    d["atom_mass"] = sol.atom_mass;
    d["k_f"] = sol.k_f;
    return d;
  }, py::arg("f0"), py::arg("tol") = 1e-9);

#ifdef MOMENTBODY_VERSION
  m.attr("__version__") = MOMENTBODY_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
