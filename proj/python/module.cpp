// Python bindings for the main operations: design construction, point
// generation, estimators, worst-case-error optimization, and the dual-net
// probes.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hankelnet/bench.hpp"
#include "hankelnet/estimators.hpp"
#include "hankelnet/netgen.hpp"
#include "hankelnet/pointgen.hpp"
#include "hankelnet/walshlab.hpp"
#include "hankelnet/wce.hpp"

namespace py = pybind11;
using namespace hankelnet;

namespace {

NetDesign draw_design_py(const std::string& kind, std::uint64_t seed, int base, int m, int s,
                         bool with_shift) {
    const PrimeBase b(base);
    return draw_design(parse_design_kind(kind), RngSeed{seed}, b, default_precision(b), m, s,
                       with_shift);
}

py::array_t<double> points_to_array(const PointSet& ps) {
    py::array_t<double> out({static_cast<py::ssize_t>(ps.n_points), static_cast<py::ssize_t>(ps.s)});
    std::copy(ps.coords.begin(), ps.coords.end(), out.mutable_data());
    return out;
}

Integrand wrap_integrand(const py::function& f) {
    return [f](std::span<const double> x) {
        // Shape + data-pointer ctor; the bare element-count form builds a
        // zero-stride array on old pybind11 releases.
        py::array_t<double> arr({static_cast<py::ssize_t>(x.size())}, x.data());
        return f(arr).cast<double>();
    };
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "digital-net toolkit: Hankel random designs, scrambling, estimators";

    py::class_<NetDesign>(mod, "NetDesign")
        .def_property_readonly("base", [](const NetDesign& d) { return d.base.value(); })
        .def_readonly("m", &NetDesign::m)
        .def_readonly("s", &NetDesign::s)
        .def_readonly("precision", &NetDesign::precision)
        .def("has_shift", &NetDesign::has_shift)
        .def("n_points", &NetDesign::n_points)
        .def("matrix", [](const NetDesign& d, int j) {
            const auto& C = d.matrices.at(static_cast<std::size_t>(j));
            py::array_t<std::uint8_t> out({C.rows(), C.cols()});
            std::copy(C.entries().begin(), C.entries().end(), out.mutable_data());
            return out;
        });

    mod.def("draw_design", &draw_design_py, py::arg("kind"), py::arg("seed"), py::arg("base"),
            py::arg("m"), py::arg("s"), py::arg("with_shift") = false);
    mod.def("default_precision", [](int b) { return default_precision(PrimeBase(b)); });
    mod.def("sobol_table_checksum", &sobol_table_checksum);

    mod.def("points_gray", [](const NetDesign& d) { return points_to_array(gen_points_gray(d)); });
    mod.def("points_naive",
            [](const NetDesign& d) { return points_to_array(gen_points_naive(d)); });

    mod.def("qmc_mean", [](const py::function& f, const NetDesign& d) {
        return qmc_mean(wrap_integrand(f), d);
    });
    mod.def("median_of_means",
            [](const py::function& f, const std::string& kind, int base, int m, int s,
               int n_replicates, std::uint64_t seed) {
                const PrimeBase b(base);
                const DesignKind k = parse_design_kind(kind);
                const DesignFactory factory = [&](RngSeed rs) {
                    return draw_design(k, rs, b, default_precision(b), m, s, true);
                };
                return median_of_means(wrap_integrand(f), factory, n_replicates, RngSeed{seed});
            },
            py::arg("f"), py::arg("kind"), py::arg("base"), py::arg("m"), py::arg("s"),
            py::arg("n_replicates"), py::arg("seed"));
    mod.def("r_schedule", [](int m, const std::string& mode, int fixed_r) {
        return r_schedule(m, parse_r_mode(mode), fixed_r);
    }, py::arg("m"), py::arg("mode"), py::arg("fixed_r") = 15);

    mod.def("mu_alpha",
            [](std::uint64_t k, int alpha, int b) { return mu_alpha(k, alpha, PrimeBase(b)); });
    mod.def("kappa", [](std::uint64_t k, int b) { return kappa(k, PrimeBase(b)); });
    mod.def("walsh", [](std::uint64_t k, double x, int b) { return walsh(k, x, PrimeBase(b)); });
    mod.def("dual_contains", [](const NetDesign& d, const std::vector<std::uint64_t>& k) {
        return dual_contains(d, k);
    });
    mod.def("t_parameter", &t_parameter);
    mod.def("t_u_parameter", [](const NetDesign& d, const std::vector<int>& u) {
        return t_u_parameter(d, u);
    });
    mod.def("marginal_dual_prob_exact",
            [](const std::vector<std::uint64_t>& k, int b, int m, const std::string& kind) {
                return marginal_dual_prob_exact(k, PrimeBase(b), m, parse_design_kind(kind));
            });
    mod.def("joint_dual_prob_exact",
            [](const std::vector<std::uint64_t>& k1, const std::vector<std::uint64_t>& k2, int b,
               int m, const std::string& kind) {
                return joint_dual_prob_exact(k1, k2, PrimeBase(b), m, parse_design_kind(kind));
            });
    mod.def("mc_dual_prob",
            [](std::uint64_t seed, const std::vector<std::uint64_t>& k, int b, int m, int s,
               const std::string& kind, std::uint64_t trials) {
                const McEstimate e =
                    mc_dual_prob(RngSeed{seed}, k, PrimeBase(b), m, s, parse_design_kind(kind), trials);
                return py::make_tuple(e.estimate, e.stderr_);
            });

    mod.def("omega2", &omega2);
    mod.def("omega3", &omega3);
    mod.def("omega_series", [](double x, int alpha, int b, std::uint64_t k_max) {
        const SeriesValue v = omega_series(x, alpha, PrimeBase(b), k_max);
        return py::make_tuple(v.value, v.tail_bound);
    });
    mod.def("c_alpha_p", [](int b, int alpha, double p) { return c_alpha_p(PrimeBase(b), alpha, p); });
    mod.def("w_linf_bound", [](std::uint64_t k, int alpha, int b) {
        return w_linf_bound(k, alpha, PrimeBase(b));
    });
    mod.def("wce_bound", [](const NetDesign& d, const std::vector<double>& gamma, int alpha) {
        return wce_bound(d, ProductWeights(gamma), alpha);
    });
    mod.def("greedy_select",
            [](std::uint64_t seed, int r, int b, int m, int s, const std::vector<double>& gamma,
               int alpha, const std::string& kind) {
                GreedyResult res = greedy_select(RngSeed{seed}, r, PrimeBase(b), m, s,
                                                 ProductWeights(gamma), alpha, parse_design_kind(kind));
                return py::make_tuple(res.best, res.best_wce, res.best_index, res.wce_values);
            });

    mod.def("exp_weights", [](int s, double c) { return exp_weights(s, c).gamma; });
    mod.def("inverse_normal_cdf", &inverse_normal_cdf);
    mod.def("product_power", [](const std::vector<double>& t, double c,
                                const std::vector<double>& gamma) {
        return product_power(t, c, ProductWeights(gamma));
    });
    mod.def("t_exp", [](const std::vector<double>& t) { return t_exp(t); });
}
