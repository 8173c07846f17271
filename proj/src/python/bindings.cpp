#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symkit/error.hpp"
#include "symkit/examples.hpp"
#include "symkit/io.hpp"
#include "symkit/kernels.hpp"
#include "symkit/multiplier.hpp"
#include "symkit/plancherel.hpp"
#include "symkit/rootdata.hpp"

namespace py = pybind11;
using namespace symkit;

namespace {

py::object to_python(const nlohmann::ordered_json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null: return py::none();
        case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer: return py::int_(j.get<long long>());
        case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
        case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
        case nlohmann::json::value_t::array: {
            py::list out;
            for (const auto& v : j) out.append(to_python(v));
            return out;
        }
        case nlohmann::json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = to_python(it.value());
            return out;
        }
        default: return py::none();
    }
}

QuadratureSpec quad_from(const py::dict& d) {
    QuadratureSpec q;
    for (auto [k, v] : d) {
        const auto key = k.cast<std::string>();
        if (key == "abs_tol") q.abs_tol = v.cast<double>();
        else if (key == "rel_tol") q.rel_tol = v.cast<double>();
        else if (key == "max_intervals") q.max_intervals = v.cast<int>();
        else if (key == "max_depth") q.max_depth = v.cast<int>();
        else if (key == "chamber_cutoff") q.chamber_cutoff = v.cast<double>();
        else if (key == "log_window") q.log_window = v.cast<double>();
        else if (key == "split_t") q.split_t = v.cast<double>();
        else throw py::key_error("unknown quadrature key '" + key + "'");
    }
    q.validate();
    return q;
}

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Harmonic analysis on noncompact symmetric spaces";

    auto base = py::register_exception<Error>(m, "SymkitError");
    py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<CapabilityError>(m, "CapabilityError", base.ptr());
    auto pre = py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<RegionError>(m, "RegionError", pre.ptr());
    py::register_exception<ToleranceError>(m, "ToleranceError", base.ptr());
    py::register_exception<ResolutionError>(m, "ResolutionError", base.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
    py::register_exception<SingularityError>(m, "SingularityError", base.ptr());

    py::class_<SymmetricSpace>(m, "SymmetricSpace")
        .def(py::init([](const std::string& family, int size, const std::string& normalization) {
                 return SymmetricSpace::build(parse_family(family), size, parse_normalization(normalization));
             }),
             py::arg("family"), py::arg("size"), py::arg("normalization") = "killing")
        .def_property_readonly("label", &SymmetricSpace::label)
        .def_property_readonly("rank", &SymmetricSpace::rank)
        .def_property_readonly("dim_n", &SymmetricSpace::dim_n)
        .def_property_readonly("dim_gk", &SymmetricSpace::dim_gk)
        .def_property_readonly("rho_norm_sq", &SymmetricSpace::rho_norm_sq)
        .def_property_readonly("metric_scale", &SymmetricSpace::metric_scale)
        .def_property_readonly("multiplicities",
                               [](const SymmetricSpace& s) {
                                   std::vector<int> out;
                                   for (const auto& r : s.roots()) out.push_back(r.multiplicity);
                                   return out;
                               })
        .def("to_dict", [](const SymmetricSpace& s) { return to_python(s.to_json()); })
        .def("__repr__", [](const SymmetricSpace& s) { return "SymmetricSpace('" + s.label() + "')"; });

    m.def(
        "plancherel_density",
        [](const SymmetricSpace& s, const std::vector<double>& lambda) { return plancherel_density(s, to_vec(lambda)); },
        py::arg("space"), py::arg("lam"));
    m.def(
        "casimir_inverse_l2_norm",
        [](const SymmetricSpace& s, double sv, const py::dict& quad) {
            const SpectralNorm n = casimir_inverse_l2_norm(s, sv, quad_from(quad));
            py::dict out;
            out["finite"] = n.finite();
            out["value"] = n.finite() ? py::object(py::float_(n.value())) : py::object(py::none());
            out["diagnostics"] = to_python(n.integral.diagnostics());
            return out;
        },
        py::arg("space"), py::arg("s"), py::arg("quad") = py::dict());
    m.def(
        "heat_kernel",
        [](const SymmetricSpace& s, double t, double r, const std::string& mode, const py::dict& quad) {
            return heat_kernel(s, t, r, parse_heat_mode(mode), quad_from(quad));
        },
        py::arg("space"), py::arg("t"), py::arg("r"), py::arg("mode") = "closed", py::arg("quad") = py::dict());
    m.def(
        "bgr_kernel",
        [](const SymmetricSpace& s, double sv, double r, const py::dict& quad) { return bgr_kernel(s, sv, r, quad_from(quad)); },
        py::arg("space"), py::arg("s"), py::arg("r"), py::arg("quad") = py::dict());
    m.def("lq_admissible", &lq_admissible, py::arg("dim_gk"), py::arg("s"), py::arg("q"));
    m.def(
        "lq_norm_numeric",
        [](const SymmetricSpace& s, double sv, double q, const std::string& mode, const py::dict& quad) {
            return to_python(lq_norm_numeric(s, sv, q, quad_from(quad), parse_lq_mode(mode)).to_json());
        },
        py::arg("space"), py::arg("s"), py::arg("q"), py::arg("mode") = "automatic", py::arg("quad") = py::dict());
    m.def(
        "p_interval",
        [](double sg, double s) {
            const PInterval iv = p_interval(sg, s);
            return py::make_tuple(iv.p_min, iv.p_max);
        },
        py::arg("S_G"), py::arg("s"));
    m.def("admissible", &admissible, py::arg("dim_gk"), py::arg("S_G"), py::arg("s"), py::arg("p"));
    m.def(
        "three_lines_weights",
        [](double beta) {
            const ThreeLinesWeights w = three_lines_weights(beta);
            return py::make_tuple(w.w0, w.w1);
        },
        py::arg("beta"));
    m.def(
        "interpolation_plan",
        [](int dim, double sg, double s, double p, std::optional<double> alpha) {
            return to_python(interpolation_plan(dim, sg, s, p, alpha).to_json());
        },
        py::arg("dim_gk"), py::arg("S_G"), py::arg("s"), py::arg("p"), py::arg("alpha") = py::none());
    m.def(
        "cgsp_estimate",
        [](const SymmetricSpace& space, double sg, double s, double p, double sobolev_norm, std::optional<double> c_beta,
           std::optional<double> c_prime_beta, std::optional<double> alpha, const py::dict& quad) {
            UserConstants user{c_beta, c_prime_beta, alpha};
            const ConstantBreakdown b = cgsp_estimate(space, sg, s, p, user, sobolev_norm, quad_from(quad));
            py::dict out = to_python(b.to_json());
            out["product"] = b.product();
            return out;
        },
        py::arg("space"), py::arg("S_G"), py::arg("s"), py::arg("p"), py::arg("sobolev_norm") = 1.0,
        py::arg("c_beta") = py::none(), py::arg("c_prime_beta") = py::none(), py::arg("alpha") = py::none(),
        py::arg("quad") = py::dict());
    m.def(
        "decay_threshold",
        [](const SymmetricSpace& s, double sg, const std::string& conv) {
            return decay_threshold(s, sg, parse_sg_convention(conv)).value;
        },
        py::arg("space"), py::arg("S_G"), py::arg("convention") = "full_dimension");
    m.def(
        "symbol_sobolev_norm",
        [](const SymmetricSpace& s, double A, double sg, const py::dict& quad) {
            const SlowDecaySymbol f = slow_decay_symbol(s, A);
            return to_python(symbol_sobolev_norm(s, f, sg, quad_from(quad)).to_json());
        },
        py::arg("space"), py::arg("A"), py::arg("S_G"), py::arg("quad") = py::dict());
    m.def(
        "slnr_report", [](int n, double margin) { return to_python(slnr_report(n, margin).to_json()); }, py::arg("n"),
        py::arg("margin") = 1e-6);
    m.def("format_number", &io::format_number, py::arg("value"));
}
