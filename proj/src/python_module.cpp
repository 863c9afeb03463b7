#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kpalg/error.hpp"
#include "kpalg/pipeline.hpp"

namespace py = pybind11;
using namespace kpalg;

namespace {

using StrMatrix = std::vector<std::vector<std::string>>;

/// A loaded algebra with its KP context and geometry, built lazily.
class Model {
public:
    explicit Model(AlgebraConfig cfg) : cfg_(std::move(cfg)), alg_(build_algebra(cfg_)) {}

    const RingPtr& ring() const { return alg_.ring; }
    const Algebra& algebra() const { return alg_; }

    const KPSetup& kp() {
        if (!kp_) kp_ = build_kp(cfg_, alg_);
        return *kp_;
    }

    Geometry& geometry() {
        if (!geo_) {
            auto j = jacobi_check(alg_.P);
            if (!j.ok) throw VerificationError("the bracket does not satisfy the Jacobi identity");
            const auto& s = kp();
            if (!s.verify.ok && !cfg_.defer_kp) throw VerificationError("the Kahler-Poisson relation does not hold");
            geo_ = std::make_shared<Geometry>(s.kp);
        }
        return *geo_;
    }

    RingPtr kp_ring() { return kp().kp->ring(); }

private:
    AlgebraConfig cfg_;
    Algebra alg_;
    std::optional<KPSetup> kp_;
    std::shared_ptr<Geometry> geo_;
};

StrMatrix strings(const RingMatrix& M) { return M.to_strings(); }

std::vector<std::string> strings(const std::vector<Elem>& v) {
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(e.str());
    return out;
}

Elem to_elem(const RingPtr& ring, const py::object& o) {
    if (py::isinstance<Elem>(o)) return o.cast<Elem>().lift(ring);
    return parse_elem(o.cast<std::string>(), ring);
}

Deriv to_deriv(const RingPtr& ring, const std::vector<py::object>& coeffs) {
    Deriv d;
    for (const auto& c : coeffs) d.coeffs.push_back(to_elem(ring, c));
    return d;
}

py::object to_python(const nlohmann::ordered_json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(kpalg, m) {
    m.doc() = "Exact Kahler-Poisson algebra computations";

    auto base = py::register_exception<Error>(m, "KpalgError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<SemanticError>(m, "SemanticError", base.ptr());
    py::register_exception<VerificationError>(m, "VerificationError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<RingCtx, std::shared_ptr<RingCtx>>(m, "Ring")
        .def(py::init([](std::vector<std::string> gens, std::vector<std::string> relations,
                         std::vector<std::string> denominators, const std::string& order) {
                 auto k = parse_order_kind(order);
                 if (!k) throw SemanticError("unknown monomial order '" + order + "'");
                 return std::const_pointer_cast<RingCtx>(RingCtx::make(std::move(gens), relations, denominators, *k));
             }),
             py::arg("generators"), py::arg("relations") = std::vector<std::string>{},
             py::arg("denominators") = std::vector<std::string>{}, py::arg("order") = "grevlex")
        .def_property_readonly("generators", [](const RingCtx& r) { return r.scope()->names(); })
        .def_property_readonly("groebner",
                               [](const RingCtx& r) {
                                   std::vector<std::string> out;
                                   for (const auto& g : r.groebner()) out.push_back(format_poly(g));
                                   return out;
                               })
        .def("parse", [](const std::shared_ptr<RingCtx>& r, const std::string& s) { return parse_elem(s, r); })
        .def("generator", [](const std::shared_ptr<RingCtx>& r, std::size_t i) { return Elem::generator(r, i); });

    py::class_<Elem>(m, "Elem")
        .def("__str__", &Elem::str)
        .def("__repr__", [](const Elem& e) { return "Elem('" + e.str() + "')"; })
        .def("is_zero", &Elem::is_zero)
        .def("partial", &Elem::partial)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def("__eq__", [](const Elem& a, const Elem& b) { return a == b; })
        .def("__eq__", [](const Elem& a, const std::string& s) { return a == parse_elem(s, a.ctx()); })
        .def("__ne__", [](const Elem& a, const Elem& b) { return !(a == b); })
        .def("__ne__", [](const Elem& a, const std::string& s) { return !(a == parse_elem(s, a.ctx())); })
        .def("scale", [](const Elem& a, const std::string& r) { return a.scale(Rat(r)); });

    py::class_<Model, std::shared_ptr<Model>>(m, "Algebra")
        .def_static("load", [](const std::string& path) { return std::make_shared<Model>(load_config(path)); },
                    py::arg("path"))
        .def_static("from_text", [](const std::string& text) { return std::make_shared<Model>(parse_config(text)); },
                    py::arg("text"))
        .def_static("from_json", [](const std::string& text) { return std::make_shared<Model>(parse_config_json(text)); },
                    py::arg("text"))
        .def_property_readonly("ring", [](Model& s) { return std::const_pointer_cast<RingCtx>(s.kp_ring()); })
        .def_property_readonly("generators", [](const Model& s) { return s.ring()->scope()->names(); })
        .def("bracket",
             [](Model& s, const py::object& a, const py::object& b) {
                 const auto& P = s.algebra().P;
                 return P.bracket(to_elem(P.ctx(), a), to_elem(P.ctx(), b)).lift(s.kp_ring());
             })
        .def("jacobi", [](Model& s) { return jacobi_check(s.algebra().P).ok; })
        .def("kp_verify", [](Model& s) { return s.kp().verify.ok; })
        .def("d_matrix", [](Model& s) { return strings(s.kp().kp->D()); })
        .def("metric", [](Model& s) { return strings(s.kp().kp->g()); })
        .def("eta", [](Model& s) { return s.kp().kp->eta(); })
        .def("d_apply", [](Model& s, std::size_t i, const py::object& f) {
            return s.kp().kp->d_apply(i, to_elem(s.kp_ring(), f));
        })
        .def("g_form",
             [](Model& s, const std::vector<py::object>& a, const std::vector<py::object>& b) {
                 return s.kp().kp->g_form(to_deriv(s.kp_ring(), a), to_deriv(s.kp_ring(), b));
             })
        .def("christoffel",
             [](Model& s) {
                 auto& G = s.geometry();
                 std::vector<StrMatrix> out;
                 for (std::size_t i = 0; i < G.m(); ++i) {
                     StrMatrix rows;
                     for (std::size_t j = 0; j < G.m(); ++j) {
                         std::vector<std::string> row;
                         for (std::size_t k = 0; k < G.m(); ++k) row.push_back(G.christoffel().at({i, j, k}).str());
                         rows.push_back(std::move(row));
                     }
                     out.push_back(std::move(rows));
                 }
                 return out;
             })
        .def("ricci",
             [](Model& s) {
                 auto& G = s.geometry();
                 StrMatrix out(G.m());
                 for (std::size_t p = 0; p < G.m(); ++p)
                     for (std::size_t q = 0; q < G.m(); ++q) out[p].push_back(G.ricci().at({p, q}).str());
                 return out;
             })
        .def("scalar", [](Model& s) { return s.geometry().scalar(); })
        .def("laplacian", [](Model& s, const py::object& f) { return s.geometry().laplacian(to_elem(s.kp_ring(), f)); })
        .def("verify_properties", [](Model& s) {
            py::list out;
            for (const auto& c : s.geometry().verify_properties().checks) {
                py::dict d;
                d["name"] = c.name;
                d["ok"] = c.ok;
                d["checked"] = c.checked;
                d["failures"] = c.failures;
                if (!c.ok) d["witness"] = c.witness;
                out.append(d);
            }
            return out;
        });

    m.def(
        "run",
        [](const std::string& command, const std::string& config, std::optional<std::string> expr,
           std::optional<std::size_t> budget) {
            RunOptions opts;
            opts.expr = std::move(expr);
            if (budget) opts.pair_budget = *budget;
            return to_python(run_command(command, load_config(config), opts).json());
        },
        py::arg("command"), py::arg("config"), py::arg("expr") = py::none(), py::arg("budget") = py::none(),
        "Run a CLI command on a config file and return its report as a dict.");
    m.def("commands", &command_names);

    m.def(
        "block_diagonalize",
        [](const std::shared_ptr<RingCtx>& ring, const StrMatrix& P) {
            auto r = block_diagonalize(RingMatrix::from_strings(ring, P, Shape::antisymmetric));
            py::dict d;
            d["V"] = strings(r.V);
            d["normal_form"] = strings(r.normal_form);
            d["lambdas"] = strings(r.lambdas);
            d["zero_block"] = r.residual_zero_block;
            return d;
        },
        py::arg("ring"), py::arg("P"));
    m.def(
        "build_metric",
        [](const std::shared_ptr<RingCtx>& ring, const StrMatrix& P) {
            auto mc = build_metric(RingMatrix::from_strings(ring, P, Shape::antisymmetric));
            py::dict d;
            d["V"] = strings(mc.V);
            d["g"] = strings(mc.g);
            d["lambda"] = mc.lambda.str();
            d["det_V"] = mc.det_V.str();
            d["eta"] = mc.eta.str();
            d["kp_relation"] = kp_verify(BracketTable(mc.P), mc.g, mc.eta).ok;
            return d;
        },
        py::arg("ring"), py::arg("P"));
}
