#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vmlp/algebra.hpp"
#include "vmlp/errors.hpp"
#include "vmlp/functional.hpp"
#include "vmlp/io.hpp"
#include "vmlp/network.hpp"
#include "vmlp/train.hpp"

namespace py = pybind11;

namespace {

using namespace vmlp;

std::vector<double> coeff_list(const Element& e) {
    return {e.coeffs().begin(), e.coeffs().end()};
}

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw ValidationError("matrix must have at least one row");
    const int r = static_cast<int>(rows.size());
    const int c = static_cast<int>(rows[0].size());
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(r) * c);
    for (const std::vector<double>& row : rows) {
        if (static_cast<int>(row.size()) != c)
            throw ValidationError("matrix rows must have equal length");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return Matrix(r, c, std::move(flat));
}

std::vector<std::vector<double>> matrix_rows(const Matrix& m) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        rows[i].resize(static_cast<std::size_t>(m.cols()));
        for (int j = 0; j < m.cols(); ++j) rows[i][j] = m.at(i, j);
    }
    return rows;
}

LinearFunctional functional_from_blocks(const std::vector<std::vector<double>>& blocks) {
    LinearFunctional f;
    f.coeffs = blocks;
    return f;
}

py::dict degeneracy_dict(const DegeneracyReport& report) {
    py::dict d;
    d["tol"] = report.tol;
    d["overall_nondegenerate"] = report.overall_nondegenerate;
    d["singular_components"] = report.singular_components();
    py::list per;
    for (const ComponentRank& c : report.per_component) {
        py::dict row;
        row["k"] = c.k;
        row["rank"] = c.rank;
        row["abs_det"] = c.abs_det;
        row["singular"] = c.singular;
        per.append(std::move(row));
    }
    d["per_component"] = std::move(per);
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite-dimensional real algebras and vector-valued MLPs";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<Algebra>(m, "Algebra")
        .def_property_readonly("dim", &Algebra::dim)
        .def_property_readonly("name", &Algebra::name)
        .def_property_readonly("labels", &Algebra::labels)
        .def("constant", &Algebra::constant, py::arg("i"), py::arg("j"), py::arg("k"))
        .def("bilinear_matrix",
             [](const Algebra& a, int k) { return matrix_rows(bilinear_matrix(a, k).entries); },
             py::arg("k"))
        .def("mul",
             [](const Algebra& a, const std::vector<double>& x, const std::vector<double>& y) {
                 return coeff_list(mul(a.element(x), a.element(y)));
             },
             py::arg("x"), py::arg("y"))
        .def("is_nondegenerate",
             [](const Algebra& a, double tol) { return degeneracy_dict(is_nondegenerate(a, tol)); },
             py::arg("tol") = 1e-9)
        .def("find_identity",
             [](const Algebra& a, double tol) -> std::optional<std::vector<double>> {
                 if (std::optional<Element> id = find_identity(a, tol)) return coeff_list(*id);
                 return std::nullopt;
             },
             py::arg("tol") = 1e-8)
        .def("change_of_basis",
             [](const Algebra& a, const std::vector<std::vector<double>>& p) {
                 return change_of_basis(a, matrix_from_rows(p));
             },
             py::arg("p"))
        .def("__repr__", [](const Algebra& a) {
            return "<Algebra " + (a.name().empty() ? "dim " + std::to_string(a.dim()) : a.name()) +
                   ">";
        });

    m.def("catalog", &catalog, py::arg("name"));
    m.def("catalog_names", &catalog_names);
    m.def("clifford", &clifford, py::arg("p"), py::arg("q"));
    m.def("cayley_dickson_chain", &cayley_dickson_chain, py::arg("gammas"));
    m.def("new_algebra",
          [](int dim, const std::vector<double>& constants, const std::vector<std::string>& labels,
             const std::string& name) { return new_algebra(dim, constants, labels, name); },
          py::arg("dim"), py::arg("constants"), py::arg("labels") = std::vector<std::string>{},
          py::arg("name") = std::string{});

    m.def("represent",
          [](const Algebra& a, int component, const std::vector<std::vector<double>>& coeffs) {
              const Representation rep = represent(a, component, functional_from_blocks(coeffs));
              py::dict d;
              py::list ys;
              for (const Element& y : rep.ys) ys.append(coeff_list(y));
              d["ys"] = std::move(ys);
              d["component"] = rep.component;
              d["residual"] = rep.residual;
              return d;
          },
          py::arg("algebra"), py::arg("component"), py::arg("coeffs"));
    m.def("verify_representation",
          [](const Algebra& a, int component, const std::vector<std::vector<double>>& ys,
             const std::vector<std::vector<double>>& coeffs, int samples, std::uint64_t seed) {
              Representation rep;
              rep.component = component;
              rep.residual = 0.0;
              for (const std::vector<double>& y : ys) rep.ys.push_back(a.element(y));
              return verify_representation(a, rep, functional_from_blocks(coeffs), samples, seed);
          },
          py::arg("algebra"), py::arg("component"), py::arg("ys"), py::arg("coeffs"),
          py::arg("samples") = 200, py::arg("seed") = 0);

    py::class_<VMlp>(m, "VMlp")
        .def_property_readonly("algebra", &VMlp::algebra)
        .def_property_readonly("n_inputs", &VMlp::n_inputs)
        .def_property_readonly("n_hidden", &VMlp::n_hidden)
        .def_property_readonly("output_mode",
                               [](const VMlp& net) { return output_mode_name(net.output_mode()); })
        .def_property_readonly("activation",
                               [](const VMlp& net) { return activation_name(net.activation()); })
        .def_property_readonly("params",
                               [](const VMlp& net) {
                                   return std::vector<double>(net.params().begin(),
                                                              net.params().end());
                               })
        .def("set_params",
             [](VMlp& net, const std::vector<double>& values) {
                 if (values.size() != net.param_count())
                     throw ValidationError("set_params: expected " +
                                           std::to_string(net.param_count()) + " values");
                 std::copy(values.begin(), values.end(), net.params().begin());
             },
             py::arg("values"))
        .def("forward", [](const VMlp& net, const std::vector<std::vector<double>>& xs) {
            std::vector<Element> inputs;
            inputs.reserve(xs.size());
            for (const std::vector<double>& x : xs) inputs.push_back(net.algebra().element(x));
            return coeff_list(net.forward(inputs));
        });

    m.def("init_vmlp",
          [](const Algebra& a, int n_inputs, int n_hidden, const std::string& mode,
             const std::string& act, std::uint64_t seed) {
              return VMlp::init(a, n_inputs, n_hidden, output_mode_from_name(mode),
                                activation_from_name(act), seed);
          },
          py::arg("algebra"), py::arg("n_inputs"), py::arg("n_hidden"),
          py::arg("output_mode") = "scalar", py::arg("activation") = "relu", py::arg("seed") = 0);

    m.def("save_checkpoint", &save_checkpoint, py::arg("net"), py::arg("path"));
    m.def("load_checkpoint", &load_checkpoint, py::arg("path"));

    m.def("eval_target",
          [](const std::string& name, const Algebra& a, const std::vector<double>& x) {
              return coeff_list(eval_target(name, a.element(x)));
          },
          py::arg("name"), py::arg("algebra"), py::arg("x"));

    m.def("train",
          [](const Algebra& a, const std::string& target, int hidden, const std::string& mode,
             const std::string& act, std::int64_t samples, int epochs, int batch, double lr,
             std::uint64_t seed) {
              TrainConfig config;
              config.target = target;
              config.hidden = hidden;
              config.output_mode = output_mode_from_name(mode);
              config.activation = activation_from_name(act);
              config.samples = samples;
              config.epochs = epochs;
              config.batch = batch;
              config.lr = lr;
              config.seed = seed;
              TrainResult result = train(a, config);
              std::vector<std::pair<int, double>> curve;
              curve.reserve(result.curve.size());
              for (const EpochRecord& rec : result.curve) curve.emplace_back(rec.epoch, rec.mse);
              return py::make_tuple(std::move(result.net), std::move(curve));
          },
          py::arg("algebra"), py::arg("target"), py::arg("hidden") = 128,
          py::arg("output_mode") = "scalar", py::arg("activation") = "relu",
          py::arg("samples") = 1024, py::arg("epochs") = 1000, py::arg("batch") = 64,
          py::arg("lr") = 1e-3, py::arg("seed") = 0);
}
