#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tmesh/conformality.hpp"
#include "tmesh/report.hpp"

namespace py = pybind11;
using namespace tmesh;

namespace {

// Component documents carry "edges"; anything else is read as a mesh.
GT load_gt(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception&) {
        throw ParseError("malformed JSON");
    }
    if (doc.contains("edges")) return parse_gt(text);
    return to_generalized(t_component(parse_mesh(text)));
}

ExactMatrix matrix_from(const std::vector<std::vector<std::string>>& rows)
{
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    ExactMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw DimensionError("ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_rational(rows[r][c]);
    }
    return m;
}

}  // namespace

PYBIND11_MODULE(_tmesh, m)
{
    m.doc() = "Exact spline-space dimension analysis over T-meshes";

    auto base = py::register_exception<Error>(m, "TMeshError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<InvalidGeometry>(m, "InvalidGeometry", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<NotDiagonalizable>(m, "NotDiagonalizable", base.ptr());

    m.def("validate", [](const std::string& mesh) {
        ValidationReport rep;
        try {
            rep = validate(parse_mesh_unchecked(mesh));
        } catch (const ParseError& e) {
            rep.issues.push_back({"schema", e.what()});
        }
        return validation_report(rep).dump();
    });
    m.def("analyze", [](const std::string& mesh, std::size_t d, bool dump_matrix) {
        return analyze_report(parse_mesh(mesh), d, dump_matrix).dump();
    }, py::arg("mesh"), py::arg("degree"), py::arg("dump_matrix") = false);
    m.def("dimension", [](const std::string& mesh, std::size_t d) {
        return dimension_report(parse_mesh(mesh), d).dump();
    });
    m.def("partition", [](const std::string& input, std::size_t d) {
        return partition_report(load_gt(input), d).dump();
    });
    m.def("isomorphic", [](const std::string& a, const std::string& b) {
        return isomorphism_json(structurally_isomorphic(parse_mesh(a), parse_mesh(b))).dump();
    });
    m.def("similar", [](const std::string& a, const std::string& b, std::size_t budget) {
        return similarity_json(structurally_similar(load_gt(a), load_gt(b), budget)).dump();
    }, py::arg("a"), py::arg("b"), py::arg("budget") = 1000000);
    m.def("witness", [](const std::string& input, std::size_t d, std::uint64_t seed, std::size_t budget,
                        std::optional<std::size_t> target_edge, std::optional<std::string> target_coord) {
        WitnessOptions opts;
        opts.seed = seed;
        opts.budget = budget;
        if (target_edge.has_value() != target_coord.has_value())
            throw PreconditionError("target_edge and target_coord go together");
        if (target_edge) opts.target = WitnessTarget{*target_edge, parse_rational(*target_coord)};
        return witness_report(witness_search(load_gt(input), d, opts)).dump();
    }, py::arg("input"), py::arg("degree"), py::arg("seed"), py::arg("budget") = 1000,
       py::arg("target_edge") = py::none(), py::arg("target_coord") = py::none());
    m.def("sample", [](const std::string& input, std::size_t d, std::size_t n, std::uint64_t seed) {
        return histogram_json(sample_similar(load_gt(input), d, n, seed)).dump();
    });
    m.def("random_mesh", [](std::uint64_t seed, std::size_t steps, std::size_t degree, std::size_t lattice) {
        return mesh_to_json(random_mesh(seed, {steps, degree, lattice}));
    }, py::arg("seed"), py::arg("steps") = 5, py::arg("degree") = 0, py::arg("lattice") = 12);
    m.def("render_svg", [](const std::string& mesh) { return render_svg(parse_mesh(mesh)); });
    m.def("rank", [](const std::vector<std::vector<std::string>>& rows) { return rank(matrix_from(rows)); });
    m.def("det", [](const std::vector<std::vector<std::string>>& rows) { return to_string(det(matrix_from(rows))); });
}
