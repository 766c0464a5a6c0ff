#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hjfa/error.hpp"
#include "hjfa/field.hpp"
#include "hjfa/hales_jewett.hpp"
#include "hjfa/hyperelliptic.hpp"
#include "hjfa/quadratic_rank.hpp"
#include "hjfa/serialization.hpp"

namespace py = pybind11;
using namespace hjfa;

namespace {

// Big integers cross the boundary as decimal strings; the Python layer
// converts with int()/str().

std::vector<int> square_class_bits(const std::string& field, const std::string& x) {
    return square_class(FieldTag::parse(field), parse_rational(x)).to_vector();
}

std::vector<std::string> group_representatives(const std::string& field) {
    std::vector<std::string> out;
    for (const auto& r : square_class_group(FieldTag::parse(field)).representatives) out.push_back(to_string(r));
    return out;
}

std::optional<std::pair<std::string, hj::ColorId>> find_line(unsigned m, unsigned n,
                                                             const std::vector<hj::ColorId>& colors) {
    if (colors.size() != hj::cube_size(m, n)) throw Error(ErrorCode::precondition, "expected m^N colors");
    hj::ColoringTable table{m, n, 0, colors};
    for (auto c : colors) table.k = std::max(table.k, c + 1);
    auto line = hj::find_monochromatic_line(table.as_coloring());
    if (!line) return std::nullopt;
    return std::make_pair(line->line.to_string(m), line->color);
}

std::optional<std::vector<hj::ColorId>> line_free(unsigned m, unsigned k, unsigned n) {
    auto table = hj::line_free_coloring(m, k, n);
    if (!table) return std::nullopt;
    return table->colors;
}

std::string points_json(const std::string& field_text, const std::string& roots, std::size_t count, unsigned n_max,
                        std::size_t max_c) {
    auto field = FieldTag::parse(field_text);
    hyper::SplitHyperellipticCurve curve(field, io::parse_rational_list(roots));
    auto stream = hyper::default_c_stream(field, max_c);
    auto result = hyper::enumerate_points(curve, stream, count, n_max);
    io::Json certs = io::Json::array();
    for (const auto& cert : result.certificates) certs.push_back(io::certificate_to_json(curve, cert));
    return certs.dump();
}

std::pair<bool, std::string> verify_json(const std::string& text) {
    auto [curve, cert] = io::certificate_from_json(io::Json::parse(text));
    auto v = hyper::verify_certificate(curve, cert);
    if (v) return {true, ""};
    return {false, std::string(hyper::to_string(*v.failure)) + ": " + v.detail};
}

rank::EllipticCurveQ curve_from(const std::vector<std::string>& roots) {
    if (roots.size() != 3) throw Error(ErrorCode::parse, "need exactly three roots");
    return rank::EllipticCurveQ({parse_integer(roots[0]), parse_integer(roots[1]), parse_integer(roots[2])});
}

std::string family_json(const std::vector<std::string>& roots, std::size_t count) {
    auto curve = curve_from(roots);
    return io::family_to_json(curve, rank::build_independent_family(curve, count)).dump();
}

bool verify_family_json(const std::string& text) {
    auto doc = io::family_from_json(io::Json::parse(text));
    return rank::verify_family(doc.curve, doc.members).ok;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of hjfa";

    auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ResourceLimitError>(m, "ResourceLimitError", error.ptr());

    m.def("legendre", [](const std::string& a, std::uint64_t p) { return legendre(parse_integer(a), p); });
    m.def("sqrt_mod_p", [](const std::string& a, std::uint64_t p) { return sqrt_mod_p(parse_integer(a), p); });
    m.def("hensel_sqrt",
          [](const std::string& r, std::uint64_t p, int k) { return hensel_sqrt(parse_rational(r), p, k).get_str(); });
    m.def("square_class", &square_class_bits);
    m.def("square_class_group", &group_representatives);

    m.def("hj_number", [](unsigned mm, unsigned k, unsigned cap) { return hj::hj_number_exact(mm, k, cap); });
    m.def("line_free_coloring", &line_free);
    m.def("find_monochromatic_line", &find_line);
    m.def("template_count", [](unsigned mm, unsigned n) { return hj::enumerate_templates(mm, n).size(); });

    m.def("points_json", &points_json);
    m.def("verify_certificate_json", &verify_json);

    m.def("threshold_constant", &rank::threshold_constant);
    m.def("count_points", [](const std::vector<std::string>& roots, std::uint64_t p) {
        return rank::count_points(curve_from(roots), p);
    });
    m.def("count_points_ext", [](const std::vector<std::string>& roots, std::uint64_t p) {
        return rank::count_points_ext(curve_from(roots), p);
    });
    m.def("nonresidue_x", [](const std::vector<std::string>& roots, std::uint64_t p) {
        return rank::nonresidue_x(curve_from(roots), p);
    });
    m.def("squarefree_part", [](const std::string& r) { return rank::squarefree_part(parse_rational(r)).get_str(); });
    m.def("family_json", &family_json);
    m.def("verify_family_json", &verify_family_json);
}
