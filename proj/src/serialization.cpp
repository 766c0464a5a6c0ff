#include "hjfa/serialization.hpp"

#include "hjfa/error.hpp"

namespace hjfa::io {

namespace {

Json integer_json(const Integer& v) {
    if (mpz_fits_slong_p(v.get_mpz_t()) != 0) return Json(v.get_si());
    return Json(v.get_str());
}

Integer integer_from(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) return parse_integer(j.get<std::string>());
    throw Error(ErrorCode::parse, "expected an integer, got " + j.dump());
}

Rational rational_from(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(j.get<long>()));
    throw Error(ErrorCode::parse, "expected a 'num/den' string, got " + j.dump());
}

std::uint64_t u64_from(const Json& j) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long>() >= 0))
        throw Error(ErrorCode::parse, "expected a non-negative integer, got " + j.dump());
    return j.get<std::uint64_t>();
}

const Json& field_of(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::parse, std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        auto token = text.substr(start, comma - start);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        out.push_back(parse_rational(token));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

Json certificate_to_json(const hyper::SplitHyperellipticCurve& curve, const hyper::PointCertificate& cert) {
    Json j;
    j["field"] = curve.field().to_string();
    Json roots = Json::array();
    for (const auto& a : curve.roots()) roots.push_back(to_string(a));
    j["roots"] = std::move(roots);
    j["c"] = to_string(cert.c);
    j["N"] = cert.n;
    j["template"] = cert.line.to_string(curve.degree());
    Json stars = Json::array();
    for (auto i : cert.star_set) stars.push_back(i + 1);
    j["star_set"] = std::move(stars);
    j["r"] = to_string(cert.r);
    j["s"] = to_string(cert.s);
    j["class_bits"] = cert.line_class.to_vector();
    j["x"] = to_string(cert.x);
    j["y"] = to_string(cert.y);
    if (cert.y_precision) j["y_precision"] = *cert.y_precision;
    return j;
}

CertifiedPoint certificate_from_json(const Json& j) {
    try {
        auto field = FieldTag::parse(field_of(j, "field").get<std::string>());
        std::vector<Rational> roots;
        for (const auto& a : field_of(j, "roots")) roots.push_back(rational_from(a));
        hyper::SplitHyperellipticCurve curve(field, std::move(roots));

        hyper::PointCertificate cert;
        cert.c = rational_from(field_of(j, "c"));
        cert.n = static_cast<unsigned>(u64_from(field_of(j, "N")));
        cert.line = hj::LineTemplate::parse(field_of(j, "template").get<std::string>());
        for (const auto& i : field_of(j, "star_set")) {
            auto idx = u64_from(i);
            if (idx < 1) throw Error(ErrorCode::parse, "star_set indices start at 1");
            cert.star_set.push_back(static_cast<unsigned>(idx - 1));
        }
        cert.r = rational_from(field_of(j, "r"));
        cert.s = rational_from(field_of(j, "s"));
        std::uint8_t bits = 0;
        const auto& class_bits = field_of(j, "class_bits");
        if (!class_bits.is_array() || class_bits.empty() || class_bits.size() > 8)
            throw Error(ErrorCode::parse, "class_bits must be a nonempty array");
        for (std::size_t i = 0; i < class_bits.size(); ++i) {
            auto bit = u64_from(class_bits[i]);
            if (bit > 1) throw Error(ErrorCode::parse, "class_bits entries must be 0 or 1");
            bits |= static_cast<std::uint8_t>(bit << i);
        }
        cert.line_class = SquareClass(bits, static_cast<unsigned>(class_bits.size()));
        cert.x = rational_from(field_of(j, "x"));
        cert.y = rational_from(field_of(j, "y"));
        if (j.contains("y_precision")) cert.y_precision = static_cast<int>(u64_from(j.at("y_precision")));
        return {std::move(curve), std::move(cert)};
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse, std::string("malformed certificate: ") + e.what());
    }
}

Json family_to_json(const rank::EllipticCurveQ& curve, const rank::IndependentFamily& family) {
    Json j;
    j["kind"] = "independent-family";
    Json roots = Json::array();
    for (const auto& a : curve.roots()) roots.push_back(integer_json(a));
    j["roots"] = std::move(roots);
    Json points = Json::array();
    for (const auto& m : family.members) {
        Json p;
        p["p_steer"] = m.p_steer;
        p["x_target"] = m.x_target;
        p["c"] = integer_json(m.c);
        p["d"] = integer_json(m.d);
        p["x"] = to_string(m.point.x);
        p["w"] = to_string(m.point.w);
        p["torsion_bound"] = Json{{"B", integer_json(m.torsion.bound)}, {"p1", m.torsion.p1}, {"p2", m.torsion.p2}};
        Json multiples = Json::array();
        for (const auto& k : m.multiples_checked) multiples.push_back(integer_json(k));
        p["multiples_checked"] = std::move(multiples);
        points.push_back(std::move(p));
    }
    j["points"] = std::move(points);
    j["complete"] = !family.diagnostic.has_value();
    if (family.diagnostic) j["diagnostic"] = *family.diagnostic;
    return j;
}

FamilyDocument family_from_json(const Json& j) {
    try {
        const auto& roots = field_of(j, "roots");
        if (!roots.is_array() || roots.size() != 3) throw Error(ErrorCode::parse, "family needs exactly three roots");
        rank::EllipticCurveQ curve({integer_from(roots[0]), integer_from(roots[1]), integer_from(roots[2])});
        std::vector<rank::FamilyMember> members;
        for (const auto& p : field_of(j, "points")) {
            rank::FamilyMember m;
            m.p_steer = u64_from(field_of(p, "p_steer"));
            m.x_target = u64_from(field_of(p, "x_target"));
            m.c = integer_from(field_of(p, "c"));
            m.d = integer_from(field_of(p, "d"));
            m.point = rank::QuadPoint::affine(rational_from(field_of(p, "x")), rational_from(field_of(p, "w")));
            const auto& tb = field_of(p, "torsion_bound");
            m.torsion.bound = integer_from(field_of(tb, "B"));
            m.torsion.p1 = u64_from(field_of(tb, "p1"));
            m.torsion.p2 = u64_from(field_of(tb, "p2"));
            for (const auto& k : field_of(p, "multiples_checked")) m.multiples_checked.push_back(integer_from(k));
            members.push_back(std::move(m));
        }
        return {std::move(curve), std::move(members)};
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse, std::string("malformed family: ") + e.what());
    }
}

}  // namespace hjfa::io
