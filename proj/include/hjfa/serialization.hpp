#pragma once

#include <string_view>
#include <vector>

#include <json.hpp>

#include "hjfa/hyperelliptic.hpp"
#include "hjfa/quadratic_rank.hpp"

namespace hjfa::io {

using Json = nlohmann::ordered_json;

/// "0,1,-2/3" -> rationals
std::vector<Rational> parse_rational_list(std::string_view text);

Json certificate_to_json(const hyper::SplitHyperellipticCurve& curve, const hyper::PointCertificate& cert);

struct CertifiedPoint {
    hyper::SplitHyperellipticCurve curve;
    hyper::PointCertificate cert;
};

CertifiedPoint certificate_from_json(const Json& json);

Json family_to_json(const rank::EllipticCurveQ& curve, const rank::IndependentFamily& family);

struct FamilyDocument {
    rank::EllipticCurveQ curve;
    std::vector<rank::FamilyMember> members;
};

FamilyDocument family_from_json(const Json& json);

}  // namespace hjfa::io
