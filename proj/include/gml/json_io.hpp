#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gml/curve.hpp"
#include "gml/error.hpp"
#include "gml/multiquad.hpp"
#include "gml/scalar.hpp"

namespace gml {

using Json = nlohmann::ordered_json;

// Rationals as "p/q", complex numbers as [re, im].
std::string rational_string(const Rational& q);
Json to_json(const Rational& q);
Json to_json(const Complex& z);
// a rational, or {"radicands", "terms": [{"radicals", "coeff"}], "approx"} in the radical extension
Json to_json(const MultiQuad& x);
template <class F>
Json to_json(const std::vector<F>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}
template <class F, std::size_t N>
Json to_json(const std::array<F, N>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}
Json to_json(const CurveParams& c);

std::string snake_case(const std::string& name);

// Accepts "p/q" strings, decimal strings and JSON integers or decimals; decimals are read exactly.
Rational rational_from_json(const Json& j);
// Accepts [re, im] or a real number.
Complex complex_from_json(const Json& j);
CurveParams params_from_json(const Json& j);
// "2,3,5" or "[2,3,5]"
CurveParams parse_params(const std::string& text);
Json parse_json_text(const std::string& text);

} // namespace gml
