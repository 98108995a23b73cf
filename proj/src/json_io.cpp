#include "gml/json_io.hpp"

#include <cctype>
#include <sstream>

namespace gml {

std::string rational_string(const Rational& q) {
    std::ostringstream os;
    os << numerator(q) << "/" << denominator(q);
    return os.str();
}

Json to_json(const Rational& q) { return rational_string(q); }

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const MultiQuad& x) {
    if (x.is_rational()) return to_json(x.rational_part());
    Json out = Json::object();
    Json rad = Json::array(), terms = Json::array();
    const auto& sys = x.system();
    if (sys)
        for (std::size_t i = 0; i < sys->radicands.size(); ++i) {
            Json r = Json::object();
            r["radicand"] = to_json(sys->radicands[i]);
            r["sign"] = sys->signs[i];
            rad.push_back(r);
        }
    const auto& c = x.coeffs();
    for (std::size_t m = 0; m < c.size(); ++m) {
        if (c[m].is_zero()) continue;
        Json idx = Json::array();
        for (int i = 0; i < MultiQuad::kMax; ++i)
            if (m >> i & 1) idx.push_back(i);
        terms.push_back(Json::object({{"radicals", idx}, {"coeff", to_json(c[m])}}));
    }
    out["radicals"] = rad;
    out["terms"] = terms;
    out["approx"] = to_json(x.to_complex());
    return out;
}

std::string snake_case(const std::string& name) {
    std::string out;
    for (char ch : name) {
        if (std::isupper(static_cast<unsigned char>(ch))) {
            if (!out.empty()) out += '_';
            out += char(std::tolower(static_cast<unsigned char>(ch)));
        } else {
            out += ch;
        }
    }
    return out;
}

Json to_json(const CurveParams& c) {
    Json out = Json::object();
    out["r"] = to_json(c.r);
    out["s"] = to_json(c.s);
    out["t"] = to_json(c.t);
    return out;
}

namespace {

Rational parse_decimal(const std::string& text) {
    std::string s = text;
    std::size_t e = s.find_first_of("eE");
    long exp10 = 0;
    if (e != std::string::npos) {
        exp10 = std::stol(s.substr(e + 1));
        s = s.substr(0, e);
    }
    bool neg = !s.empty() && s[0] == '-';
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s = s.substr(1);
    std::size_t dot = s.find('.');
    std::string digits = s;
    if (dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        exp10 -= long(s.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        raise(Errc::ParseError, "not a number: " + text);
    Rational out{Integer(digits)};
    Rational ten = 10;
    for (long k = 0; k < std::abs(exp10); ++k) out = exp10 > 0 ? out * ten : out / ten;
    return neg ? Rational(-out) : out;
}

} // namespace

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) return parse_decimal(j.dump());
    if (!j.is_string()) raise(Errc::ParseError, "expected a rational, got " + j.dump());
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return parse_decimal(s);
    Rational n = parse_decimal(s.substr(0, slash)), d = parse_decimal(s.substr(slash + 1));
    if (d == 0) raise(Errc::ParseError, "zero denominator in " + s);
    return n / d;
}

Complex complex_from_json(const Json& j) {
    if (j.is_array()) {
        if (j.size() != 2) raise(Errc::ParseError, "complex numbers are [re, im]");
        return {rational_from_json(j[0]).convert_to<double>(), rational_from_json(j[1]).convert_to<double>()};
    }
    return {rational_from_json(j).convert_to<double>(), 0.0};
}

CurveParams params_from_json(const Json& j) {
    if (j.is_array()) {
        if (j.size() != 3) raise(Errc::ParseError, "params need three entries");
        return CurveParams(rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2]));
    }
    if (!j.is_object() || !j.contains("r") || !j.contains("s") || !j.contains("t"))
        raise(Errc::ParseError, "params must be {\"r\",\"s\",\"t\"} or [r,s,t]");
    return CurveParams(rational_from_json(j["r"]), rational_from_json(j["s"]), rational_from_json(j["t"]));
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        raise(Errc::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

CurveParams parse_params(const std::string& text) {
    std::string t = text;
    if (t.empty() || t[0] != '[') {
        Json arr = Json::array();
        std::stringstream ss(t);
        std::string item;
        while (std::getline(ss, item, ',')) arr.push_back(item);
        return params_from_json(arr);
    }
    return params_from_json(parse_json_text(t));
}

} // namespace gml
