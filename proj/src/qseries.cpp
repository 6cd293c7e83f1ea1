#include "sz/qseries.hpp"

#include <json.hpp>

namespace sz {

namespace {

using nlohmann::json;

json series_header(const CoefficientDomain& d, std::int64_t val, std::int64_t trunc) {
    json j;
    j["domain"] = d.name();
    if (d.kind == DomainKind::big_float) j["precision_bits"] = d.precision_bits;
    j["valuation"] = val;
    j["truncation"] = trunc;
    return j;
}

} // namespace

FloatSeries to_float(const ExactSeries& a, unsigned precision_bits) {
    CoefficientDomain d = CoefficientDomain::floating(precision_bits);
    PrecisionGuard guard(precision_bits);
    if (a.is_zero()) return FloatSeries::zero(d, a.known_until());
    std::vector<BigFloat> c;
    c.reserve(a.coeffs().size());
    for (const auto& x : a.coeffs()) c.emplace_back(x);
    return FloatSeries(d, a.valuation(), std::move(c));
}

std::string to_json_string(const ExactSeries& a) {
    json j = series_header(a.domain(), a.valuation(), a.truncation());
    auto& arr = j["coeffs"] = json::array();
    for (const auto& x : a.coeffs()) arr.push_back(x.str());
    return j.dump();
}

std::string to_json_string(const FloatSeries& a) {
    json j = series_header(a.domain(), a.valuation(), a.truncation());
    auto& arr = j["coeffs"] = json::array();
    for (const auto& x : a.coeffs()) arr.push_back(decimal_string(x));
    return j.dump();
}

ExactSeries exact_series_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("domain").get<std::string>() != "exact-rational")
        throw std::invalid_argument("not an exact-rational series");
    std::int64_t val = j.at("valuation").get<std::int64_t>();
    std::int64_t trunc = j.at("truncation").get<std::int64_t>();
    std::vector<Rational> c;
    for (const auto& s : j.at("coeffs")) c.emplace_back(s.get<std::string>());
    if (c.empty()) return ExactSeries::zero(CoefficientDomain::exact(), trunc);
    return ExactSeries(CoefficientDomain::exact(), val, std::move(c));
}

FloatSeries float_series_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("domain").get<std::string>() != "big-float")
        throw std::invalid_argument("not a big-float series");
    unsigned bits = j.at("precision_bits").get<unsigned>();
    PrecisionGuard guard(bits);
    std::int64_t val = j.at("valuation").get<std::int64_t>();
    std::int64_t trunc = j.at("truncation").get<std::int64_t>();
    std::vector<BigFloat> c;
    for (const auto& s : j.at("coeffs")) c.emplace_back(s.get<std::string>());
    if (c.empty()) return FloatSeries::zero(CoefficientDomain::floating(bits), trunc);
    return FloatSeries(CoefficientDomain::floating(bits), val, std::move(c));
}

} // namespace sz
