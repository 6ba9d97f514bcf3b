#pragma once

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

#include "bautinlab/bautin.hpp"
#include "bautinlab/bounds.hpp"
#include "bautinlab/diophantine.hpp"
#include "bautinlab/series.hpp"
#include "bautinlab/zero_oracle.hpp"

namespace bautinlab {

using Json = nlohmann::ordered_json;

inline Json rat_to_json(const Rat& x) {
    auto [n, d] = rat_strings(x);
    return Json::array({n, d});
}

inline Rat rat_from_json(const Json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_array() && j.size() == 2)
        return make_rat(parse_int(j[0].get<std::string>()), parse_int(j[1].get<std::string>()));
    throw std::invalid_argument("expected a rational as [\"num\",\"den\"], string, or integer");
}

inline Json series_to_json(const ExactSeries& f) {
    Json j;
    Json coeffs = Json::array();
    for (const Rat& c : f.coeffs) coeffs.push_back(rat_to_json(c));
    j["coeffs"] = std::move(coeffs);
    j["radius"] = rat_to_json(f.radius);
    j["bound"] = rat_to_json(f.bound);
    if (f.origin_value_zero) j["origin_value_zero"] = true;
    return j;
}

inline ExactSeries series_from_json(const Json& j) {
    ExactSeries f;
    if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
        throw std::invalid_argument("series JSON needs a nonempty \"coeffs\" array");
    for (const auto& c : j["coeffs"]) f.coeffs.push_back(rat_from_json(c));
    if (j.contains("radius")) f.radius = rat_from_json(j["radius"]);
    if (j.contains("bound")) f.bound = rat_from_json(j["bound"]);
    if (j.contains("origin_value_zero")) f.origin_value_zero = j["origin_value_zero"].get<bool>();
    f.validate();
    return f;
}

inline ExactSeries series_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open series file: " + path);
    Json j = Json::parse(in);
    return series_from_json(j);
}

inline Json family_to_json(const MonomialFamily& fam) {
    return Json{{"kind", fam.name()}, {"degree", fam.degree}, {"size", fam.size()}};
}

inline Json minor_to_json(const MinorResult& m) {
    Json j;
    j["value"] = rat_to_json(m.value);
    j["mode"] = m.mode == MinorMode::ExhaustiveMax ? "exhaustive-max" : "heuristic-nonzero";
    j["rows"] = m.row_set;
    j["cols"] = m.col_set;
    return j;
}

inline Json bautin_report_to_json(const BautinReport& r) {
    Json j;
    j["family"] = family_to_json(r.family);
    if (r.stalled()) {
        j["status"] = "stalled";
        Json kernel = Json::array();
        for (const auto& v : r.kernel) {
            Json kv = Json::array();
            for (const Rat& x : v) kv.push_back(rat_to_json(x));
            kernel.push_back(std::move(kv));
        }
        j["kernel"] = std::move(kernel);
    } else {
        j["status"] = "ok";
        j["b"] = *r.index;
    }
    j["sigma"] = r.sigma;
    j["rows_examined"] = r.rows_examined;
    Json trace = Json::array();
    for (auto [k, rk] : r.rank_trace) trace.push_back(Json::array({k, rk}));
    j["rank_trace"] = std::move(trace);
    return j;
}

inline Json bound_report_to_json(const BoundReport& r) {
    Json j;
    j["formula"] = r.formula;
    j["anchor"] = r.anchor;
    Json inputs = Json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    j["inputs"] = std::move(inputs);
    j["value"] = r.value;
    if (r.exact) j["exact"] = rat_to_json(r.exact_value);
    j["rounded"] = r.rounded;
    j["precision_digits"] = r.precision_digits;
    return j;
}

inline Json zero_count_to_json(const ZeroCount& z) {
    Json j;
    j["count"] = z.count;
    j["certified"] = z.certified();
    j["N"] = z.truncation_order;
    j["radius"] = rat_to_json(z.radius);
    j["margin"] = rat_double(z.margin);
    j["contour_panels"] = z.contour_panels;
    j["winding"] = z.winding;
    j["companion"] = z.companion;
    if (z.nudges > 0) j["radius_nudges"] = z.nudges;
    return j;
}

inline Json scan_report_to_json(const ScanReport& r) {
    Json j;
    j["T"] = r.T.get_str();
    j["N"] = r.truncation_order;
    j["enumerated"] = r.enumerated;
    Json cert = Json::array();
    for (const auto& [x, y] : r.certified) cert.push_back(Json{{"x", rat_to_json(x)}, {"y", rat_to_json(y)}});
    j["certified"] = std::move(cert);
    j["excluded"] = r.excluded;
    Json unres = Json::array();
    for (const auto& u : r.unresolved)
        unres.push_back(Json{{"x", rat_to_json(u.x)}, {"y", rat_to_json(u.y)}, {"width", rat_double(u.width)}});
    j["unresolved"] = std::move(unres);
    return j;
}

inline Json curve_poly_to_json(const CurvePolynomial& p) {
    Json j;
    j["family"] = p.family.name();
    j["degree"] = p.family.degree;
    Json lam = Json::array();
    for (const Rat& c : p.lambda) lam.push_back(rat_to_json(c));
    j["lambda"] = std::move(lam);
    return j;
}

inline CurvePolynomial curve_poly_from_json(const Json& j) {
    CurvePolynomial p;
    p.family = parse_family(j.at("family").get<std::string>(), j.at("degree").get<int>());
    for (const auto& c : j.at("lambda")) p.lambda.push_back(rat_from_json(c));
    p.validate();
    return p;
}

}  // namespace bautinlab
