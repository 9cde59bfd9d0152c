#pragma once

#include <json.hpp>

#include <string>

#include "padq/confluence.hpp"
#include "padq/gamma.hpp"
#include "padq/profiles.hpp"
#include "padq/qcalc.hpp"

namespace padq {

using json = nlohmann::json;

// Exact rational expression: integers, + - * / ^ and parentheses ("1+3^2", "-1/2", "(2/3)^-2").
mpq_class parse_expr(const std::string& s);

// Rational to Q_p: exact when the p-free part of the denominator is 1, otherwise modulo p^N.
Padic padic_from_rational(unsigned p, const mpq_class& q, std::int64_t N);
Padic parse_scalar(const std::string& s, unsigned p, std::int64_t N);

// {"p", "v": int|"inf", "m": decimal string, "N": int|"exact"}
json to_json(const Padic& x);
json to_json(const LogRadius& r);
json to_json(const Series& f);
json to_json(const SeriesMatrix& m);
json to_json(const NewtonPolygon& np);
json to_json(const RadiusBracket& b);
json to_json(const Region& r);
json to_json(const CompatibilityCertificate& c);
json to_json(const SegmentProfile& prof);
json to_json(const ConfluenceResult& r);
json to_json(const GammaSeries& gs);
json to_json(const G0Series& g0);
json to_json(const LValueTable& t);
json to_json(const SumIdentityCheck& c);
json to_json(const FunctionalResidual& r);

// Readers report the JSON path of the offending value in the Parse error.
// A scalar is an expression string, an integer, or the object encoding above.
Padic scalar_from_json(const json& j, unsigned p, std::int64_t N, const std::string& path = "");
LogRadius radius_from_json(const json& j, const std::string& path = "");
// A series is an object {"coeffs", "M"?, "center"?, "min_index"?}, a bare coefficient array, or a scalar.
Series series_from_json(const json& j, unsigned p, std::int64_t N, const std::string& path = "");
SeriesMatrix matrix_from_json(const json& j, unsigned p, std::int64_t N, const std::string& path = "");
Region region_from_json(const json& j, unsigned p, std::int64_t N, const std::string& path = "");

// {"p", "G": [[series]], "region"?}
DiffSystem system_from_json(const json& j, std::int64_t N);
json to_json(const DiffSystem& sys);
// {"p", "q", "h", "A": [[series]], "region"?}
DiffModule module_from_json(const json& j, std::int64_t N);
json to_json(const DiffModule& mod);

json parse_json_text(const std::string& text, const std::string& what);

}  // namespace padq
