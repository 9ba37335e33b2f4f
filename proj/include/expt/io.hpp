#pragma once

#include <string>

#include <json.hpp>

#include "expt/domain.hpp"
#include "expt/herm.hpp"
#include "expt/poly.hpp"

namespace expt {

using json = nlohmann::json;

/// Parses "a+bi", "a-bi", "a", "bi", "i", "-i" with optional spaces.
/// Throws ParseError.
cplx parse_complex(const std::string& s);
/// 17 significant digits.
std::string format_double(double x);
std::string format_complex(cplx z);

json to_json(cplx z);
cplx complex_from_json(const json& j);

/// [[re, im], ...] in ascending degree.
json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j);

/// {"d": d, "coeff": [[[re, im], ...], ...]}, row i = power of z.
json herm_to_json(const HermPoly2& p);
HermPoly2 herm_from_json(const json& j);

/// {"num": [...], "den": [...]}; a bare polynomial array is also accepted.
RationalFn rational_from_json(const json& j);

DomainSpec domain_from_json(const json& j);
json domain_to_json(const DomainSpec& d);
DomainSpec load_domain(const std::string& path);
json load_json(const std::string& path);

}  // namespace expt
