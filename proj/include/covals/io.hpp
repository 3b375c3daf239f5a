#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "covals/boundary.hpp"
#include "covals/dsl.hpp"
#include "covals/greedy.hpp"
#include "covals/matrix.hpp"
#include "covals/spectrum.hpp"

namespace covals::io {

using nlohmann::json;

/// Complex literal in the expression grammar: "1", "-2.5i", "1+2i", "3-0.5i".
Complex parse_complex(std::string_view text);
/// Shortest text that parses back to the same value.
std::string format_complex(Complex z);

/// {"rows": [[entry, ...], ...]}; entries are complex-literal strings or JSON
/// numbers. InputError names `source` and the offending row/column.
CMatrix matrix_from_json(const json& doc, std::string_view source = "<matrix>");
CMatrix parse_matrix(std::string_view text, std::string_view source = "<matrix>");
CMatrix load_matrix(const std::string& path);
json matrix_to_json(const CMatrix& a);

json complex_to_json(Complex z);  // {"re": .., "im": ..}
Complex complex_from_json(const json& j);

json to_json(const CovalExpansion& e);
CovalExpansion expansion_from_json(const json& j);

json to_json(const SecondarySpectrum& s);
json to_json(const BoundaryTrace& t);
json to_json(const dsl::Envelope& e);
json to_json(const RemainderRoots& r);

/// Header theta,p,x,y; '.' decimal separator, 17 significant digits.
std::string boundary_csv(const BoundaryTrace& t);
/// Header branch,theta,p,x,y.
std::string envelope_csv(const dsl::Envelope& e);

/// Locale-independent shortest round-trip formatting.
std::string format_double(double v);

}  // namespace covals::io
