#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "quasiwave/piecewise.hpp"
#include "quasiwave/quadfield.hpp"
#include "quasiwave/refine.hpp"
#include "quasiwave/tiling.hpp"

namespace qwave::io {

using json = nlohmann::json;
using quasiwave::FieldSpec;
using quasiwave::PiecewisePoly;
using quasiwave::QuadRat;

/// {"family": "minus", "a": 1}
json to_json(const FieldSpec& f);
FieldSpec field_from_json(const json& j);

/// {"p": [num, den], "q": [num, den], "field": {...}}.  Parts that do not fit
/// in 64 bits are written as decimal strings; both forms are read back.
json to_json(const QuadRat& x);
QuadRat quad_from_json(const json& j);

/// Canonical text "p/q + r/s*b".
std::string canonical(const QuadRat& x);
QuadRat parse_canonical(std::string_view s, const FieldSpec& f);

/// Breaks and per-piece local coefficients as canonical strings, plus float
/// shadows for plotting.
json to_json(const PiecewisePoly& f, const FieldSpec& field);
PiecewisePoly piecewise_from_json(const json& j);

json to_json(const quasiwave::RefinementTable& t, const FieldSpec& field);
quasiwave::RefinementTable refinement_from_json(const json& j);

/// Shortest round-trip decimal of a double.
std::string format_double(double v);

/// RFC-4180 writer: fields with a comma, quote, CR or LF are quoted and
/// embedded quotes doubled; records end in CRLF.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void row(const std::vector<std::string>& fields);
    static std::string quote(std::string_view field);

private:
    std::ostream& out_;
};

/// RFC-4180 reader (accepts LF or CRLF record ends).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace qwave::io
