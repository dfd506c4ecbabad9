#include "qwave/io.hpp"

#include <charconv>
#include <limits>

namespace qwave::io {

using quasiwave::Family;
using quasiwave::LocalPoly;
using quasiwave::ParseError;

json to_json(const FieldSpec& f) { return {{"family", quasiwave::family_name(f.family())}, {"a", f.a()}}; }

FieldSpec field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j.contains("a")) throw ParseError("field needs family and a");
    return FieldSpec::make(quasiwave::parse_family(j.at("family").get<std::string>()), j.at("a").get<int>());
}

namespace {

json integer_to_json(const mpz_class& z) {
    if (z.fits_slong_p()) return static_cast<long>(z.get_si());
    return z.get_str();
}

mpz_class integer_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    if (j.is_string()) {
        mpz_class z;
        if (z.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad integer " + j.dump());
        return z;
    }
    throw ParseError("expected an integer, got " + j.dump());
}

json rational_to_json(const mpq_class& r) {
    return json::array({integer_to_json(r.get_num()), integer_to_json(r.get_den())});
}

mpq_class rational_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("expected [num, den], got " + j.dump());
    const mpz_class den = integer_from_json(j[1]);
    if (den == 0) throw ParseError("zero denominator");
    mpq_class r(integer_from_json(j[0]), den);
    r.canonicalize();
    return r;
}

}  // namespace

json to_json(const QuadRat& x) {
    json j = {{"p", rational_to_json(x.p())}, {"q", rational_to_json(x.q())}};
    if (x.bound()) j["field"] = to_json(*x.field());
    return j;
}

QuadRat quad_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("q")) throw ParseError("QuadRat needs p and q");
    const mpq_class p = rational_from_json(j.at("p"));
    const mpq_class q = rational_from_json(j.at("q"));
    if (j.contains("field")) return QuadRat(field_from_json(j.at("field")), p, q);
    if (sgn(q) != 0) throw ParseError("irrational QuadRat without a field");
    return QuadRat(p);
}

std::string canonical(const QuadRat& x) { return x.str(); }

QuadRat parse_canonical(std::string_view s, const FieldSpec& f) { return quasiwave::parse_quad(s, f); }

json to_json(const PiecewisePoly& f, const FieldSpec& field) {
    json breaks = json::array(), pieces = json::array(), fb = json::array(), fp = json::array();
    for (const auto& b : f.breaks()) {
        breaks.push_back(canonical(b));
        fb.push_back(b.to_double());
    }
    for (const auto& p : f.pieces()) {
        json c = json::array(), cf = json::array();
        for (const auto& v : p) {
            c.push_back(canonical(v));
            cf.push_back(v.to_double());
        }
        pieces.push_back(c);
        fp.push_back(cf);
    }
    return {{"field", to_json(field)},
            {"first_index", f.first_index()},
            {"breaks", breaks},
            {"pieces", pieces},
            {"float", {{"breaks", fb}, {"pieces", fp}}}};
}

PiecewisePoly piecewise_from_json(const json& j) {
    const FieldSpec f = field_from_json(j.at("field"));
    std::vector<QuadRat> breaks;
    for (const auto& b : j.at("breaks")) breaks.push_back(parse_canonical(b.get<std::string>(), f));
    std::vector<LocalPoly> pieces;
    for (const auto& p : j.at("pieces")) {
        LocalPoly c;
        for (const auto& v : p) c.push_back(parse_canonical(v.get<std::string>(), f));
        pieces.push_back(std::move(c));
    }
    if (pieces.empty()) return {};
    return PiecewisePoly(std::move(breaks), std::move(pieces), j.value("first_index", 0));
}

json to_json(const quasiwave::RefinementTable& t, const FieldSpec& field) {
    json terms = json::array();
    for (const auto& term : t.terms) {
        json c = {{"basis", term.basis},
                  {"node", term.node},
                  {"translate", canonical(term.translate)},
                  {"factor", canonical(term.coeff.factor)},
                  {"radicand", canonical(term.coeff.radicand)},
                  {"value", term.coeff.to_double()}};
        terms.push_back(c);
    }
    return {{"field", to_json(field)}, {"target", t.target}, {"dilation", canonical(t.dilation)}, {"terms", terms}};
}

quasiwave::RefinementTable refinement_from_json(const json& j) {
    const FieldSpec f = field_from_json(j.at("field"));
    quasiwave::RefinementTable t;
    t.target = j.at("target").get<std::string>();
    t.dilation = parse_canonical(j.at("dilation").get<std::string>(), f);
    for (const auto& c : j.at("terms")) {
        quasiwave::RefinementTerm term;
        term.basis = c.at("basis").get<std::string>();
        term.node = c.at("node").get<int>();
        term.translate = parse_canonical(c.at("translate").get<std::string>(), f);
        term.coeff = {parse_canonical(c.at("factor").get<std::string>(), f),
                      parse_canonical(c.at("radicand").get<std::string>(), f)};
        t.terms.push_back(std::move(term));
    }
    return t;
}

std::string format_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string CsvWriter::quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << quote(fields[i]);
    }
    out_ << "\r\n";
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty()) throw ParseError("quote inside an unquoted CSV field");
                quoted = any = true;
                break;
            case ',':
                row.push_back(std::move(field));
                field.clear();
                any = true;
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                [[fallthrough]];
            case '\n':
                row.push_back(std::move(field));
                field.clear();
                rows.push_back(std::move(row));
                row.clear();
                any = false;
                break;
            default:
                field += c;
                any = true;
        }
    }
    if (quoted) throw ParseError("unterminated quoted CSV field");
    if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qwave::io
