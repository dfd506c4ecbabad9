#include "qwave/golden.hpp"

#include <fstream>
#include <sstream>

namespace qwave {

namespace {

std::string position(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

quasiwave::QuadRat Golden::value(const io::json& expr) const {
    if (!expr.is_string()) throw GoldenError(origin + ": expected an expression string, got " + expr.dump());
    try {
        return quasiwave::parse_quad(expr.get<std::string>(), field);
    } catch (const quasiwave::Error& e) {
        throw GoldenError(origin + ": bad expression \"" + expr.get<std::string>() + "\": " + e.what());
    }
}

Golden load_golden(std::string_view text, std::string origin) {
    Golden g;
    g.origin = std::move(origin);
    try {
        g.data = io::json::parse(text.begin(), text.end(), nullptr, true, true);
    } catch (const io::json::parse_error& e) {
        throw GoldenError(g.origin + ": " + position(text, e.byte) + ": " + e.what());
    }
    try {
        if (!g.data.is_object() || g.data.value("version", 0) != 1)
            throw GoldenError(g.origin + ": missing or unsupported \"version\"");
        g.field = io::field_from_json(g.data.at("field"));
        for (const char* key : {"fibonacci_points", "zeta_pieces", "wavelet_refinement", "scaled_norms",
                                "scaling_equations"})
            if (!g.data.contains(key)) throw GoldenError(g.origin + ": missing section \"" + key + "\"");
    } catch (const io::json::exception& e) {
        throw GoldenError(g.origin + ": " + e.what());
    } catch (const quasiwave::Error& e) {
        throw GoldenError(g.origin + ": " + e.what());
    }
    return g;
}

Golden load_golden_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GoldenError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_golden(ss.str(), path);
}

}  // namespace qwave
