#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "qwave/io.hpp"

namespace qwave {

/// Reference data could not be read or parsed (exit code 3).
class GoldenError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Golden {
    std::string origin;
    io::json data;
    quasiwave::FieldSpec field;

    /// Exact value of an expression entry.
    quasiwave::QuadRat value(const io::json& expr) const;
};

/// The reference tables compiled into the binary.
std::string_view embedded_golden_text();

/// Parses JSON with comments; errors carry line and column.
Golden load_golden(std::string_view text, std::string origin);
Golden load_golden_file(const std::string& path);

}  // namespace qwave
