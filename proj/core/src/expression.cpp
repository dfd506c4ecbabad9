#include <cctype>

#include "quasiwave/quadfield.hpp"

namespace quasiwave {

namespace {

class Parser {
public:
    Parser(std::string_view text, const FieldSpec& field) : s_(text), field_(field) {}

    QuadRat parse() {
        QuadRat v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v.bound_to(field_);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) +
                         "\"");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_primary() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
               c == '(';
    }

    QuadRat expr() {
        QuadRat v = term();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                v += term();
            } else if (peek('-')) {
                ++pos_;
                v -= term();
            } else {
                return v;
            }
        }
    }

    QuadRat term() {
        QuadRat v = unary();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                v *= unary();
            } else if (peek('/')) {
                ++pos_;
                QuadRat d = unary();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else if (starts_primary()) {
                v *= power();
            } else {
                return v;
            }
        }
    }

    QuadRat unary() {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    QuadRat power() {
        QuadRat base = primary();
        if (peek('^')) {
            ++pos_;
            QuadRat e = unary();
            if (!e.is_rational() || e.p().get_den() != 1 || !e.p().get_num().fits_slong_p())
                fail("exponent must be a small integer");
            long k = e.p().get_num().get_si();
            if (base.is_zero() && k < 0) fail("division by zero");
            return base.bound_to(field_).pow(k);
        }
        return base;
    }

    QuadRat primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            QuadRat v = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return QuadRat(mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string_view id = s_.substr(start, pos_ - start);
            if (id == "b" || id == "beta") return QuadRat::beta(field_);
            pos_ = start;
            fail("unknown identifier '" + std::string(id) + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    const FieldSpec& field_;
    std::size_t pos_ = 0;
};

}  // namespace

QuadRat parse_quad(std::string_view text, const FieldSpec& field) {
    return Parser(text, field).parse();
}

}  // namespace quasiwave
