#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "quasiwave/errors.hpp"

namespace quasiwave {

/// Which characteristic equation beta satisfies.
///   Minus: X^2 = aX + 1, a >= 1  (beta' = -1/beta)
///   Plus:  X^2 = aX - 1, a >= 3  (beta' =  1/beta)
enum class Family { Minus, Plus };

class FieldSpec {
public:
    /// The golden-ratio field (Minus, a = 1).
    FieldSpec() = default;

    static FieldSpec make(Family family, int a);

    Family family() const { return family_; }
    int a() const { return a_; }
    /// beta^2 = a*beta + c
    int c() const { return family_ == Family::Minus ? 1 : -1; }
    /// Discriminant a^2 + 4c; beta = (a + sqrt(D)) / 2.
    long disc() const { return static_cast<long>(a_) * a_ + 4L * c(); }
    /// Numeric value of beta, for display only.
    double beta_float() const;
    /// "minus:1", "plus:3", ...
    std::string name() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    FieldSpec(Family family, int a) : family_(family), a_(a) {}

    Family family_ = Family::Minus;
    int a_ = 1;
};

inline FieldSpec tau_field() { return FieldSpec::make(Family::Minus, 1); }

std::string family_name(Family f);
Family parse_family(std::string_view s);

/// Exact element p + q*beta of Q(beta).
///
/// A value built from a plain integer or rational is "unbound": it has no
/// field yet and q = 0.  Unbound values combine freely with any field; two
/// bound values must share their FieldSpec.
class QuadRat {
public:
    QuadRat() = default;
    QuadRat(long long v) : p_(static_cast<long>(v)) {}
    QuadRat(const mpq_class& r) : p_(r) { p_.canonicalize(); }
    QuadRat(const FieldSpec& f, mpq_class p, mpq_class q = 0);

    static QuadRat beta(const FieldSpec& f) { return QuadRat(f, 0, 1); }

    const mpq_class& p() const { return p_; }
    const mpq_class& q() const { return q_; }
    bool bound() const { return field_.has_value(); }
    const std::optional<FieldSpec>& field() const { return field_; }
    /// Field of this value; throws FieldMismatch if unbound.
    const FieldSpec& field_or_throw() const;
    QuadRat bound_to(const FieldSpec& f) const;

    bool is_zero() const { return sgn(p_) == 0 && sgn(q_) == 0; }
    bool is_rational() const { return sgn(q_) == 0; }
    /// Element of Z[beta].
    bool is_integral() const;

    QuadRat conjugate() const;
    /// x * conjugate(x), a rational.
    mpq_class norm() const;
    /// x + conjugate(x), a rational.
    mpq_class trace() const;
    QuadRat inverse() const;
    QuadRat pow(long e) const;

    /// Exact sign of the real number p + q*beta.
    int sign() const;
    mpz_class floor() const;
    mpz_class ceil() const;
    /// Exact square root in Q(beta) if one exists (the positive root).
    std::optional<QuadRat> sqrt_exact() const;

    /// Correctly rounded (half up) decimal with `digits` fractional digits.
    std::string to_decimal(int digits) const;
    double to_double() const;

    /// Canonical text "p + q*b" ("-6/11 - 156/11*b", "3", "b").
    std::string str() const;
    /// Human-readable factored form, e.g. "-6(1+26τ)/11"; `sym` names beta.
    std::string pretty(std::string_view sym = "b") const;

    QuadRat operator-() const;
    QuadRat& operator+=(const QuadRat& o);
    QuadRat& operator-=(const QuadRat& o);
    QuadRat& operator*=(const QuadRat& o);
    QuadRat& operator/=(const QuadRat& o);

    friend QuadRat operator+(QuadRat a, const QuadRat& b) { return a += b; }
    friend QuadRat operator-(QuadRat a, const QuadRat& b) { return a -= b; }
    friend QuadRat operator*(QuadRat a, const QuadRat& b) { return a *= b; }
    friend QuadRat operator/(QuadRat a, const QuadRat& b) { return a /= b; }

    /// Component-wise equality (fields must agree when both are bound).
    friend bool operator==(const QuadRat& a, const QuadRat& b);
    /// Order of the real embedding.
    friend std::strong_ordering operator<=>(const QuadRat& a, const QuadRat& b);

private:
    static std::optional<FieldSpec> merge(const QuadRat& a, const QuadRat& b);

    mpq_class p_ = 0;
    mpq_class q_ = 0;
    std::optional<FieldSpec> field_;
};

/// Re-express x in another field with the same discriminant (e.g. Z[tau] =
/// Z[tau^2]).  Never applied implicitly.
QuadRat reembed(const QuadRat& x, const FieldSpec& target);

/// Parse an arithmetic expression over Q(beta): integers, + - * / ^,
/// parentheses, implicit multiplication, and the generator `b` (or `beta`).
QuadRat parse_quad(std::string_view text, const FieldSpec& field);

mpz_class floor_div(const mpz_class& a, const mpz_class& b);

/// Small element p + q*beta of Z[beta] with overflow-checked int64 parts.
/// Used for bulk combinatorial sweeps where mpq would dominate the runtime.
struct QuadInt {
    std::int64_t p = 0;
    std::int64_t q = 0;

    static QuadInt from(const QuadRat& x);
    QuadRat to_quad(const FieldSpec& f) const { return QuadRat(f, static_cast<long>(p), static_cast<long>(q)); }

    friend QuadInt operator+(QuadInt a, QuadInt b);
    friend QuadInt operator-(QuadInt a, QuadInt b);
    friend bool operator==(QuadInt, QuadInt) = default;
};

QuadInt mul(QuadInt x, QuadInt y, const FieldSpec& f);

}  // namespace quasiwave
