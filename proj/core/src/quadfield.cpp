#include "quasiwave/quadfield.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace quasiwave {

// ---------------------------------------------------------------- FieldSpec

FieldSpec FieldSpec::make(Family family, int a) {
    if (family == Family::Minus && a < 1)
        throw ParameterOutOfRange("Minus family needs a >= 1, got " + std::to_string(a));
    if (family == Family::Plus && a < 3)
        throw ParameterOutOfRange("Plus family needs a >= 3, got " + std::to_string(a));
    if (a > 1000000)
        throw ParameterOutOfRange("a too large: " + std::to_string(a));
    return FieldSpec(family, a);
}

double FieldSpec::beta_float() const {
    return (a_ + std::sqrt(static_cast<double>(disc()))) / 2.0;
}

std::string FieldSpec::name() const {
    return family_name(family_) + ":" + std::to_string(a_);
}

std::string family_name(Family f) { return f == Family::Minus ? "minus" : "plus"; }

Family parse_family(std::string_view s) {
    if (s == "minus" || s == "Minus" || s == "-") return Family::Minus;
    if (s == "plus" || s == "Plus" || s == "+") return Family::Plus;
    throw ParameterOutOfRange("unknown family '" + std::string(s) + "'");
}

// ------------------------------------------------------------------ helpers

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    if (sgn(b) == 0) throw DivisionByZero("floor_div");
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

namespace {

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

mpz_class isqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const mpq_class& r, mpq_class& root) {
    if (sgn(r) < 0) return false;
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t()))
        return false;
    root = mpq_class(isqrt(r.get_num()), isqrt(r.get_den()));
    root.canonicalize();
    return true;
}

std::string rat_str(const mpq_class& r) { return r.get_str(); }

}  // namespace

// ------------------------------------------------------------------ QuadRat

QuadRat::QuadRat(const FieldSpec& f, mpq_class p, mpq_class q)
    : p_(std::move(p)), q_(std::move(q)), field_(f) {
    p_.canonicalize();
    q_.canonicalize();
}

const FieldSpec& QuadRat::field_or_throw() const {
    if (!field_) throw FieldMismatch("value " + str() + " is not bound to a field");
    return *field_;
}

QuadRat QuadRat::bound_to(const FieldSpec& f) const {
    if (field_ && !(*field_ == f))
        throw FieldMismatch("cannot rebind " + field_->name() + " value to " + f.name());
    return QuadRat(f, p_, q_);
}

std::optional<FieldSpec> QuadRat::merge(const QuadRat& a, const QuadRat& b) {
    if (a.field_ && b.field_) {
        if (!(*a.field_ == *b.field_))
            throw FieldMismatch(a.field_->name() + " vs " + b.field_->name());
        return a.field_;
    }
    return a.field_ ? a.field_ : b.field_;
}

bool QuadRat::is_integral() const {
    return p_.get_den() == 1 && q_.get_den() == 1;
}

QuadRat QuadRat::conjugate() const {
    if (is_rational()) return *this;
    const FieldSpec& f = field_or_throw();
    // beta' = a - beta
    QuadRat r = *this;
    r.p_ = p_ + q_ * f.a();
    r.q_ = -q_;
    return r;
}

mpq_class QuadRat::norm() const {
    if (is_rational()) return p_ * p_;
    const FieldSpec& f = field_or_throw();
    // (p + q b)(p + q b') = p^2 + pq(b + b') + q^2 b b' = p^2 + a p q - c q^2
    return mpq_class(p_ * p_ + f.a() * p_ * q_ - f.c() * q_ * q_);
}

mpq_class QuadRat::trace() const {
    if (is_rational()) return 2 * p_;
    return mpq_class(2 * p_ + q_ * field_or_throw().a());
}

QuadRat QuadRat::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    mpq_class n = norm();
    QuadRat c = conjugate();
    c.p_ /= n;
    c.q_ /= n;
    return c;
}

QuadRat QuadRat::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    QuadRat result = QuadRat(1);
    if (field_) result = result.bound_to(*field_);
    QuadRat base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

int QuadRat::sign() const {
    if (is_rational()) return sgn(p_);
    const FieldSpec& f = field_or_throw();
    // 2x = u + v sqrt(D) with u = 2p + a q, v = q.
    mpq_class u = 2 * p_ + f.a() * q_;
    const mpq_class& v = q_;
    int su = sgn(u), sv = sgn(v);
    if (su == 0) return sv;
    if (su == sv) return su;
    mpq_class lhs = u * u;
    mpq_class rhs = v * v * f.disc();
    // D is never a perfect square for admissible parameters, so lhs != rhs.
    return lhs > rhs ? su : sv;
}

mpz_class QuadRat::floor() const {
    if (is_rational()) return floor_div(p_.get_num(), p_.get_den());
    const FieldSpec& f = field_or_throw();
    mpq_class u = 2 * p_ + f.a() * q_;
    const mpq_class& v = q_;
    mpz_class den = lcm(u.get_den(), v.get_den());
    mpz_class U = u.get_num() * (den / u.get_den());
    mpz_class V = v.get_num() * (den / v.get_den());
    mpz_class r = isqrt(V * V * f.disc());
    mpz_class fv = sgn(V) >= 0 ? r : mpz_class(-r - 1);
    return floor_div(U + fv, 2 * den);
}

mpz_class QuadRat::ceil() const { return -((-*this).floor()); }

std::optional<QuadRat> QuadRat::sqrt_exact() const {
    if (sign() < 0) return std::nullopt;
    if (is_zero()) return *this;
    if (is_rational()) {
        mpq_class r;
        if (is_square(p_, r)) {
            QuadRat out(r);
            if (field_) out = out.bound_to(*field_);
            return out;
        }
        if (!field_) return std::nullopt;
    }
    const FieldSpec& f = field_or_throw();
    // y = m + n b with y^2 = x: N(y)^2 = N(x), T(y)^2 = T(x) + 2 N(y),
    // (y - y')^2 = n^2 D = T(y)^2 - 4 N(y).
    mpq_class nx = norm(), tx = trace();
    mpq_class ny_abs;
    if (!is_square(nx, ny_abs)) return std::nullopt;
    for (int sn : {1, -1}) {
        mpq_class ny = sn * ny_abs;
        mpq_class ty_abs;
        if (!is_square(mpq_class(tx + 2 * ny), ty_abs)) continue;
        for (int st : {1, -1}) {
            mpq_class ty = st * ty_abs;
            mpq_class n2 = (ty * ty - 4 * ny) / f.disc();
            mpq_class n_abs;
            if (!is_square(n2, n_abs)) continue;
            for (int sg : {1, -1}) {
                mpq_class n = sg * n_abs;
                mpq_class m = (ty - f.a() * n) / 2;
                QuadRat y(f, m, n);
                if (y.sign() >= 0 && y * y == *this) return y;
            }
        }
    }
    return std::nullopt;
}

std::string QuadRat::to_decimal(int digits) const {
    if (digits < 0) throw ParameterOutOfRange("digits must be >= 0");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    QuadRat scaled = *this * QuadRat(mpq_class(scale)) + QuadRat(mpq_class(1, 2));
    mpz_class n = scaled.floor();
    bool neg = sgn(n) < 0;
    if (neg) n = -n;
    std::string s = n.get_str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
        s.insert(s.size() - digits, ".");
    }
    return neg ? "-" + s : s;
}

double QuadRat::to_double() const {
    if (is_rational()) return p_.get_d();
    const FieldSpec& f = field_or_throw();
    mpf_class root(f.disc(), 256);
    root = sqrt(root);
    mpf_class b(0, 256);
    b = (mpf_class(f.a(), 256) + root) / 2;
    mpf_class val(0, 256);
    val = mpf_class(p_, 256) + mpf_class(q_, 256) * b;
    return val.get_d();
}

std::string QuadRat::str() const {
    if (is_rational()) return rat_str(p_);
    std::string qpart;
    mpq_class aq = abs(q_);
    qpart = aq == 1 ? "b" : rat_str(aq) + "*b";
    if (sgn(p_) == 0) return (sgn(q_) < 0 ? "-" : "") + qpart;
    return rat_str(p_) + (sgn(q_) < 0 ? " - " : " + ") + qpart;
}

std::string QuadRat::pretty(std::string_view sym) const {
    if (is_rational()) return rat_str(p_);
    // x = (g / d) * (m + n sym) with m, n coprime integers and d > 0.
    mpz_class d = lcm(p_.get_den(), q_.get_den());
    mpz_class m = p_.get_num() * (d / p_.get_den());
    mpz_class n = q_.get_num() * (d / q_.get_den());
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
    m /= g;
    n /= g;
    if (sgn(n) < 0 && sgn(m) <= 0) {
        m = -m;
        n = -n;
        g = -g;
    }
    mpz_class gd;
    mpz_gcd(gd.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    g /= gd;
    d /= gd;
    std::ostringstream inner;
    if (sgn(m) != 0) inner << m.get_str();
    if (sgn(m) != 0 && sgn(n) > 0) inner << "+";
    if (n == 1) inner << sym;
    else if (n == -1) inner << "-" << sym;
    else inner << n.get_str() << sym;
    std::string body = inner.str();
    std::string out;
    if (sgn(m) == 0) out = (g == 1 ? "" : g == -1 ? "-" : g.get_str()) + body;
    else if (g == 1) out = d == 1 ? body : "(" + body + ")";
    else if (g == -1) out = "-(" + body + ")";
    else out = g.get_str() + "(" + body + ")";
    if (d != 1) out += "/" + d.get_str();
    return out;
}

QuadRat QuadRat::operator-() const {
    QuadRat r = *this;
    r.p_ = -p_;
    r.q_ = -q_;
    return r;
}

QuadRat& QuadRat::operator+=(const QuadRat& o) {
    field_ = merge(*this, o);
    p_ += o.p_;
    q_ += o.q_;
    return *this;
}

QuadRat& QuadRat::operator-=(const QuadRat& o) {
    field_ = merge(*this, o);
    p_ -= o.p_;
    q_ -= o.q_;
    return *this;
}

QuadRat& QuadRat::operator*=(const QuadRat& o) {
    auto f = merge(*this, o);
    if (is_rational() || o.is_rational()) {
        if (o.is_rational()) {
            p_ *= o.p_;
            q_ *= o.p_;
        } else {
            mpq_class s = p_;
            p_ = s * o.p_;
            q_ = s * o.q_;
        }
        field_ = f;
        return *this;
    }
    // (p1 + q1 b)(p2 + q2 b) = p1 p2 + c q1 q2 + (p1 q2 + q1 p2 + a q1 q2) b
    mpq_class qq = q_ * o.q_;
    mpq_class np = p_ * o.p_ + f->c() * qq;
    mpq_class nq = p_ * o.q_ + q_ * o.p_ + f->a() * qq;
    p_ = std::move(np);
    q_ = std::move(nq);
    field_ = f;
    return *this;
}

QuadRat& QuadRat::operator/=(const QuadRat& o) {
    if (o.is_zero()) throw DivisionByZero("division by zero");
    if (o.is_rational()) {
        field_ = merge(*this, o);
        p_ /= o.p_;
        q_ /= o.p_;
        return *this;
    }
    return *this *= o.inverse();
}

bool operator==(const QuadRat& a, const QuadRat& b) {
    if (a.field_ && b.field_ && !(*a.field_ == *b.field_)) return false;
    return a.p_ == b.p_ && a.q_ == b.q_;
}

std::strong_ordering operator<=>(const QuadRat& a, const QuadRat& b) {
    int s = (a - b).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

QuadRat reembed(const QuadRat& x, const FieldSpec& target) {
    if (!x.bound()) return x.bound_to(target);
    const FieldSpec& src = *x.field();
    if (src == target) return x;
    if (src.disc() != target.disc())
        throw FieldMismatch("cannot re-embed " + src.name() + " into " + target.name() +
                            ": discriminants differ");
    // beta_src = beta_target + (a_src - a_target) / 2
    mpq_class shift(src.a() - target.a(), 2);
    return QuadRat(target, mpq_class(x.p() + x.q() * shift), x.q());
}

// ------------------------------------------------------------------ QuadInt

namespace {

std::int64_t checked(bool overflow, std::int64_t v) {
    if (overflow) throw RangeError("QuadInt overflow");
    return v;
}

std::int64_t add64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    const bool overflow = __builtin_add_overflow(a, b, &r);
    return checked(overflow, r);
}

std::int64_t sub64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    const bool overflow = __builtin_sub_overflow(a, b, &r);
    return checked(overflow, r);
}

std::int64_t mul64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    const bool overflow = __builtin_mul_overflow(a, b, &r);
    return checked(overflow, r);
}

}  // namespace

QuadInt QuadInt::from(const QuadRat& x) {
    if (!x.is_integral()) throw RangeError("QuadInt needs an element of Z[beta], got " + x.str());
    const mpz_class& p = x.p().get_num();
    const mpz_class& q = x.q().get_num();
    if (!p.fits_slong_p() || !q.fits_slong_p()) throw RangeError("QuadInt overflow");
    return QuadInt{p.get_si(), q.get_si()};
}

QuadInt operator+(QuadInt a, QuadInt b) { return {add64(a.p, b.p), add64(a.q, b.q)}; }
QuadInt operator-(QuadInt a, QuadInt b) { return {sub64(a.p, b.p), sub64(a.q, b.q)}; }

QuadInt mul(QuadInt x, QuadInt y, const FieldSpec& f) {
    std::int64_t qq = mul64(x.q, y.q);
    return {add64(mul64(x.p, y.p), mul64(f.c(), qq)),
            add64(add64(mul64(x.p, y.q), mul64(x.q, y.p)), mul64(f.a(), qq))};
}

}  // namespace quasiwave
