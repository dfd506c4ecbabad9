#include "quasiwave/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quasiwave {

// ------------------------------------------------------------- poly helpers

namespace poly {

QuadRat eval(const LocalPoly& c, const QuadRat& t) {
    QuadRat acc;
    for (std::size_t j = c.size(); j-- > 0;) {
        acc *= t;
        acc += c[j];
    }
    return acc;
}

LocalPoly derivative(const LocalPoly& c) {
    if (c.size() <= 1) return {};
    LocalPoly d(c.size() - 1);
    for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = c[j] * QuadRat(static_cast<long long>(j));
    return d;
}

LocalPoly shift(const LocalPoly& c, const QuadRat& delta) {
    if (delta.is_zero()) return c;
    // Repeated synthetic division (Taylor shift).
    LocalPoly d = c;
    const std::size_t n = d.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t j = n - 1; j > k; --j) d[j - 1] += delta * d[j];
    return d;
}

LocalPoly multiply(const LocalPoly& a, const LocalPoly& b) {
    if (a.empty() || b.empty()) return {};
    LocalPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

LocalPoly add(const LocalPoly& a, const LocalPoly& b) {
    LocalPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

LocalPoly scale(const LocalPoly& a, const QuadRat& s) {
    LocalPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

QuadRat integral(const LocalPoly& c, const QuadRat& h) {
    QuadRat acc;
    QuadRat hp = h;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (!c[j].is_zero()) acc += c[j] * hp / QuadRat(static_cast<long long>(j + 1));
        hp *= h;
    }
    return acc;
}

bool is_zero(const LocalPoly& c) {
    return std::all_of(c.begin(), c.end(), [](const QuadRat& v) { return v.is_zero(); });
}

void trim(LocalPoly& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

}  // namespace poly

// ------------------------------------------------------------ PiecewisePoly

PiecewisePoly::PiecewisePoly(std::vector<QuadRat> breaks, std::vector<LocalPoly> pieces, int first_index)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)), first_index_(first_index) {
    if (pieces_.empty()) {
        if (breaks_.size() > 1) throw SupportError("breaks without pieces");
        breaks_.clear();
        return;
    }
    if (breaks_.size() != pieces_.size() + 1)
        throw SupportError("need one more break than pieces");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
        if ((breaks_[i + 1] - breaks_[i]).sign() <= 0)
            throw SupportError("breaks must be strictly increasing");
}

PiecewisePoly PiecewisePoly::constant(const QuadRat& lo, const QuadRat& hi, const QuadRat& c) {
    return PiecewisePoly({lo, hi}, {LocalPoly{c}});
}

const QuadRat& PiecewisePoly::lo() const {
    if (breaks_.empty()) throw SupportError("zero function has no support");
    return breaks_.front();
}

const QuadRat& PiecewisePoly::hi() const {
    if (breaks_.empty()) throw SupportError("zero function has no support");
    return breaks_.back();
}

int PiecewisePoly::degree() const {
    int d = -1;
    for (const auto& p : pieces_)
        for (std::size_t j = p.size(); j-- > 0;)
            if (!p[j].is_zero()) {
                d = std::max(d, static_cast<int>(j));
                break;
            }
    return d;
}

QuadRat PiecewisePoly::eval(const QuadRat& x, Side side) const {
    if (pieces_.empty()) return QuadRat();
    if (x < breaks_.front() || x > breaks_.back()) return QuadRat();
    std::size_t i;
    if (side == Side::Right) {
        // largest i with breaks[i] <= x
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
        i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
        if (i >= pieces_.size()) return QuadRat();
    } else {
        // smallest i with breaks[i+1] >= x
        auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
        std::size_t j = static_cast<std::size_t>(it - breaks_.begin());
        if (j == 0) return QuadRat();
        i = j - 1;
    }
    return poly::eval(pieces_[i], x - breaks_[i]);
}

double PiecewisePoly::eval_double(double x) const {
    if (pieces_.empty()) return 0.0;
    if (x < breaks_.front().to_double() || x >= breaks_.back().to_double()) return 0.0;
    std::size_t i = 0;
    while (i + 1 < pieces_.size() && breaks_[i + 1].to_double() <= x) ++i;
    double t = x - breaks_[i].to_double();
    double acc = 0.0;
    for (std::size_t j = pieces_[i].size(); j-- > 0;) acc = acc * t + pieces_[i][j].to_double();
    return acc;
}

PiecewisePoly PiecewisePoly::derivative(int k) const {
    PiecewisePoly r = *this;
    for (int n = 0; n < k; ++n)
        for (auto& p : r.pieces_) p = poly::derivative(p);
    return r;
}

PiecewisePoly PiecewisePoly::antiderivative(bool require_compact) const {
    PiecewisePoly r = *this;
    QuadRat carry;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const LocalPoly& c = pieces_[i];
        LocalPoly a(c.size() + 1);
        a[0] = carry;
        for (std::size_t j = 0; j < c.size(); ++j) a[j + 1] = c[j] / QuadRat(static_cast<long long>(j + 1));
        carry = poly::eval(a, breaks_[i + 1] - breaks_[i]);
        r.pieces_[i] = std::move(a);
    }
    if (require_compact && !carry.is_zero())
        throw SupportError("antiderivative does not vanish at the right end (value " + carry.str() + ")");
    return r;
}

QuadRat PiecewisePoly::integral() const {
    QuadRat acc;
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        acc += poly::integral(pieces_[i], breaks_[i + 1] - breaks_[i]);
    return acc;
}

QuadRat PiecewisePoly::moment(int k) const {
    if (k < 0) throw ParameterOutOfRange("moment order must be >= 0");
    QuadRat acc;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        // x^k = (t + b)^k in the local coordinate
        LocalPoly xk{QuadRat(1)};
        LocalPoly lin{breaks_[i], QuadRat(1)};
        for (int n = 0; n < k; ++n) xk = poly::multiply(xk, lin);
        acc += poly::integral(poly::multiply(xk, pieces_[i]), breaks_[i + 1] - breaks_[i]);
    }
    return acc;
}

PiecewisePoly PiecewisePoly::translated(const QuadRat& shift) const {
    PiecewisePoly r = *this;
    for (auto& b : r.breaks_) b += shift;
    return r;
}

PiecewisePoly PiecewisePoly::dilated(const QuadRat& theta, const QuadRat& shift) const {
    if (theta.sign() <= 0) throw ParameterOutOfRange("dilation factor must be positive");
    PiecewisePoly r = *this;
    const QuadRat inv = theta.inverse();
    for (auto& b : r.breaks_) b = (b + shift) * inv;
    for (auto& p : r.pieces_) {
        QuadRat f(1);
        for (auto& c : p) {
            c *= f;
            f *= theta;
        }
    }
    return r;
}

PiecewisePoly PiecewisePoly::scaled(const QuadRat& s) const {
    PiecewisePoly r = *this;
    for (auto& p : r.pieces_) p = poly::scale(p, s);
    return r;
}

PiecewisePoly PiecewisePoly::mirrored() const {
    if (pieces_.empty()) return *this;
    const std::size_t n = pieces_.size();
    std::vector<QuadRat> nb(n + 1);
    std::vector<LocalPoly> np(n);
    for (std::size_t i = 0; i <= n; ++i) nb[i] = -breaks_[n - i];
    for (std::size_t i = 0; i < n; ++i) {
        // new piece i is old piece n-1-i read backwards: c(h - t)
        const std::size_t o = n - 1 - i;
        LocalPoly d = poly::shift(pieces_[o], breaks_[o + 1] - breaks_[o]);
        for (std::size_t j = 1; j < d.size(); j += 2) d[j] = -d[j];
        np[i] = std::move(d);
    }
    return PiecewisePoly(std::move(nb), std::move(np), first_index_);
}

PiecewisePoly PiecewisePoly::refined(const std::vector<QuadRat>& nb) const {
    if (nb.size() < 2) {
        if (!is_zero()) throw SupportError("refinement needs at least two breaks");
        return {};
    }
    if (!pieces_.empty()) {
        if (breaks_.front() < nb.front() || breaks_.back() > nb.back()) {
            if (!trimmed().empty()) {
                PiecewisePoly t = trimmed();
                if (t.lo() < nb.front() || t.hi() > nb.back())
                    throw SupportError("refinement breaks do not cover the support");
                return t.refined(nb);
            }
        }
    }
    std::vector<LocalPoly> np(nb.size() - 1);
    std::size_t i = 0;
    for (std::size_t j = 0; j + 1 < nb.size(); ++j) {
        if (pieces_.empty() || nb[j] < breaks_.front() || !(nb[j] < breaks_.back())) continue;
        while (i + 1 < breaks_.size() - 1 && !(nb[j] < breaks_[i + 1])) ++i;
        if (breaks_[i + 1] < nb[j + 1])
            throw SupportError("refinement breaks must include every existing break");
        np[j] = poly::shift(pieces_[i], nb[j] - breaks_[i]);
    }
    return PiecewisePoly(nb, std::move(np), first_index_);
}

PiecewisePoly PiecewisePoly::trimmed() const {
    std::size_t a = 0, b = pieces_.size();
    while (a < b && poly::is_zero(pieces_[a])) ++a;
    while (b > a && poly::is_zero(pieces_[b - 1])) --b;
    if (a == b) return {};
    std::vector<QuadRat> nb(breaks_.begin() + a, breaks_.begin() + b + 1);
    std::vector<LocalPoly> np(pieces_.begin() + a, pieces_.begin() + b);
    for (auto& p : np) poly::trim(p);
    return PiecewisePoly(std::move(nb), std::move(np), first_index_ + static_cast<int>(a));
}

int PiecewisePoly::continuity_order() const {
    if (is_zero()) return 1 << 20;
    const int maxd = degree();
    const std::size_t n = pieces_.size();
    for (int r = 0; r <= maxd; ++r) {
        for (std::size_t i = 0; i <= n; ++i) {
            QuadRat left, right;
            if (i > 0) {
                LocalPoly d = pieces_[i - 1];
                for (int k = 0; k < r; ++k) d = poly::derivative(d);
                left = poly::eval(d, breaks_[i] - breaks_[i - 1]);
            }
            if (i < n) {
                const LocalPoly& p = pieces_[i];
                if (static_cast<std::size_t>(r) < p.size()) {
                    // r-th derivative at t = 0 is r! c_r
                    QuadRat fact(1);
                    for (int k = 2; k <= r; ++k) fact *= QuadRat(k);
                    right = p[r] * fact;
                }
            }
            if (!(left == right)) return r - 1;
        }
    }
    return maxd;
}

std::vector<QuadRat> merge_breaks(const std::vector<QuadRat>& a, const std::vector<QuadRat>& b) {
    std::vector<QuadRat> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) r.push_back(a[i++]);
        else if (i == a.size() || b[j] < a[i]) r.push_back(b[j++]);
        else {
            r.push_back(a[i++]);
            ++j;
        }
    }
    return r;
}

namespace {

template <class Op>
PiecewisePoly combine(const PiecewisePoly& a, const PiecewisePoly& b, Op op, bool product) {
    if (a.empty() && b.empty()) return {};
    if (product && (a.empty() || b.empty())) return {};
    std::vector<QuadRat> nb;
    if (product) {
        QuadRat lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
        if (!(lo < hi)) return {};
        std::vector<QuadRat> ab = merge_breaks(a.breaks(), b.breaks());
        for (const auto& x : ab)
            if (!(x < lo) && !(hi < x)) nb.push_back(x);
    } else {
        nb = merge_breaks(a.breaks(), b.breaks());
    }
    auto fill = [&](const PiecewisePoly& f) {
        if (f.empty()) return std::vector<LocalPoly>(nb.size() - 1);
        // f may extend past nb (products clip to the overlap), so refine on
        // its own breaks as well and pick the pieces that start at nb[j].
        std::vector<QuadRat> sub;
        for (const auto& x : nb)
            if (!(x < f.lo()) && !(f.hi() < x)) sub.push_back(x);
        const std::vector<QuadRat> full = merge_breaks(f.breaks(), sub);
        PiecewisePoly rf = f.refined(full);
        std::vector<LocalPoly> out(nb.size() - 1);
        std::size_t k = 0;
        for (std::size_t j = 0; j + 1 < nb.size(); ++j) {
            if (nb[j] < f.lo() || !(nb[j] < f.hi())) continue;
            while (full[k] < nb[j]) ++k;
            out[j] = rf.pieces()[k];
        }
        return out;
    };
    std::vector<LocalPoly> pa = fill(a), pb = fill(b);
    std::vector<LocalPoly> pr(nb.size() - 1);
    for (std::size_t j = 0; j < pr.size(); ++j) pr[j] = op(pa[j], pb[j]);
    return PiecewisePoly(std::move(nb), std::move(pr), a.empty() ? b.first_index() : a.first_index());
}

}  // namespace

PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
    return combine(a, b, [](const LocalPoly& x, const LocalPoly& y) { return poly::add(x, y); }, false);
}

PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b) {
    return combine(
        a, b, [](const LocalPoly& x, const LocalPoly& y) { return poly::add(x, poly::scale(y, QuadRat(-1))); },
        false);
}

PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b) {
    return combine(a, b, [](const LocalPoly& x, const LocalPoly& y) { return poly::multiply(x, y); }, true);
}

bool PiecewisePoly::is_zero() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const LocalPoly& p) { return poly::is_zero(p); });
}

bool PiecewisePoly::equals(const PiecewisePoly& o) const { return (*this - o).is_zero(); }

QuadRat inner_product(const PiecewisePoly& a, const PiecewisePoly& b) {
    if (a.empty() || b.empty()) return QuadRat();
    if (!(a.lo() < b.hi()) || !(b.lo() < a.hi())) return QuadRat();
    return (a * b).integral();
}

// ---------------------------------------------------------------- radicals

std::optional<QuadRat> radical_ratio(const QuadRat& r1, const QuadRat& r2) {
    if (r1 == r2) return QuadRat(1);
    return (r1 / r2).sqrt_exact();
}

RootCoeff RootCoeff::inverse() const {
    if (factor.is_zero()) throw DivisionByZero("inverse of zero RootCoeff");
    return {(factor * radicand).inverse(), radicand};
}

bool RootCoeff::equals(const RootCoeff& o) const {
    if (factor.sign() != o.factor.sign()) return false;
    return factor * factor * radicand == o.factor * o.factor * o.radicand;
}

double RootCoeff::to_double() const { return factor.to_double() * std::sqrt(radicand.to_double()); }

std::string RootCoeff::str() const {
    if (radicand == QuadRat(1)) return factor.str();
    return "(" + factor.str() + ")*sqrt(" + radicand.str() + ")";
}

std::string RootCoeff::pretty(std::string_view sym) const {
    if (radicand == QuadRat(1)) return factor.pretty(sym);
    const std::string root = "sqrt(" + radicand.pretty(sym) + ")";
    if (factor == QuadRat(1)) return root;
    if (factor == QuadRat(-1)) return "-" + root;
    return factor.pretty(sym) + "*" + root;
}

void RootSum::add(const RootCoeff& c0) {
    if (c0.factor.is_zero()) return;
    if (c0.radicand.sign() <= 0) throw ParameterOutOfRange("radicand must be positive");
    RootCoeff c = c0;
    if (auto r = c.radicand.sqrt_exact()) c = {c.factor * *r, QuadRat(1)};
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (auto k = radical_ratio(c.radicand, it->radicand)) {
            it->factor += c.factor * *k;
            if (it->factor.is_zero()) terms_.erase(it);
            return;
        }
    }
    terms_.push_back(c);
}

bool RootSum::is_zero() const { return terms_.empty(); }

std::optional<QuadRat> RootSum::as_quad() const {
    if (terms_.empty()) return QuadRat();
    if (terms_.size() != 1) return std::nullopt;
    auto k = terms_[0].radicand.sqrt_exact();
    if (!k) return std::nullopt;
    return terms_[0].factor * *k;
}

double RootSum::to_double() const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.to_double();
    return s;
}

std::string RootSum::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) s += (i ? " + " : "") + terms_[i].str();
    return s;
}

RadicalFunction RadicalFunction::normalized(const PiecewisePoly& shape, const QuadRat& norm_sq) {
    RadicalFunction f;
    f.add(RootCoeff::root(norm_sq.inverse()), shape);
    return f;
}

void RadicalFunction::add(const RootCoeff& c, const PiecewisePoly& shape) {
    if (c.factor.is_zero() || shape.is_zero()) return;
    for (auto it = parts_.begin(); it != parts_.end(); ++it) {
        if (auto k = radical_ratio(c.radicand, it->radicand)) {
            it->shape = (it->shape + shape.scaled(c.factor * *k)).trimmed();
            if (it->shape.is_zero()) parts_.erase(it);
            return;
        }
    }
    parts_.push_back({c.radicand, shape.scaled(c.factor)});
}

void RadicalFunction::add(const RootCoeff& c, const RadicalFunction& f) {
    for (const auto& p : f.parts_) add(RootCoeff{c.factor, c.radicand * p.radicand}, p.shape);
}

RadicalFunction RadicalFunction::translated(const QuadRat& shift) const {
    RadicalFunction r = *this;
    for (auto& p : r.parts_) p.shape = p.shape.translated(shift);
    return r;
}

RadicalFunction RadicalFunction::dilated(const QuadRat& theta, const QuadRat& shift) const {
    RadicalFunction r = *this;
    for (auto& p : r.parts_) p.shape = p.shape.dilated(theta, shift);
    return r;
}

RadicalFunction RadicalFunction::mirrored() const {
    RadicalFunction r = *this;
    for (auto& p : r.parts_) p.shape = p.shape.mirrored();
    return r;
}

QuadRat RadicalFunction::lo() const {
    if (parts_.empty()) throw SupportError("zero function has no support");
    QuadRat v = parts_[0].shape.lo();
    for (const auto& p : parts_) v = std::min(v, p.shape.lo());
    return v;
}

QuadRat RadicalFunction::hi() const {
    if (parts_.empty()) throw SupportError("zero function has no support");
    QuadRat v = parts_[0].shape.hi();
    for (const auto& p : parts_) v = std::max(v, p.shape.hi());
    return v;
}

bool RadicalFunction::is_zero() const {
    return std::all_of(parts_.begin(), parts_.end(), [](const Part& p) { return p.shape.is_zero(); });
}

bool RadicalFunction::equals(const RadicalFunction& o) const { return (*this - o).is_zero(); }

RootSum RadicalFunction::value(const QuadRat& x, Side side) const {
    RootSum s;
    for (const auto& p : parts_) s.add({p.shape.eval(x, side), p.radicand});
    return s;
}

double RadicalFunction::eval_double(double x) const {
    double s = 0.0;
    for (const auto& p : parts_) s += std::sqrt(p.radicand.to_double()) * p.shape.eval_double(x);
    return s;
}

const RadicalFunction::Part& RadicalFunction::single() const {
    if (parts_.size() != 1) throw ConsistencyError("function has " + std::to_string(parts_.size()) + " radical parts");
    return parts_[0];
}

RootSum inner_product(const RadicalFunction& a, const RadicalFunction& b) {
    RootSum s;
    for (const auto& pa : a.parts())
        for (const auto& pb : b.parts()) s.add({inner_product(pa.shape, pb.shape), pa.radicand * pb.radicand});
    return s;
}

RadicalFunction operator-(const RadicalFunction& a, const RadicalFunction& b) {
    RadicalFunction r = a;
    r.add(RootCoeff::rational(-1), b);
    return r;
}

}  // namespace quasiwave
