#include "quasiwave/linsolve.hpp"

#include <numeric>

namespace quasiwave {

std::vector<QuadRat> multiply(const QMatrix& a, const std::vector<QuadRat>& x) {
    if (x.size() != a.cols()) throw RangeError("matrix-vector size mismatch");
    std::vector<QuadRat> y(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (!a(r, c).is_zero() && !x[c].is_zero()) y[r] += a(r, c) * x[c];
    return y;
}

namespace {

mpz_class row_denominator_lcm(const QMatrix& a, std::size_t r, const QuadRat* rhs) {
    mpz_class l = 1;
    auto take = [&](const QuadRat& v) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.p().get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.q().get_den_mpz_t());
    };
    for (std::size_t c = 0; c < a.cols(); ++c) take(a(r, c));
    if (rhs) take(*rhs);
    return l;
}

}  // namespace

EchelonReport bareiss_solve(const QMatrix& a, const std::vector<QuadRat>& b) {
    const std::size_t m = a.rows(), n = a.cols();
    const bool with_rhs = !b.empty();
    if (with_rhs && b.size() != m) throw RangeError("rhs size mismatch");

    // Augmented matrix with rows scaled into Z[beta].
    QMatrix w(m, n + 1);
    for (std::size_t r = 0; r < m; ++r) {
        QuadRat s(mpq_class(row_denominator_lcm(a, r, with_rhs ? &b[r] : nullptr)));
        for (std::size_t c = 0; c < n; ++c) w(r, c) = a(r, c) * s;
        w(r, n) = with_rhs ? b[r] * s : QuadRat();
    }
    std::vector<std::size_t> origin(m);
    std::iota(origin.begin(), origin.end(), 0);

    EchelonReport rep;
    QuadRat prev(1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        while (piv < m && w(piv, col).is_zero()) ++piv;
        if (piv == m) continue;
        if (piv != row) {
            for (std::size_t c = 0; c <= n; ++c) std::swap(w(piv, c), w(row, c));
            std::swap(origin[piv], origin[row]);
        }
        const QuadRat pv = w(row, col);
        for (std::size_t r = row + 1; r < m; ++r) {
            const QuadRat f = w(r, col);
            for (std::size_t c = col + 1; c <= n; ++c) {
                QuadRat v = pv * w(r, c);
                if (!f.is_zero() && !w(row, c).is_zero()) v -= f * w(row, c);
                if (!v.is_zero()) v /= prev;
                w(r, c) = std::move(v);
            }
            w(r, col) = QuadRat();
        }
        prev = pv;
        rep.pivot_cols.push_back(col);
        ++row;
    }
    rep.rank = row;
    for (std::size_t r = row; r < m; ++r) {
        if (w(r, n).is_zero()) rep.redundant_rows.push_back(origin[r]);
        else rep.inconsistent_rows.push_back(origin[r]);
    }
    if (with_rhs && rep.consistent() && rep.rank == n) {
        std::vector<QuadRat> x(n);
        for (std::size_t i = n; i-- > 0;) {
            const std::size_t col = rep.pivot_cols[i];
            QuadRat acc = w(i, n);
            for (std::size_t c = col + 1; c < n; ++c)
                if (!w(i, c).is_zero() && !x[c].is_zero()) acc -= w(i, c) * x[c];
            x[col] = acc / w(i, col);
        }
        rep.solution = std::move(x);
    }
    return rep;
}

std::size_t exact_rank(const QMatrix& a) { return bareiss_solve(a, {}).rank; }

ExactLU::ExactLU(QMatrix a) : n_(a.rows()), lu_(std::move(a)), perm_(n_) {
    if (lu_.cols() != n_) throw RangeError("ExactLU needs a square matrix");
    std::iota(perm_.begin(), perm_.end(), 0);
    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t piv = k;
        while (piv < n_ && lu_(piv, k).is_zero()) ++piv;
        if (piv == n_) throw SingularSystem("matrix is singular at column " + std::to_string(k));
        if (piv != k) {
            for (std::size_t c = 0; c < n_; ++c) std::swap(lu_(piv, c), lu_(k, c));
            std::swap(perm_[piv], perm_[k]);
        }
        const QuadRat inv = lu_(k, k).inverse();
        for (std::size_t r = k + 1; r < n_; ++r) {
            if (lu_(r, k).is_zero()) continue;
            QuadRat f = lu_(r, k) * inv;
            for (std::size_t c = k + 1; c < n_; ++c)
                if (!lu_(k, c).is_zero()) lu_(r, c) -= f * lu_(k, c);
            lu_(r, k) = std::move(f);
        }
    }
}

std::vector<QuadRat> ExactLU::solve(const std::vector<QuadRat>& b) const {
    if (b.size() != n_) throw RangeError("rhs size mismatch");
    std::vector<QuadRat> y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        QuadRat acc = b[perm_[i]];
        for (std::size_t j = 0; j < i; ++j)
            if (!lu_(i, j).is_zero() && !y[j].is_zero()) acc -= lu_(i, j) * y[j];
        y[i] = std::move(acc);
    }
    std::vector<QuadRat> x(n_);
    for (std::size_t i = n_; i-- > 0;) {
        QuadRat acc = y[i];
        for (std::size_t j = i + 1; j < n_; ++j)
            if (!lu_(i, j).is_zero() && !x[j].is_zero()) acc -= lu_(i, j) * x[j];
        x[i] = acc / lu_(i, i);
    }
    return x;
}

}  // namespace quasiwave
