#include "quasiwave/mra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "quasiwave/refine.hpp"
#include "quasiwave/spline.hpp"

namespace quasiwave {

std::string basis_kind_name(BasisFunction::Kind k) {
    switch (k) {
        case BasisFunction::Kind::Fine: return "fine";
        case BasisFunction::Kind::Coarse: return "coarse";
        case BasisFunction::Kind::Detail: return "detail";
        case BasisFunction::Kind::Boundary: return "boundary";
    }
    return "?";
}

namespace {

bool overlaps(const PiecewisePoly& a, const PiecewisePoly& b) {
    return (a.lo() < b.hi()) && (b.lo() < a.hi());
}

}  // namespace

Multiresolution::Multiresolution(const NodeSequence& seq, const QuadRat& theta, int s, int lo, int hi, int scale)
    : s_(s),
      scale_(scale),
      lo_(lo),
      hi_(hi),
      theta_(theta),
      nodes_(scale == 0 ? seq : seq.rescaled(theta.pow(-scale))) {
    if (s < 1) throw ParameterOutOfRange("spline order must be >= 1");
    if (theta.sign() <= 0 || !(QuadRat(1) < theta)) throw ParameterOutOfRange("theta must exceed 1");
    if (!seq.has_index(lo) || !seq.has_index(hi)) throw RangeError("window outside the sequence");
    if (hi - lo < 2 * s) throw WindowTooSmall("window holds fewer than 2s gaps");
    system_ = build_wavelet_system(seq, theta, s);

    for (int k = lo; k + s <= hi; ++k)
        fine_.push_back({BasisFunction::Kind::Fine, nodes_.word(k, s), k, bspline(nodes_, k, s)});

    const QuadRat& left = nodes_.node(lo);
    const QuadRat& right = nodes_.node(hi);
    const QuadRat inv = theta.inverse();
    for (int m = nodes_.first_index(); m + s <= nodes_.last_index(); ++m) {
        if (theta * nodes_.node(m) < left || right < theta * nodes_.node(m + s)) continue;
        auto at = nodes_.index_of(theta * nodes_.node(m));
        if (!at) throw ConsistencyError("theta * Lambda is not contained in Lambda");
        coarse_.push_back({BasisFunction::Kind::Coarse, nodes_.word(m, s), *at, bspline(nodes_, m, s).dilated(inv)});
    }

    const QuadRat dil = theta.pow(scale);
    for (int n : system_.E) {
        if (n < lo) continue;
        WaveletSupportPlan p;
        try {
            p = support_plan(seq, theta, n, 2 * s);
        } catch (const SequenceTooShort&) {
            continue;
        }
        if (n + p.N > hi) continue;
        PiecewisePoly z = system_.zeta_at(seq, n);
        if (scale != 0) z = z.dilated(dil);
        detail_.push_back({BasisFunction::Kind::Detail, p.word, n, std::move(z)});
    }
    if (coarse_.empty()) throw WindowTooSmall("no coarse B-spline fits inside the window");
    build_synthesis();
}

void Multiresolution::build_synthesis() {
    const std::size_t dim = fine_.size();
    const std::vector<ScalingClass> classes = scaling_classes(nodes_, s_);
    std::vector<std::vector<QuadRat>> cols;
    auto coords = [&](const PiecewisePoly& f) {
        const RefinementTable t = s_ == 2 ? refine_linear(f, nodes_, classes) : refine_general(f, nodes_, classes);
        std::vector<QuadRat> c(dim);
        for (const auto& term : t.terms) {
            const int k = term.node - lo_;
            if (k < 0 || static_cast<std::size_t>(k) >= dim) throw ConsistencyError("refinement term outside window");
            c[static_cast<std::size_t>(k)] = term.coeff.factor;
        }
        return c;
    };
    for (const auto& b : coarse_) cols.push_back(coords(b.f));
    for (const auto& b : detail_) cols.push_back(coords(b.f));

    // Column elimination picking pivot rows from the middle outwards; the
    // rows left unpivoted give the boundary functions that complete a basis.
    std::vector<std::vector<QuadRat>> w = cols;
    std::vector<bool> used(dim, false);
    auto depth = [&](std::size_t r) { return std::min(r, dim - 1 - r); };
    for (std::size_t c = 0; c < w.size(); ++c) {
        std::size_t best = dim;
        for (std::size_t r = 0; r < dim; ++r)
            if (!used[r] && !w[c][r].is_zero() && (best == dim || depth(r) > depth(best))) best = r;
        if (best == dim) throw SingularSystem("coarse and detail functions are dependent on the window");
        used[best] = true;
        for (std::size_t c2 = c + 1; c2 < w.size(); ++c2) {
            if (w[c2][best].is_zero()) continue;
            const QuadRat f = w[c2][best] / w[c][best];
            for (std::size_t r = 0; r < dim; ++r)
                if (!w[c][r].is_zero()) w[c2][r] -= f * w[c][r];
        }
    }
    for (std::size_t r = 0; r < dim; ++r) {
        if (used[r]) continue;
        BasisFunction b = fine_[r];
        b.kind = BasisFunction::Kind::Boundary;
        boundary_.push_back(b);
        std::vector<QuadRat> e(dim);
        e[r] = QuadRat(1);
        cols.push_back(std::move(e));
    }
    if (cols.size() != dim) throw ConsistencyError("synthesis matrix is not square");
    synthesis_ = QMatrix(dim, dim);
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) synthesis_(r, c) = cols[c][r];
    lu_.emplace(synthesis_);
}

Split<QuadRat> Multiresolution::decompose(const std::vector<QuadRat>& x) const {
    if (x.size() != dim()) throw WindowMismatch("coefficient vector does not match the window");
    const std::vector<QuadRat> y = lu_->solve(x);
    Split<QuadRat> out;
    auto it = y.begin();
    out.coarse.assign(it, it + static_cast<long>(coarse_.size()));
    it += static_cast<long>(coarse_.size());
    out.detail.assign(it, it + static_cast<long>(detail_.size()));
    it += static_cast<long>(detail_.size());
    out.boundary.assign(it, y.end());
    return out;
}

Split<double> Multiresolution::decompose(const std::vector<double>& x) const {
    const std::size_t n = dim();
    if (x.size() != n) throw WindowMismatch("coefficient vector does not match the window");
    Eigen::MatrixXd s(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) s(r, c) = synthesis_(r, c).to_double();
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(s);
    const Eigen::VectorXd y = lu.solve(Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<long>(n)));
    Split<double> out;
    out.rcond = lu.rcond();
    std::size_t i = 0;
    for (; i < coarse_.size(); ++i) out.coarse.push_back(y(static_cast<long>(i)));
    for (; i < coarse_.size() + detail_.size(); ++i) out.detail.push_back(y(static_cast<long>(i)));
    for (; i < n; ++i) out.boundary.push_back(y(static_cast<long>(i)));
    return out;
}

namespace {

template <class T>
std::vector<T> stack(const Split<T>& c, std::size_t nc, std::size_t nd, std::size_t nb) {
    if (c.coarse.size() != nc || c.detail.size() != nd || c.boundary.size() != nb)
        throw WindowMismatch("split does not match the window");
    std::vector<T> y = c.coarse;
    y.insert(y.end(), c.detail.begin(), c.detail.end());
    y.insert(y.end(), c.boundary.begin(), c.boundary.end());
    return y;
}

}  // namespace

std::vector<QuadRat> Multiresolution::reconstruct(const Split<QuadRat>& c) const {
    return multiply(synthesis_, stack(c, coarse_.size(), detail_.size(), boundary_.size()));
}

std::vector<double> Multiresolution::reconstruct(const Split<double>& c) const {
    const std::vector<double> y = stack(c, coarse_.size(), detail_.size(), boundary_.size());
    std::vector<double> x(dim(), 0.0);
    for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t k = 0; k < dim(); ++k)
            if (!synthesis_(r, k).is_zero()) x[r] += synthesis_(r, k).to_double() * y[k];
    return x;
}

PiecewisePoly Multiresolution::synthesize(const std::vector<QuadRat>& x) const {
    if (x.size() != dim()) throw WindowMismatch("coefficient vector does not match the window");
    PiecewisePoly f;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (!x[k].is_zero()) f = f + fine_[k].f.scaled(x[k]);
    return f.trimmed();
}

const QMatrix& Multiresolution::gram() const {
    if (gram_.rows() == dim()) return gram_;
    QMatrix g(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t k = i; k < dim() && k < i + static_cast<std::size_t>(s_); ++k) {
            g(i, k) = inner_product(fine_[i].f, fine_[k].f);
            g(k, i) = g(i, k);
        }
    gram_ = std::move(g);
    return gram_;
}

std::vector<double> Multiresolution::gram_double() const {
    const QMatrix& g = gram();
    std::vector<double> out(dim() * dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t k = 0; k < dim(); ++k) out[i * dim() + k] = g(i, k).to_double();
    return out;
}

std::vector<QuadRat> Multiresolution::project(const PiecewisePoly& f) const {
    std::vector<QuadRat> b(dim());
    if (f.is_zero()) return b;
    for (std::size_t i = 0; i < dim(); ++i)
        if (overlaps(f, fine_[i].f)) b[i] = inner_product(f, fine_[i].f);
    return ExactLU(gram()).solve(b);
}

Multiresolution::SampledProjection Multiresolution::project_samples(const std::vector<double>& xs,
                                                                    const std::vector<double>& ys) const {
    if (xs.size() != ys.size()) throw ParameterOutOfRange("sample abscissae and values differ in length");
    if (xs.size() < dim()) throw ParameterOutOfRange("fewer samples than basis functions");
    const long m = static_cast<long>(xs.size());
    const long n = static_cast<long>(dim());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, n);
    for (long i = 0; i < m; ++i)
        for (long k = 0; k < n; ++k) a(i, k) = fine_[static_cast<std::size_t>(k)].f.eval_double(xs[i]);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ys.data(), m);
    const Eigen::MatrixXd normal = a.transpose() * a;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
    const Eigen::VectorXd c = ldlt.solve(a.transpose() * y);
    SampledProjection out;
    out.coeffs.assign(c.data(), c.data() + n);
    out.rcond = ldlt.rcond();
    out.residual_rms = std::sqrt((a * c - y).squaredNorm() / static_cast<double>(m));
    return out;
}

namespace {

FrameBounds extremes(const Eigen::MatrixXd& g) {
    FrameBounds fb;
    fb.functions = static_cast<std::size_t>(g.rows());
    if (g.rows() == 0) return fb;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    fb.A = es.eigenvalues().minCoeff();
    fb.B = es.eigenvalues().maxCoeff();
    return fb;
}

}  // namespace

FrameBounds gram_extremes(const std::vector<RadicalFunction>& fs) {
    const long n = static_cast<long>(fs.size());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (long i = 0; i < n; ++i)
        for (long k = i; k < n; ++k) {
            const auto& a = fs[static_cast<std::size_t>(i)];
            const auto& b = fs[static_cast<std::size_t>(k)];
            if (a.is_zero() || b.is_zero() || !(a.lo() < b.hi() && b.lo() < a.hi())) continue;
            g(i, k) = g(k, i) = inner_product(a, b).to_double();
        }
    return extremes(g);
}

FrameBounds gram_extremes_normalized(const std::vector<PiecewisePoly>& fs) {
    const long n = static_cast<long>(fs.size());
    std::vector<double> norms;
    for (const auto& f : fs) norms.push_back(std::sqrt(inner_product(f, f).to_double()));
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (long i = 0; i < n; ++i)
        for (long k = i; k < n; ++k) {
            const auto& a = fs[static_cast<std::size_t>(i)];
            const auto& b = fs[static_cast<std::size_t>(k)];
            if (!overlaps(a, b)) continue;
            g(i, k) = g(k, i) = inner_product(a, b).to_double() / (norms[static_cast<std::size_t>(i)] *
                                                                   norms[static_cast<std::size_t>(k)]);
        }
    return extremes(g);
}

std::vector<FrameBounds> wavelet_frame_bounds(const WaveletSystem& sys, const NodeSequence& seq,
                                              const std::vector<int>& window_nodes) {
    std::vector<FrameBounds> out;
    for (int w : window_nodes) {
        const int lo = -w / 2;
        const int hi = w - w / 2;
        if (!seq.has_index(lo) || !seq.has_index(hi)) throw RangeError("frame window outside the sequence");
        std::vector<PiecewisePoly> fs;
        for (int k : sys.E) {
            if (k < lo) continue;
            WaveletSupportPlan p;
            try {
                p = support_plan(seq, sys.theta, k, 2 * sys.s);
            } catch (const SequenceTooShort&) {
                continue;
            }
            if (k + p.N <= hi) fs.push_back(sys.zeta_at(seq, k));
        }
        FrameBounds fb = gram_extremes_normalized(fs);
        fb.window_nodes = w;
        out.push_back(fb);
    }
    return out;
}

}  // namespace quasiwave
