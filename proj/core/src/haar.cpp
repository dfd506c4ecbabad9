#include "quasiwave/haar.hpp"

namespace quasiwave {

namespace {

PiecewisePoly indicator(const QuadRat& lo, const QuadRat& hi) { return PiecewisePoly::constant(lo, hi, QuadRat(1)); }

QuadRat shape_inner(const PiecewisePoly& a, const PiecewisePoly& b) { return inner_product(a, b); }

}  // namespace

HaarSystem::HaarSystem(const FieldSpec& f) : field_(f), beta_(QuadRat::beta(f)) {
    const SubstitutionRule rule = SubstitutionRule::beta_integers(f);
    len_L_ = rule.len_L;
    len_S_ = rule.len_S;
    phi_L_ = RadicalFunction(indicator(QuadRat(0), len_L_));
    phi_S_ = RadicalFunction::normalized(indicator(QuadRat(0), len_S_), len_S_);
}

RadicalFunction HaarSystem::fine(char tile, const QuadRat& shift) const { return phi(tile).dilated(beta_, shift); }

RadicalFunction HaarSystem::evaluate(const RefinementTable& t) const {
    RadicalFunction f;
    for (const auto& term : t.terms) f.add(term.coeff, phi(term.basis.at(0)).dilated(t.dilation, term.translate));
    return f;
}

std::string HaarSystem::fine_letters(char tile) const {
    const SubstitutionRule rule = SubstitutionRule::beta_integers(field_);
    return tile == 'L' ? rule.image_L : rule.image_S;
}

std::vector<HaarEquation> HaarSystem::refinement_equations() const {
    const int a = field_.a();
    const QuadRat b = beta_;
    auto term = [](char c, const QuadRat& shift, RootCoeff k) {
        return RefinementTerm{std::string(1, c), 0, shift, std::move(k)};
    };
    HaarEquation eL, eS;
    eL.label = "phi_L";
    eL.lhs = phi_L_;
    eL.rhs.target = "phi_L";
    eL.rhs.dilation = b;
    eS.rhs.dilation = b;
    if (field_.family() == Family::Minus) {
        for (int l = 0; l < a; ++l) eL.rhs.terms.push_back(term('L', QuadRat(l), RootCoeff::rational(1)));
        eL.rhs.terms.push_back(term('S', QuadRat(a), RootCoeff::root(b.inverse())));
        eS.label = "phi_S(x - a)";
        eS.lhs = phi_S_.translated(QuadRat(a));
        eS.rhs.terms.push_back(term('L', QuadRat(a) * b, RootCoeff::root(b)));
    } else {
        const QuadRat s = QuadRat(1) - b.inverse();
        for (int l = 0; l <= a - 2; ++l) eL.rhs.terms.push_back(term('L', QuadRat(l), RootCoeff::rational(1)));
        eL.rhs.terms.push_back(term('S', QuadRat(a - 1), RootCoeff::root(s)));
        eS.label = "phi_S(x - a + 1)";
        eS.lhs = phi_S_.translated(QuadRat(a - 1));
        for (int l = 0; l <= a - 3; ++l)
            eS.rhs.terms.push_back(term('L', b * QuadRat(a - 1) + QuadRat(l), RootCoeff::root(s.inverse())));
        eS.rhs.terms.push_back(term('S', b * QuadRat(a - 1) + QuadRat(a - 2), RootCoeff::rational(1)));
    }
    eS.rhs.target = eS.label;
    return {eL, eS};
}

RadicalFunction HaarSystem::residual(const HaarEquation& e) const { return e.lhs - evaluate(e.rhs); }

std::vector<HaarWavelet> HaarSystem::orthonormal_wavelets() const {
    std::vector<HaarWavelet> out;
    const std::string tiles = field_.family() == Family::Minus ? "L" : "LS";
    for (char tile : tiles) {
        const std::string letters = fine_letters(tile);
        // GS set: the coarse tile, then every fine L tile in order.
        std::vector<PiecewisePoly> v{indicator(QuadRat(0), len(tile))};
        std::vector<QuadRat> shifts;
        QuadRat pos;
        for (char c : letters) {
            shifts.push_back(pos);
            if (c == 'L') v.push_back(indicator(pos / beta_, (pos + len_L_) / beta_));
            pos += len(c);
        }
        std::vector<PiecewisePoly> u;
        for (const auto& vk : v) {
            PiecewisePoly w = vk;
            for (const auto& ui : u) w = w - ui.scaled(shape_inner(vk, ui) / shape_inner(ui, ui));
            u.push_back(w.trimmed());
        }
        for (std::size_t k = 1; k < u.size(); ++k) {
            const QuadRat nsq = shape_inner(u[k], u[k]);
            if (nsq.is_zero()) throw ConsistencyError("Gram-Schmidt produced a zero vector");
            HaarWavelet w;
            w.name = std::string("psi_") + tile + "," + std::to_string(k - 1);
            w.tile = tile;
            w.terms.target = w.name;
            w.terms.dilation = beta_;
            for (std::size_t i = 0; i < letters.size(); ++i) {
                const QuadRat h = u[k].eval(shifts[i] / beta_);
                if (h.is_zero()) continue;
                const QuadRat rad = letters[i] == 'L' ? nsq.inverse() : len_S_ / nsq;
                w.terms.terms.push_back({std::string(1, letters[i]), 0, shifts[i], RootCoeff{h, rad}});
            }
            w.function = RadicalFunction::normalized(u[k], nsq);
            out.push_back(std::move(w));
        }
    }
    return out;
}

QuadRat HaarSystem::riesz_LS_normalizer_printed() const {
    const QuadRat b = beta_;
    if (field_.family() == Family::Minus) return b / (b + QuadRat(1));
    return (QuadRat(field_.a() - 1) * b - QuadRat(1)) / (QuadRat(2) * b - QuadRat(1));
}

QuadRat HaarSystem::riesz_LS_normalizer_recomputed() const {
    // zero-mean combination phi_L(bx) - |S|^(-1/2) phi_S(bx - 1)
    RefinementTable t;
    t.dilation = beta_;
    t.terms.push_back({"L", 0, QuadRat(0), RootCoeff::rational(1)});
    t.terms.push_back({"S", 0, QuadRat(1), RootCoeff{QuadRat(-1), len_S_.inverse()}});
    const RadicalFunction g = evaluate(t);
    auto nsq = inner_product(g, g).as_quad();
    if (!nsq) throw ConsistencyError("norm of psi_LS is not in Q(beta)");
    return nsq->inverse();
}

std::vector<HaarWavelet> HaarSystem::riesz_wavelets() const {
    std::vector<HaarWavelet> out;
    const std::string tiles = field_.family() == Family::Minus ? "L" : "LS";
    const QuadRat nls = riesz_LS_normalizer_printed();
    const QuadRat s_inv = len_S_.inverse();
    for (char tile : tiles) {
        const std::string letters = fine_letters(tile);
        QuadRat pos;
        for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
            const QuadRat next = pos + len(letters[i]);
            if (letters[i] == 'L') {
                HaarWavelet w;
                w.tile = tile;
                w.offset = pos / beta_;
                w.terms.dilation = beta_;
                if (letters[i + 1] == 'L') {
                    w.name = "psi_LL";
                    const QuadRat r = beta_ / QuadRat(2);
                    w.terms.terms.push_back({"L", 0, pos, RootCoeff::root(r)});
                    w.terms.terms.push_back({"L", 0, next, RootCoeff{QuadRat(-1), r}});
                } else {
                    w.name = "psi_LS";
                    w.terms.terms.push_back({"L", 0, pos, RootCoeff::root(nls)});
                    w.terms.terms.push_back({"S", 0, next, RootCoeff{QuadRat(-1), nls * s_inv}});
                }
                w.terms.target = w.name;
                w.function = evaluate(w.terms);
                out.push_back(std::move(w));
            }
            pos = next;
        }
    }
    return out;
}

std::vector<HaarWavelet> HaarSystem::riesz_wavelets_negative() const {
    std::vector<HaarWavelet> out = riesz_wavelets();
    for (auto& w : out) {
        if (w.name == "psi_LS") w.name = "psi_SL";
        w.function = w.function.mirrored();
        w.offset = -w.offset;
        w.terms = RefinementTable{w.name, beta_, {}};
    }
    return out;
}

std::vector<RadicalFunction> haar_basis_window(const HaarSystem& h, HaarVariant variant, int tiles) {
    const NodeSequence z = generate_beta_integers(h.field(), tiles);
    const std::vector<HaarWavelet> ws =
        variant == HaarVariant::Orthonormal ? h.orthonormal_wavelets() : h.riesz_wavelets();
    std::vector<RadicalFunction> out;
    for (int k = 0; k < tiles; ++k) {
        const char c = z.letter(k);
        out.push_back(h.phi(c).translated(z.node(k)));
        for (const auto& w : ws)
            if (w.tile == c) out.push_back(w.function.translated(z.node(k)));
    }
    return out;
}

std::pair<std::vector<QuadRat>, std::vector<QuadRat>> haar_translation_sets(const FieldSpec& f, int tiles) {
    const NodeSequence z = generate_beta_integers(f, tiles);
    std::pair<std::vector<QuadRat>, std::vector<QuadRat>> out;
    for (int k = 0; k < tiles; ++k) (z.letter(k) == 'L' ? out.first : out.second).push_back(z.node(k));
    return out;
}

}  // namespace quasiwave
