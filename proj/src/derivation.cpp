#include "idalg/derivation.hpp"

#include <cassert>
#include <map>
#include <mutex>

namespace idalg {

DiffPoly derive_letter(const DiffLetter& a, const DerivationConfig& cfg) {
    if (!cfg.unbounded() && a.order >= cfg.order()) return {};
    DiffLetter up = a;
    ++up.order;
    return poly_mono(mono_from_letter(up));
}

namespace {

bool raisable(const DiffLetter& l, const DerivationConfig& cfg) {
    return cfg.unbounded() || l.order < cfg.order();
}

// Sum over choices (c_i) of raised occurrences per factor, coefficient
// λ^(Σc-1) * Π binomial(e_i, c_i).  At λ = 0 only single raises survive.
void derive_choices(const Monomial& m, const DerivationConfig& cfg, size_t idx,
                    int chosen, Integer count,
                    std::vector<std::pair<DiffLetter, int>>& acc, DiffPoly& out) {
    if (idx == m.factors.size()) {
        if (chosen == 0) return;
        Scalar coeff = Scalar(count) * scalar_pow(cfg.weight.lambda, unsigned(chosen - 1));
        poly_add_term(out, mono_normalize(acc), coeff);
        return;
    }
    const auto& [l, e] = m.factors[idx];
    int cmax = raisable(l, cfg) ? e : 0;
    if (cfg.weight.lambda == 0 && chosen == 1) cmax = 0;
    for (int c = 0; c <= cmax; ++c) {
        if (cfg.weight.lambda == 0 && chosen + c > 1) break;
        size_t mark = acc.size();
        if (e - c > 0) acc.emplace_back(l, e - c);
        if (c > 0) {
            DiffLetter up = l;
            ++up.order;
            acc.emplace_back(up, c);
        }
        derive_choices(m, cfg, idx + 1, chosen + c, count * binomial(unsigned(e), unsigned(c)),
                       acc, out);
        acc.resize(mark);
    }
}

DiffPoly derive_monomial(const Monomial& m, const DerivationConfig& cfg) {
    DiffPoly out;
    std::vector<std::pair<DiffLetter, int>> acc;
    derive_choices(m, cfg, 0, 0, 1, acc, out);
#ifndef NDEBUG
    for (const auto& [t, c] : out) assert(degree(t) == degree(m));
#endif
    return out;
}

// m with its smallest letter lowered one order; requires that letter to have
// order >= 1 and exponent 1 (i.e. m non-functional).
Monomial lower_smallest(const Monomial& m) {
    Monomial rest = m;
    DiffLetter low = rest.factors.back().first;
    rest.factors.pop_back();
    --low.order;
    return mono_mul(rest, mono_from_letter(low));
}

// The truncated rewriting engine queries the same images over and over: the
// elimination walks of every monomial in a graded piece share their rows.
// Keyed per (λ, n) in an outer map resolved once per public call, so the
// lookups inside a walk compare nothing but monomials — rational comparisons
// are too expensive for tree traversal.  Entries are never erased, so
// returned references stay valid.
std::mutex g_memo_mutex;

using DeriveMemo = std::map<Monomial, DiffPoly, MonoLess>;

DeriveMemo& derive_memo(const DerivationConfig& cfg) {
    static std::map<std::pair<Scalar, int>, DeriveMemo> memos;
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    return memos[{cfg.weight.lambda, cfg.order()}];
}

const DiffPoly& derive_monomial_cached(const Monomial& m, const DerivationConfig& cfg,
                                       DeriveMemo& memo) {
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    auto it = memo.find(m);
    if (it == memo.end()) it = memo.emplace(m, derive_monomial(m, cfg)).first;
    return it->second;
}

} // namespace

DiffPoly derive(const DiffPoly& f, const DerivationConfig& cfg) {
    DiffPoly out;
    if (cfg.unbounded()) {
        for (const auto& [m, c] : f)
            for (const auto& [t, k] : derive_monomial(m, cfg)) poly_add_term(out, t, c * k);
        return out;
    }
    DeriveMemo& memo = derive_memo(cfg);
    for (const auto& [m, c] : f)
        for (const auto& [t, k] : derive_monomial_cached(m, cfg, memo))
            poly_add_term(out, t, c * k);
    return out;
}

QTDecomposition quasi_antiderivative(const DiffPoly& f, const DerivationConfig& cfg,
                                     int fuel) {
    if (!cfg.unbounded())
        throw std::invalid_argument("quasi_antiderivative: unbounded mode only");
    QTDecomposition r;
    DiffPoly work = f;
    while (!work.empty()) {
        auto [m, c] = *work.begin();
        if (is_functional(m)) {
            poly_add_term(r.t_part, m, c);
            work.erase(work.begin());
            continue;
        }
        if (fuel-- <= 0)
            throw NonRegularError(
                "quasi-antiderivative does not close off: the weight-" +
                scalar_to_string(cfg.weight.lambda) +
                " algebra is not regular on this input (escalation at " + to_string(m) + ")");
        Monomial gm = lower_smallest(m);
        DiffPoly dg = derive_monomial(gm, cfg);
        auto it = dg.find(m);
        assert(it != dg.end() && dg.begin()->first == m);
        Scalar factor = c / it->second;
        for (const auto& [t, k] : dg) poly_add_term(work, t, -factor * k);
        poly_add_term(r.q_part, gm, factor);
    }
    auto one = r.t_part.find(Monomial{});
    r.e_part = one == r.t_part.end() ? Scalar(0) : one->second;
    return r;
}

namespace {

// ---- truncated decomposition ---------------------------------------------
//
// Same triangular elimination as the unbounded case, against d_n.  The system
// lives on the graded piece of m (fixed base multiset, letter orders <= n;
// d_n preserves it): every non-functional monomial L there is the leading
// term of d_n(L with its smallest letter lowered once), because the raise
// undoing that lowering lands back at order <= n and so survives the
// truncation.  Eliminating the lead against these rows strictly descends the
// finite piece, so the walk always terminates with a functional remainder —
// no fuel bound, and no matrix is ever materialized.
//
// Truncation does lose information at the boundary: a functional monomial
// whose smallest letter has order n can lie in im d_n anyway (its generic
// preimage was truncated away, but another source reaches it).  Such terms
// stay in t — the complement chosen here is spanned by all functional
// monomials, which keeps Q(d(f)) = f exact for letter orders <= n-1 and
// makes reducibility a local property of the monomial.
//
// Interiors recur heavily while normal forms are computed, so results are
// memoized per (λ, n) alongside the derivation images.

using DecompMemo = std::map<Monomial, std::pair<DiffPoly, DiffPoly>, MonoLess>;

DecompMemo& decomp_memo(const DerivationConfig& cfg) {
    static std::map<std::pair<Scalar, int>, DecompMemo> memos;
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    return memos[{cfg.weight.lambda, cfg.unbounded() ? -1 : cfg.order()}];
}

} // namespace

const std::pair<DiffPoly, DiffPoly>& decompose_cached(const Monomial& m,
                                                      const DerivationConfig& cfg) {
    if (!cfg.unbounded() && max_order(m) > cfg.order())
        throw std::invalid_argument("decompose_cached: letter order exceeds truncation");
    DecompMemo& cmemo = decomp_memo(cfg);
    {
        std::lock_guard<std::mutex> lock(g_memo_mutex);
        auto hit = cmemo.find(m);
        if (hit != cmemo.end()) return hit->second;
    }
    DiffPoly g, t;
    if (cfg.unbounded()) {
        QTDecomposition qt = quasi_antiderivative(poly_mono(m), cfg);
        g = std::move(qt.q_part);
        t = std::move(qt.t_part);
    } else {
        DeriveMemo& dmemo = derive_memo(cfg);
        DiffPoly work = poly_mono(m);
        while (!work.empty()) {
            auto [lead, c] = *work.begin();
            if (is_functional(lead)) {
                poly_add_term(t, lead, c);
                work.erase(work.begin());
                continue;
            }
            Monomial gm = lower_smallest(lead);
            const DiffPoly& dg = derive_monomial_cached(gm, cfg, dmemo);
            auto it = dg.find(lead);
            assert(it != dg.end() && dg.begin()->first == lead);
            Scalar factor = c / it->second;
            for (const auto& [tm, k] : dg) poly_add_term(work, tm, -factor * k);
            poly_add_term(g, gm, factor);
        }
    }
    std::pair<DiffPoly, DiffPoly> out{std::move(g), std::move(t)};
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    return cmemo.emplace(m, std::move(out)).first->second;
}

std::pair<DiffPoly, DiffPoly> decompose_truncated(const Monomial& m,
                                                  const DerivationConfig& cfg) {
    if (cfg.unbounded())
        throw std::invalid_argument("decompose_truncated: truncated mode only");
    return decompose_cached(m, cfg);
}

bool is_truncated_pivot(const Monomial& m, const DerivationConfig& cfg) {
    if (cfg.unbounded())
        throw std::invalid_argument("is_truncated_pivot: truncated mode only");
    if (max_order(m) > cfg.order())
        throw std::invalid_argument("is_truncated_pivot: letter order exceeds truncation");
    return !is_functional(m);
}

QTDecomposition qt_decompose(const DiffPoly& f, const DerivationConfig& cfg) {
    if (cfg.unbounded()) return quasi_antiderivative(f, cfg);
    QTDecomposition out;
    for (const auto& [m, c] : f) {
        const auto& [g, t] = decompose_cached(m, cfg);
        for (const auto& [gm, k] : g) poly_add_term(out.q_part, gm, c * k);
        for (const auto& [tm, k] : t) poly_add_term(out.t_part, tm, c * k);
    }
    auto it = out.t_part.find(Monomial{});
    out.e_part = it == out.t_part.end() ? Scalar(0) : it->second;
    return out;
}

} // namespace idalg
