#include "idalg/gsnf.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace idalg {

RuleInstance make_rule(const RBElement& u, const RBElement& v, const DerivationConfig& cfg) {
    RBElement du = derive_word(u, cfg);
    RBElement Pv = apply_P(v);
    RBElement e = apply_P(mix_shuffle(du, Pv, cfg.weight));
    e = rb_sub(e, mix_shuffle(u, Pv, cfg.weight));
    e = rb_add(e, apply_P(mix_shuffle(u, v, cfg.weight)));
    if (cfg.weight.lambda != 0)
        e = rb_add(e, rb_scale(apply_P(mix_shuffle(du, v, cfg.weight)), cfg.weight.lambda));
    if (!e.empty()) e = rb_scale(e, Scalar(1) / e.begin()->second);
    return RuleInstance{u, v, std::move(e)};
}

std::pair<TensorWord, Scalar> leading_term(const RBElement& f) {
    if (f.empty()) throw std::invalid_argument("leading term of zero");
    return {f.begin()->first, f.begin()->second};
}

RBElement subst(const RewriteContext& q, const RBElement& a, const DerivationConfig& cfg) {
    RBElement h = a;
    for (int i = 0; i < q.derivative_wrap; ++i) h = derive_word(h, cfg);
    if (!q.residual.is_one())
        h = mix_shuffle(rb_word(TensorWord{{q.residual}}), h, cfg.weight);
    if (!q.suffix.empty())
        h = mix_shuffle(h, apply_P(rb_word(TensorWord{q.suffix})), cfg.weight);
    for (auto it = q.prefix.rbegin(); it != q.prefix.rend(); ++it)
        h = mix_shuffle(rb_word(TensorWord{{*it}}), apply_P(h), cfg.weight);
    return h;
}

bool is_normal_splice(const RewriteContext& q, const TensorWord& w,
                      const DerivationConfig& cfg) {
    if (q.derivative_wrap > 0) {
        // d^l(w) must remain one monomial: a single letter of exponent 1,
        // whose raised order survives the truncation.
        if (w.depth() != 1) return false;
        const Monomial& m = w.factors[0];
        if (m.factors.size() != 1 || m.factors[0].second != 1) return false;
        if (!cfg.unbounded() && m.factors[0].first.order + q.derivative_wrap > cfg.order())
            return false;
        return true;
    }
    // Type II: a deep w continues the P-chain, which collides with a
    // nonempty suffix (two P-factors in one slot).
    return w.depth() == 1 || q.suffix.empty();
}

namespace {

bool interior_reducible(const Monomial& m, const DerivationConfig& cfg) {
    if (cfg.unbounded()) return !is_functional(m);
    return is_truncated_pivot(m, cfg);
}

// interior = d(g) + t with t out of the rule set's reach.
const std::pair<DiffPoly, DiffPoly>& split_interior(const Monomial& m,
                                                    const DerivationConfig& cfg) {
    return decompose_cached(m, cfg);
}

} // namespace

bool is_irreducible(const TensorWord& w, const DerivationConfig& cfg) {
    for (size_t j = 1; j + 1 < w.factors.size(); ++j)
        if (interior_reducible(w.factors[j], cfg)) return false;
    return true;
}

RBElement normal_form(const RBElement& f, const DerivationConfig& cfg, RewriteTrace* trace,
                      Strategy strategy) {
    RBElement result;
    RBElement agenda = f;
    while (!agenda.empty()) {
        auto node = agenda.extract(agenda.begin());
        const TensorWord& w = node.key();
        Scalar c = node.mapped();
        int k = w.depth() - 1;
        int pos = -1;
        if (strategy == Strategy::Leftmost) {
            for (int j = 1; j < k; ++j)
                if (interior_reducible(w.factors[j], cfg)) { pos = j; break; }
        } else {
            for (int j = k - 1; j >= 1; --j)
                if (interior_reducible(w.factors[j], cfg)) { pos = j; break; }
        }
        if (pos < 0) {
            rb_add_term(result, w, c);
            continue;
        }
        const Monomial m = w.factors[pos];
        const auto& [g, t] = split_interior(m, cfg);
        if (trace) trace->push_back({w, pos, m, g, t});
        auto spliced = [&](int at, const Monomial& mono, int drop_after) {
            // copy of w with factors[at] replaced by mono and the factor at
            // position drop_after removed (-1: keep all).
            TensorWord nw;
            nw.factors.reserve(w.factors.size());
            for (int i = 0; i < int(w.factors.size()); ++i) {
                if (i == drop_after) continue;
                nw.factors.push_back(i == at ? mono : w.factors[i]);
            }
            return nw;
        };
        // P(m P(tail)) -> g P(tail) - P(g tail_0 ...) - λ P(d(g) tail_0 ...) + P(t P(tail))
        for (const auto& [gm, gc] : g) {
            rb_add_term(agenda, spliced(pos - 1, mono_mul(w.factors[pos - 1], gm), pos),
                        c * gc);
            rb_add_term(agenda, spliced(pos + 1, mono_mul(gm, w.factors[pos + 1]), pos),
                        -c * gc);
        }
        if (cfg.weight.lambda != 0) {
            DiffPoly dg = poly_sub(poly_mono(m), t); // d(g) = m - t, exactly
            for (const auto& [dm, dc] : dg)
                rb_add_term(agenda, spliced(pos + 1, mono_mul(dm, w.factors[pos + 1]), pos),
                            -cfg.weight.lambda * c * dc);
        }
        for (const auto& [tm, tc] : t)
            rb_add_term(agenda, spliced(pos, tm, -1), c * tc);
    }
    return result;
}

RBElement nf_product(const RBElement& f, const RBElement& g, const DerivationConfig& cfg) {
    return normal_form(mix_shuffle(f, g, cfg.weight), cfg);
}

RBElement nf_P(const RBElement& f, const DerivationConfig& cfg) {
    return normal_form(apply_P(f), cfg);
}

RBElement nf_d(const RBElement& f, const DerivationConfig& cfg) {
    return normal_form(derive_word(f, cfg), cfg);
}

RBElement check_composition(const RuleInstance& f, const RuleInstance& g,
                            const Placement& placement, const DerivationConfig& cfg) {
    const TensorWord& fbar = leading_term(f.element).first;
    if (std::holds_alternative<MultiplicationPlacement>(placement)) {
        const auto& p = std::get<MultiplicationPlacement>(placement);
        if (fbar.depth() < 2)
            throw std::invalid_argument("multiplication composition needs a P-shaped lead");
        return normal_form(mix_shuffle(f.element, p.multiplier, cfg.weight), cfg);
    }
    if (std::holds_alternative<IntersectionPlacement>(placement)) {
        const auto& p = std::get<IntersectionPlacement>(placement);
        RBElement fu = mix_shuffle(f.element, p.u, cfg.weight);
        RBElement vg = mix_shuffle(p.v, g.element, cfg.weight);
        if (fu.empty() || vg.empty() ||
            !(leading_term(fu).first == leading_term(vg).first))
            throw std::invalid_argument("intersection placement: leading words differ");
        return normal_form(rb_sub(fu, vg), cfg);
    }
    if (std::holds_alternative<InclusionPlacement>(placement)) {
        const auto& p = std::get<InclusionPlacement>(placement);
        const TensorWord& gbar = leading_term(g.element).first;
        RBElement spliced_lead = subst(p.q, rb_word(gbar), cfg);
        if (spliced_lead.empty() || !(leading_term(spliced_lead).first == fbar))
            throw std::invalid_argument("inclusion placement: context does not reach lead f");
        return normal_form(rb_sub(f.element, subst(p.q, g.element, cfg)), cfg);
    }
    const auto& p = std::get<InclusionProductPlacement>(placement);
    const TensorWord& gbar = leading_term(g.element).first;
    RBElement probe = apply_P(mix_shuffle(p.cofactor, rb_word(gbar), cfg.weight));
    if (probe.empty() || !(leading_term(probe).first == fbar))
        throw std::invalid_argument("inclusion placement: P(cofactor*lead g) != lead f");
    RBElement image = apply_P(mix_shuffle(p.cofactor, g.element, cfg.weight));
    return normal_form(rb_sub(f.element, image), cfg);
}

bool check_weak_monomial_property(const TensorWord& u, const TensorWord& v,
                                  const RewriteContext& q, const DerivationConfig& cfg) {
    if (compare_words(u, v) == std::strong_ordering::greater)
        throw std::invalid_argument("weak-monomial check requires u <= v");
    if (q.derivative_wrap > 0 && !is_normal_splice(q, v, cfg)) return true; // clause not applicable
    RBElement su = subst(q, rb_word(u), cfg);
    RBElement sv = subst(q, rb_word(v), cfg);
    if (su.empty()) return true; // u-instance died under truncation; <= holds trivially
    if (sv.empty()) return false;
    return compare_words(leading_term(su).first, leading_term(sv).first) !=
           std::strong_ordering::greater;
}

std::vector<TensorWord> enumerate_basis(int max_depth, int max_degree, int max_order,
                                        const std::vector<std::string>& alphabet,
                                        const DerivationConfig& cfg) {
    if (max_depth < 1 || max_degree < 0 || max_order < 0)
        throw std::invalid_argument("enumerate_basis: bounds must be nonnegative");
    if (!cfg.unbounded()) max_order = std::min(max_order, cfg.order());
    // letter pool, then all monomials of degree <= max_degree
    std::vector<DiffLetter> letters;
    for (size_t r = 0; r < alphabet.size(); ++r)
        for (int o = 0; o <= max_order; ++o)
            letters.push_back(DiffLetter{alphabet[r], o, int(r)});
    std::vector<Monomial> pool;
    std::vector<std::pair<DiffLetter, int>> acc;
    std::function<void(size_t, int)> rec = [&](size_t i, int deg) {
        pool.push_back(mono_normalize(acc));
        if (deg == max_degree) return;
        for (size_t j = i; j < letters.size(); ++j) {
            acc.emplace_back(letters[j], 1);
            rec(j, deg + 1);
            acc.pop_back();
        }
    };
    acc.clear();
    std::vector<Monomial> seen;
    rec(0, 0);
    std::sort(pool.begin(), pool.end(), MonoLess{});
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::vector<Monomial> interior_pool;
    for (const auto& m : pool)
        if (!interior_reducible(m, cfg)) interior_pool.push_back(m);
    std::vector<TensorWord> out;
    std::vector<Monomial> word;
    std::function<void(int)> build = [&](int depth) {
        if (int(word.size()) + 1 > max_depth) return;
        for (const auto& last : pool) {
            TensorWord w;
            w.factors = word;
            w.factors.push_back(last);
            out.push_back(std::move(w));
        }
        if (int(word.size()) + 2 > max_depth) return;
        // extend: current last position becomes an interior
        for (const auto& mid : (word.empty() ? pool : interior_pool)) {
            word.push_back(mid);
            build(depth + 1);
            word.pop_back();
        }
    };
    build(1);
    std::sort(out.begin(), out.end(), [](const TensorWord& a, const TensorWord& b) {
        return compare_words(a, b) == std::strong_ordering::less;
    });
    return out;
}

} // namespace idalg
