#pragma once

#include <map>
#include <string>
#include <vector>

#include "idalg/frontend.hpp"
#include "idalg/ida.hpp"

namespace idalg {

// ---- Q[t] with d/dt and ∫_0^t: the weight-0 oracle ------------------------

struct PolyModel {
    std::vector<Scalar> coeffs; // ascending powers of t, no trailing zeros

    bool operator==(const PolyModel&) const = default;
};

PolyModel pm_make(std::vector<Scalar> coeffs);
PolyModel pm_const(const Scalar& c);
PolyModel pm_t();
PolyModel pm_add(const PolyModel& f, const PolyModel& g);
PolyModel pm_mul(const PolyModel& f, const PolyModel& g);
PolyModel pm_scale(const PolyModel& f, const Scalar& c);
PolyModel poly_d(const PolyModel& f);
PolyModel poly_P(const PolyModel& f);
std::string to_string(const PolyModel& f);

// ---- finite rational windows with λ-difference and summation --------------
//
// Values f_0..f_{N-1}; each difference shrinks the window by one, summation
// extends it; equality is asserted over the common valid range only.

struct SequenceModel {
    std::vector<Scalar> values;
};

SequenceModel sm_make(std::vector<Scalar> values);
SequenceModel sm_add(const SequenceModel& f, const SequenceModel& g);
SequenceModel sm_mul(const SequenceModel& f, const SequenceModel& g);
SequenceModel sm_scale(const SequenceModel& f, const Scalar& c);
SequenceModel seq_d(const SequenceModel& f, const Scalar& lambda);
SequenceModel seq_P(const SequenceModel& f, const Scalar& lambda);
bool sm_eq(const SequenceModel& f, const SequenceModel& g); // on the common range
std::string to_string(const SequenceModel& f);

// ---- evaluation homomorphisms ---------------------------------------------

// Model operation bundles; both models go through the same templated
// evaluators, including ε(a) -> E(φ(a)) with E = id - P∘D inside the model.
struct PolyOps {
    using V = PolyModel;
    V add(const V& a, const V& b) const { return pm_add(a, b); }
    V mul(const V& a, const V& b) const { return pm_mul(a, b); }
    V scale(const V& a, const Scalar& c) const { return pm_scale(a, c); }
    V d(const V& a) const { return poly_d(a); }
    V P(const V& a) const { return poly_P(a); }
    V one() const { return pm_const(1); }
    V zero() const { return pm_const(0); }
    bool eq(const V& a, const V& b) const { return a == b; }
};

struct SeqOps {
    Scalar lambda;
    using V = SequenceModel;
    V add(const V& a, const V& b) const { return sm_add(a, b); }
    V mul(const V& a, const V& b) const { return sm_mul(a, b); }
    V scale(const V& a, const Scalar& c) const { return sm_scale(a, c); }
    V d(const V& a) const { return seq_d(a, lambda); }
    V P(const V& a) const { return seq_P(a, lambda); }
    V one() const { return sm_make(std::vector<Scalar>(16, Scalar(1))); }
    V zero() const { return sm_make(std::vector<Scalar>(16, Scalar(0))); }
    bool eq(const V& a, const V& b) const { return sm_eq(a, b); }
};

template <class Ops>
using Assignment = std::map<std::string, typename Ops::V>;

template <class Ops>
typename Ops::V evaluate(const DiffPoly& f, const Assignment<Ops>& assign, const Ops& ops) {
    auto r = ops.zero();
    for (const auto& [m, c] : f) {
        auto v = ops.one();
        for (const auto& [l, e] : m.factors) {
            auto it = assign.find(l.base);
            if (it == assign.end()) throw std::invalid_argument("unassigned variable " + l.base);
            auto base = it->second;
            for (int k = 0; k < l.order; ++k) base = ops.d(base);
            for (int k = 0; k < e; ++k) v = ops.mul(v, base);
        }
        r = ops.add(r, ops.scale(v, c));
    }
    return r;
}

template <class Ops>
typename Ops::V evaluate(const RBElement& f, const Assignment<Ops>& assign, const Ops& ops) {
    auto r = ops.zero();
    for (const auto& [w, c] : f) {
        auto v = evaluate(poly_mono(w.factors.back()), assign, ops);
        for (size_t i = w.factors.size() - 1; i-- > 0;)
            v = ops.mul(evaluate(poly_mono(w.factors[i]), assign, ops), ops.P(v));
        r = ops.add(r, ops.scale(v, c));
    }
    return r;
}

template <class Ops>
typename Ops::V evaluate(const IDAElement& f, const Assignment<Ops>& assign, const Ops& ops) {
    auto r = ops.zero();
    for (const auto& [k, c] : f) {
        auto v = evaluate(rb_word(k.word), assign, ops);
        if (!k.eps.is_one()) {
            auto a = evaluate(poly_mono(k.eps), assign, ops);
            auto e = ops.add(a, ops.scale(ops.P(ops.d(a)), -1)); // E = id - P∘D
            v = ops.mul(e, v);
        }
        r = ops.add(r, ops.scale(v, c));
    }
    return r;
}

template <class Ops>
typename Ops::V evaluate(const OpExpr& f, const Assignment<Ops>& assign, const Ops& ops) {
    auto r = ops.zero();
    for (const auto& [term, coeff] : f.terms) {
        auto v = ops.one();
        for (const auto& atom : term.atoms) {
            typename Ops::V a;
            switch (atom.kind) {
                case OpAtom::Kind::Letter: {
                    auto it = assign.find(atom.letter.base);
                    if (it == assign.end())
                        throw std::invalid_argument("unassigned variable " + atom.letter.base);
                    a = it->second;
                    for (int k = 0; k < atom.letter.order; ++k) a = ops.d(a);
                    break;
                }
                case OpAtom::Kind::D: a = ops.d(evaluate(*atom.arg, assign, ops)); break;
                case OpAtom::Kind::P: a = ops.P(evaluate(*atom.arg, assign, ops)); break;
            }
            v = ops.mul(v, a);
        }
        r = ops.add(r, ops.scale(v, coeff));
    }
    return r;
}

// "t^2 + 1", "2/3*t^3 - t" etc.
PolyModel parse_poly_model(const std::string& s);
// comma list "1, 2, 4/3, 0"
SequenceModel parse_sequence_model(const std::string& s);

} // namespace idalg
