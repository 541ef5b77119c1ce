#include "idalg/ida.hpp"

#include <stdexcept>

namespace idalg {

void ida_add_term(IDAElement& f, const IDAKey& k, const Scalar& c) {
    if (c == 0) return;
    for (size_t i = 1; i < k.word.factors.size(); ++i)
        if (!is_functional(k.word.factors[i]))
            throw std::logic_error("E(A) term with non-functional tail factor " +
                                   to_string(k.word.factors[i]));
    auto [it, inserted] = f.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) f.erase(it);
    }
}

IDAElement ida_add(const IDAElement& a, const IDAElement& b) {
    IDAElement r = a;
    for (const auto& [k, c] : b) ida_add_term(r, k, c);
    return r;
}

IDAElement ida_sub(const IDAElement& a, const IDAElement& b) {
    IDAElement r = a;
    for (const auto& [k, c] : b) ida_add_term(r, k, -c);
    return r;
}

IDAElement ida_scale(const IDAElement& a, const Scalar& c) {
    IDAElement r;
    if (c == 0) return r;
    for (const auto& [k, v] : a) r.emplace(k, v * c);
    return r;
}

IDAElement ida_mul(const IDAElement& a, const IDAElement& b, const DerivationConfig& cfg) {
    IDAElement r;
    for (const auto& [ka, ca] : a) {
        for (const auto& [kb, cb] : b) {
            Monomial eps = mono_mul(ka.eps, kb.eps);
            RBElement prod = mix_shuffle(rb_word(ka.word), rb_word(kb.word), cfg.weight);
            for (const auto& [w, c] : prod) ida_add_term(r, {eps, w}, ca * cb * c);
        }
    }
    return r;
}

IDAElement ida_derive(const IDAElement& a, const DerivationConfig& cfg) {
    IDAElement r;
    for (const auto& [k, c] : a) {
        RBElement dw = derive_word(rb_word(k.word), cfg);
        for (const auto& [w, cw] : dw) ida_add_term(r, {k.eps, w}, c * cw);
    }
    return r;
}

namespace {

IDAElement pi_word(const TensorWord& w, const DerivationConfig& cfg) {
    const Monomial& head = w.factors[0];
    const auto& [q_part, t_part] = decompose_cached(head, cfg);
    IDAElement out;
    if (w.depth() == 1) {
        for (const auto& [m, c] : q_part) {
            ida_add_term(out, {Monomial{}, TensorWord{{m}}}, c);   // Q(a)
            ida_add_term(out, {m, word_one()}, -c);                // -ε(Q(a)) (x) 1
        }
        for (const auto& [m, c] : t_part)
            ida_add_term(out, {Monomial{}, TensorWord{{Monomial{}, m}}}, c); // 1 (x) T(a)
        return out;
    }
    std::vector<Monomial> tail(w.factors.begin() + 1, w.factors.end());
    std::vector<Monomial> rest(w.factors.begin() + 2, w.factors.end());
    auto shifted = [&](const Monomial& m) {
        TensorWord nw;
        nw.factors.reserve(rest.size() + 1);
        nw.factors.push_back(mono_mul(m, tail[0]));
        nw.factors.insert(nw.factors.end(), rest.begin(), rest.end());
        return nw;
    };
    for (const auto& [m, c] : q_part) {
        TensorWord nw;
        nw.factors.reserve(tail.size() + 1);
        nw.factors.push_back(m);
        nw.factors.insert(nw.factors.end(), tail.begin(), tail.end());
        ida_add_term(out, {Monomial{}, nw}, c); // Q(a) (x) ā
        for (const auto& [k2, c2] : pi_word(shifted(m), cfg))
            ida_add_term(out, k2, -c * c2); // -π(Q(a)·ā)
    }
    if (cfg.weight.lambda != 0) {
        DiffPoly dq = poly_sub(poly_mono(head), t_part); // d(Q(a)) = a - T(a)
        for (const auto& [m, c] : dq)
            for (const auto& [k2, c2] : pi_word(shifted(m), cfg))
                ida_add_term(out, k2, -cfg.weight.lambda * c * c2);
    }
    for (const auto& [m, c] : t_part) {
        TensorWord nw;
        nw.factors.reserve(tail.size() + 2);
        nw.factors.push_back(Monomial{});
        nw.factors.push_back(m);
        nw.factors.insert(nw.factors.end(), tail.begin(), tail.end());
        ida_add_term(out, {Monomial{}, nw}, c); // 1 (x) T(a) (x) ā
    }
    return out;
}

} // namespace

IDAElement ida_integrate(const IDAElement& a, const DerivationConfig& cfg) {
    IDAElement r;
    for (const auto& [k, c] : a) {
        for (const auto& [k2, c2] : pi_word(k.word, cfg))
            ida_add_term(r, {mono_mul(k.eps, k2.eps), k2.word}, c * c2);
    }
    return r;
}

IDAElement embed(const DiffPoly& f) {
    IDAElement r;
    for (const auto& [m, c] : f) ida_add_term(r, {Monomial{}, TensorWord{{m}}}, c);
    return r;
}

IDAElement to_evaluation_form(const RBElement& f, const DerivationConfig& cfg) {
    IDAElement out;
    for (const auto& [w, c] : f) {
        IDAElement val = embed(poly_mono(w.factors.back()));
        for (size_t i = w.factors.size() - 1; i-- > 0;)
            val = ida_mul(embed(poly_mono(w.factors[i])), ida_integrate(val, cfg), cfg);
        for (const auto& [k, v] : val) ida_add_term(out, k, c * v);
    }
    return out;
}

std::string to_string(const IDAElement& a) {
    if (a.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : a) {
        Scalar v = c;
        if (s.empty()) {
            if (v < 0) { s += "-"; v = -v; }
        } else {
            s += v < 0 ? " - " : " + ";
            if (v < 0) v = -v;
        }
        std::string body;
        if (!k.eps.is_one()) body = "eps[" + to_string(k.eps) + "]";
        std::string word = to_string(k.word);
        if (word != "1") {
            if (!body.empty()) body += "*";
            body += word;
        }
        if (body.empty()) body = "1";
        if (v != 1 || body == "1") {
            s += scalar_to_string(v);
            if (body != "1") s += "*";
        }
        if (body != "1") s += body;
    }
    return s;
}

} // namespace idalg
