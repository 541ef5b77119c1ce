#include "idalg/poly.hpp"

#include <stdexcept>

namespace idalg {

void poly_add_term(DiffPoly& f, const Monomial& m, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = f.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) f.erase(it);
    }
}

DiffPoly poly_add(const DiffPoly& f, const DiffPoly& g) {
    DiffPoly r = f;
    for (const auto& [m, c] : g) poly_add_term(r, m, c);
    return r;
}

DiffPoly poly_sub(const DiffPoly& f, const DiffPoly& g) {
    DiffPoly r = f;
    for (const auto& [m, c] : g) poly_add_term(r, m, -c);
    return r;
}

DiffPoly poly_scale(const DiffPoly& f, const Scalar& c) {
    DiffPoly r;
    if (c == 0) return r;
    for (const auto& [m, k] : f) r.emplace(m, k * c);
    return r;
}

DiffPoly poly_mul(const DiffPoly& f, const DiffPoly& g) {
    DiffPoly r;
    for (const auto& [mf, cf] : f)
        for (const auto& [mg, cg] : g)
            poly_add_term(r, mono_mul(mf, mg), cf * cg);
    return r;
}

DiffPoly poly_one() { return DiffPoly{{Monomial{}, Scalar(1)}}; }

DiffPoly poly_mono(const Monomial& m, const Scalar& c) {
    DiffPoly r;
    poly_add_term(r, m, c);
    return r;
}

bool poly_is_zero(const DiffPoly& f) { return f.empty(); }

const std::pair<const Monomial, Scalar>& poly_lead(const DiffPoly& f) {
    if (f.empty()) throw std::invalid_argument("leading term of zero");
    return *f.begin();
}

std::string to_string(const DiffPoly& f) {
    if (f.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : f) {
        Scalar a = c;
        if (s.empty()) {
            if (a < 0) { s += "-"; a = -a; }
        } else {
            s += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        if (a != 1 || m.is_one()) {
            s += scalar_to_string(a);
            if (!m.is_one()) s += "*";
        }
        if (!m.is_one()) s += to_string(m);
    }
    return s;
}

} // namespace idalg
