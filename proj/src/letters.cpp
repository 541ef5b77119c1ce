#include "idalg/letters.hpp"

#include <algorithm>
#include <stdexcept>

namespace idalg {

std::strong_ordering compare_letters(const DiffLetter& a, const DiffLetter& b) {
    if (auto c = a.rank <=> b.rank; c != 0) return c;
    if (auto c = a.base.compare(b.base); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    // Same variable: higher derivative order is smaller.
    return b.order <=> a.order;
}

std::strong_ordering compare_monomials(const Monomial& u, const Monomial& v) {
    if (auto c = degree(u) <=> degree(v); c != 0) return c;
    // Equal lengths: lex on the exploded descending letter sequences.  At the
    // first differing factor, either the letters differ, or the exponents do —
    // and the factor with the smaller exponent is followed by a strictly
    // smaller letter, so the smaller exponent loses.
    size_t i = 0, j = 0;
    while (i < u.factors.size() && j < v.factors.size()) {
        const auto& [la, ea] = u.factors[i];
        const auto& [lb, eb] = v.factors[j];
        if (auto c = compare_letters(la, lb); c != 0) return c;
        if (ea != eb) return ea <=> eb;
        ++i;
        ++j;
    }
    return std::strong_ordering::equal; // equal degree forces both exhausted
}

bool is_functional(const Monomial& u) {
    if (u.factors.empty()) return true;
    const auto& [letter, exp] = u.factors.back(); // smallest letter
    return letter.order == 0 || exp > 1;
}

int degree(const Monomial& u) { return u.deg; }

int total_order(const Monomial& u) {
    int d = 0;
    for (const auto& [l, e] : u.factors) d += l.order * e;
    return d;
}

int max_order(const Monomial& u) {
    int d = 0;
    for (const auto& [l, e] : u.factors) d = std::max(d, l.order);
    return d;
}

Monomial mono_from_letter(const DiffLetter& l) { return Monomial{{{l, 1}}, 1}; }

Monomial mono_normalize(std::vector<std::pair<DiffLetter, int>> factors) {
    std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
        return letter_less(b.first, a.first); // descending
    });
    Monomial m;
    for (auto& [l, e] : factors) {
        if (e == 0) continue;
        if (e < 0) throw std::invalid_argument("negative exponent");
        if (!m.factors.empty() && m.factors.back().first == l)
            m.factors.back().second += e;
        else
            m.factors.emplace_back(l, e);
        m.deg += e;
    }
    return m;
}

Monomial mono_mul(const Monomial& u, const Monomial& v) {
    // Merge two descending factor lists.  The degree is re-derived from the
    // inputs' lists rather than their caches, so callers may pass partially
    // edited monomials.
    Monomial m;
    size_t i = 0, j = 0;
    while (i < u.factors.size() || j < v.factors.size()) {
        if (j == v.factors.size() ||
            (i < u.factors.size() && letter_less(v.factors[j].first, u.factors[i].first))) {
            m.factors.push_back(u.factors[i++]);
        } else if (i == u.factors.size() || letter_less(u.factors[i].first, v.factors[j].first)) {
            m.factors.push_back(v.factors[j++]);
        } else {
            m.factors.emplace_back(u.factors[i].first,
                                   u.factors[i].second + v.factors[j].second);
            ++i;
            ++j;
        }
        m.deg += m.factors.back().second;
    }
    return m;
}

std::string to_string(const DiffLetter& l) {
    if (l.order == 0) return l.base;
    return l.base + "^(" + std::to_string(l.order) + ")";
}

std::string to_string(const Monomial& u) {
    if (u.factors.empty()) return "1";
    // storage is the standard form (descending); conventional print order is
    // ascending by variable with higher derivative orders first: x^(2)*x*y
    std::string s;
    for (auto it = u.factors.rbegin(); it != u.factors.rend(); ++it) {
        if (!s.empty()) s += "*";
        s += to_string(it->first);
        if (it->second > 1) s += "^" + std::to_string(it->second);
    }
    return s;
}

} // namespace idalg
