#include "idalg/tensor.hpp"

#include <mutex>
#include <sstream>

namespace idalg {

std::strong_ordering compare_words(const TensorWord& a, const TensorWord& b) {
    if (auto c = a.factors.size() <=> b.factors.size(); c != 0) return c;
    for (size_t i = 0; i < a.factors.size(); ++i)
        if (auto c = compare_monomials(a.factors[i], b.factors[i]); c != 0) return c;
    return std::strong_ordering::equal;
}

void rb_add_term(RBElement& f, const TensorWord& w, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = f.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) f.erase(it);
    }
}

RBElement rb_add(const RBElement& f, const RBElement& g) {
    RBElement r = f;
    for (const auto& [w, c] : g) rb_add_term(r, w, c);
    return r;
}

RBElement rb_sub(const RBElement& f, const RBElement& g) {
    RBElement r = f;
    for (const auto& [w, c] : g) rb_add_term(r, w, -c);
    return r;
}

RBElement rb_scale(const RBElement& f, const Scalar& c) {
    RBElement r;
    if (c == 0) return r;
    for (const auto& [w, k] : f) r.emplace(w, k * c);
    return r;
}

TensorWord word_one() { return TensorWord{{Monomial{}}}; }

TensorWord word_of(std::vector<Monomial> factors) { return TensorWord{std::move(factors)}; }

RBElement rb_one() { return rb_word(word_one()); }

RBElement rb_word(const TensorWord& w, const Scalar& c) {
    RBElement r;
    rb_add_term(r, w, c);
    return r;
}

RBElement rb_from_poly(const DiffPoly& f) {
    RBElement r;
    for (const auto& [m, c] : f) r.emplace(TensorWord{{m}}, c);
    return r;
}

namespace {

// Tail sequences are (possibly empty) factor lists; the recursion
//   sh(a:as, b:bs) = a (x) sh(as, b:bs) + b (x) sh(a:as, bs) + λ (ab) (x) sh(as, bs)
// is memoized per session keyed by (λ, tails).
using Tail = std::vector<Monomial>;

std::string tail_key(const Tail& t) {
    std::string s;
    for (const auto& m : t) {
        s += to_string(m);
        s += "|";
    }
    return s;
}

std::mutex g_mix_mutex;
std::map<std::string, std::vector<std::pair<Tail, Scalar>>>& mix_cache() {
    static std::map<std::string, std::vector<std::pair<Tail, Scalar>>> cache;
    return cache;
}

std::vector<std::pair<Tail, Scalar>> shuffle_tails(const Tail& a, const Tail& b,
                                                   const Weight& w) {
    if (a.empty()) return {{b, 1}};
    if (b.empty()) return {{a, 1}};
    std::string key = scalar_to_string(w.lambda) + "#" + tail_key(a) + "#" + tail_key(b);
    {
        std::lock_guard<std::mutex> lock(g_mix_mutex);
        auto& cache = mix_cache();
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::vector<std::pair<Tail, Scalar>> out;
    auto emit = [&out](const Monomial& head, const std::vector<std::pair<Tail, Scalar>>& tails,
                       const Scalar& c) {
        for (const auto& [t, k] : tails) {
            Tail nt;
            nt.reserve(t.size() + 1);
            nt.push_back(head);
            nt.insert(nt.end(), t.begin(), t.end());
            out.emplace_back(std::move(nt), c * k);
        }
    };
    Tail as(a.begin() + 1, a.end());
    Tail bs(b.begin() + 1, b.end());
    emit(a[0], shuffle_tails(as, b, w), 1);
    emit(b[0], shuffle_tails(a, bs, w), 1);
    if (w.lambda != 0) emit(mono_mul(a[0], b[0]), shuffle_tails(as, bs, w), w.lambda);
    std::lock_guard<std::mutex> lock(g_mix_mutex);
    return mix_cache().emplace(key, std::move(out)).first->second;
}

} // namespace

RBElement mix_shuffle(const RBElement& a, const RBElement& b, const Weight& w) {
    RBElement r;
    for (const auto& [wa, ca] : a) {
        Tail ta(wa.factors.begin() + 1, wa.factors.end());
        for (const auto& [wb, cb] : b) {
            Tail tb(wb.factors.begin() + 1, wb.factors.end());
            Monomial head = mono_mul(wa.factors[0], wb.factors[0]);
            for (const auto& [tail, k] : shuffle_tails(ta, tb, w)) {
                TensorWord word;
                word.factors.reserve(tail.size() + 1);
                word.factors.push_back(head);
                word.factors.insert(word.factors.end(), tail.begin(), tail.end());
                rb_add_term(r, word, ca * cb * k);
            }
        }
    }
    return r;
}

RBElement apply_P(const RBElement& a) {
    RBElement r;
    for (const auto& [w, c] : a) {
        TensorWord word;
        word.factors.reserve(w.factors.size() + 1);
        word.factors.push_back(Monomial{});
        word.factors.insert(word.factors.end(), w.factors.begin(), w.factors.end());
        r.emplace(word, c);
    }
    return r;
}

RBElement derive_word(const RBElement& a, const DerivationConfig& cfg) {
    RBElement r;
    for (const auto& [w, c] : a) {
        DiffPoly d0 = derive(poly_mono(w.factors[0]), cfg);
        if (w.depth() == 1) {
            for (const auto& [m, k] : d0) rb_add_term(r, TensorWord{{m}}, c * k);
            continue;
        }
        std::vector<Monomial> rest(w.factors.begin() + 1, w.factors.end());
        for (const auto& [m, k] : d0) {
            TensorWord word;
            word.factors.reserve(rest.size() + 1);
            word.factors.push_back(m);
            word.factors.insert(word.factors.end(), rest.begin(), rest.end());
            rb_add_term(r, word, c * k);
        }
        TensorWord merged;
        merged.factors.reserve(rest.size());
        merged.factors.push_back(mono_mul(w.factors[0], rest[0]));
        merged.factors.insert(merged.factors.end(), rest.begin() + 1, rest.end());
        rb_add_term(r, merged, c);
        if (cfg.weight.lambda != 0) {
            for (const auto& [m, k] : d0) {
                TensorWord t;
                t.factors.reserve(rest.size());
                t.factors.push_back(mono_mul(m, rest[0]));
                t.factors.insert(t.factors.end(), rest.begin() + 1, rest.end());
                rb_add_term(r, t, c * k * cfg.weight.lambda);
            }
        }
    }
    return r;
}

int breadth(const TensorWord& w) {
    return degree(w.factors[0]) + (w.depth() > 1 ? 1 : 0);
}

std::string to_string(const TensorWord& w) {
    std::string s;
    for (size_t i = 0; i + 1 < w.factors.size(); ++i) {
        const Monomial& m = w.factors[i];
        if (!m.is_one()) s += to_string(m) + "*";
        s += "P(";
    }
    s += to_string(w.factors.back());
    s.append(w.factors.size() - 1, ')');
    return s;
}

std::string to_string(const RBElement& f) {
    if (f.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : f) {
        Scalar a = c;
        if (s.empty()) {
            if (a < 0) { s += "-"; a = -a; }
        } else {
            s += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        std::string body = to_string(w);
        if (a != 1 || body == "1") {
            s += scalar_to_string(a);
            if (body != "1") s += "*";
        }
        if (body != "1") s += body;
    }
    return s;
}

} // namespace idalg
