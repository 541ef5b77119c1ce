#include "idalg/models.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace idalg {

static void pm_trim(std::vector<Scalar>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

PolyModel pm_make(std::vector<Scalar> coeffs) {
    pm_trim(coeffs);
    return {std::move(coeffs)};
}

PolyModel pm_const(const Scalar& c) { return pm_make({c}); }

PolyModel pm_t() { return pm_make({0, 1}); }

PolyModel pm_add(const PolyModel& f, const PolyModel& g) {
    std::vector<Scalar> c(std::max(f.coeffs.size(), g.coeffs.size()), Scalar(0));
    for (size_t i = 0; i < f.coeffs.size(); ++i) c[i] += f.coeffs[i];
    for (size_t i = 0; i < g.coeffs.size(); ++i) c[i] += g.coeffs[i];
    return pm_make(std::move(c));
}

PolyModel pm_mul(const PolyModel& f, const PolyModel& g) {
    if (f.coeffs.empty() || g.coeffs.empty()) return {};
    std::vector<Scalar> c(f.coeffs.size() + g.coeffs.size() - 1, Scalar(0));
    for (size_t i = 0; i < f.coeffs.size(); ++i)
        for (size_t j = 0; j < g.coeffs.size(); ++j) c[i + j] += f.coeffs[i] * g.coeffs[j];
    return pm_make(std::move(c));
}

PolyModel pm_scale(const PolyModel& f, const Scalar& c) {
    if (c == 0) return {};
    auto r = f.coeffs;
    for (auto& x : r) x *= c;
    return {std::move(r)};
}

PolyModel poly_d(const PolyModel& f) {
    std::vector<Scalar> c;
    for (size_t i = 1; i < f.coeffs.size(); ++i) c.push_back(f.coeffs[i] * Scalar(i));
    return pm_make(std::move(c));
}

PolyModel poly_P(const PolyModel& f) {
    std::vector<Scalar> c(f.coeffs.size() + 1, Scalar(0));
    for (size_t i = 0; i < f.coeffs.size(); ++i) c[i + 1] = f.coeffs[i] / Scalar(i + 1);
    return pm_make(std::move(c));
}

std::string to_string(const PolyModel& f) {
    if (f.coeffs.empty()) return "0";
    std::string out;
    for (size_t i = f.coeffs.size(); i-- > 0;) {
        const Scalar& c = f.coeffs[i];
        if (c == 0) continue;
        Scalar a = c;
        if (out.empty()) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        if (i == 0) {
            out += scalar_to_string(a);
        } else {
            if (a != 1) out += scalar_to_string(a) + "*";
            out += i == 1 ? "t" : "t^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

SequenceModel sm_make(std::vector<Scalar> values) { return {std::move(values)}; }

SequenceModel sm_add(const SequenceModel& f, const SequenceModel& g) {
    size_t n = std::min(f.values.size(), g.values.size());
    std::vector<Scalar> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = f.values[i] + g.values[i];
    return {std::move(v)};
}

SequenceModel sm_mul(const SequenceModel& f, const SequenceModel& g) {
    size_t n = std::min(f.values.size(), g.values.size());
    std::vector<Scalar> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = f.values[i] * g.values[i];
    return {std::move(v)};
}

SequenceModel sm_scale(const SequenceModel& f, const Scalar& c) {
    auto v = f.values;
    for (auto& x : v) x *= c;
    return {std::move(v)};
}

SequenceModel seq_d(const SequenceModel& f, const Scalar& lambda) {
    if (lambda == 0) throw std::invalid_argument("sequence difference needs nonzero weight");
    std::vector<Scalar> v;
    for (size_t i = 0; i + 1 < f.values.size(); ++i)
        v.push_back((f.values[i + 1] - f.values[i]) / lambda);
    return {std::move(v)};
}

SequenceModel seq_P(const SequenceModel& f, const Scalar& lambda) {
    std::vector<Scalar> v(f.values.size() + 1, Scalar(0));
    for (size_t i = 0; i < f.values.size(); ++i) v[i + 1] = v[i] + lambda * f.values[i];
    return {std::move(v)};
}

bool sm_eq(const SequenceModel& f, const SequenceModel& g) {
    size_t n = std::min(f.values.size(), g.values.size());
    for (size_t i = 0; i < n; ++i)
        if (f.values[i] != g.values[i]) return false;
    return true;
}

std::string to_string(const SequenceModel& f) {
    std::string out = "[";
    for (size_t i = 0; i < f.values.size(); ++i) {
        if (i) out += ", ";
        out += scalar_to_string(f.values[i]);
    }
    return out + "]";
}

// ---- assignment parsers ----------------------------------------------------

namespace {

Scalar parse_rational(const std::string& s, size_t& i) {
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    size_t start = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (i == start) throw std::invalid_argument("expected number in model expression");
    Integer num(s.substr(start, i - start));
    Integer den = 1;
    if (i < s.size() && s[i] == '/') {
        ++i;
        start = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (i == start) throw std::invalid_argument("expected denominator");
        den = Integer(s.substr(start, i - start));
    }
    Scalar r(num, den);
    return neg ? -r : r;
}

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
}

} // namespace

PolyModel parse_poly_model(const std::string& s) {
    PolyModel out;
    size_t i = 0;
    skip_ws(s, i);
    bool first = true;
    while (i < s.size()) {
        Scalar sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip_ws(s, i);
        } else if (!first) {
            throw std::invalid_argument("expected + or - in model polynomial");
        }
        first = false;
        Scalar coeff = 1;
        bool have_coeff = false;
        if (i < s.size() && std::isdigit((unsigned char)s[i])) {
            coeff = parse_rational(s, i);
            have_coeff = true;
            skip_ws(s, i);
            if (i < s.size() && s[i] == '*') { ++i; skip_ws(s, i); }
        }
        int power = 0;
        if (i < s.size() && s[i] == 't') {
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                size_t start = i;
                while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
                if (i == start) throw std::invalid_argument("expected exponent");
                power = std::stoi(s.substr(start, i - start));
            }
        } else if (!have_coeff) {
            throw std::invalid_argument("expected term in model polynomial");
        }
        std::vector<Scalar> c(power + 1, Scalar(0));
        c[power] = sign * coeff;
        out = pm_add(out, pm_make(std::move(c)));
        skip_ws(s, i);
    }
    return out;
}

SequenceModel parse_sequence_model(const std::string& s) {
    std::vector<Scalar> v;
    size_t i = 0;
    skip_ws(s, i);
    while (i < s.size()) {
        v.push_back(parse_rational(s, i));
        skip_ws(s, i);
        if (i < s.size()) {
            if (s[i] != ',') throw std::invalid_argument("expected , in sequence");
            ++i;
            skip_ws(s, i);
        }
    }
    if (v.empty()) throw std::invalid_argument("empty sequence");
    return {std::move(v)};
}

} // namespace idalg
