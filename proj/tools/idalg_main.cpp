#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "idalg/checks.hpp"
#include "idalg/frontend.hpp"
#include "idalg/gsnf.hpp"
#include "idalg/models.hpp"

using json = nlohmann::ordered_json;
using namespace idalg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitProperty = 2;
constexpr int kExitUsage = 3;

struct CommonOpts {
    std::string lambda = "0";
    std::string order = "inf";
    std::string alphabet;
    std::string format = "text";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--lambda", o.lambda, "weight, a rational p/q (default 0)");
    cmd->add_option("--order", o.order, "derivation order bound n, or 'inf' (default inf)");
    cmd->add_option("--alphabet", o.alphabet, "comma-separated variable names, rank order");
    cmd->add_option("--format", o.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", o.out, "write the report to a file instead of stdout");
}

Scalar parse_lambda(const std::string& s) {
    // accept [-]digits[/digits] only; cpp_rational's string ctor is laxer
    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (digits == 0) throw std::invalid_argument("--lambda expects a rational p/q, got '" + s + "'");
    if (i < s.size()) {
        if (s[i] != '/') throw std::invalid_argument("--lambda expects a rational p/q, got '" + s + "'");
        ++i;
        size_t den = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++den;
        if (den == 0 || i != s.size())
            throw std::invalid_argument("--lambda expects a rational p/q, got '" + s + "'");
        if (Scalar(s.substr(s.find('/') + 1)) == 0)
            throw std::invalid_argument("--lambda denominator is zero");
    }
    return Scalar(s);
}

DerivationConfig make_cfg(const CommonOpts& o) {
    DerivationConfig cfg;
    cfg.weight.lambda = parse_lambda(o.lambda);
    if (o.order != "inf") {
        int n = 0;
        try {
            size_t pos = 0;
            n = std::stoi(o.order, &pos);
            if (pos != o.order.size()) throw std::invalid_argument(o.order);
        } catch (const std::exception&) {
            throw std::invalid_argument("--order expects a positive integer or 'inf', got '" +
                                        o.order + "'");
        }
        if (n < 1) throw std::invalid_argument("--order must be >= 1");
        cfg.truncation = n;
    }
    return cfg;
}

std::vector<std::string> split_alphabet(const std::string& s) {
    std::vector<std::string> names;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) names.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) names.push_back(cur);
    return names;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::invalid_argument("cannot open --out file '" + o.out + "'");
    f << text;
}

ParseOptions parse_opts(const CommonOpts& o, const DerivationConfig& cfg) {
    ParseOptions po;
    po.alphabet = split_alphabet(o.alphabet);
    po.truncation = cfg.truncation;
    return po;
}

// ---- reduce / nf -------------------------------------------------------------

int run_reduce(const std::string& input, const CommonOpts& o, bool to_nf, bool trace) {
    DerivationConfig cfg = make_cfg(o);
    OpExpr e = parse(input, parse_opts(o, cfg));
    RBElement r = reduce(e, cfg);
    RewriteTrace steps;
    if (to_nf) r = normal_form(r, cfg, trace ? &steps : nullptr);
    if (o.format == "json") {
        json j;
        j["schema"] = 1;
        j["verb"] = to_nf ? "nf" : "reduce";
        j["input"] = input;
        j["lambda"] = o.lambda;
        j["order"] = o.order;
        j["output"] = to_bracketed(r);
        if (trace) {
            j["trace"] = json::array();
            for (const auto& s : steps)
                j["trace"].push_back({{"word", to_string(s.word)},
                                      {"factor", s.position},
                                      {"interior", to_string(s.interior)},
                                      {"g", to_string(s.g)},
                                      {"t", to_string(s.t)}});
        }
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        if (trace)
            for (size_t i = 0; i < steps.size(); ++i)
                out << "# step " << i + 1 << ": in " << to_string(steps[i].word) << " factor "
                    << steps[i].position << ": " << to_string(steps[i].interior) << " = d("
                    << to_string(steps[i].g) << ") + [" << to_string(steps[i].t) << "]\n";
        out << to_bracketed(r) << "\n";
        emit(o, out.str());
    }
    return kExitOk;
}

// ---- check -------------------------------------------------------------------

int run_checks(std::vector<std::string> suites, const CommonOpts& o, uint64_t seed, int cases) {
    SessionConfig sc;
    sc.deriv = make_cfg(o);
    if (!o.alphabet.empty()) sc.alphabet = split_alphabet(o.alphabet);
    if (sc.alphabet.empty()) throw std::invalid_argument("check needs a nonempty alphabet");
    sc.seed = seed;
    if (cases < 1) throw std::invalid_argument("--cases must be >= 1");
    sc.cases = cases;
    if (suites.empty()) suites = check_suites();
    const auto& known = check_suites();
    for (const auto& s : suites)
        if (std::find(known.begin(), known.end(), s) == known.end())
            throw std::invalid_argument("unknown check suite: " + s);
    std::vector<CheckReport> reports;
    reports.reserve(suites.size());
    for (const auto& s : suites) reports.push_back(run_check(s, sc));
    bool all_passed = true;
    for (const auto& r : reports) all_passed = all_passed && r.passed();

    if (o.format == "json") {
        json j;
        j["schema"] = 1;
        j["verb"] = "check";
        j["lambda"] = o.lambda;
        j["order"] = o.order;
        j["seed"] = sc.seed;
        j["cases"] = sc.cases;
        j["suites"] = json::array();
        for (const auto& r : reports) {
            json js;
            js["suite"] = r.suite;
            js["passed"] = r.passed();
            js["phases"] = json::array();
            for (const auto& p : r.phases) {
                json jp;
                jp["phase"] = p.phase;
                jp["reference"] = p.reference;
                jp["cases"] = p.cases;
                jp["seconds"] = p.seconds;
                jp["failures"] = json::array();
                for (const auto& f : p.failures)
                    jp["failures"].push_back({{"case", f.case_index}, {"detail", f.detail}});
                js["phases"].push_back(std::move(jp));
            }
            j["suites"].push_back(std::move(js));
        }
        j["passed"] = all_passed;
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        for (const auto& r : reports) {
            for (const auto& p : r.phases) {
                out << (p.passed() ? "[PASS] " : "[FAIL] ") << r.suite << "/" << p.phase << " ("
                    << p.cases << " cases, " << std::fixed << std::setprecision(2) << p.seconds
                    << "s) — " << p.reference << "\n";
                for (const auto& f : p.failures)
                    out << "       case " << f.case_index << ": " << f.detail << "\n";
            }
        }
        out << (all_passed ? "all checks passed\n" : "CHECK FAILURES PRESENT\n");
        emit(o, out.str());
    }
    return all_passed ? kExitOk : kExitProperty;
}

// ---- basis -------------------------------------------------------------------

int run_basis(int max_depth, int max_degree, int max_order, const CommonOpts& o) {
    DerivationConfig cfg = make_cfg(o);
    std::vector<std::string> alphabet = split_alphabet(o.alphabet);
    auto words = enumerate_basis(max_depth, max_degree, max_order, alphabet, cfg);
    if (o.format == "json") {
        json j;
        j["schema"] = 1;
        j["verb"] = "basis";
        j["count"] = words.size();
        j["words"] = json::array();
        for (const auto& w : words) j["words"].push_back(to_string(w));
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        for (const auto& w : words) out << to_string(w) << "\n";
        out << "# " << words.size() << " basis words\n";
        emit(o, out.str());
    }
    return kExitOk;
}

// ---- eval --------------------------------------------------------------------

template <class Ops>
int run_eval_with(const std::string& input, const CommonOpts& o, const Ops& ops,
                  const std::vector<std::pair<std::string, std::string>>& raw_assigns) {
    DerivationConfig cfg = make_cfg(o);
    Assignment<Ops> assign;
    for (const auto& [name, value] : raw_assigns) {
        if constexpr (std::is_same_v<Ops, PolyOps>)
            assign[name] = parse_poly_model(value);
        else
            assign[name] = parse_sequence_model(value);
    }
    OpExpr e = parse(input, parse_opts(o, cfg));
    RBElement r = reduce(e, cfg);
    auto value = evaluate(r, assign, ops);
    if (o.format == "json") {
        json j;
        j["schema"] = 1;
        j["verb"] = "eval";
        j["input"] = input;
        j["lambda"] = o.lambda;
        j["model"] = std::is_same_v<Ops, PolyOps> ? "polynomial" : "sequence";
        j["output"] = to_string(value);
        emit(o, j.dump(2) + "\n");
    } else {
        emit(o, to_string(value) + "\n");
    }
    return kExitOk;
}

int run_eval(const std::string& input, const CommonOpts& o,
             const std::vector<std::string>& assigns) {
    DerivationConfig cfg = make_cfg(o);
    std::vector<std::pair<std::string, std::string>> raw;
    for (const auto& a : assigns) {
        size_t eq = a.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("--assign expects name=value, got '" + a + "'");
        raw.emplace_back(a.substr(0, eq), a.substr(eq + 1));
    }
    if (cfg.weight.lambda == 0) return run_eval_with(input, o, PolyOps{}, raw);
    return run_eval_with(input, o, SeqOps{cfg.weight.lambda}, raw);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computer algebra for free differential Rota-Baxter and "
                 "integro-differential structures of rational weight"};
    app.require_subcommand(1);

    CommonOpts o_reduce, o_nf, o_check, o_basis, o_eval;
    std::string in_reduce, in_nf, in_eval;
    bool trace_nf = false;
    std::vector<std::string> suites;
    uint64_t seed = 0;
    int cases = 100;
    int max_depth = 3, max_degree = 2, max_order = 2;
    std::vector<std::string> assigns;

    CLI::App* cmd_reduce =
        app.add_subcommand("reduce", "expand an operator expression in the free algebra");
    cmd_reduce->add_option("expr", in_reduce, "expression over the alphabet with d(...), P(...)")
        ->required();
    add_common(cmd_reduce, o_reduce);

    CLI::App* cmd_nf = app.add_subcommand("nf", "reduce to the canonical normal form");
    cmd_nf->add_option("expr", in_nf, "expression to normalize")->required();
    cmd_nf->add_flag("--trace", trace_nf, "print each rewrite step");
    add_common(cmd_nf, o_nf);

    CLI::App* cmd_check = app.add_subcommand("check", "run randomized property suites");
    cmd_check->add_option("suites", suites,
                          "suite names (default: all); see --list for the catalogue");
    bool list_suites = false;
    cmd_check->add_flag("--list", list_suites, "list available suites and exit");
    cmd_check->add_option("--seed", seed, "base seed for case generation (default 0)");
    cmd_check->add_option("--cases", cases, "cases per phase (default 100)");
    add_common(cmd_check, o_check);

    CLI::App* cmd_basis = app.add_subcommand("basis", "enumerate irreducible basis words");
    cmd_basis->add_option("--max-depth", max_depth, "maximum tensor depth (default 3)");
    cmd_basis->add_option("--max-degree", max_degree, "maximum factor degree (default 2)");
    cmd_basis->add_option("--max-order", max_order, "maximum letter order (default 2)");
    add_common(cmd_basis, o_basis);

    CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate in a concrete model");
    cmd_eval->add_option("expr", in_eval, "expression to evaluate")->required();
    cmd_eval->add_option("--assign", assigns,
                         "name=value; polynomials in t at weight 0, comma-separated "
                         "sequences otherwise");
    add_common(cmd_eval, o_eval);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (cmd_reduce->parsed()) return run_reduce(in_reduce, o_reduce, false, false);
        if (cmd_nf->parsed()) return run_reduce(in_nf, o_nf, true, trace_nf);
        if (cmd_check->parsed()) {
            if (list_suites) {
                for (const auto& s : check_suites()) std::cout << s << "\n";
                return kExitOk;
            }
            return run_checks(suites, o_check, seed, cases);
        }
        if (cmd_basis->parsed()) return run_basis(max_depth, max_degree, max_order, o_basis);
        if (cmd_eval->parsed()) return run_eval(in_eval, o_eval, assigns);
    } catch (const ParseError& e) {
        std::cerr << "parse error at " << e.line << ":" << e.col << ": " << e.what() << "\n";
        return kExitParse;
    } catch (const NonRegularError& e) {
        std::cerr << "property failure: " << e.what() << "\n";
        return kExitProperty;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
