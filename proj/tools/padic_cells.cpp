#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padic/decompose.hpp"
#include "padic/dim.hpp"
#include "padic/json_io.hpp"
#include "padic/kgroup.hpp"
#include "padic/measure.hpp"
#include "padic/oracle.hpp"
#include "padic/parse.hpp"

using namespace padic;

namespace {

enum Exit { kOk = 0, kParse = 2, kUnsupported = 3, kBound = 4 };

struct Options {
    std::string prime;
    std::string poly;
    std::vector<std::string> formulas;
    std::string other_poly;
    std::string other_formula;
    std::string domain_center = "0";
    std::int64_t domain_radius = 0;
    int k = 6;
    int samples = 200;
    std::uint64_t seed = oracle::kDefaultSeed;
    int max_depth = 0;
    bool json = false;
};

struct Input {
    Prime p = 2;
    Domain domain;
};

Prime parse_prime(const std::string& s) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &used);
    } catch (const std::exception&) {
        throw ParseError(1, "prime must be a positive integer");
    }
    if (used != s.size() || s.front() == '-') throw ParseError(used + 1, "prime must be a positive integer");
    if (!is_prime(v)) throw ParseError(1, "not a prime: " + s);
    return v;
}

Poly nonzero(Poly f) {
    if (f.is_zero()) throw UnsupportedInput("the zero polynomial is not supported");
    return f;
}

Input common(const Options& o) {
    Input in;
    in.p = parse_prime(o.prime);
    Poly c = parse_poly(o.domain_center);
    if (c.degree() > 0) throw ParseError(1, "domain center must be a constant");
    in.domain.center = c.coeff(0);
    in.domain.radius = o.domain_radius;
    if (o.max_depth > 0) setenv("PADIC_CELLS_MAX_DEPTH", std::to_string(o.max_depth).c_str(), 1);
    return in;
}

/// The set named by --formula, or f = 0 for --poly.
Formula set_formula(const std::string& formula, const std::string& poly) {
    if (!formula.empty()) return parse_formula(formula);
    if (!poly.empty()) return Formula::leaf(OrdEqInf{nonzero(parse_poly(poly))});
    throw ParseError(1, "one of --poly or --formula is required");
}

Decomposition decompose_input(const Input& in, const std::string& formula, const std::string& poly) {
    if (!formula.empty()) return decompose_set(parse_formula(formula), in.p, in.domain);
    if (!poly.empty()) return prepare(nonzero(parse_poly(poly)), in.p, in.domain);
    throw ParseError(1, "one of --poly or --formula is required");
}

std::string first_formula(const Options& o) { return o.formulas.empty() ? std::string() : o.formulas.front(); }

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_decompose(const Options& o) {
    Input in = common(o);
    Decomposition d = decompose_input(in, first_formula(o), o.poly);
    if (o.json) {
        emit(to_json(d));
        return kOk;
    }
    std::cout << "prime " << d.p << "  cells " << d.cells.size() << "  k_depth " << d.k_depth << "\n";
    for (const auto& c : d.cells) std::cout << (c.keep ? "+ " : "- ") << describe(c) << "\n";
    return kOk;
}

int cmd_measure(const Options& o) {
    Input in = common(o);
    if (!o.formulas.empty()) {
        Decomposition d = decompose_set(parse_formula(o.formulas.front()), in.p, in.domain);
        Rat mu = measure(d, true);
        if (o.json) emit(Json{{"schema", kSchema}, {"prime", std::to_string(in.p)}, {"measure", mu.get_str()}});
        else std::cout << "measure " << mu.get_str() << "\n";
        return kOk;
    }
    if (o.poly.empty()) throw ParseError(1, "one of --poly or --formula is required");
    Poly f = nonzero(parse_poly(o.poly));
    Decomposition d = prepare(f, in.p, in.domain);
    Json rows = Json::array();
    for (int m = 0; m < o.k; ++m) rows.push_back({{"m", m}, {"measure", measure_of_order(d, f, m).get_str()}});
    if (o.json) {
        emit(Json{{"schema", kSchema}, {"prime", std::to_string(in.p)}, {"poly", f.str()}, {"order_measures", rows}});
    } else {
        for (const auto& r : rows)
            std::cout << "mu(ord f = " << r["m"].get<int>() << ") = " << r["measure"].get<std::string>() << "\n";
    }
    return kOk;
}

int cmd_zeta(const Options& o) {
    Input in = common(o);
    if (o.poly.empty()) throw ParseError(1, "--poly is required");
    Poly f = nonzero(parse_poly(o.poly));
    ZetaFn z = igusa_zeta(prepare(f, in.p, in.domain), f);
    if (o.json) {
        Json j = to_json(z);
        emit(Json{{"schema", kSchema},
                  {"prime", std::to_string(in.p)},
                  {"poly", f.str()},
                  {"t", j["t"]},
                  {"low", j["low"]},
                  {"num", j["num"]},
                  {"den", j["den"]},
                  {"text", j["text"]}});
    } else {
        std::cout << z.str() << "\n";
    }
    return kOk;
}

bool classes_feasible(Prime p, int k) {
    Int n = pow_p(p, k);
    return n <= 2000000;
}

int cmd_oracle_compare(const Options& o) {
    Input in = common(o);
    Json j{{"schema", kSchema}, {"prime", std::to_string(in.p)}, {"k", o.k}};
    bool agree = true;
    std::ostringstream text;

    if (!o.poly.empty()) {
        Poly f = nonzero(parse_poly(o.poly));
        if (!(in.domain == Domain{})) throw UnsupportedInput("oracle-compare for polynomials works on Z_p only");
        Decomposition d = prepare(f, in.p, in.domain);
        j["poly"] = f.str();
        Json rows = Json::array();
        text << "m  engine  oracle  match\n";
        for (int m = 0; m < o.k; ++m) {
            Rat a = measure_of_order(d, f, m);
            Rat b = oracle::order_measure(f, in.p, m);
            bool ok = a == b;
            agree = agree && ok;
            rows.push_back({{"m", m}, {"engine", a.get_str()}, {"oracle", b.get_str()}, {"match", ok}});
            text << m << "  " << a.get_str() << "  " << b.get_str() << "  " << (ok ? "yes" : "NO") << "\n";
        }
        j["orders"] = rows;
        oracle::LawReport laws = oracle::verify_laws(d, f, o.samples, o.seed);
        agree = agree && laws.ok();
        j["laws"] = {{"checked", laws.checked}, {"failures", laws.failures.size()}, {"seed", std::to_string(laws.seed)}};
        text << "laws: " << (laws.ok() ? "ok" : "FAILED") << " (" << laws.checked << " samples, seed " << laws.seed
             << ")\n";
        for (const auto& fl : laws.failures)
            text << "  cell " << fl.cell << " y=" << fl.y.get_str() << " " << fl.kind << " expected " << fl.expected
                 << " got " << fl.got << "\n";
        if (classes_feasible(in.p, o.k)) {
            oracle::PartitionReport pr = oracle::verify_partition(d, o.k);
            agree = agree && pr.ok();
            j["partition"] = {{"classes", pr.classes}, {"undecided", pr.undecided}, {"violations", pr.violations.size()}};
            text << "partition mod p^" << o.k << ": " << (pr.ok() ? "ok" : "FAILED") << " (" << pr.classes
                 << " classes, " << pr.undecided << " undecided)\n";
            for (const auto& v : pr.violations) text << "  " << v << "\n";
        }
    } else {
        Formula phi = set_formula(first_formula(o), "");
        Decomposition d = decompose_set(phi, in.p, in.domain);
        j["formula"] = str(phi);
        if (!classes_feasible(in.p, o.k)) throw UnsupportedInput("p^k too large for an exhaustive comparison");
        Int n = pow_p(in.p, o.k);
        Rat scale = rat_pow_p(in.p, in.domain.radius);
        std::int64_t checked = 0, mismatches = 0;
        for (long r = 0; r < n.get_si(); ++r) {
            Rat y = in.domain.center + scale * Rat(r);
            bool member = false;
            for (const auto& c : d.cells) {
                if (!contains(c, y, in.p)) continue;
                member = c.keep;
                break;
            }
            ++checked;
            if (member != holds(phi, y, in.p)) {
                ++mismatches;
                if (mismatches <= 5) text << "  mismatch at y = " << y.get_str() << "\n";
            }
        }
        agree = mismatches == 0;
        j["points"] = {{"checked", checked}, {"mismatches", mismatches}};
        text << "points checked " << checked << ", mismatches " << mismatches << "\n";
        std::string why;
        bool part = oracle::exact_partition(d, &why);
        agree = agree && part;
        j["partition"] = {{"exact", part}};
        text << "partition: " << (part ? "ok" : "FAILED " + why) << "\n";
    }
    j["agree"] = agree;
    if (o.json) emit(j);
    else std::cout << text.str() << "agree: " << (agree ? "true" : "false") << "\n";
    return kOk;
}

int cmd_chi(const Options& o) {
    Input in = common(o);
    Decomposition d = decompose_input(in, first_formula(o), o.poly);
    K0Element e = chi(d);
    K0Normal n = normal_form(e);
    if (o.json) {
        emit(Json{{"schema", kSchema}, {"prime", std::to_string(in.p)}, {"chi", to_json(e)}, {"normal_form", to_json(n)}});
    } else {
        std::cout << "chi = " << e.str() << "\n";
    }
    return kOk;
}

int cmd_cv_check(const Options& o) {
    Input in = common(o);
    Decomposition d1 = decompose_input(in, first_formula(o), o.poly);
    Decomposition d2 = decompose_input(in, o.other_formula, o.other_poly);
    CvResult r = cv_check(d1, d2);
    if (o.json) {
        emit(Json{{"schema", kSchema},
                  {"prime", std::to_string(in.p)},
                  {"equal", r.equal},
                  {"chi1", to_json(r.chi1)},
                  {"chi2", to_json(r.chi2)},
                  {"chi_common", to_json(r.chi_common)}});
    } else {
        std::cout << "chi1 = " << r.chi1.str() << "\nchi2 = " << r.chi2.str() << "\ncommon = " << r.chi_common.str()
                  << "\nequal: " << (r.equal ? "true" : "false") << "\n";
    }
    return kOk;
}

int cmd_dim(const Options& o) {
    Input in = common(o);
    std::vector<std::string> parts = o.formulas;
    if (parts.empty()) {
        if (o.poly.empty()) throw ParseError(1, "one of --poly or --formula is required");
        parts.push_back(str(set_formula("", o.poly)));
    }
    Dim total = Dim::of(0);
    std::vector<ProductCell> cells;
    Json factors = Json::array();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        Decomposition d = decompose_set(parse_formula(parts[i]), in.p, in.domain);
        Dim di = dim_of(d);
        factors.push_back(di.str());
        total = dim_product(total, di);
        cells = i == 0 ? as_products(d) : product_cells(cells, d);
    }
    Dim by_cells = dim_of(cells);
    if (!(by_cells == total)) throw std::logic_error("dimension of the product cells disagrees with the factors");
    if (o.json) emit(Json{{"schema", kSchema}, {"prime", std::to_string(in.p)}, {"factors", factors}, {"dim", total.str()}});
    else std::cout << "dim " << total.str() << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cell decompositions of definable subsets of Z_p"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Options o;
    app.add_option("--prime,-p", o.prime, "the prime p")->required();
    app.add_option("--poly", o.poly, "polynomial in y");
    app.add_option("--formula", o.formulas, "quantifier-free formula in y (repeat for products with dim)");
    app.add_option("--other-poly", o.other_poly, "second polynomial (cv-check)");
    app.add_option("--other-formula", o.other_formula, "second formula (cv-check)");
    app.add_option("--domain-center", o.domain_center, "center of the ambient ball");
    app.add_option("--domain-radius", o.domain_radius, "radius of the ambient ball");
    app.add_option("--k", o.k, "digit depth for oracle comparisons")->check(CLI::Range(1, 30));
    app.add_option("--samples", o.samples, "law samples per cell")->check(CLI::Range(1, 100000));
    app.add_option("--seed", o.seed, "sampling seed");
    app.add_option("--max-depth", o.max_depth, "residue depth cap")->check(CLI::PositiveNumber);
    app.add_flag("--json", o.json, "JSON output");

    int (*run)(const Options&) = nullptr;
    auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
        app.add_subcommand(name, help)->callback([&run, fn] { run = fn; });
    };
    sub("decompose", "cells adapted to a polynomial or a formula", cmd_decompose);
    sub("measure", "Haar measure of a set, or of the order shells of a polynomial", cmd_measure);
    sub("zeta", "Igusa zeta function of a polynomial", cmd_zeta);
    sub("oracle-compare", "compare against brute-force counting", cmd_oracle_compare);
    sub("chi", "Euler characteristic class of a set", cmd_chi);
    sub("cv-check", "refinement invariance of chi for two decompositions", cmd_cv_check);
    sub("dim", "dimension of a set or a product of sets", cmd_dim);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        return run(o);
    } catch (const UnsupportedInput& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUnsupported;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kParse;
    } catch (const BoundExceeded& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return kBound;
    } catch (const std::invalid_argument& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUnsupported;
    }
}
