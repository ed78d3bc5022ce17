#include "gpseq/battery.hpp"
#include "gpseq/equidist.hpp"
#include "gpseq/errors.hpp"
#include "gpseq/families.hpp"
#include "gpseq/gp_expr.hpp"
#include "gpseq/multclass.hpp"
#include "gpseq/nil.hpp"
#include "gpseq/parallel.hpp"
#include "gpseq/primes.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace gpseq;
using Json = nlohmann::ordered_json;

namespace {

struct Config {
    std::string format = "auto";
    std::string output;
    int precision = 12;
    unsigned workers = 0;
    std::uint64_t seed = 0;

    // expressions and ranges
    std::string expr;
    std::string range = "1..10";

    // families
    std::string family;
    std::string alpha = "(sqrt(5)-1)/2";
    std::string alpha_shift = "0";
    std::string alpha_scale = "1";
    std::string beta = "0";
    std::vector<std::string> elements;
    std::string c = "1/2";
    std::vector<std::uint64_t> A;
    std::uint64_t q = 1;
    std::size_t chr = 0;
    unsigned a = 0;
    std::vector<std::uint64_t> primes;
    bool completely = false;
    std::vector<std::string> table;

    // classification
    std::uint64_t N = 10000;
    std::uint64_t Qmax = 12;
    unsigned amax = 3;
    std::string theta = "1/20";
    std::uint64_t dilate = 0;

    // nilmanifold sequences
    std::string entry = "torus";
    unsigned dim = 1;
    unsigned degree = 1;
    std::vector<std::string> g;
    unsigned K = 5;
    std::string C = "1";
    std::string rho;

    // primes
    std::uint64_t X = 1000;
    std::uint64_t Qres = 1;
    std::uint64_t r = 0;
    std::vector<std::string> poly;
    std::string lo = "0";
    std::string hi = "1/2";
    std::uint64_t m = 2;
    std::string delta = "1/5";

    std::vector<std::string> battery{"chars", "geometric", "fp", "zero"};
};

class Writer {
public:
    explicit Writer(const Config& cfg) : cfg_(cfg) {}

    void emit(const std::string& command, const Json& config, const Json& result, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows, bool table_default) const
    {
        std::string fmt = cfg_.format;
        if (fmt == "auto")
            fmt = table_default ? "csv" : "json";
        std::ostringstream out;
        if (fmt == "csv") {
            if (header.empty())
                throw ValidationError(command + ": no tabular output; use --format json");
            write_row(out, header);
            for (const auto& row : rows)
                write_row(out, row);
        } else {
            Json report;
            report["command"] = command;
            report["config"] = config;
            report["result"] = result;
            out << report.dump(2) << "\n";
        }
        if (cfg_.output.empty()) {
            std::cout << out.str();
        } else {
            std::ofstream f(cfg_.output);
            if (!f)
                throw Error("cannot write " + cfg_.output);
            f << out.str();
        }
    }

private:
    static void write_row(std::ostream& out, const std::vector<std::string>& row)
    {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out << ',';
            const bool quote = row[i].find_first_of(",\"\n") != std::string::npos;
            if (quote) {
                out << '"';
                for (char ch : row[i]) {
                    if (ch == '"')
                        out << '"';
                    out << ch;
                }
                out << '"';
            } else {
                out << row[i];
            }
        }
        out << "\n";
    }

    const Config& cfg_;
};

// ---------------------------------------------------------------------------
// Parsing helpers

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s)
{
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const auto v = std::stoull(s);
            return {v, v};
        }
        const auto lo = std::stoull(s.substr(0, dots));
        const auto hi = std::stoull(s.substr(dots + 2));
        if (lo > hi)
            throw ValidationError("range " + s + " is empty");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw ValidationError("bad range '" + s + "', expected A..B");
    }
}

Rational parse_rational(const std::string& s)
{
    const ExactReal v = parse_constant(s);
    auto q = v.as_rational();
    if (!q)
        throw ValidationError("'" + s + "' must be rational");
    return *q;
}

std::string decimal(const ExactReal& x, int digits) { return to_decimal(x, digits); }

std::string decimal(double x, int digits)
{
    std::ostringstream s;
    s << std::setprecision(digits) << x;
    return s.str();
}

Json value_json(const Value& v, int digits)
{
    Json j;
    j["exact"] = v.to_string();
    if (auto r = v.as_real())
        j["re"] = decimal(*r, digits);
    else
        j["re"] = decimal(v.re(), digits);
    j["im"] = v.as_real() ? std::string("0") : decimal(v.im(), digits);
    return j;
}

std::string value_decimal(const Value& v, int digits)
{
    if (auto r = v.as_real())
        return decimal(*r, digits);
    return decimal(v.re(), digits) + (v.im() < 0 ? "-" : "+") + decimal(std::abs(v.im()), digits) + "i";
}

// ---------------------------------------------------------------------------
// Families

struct Family {
    SequenceSource source;
    Json description;
};

Family build_family(const Config& cfg)
{
    Json d;
    d["family"] = cfg.family;
    if (cfg.family == "sturmian") {
        ExactReal alpha = parse_constant(cfg.alpha) + parse_constant(cfg.alpha_shift);
        alpha *= parse_rational(cfg.alpha_scale);
        const ExactReal beta = parse_constant(cfg.beta);
        Sturmian s = sturmian(alpha, beta);
        d["alpha"] = to_string(alpha);
        d["beta"] = to_string(beta);
        d["expr"] = render(s.expr);
        return {s.source, d};
    }
    if (cfg.family == "sparse") {
        std::vector<Integer> els;
        for (const auto& e : cfg.elements) {
            Integer v;
            if (v.set_str(e, 10) != 0 || v < 1)
                throw ValidationError("bad element '" + e + "'");
            els.push_back(v);
        }
        for (std::size_t i = 1; i < els.size(); ++i)
            if (els[i] <= els[i - 1])
                throw ValidationError("sparse elements must be strictly increasing");
        SequenceSource s = sparse_indicator(els, parse_rational(cfg.c));
        d["elements"] = cfg.elements;
        d["growth_ok"] = *s.growth_ok;
        return {s, d};
    }
    if (cfg.family == "geometric") {
        SequenceSource s = geometric_sparse_multiplicative(cfg.A, parse_rational(cfg.c));
        d["A"] = cfg.A;
        d["growth_ok"] = s.growth_ok.value_or(true);
        return {s, d};
    }
    if (cfg.family == "chi-power") {
        if (cfg.q == 0)
            throw ValidationError("--q must be >= 1");
        const auto chars = dirichlet_characters(cfg.q);
        if (cfg.chr >= chars.size())
            throw ValidationError("--char must be < " + std::to_string(chars.size()) + " for q=" + std::to_string(cfg.q));
        d["q"] = cfg.q;
        d["char"] = cfg.chr;
        d["order"] = chars[cfg.chr].order;
        d["a"] = cfg.a;
        return {chi_times_power(chars[cfg.chr], cfg.a), d};
    }
    if (cfg.family == "periodic") {
        if (cfg.table.empty())
            throw ValidationError("--table needs one value per residue");
        PeriodicMultiplicative t{cfg.table.size(), {}};
        for (const auto& v : cfg.table) {
            const ExactReal x = parse_constant(v);
            t.table.push_back(x.is_zero() ? Value() : Value(x));
        }
        d["table"] = cfg.table;
        d["a"] = cfg.a;
        return {chi_times_power(t, cfg.a), d};
    }
    if (cfg.family == "fp") {
        d["primes"] = cfg.primes;
        d["completely"] = cfg.completely;
        return {fp_multiplicative(cfg.primes, cfg.completely), d};
    }
    if (cfg.family == "zero")
        return {constant_source(Value()), d};
    if (cfg.family == "expr") {
        d["expr"] = cfg.expr;
        return {from_expr(parse(cfg.expr)), d};
    }
    throw ValidationError("unknown family '" + cfg.family +
                          "' (sturmian, sparse, geometric, chi-power, periodic, fp, zero, expr)");
}

// ---------------------------------------------------------------------------
// Nilmanifold sequences

NilEntry build_entry(const Config& cfg)
{
    if (cfg.entry == "torus")
        return NilEntry::torus(cfg.dim, cfg.degree);
    if (cfg.entry == "heisenberg")
        return NilEntry::heisenberg();
    throw ValidationError("unknown entry '" + cfg.entry + "' (torus, heisenberg)");
}

PolySequence build_sequence(const Config& cfg)
{
    const NilEntry e = build_entry(cfg);
    if (cfg.g.empty())
        throw ValidationError("--g is required (one per term g_0, g_1, ...)");
    std::vector<GroupElement> terms;
    for (const auto& spec : cfg.g) {
        GroupElement el{e, {}};
        std::stringstream ss(spec);
        std::string part;
        while (std::getline(ss, part, ','))
            el.coords.push_back(parse_constant(part));
        if (el.coords.size() != e.dim())
            throw ValidationError("--g '" + spec + "' needs " + std::to_string(e.dim()) + " coordinates");
        terms.push_back(std::move(el));
    }
    return PolySequence(e, std::move(terms));
}

Json sequence_json(const Config& cfg)
{
    Json j;
    j["entry"] = cfg.entry;
    if (cfg.entry == "torus") {
        j["dim"] = cfg.dim;
        j["degree"] = cfg.degree;
    }
    j["g"] = cfg.g;
    return j;
}

// ---------------------------------------------------------------------------
// Commands

Json base_config(const Config& cfg, const std::string& command)
{
    Json j;
    j["command"] = command;
    j["format"] = cfg.format;
    j["precision"] = cfg.precision;
    j["workers"] = default_workers();
    j["seed"] = cfg.seed;
    j["refinement_cap_bits"] = refinement_cap();
    return j;
}

void run_eval(const Config& cfg, const Writer& w)
{
    const GPExpr e = parse(cfg.expr);
    const auto [lo, hi] = parse_range(cfg.range);
    const auto values = parallel_map<ExactReal>(hi - lo + 1, [&](std::size_t i) {
        return eval(e, Integer(static_cast<unsigned long>(lo + i)));
    });
    Json config = base_config(cfg, "eval");
    config["expr"] = cfg.expr;
    config["n"] = cfg.range;
    Json rows = Json::array();
    std::vector<std::vector<std::string>> table;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string n = std::to_string(lo + i);
        const std::string dec = decimal(values[i], cfg.precision);
        rows.push_back({{"n", lo + i}, {"value", dec}, {"exact", to_string(values[i])}});
        table.push_back({n, dec, to_string(values[i])});
    }
    Json result;
    result["parsed"] = render(e);
    result["values"] = rows;
    w.emit("eval", config, result, {"n", "value", "exact"}, table, true);
}

void run_expand(const Config& cfg, const Writer& w)
{
    const GPExpr e = parse(cfg.expr);
    const BoundedExpansion x = expand(e);
    Json config = base_config(cfg, "expand");
    config["expr"] = cfg.expr;
    Json coeffs = Json::array();
    std::vector<std::vector<std::string>> table;
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
        const std::string text = render(x.coeffs[i]);
        Json c{{"i", i}, {"coeff", text}};
        if (is_bounded_form(x.coeffs[i]))
            c["bound"] = coefficient_bound(x.coeffs[i]).get_str();
        coeffs.push_back(c);
        table.push_back({std::to_string(i), text});
    }
    Json result;
    result["parsed"] = render(e);
    result["degree"] = x.degree();
    result["coeffs"] = coeffs;
    w.emit("expand", config, result, {"i", "coeff"}, table, false);
}

void run_family(const Config& cfg, const Writer& w)
{
    const Family f = build_family(cfg);
    const auto [lo, hi] = parse_range(cfg.range);
    if (lo == 0)
        throw DomainError("sequences are indexed from n = 1");
    const auto values = parallel_map<Value>(hi - lo + 1, [&](std::size_t i) { return f.source(lo + i); });
    Json config = base_config(cfg, "family");
    config["family"] = f.description;
    config["n"] = cfg.range;
    Json rows = Json::array();
    std::vector<std::vector<std::string>> table;
    for (std::size_t i = 0; i < values.size(); ++i) {
        Json r{{"n", lo + i}, {"value", value_decimal(values[i], cfg.precision)}};
        r.update(value_json(values[i], cfg.precision));
        rows.push_back(r);
        table.push_back({std::to_string(lo + i), value_decimal(values[i], cfg.precision), values[i].to_string()});
    }
    Json result;
    result["kind"] = f.source.kind();
    result["value_type"] = to_string(f.source.value_type());
    if (f.source.growth_ok)
        result["growth_ok"] = *f.source.growth_ok;
    result["values"] = rows;
    w.emit("family", config, result, {"n", "value", "exact"}, table, true);
}

Json mult_json(const MultReport& r, int digits)
{
    Json j;
    j["check"] = r.check;
    j["holds"] = r.holds;
    if (r.witness) {
        j["witness"] = {{"n", r.witness->n},
                        {"m", r.witness->m},
                        {"fn", value_json(r.witness->fn, digits)},
                        {"fm", value_json(r.witness->fm, digits)},
                        {"fnm", value_json(r.witness->fnm, digits)}};
    } else {
        j["witness"] = nullptr;
    }
    j["pairs"] = r.pairs_checked;
    return j;
}

Json classification_json(const Classification& c, int digits)
{
    Json j;
    j["variant"] = to_string(c.variant);
    if (c.variant == Classification::Variant::polynomial) {
        j["Q"] = c.Q;
        j["a"] = c.a;
        Json chi = Json::array();
        for (const auto& v : c.chi.table)
            chi.push_back(v.to_string());
        j["chi"] = chi;
    }
    j["final_density"] = c.final_density.get_str();
    j["final_density_decimal"] = decimal(ExactReal(c.final_density), digits);
    if (!c.reason.empty())
        j["reason"] = c.reason;
    return j;
}

void run_classify(const Config& cfg, const Writer& w)
{
    const Family f = build_family(cfg);
    const Rational theta = parse_rational(cfg.theta);
    const Classification c = classify(f.source, cfg.N, cfg.Qmax, cfg.amax, theta);
    const std::uint64_t mN = std::min<std::uint64_t>(cfg.N, 2000);
    Json config = base_config(cfg, "classify");
    config["family"] = f.description;
    config["N"] = cfg.N;
    config["Qmax"] = cfg.Qmax;
    config["amax"] = cfg.amax;
    config["theta"] = theta.get_str();
    config["dilate"] = cfg.dilate;
    Json result = classification_json(c, cfg.precision);
    result["multiplicative"] = mult_json(is_multiplicative(f.source, mN), cfg.precision);
    result["completely_multiplicative"] = mult_json(is_completely_multiplicative(f.source, mN), cfg.precision);
    const DensityProfile d = support_density(f.source, cfg.N);
    Json counts = Json::array();
    for (auto v : d.counts)
        counts.push_back(v);
    result["dyadic_counts"] = counts;
    if (cfg.dilate)
        result["dilation"] = mult_json(dilation_invariance(f.source, cfg.dilate, cfg.N), cfg.precision);
    w.emit("classify", config, result, {}, {}, false);
}

void run_equi(const Config& cfg, const Writer& w)
{
    const PolySequence g = build_sequence(cfg);
    const auto pts = orbit(g, cfg.N);
    const EquiReport est = delta_equi_estimate(pts, cfg.K);
    const ExactReal C = parse_constant(cfg.C);
    Json config = base_config(cfg, "equi");
    config["sequence"] = sequence_json(cfg);
    config["N"] = cfg.N;
    config["K"] = cfg.K;
    config["C"] = to_string(C);
    Json result;
    result["estimate"] = decimal(est.estimate, cfg.precision);
    result["worst"] = est.worst;
    result["N"] = est.N;
    result["K"] = est.K;
    result["dictionary_size"] = est.dictionary_size;
    if (g.entry().dim() == 1) {
        std::vector<double> xs;
        for (const auto& p : pts)
            xs.push_back(to_double(p.coords[0]));
        result["star_discrepancy"] = decimal(star_discrepancy(xs), cfg.precision);
    }
    if (auto eta = character_search(g, cfg.N, cfg.K, C)) {
        Json k = Json::array();
        for (const auto& v : eta->k)
            k.push_back(v.get_si());
        const ExactReal norm = smoothness_norm(char_compose(*eta, g), cfg.N, Basis::binomial);
        result["character"] = {{"k", k}, {"norm", to_string(norm)}};
    } else {
        result["character"] = nullptr;
    }
    if (!cfg.rho.empty()) {
        const Rational rho = parse_rational(cfg.rho);
        config["rho"] = rho.get_str();
        result["dense"] = nullptr;
        const DenseReport d = rho_dense_check(pts, rho);
        Json dj{{"dense", d.dense}, {"M", d.M}, {"centers", d.centers}};
        if (d.witness)
            dj["witness"] = {{"a", d.witness->a}, {"b", d.witness->b}, {"M", d.witness->M}, {"center", d.witness->center}};
        result["dense"] = dj;
    }
    w.emit("equi", config, result, {}, {}, false);
}

void run_primes_list(const Config& cfg, const Writer& w)
{
    const PrimeRange r = primes_in(cfg.X, cfg.Qres, cfg.r);
    Json config = base_config(cfg, "primes list");
    config["X"] = cfg.X;
    config["Q"] = cfg.Qres;
    config["r"] = cfg.r;
    std::vector<std::vector<std::string>> table;
    for (auto p : r.primes)
        table.push_back({std::to_string(p)});
    Json result{{"count", r.primes.size()}, {"primes", r.primes}};
    w.emit("primes list", config, result, {"p"}, table, false);
}

void run_primes_rhin(const Config& cfg, const Writer& w)
{
    if (cfg.poly.empty())
        throw ValidationError("--poly needs monomial coefficients a_0,a_1,...");
    std::vector<ExactReal> coeffs;
    for (const auto& s : cfg.poly)
        coeffs.push_back(parse_constant(s));
    const Rational lo = parse_rational(cfg.lo);
    const Rational hi = parse_rational(cfg.hi);
    const RhinReport r = rhin_fraction(RealPolynomial::from_monomial(coeffs), cfg.X, lo, hi);
    Json config = base_config(cfg, "primes rhin");
    config["poly"] = cfg.poly;
    config["X"] = cfg.X;
    config["I"] = {lo.get_str(), hi.get_str()};
    Json result{{"count_in_I", r.count_in_I},
                {"prime_count", r.prime_count},
                {"fraction", decimal(r.fraction, cfg.precision)},
                {"expected", r.expected.get_str()},
                {"hypothesis", r.hypothesis}};
    w.emit("primes rhin", config, result, {}, {}, false);
}

std::string join(const std::vector<long>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

void run_primes_census(const Config& cfg, const Writer& w)
{
    const PolySequence g = build_sequence(cfg);
    const ExactReal C = parse_constant(cfg.C);
    const CensusReport r = bad_prime_census(g, cfg.N, cfg.X, cfg.K, C);
    Json config = base_config(cfg, "primes census");
    config["sequence"] = sequence_json(cfg);
    config["N"] = cfg.N;
    config["X"] = cfg.X;
    config["K"] = cfg.K;
    config["C"] = to_string(C);
    Json rows = Json::array();
    std::vector<std::vector<std::string>> table;
    std::size_t lambda_zero = 0;
    for (const auto& row : r.rows) {
        Json j{{"p", row.p}, {"bad", row.bad}};
        if (row.bad) {
            j["kappa"] = row.kappa;
            j["lambda"] = row.lambda;
        }
        lambda_zero += row.bad_lambda_zero ? 1 : 0;
        rows.push_back(j);
        table.push_back({std::to_string(row.p), row.bad ? "bad" : "good", row.bad ? join(row.kappa) : "",
                         row.bad ? join(row.lambda) : ""});
    }
    Json result{{"bad_count", r.bad_count},
                {"prime_count", r.rows.size()},
                {"bad_fraction", decimal(r.bad_fraction, cfg.precision)},
                {"lambda_zero_all_or_none", lambda_zero == 0 || lambda_zero == r.rows.size()},
                {"rows", rows}};
    w.emit("primes census", config, result, {"p", "status", "kappa", "lambda"}, table, false);
}

void run_primes_joint(const Config& cfg, const Writer& w)
{
    const PolySequence g = build_sequence(cfg);
    const Rational delta = parse_rational(cfg.delta);
    const DenseReport d = joint_orbit_dense(g, cfg.m, cfg.N, delta);
    Json config = base_config(cfg, "primes joint-dense");
    config["sequence"] = sequence_json(cfg);
    config["m"] = cfg.m;
    config["N"] = cfg.N;
    config["delta"] = delta.get_str();
    Json result{{"dense", d.dense}, {"M", d.M}, {"centers", d.centers}};
    if (d.witness)
        result["witness"] = {{"a", d.witness->a}, {"b", d.witness->b}, {"M", d.witness->M}, {"center", d.witness->center}};
    else
        result["witness"] = nullptr;
    w.emit("primes joint-dense", config, result, {}, {}, false);
}

int run_theorem_a(const Config& cfg, const Writer& w)
{
    std::vector<BatteryItem> battery;
    for (const auto& item : default_battery()) {
        std::string group;
        if (item.name.rfind("chi-power", 0) == 0)
            group = "chars";
        else if (item.name.rfind("geometric", 0) == 0)
            group = "geometric";
        else if (item.name.rfind("fp", 0) == 0)
            group = "fp";
        else
            group = "zero";
        if (std::find(cfg.battery.begin(), cfg.battery.end(), group) != cfg.battery.end())
            battery.push_back(item);
    }
    for (const auto& b : cfg.battery)
        if (!b.empty() && b != "chars" && b != "geometric" && b != "fp" && b != "zero")
            throw ValidationError("unknown battery group '" + b + "' (chars, geometric, fp, zero)");
    const Rational theta = parse_rational(cfg.theta);
    const SweepReport r = dichotomy_sweep(battery, cfg.N, cfg.Qmax, cfg.amax, theta);
    Json config = base_config(cfg, "theorem-a");
    config["battery"] = cfg.battery;
    config["N"] = cfg.N;
    config["Qmax"] = cfg.Qmax;
    config["amax"] = cfg.amax;
    config["theta"] = theta.get_str();
    Json rows = Json::array();
    std::vector<std::vector<std::string>> table;
    for (const auto& row : r.rows) {
        Json j{{"name", row.name}};
        j["classification"] = classification_json(row.classification, cfg.precision);
        j["multiplicative"] = row.multiplicative.holds;
        j["completely_multiplicative"] = mult_json(row.completely_multiplicative, cfg.precision);
        if (row.dilation)
            j["dilation"] = mult_json(*row.dilation, cfg.precision);
        j["in_dichotomy"] = row.in_dichotomy;
        rows.push_back(j);
        table.push_back({row.name, to_string(row.classification.variant),
                         row.multiplicative.holds ? "true" : "false",
                         row.completely_multiplicative.holds ? "true" : "false"});
    }
    Json result{{"entries", r.rows.size()}, {"all_in_dichotomy", r.all_in_dichotomy}, {"rows", rows}};
    w.emit("theorem-a", config, result, {"name", "variant", "multiplicative", "completely_multiplicative"}, table, false);
    return r.all_in_dichotomy ? 0 : 1;
}

// ---------------------------------------------------------------------------

void add_family_options(CLI::App* sub, Config& cfg)
{
    sub->add_option("--family", cfg.family, "sturmian|sparse|geometric|chi-power|periodic|fp|zero|expr")->required();
    sub->add_option("--alpha", cfg.alpha, "sturmian slope");
    sub->add_option("--alpha-shift", cfg.alpha_shift, "added to alpha");
    sub->add_option("--alpha-scale", cfg.alpha_scale, "rational factor applied after the shift");
    sub->add_option("--beta", cfg.beta, "sturmian offset");
    sub->add_option("--elements", cfg.elements, "sparse set elements")->delimiter(',');
    sub->add_option("--c", cfg.c, "growth exponent");
    sub->add_option("--A", cfg.A, "exponent set for the geometric family")->delimiter(',');
    sub->add_option("--q", cfg.q, "character modulus");
    sub->add_option("--char", cfg.chr, "character index (0 = principal)");
    sub->add_option("--a", cfg.a, "power of n");
    sub->add_option("--primes", cfg.primes, "prime list")->delimiter(',');
    sub->add_flag("--completely", cfg.completely, "arbitrary prime powers");
    sub->add_option("--table", cfg.table, "periodic table, one value per residue 0..Q-1")->delimiter(',');
    sub->add_option("--expr", cfg.expr, "expression for --family expr");
}

void add_sequence_options(CLI::App* sub, Config& cfg)
{
    sub->add_option("--entry", cfg.entry, "torus|heisenberg");
    sub->add_option("--dim", cfg.dim, "torus dimension");
    sub->add_option("--degree", cfg.degree, "torus filtration degree");
    sub->add_option("--g", cfg.g, "term g_i as comma-separated coordinates; repeat for g_0, g_1, ...")->required();
}

} // namespace

int main(int argc, char** argv)
{
    Config cfg;
    CLI::App app{"generalised polynomial sequences: evaluation, classification, equidistribution"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "json|csv (default: csv for value tables, json otherwise)")
        ->check(CLI::IsMember({"auto", "json", "csv"}));
    app.add_option("--output", cfg.output, "write the report to a file");
    app.add_option("--precision", cfg.precision, "decimal digits in rendered values")->check(CLI::Range(1, 200));
    app.add_option("--workers", cfg.workers, "worker threads (default: all cores)");
    app.add_option("--seed", cfg.seed, "recorded in the report");

    auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression over a range of n");
    eval_cmd->add_option("--expr", cfg.expr)->required();
    eval_cmd->add_option("--n", cfg.range, "A..B");

    auto* expand_cmd = app.add_subcommand("expand", "bounded-coefficient expansion");
    expand_cmd->add_option("--expr", cfg.expr)->required();

    auto* family_cmd = app.add_subcommand("family", "values of a built-in family");
    add_family_options(family_cmd, cfg);
    family_cmd->add_option("--n", cfg.range, "A..B");

    auto* classify_cmd = app.add_subcommand("classify", "fit chi(n) n^a or detect vanishing density");
    add_family_options(classify_cmd, cfg);
    classify_cmd->add_option("--N", cfg.N);
    classify_cmd->add_option("--Qmax", cfg.Qmax);
    classify_cmd->add_option("--amax", cfg.amax);
    classify_cmd->add_option("--theta", cfg.theta);
    classify_cmd->add_option("--dilate", cfg.dilate, "also check f(kn) = f(n) for this k");

    auto* equi_cmd = app.add_subcommand("equi", "orbit diagnostics on a nilmanifold");
    add_sequence_options(equi_cmd, cfg);
    equi_cmd->add_option("--N", cfg.N);
    equi_cmd->add_option("--K", cfg.K);
    equi_cmd->add_option("--C", cfg.C);
    equi_cmd->add_option("--rho", cfg.rho, "also run the rho-density check");

    auto* primes_cmd = app.add_subcommand("primes", "prime-range experiments");
    primes_cmd->require_subcommand(1);
    auto* list_cmd = primes_cmd->add_subcommand("list", "primes in [X, 2X)");
    list_cmd->add_option("--X", cfg.X);
    list_cmd->add_option("--Q", cfg.Qres);
    list_cmd->add_option("--r", cfg.r);
    auto* rhin_cmd = primes_cmd->add_subcommand("rhin", "fractional parts of p(q) along primes");
    rhin_cmd->add_option("--poly", cfg.poly, "monomial coefficients a_0,a_1,...")->delimiter(',')->required();
    rhin_cmd->add_option("--X", cfg.X);
    rhin_cmd->add_option("--lo", cfg.lo);
    rhin_cmd->add_option("--hi", cfg.hi);
    auto* census_cmd = primes_cmd->add_subcommand("census", "bad-prime census");
    add_sequence_options(census_cmd, cfg);
    census_cmd->add_option("--N", cfg.N);
    census_cmd->add_option("--X", cfg.X);
    census_cmd->add_option("--K", cfg.K);
    census_cmd->add_option("--C", cfg.C);
    auto* joint_cmd = primes_cmd->add_subcommand("joint-dense", "density of (g(n), g(mn))");
    add_sequence_options(joint_cmd, cfg);
    joint_cmd->add_option("--m", cfg.m);
    joint_cmd->add_option("--N", cfg.N);
    joint_cmd->add_option("--delta", cfg.delta);

    auto* theorem_cmd = app.add_subcommand("theorem-a", "classification sweep over the built-in battery");
    theorem_cmd->add_option("--battery", cfg.battery, "groups: chars,geometric,fp,zero")->delimiter(',');
    theorem_cmd->add_option("--N", cfg.N);
    theorem_cmd->add_option("--Qmax", cfg.Qmax);
    theorem_cmd->add_option("--amax", cfg.amax);
    theorem_cmd->add_option("--theta", cfg.theta);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (const char* bits = std::getenv("GPSEQ_PRECISION_BITS")) {
            char* end = nullptr;
            const unsigned long v = std::strtoul(bits, &end, 10);
            if (*bits == '\0' || *end != '\0' || v < 8)
                throw ValidationError("GPSEQ_PRECISION_BITS must be an integer >= 8");
            set_refinement_cap(static_cast<unsigned>(v));
        }
        if (cfg.workers)
            set_default_workers(cfg.workers);
        const Writer w(cfg);
        if (eval_cmd->parsed())
            run_eval(cfg, w);
        else if (expand_cmd->parsed())
            run_expand(cfg, w);
        else if (family_cmd->parsed())
            run_family(cfg, w);
        else if (classify_cmd->parsed())
            run_classify(cfg, w);
        else if (equi_cmd->parsed())
            run_equi(cfg, w);
        else if (list_cmd->parsed())
            run_primes_list(cfg, w);
        else if (rhin_cmd->parsed())
            run_primes_rhin(cfg, w);
        else if (census_cmd->parsed())
            run_primes_census(cfg, w);
        else if (joint_cmd->parsed())
            run_primes_joint(cfg, w);
        else if (theorem_cmd->parsed())
            return run_theorem_a(cfg, w);
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
