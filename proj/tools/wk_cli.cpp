// wk: command-line front end for the Witten-Kontsevich kernel toolkit.

#include "wk/io.hpp"
#include "wk/kp_wave.hpp"
#include "wk/npoint.hpp"
#include "wk/sato.hpp"
#include "wk/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

enum Exit { kOk = 0, kInvalid = 2, kCutoff = 3, kCrossCheck = 4 };

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    int cutoff = -1;
    long order = -1;
    int degree = -1;
    int vars = -1;
    std::string format = "text";
    std::string out;
    std::string config;
    std::string convention = "standard";
};

// Output goes to --out when given, stdout otherwise; provenance goes to the report
// header in text mode and to stderr otherwise.
class Sink {
public:
    explicit Sink(const Config& c) : text_(c.format == "text") {
        if (!c.out.empty()) {
            file_ = std::make_unique<std::ofstream>(c.out);
            if (!*file_) throw InvalidInput("cannot open output file " + c.out);
        }
    }
    std::ostream& out() { return file_ ? *file_ : std::cout; }
    void note(const std::string& s) { (text_ ? out() : std::cerr) << "# " << s << "\n"; }

private:
    bool text_;
    std::unique_ptr<std::ofstream> file_;
};

void check_format(const Config& c, std::initializer_list<const char*> allowed) {
    for (auto* a : allowed)
        if (c.format == a) return;
    std::string msg = "format '" + c.format + "' not supported here (use";
    for (auto* a : allowed) msg += std::string(" ") + a;
    throw InvalidInput(msg + ")");
}

// key = value defaults from --config, for options not given on the command line.
void apply_config(CLI::App& app, Config& c) {
    if (c.config.empty()) return;
    std::ifstream in(c.config);
    if (!in) throw InvalidInput("cannot read config file " + c.config);
    auto kv = wk::io::parse_config(in);
    auto given = [&](const std::string& name) {
        for (CLI::App* sub : app.get_subcommands())
            if (auto* opt = sub->get_option_no_throw("--" + name); opt && opt->count() > 0) return true;
        auto* opt = app.get_option_no_throw("--" + name);
        return opt && opt->count() > 0;
    };
    auto as_long = [&](const std::string& k, const std::string& v) {
        try {
            std::size_t used = 0;
            long x = std::stol(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw InvalidInput("config key '" + k + "' needs an integer, got '" + v + "'");
        }
    };
    for (auto& [k, v] : kv) {
        if (given(k)) continue;
        if (k == "cutoff") c.cutoff = static_cast<int>(as_long(k, v));
        else if (k == "order") c.order = as_long(k, v);
        else if (k == "degree") c.degree = static_cast<int>(as_long(k, v));
        else if (k == "vars") c.vars = static_cast<int>(as_long(k, v));
        else if (k == "format") c.format = v;
        else if (k == "out") c.out = v;
        else if (k == "convention") c.convention = v;
        else if (k != "suite" && k != "truncation" && k != "which" && k != "indices")
            throw InvalidInput("unknown config key '" + k + "'");
    }
}

wk::Convention convention(const Config& c) {
    try {
        return wk::parse_convention(c.convention);
    } catch (const std::exception& e) {
        throw InvalidInput(e.what());
    }
}

std::vector<int> int_list(const std::string& s) {
    try {
        auto v = wk::io::parse_int_list(s);
        if (v.empty()) throw InvalidInput("empty index list");
        return v;
    } catch (const wk::io::ParseError& e) {
        throw InvalidInput(e.what());
    }
}

// ---- correlator ----

struct CorrelatorArgs {
    std::string indices;
    int max_total = -1;
    int max_n = 6;
};

int cmd_correlator(const Config& c, const CorrelatorArgs& a) {
    check_format(c, {"text", "json", "csv"});
    Sink sink(c);
    std::vector<wk::CorrelatorKey> keys;
    if (a.max_total >= 0) {
        for (int n = 1; n <= a.max_n; ++n)
            for (int s = 0; s <= a.max_total; ++s)
                for (auto& k : wk::keys_with(n, s))
                    if (k.valid()) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
    } else {
        if (a.indices.empty()) throw InvalidInput("give --indices or --max-total");
        auto m = int_list(a.indices);
        for (int v : m)
            if (v < 0) throw InvalidInput("insertion indices must be nonnegative");
        wk::CorrelatorKey key(m);
        if (!key.valid()) {
            std::cerr << "error: <" << key.str() << "> violates the selection rule sum m_i = 3g - 3 + n\n";
            return kInvalid;
        }
        keys.push_back(key);
    }
    int need = 0;
    for (auto& k : keys) need = std::max(need, wk::required_cutoff(k));
    int M = c.cutoff >= 0 ? c.cutoff : need;
    if (M < need) {
        std::cerr << "error: kernel cutoff " << M << " below required " << need << "\n";
        return kCutoff;
    }
    wk::Kernel K = wk::io::cached_kernel(M);
    sink.note("kernel cutoff " + std::to_string(M) + " (required " + std::to_string(need) + ")");

    wk::io::Json table = wk::io::Json::array();
    if (c.format == "csv") sink.out() << "indices,genus,value\n";
    for (auto& k : keys) {
        wk::Rational v = wk::intersection_number(k, K);
        if (c.format == "json") table.push_back(wk::io::correlator_record(k, v));
        else if (c.format == "csv") sink.out() << "\"" << k.str() << "\"," << k.genus() << "," << v.str() << "\n";
        else sink.out() << "<" << k.str() << ">_" << k.genus() << " = " << v.str() << "\n";
    }
    if (c.format == "json") sink.out() << wk::io::dump_json(a.max_total >= 0 ? table : table[0]);
    return kOk;
}

// ---- kernel ----

struct KernelArgs {
    std::string route = "closed";
    bool check_all = false;
};

int cmd_kernel(const Config& c, const KernelArgs& a) {
    check_format(c, {"text", "csv", "json"});
    int M = c.cutoff >= 0 ? c.cutoff : 12;
    if (M < 2) throw InvalidInput("kernel cutoff must be >= 2");
    long need = wk::required_series_order(M);
    if (c.order >= 0 && c.order < need)
        throw InvalidInput("series order " + std::to_string(c.order) + " below 3M+6 = " + std::to_string(need));
    auto conv = convention(c);
    Sink sink(c);
    sink.note("kernel cutoff " + std::to_string(M) + ", series order " + std::to_string(c.order >= 0 ? c.order : need) +
              ", convention " + wk::to_string(conv));

    auto build = [&](const std::string& route) {
        if (route == "closed") return conv == wk::Convention::Standard ? wk::io::cached_kernel(M, conv) : wk::kernel_from_closed_form(M, conv);
        if (route == "series") return wk::kernel_from_series(M, c.order, conv);
        if (route == "gmatrix") return wk::kernel_from_gmatrix(M, c.order, conv);
        if (route == "frame") return wk::kernel_from_frame(M, conv);
        throw InvalidInput("unknown route '" + route + "' (closed, series, gmatrix, frame)");
    };
    wk::Kernel K = build(a.route);
    if (a.check_all) {
        for (const char* r : {"closed", "series", "gmatrix", "frame"}) {
            if (r == a.route) continue;
            if (auto d = build(r).first_difference(K)) {
                std::cerr << "error: route " << r << " differs from " << a.route << " at (" << (*d)[0] << ","
                          << (*d)[1] << ")\n";
                return kCrossCheck;
            }
        }
        sink.note("all four routes agree");
    }
    if (c.format == "json") {
        wk::io::Json arr = wk::io::Json::array();
        for (int d = 0; d <= 2 * M; ++d)
            for (int m = std::max(0, d - M); m <= std::min(d, M); ++m)
                if (!K(m, d - m).is_zero()) arr.push_back({{"m", m}, {"n", d - m}, {"value", K(m, d - m).str()}});
        sink.out() << wk::io::dump_json(arr);
    } else {
        wk::io::write_kernel_csv(sink.out(), K);
    }
    return kOk;
}

// ---- npoint ----

int cmd_npoint(const Config& c, const std::string& indices) {
    check_format(c, {"text", "json"});
    auto js = int_list(indices);
    for (int j : js)
        if (j < 1) throw InvalidInput("npoint indices j must be positive");
    int need = wk::npoint_demand(js).cutoff + 3;
    int M = c.cutoff >= 0 ? c.cutoff : need;
    if (M < need) {
        std::cerr << "error: kernel cutoff " << M << " below required " << need << "\n";
        return kCutoff;
    }
    Sink sink(c);
    auto v = wk::connected_npoint_coeff(wk::io::cached_kernel(M), js);
    sink.note("kernel cutoff " + std::to_string(v.cutoff) + " and " + std::to_string(v.cutoff + 3) + ", window " +
              std::to_string(v.window) + " and " + std::to_string(v.window + 3));
    if (c.format == "json") {
        wk::io::Json j;
        j["j"] = js;
        j["value"] = v.value.str();
        sink.out() << wk::io::dump_json(j);
    } else {
        sink.out() << v.value.str() << "\n";
    }
    return kOk;
}

// ---- series ----

int cmd_series(const Config& c, const std::string& which) {
    check_format(c, {"text"});
    long K = c.order >= 0 ? c.order : 12;
    auto conv = convention(c);
    Sink sink(c);
    wk::Series1 s;
    if (which == "a") s = wk::generator_a(K, "x", conv);
    else if (which == "b") s = wk::generator_b(K, "y", conv);
    else if (which == "c") s = wk::airy_c(K, "xi");
    else if (which == "q") s = wk::airy_q(K, "xi");
    else if (which == "diagonal") s = wk::kernel_diagonal(K, conv);
    else throw InvalidInput("unknown series '" + which + "' (a, b, c, q, diagonal)");
    sink.note("order " + std::to_string(K));
    wk::io::write_series(sink.out(), s);
    return kOk;
}

// ---- tau ----

int cmd_tau(const Config& c, bool monomial) {
    check_format(c, {"text", "json"});
    int W = c.degree >= 0 ? c.degree : 6;
    int J = c.vars >= 0 ? c.vars : W;
    if (W < 0 || J < 1) throw InvalidInput("need --degree >= 0 and --vars >= 1");
    if (monomial && J < W) throw InvalidInput("--vars must be at least --degree for the monomial dump");
    auto conv = convention(c);
    int M = std::max(W - 1, 0);
    Sink sink(c);
    sink.note("weight cap " + std::to_string(W) + ", variables T_1..T_" + std::to_string(J) + ", kernel cutoff " +
              std::to_string(M) + ", convention " + wk::to_string(conv));
    wk::AffineCoords a(wk::kernel_from_closed_form(M, conv));
    auto coeffs = wk::tau_schur_expansion(a, W);
    wk::io::Json arr = wk::io::Json::array();
    if (!monomial) {
        for (auto& [mu, v] : coeffs) {
            if (c.format == "json") arr.push_back({{"partition", mu.parts()}, {"frobenius", mu.frobenius_str()}, {"value", v.str()}});
            else sink.out() << (mu.empty() ? "()" : mu.str()) << "\t" << mu.frobenius_str() << "\t" << v.str() << "\n";
        }
    } else {
        wk::MultiPoly tau = wk::tau_polynomial(coeffs, J, W);
        for (auto& [e, v] : tau.terms()) {
            std::string mono;
            for (std::size_t k = 0; k < e.size(); ++k)
                if (e[k]) mono += (mono.empty() ? "" : "*") + std::string("T") + std::to_string(k + 1) + (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
            if (mono.empty()) mono = "1";
            if (c.format == "json") arr.push_back({{"monomial", mono}, {"value", v.str()}});
            else sink.out() << mono << "\t" << v.str() << "\n";
        }
    }
    if (c.format == "json") sink.out() << wk::io::dump_json(arr);
    return kOk;
}

// ---- verify ----

int cmd_verify(const Config& c, const std::string& suite, const std::string& truncation) {
    check_format(c, {"text", "json"});
    if (truncation != "small" && truncation != "full") throw InvalidInput("--truncation must be small or full");
    Sink sink(c);
    sink.note("suite " + suite + ", truncation " + truncation);
    std::vector<wk::verify::CheckResult> results;
    try {
        results = wk::verify::run_suite(suite, {truncation == "small"});
    } catch (const std::invalid_argument& e) {
        throw InvalidInput(e.what());
    }
    bool all = true;
    wk::io::Json arr = wk::io::Json::array();
    for (auto& r : results) {
        all = all && r.ok;
        if (c.format == "json") arr.push_back({{"suite", r.suite}, {"check", r.name}, {"ok", r.ok}, {"detail", r.detail}});
        else sink.out() << (r.ok ? "PASS" : "FAIL") << "  [" << r.suite << "] " << r.name << "  (" << r.detail << ")\n";
    }
    if (c.format == "json") sink.out() << wk::io::dump_json(arr);
    return all ? kOk : kCrossCheck;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Witten-Kontsevich kernel, correlators and wave functions in exact arithmetic"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--config", cfg.config, "key = value defaults file");

    auto common = [&](CLI::App* s) {
        s->add_option("--cutoff", cfg.cutoff, "kernel cutoff M");
        s->add_option("--format", cfg.format, "text | json | csv");
        s->add_option("--out", cfg.out, "write output to file");
        s->add_option("--convention", cfg.convention, "standard | faber-zagier");
    };

    CorrelatorArgs ca;
    auto* corr = app.add_subcommand("correlator", "intersection numbers <tau_m1 ... tau_mn>_g");
    common(corr);
    corr->add_option("--indices", ca.indices, "comma-separated m_i");
    corr->add_option("--max-total", ca.max_total, "table of all valid keys with sum m_i <= value");
    corr->add_option("--max-n", ca.max_n, "largest number of insertions in a table")->capture_default_str();

    KernelArgs ka;
    auto* kern = app.add_subcommand("kernel", "nonzero entries of the Airy kernel");
    common(kern);
    kern->add_option("--order", cfg.order, "series order for series-based routes");
    kern->add_option("--route", ka.route, "closed | series | gmatrix | frame")->capture_default_str();
    kern->add_flag("--check-all", ka.check_all, "cross-check all four routes");

    std::string np_idx;
    auto* np = app.add_subcommand("npoint", "connected n-point coefficient at xi_i^{-j_i-1}");
    common(np);
    np->add_option("--indices", np_idx, "comma-separated j_i >= 1")->required();

    std::string which;
    auto* ser = app.add_subcommand("series", "dump a, b, c, q or the kernel diagonal");
    common(ser);
    ser->add_option("--which", which, "a | b | c | q | diagonal")->required();
    ser->add_option("--order", cfg.order, "truncation order K");

    bool monomial = false;
    auto* tau = app.add_subcommand("tau", "Schur coefficients or T-monomials of the Airy tau-function");
    common(tau);
    tau->add_option("--degree", cfg.degree, "weight cap");
    tau->add_option("--vars", cfg.vars, "number of time variables T_1..T_J");
    tau->add_flag("--monomial", monomial, "dump tau as a polynomial in T");

    std::string suite = "all", truncation = "full";
    auto* ver = app.add_subcommand("verify", "run the self-check suites");
    common(ver);
    ver->add_option("--suite", suite, "airy | schur | sato | npoint | kp | all")->capture_default_str();
    ver->add_option("--truncation", truncation, "small | full")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        apply_config(app, cfg);
        if (corr->parsed()) return cmd_correlator(cfg, ca);
        if (kern->parsed()) return cmd_kernel(cfg, ka);
        if (np->parsed()) return cmd_npoint(cfg, np_idx);
        if (ser->parsed()) return cmd_series(cfg, which);
        if (tau->parsed()) return cmd_tau(cfg, monomial);
        if (ver->parsed()) return cmd_verify(cfg, suite, truncation);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const wk::InvalidKey& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const wk::CutoffError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCutoff;
    } catch (const wk::InstabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCutoff;
    } catch (const wk::io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCrossCheck;
    }
    return kInvalid;
}
