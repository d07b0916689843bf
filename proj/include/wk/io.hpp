#pragma once

#include "wk/npoint.hpp"
#include "wk/sato.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace wk::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string reliable_str(long N) { return N >= kExact ? "inf" : std::to_string(N); }

inline long parse_reliable(const std::string& s) {
    if (s == "inf") return kExact;
    try {
        return std::stol(s);
    } catch (const std::exception&) {
        throw ParseError("bad reliable order '" + s + "'");
    }
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// # var=<tag> reliable=<N>, then exponent<TAB>p/q lines in descending exponent order.
inline void write_series(std::ostream& os, const Series1& s, const std::string& prefactor = "") {
    os << "# var=" << s.tag() << " reliable=" << reliable_str(s.reliable()) << "\n";
    if (!prefactor.empty()) os << "# prefactor=" << prefactor << "\n";
    for (auto& [e, c] : s.terms()) os << e << "\t" << c.str() << "\n";
}

inline Series1 read_series(std::istream& is) {
    std::string line;
    std::optional<Series1> s;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty()) {
            if (s) break;
            continue;
        }
        if (line.rfind("# var=", 0) == 0) {
            std::istringstream hs(line.substr(2));
            std::string tok, tag = "z";
            long rel = kExact;
            while (hs >> tok) {
                if (tok.rfind("var=", 0) == 0) tag = tok.substr(4);
                else if (tok.rfind("reliable=", 0) == 0) rel = parse_reliable(tok.substr(9));
            }
            s = Series1(tag, rel);
            continue;
        }
        if (line[0] == '#') continue;
        if (!s) throw ParseError("series data before header");
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError("series line without tab: " + line);
        long e = std::stol(line.substr(0, tab));
        s->set(e, Rational::parse(trim(line.substr(tab + 1))));
    }
    if (!s) throw ParseError("no series header");
    return *s;
}

// Blocks in the series format, separated by blank lines, ordered by n.
inline void write_frame(std::ostream& os, const AdmissibleFrame& f) {
    for (std::size_t n = 0; n < f.size(); ++n) {
        if (n) os << "\n";
        write_series(os, f[n]);
    }
}

inline AdmissibleFrame read_frame(std::istream& is) {
    std::vector<Series1> basis;
    std::string line, block;
    auto flush = [&] {
        if (trim(block).empty()) return;
        std::istringstream bs(block);
        basis.push_back(read_series(bs));
        block.clear();
    };
    while (std::getline(is, line)) {
        if (trim(line).empty()) flush();
        else block += line + "\n";
    }
    flush();
    return AdmissibleFrame(std::move(basis));
}

// m,n,value for nonzero entries, sorted by (m+n, m).
inline void write_kernel_csv(std::ostream& os, const Kernel& k) {
    os << "m,n,value\n";
    const int M = k.cutoff();
    for (int d = 0; d <= 2 * M; ++d)
        for (int m = std::max(0, d - M); m <= std::min(d, M); ++m) {
            const Rational& v = k(m, d - m);
            if (!v.is_zero()) os << m << "," << d - m << "," << v.str() << "\n";
        }
}

inline Kernel read_kernel_csv(std::istream& is, int M, const std::string& route = "csv") {
    Kernel k(M, route);
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "m,n,value") throw ParseError("kernel CSV must start with 'm,n,value'");
            header = true;
            continue;
        }
        std::istringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
            throw ParseError("bad kernel CSV line: " + line);
        int m = std::stoi(a), n = std::stoi(b);
        if (m <= M && n <= M) k.set(m, n, Rational::parse(c));
    }
    return k;
}

// Closed-form kernel, memoized as CSV under $WK_KERNEL_CACHE when set.
inline Kernel cached_kernel(int M, Convention conv = Convention::Standard) {
    const char* dir = std::getenv("WK_KERNEL_CACHE");
    if (!dir || !*dir) return kernel_from_closed_form(M, conv);
    namespace fs = std::filesystem;
    fs::path p = fs::path(dir) / ("kernel_M" + std::to_string(M) + "_" + to_string(conv) + ".csv");
    if (fs::exists(p)) {
        std::ifstream in(p);
        return read_kernel_csv(in, M, "cache");
    }
    Kernel k = kernel_from_closed_form(M, conv);
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream out(p);
    if (out) write_kernel_csv(out, k);
    return k;
}

using Json = nlohmann::ordered_json;

inline Json correlator_record(const CorrelatorKey& key, const Rational& value) {
    Json j;
    j["indices"] = key.indices();
    j["genus"] = key.genus();
    j["value"] = value.str();
    return j;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

// key = value lines; '#' starts a comment.
inline std::map<std::string, std::string> parse_config(std::istream& is) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        std::size_t used = 0;
        int x = 0;
        try {
            x = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw ParseError("not an integer: '" + tok + "'");
        }
        if (used != tok.size()) throw ParseError("not an integer: '" + tok + "'");
        v.push_back(x);
    }
    return v;
}

} // namespace wk::io
