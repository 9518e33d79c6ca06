// ---------------------------------------------------------------------------
// chatelet: command-line driver.
//
// Five subcommands over one surface, fixed by the coprime coefficient
// pairs --surface a3,b3,a4,b4:
//
//   count       N(B) table: bound, nondegenerate count, degenerate count
//   points      full export of every rational point of height <= B, one
//               row per point, with torsor class, figure color and real
//               connected component
//   crosscheck  Moebius-decomposed count vs direct enumeration over a
//               range of bounds; prints "OK: n/n values equal" and exits
//               nonzero iff any bound disagrees
//   constant    the assembled leading constant of N(B) ~ c B log B, as a
//               JSON report with truncation metadata
//   fit         diagnostic table N(B) vs c (B log B - B + 1)
//
// Output goes to stdout or --out PATH, as CSV (schema versioned through
// the leading "# chatelet-manin v<semver>" comment line) or JSON lines.
// Runs are deterministic: the same config and version produce the same
// bytes whatever --threads says (all parallel reductions are fixed-order).
//
// --config PATH overlays a key=value file -- or a JSON object, detected by
// a leading '{' -- on top of the flags; parse failures are fatal and carry
// file/line diagnostics.
// ---------------------------------------------------------------------------

#include "chatelet/densities.hpp"
#include "chatelet/points.hpp"
#include "chatelet/sums.hpp"
#include "chatelet/surface.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cctype>
#include <cerrno>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace chatelet;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSemver = "0.1.0";

// every tunable the subcommands share; config-file keys use the same names
struct Options {
    std::string surface;          // "a3,b3,a4,b4"
    i64 bound = 0;                // single height bound
    std::string bounds;           // "B1,B2,..." (wins over --bound)
    i64 lmax = 15;                // odd-squarefree cutoff of the ell sum
    i64 bmax = 20;                // ideal-norm cutoff of the b sums
    i64 p0 = 100000;              // Euler product cutoff
    std::string out;              // output path ("" = stdout)
    std::string format = "csv";   // csv | jsonl
    int threads = 1;
    std::string config;           // overlay file, applied after the flags
};

// --- small parsing helpers -------------------------------------------------

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace((unsigned char)s[a])) ++a;
    while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
    return s.substr(a, b - a);
}

i64 parse_int(const std::string& raw, const std::string& where) {
    std::string s = trim(raw);
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
        throw ConfigError(where + ": expected an integer, got '" + raw + "'");
    return (i64)v;
}

std::vector<i64> parse_int_list(const std::string& raw, const std::string& where) {
    std::vector<i64> out;
    std::string cur;
    std::stringstream ss(raw);
    while (std::getline(ss, cur, ',')) out.push_back(parse_int(cur, where));
    if (out.empty()) throw ConfigError(where + ": empty list");
    return out;
}

SurfaceSpec surface_of(const Options& o) {
    if (o.surface.empty())
        throw ConfigError("--surface a3,b3,a4,b4 is required");
    auto c = parse_int_list(o.surface, "--surface");
    if (c.size() != 4)
        throw ConfigError("--surface: expected four integers, got " +
                          std::to_string(c.size()));
    return validate(c[0], c[1], c[2], c[3]);
}

// the bound list a subcommand iterates over: --bounds wins, else --bound
std::vector<i64> bound_list(const Options& o, const char* cmd) {
    if (!o.bounds.empty()) return parse_int_list(o.bounds, "--bounds");
    if (o.bound > 0) return {o.bound};
    throw ConfigError(std::string(cmd) + " needs --bound B or --bounds B1,B2,...");
}

// --- config overlay ----------------------------------------------------------

// assign one key; shared by both config syntaxes
void config_assign(Options& o, const std::string& key, const std::string& value,
                   const std::string& where) {
    if (key == "surface")      o.surface = value;
    else if (key == "bound")   o.bound = parse_int(value, where);
    else if (key == "bounds")  o.bounds = value;
    else if (key == "lmax")    o.lmax = parse_int(value, where);
    else if (key == "bmax")    o.bmax = parse_int(value, where);
    else if (key == "p0")      o.p0 = parse_int(value, where);
    else if (key == "out")     o.out = value;
    else if (key == "format")  o.format = value;
    else if (key == "threads") o.threads = (int)parse_int(value, where);
    else
        throw ConfigError(where + ": unknown key '" + key + "'");
}

void apply_json_config(Options& o, const std::string& text, const std::string& path) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(path + ": top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        std::string s;
        if (v.is_string())
            s = v.get<std::string>();
        else if (v.is_number_integer())
            s = std::to_string(v.get<long long>());
        else if (v.is_array()) {
            // integer arrays are sugar for the comma syntax (surface, bounds)
            for (size_t i = 0; i < v.size(); ++i) {
                if (!v[i].is_number_integer())
                    throw ConfigError(path + ": key '" + it.key() +
                                      "': array entries must be integers");
                if (i) s += ',';
                s += std::to_string(v[i].get<long long>());
            }
        } else {
            throw ConfigError(path + ": key '" + it.key() +
                              "': expected string, integer or integer array");
        }
        config_assign(o, it.key(), s, path + ": key '" + it.key() + "'");
    }
}

void apply_kv_config(Options& o, const std::string& text, const std::string& path) {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string where = path + ":" + std::to_string(lineno);
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected key=value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        config_assign(o, key, value, where);
    }
}

void apply_config(Options& o) {
    if (o.config.empty()) return;
    std::ifstream in(o.config, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + o.config + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        apply_json_config(o, text, o.config);
    else
        apply_kv_config(o, text, o.config);
    if (o.format != "csv" && o.format != "jsonl")
        throw ConfigError(o.config + ": format must be csv or jsonl, got '" +
                          o.format + "'");
    if (o.threads < 1) throw ConfigError(o.config + ": threads must be >= 1");
}

// --- output ------------------------------------------------------------------

void emit(const std::string& text, const Options& o) {
    if (o.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open output file '" + o.out + "'");
    f.write(text.data(), (std::streamsize)text.size());
    if (!f) throw ConfigError("write to '" + o.out + "' failed");
}

std::string csv_banner() {
    return std::string("# chatelet-manin v") + kSemver + "\n";
}

std::string fmt(const char* spec, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, spec);
    vsnprintf(buf, sizeof buf, spec, ap);
    va_end(ap);
    return buf;
}

// --- subcommands ---------------------------------------------------------

int run_count(const Options& o) {
    SurfaceSpec spec = surface_of(o);
    std::string text;
    if (o.format == "csv") text = csv_banner() + "B,nondegenerate,degenerate\n";
    for (i64 B : bound_list(o, "count")) {
        auto [nondeg, deg] = count_points(spec, B, o.threads);
        if (o.format == "csv") {
            text += fmt("%lld,%lld,%lld\n", (long long)B, (long long)nondeg,
                        (long long)deg);
        } else {
            ordered_json row{{"B", B}, {"nondegenerate", nondeg}, {"degenerate", deg}};
            text += row.dump() + "\n";
        }
    }
    emit(text, o);
    return 0;
}

int run_points(const Options& o) {
    SurfaceSpec spec = surface_of(o);
    if (o.bound <= 0) throw ConfigError("points needs --bound B");
    auto records = enumerate_points(spec, o.bound);
    std::string text;
    if (o.format == "csv")
        text = csv_banner() +
               "x,y,t,u,v,height,m1,m2,m3,m4,degenerate,color,component\n";
    for (const auto& r : records) {
        const auto& P = r.point;
        const auto& m = r.torsor_class.m;
        const char* color = r.figure_color == Color::black ? "black" : "white";
        const char* comp = r.real_component == Component::A ? "A" : "B";
        if (o.format == "csv") {
            text += fmt("%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%d,",
                        (long long)P.x, (long long)P.y, (long long)P.t,
                        (long long)P.u, (long long)P.v, (long long)P.height,
                        (long long)m[1], (long long)m[2], (long long)m[3],
                        (long long)m[4], r.degenerate ? 1 : 0);
            // color / component are only defined off the degenerate fibers
            if (r.degenerate)
                text += ",\n";
            else
                text += fmt("%s,%s\n", color, comp);
        } else {
            ordered_json row{{"x", P.x},   {"y", P.y}, {"t", P.t},
                             {"u", P.u},   {"v", P.v}, {"height", P.height},
                             {"m1", m[1]}, {"m2", m[2]},
                             {"m3", m[3]}, {"m4", m[4]},
                             {"degenerate", r.degenerate}};
            if (r.degenerate) {
                row["color"] = nullptr;
                row["component"] = nullptr;
            } else {
                row["color"] = color;
                row["component"] = comp;
            }
            text += row.dump() + "\n";
        }
    }
    emit(text, o);
    return 0;
}

int run_crosscheck(const Options& o) {
    SurfaceSpec spec = surface_of(o);
    std::vector<i64> Bs;
    if (!o.bounds.empty())
        Bs = parse_int_list(o.bounds, "--bounds");
    else if (o.bound > 0)
        for (i64 B = 1; B <= o.bound; ++B) Bs.push_back(B);  // the full prefix
    else
        throw ConfigError("crosscheck needs --bound B (checks 1..B) or --bounds");

    std::string text;
    if (o.format == "csv") text = csv_banner() + "B,moebius,direct,equal\n";
    i64 equal = 0;
    for (i64 B : Bs) {
        i64 mob = moebius_count(spec, B);
        i64 dir = count_points(spec, B, o.threads).first;
        bool eq = (mob == dir);
        equal += eq;
        if (o.format == "csv") {
            text += fmt("%lld,%lld,%lld,%d\n", (long long)B, (long long)mob,
                        (long long)dir, eq ? 1 : 0);
        } else {
            ordered_json row{
                {"B", B}, {"moebius", mob}, {"direct", dir}, {"equal", eq}};
            text += row.dump() + "\n";
        }
    }
    if (!o.out.empty()) emit(text, o);
    bool ok = equal == (i64)Bs.size();
    std::printf("%s: %lld/%zu values equal\n", ok ? "OK" : "FAIL",
                (long long)equal, Bs.size());
    return ok ? 0 : 1;
}

int run_constant(const Options& o) {
    SurfaceSpec spec = surface_of(o);
    ConstantReport rep =
        assemble_constant(spec, o.lmax, o.bmax, o.p0, o.threads);
    emit(constant_report_json(rep) + "\n", o);
    return 0;
}

int run_fit(const Options& o) {
    SurfaceSpec spec = surface_of(o);
    std::vector<i64> Bs = o.bounds.empty() && o.bound <= 0
                              ? std::vector<i64>{10000, 100000, 1000000}
                              : bound_list(o, "fit");
    auto rows = fit_empirical(spec, Bs, o.lmax, o.bmax, o.p0, o.threads);
    std::string text;
    if (o.format == "csv") text = csv_banner() + "B,nondegenerate,prediction,ratio\n";
    for (const auto& r : rows) {
        if (o.format == "csv") {
            text += fmt("%lld,%lld,%.9Le,%.6Lf\n", (long long)r.B,
                        (long long)r.N_nondeg, r.prediction, r.ratio);
        } else {
            ordered_json row{{"B", r.B},
                             {"nondegenerate", r.N_nondeg},
                             {"prediction", (double)r.prediction},
                             {"ratio", (double)r.ratio}};
            text += row.dump() + "\n";
        }
    }
    emit(text, o);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational point counts and the leading constant on "
                 "Chatelet surfaces y^2 + z^2 = x (a3 x + b3)(a4 x + b4)"};
    app.require_subcommand(1);

    Options o;
    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--surface", o.surface,
                        "coefficients a3,b3,a4,b4 (coprime pairs)");
        sub->add_option("--bound", o.bound, "height bound B");
        sub->add_option("--bounds", o.bounds, "comma-separated height bounds");
        sub->add_option("--lmax", o.lmax, "odd-squarefree ell cutoff")
            ->capture_default_str();
        sub->add_option("--bmax", o.bmax, "ideal norm cutoff of the b sums")
            ->capture_default_str();
        sub->add_option("--p0", o.p0, "Euler product cutoff")
            ->capture_default_str();
        sub->add_option("--out", o.out, "output path (default stdout)");
        sub->add_option("--format", o.format, "csv or jsonl")
            ->capture_default_str();
        sub->add_option("--threads", o.threads, "worker threads")
            ->capture_default_str();
        sub->add_option("--config", o.config,
                        "key=value or JSON file overriding the flags");
    };

    CLI::App* c_count = app.add_subcommand(
        "count", "N(B) table (nondegenerate and degenerate)");
    CLI::App* c_points = app.add_subcommand(
        "points", "export all points of height <= B with class and color");
    CLI::App* c_cross = app.add_subcommand(
        "crosscheck", "Moebius count vs direct enumeration");
    CLI::App* c_const = app.add_subcommand(
        "constant", "assembled leading constant (JSON report)");
    CLI::App* c_fit = app.add_subcommand(
        "fit", "empirical N(B) against c (B log B - B + 1)");
    for (CLI::App* sub : {c_count, c_points, c_cross, c_const, c_fit})
        add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        apply_config(o);
        if (o.format != "csv" && o.format != "jsonl")
            throw ConfigError("format must be csv or jsonl, got '" + o.format + "'");
        if (o.threads < 1) throw ConfigError("threads must be >= 1");
        if (c_count->parsed()) return run_count(o);
        if (c_points->parsed()) return run_points(o);
        if (c_cross->parsed()) return run_crosscheck(o);
        if (c_const->parsed()) return run_constant(o);
        if (c_fit->parsed()) return run_fit(o);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
