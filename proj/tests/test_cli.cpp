// End-to-end runs of the command-line binary (path injected by the build
// as CHATELET_BIN_PATH): output schemas, config overlays, exit statuses,
// and byte-level determinism.
#include "doctest.h"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int status = -1;
    std::string out;  // stdout + stderr interleaved
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(CHATELET_BIN_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int rc = pclose(p);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

} // namespace

TEST_CASE("count emits the versioned CSV schema") {
    auto r = run_cli("count --surface 1,1,1,-1 --bound 25");
    CHECK(r.status == 0);
    CHECK(r.out ==
          "# chatelet-manin v0.1.0\nB,nondegenerate,degenerate\n25,16,4\n");
}

TEST_CASE("count over a bound list as JSON lines") {
    auto r = run_cli("count --surface 1,1,1,-1 --bounds 25,100 --format jsonl");
    CHECK(r.status == 0);
    std::stringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    auto j1 = nlohmann::json::parse(line);
    CHECK(j1["B"] == 25);
    CHECK(j1["nondegenerate"] == 16);
    CHECK(j1["degenerate"] == 4);
    std::getline(ss, line);
    auto j2 = nlohmann::json::parse(line);
    CHECK(j2["B"] == 100);
    CHECK(j2["nondegenerate"] == 80);
}

TEST_CASE("points export: one row per point, blanks on degenerate rows") {
    auto r = run_cli("points --surface 1,1,1,-1 --bound 25");
    CHECK(r.status == 0);
    CHECK(count_lines(r.out) == 2 + 16 + 4);
    std::stringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "# chatelet-manin v0.1.0");
    std::getline(ss, line);
    CHECK(line == "x,y,t,u,v,height,m1,m2,m3,m4,degenerate,color,component");
    int deg = 0, black = 0, white = 0;
    while (std::getline(ss, line)) {
        if (line.find(",1,,") != std::string::npos) {
            ++deg;  // degenerate flag set, color and component blank
            CHECK(line.substr(line.size() - 4) == ",1,,");
        } else {
            bool is_black = line.find(",black,") != std::string::npos;
            bool is_white = line.find(",white,") != std::string::npos;
            CHECK(is_black != is_white);
            black += is_black;
            white += is_white;
        }
    }
    CHECK(deg == 4);
    CHECK(black + white == 16);
}

TEST_CASE("points as JSON lines carry null color on degenerate rows") {
    auto r = run_cli("points --surface 1,2,1,3 --bound 9 --format jsonl");
    CHECK(r.status == 0);
    int deg = 0, nondeg = 0;
    std::stringstream ss(r.out);
    std::string line;
    while (std::getline(ss, line)) {
        auto j = nlohmann::json::parse(line);
        long long u = j["u"].get<long long>(), v = j["v"].get<long long>(),
                  t = j["t"].get<long long>();
        long long h = j["height"].get<long long>();
        CHECK(h == std::max(std::abs(u), std::abs(v)) * std::max(std::abs(u), std::abs(v)) * t);
        if (j["degenerate"].get<bool>()) {
            ++deg;
            CHECK(j["color"].is_null());
            CHECK(j["component"].is_null());
        } else {
            ++nondeg;
            CHECK((j["color"] == "black" || j["color"] == "white"));
            CHECK((j["component"] == "A" || j["component"] == "B"));
        }
    }
    CHECK(deg == 4);
    CHECK(nondeg == 16);  // N(9) of this surface
}

TEST_CASE("crosscheck reports the identity and exits zero") {
    auto r = run_cli("crosscheck --surface 1,1,1,-1 --bound 20");
    CHECK(r.status == 0);
    CHECK(r.out == "OK: 20/20 values equal\n");
    auto r2 = run_cli("crosscheck --surface 1,2,1,3 --bounds 25,100,400");
    CHECK(r2.status == 0);
    CHECK(r2.out == "OK: 3/3 values equal\n");
}

TEST_CASE("constant subcommand prints the JSON report") {
    auto r = run_cli("constant --surface 1,1,1,-1 --lmax 1 --bmax 1 --p0 10000");
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["terms"] == 4);
    CHECK(j["Lmax"] == 1);
    CHECK(j["Bmax"] == 1);
    CHECK(j["P0"] == 10000);
    CHECK(j["tail_bound_is_estimate"] == true);
    CHECK(std::abs(j["c"].get<double>() - 0.2990721261) < 1e-6);
}

TEST_CASE("fit subcommand emits the diagnostic table") {
    auto r = run_cli(
        "fit --surface 1,1,1,-1 --bounds 100,1000 --lmax 1 --bmax 1 --p0 1000");
    CHECK(r.status == 0);
    std::stringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "# chatelet-manin v0.1.0");
    std::getline(ss, line);
    CHECK(line == "B,nondegenerate,prediction,ratio");
    std::getline(ss, line);
    CHECK(line.rfind("100,80,", 0) == 0);
    std::getline(ss, line);
    CHECK(line.rfind("1000,768,", 0) == 0);
}

TEST_CASE("runs are byte-identical, whatever the thread count") {
    std::string f1 = "/tmp/chatelet_test_points_a.csv";
    std::string f2 = "/tmp/chatelet_test_points_b.csv";
    auto r1 = run_cli("points --surface 1,2,1,3 --bound 400 --threads 1 --out " + f1);
    auto r2 = run_cli("points --surface 1,2,1,3 --bound 400 --threads 4 --out " + f2);
    CHECK(r1.status == 0);
    CHECK(r2.status == 0);
    std::string a = slurp(f1), b = slurp(f2);
    CHECK(a == b);
    CHECK(!a.empty());
    std::remove(f1.c_str());
    std::remove(f2.c_str());
}

TEST_CASE("config file overrides flags: key=value syntax") {
    std::string cfg = "/tmp/chatelet_test_cfg.txt";
    spit(cfg, "# comment line\nsurface = 1,1,1,-1\nbound = 25  # trailing\n");
    auto r = run_cli("count --surface 9,9,9,9 --bound 1 --config " + cfg);
    CHECK(r.status == 0);
    CHECK(r.out.find("25,16,4") != std::string::npos);
    std::remove(cfg.c_str());
}

TEST_CASE("config file overrides flags: JSON syntax") {
    std::string cfg = "/tmp/chatelet_test_cfg.json";
    spit(cfg, "{\n  \"surface\": [1, 2, 1, 3],\n  \"bounds\": [100],\n"
              "  \"format\": \"jsonl\"\n}\n");
    auto r = run_cli("count --config " + cfg);
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["B"] == 100);
    CHECK(j["nondegenerate"] == 176);
    std::remove(cfg.c_str());
}

TEST_CASE("config parse failures are fatal with a located diagnostic") {
    std::string cfg = "/tmp/chatelet_test_bad.txt";
    spit(cfg, "surface = 1,1,1,-1\nbound 25\n");
    auto r = run_cli("count --config " + cfg);
    CHECK(r.status == 2);
    CHECK(r.out.find("chatelet_test_bad.txt:2") != std::string::npos);
    CHECK(r.out.find("expected key=value") != std::string::npos);

    spit(cfg, "surfaze = 1,1,1,-1\n");
    auto r2 = run_cli("count --config " + cfg);
    CHECK(r2.status == 2);
    CHECK(r2.out.find("unknown key 'surfaze'") != std::string::npos);

    spit(cfg, "{ \"surface\": [1,\n");
    auto r3 = run_cli("count --config " + cfg);
    CHECK(r3.status == 2);
    CHECK(r3.out.find("parse error") != std::string::npos);
    std::remove(cfg.c_str());
}

TEST_CASE("module errors surface as nonzero exits with a diagnostic") {
    auto r = run_cli("count --surface 2,4,1,1 --bound 25");
    CHECK(r.status == 2);
    CHECK(r.out.find("GcdError") != std::string::npos);

    auto r2 = run_cli("count --surface 1,1,1,-1");
    CHECK(r2.status == 2);
    CHECK(r2.out.find("needs --bound") != std::string::npos);

    auto r3 = run_cli("count --surface 1,1,1,-1 --bound 25 --format xml");
    CHECK(r3.status == 2);
    CHECK(r3.out.find("format") != std::string::npos);
}
