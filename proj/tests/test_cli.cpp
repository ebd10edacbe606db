#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using hyplatt::run_cli;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("count emits the documented CSV") {
    auto r = run({"count", "--group", "psl2z", "--z", "0,1", "--w", "0,1", "--xmax", "3"});
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() >= 2);
    CHECK(ls.front() == "X,N");
    CHECK(ls.back() == "3,10");
    CHECK(r.err.find("output_fnv1a=") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"count"}).code == 2);            // missing --xmax
    CHECK(run({"frobnicate"}).code == 2);       // unknown subcommand
    CHECK(run({"count", "--xmax", "3", "--bogus"}).code == 2);
}

TEST_CASE("validation and numeric errors map to exit codes 3 and 4") {
    CHECK(run({"count", "--xmax", "3", "--z", "1"}).code == 3);        // malformed point
    CHECK(run({"count", "--xmax", "3", "--group", "zzz"}).code == 3);  // unknown group
    CHECK(run({"transform", "--x", "1.5", "--t", "0"}).code == 4);     // X <= 2
    CHECK(run({"maass-load", "--file", "/nonexistent"}).code == 3);
}

TEST_CASE("signs table rows are negative") {
    auto r = run({"signs", "--tmax", "5", "--step", "1"});
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 6); // header + 5 rows
    for (size_t k = 1; k < ls.size(); ++k) {
        double t, a, b, c;
        REQUIRE(std::sscanf(ls[k].c_str(), "%lf,%lf,%lf,%lf", &t, &a, &b, &c) == 4);
        CHECK(a < 0.0);
        CHECK(b < 0.0);
    }
}

TEST_CASE("byte determinism across runs and shard counts") {
    auto args = std::vector<std::string>{"count", "--z", "0.1,1.3", "--w", "0,1",
                                         "--xmax", "150", "--grid", "linear:7"};
    setenv("HYPLATT_THREADS", "1", 1);
    auto a = run(args);
    setenv("HYPLATT_THREADS", "4", 1);
    auto b = run(args);
    unsetenv("HYPLATT_THREADS");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == run(args).out);
}

TEST_CASE("json format") {
    auto r = run({"transform", "--x", "100", "--t", "1", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("{\"columns\":[\"X\",\"t\",\"h_quad\",\"h_asym\",\"diff\"]") == 0);
    CHECK(r.out.find("\"rows\":[[100,1,") != std::string::npos);
}

TEST_CASE("error subcommand columns") {
    auto r = run({"error", "--xmax", "10", "--grid", "linear:4"});
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    CHECK(ls.front() == "X,N,main,E,e,e_over_sqrtX");
    double x, e_val;
    long long n;
    double m, E, es;
    REQUIRE(std::sscanf(ls[1].c_str(), "%lf,%lld,%lf,%lf,%lf,%lf", &x, &n, &m, &E, &e_val, &es) ==
            6);
    CHECK(x == 2.0);
    CHECK(n == 2);
    CHECK(E == doctest::Approx(-4.0));
}

TEST_CASE("dirichlet subcommand reports a verified R") {
    auto r = run({"dirichlet", "--r", "1.0,1.4142135", "--M", "1", "--T", "20"});
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    double R, defect, bound, cap;
    REQUIRE(std::sscanf(ls[1].c_str(), "%lf,%lf,%lf,%lf", &R, &defect, &bound, &cap) == 4);
    CHECK(defect < bound);
    CHECK(R <= cap);
}

TEST_CASE("mollify round trip through files") {
    const std::string in_path = "/tmp/hyplatt_test_mollify_in.csv";
    {
        std::ofstream f(in_path);
        f << "R,value\n";
        for (int k = 0; k <= 300; ++k) f << k * 0.01 << ",-1.5\n";
    }
    auto r = run({"mollify", "--eps", "0.1", "--in", in_path});
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() > 2);
    double R, v;
    REQUIRE(std::sscanf(ls[1].c_str(), "%lf,%lf", &R, &v) == 2);
    CHECK(v == doctest::Approx(-1.5).epsilon(1e-9));
    std::remove(in_path.c_str());
    // contract violation surfaces as exit 3
    {
        std::ofstream f(in_path);
        f << "0,1\n0.5,1\n1.0,1\n";
    }
    CHECK(run({"mollify", "--eps", "0.1", "--in", in_path}).code == 3);
    std::remove(in_path.c_str());
}

TEST_CASE("average and pr-mean subcommands run") {
    auto r = run({"average", "--xmax", "20", "--grid", "linear:6"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).front() == "X,M");

    auto p = run({"pr-mean", "--T", "1.0,1.5"});
    CHECK(p.code == 0);
    auto ls = lines(p.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls.front() == "T,pr_mean");
}

TEST_CASE("omega-scan emits series plus stats manifest") {
    auto r = run({"omega-scan", "--window", "2:3", "--eps", "0.25"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).front() == "R,e_hat,e_hat_mollified");
    CHECK(r.err.find("mollified_inf=") != std::string::npos);
    CHECK(r.err.find("raw_sup=") != std::string::npos);
}

TEST_CASE("output redirection to a file") {
    const std::string path = "/tmp/hyplatt_test_out.csv";
    auto r = run({"count", "--xmax", "3", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("3,10\n") != std::string::npos);
    std::remove(path.c_str());
}
