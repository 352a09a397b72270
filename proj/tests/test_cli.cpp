#include <metafp/cli.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <unistd.h>

using namespace metafp;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("metafp_test_" + std::to_string(::getpid()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& content) const {
        fs::path p = path_ / name;
        std::ofstream(p) << content;
        return p.string();
    }

private:
    fs::path path_;
};

const char* kG2 = R"({"k": 2, "blocks": [{"polys": [[0,1],[1,1],[2,1]]}], "free_rank": 1})";
const char* kK4 = R"({"k": 4, "blocks": [{"polys": [[0,1],[2,1,1]]}]})";
const char* kBad = R"({"k": 3, "blocks": [{"polys": [[0,1],[2,1]]}]})";

}  // namespace

TEST_CASE("validate: accept and reject with exit codes") {
    TempDir tmp;
    auto g2 = tmp.file("g2.json", kG2);
    auto r = run({"validate", "--setup", g2});
    CHECK(r.code == 0);
    CHECK(r.out.find("valid: k=2, block degrees [1,1,1], beta=-5") != std::string::npos);

    auto bad = tmp.file("bad.json", kBad);
    auto rb = run({"validate", "--setup", bad});
    CHECK(rb.code == 1);
    CHECK(rb.out.find("resultant-not-k-smooth") != std::string::npos);

    auto rm = run({"validate", "--setup", tmp.file("nope.json", "{ not json")});
    CHECK(rm.code == 1);
}

TEST_CASE("json reports round-trip byte-identically") {
    TempDir tmp;
    auto g2 = tmp.file("g2.json", kG2);
    for (std::vector<std::string> args :
         {std::vector<std::string>{"validate", "--setup", g2, "--json"},
          {"chars", "--setup", g2, "--json"},
          {"witness", "--setup", g2, "--char", "0,1,-1,0", "--json"},
          {"tame", "--setup", g2, "--m", "4", "--json"},
          {"stabilizer", "--setup", g2, "--sw", "0", "--json"},
          {"orbits", "--setup", g2, "--json"},
          {"h2", "--setup", g2, "--json"},
          {"tree-ball", "--setup", g2, "--seeds", "0,1", "--window", "0,6", "--json"},
          {"crt", "--setup", g2, "--labels", "0;1/x;0;0", "--json"}}) {
        auto r = run(args);
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j.dump(2) + "\n" == r.out);
        // envelope keys present
        for (const char* key : {"anomalies", "certificates", "command", "result", "setup_digest"})
            CHECK(j.contains(key));
        // no floats anywhere
        std::function<void(const nlohmann::json&)> no_floats = [&](const nlohmann::json& v) {
            CHECK_FALSE(v.is_number_float());
            if (v.is_object() || v.is_array())
                for (const auto& child : v) no_floats(child);
        };
        no_floats(j);
    }
}

TEST_CASE("val evaluates expressions") {
    TempDir tmp;
    auto g2 = tmp.file("g2.json", kG2);
    auto r = run({"val", "--setup", g2, "--valuation", "w", "--elem", "1/(x*(x+1))"});
    CHECK(r.code == 0);
    CHECK(r.out.find("= 2") != std::string::npos);
    auto ri = run({"val", "--setup", g2, "--valuation", "v0", "--elem", "0"});
    CHECK(ri.out.find("infinity") != std::string::npos);
    // non-invertible denominator is an input error
    auto rbad = run({"val", "--setup", g2, "--valuation", "w", "--elem", "1/(x+3)"});
    CHECK(rbad.code == 1);
    // p-adic on a constant
    auto rp = run({"val", "--setup", g2, "--valuation", "p:2", "--elem", "6"});
    CHECK(rp.out.find("= 1") != std::string::npos);
}

TEST_CASE("witness subcommand reports both verdicts") {
    TempDir tmp;
    auto g2 = tmp.file("g2.json", kG2);
    auto r = run({"witness", "--setup", g2, "--char", "-1,0,0,0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("2*q-1^-1") != std::string::npos);
    auto rn = run({"witness", "--setup", g2, "--char", "0,0,1,0"});
    CHECK(rn.code == 0);
    CHECK(rn.out.find("no witness within bounds") != std::string::npos);
    auto rz = run({"witness", "--setup", g2, "--char", "0,0,0,0"});
    CHECK(rz.code == 1);
}

TEST_CASE("tame subcommand matches the worked phrasing") {
    TempDir tmp;
    auto g2 = tmp.file("g2.json", kG2);
    auto r3 = run({"tame", "--setup", g2, "--m", "3", "--family", "theoremb"});
    CHECK(r3.out.find("3-tame: true") != std::string::npos);
    auto r4 = run({"tame", "--setup", g2, "--m", "4", "--family", "theoremb"});
    CHECK(r4.out.find("4-tame: false") != std::string::npos);
    CHECK(r4.out.find("certificate") != std::string::npos);
    CHECK(r4.out.find("w") != std::string::npos);
}

TEST_CASE("h2 prints both orders") {
    TempDir tmp;
    auto k4 = tmp.file("k4.json", kK4);
    auto r = run({"h2", "--setup", k4});
    CHECK(r.code == 0);
    CHECK(r.out.find("H2 order (Theorem C): 3; fixed-point order: 3") != std::string::npos);
}

TEST_CASE("fixedpoints works from explicit values and from a setup") {
    TempDir tmp;
    auto r = run({"fixedpoints", "--k", "7", "--values", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find(": 3") != std::string::npos);
    auto k4 = tmp.file("k4.json", kK4);
    auto rs = run({"fixedpoints", "--setup", k4});
    CHECK(rs.out.find(": 3") != std::string::npos);
    auto rmiss = run({"fixedpoints"});
    CHECK(rmiss.code == 1);
}

TEST_CASE("stabilizer and connectivity subcommands") {
    TempDir tmp;
    auto g2 = tmp.file("g2.json", kG2);
    auto r = run({"stabilizer", "--setup", g2, "--sw", "0"});
    CHECK(r.out.find("rank 16") != std::string::npos);
    auto rc = run({"connectivity", "--setup", g2, "--m", "4"});
    CHECK(rc.out.find("false") != std::string::npos);
    auto re = run({"stabilizer", "--setup", g2, "--sw", "9"});
    CHECK(re.code == 1);
}

TEST_CASE("unknown subcommand and missing flags fail with exit 1") {
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"val", "--valuation", "w", "--elem", "1"}).code == 1);  // no --setup
}

TEST_CASE("tree-ball subcommand") {
    TempDir tmp;
    auto g2 = tmp.file("g2.json", kG2);
    auto r = run({"tree-ball", "--setup", g2, "--valuation", "v0", "--seeds", "0,1", "--window",
                  "0,6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("8 vertices, 7 edges (tree)") != std::string::npos);
}

TEST_CASE("crt subcommand returns the worked labels") {
    TempDir tmp;
    auto g2 = tmp.file("g2.json", kG2);
    auto r = run({"crt", "--setup", g2, "--labels", "0;1/x;1/(x+1);0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("(2x + 1)/(x*(x + 1))") != std::string::npos);
}
