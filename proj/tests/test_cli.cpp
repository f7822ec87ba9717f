// Command-line front end, driven in-process.  Subcommands compose through
// files in a temp directory; exit codes: 0 ok, 2 config, 3 tolerance, 4 I/O.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <krspace/cli.hpp>

using namespace krspace;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("krspace_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(std::initializer_list<std::string> args) {
    return cli::run(std::vector<std::string>(args));
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("field -> kr -> wigner -> compare against the direct route") {
    TempDir t;
    REQUIRE(run({"field", "--scenario", "gaussian", "--unit-mode", "dimensionless",
                 "--sigma", "1", "--n", "256", "--extent", "16",
                 "--out", t.file("f.krf")}) == 0);
    REQUIRE(fs::exists(t.file("f.krf") + ".manifest"));
    REQUIRE(run({"kr", "--field", t.file("f.krf"), "--out", t.file("kr.krb")}) == 0);
    REQUIRE(run({"transform", "--input", t.file("kr.krb"), "--to", "wigner",
                 "--out", t.file("w.krb")}) == 0);
    CHECK(run({"compare", "--input", t.file("w.krb"), "--against", "direct-wigner",
               "--field", t.file("f.krf"), "--max-linf", "1e-6"}) == 0);
    // and the same comparison must fail at an absurd threshold
    CHECK(run({"compare", "--input", t.file("w.krb"), "--against", "direct-wigner",
               "--field", t.file("f.krf"), "--max-linf", "1e-18"}) == 3);
}

TEST_CASE("wire scenario: ideal heterodyne correlates with the KR grid") {
    TempDir t;
    REQUIRE(run({"field", "--scenario", "wire", "--n", "2048", "--out", t.file("w.krf")}) == 0);
    REQUIRE(run({"heterodyne", "--field", t.file("w.krf"), "--mode", "ideal",
                 "--lo-a", "0.0425", "--lo-A", "17", "--dx-max", "3.4",
                 "--p0-max", "4.7", "--nx", "21", "--np", "21",
                 "--out", t.file("scan.krb")}) == 0);
    CHECK(run({"compare", "--input", t.file("scan.krb"), "--against", "kr",
               "--field", t.file("w.krf"), "--min-corr", "0.99"}) == 0);
    const std::string manifest = slurp(t.file("scan.krb") + ".manifest");
    CHECK(manifest.find("oracle_correlation") != std::string::npos);
}

TEST_CASE("transform --method direct produces the oracle Wigner grid") {
    TempDir t;
    REQUIRE(run({"field", "--scenario", "gaussian", "--unit-mode", "dimensionless",
                 "--sigma", "1", "--n", "128", "--extent", "16",
                 "--out", t.file("f.krf")}) == 0);
    REQUIRE(run({"kr", "--field", t.file("f.krf"), "--out", t.file("kr.krb")}) == 0);
    REQUIRE(run({"transform", "--input", t.file("kr.krb"), "--to", "wigner",
                 "--out", t.file("wc.krb")}) == 0);
    REQUIRE(run({"transform", "--input", t.file("kr.krb"), "--to", "wigner",
                 "--method", "direct", "--field", t.file("f.krf"),
                 "--out", t.file("wd.krb")}) == 0);
    CHECK(run({"compare", "--input", t.file("wc.krb"), "--b", t.file("wd.krb"),
               "--max-linf", "1e-6"}) == 0);
}

TEST_CASE("marginals and width fit on the paper gaussian") {
    TempDir t;
    REQUIRE(run({"kr", "--scenario", "gaussian", "--out", t.file("kr.krb")}) == 0);
    REQUIRE(run({"marginals", "--input", t.file("kr.krb"), "--out-prefix",
                 t.file("m")}) == 0);
    REQUIRE(fs::exists(t.file("m_x.csv")));
    REQUIRE(fs::exists(t.file("m_p.csv")));
    CHECK(run({"fit", "--input", t.file("m_x.csv"), "--expect-width", "0.85",
               "--rel-tol", "0.05"}) == 0);
    CHECK(run({"fit", "--input", t.file("m_x.csv"), "--expect-width", "0.10"}) == 3);
}

TEST_CASE("transform to q and p report the regularizer state") {
    TempDir t;
    REQUIRE(run({"kr", "--scenario", "gaussian", "--n", "256", "--out",
                 t.file("kr.krb")}) == 0);
    REQUIRE(run({"transform", "--input", t.file("kr.krb"), "--to", "q", "--out",
                 t.file("q.krb")}) == 0);
    REQUIRE(run({"transform", "--input", t.file("kr.krb"), "--to", "p", "--out",
                 t.file("p.krb")}) == 0);
    const PhaseSpaceGrid q = load_grid(t.file("q.krb"));
    CHECK(q.kind == GridKind::Q);
    CHECK(total(q).real() == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("plot emits a data block file and a gnuplot script") {
    TempDir t;
    REQUIRE(run({"kr", "--scenario", "gaussian", "--n", "128", "--out",
                 t.file("kr.krb")}) == 0);
    REQUIRE(run({"plot", "--input", t.file("kr.krb"), "--out-prefix", t.file("kr"),
                 "--component", "re"}) == 0);
    const std::string gp = slurp(t.file("kr.gp"));
    CHECK(gp.find("multiplot") != std::string::npos);
    CHECK(gp.find("pm3d") != std::string::npos);
    CHECK(!slurp(t.file("kr.dat")).empty());
    CHECK(run({"plot", "--input", t.file("kr.krb"), "--out-prefix", t.file("kr"),
               "--component", "nope"}) == 2);
}

TEST_CASE("exit codes distinguish config, tolerance and i/o failures") {
    TempDir t;
    // unknown subcommand / bad flags -> 2
    CHECK(run({"frobnicate"}) == 2);
    CHECK(run({"field", "--scenario", "gaussian"}) == 2); // missing --out
    // config file errors -> 2 with line numbers handled by the parser
    {
        std::ofstream bad(t.file("bad.cfg"));
        bad << "scan.dx_max = -1\n";
    }
    CHECK(run({"kr", "--config", t.file("bad.cfg"), "--out", t.file("kr.krb")}) == 2);
    // missing inputs -> 4
    CHECK(run({"marginals", "--input", t.file("absent.krb"), "--out-prefix",
               t.file("m")}) == 4);
    CHECK(run({"fit", "--input", t.file("absent.csv")}) == 4);
}

TEST_CASE("rerunning a command reproduces the binary output bitwise") {
    TempDir t;
    REQUIRE(run({"kr", "--scenario", "wire", "--n", "256", "--out", t.file("a.krb")}) == 0);
    REQUIRE(run({"kr", "--scenario", "wire", "--n", "256", "--out", t.file("b.krb")}) == 0);
    CHECK(slurp(t.file("a.krb")) == slurp(t.file("b.krb")));
}

TEST_CASE("KRSPACE_OUTDIR redirects relative outputs") {
    TempDir t;
    ::setenv("KRSPACE_OUTDIR", t.path.c_str(), 1);
    REQUIRE(run({"field", "--scenario", "gaussian", "--n", "128", "--out", "sub/f.krf"}) == 0);
    ::unsetenv("KRSPACE_OUTDIR");
    CHECK(fs::exists(t.path / "sub" / "f.krf"));
}
