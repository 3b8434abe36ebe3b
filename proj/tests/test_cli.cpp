#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "skydiag/bench.hpp"
#include "skydiag/csv.hpp"

using namespace skydiag;
using namespace testutil;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

const char* cli_path() {
    const char* bin = std::getenv("SKYDIAG_CLI_BIN");
    return bin ? bin : "";
}

RunResult run_cli(const std::string& args) {
    RunResult r;
    std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    std::filesystem::path dir;
    TempDir() {
        dir = std::filesystem::temp_directory_path() /
              ("skydiag_cli_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(dir);
    }
    ~TempDir() { std::filesystem::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("cli end to end" * doctest::skip(cli_path()[0] == '\0')) {
    TempDir tmp;
    std::string pts = tmp / "pts.csv";
    write_dataset_csv(sample11(), pts);

    std::string diagram = tmp / "d.json";
    RunResult build = run_cli("build --algo qsweep --in " + pts + " --out " + diagram);
    CHECK(build.exit_code == 0);

    RunResult query = run_cli("query --diagram " + diagram + " --point 10,80");
    CHECK(query.exit_code == 0);
    CHECK(query.out == "[2,7,9]\n");

    // Byte-for-byte equal to the library's locate+lookup answer.
    SkylineDiagram lib = build_diagram(sample11(), DiagramKind::Quadrant, "qsweep");
    ResultSet ids = lib.query(QueryPoint{{10, 80}});
    std::string expect = "[";
    for (std::size_t i = 0; i < ids.size(); ++i)
        expect += (i ? "," : "") + std::to_string(ids[i]);
    expect += "]\n";
    CHECK(query.out == expect);

    // Rebuilding is idempotent.
    std::string diagram2 = tmp / "d2.json";
    run_cli("build --algo qsweep --in " + pts + " --out " + diagram2);
    std::ifstream a(diagram), b(diagram2);
    std::string ta((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string tb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(ta == tb);

    // Dynamic build answers the dynamic query. The probe point sits on no
    // bisector, so the stored answer is the plain definition answer.
    std::string dyn = tmp / "dyn.json";
    CHECK(run_cli("build --type dynamic --algo dscan --in " + pts + " --out " + dyn).exit_code ==
          0);
    RunResult dq = run_cli("query --diagram " + dyn + " --point 9,80");
    CHECK(dq.out == "[5,10]\n");
}

TEST_CASE("cli error paths" * doctest::skip(cli_path()[0] == '\0')) {
    TempDir tmp;
    std::string pts = tmp / "pts.csv";
    write_dataset_csv(sample11(), pts);
    std::string diagram = tmp / "d.json";
    REQUIRE(run_cli("build --in " + pts + " --out " + diagram).exit_code == 0);

    // Wrong arity point: usage error.
    CHECK(run_cli("query --diagram " + diagram + " --point 10,80,3").exit_code == 1);
    CHECK(run_cli("query --diagram " + diagram + " --point 10,").exit_code == 1);
    CHECK(run_cli("query --diagram " + diagram + " --point ten,eighty").exit_code == 1);
    // Missing required flag: usage error.
    CHECK(run_cli("query --diagram " + diagram).exit_code == 1);

    // Unknown algorithm and type mismatches: data errors.
    CHECK(run_cli("build --algo nope --in " + pts + " --out " + (tmp / "x.json")).exit_code == 2);
    CHECK(run_cli("build --type dynamic --algo qscan --in " + pts + " --out " + (tmp / "y.json"))
              .exit_code == 2);
    // qsweep cannot serve global diagrams.
    CHECK(run_cli("build --type global --algo qsweep --in " + pts + " --out " + (tmp / "z.json"))
              .exit_code == 2);

    // Infeasible delta.
    CHECK(run_cli("approx --algo bum --delta 0 --in " + pts + " --out " + (tmp / "a.json"))
              .exit_code == 2);

    // Malformed dataset CSV.
    std::string bad = tmp / "bad.csv";
    {
        std::ofstream out(bad);
        out << "id,x1,x2\n0,1,nope\n";
    }
    CHECK(run_cli("build --in " + bad + " --out " + (tmp / "b.json")).exit_code == 2);
}

TEST_CASE("cli gen and approx round" * doctest::skip(cli_path()[0] == '\0')) {
    TempDir tmp;
    std::string pts = tmp / "gen.csv";
    RunResult gen = run_cli("gen --out " + pts + " --dist corr --n 40 --s 64 --seed 5");
    CHECK(gen.exit_code == 0);
    Dataset ds = read_dataset_csv(pts);
    CHECK(ds.points.size() == 40);

    // Same seed, same bytes.
    std::string pts2 = tmp / "gen2.csv";
    run_cli("gen --out " + pts2 + " --dist corr --n 40 --s 64 --seed 5");
    std::ifstream a(pts), b(pts2);
    std::string ta((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string tb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(ta == tb);

    std::string approx = tmp / "approx.json";
    RunResult ar = run_cli("approx --algo tdp --delta 8 --in " + pts + " --out " + approx);
    CHECK(ar.exit_code == 0);
    RunResult aq = run_cli("query --diagram " + approx + " --point 5,5");
    CHECK(aq.exit_code == 0);
    CHECK(aq.out.front() == '[');

    std::string bench = tmp / "bench.csv";
    RunResult br =
        run_cli("bench --out " + bench + " --algos qscan --ns 50,100 --s 32 --seed 5");
    CHECK(br.exit_code == 0);
    std::ifstream in(bench);
    std::string header;
    std::getline(in, header);
    CHECK(header == "algo,n,d,s,delta,ms,cells,classes,bytes");
}

TEST_CASE("SKYDIAG_SEED overrides the flag" * doctest::skip(cli_path()[0] == '\0')) {
    TempDir tmp;
    std::string one = tmp / "one.csv", two = tmp / "two.csv";
    std::string base = std::string(cli_path());
    std::string cmd1 = "SKYDIAG_SEED=99 " + base + " gen --out " + one +
                       " --n 20 --seed 1 >/dev/null 2>&1";
    std::string cmd2 = base + " gen --out " + two + " --n 20 --seed 99 >/dev/null 2>&1";
    REQUIRE(std::system(cmd1.c_str()) == 0);
    REQUIRE(std::system(cmd2.c_str()) == 0);
    std::ifstream a(one), b(two);
    std::string ta((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string tb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(ta == tb);
}
