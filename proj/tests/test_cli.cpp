#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    json output;  // null when stdout was not json
    std::string raw;
};

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("hm_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

fs::path work_dir() {
    static TempDir dir;
    return dir.path;
}

RunResult run(const std::string& args) {
    fs::path out = work_dir() / "stdout.txt";
    std::string cmd = std::string(HM_CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
                      (work_dir() / "stderr.txt").string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.raw = ss.str();
    try {
        r.output = json::parse(r.raw);
    } catch (...) {
        r.output = nullptr;
    }
    return r;
}

}  // namespace

TEST_CASE("gen writes files and reports") {
    fs::path hg = work_dir() / "h3.hg";
    fs::path parts = work_dir() / "h3.parts.json";
    RunResult r = run("gen mycroft --k 3 --n 12 --out " + hg.string() + " --partition-out " +
                      parts.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(hg));
    CHECK(fs::exists(parts));
    REQUIRE(r.output.is_object());
    CHECK(r.output["report"]["all_ok"] == true);
    CHECK(r.output["edges"] == 75);

    RunResult sb = run("gen space-barrier --m 6 --n 24 --seed 7 --no-check --out " +
                       (work_dir() / "sb.hg").string());
    CHECK(sb.exit_code == 0);
}

TEST_CASE("gen rejects bad parameters with exit 2") {
    CHECK(run("gen cyclic-barrier --m 6").exit_code == 2);
    CHECK(run("gen mycroft --k 3 --n 10").exit_code == 2);
    CHECK(run("gen nonsense --n 10").exit_code == 2);
}

TEST_CASE("check emits requested fields") {
    fs::path hg = work_dir() / "check.hg";
    run("gen mycroft --k 3 --n 12 --no-check --out " + hg.string());
    RunResult r = run("check " + hg.string() + " --pm --induced-free K4minus --codegree 2");
    CHECK(r.exit_code == 0);
    REQUIRE(r.output.is_object());
    CHECK(r.output["pm"] == false);
    CHECK(r.output["induced_free"]["free"] == true);
    CHECK(r.output["codegree"]["value"].get<long long>() >= 1);

    // parse failures exit 2
    fs::path bad = work_dir() / "bad.hg";
    std::ofstream(bad) << "3 3\n0 1 1\n";
    CHECK(run("check " + bad.string() + " --pm").exit_code == 2);
    CHECK(run("check " + (work_dir() / "missing.hg").string() + " --pm").exit_code == 2);
}

TEST_CASE("budget exhaustion exits 3") {
    fs::path hg = work_dir() / "sb24.hg";
    run("gen space-barrier --m 6 --n 24 --seed 1 --no-check --out " + hg.string());
    RunResult r = run("match " + hg.string() + " --mode exact-max --budget 5");
    CHECK(r.exit_code == 3);
}

TEST_CASE("match and validate-certificate round trip") {
    fs::path hg = work_dir() / "complete6.hg";
    std::ofstream(hg) << "6 3\n0 1 2\n0 1 3\n0 4 5\n1 4 5\n2 3 4\n2 3 5\n3 4 5\n";
    fs::path cert = work_dir() / "cert.json";
    RunResult r = run("match " + hg.string() + " --mode perfect --cert " + cert.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output["perfect_matching"] == true);
    CHECK(fs::exists(cert));

    RunResult v = run("validate-certificate " + hg.string() + " --cert " + cert.string() +
                      " --require-perfect");
    CHECK(v.exit_code == 0);
    CHECK(v.output["valid"] == true);

    // corrupt the certificate: validation fails with exit 1
    json cj;
    std::ifstream(cert) >> cj;
    cj["edges"][0] = {0, 1, 4};
    std::ofstream(cert) << cj.dump();
    RunResult bad = run("validate-certificate " + hg.string() + " --cert " + cert.string());
    CHECK(bad.exit_code == 1);
    CHECK(bad.output["valid"] == false);
}

TEST_CASE("tile subcommand") {
    fs::path hg = work_dir() / "twoy.hg";
    std::ofstream(hg) << "8 3\n0 1 2\n0 1 3\n4 5 6\n4 5 7\n";
    fs::path cert = work_dir() / "tiling.json";
    RunResult r = run("tile " + hg.string() + " --pattern Y --mode perfect --cert " + cert.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output["perfect_tiling"] == true);

    RunResult v = run("validate-certificate " + hg.string() + " --cert " + cert.string() +
                      " --pattern Y --require-perfect");
    CHECK(v.exit_code == 0);
    CHECK(v.output["valid"] == true);
}

TEST_CASE("lattice subcommand") {
    fs::path hg = work_dir() / "lat.hg";
    fs::path parts = work_dir() / "lat.parts.json";
    run("gen mycroft --k 3 --n 12 --no-check --out " + hg.string() + " --partition-out " +
        parts.string());
    RunResult r = run("lattice " + hg.string() + " --partition " + parts.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output["soluble"] == false);
    CHECK(r.output["transferral_free"] == true);
    CHECK(r.output["coset_order"] == 3);
}

TEST_CASE("absorb subcommand") {
    fs::path hg = work_dir() / "complete12.hg";
    {
        std::ofstream out(hg);
        out << "12 3\n";
        for (int a = 0; a < 12; ++a)
            for (int b = a + 1; b < 12; ++b)
                for (int c = b + 1; c < 12; ++c) out << a << ' ' << b << ' ' << c << '\n';
    }
    RunResult r = run("absorb " + hg.string() + " --beta 20 --samples 5 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output["report"]["sampled_S_count"] == 5);

    RunResult c = run("absorb " + hg.string() + " --count-S 0,1,2,3");
    CHECK(c.exit_code == 0);
    CHECK(c.output["absorbing_edges"] == 56);  // C(8,3)
}

TEST_CASE("experiment subcommand") {
    RunResult r = run("experiment claim41 --p 2,3 --k 4,3");
    CHECK(r.exit_code == 0);
    CHECK(r.output["pass"] == true);
    CHECK(r.output["instances"].size() == 2);

    CHECK(run("experiment does-not-exist").exit_code == 2);

    // seeded reruns reproduce the same verdicts
    fs::path a = work_dir() / "exp_a.json";
    fs::path b = work_dir() / "exp_b.json";
    CHECK(run("experiment goodman --samples 25 --seed 9 --json " + a.string()).exit_code == 0);
    CHECK(run("experiment goodman --samples 25 --seed 9 --json " + b.string()).exit_code == 0);
    json ja, jb;
    std::ifstream(a) >> ja;
    std::ifstream(b) >> jb;
    ja.erase("elapsed_ms");
    jb.erase("elapsed_ms");
    CHECK(ja == jb);
}

TEST_CASE("json output goes to the requested file") {
    fs::path hg = work_dir() / "out.hg";
    fs::path rep = work_dir() / "rep.json";
    RunResult r = run("gen cyclic-barrier --m 4 --out " + hg.string() + " --json " + rep.string());
    CHECK(r.exit_code == 0);
    CHECK(r.raw.empty());
    json j;
    std::ifstream(rep) >> j;
    CHECK(j["construction"] == "cyclic-barrier");
    CHECK(j["report"]["all_ok"] == true);
}
