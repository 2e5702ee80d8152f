#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string cli = LRPERC_CLI_PATH;

fs::path tmpdir() {
    static fs::path d = [] {
        auto p = fs::temp_directory_path() / "lrperc-cli-test";
        fs::create_directories(p);
        return p;
    }();
    return d;
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
    const auto outfile = tmpdir() / "stdout.txt";
    const std::string cmd =
        env + (env.empty() ? "" : " ") + cli + " " + args + " > " + outfile.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(outfile);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string write_cfg(const std::string& name, const std::string& body) {
    const auto p = tmpdir() / name;
    std::ofstream(p) << body;
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("params check") {
    auto cfg = write_cfg("feasible.cfg",
                         "beta = 2.0\np = 0.99\nalpha = 1.2\nalpha_prime = 1.16\n"
                         "delta = 0.55\neta = 0.0 # comment\nl1 = 40\nM = 2\n");
    auto r = run("params check -c " + cfg);
    CHECK(r.code == 0);
    CHECK(r.out.find("\"feasible\": true") != std::string::npos);
    CHECK(r.out.find("p_threshold") != std::string::npos);

    auto infeasible = write_cfg("infeasible.cfg",
                                "beta = 2.0\np = 0.99\nalpha = 1.5\nalpha_prime = 1.4\n"
                                "delta = 2.1\nl1 = 10\nM = 1\n");
    auto r2 = run("params check -c " + infeasible);
    CHECK(r2.code == 0);
    CHECK(r2.out.find("\"feasible\": false") != std::string::npos);
}

TEST_CASE("bad inputs exit with the documented codes") {
    // usage error
    CHECK(run("params check").code == 2);
    CHECK(run("nonsense").code == 2);
    CHECK(run("experiment bogus -c /dev/null").code == 2);
    // domain/parse errors
    CHECK(run("params check -c /nonexistent.cfg").code == 1);
    auto bad_key = write_cfg("badkey.cfg", "beta = 2\nwhatever = 3\n");
    CHECK(run("params check -c " + bad_key).code == 1);
    auto bad_val = write_cfg("badval.cfg", "beta = banana\n");
    CHECK(run("params check -c " + bad_val).code == 1);
    auto bad_model = write_cfg("badmodel.cfg", "p = 1.5\n");
    CHECK(run("sample -c " + bad_model).code == 1);
}

TEST_CASE("sample then analyze round trip") {
    auto cfg = write_cfg("model.cfg", "beta = 1.5\np = 0.9\nl1 = 10\nM = 1\n");
    const auto conf_path = tmpdir() / "conf.txt";
    auto s = run("sample -c " + cfg + " --seed 7 -o " + conf_path.string());
    CHECK(s.code == 0);
    const std::string conf = slurp(conf_path);
    CHECK(conf.rfind("lrperc-config v1 L=10", 0) == 0);

    // same seed, same bytes
    const auto conf2_path = tmpdir() / "conf2.txt";
    run("sample -c " + cfg + " --seed 7 -o " + conf2_path.string());
    CHECK(slurp(conf2_path) == conf);
    // LRPERC_SEED overrides --seed
    const auto conf3_path = tmpdir() / "conf3.txt";
    run("sample -c " + cfg + " --seed 8 -o " + conf3_path.string(), "LRPERC_SEED=7");
    CHECK(slurp(conf3_path) == conf);

    auto a = run("analyze -c " + cfg + " -i " + conf_path.string() + " --reach 0");
    CHECK(a.code == 0);
    CHECK(a.out.find("\"levels\"") != std::string::npos);
    CHECK(a.out.find("\"reach\"") != std::string::npos);
    // analyze is deterministic
    auto a2 = run("analyze -c " + cfg + " -i " + conf_path.string() + " --reach 0");
    CHECK(a2.out == a.out);
}

TEST_CASE("experiment reports") {
    auto cfg = write_cfg("exp.cfg", "beta = 1.5\np = 0.85\nl1 = 10\nM = 1\n");
    auto r = run("experiment span -c " + cfg + " --trials 500 --seed 3 --threads 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"name\": \"span\"") != std::string::npos);
    CHECK(r.out.find("\"trials\": 500") != std::string::npos);
    // byte-identical across thread counts
    auto r1 = run("experiment span -c " + cfg + " --trials 500 --seed 3 --threads 1");
    auto r4 = run("experiment span -c " + cfg + " --trials 500 --seed 3 --threads 4");
    CHECK(r1.out == r.out);
    CHECK(r4.out == r.out);

    auto csv = run("experiment span -c " + cfg + " --trials 200 --seed 3 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("name,p,beta,kappa,L,", 0) == 0);

    auto origin = run("experiment origin -c " + cfg + " --trials 300 --seed 5");
    CHECK(origin.code == 0);
    CHECK(origin.out.find("shielding_trials") != std::string::npos);
}

TEST_CASE("tiny oracle") {
    auto cfg = write_cfg("tiny.cfg", "beta = 1.0\np = 0.6\nkappa = 2.0\nl1 = 10\nM = 1\n");
    auto r = run("oracle tiny -c " + cfg + " --sweeps 20000 --seed 9 -L 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("total_variation") != std::string::npos);
    // crude check that the chain is near the exact law after 20k sweeps
    const auto pos = r.out.find("\"total_variation\": ");
    REQUIRE(pos != std::string::npos);
    const double tv = std::stod(r.out.substr(pos + 19));
    CHECK(tv < 0.05);
}
