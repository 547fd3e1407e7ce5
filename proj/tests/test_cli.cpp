#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#ifndef PPM_CLI_PATH
#define PPM_CLI_PATH "ppm"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(PPM_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / "ppm_cli_test";
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p);
    f << content;
}

}  // namespace

TEST_CASE("track and spiral print the universal permutations") {
    CHECK(run("track 2").output == "1 3 2 4\n");
    CHECK(run("track 3").output == "1 4 2 6 3 8 5 7 9\n");
    CHECK(run("spiral 2").output == "4 1 3 2\n");
}

TEST_CASE("match exit codes and payload") {
    const auto dir = scratch_dir();
    write_file(dir / "p.perm", "3 2 1\n");
    write_file(dir / "t.perm", "1 2 3 4\n");
    auto miss = run("match " + (dir / "p.perm").string() + " " + (dir / "t.perm").string());
    CHECK(miss.exit_code == 1);
    CHECK(miss.output.find("\"contains\":false") != std::string::npos);

    write_file(dir / "p2.perm", "1 3 2\n");
    write_file(dir / "t2.perm", "3 1 4 2\n");
    for (const char* algo : {"brute", "backtrack", "sepdp"}) {
        auto hit = run("match " + (dir / "p2.perm").string() + " " + (dir / "t2.perm").string() +
                       " --algo " + algo);
        CHECK(hit.exit_code == 0);
        CHECK(hit.output.find("\"contains\":true") != std::string::npos);
        CHECK(hit.output.find("[2,3,4]") != std::string::npos);
    }
}

TEST_CASE("reduce writes the instance and verify-reduction agrees") {
    const auto dir = scratch_dir();
    write_file(dir / "f.cnf", "p cnf 3 1\n1 -2 3 0\n");
    const auto out = (dir / "inst").string();
    CHECK(run("reduce " + (dir / "f.cnf").string() + " -o " + out).exit_code == 0);
    CHECK(fs::exists(out + "/pattern.perm"));
    CHECK(fs::exists(out + "/text.perm"));
    CHECK(fs::exists(out + "/meta.json"));

    auto verdict = run("verify-reduction " + (dir / "f.cnf").string());
    CHECK(verdict.exit_code == 0);
    CHECK(verdict.output == "AGREE: satisfiable\n");

    // unsatisfiable: all eight polarity combinations
    std::string cnf = "p cnf 3 8\n";
    for (int mask = 0; mask < 8; ++mask) {
        for (int i = 0; i < 3; ++i)
            cnf += std::to_string((mask >> i) & 1 ? (i + 1) : -(i + 1)) + " ";
        cnf += "0\n";
    }
    write_file(dir / "unsat.cnf", cnf);
    auto verdict2 = run("verify-reduction " + (dir / "unsat.cnf").string());
    CHECK(verdict2.exit_code == 0);
    CHECK(verdict2.output == "AGREE: unsatisfiable\n");
}

TEST_CASE("clause-free reduction matches under a budgeted backtrack") {
    const auto dir = scratch_dir();
    write_file(dir / "triv.cnf", "p cnf 3 0\n");
    const auto out = (dir / "triv").string();
    REQUIRE(run("reduce " + (dir / "triv.cnf").string() + " -o " + out).exit_code == 0);
    auto r = run("match " + out + "/pattern.perm " + out + "/text.perm --algo backtrack --budget 10000000");
    CHECK(r.exit_code == 0);
}

TEST_CASE("decompose and graph emit json") {
    const auto dir = scratch_dir();
    write_file(dir / "q.perm", "1 3 2 4\n");
    auto d = run("decompose " + (dir / "q.perm").string());
    CHECK(d.exit_code == 0);
    CHECK(d.output.find("\"kind\":\"stair\"") != std::string::npos);

    write_file(dir / "s.perm", "4 1 3 2\n");
    auto sp = run("decompose " + (dir / "s.perm").string() + " --spiral");
    CHECK(sp.exit_code == 0);
    CHECK(sp.output.find("\"kind\":\"spiral\"") != std::string::npos);

    auto g = run("graph " + (dir / "q.perm").string());
    CHECK(g.exit_code == 0);
    CHECK(g.output.find("\"vertex_separation\":") != std::string::npos);
    CHECK(g.output.find("\"bad\":") != std::string::npos);

    write_file(dir / "blocks.json", d.output);
    auto g2 = run("graph " + (dir / "q.perm").string() + " --blocks " + (dir / "blocks.json").string());
    CHECK(g2.exit_code == 0);
}

TEST_CASE("bad usage and bad data exit codes") {
    CHECK(run("").exit_code >= 64);
    CHECK(run("match missing.perm also-missing.perm").exit_code >= 64);
    CHECK(run("track 0").exit_code >= 64);
    const auto dir = scratch_dir();
    write_file(dir / "bad.perm", "1 5 2\n");
    CHECK(run("decompose " + (dir / "bad.perm").string()).exit_code >= 64);
}
