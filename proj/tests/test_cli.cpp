// Drives the command-line tool end to end through the shell.

#include <json.hpp>
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kTmp = IWBOOST_TEST_TMP;

int run(const std::string& args, const std::string& tag = "out") {
    fs::create_directories(kTmp);
    const std::string cmd = std::string("\"") + IWBOOST_CLI + "\" " + args + " > \"" + (kTmp / (tag + ".stdout")).string() +
                            "\" 2> \"" + (kTmp / (tag + ".stderr")).string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string tmp(const std::string& name) { return (kTmp / name).string(); }

void write(const std::string& name, const std::string& text) {
    fs::create_directories(kTmp);
    std::ofstream(kTmp / name) << text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("train then predict reproduces the training predictions") {
    REQUIRE(run("synth --generator regions --n 80 --num-labels 4 --seed 2 --out " + tmp("r.csv")) == 0);
    REQUIRE(run("train " + tmp("r.csv") + " --K 20 --out " + tmp("r.model") + " --metrics " + tmp("r.json")) == 0);
    REQUIRE(run("predict --model " + tmp("r.model") + " " + tmp("r.csv") + " --out " + tmp("r.pred")) == 0);
    const auto metrics = nlohmann::json::parse(slurp(tmp("r.json")));
    std::istringstream model(slurp(tmp("r.model")));
    std::string expected = "prediction\n", line;
    while (std::getline(model, line)) {
        if (line.rfind("predictions ", 0) != 0) continue;
        std::istringstream fields(line.substr(12));
        std::size_t count = 0;
        fields >> count;
        for (std::size_t i = 0; i < count; ++i) {
            int v;
            fields >> v;
            expected += std::to_string(v) + "\n";
        }
    }
    REQUIRE(expected != "prediction\n");
    CHECK(slurp(tmp("r.pred")) == expected);
    CHECK(metrics["format_version"] == 1);

    REQUIRE(run("eval --model " + tmp("r.model") + " " + tmp("r.csv"), "eval") == 0);
    const auto eval = nlohmann::json::parse(slurp(kTmp / "eval.stdout"));
    CHECK(eval["error_rate"] == metrics["training_error"]);
}

TEST_CASE("repeated training is byte-identical") {
    write("d.csv", "f0,f1,label\n0,0,1\n1,0,2\n0,1,3\n1,1,1\n2,0,2\n0,2,3\n2,2,1\n");
    REQUIRE(run("train " + tmp("d.csv") + " --K 7 --out " + tmp("a.model") + " --metrics " + tmp("a.json")) == 0);
    REQUIRE(run("train " + tmp("d.csv") + " --K 7 --out " + tmp("b.model") + " --metrics " + tmp("b.json")) == 0);
    CHECK(slurp(tmp("a.model")) == slurp(tmp("b.model")));
    CHECK(slurp(tmp("a.json")) == slurp(tmp("b.json")));
}

TEST_CASE("exit codes and diagnostics") {
    write("bad.csv", "f0,label\n0,1\n1,0\n");
    CHECK(run("train " + tmp("bad.csv") + " --out " + tmp("x.model"), "bad") == 2);
    const auto err = nlohmann::json::parse(slurp(kTmp / "bad.stderr"));
    CHECK(err["error"] == "LabelError");
    CHECK(err["line"] == 3);

    write("xor.csv", "f0,f1,label\n0,0,1\n1,1,1\n0,1,2\n1,0,2\n");
    CHECK(run("train " + tmp("xor.csv") + " --out " + tmp("x.model"), "xor") == 3);
    CHECK(nlohmann::json::parse(slurp(kTmp / "xor.stderr"))["error"] == "WeakLearnabilityViolation");

    CHECK(run("train " + tmp("d.csv") + " --K 0 --out " + tmp("x.model"), "k0") == 2);
    CHECK(run("frobnicate", "usage") == 2);
    CHECK(run("predict --model " + tmp("missing.model") + " " + tmp("d.csv"), "missing") == 2);
}

TEST_CASE("experiment subcommands") {
    CHECK(run("repro-ms13", "ms13") == 0);
    CHECK(nlohmann::json::parse(slurp(kTmp / "ms13.stdout"))["verdict"] == "PASS");

    CHECK(run("decay --K 40", "decay") == 0);
    CHECK(slurp(kTmp / "decay.stdout").rfind("epoch,k,z,z_product,misclassified\n", 0) == 0);

    write("ms13.csv", "f0,label\n0,1\n1,2\n");
    CHECK(run("check-learnability " + tmp("ms13.csv") + " --num-labels 3 --mode exhaustive", "check") == 0);
    CHECK(nlohmann::json::parse(slurp(kTmp / "check.stdout"))["verdict"] == "PASS");

    CHECK(run("compare " + tmp("d.csv") + " --K 5 --samme-rounds 20", "compare") == 0);
    const auto cmp = nlohmann::json::parse(slurp(kTmp / "compare.stdout"));
    CHECK(cmp.contains("tau_ks"));
    CHECK(cmp.contains("samme"));

    CHECK(run("gen-gap --sizes 20 40 --seeds 2 --test-size 50", "gap") == 0);
    CHECK(slurp(kTmp / "gap.stdout").rfind("size,median_gap", 0) == 0);
}

TEST_CASE("direction pools from a file") {
    write("dirs.txt", "1, -1\n\n1 1\n");
    CHECK(run("train " + tmp("xor.csv") + " --pool " + tmp("dirs.txt") + " --out " + tmp("o.model"), "dirs") == 0);
    write("dirs_bad.txt", "1 2 3\n");
    CHECK(run("train " + tmp("xor.csv") + " --pool " + tmp("dirs_bad.txt") + " --out " + tmp("o.model"), "dirs_bad") == 2);
}

}  // TEST_SUITE
