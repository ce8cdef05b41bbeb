#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "confopt/io.hpp"
#include "confopt/optimizers.hpp"
#include "confopt/problems.hpp"

using namespace confopt;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("confopt_io_test_" + std::to_string(std::rand()) +
                std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};
}  // namespace

TEST_CASE("format_double round-trips doubles bit-faithfully") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 1e300, -0.0, 3.141592653589793, 0.325}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.325) == "0.32500000000000001");
}

TEST_CASE("write_text_file is atomic: no .tmp residue, full content") {
    TempDir dir;
    const auto target = dir.path / "out.txt";
    write_text_file(target.string(), "hello\nworld\n");
    CHECK(slurp(target) == "hello\nworld\n");
    CHECK_FALSE(fs::exists(target.string() + ".tmp"));

    // Overwrite replaces wholesale, never appends.
    write_text_file(target.string(), "second\n");
    CHECK(slurp(target) == "second\n");

    CHECK_THROWS(write_text_file((dir.path / "no" / "such" / "dir.txt").string(), "x"));
}

TEST_CASE("write_csv emits header plus one line per row") {
    TempDir dir;
    const auto target = dir.path / "t.csv";
    write_csv(target.string(), {"a", "b"}, {{"1", "2"}, {"3", "4"}});
    CHECK(slurp(target) == "a,b\n1,2\n3,4\n");
}

TEST_CASE("trace CSV: shape, header, and divergence flag placement") {
    TempDir dir;
    Problem quad = make_scaled_quadratic(1.0, 1);
    Trace trace = run(Method::CM, quad, OptimizerParams(0.1, 0.9),
                      AlgState::at_rest((Vec(1) << 1.0).finished()), StopCriteria(10));
    const auto target = dir.path / "trace.csv";
    write_trace_csv(target.string(), trace);

    std::ifstream in(target);
    std::string line;
    std::getline(in, line);
    CHECK(line == "iter,f,gradnorm,diverged");
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.back() == '0');  // converged run: flag never set
        ++rows;
    }
    CHECK(rows == 11);

    Trace bad = run(Method::CM, quad, OptimizerParams(10.0, 0.9),
                    AlgState::at_rest((Vec(1) << 1.0).finished()), StopCriteria(1000));
    REQUIRE(bad.diverged);
    write_trace_csv(target.string(), bad);
    std::string all = slurp(target);
    CHECK(all.substr(all.size() - 2) == "1\n");  // flag on the final row only
    CHECK(all.find(",1\n") == all.rfind(",1\n"));
}
