#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pmstair/cli.hpp"
#include "pmstair/energy.hpp"

using namespace pmstair;
using namespace pmstair::cli;

namespace {

std::string render_args(std::vector<std::string> args) { return render(parse_args(args)); }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("forcing specs") {
    CHECK(parse_forcing("affine:2,-1").describe() == "affine:2,-1");
    const Forcing s = parse_forcing("step:0;0.25,1;0.75,-0.5");
    REQUIRE(s.is_step());
    CHECK(s.jumps().size() == 2);
    CHECK(s.value(0.8) == 0.5);
    CHECK(parse_forcing("step:1").value(0.5) == 1.0);
    CHECK(parse_forcing("smooth:sin", 8).as_smooth()->order == 8);
    CHECK(parse_forcing("smooth:poly3").value(0.5) == 0.125);
    CHECK_THROWS_AS(parse_forcing("affine:1"), ValidationError);
    CHECK_THROWS_AS(parse_forcing("affine:1,x"), ValidationError);
    CHECK_THROWS_AS(parse_forcing("cubic:1"), ValidationError);
    CHECK_THROWS_AS(parse_forcing("smooth:tan"), ValidationError);
    CHECK_THROWS_AS(parse_forcing("step:0;0.5"), ValidationError);
    CHECK_THROWS_AS(parse_forcing("step:0;0.5,0"), ValidationError);
}

TEST_CASE("config file and overrides") {
    const std::string path = "pmstair_test_config.txt";
    {
        std::ofstream out(path);
        out << "# experiment\n"
               "forcing = affine:2,0   # slope two\n"
               "\n"
               "beta = 8\n"
               "n_list = 100, 200\n"
               "format = csv\n";
    }
    const ExperimentConfig c = parse_args({"scaling", "--config", path, "--set", "beta=2"});
    CHECK(c.command == "scaling");
    CHECK(c.forcing == "affine:2,0");
    CHECK(c.beta == 2.0);
    CHECK(c.n_list == std::vector<long long>{100, 200});
    CHECK(c.format == "csv");
    std::remove(path.c_str());

    CHECK_THROWS_AS(parse_args({"minimize", "--set", "colour=red"}), ValidationError);
    CHECK_THROWS_AS(parse_args({"minimize", "--set", "n=2.5"}), ValidationError);
    CHECK_THROWS_AS(parse_args({"minimize", "--set", "beta=inf"}), ValidationError);
    CHECK_THROWS_AS(parse_args({"minimize", "--set"}), ValidationError);
    CHECK_THROWS_AS(parse_args({"minimize", "--config", "/nonexistent/cfg"}), ValidationError);
    CHECK_THROWS_AS(parse_args({}), ValidationError);
    CHECK_THROWS_AS(render_args({"minimize", "--set", "beta=0"}), ValidationError);
    CHECK_THROWS_AS(render_args({"minimize", "--set", "format=xml"}), ValidationError);
}

TEST_CASE("csv quoting") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("minimize with a zero datum") {
    const auto j = nlohmann::json::parse(render_args({"minimize", "--set", "forcing=affine:0,0", "--set", "n=20"}));
    CHECK(j["energy"]["total"].get<double>() == 0.0);
    CHECK(j["minimizer"].size() == 20);
}

TEST_CASE("emitted minimizer reproduces the emitted energy") {
    const std::string text = render_args({"minimize", "--set", "forcing=step:0;0.5,1", "--set", "n=300", "--set", "beta=3"});
    const auto j = nlohmann::json::parse(text);
    std::vector<double> v(j["minimizer"].size());
    for (const auto& pair : j["minimizer"]) v[pair[0].get<std::size_t>()] = pair[1].get<double>();
    const double e = dpmf_energy(PCFn(Grid::make(0, 1, 1.0 / 300), v), parse_forcing("step:0;0.5,1"), 3.0, 300).total;
    CHECK(e == doctest::Approx(j["energy"]["total"].get<double>()).epsilon(1e-9));
    // keys come out sorted
    CHECK(text.find("\"beta\"") < text.find("\"command\""));
    CHECK(text.find("\"command\"") < text.find("\"energy\""));
}

TEST_CASE("scaling csv") {
    const auto rows = csv_rows(render_args({"scaling", "--set", "n_list=1000,10000", "--set", "format=csv"}));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"n", "omega", "m_n", "ratio", "limit_value"});
    CHECK(rows[1][0] == "1000");
    CHECK(rows[2][0] == "10000");
    CHECK(rows[1][4] == "1");
    CHECK(rows[2][4] == "1");
}

TEST_CASE("mu table row") {
    const auto rows = csv_rows(render_args({"mu-table", "--set", "format=csv", "--set", "M=1", "--set", "L=2"}));
    REQUIRE(rows.size() == 2);
    const auto& h = rows[0];
    auto col = [&](const std::string& name) {
        return std::stod(rows[1][static_cast<std::size_t>(std::find(h.begin(), h.end(), name) - h.begin())]);
    };
    CHECK(col("mu_star") == 2.0);
    CHECK(col("m_star") == 1.0);
    CHECK(col("lower") == doctest::Approx(-6.8051).epsilon(1e-5));
    CHECK(col("upper") == 4.0);
    CHECK(std::abs(col("mu_bc") - 2.0) <= 1e-3);
}

TEST_CASE("check-localmin on the canonical staircase") {
    const auto j = nlohmann::json::parse(render_args({"check-localmin", "--set", "M=2"}));
    CHECK(j["all_pass"].get<bool>());
    CHECK(j["H"].get<double>() == doctest::Approx(std::cbrt(0.25)).epsilon(1e-15));
}

TEST_CASE("identical configs give identical bytes") {
    const std::vector<std::string> args{"varifold", "--set", "n_list=200,400", "--set", "format=csv"};
    CHECK(render_args(args) == render_args(args));
    setenv("PMSTAIR_THREADS", "1", 1);
    const std::string serial = render_args({"scaling", "--set", "n_list=300,100,200", "--set", "threads=4"});
    unsetenv("PMSTAIR_THREADS");
    CHECK(serial == render_args({"scaling", "--set", "n_list=300,100,200", "--set", "threads=4"}));
}

TEST_CASE("exit codes") {
    std::ostringstream err;
    CHECK(run({"frobnicate"}, err) == kValidation);
    CHECK(run({"minimize", "--set", "n=1"}, err) == kValidation);
    CHECK(run({"minimize", "--set", "n=10", "--set", "output=/nonexistent/dir/out.json"}, err) == kIoError);
    CHECK(run({"minimize", "--set", "n=10000", "--set", "label_count=200", "--set", "output=/dev/null"}, err) == kBudget);
    CHECK(run({"mu-table", "--set", "output=/dev/null"}, err) == kOk);
    CHECK(err.str().find("budget") != std::string::npos);
}
