#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using std::string;

namespace {

int run(const string& args) {
    const string cmd = string(DRGSB_CLI_PATH) + " " + args + " 2>/dev/null";
    const int st = std::system(cmd.c_str());
    return st < 0 ? st : WEXITSTATUS(st);
}

string slurp(const string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::vector<string>> rows(const string& path) {
    std::ifstream in(path);
    std::vector<std::vector<string>> out;
    string line;
    while (std::getline(in, line)) {
        // skip comments and the header row
        if (line.empty() || line[0] == '#') continue;
        if (string("0123456789+-.").find(line[0]) == string::npos) continue;
        std::vector<string> cells;
        std::istringstream ls(line);
        string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        out.push_back(std::move(cells));
    }
    return out;
}

} // namespace

TEST_CASE("flow: power-law table, constant columns at alpha=0, guard above 1/2") {
    CHECK(run("flow --alpha 0.2 --cutoff sharp --gamma-seed 0 -o /tmp/drgsb_t1.csv") == 0);
    auto r = rows("/tmp/drgsb_t1.csv");
    REQUIRE(r.size() > 100);
    REQUIRE(r[0].size() == 3);
    CHECK(std::stod(r[0][0]) == 10.0);
    CHECK(std::stod(r.back()[1]) < 1e-3);  // Delta renormalized far below delta0

    CHECK(run("flow --alpha 0 --gamma-seed 1e-7 -o /tmp/drgsb_t2.csv") == 0);
    for (const auto& row : rows("/tmp/drgsb_t2.csv")) {
        CHECK(std::stod(row[1]) == 0.01);
        CHECK(std::stod(row[2]) == 1e-7);
    }

    CHECK(run("flow --alpha 0.6 -o /tmp/drgsb_t3.csv") == 2);
    CHECK(run("flow --alpha 0.6 --force -o /tmp/drgsb_t3.csv") == 0);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("flow") == 2);                       // missing --alpha
    CHECK(run("bogus --alpha 0.1") == 2);          // unknown command
    CHECK(run("flow --alpha 0.1 --cutoff wedge") == 2);
    CHECK(run("quench --alpha 0.1 --eta 3") == 2);
    CHECK(run("quench --alpha 0.1 --eta-list 0.5,1.0") == 2);  // needs --output
}

TEST_CASE("identical configs produce byte-identical CSV") {
    CHECK(run("quench --alpha 0.15 --tmax 2000 --dt-out 5 -o /tmp/drgsb_d1.csv") == 0);
    CHECK(run("quench --alpha 0.15 --tmax 2000 --dt-out 5 -o /tmp/drgsb_d2.csv") == 0);
    CHECK(slurp("/tmp/drgsb_d1.csv") == slurp("/tmp/drgsb_d2.csv"));
    CHECK(!slurp("/tmp/drgsb_d1.csv").empty());

    CHECK(run("sweep --mode sb --alpha-list 0.1,0.2,0.3 --jobs 3 -o /tmp/drgsb_s1.csv") == 0);
    CHECK(run("sweep --mode sb --alpha-list 0.1,0.2,0.3 --jobs 1 -o /tmp/drgsb_s2.csv") == 0);
    CHECK(slurp("/tmp/drgsb_s1.csv") == slurp("/tmp/drgsb_s2.csv"));
}

TEST_CASE("quench at the Toulouse point with a Born-Markov seed relaxes monotonically") {
    // the default-seed pipeline must also run clean at alpha = 0.5
    CHECK(run("quench --alpha 0.5 --eta 0.5 --tmax 500 --dt-out 10 "
              "-o /tmp/drgsb_toul0.csv") == 0);
    CHECK(run("quench --alpha 0.5 --eta 0.5 --gamma-seed-bm --tmax 3000 --dt-out 10 "
              "-o /tmp/drgsb_toul.csv") == 0);
    const auto r = rows("/tmp/drgsb_toul.csv");
    REQUIRE(r.size() > 100);
    double prev = 1.1;
    for (const auto& row : r) {
        const double sz = std::stod(row[3]);
        CHECK(sz > 0.0);           // no oscillation through zero
        CHECK(sz <= prev + 1e-9);  // monotone decay
        prev = sz;
    }
    CHECK(prev < 0.7);  // and it genuinely relaxes over the span
}

TEST_CASE("quench --eta-list writes one file per eta") {
    CHECK(run("quench --alpha 0.1 --tmax 1000 --dt-out 10 --eta-list 0.5,1.0 "
              "-o /tmp/drgsb_eta.csv") == 0);
    const auto a = rows("/tmp/drgsb_eta_eta0.5.csv");
    const auto b = rows("/tmp/drgsb_eta_eta1.csv");
    REQUIRE(!a.empty());
    REQUIRE(!b.empty());
    CHECK(a.size() == b.size());
}

TEST_CASE("sweep sb: frozen-seed run flags tau as infinite") {
    CHECK(run("sweep --mode sb --alpha-list 0.1,0.2 --gamma-seed 0 "
              "-o /tmp/drgsb_s3.csv") == 0);
    for (const auto& row : rows("/tmp/drgsb_s3.csv")) {
        REQUIRE(row.size() >= 8);
        CHECK(std::stod(row[2]) == 0.0);          // gamma_inf
        CHECK(row[3].find("inf") != string::npos);  // tau
    }
}

TEST_CASE("sweep se: Born-Markov column is linear in alpha") {
    CHECK(run("sweep --mode se --alpha-list 0.01,0.02,0.04 --delta0 0.1 --tmax 120 "
              "-o /tmp/drgsb_s4.csv") == 0);
    const auto r = rows("/tmp/drgsb_s4.csv");
    REQUIRE(r.size() == 3);
    const double g1 = std::stod(r[0][6]);
    const double g2 = std::stod(r[1][6]);
    const double g4 = std::stod(r[2][6]);
    CHECK(g2 / g1 == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(g4 / g1 == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("se: four-way comparison stays aligned, oracle column tracks the exact one") {
    CHECK(run("se --alpha 0.05 --delta0 0.1 --tmax 60 --oracle --n-modes 600 "
              "-o /tmp/drgsb_se.csv") == 0);
    const auto r = rows("/tmp/drgsb_se.csv");
    REQUIRE(r.size() > 100);
    REQUIRE(r[0].size() == 7);
    CHECK(std::stod(r[0][1]) == 1.0);  // sz_exact(0)
    for (const auto& row : r) {
        const double ex = std::stod(row[1]);
        const double orc = std::stod(row[6]);
        CHECK(std::fabs(ex - orc) < 5e-3);
    }
    // alpha = 0 (and no seed): every sz column coincides, no decay
    CHECK(run("se --alpha 0 --delta0 0.1 --gamma-seed 0 --tmax 20 "
              "-o /tmp/drgsb_se0.csv") == 0);
    for (const auto& row : rows("/tmp/drgsb_se0.csv")) {
        CHECK(std::stod(row[1]) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::stod(row[2]) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::stod(row[3]) == doctest::Approx(1.0).epsilon(1e-9));
    }
}
