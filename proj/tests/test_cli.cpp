#include "doctest.h"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir() {
    static std::atomic<int> counter{0};
    fs::path dir = fs::temp_directory_path() /
                   ("safeseq_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args, const fs::path& out, const fs::path& err,
            const std::string& env = "") {
    std::string cmd = env;
    if (!env.empty()) cmd += ' ';
    cmd += std::string(CLI_BIN) + " " + args + " > " + out.string() + " 2> " + err.string();
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::vector<std::string> tab_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string f;
    while (std::getline(in, f, '\t')) fields.push_back(f);
    return fields;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
    return lines;
}

const char* kDiamond = "# dia\n4\n0 1 1\n0 2 1\n1 3 1\n2 3 1\n";
const char* kPath35 = "# pathg\n3\n0 1 3\n1 2 5\n";

} // namespace

TEST_CASE("safety subcommand lists the diamond's sequences") {
    fs::path dir = fresh_dir();
    write_file(dir / "in.graph", kDiamond);
    int rc = run_cli("safety " + (dir / "in.graph").string(), dir / "out", dir / "err");
    CHECK(rc == 0);
    CHECK(slurp(dir / "out") ==
          "dia\t0\t0 1 3\n"
          "dia\t1\t0 2 3\n");

    auto report = lines_of(slurp(dir / "err"));
    REQUIRE(report.size() == 2);
    CHECK(report[0] == "graph\tn\tm\twidth\tprep_s\tsequences\ttotal_len\tfixed_pct");
    auto row = tab_fields(report[1]);
    REQUIRE(row.size() == 8);
    CHECK(row[0] == "dia");
    CHECK(row[1] == "4");
    CHECK(row[2] == "4");
    CHECK(row[3] == "2");
    CHECK(row[5] == "2");
    CHECK(row[6] == "6");
    CHECK(row[7] == "0.00");
}

TEST_CASE("arc mode emits tail:head:id triples") {
    fs::path dir = fresh_dir();
    write_file(dir / "in.graph", kDiamond);
    int rc = run_cli("safety --mode arcs " + (dir / "in.graph").string(), dir / "out", dir / "err");
    CHECK(rc == 0);
    CHECK(slurp(dir / "out") ==
          "dia\t0\t0:1:0 1:3:2\n"
          "dia\t1\t0:2:1 2:3:3\n");
}

TEST_CASE("json output is a parseable array") {
    fs::path dir = fresh_dir();
    write_file(dir / "in.graph", kDiamond);
    int rc = run_cli("safety --format json " + (dir / "in.graph").string(), dir / "out", dir / "err");
    CHECK(rc == 0);
    auto doc = nlohmann::json::parse(slurp(dir / "out"));
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["graph"] == "dia");
    CHECK(doc[0]["mode"] == "nodes");
    CHECK(doc[0]["sequences"].size() == 2);
}

TEST_CASE("weight percentile subsets narrow the answer") {
    fs::path dir = fresh_dir();
    write_file(dir / "in.graph", kPath35);

    SUBCASE("arc mode keeps only the heavy arc's chain") {
        int rc = run_cli("safety --mode arcs --subset-percentile 75 " + (dir / "in.graph").string(),
                         dir / "out", dir / "err");
        CHECK(rc == 0);
        CHECK(slurp(dir / "out") == "pathg\t0\t0:1:0 1:2:1\n");
    }

    SUBCASE("node mode covers the heavy arc's endpoints") {
        int rc = run_cli("safety --subset-percentile 75 " + (dir / "in.graph").string(), dir / "out",
                         dir / "err");
        CHECK(rc == 0);
        CHECK(slurp(dir / "out") == "pathg\t0\t0 1 2\n");
    }
}

TEST_CASE("subset ids can come from a file") {
    fs::path dir = fresh_dir();
    write_file(dir / "in.graph", kDiamond);
    write_file(dir / "ids", "1\n");
    int rc = run_cli("safety --subset-file " + (dir / "ids").string() + " " +
                         (dir / "in.graph").string(),
                     dir / "out", dir / "err");
    CHECK(rc == 0);
    CHECK(slurp(dir / "out") == "dia\t0\t0 1 3\n");
}

TEST_CASE("bad flags exit with a usage error") {
    fs::path dir = fresh_dir();
    write_file(dir / "in.graph", kDiamond);
    CHECK(run_cli("safety --mode bogus " + (dir / "in.graph").string(), dir / "out", dir / "err") == 1);
    CHECK(run_cli("safety", dir / "out", dir / "err") == 1);
    CHECK(run_cli("frobnicate", dir / "out", dir / "err") == 1);
    CHECK(run_cli("ilp --k 0 " + (dir / "in.graph").string(), dir / "out", dir / "err") == 1);
    CHECK(run_cli("ilp --safety subset:120 " + (dir / "in.graph").string(), dir / "out", dir / "err") ==
          1);
}

TEST_CASE("a missing input file exits with an error") {
    fs::path dir = fresh_dir();
    int rc = run_cli("safety " + (dir / "absent.graph").string(), dir / "out", dir / "err");
    CHECK(rc == 1);
    CHECK(slurp(dir / "err").find("error:") != std::string::npos);
}

TEST_CASE("one broken graph does not abort the batch") {
    fs::path dir = fresh_dir();
    write_file(dir / "in.graph",
               "# good\n2\n0 1 1\n"
               "# bad\n2\n0 1 1\n1 0 1\n"
               "# also_good\n3\n0 1 1\n1 2 1\n");
    int rc = run_cli("safety " + (dir / "in.graph").string(), dir / "out", dir / "err");
    CHECK(rc == 0);
    std::string out = slurp(dir / "out");
    CHECK(out.find("good\t0\t0 1\n") != std::string::npos);
    CHECK(out.find("also_good\t0\t0 1 2\n") != std::string::npos);
    CHECK(out.find("bad\t") == std::string::npos);
    CHECK(slurp(dir / "err").find("graph bad:") != std::string::npos);
}

TEST_CASE("graphs without unique endpoints are normalized") {
    fs::path dir = fresh_dir();
    // two indegree-zero nodes feeding one sink
    write_file(dir / "in.graph", "# fork\n3\n0 2 1\n1 2 1\n");
    int rc = run_cli("safety " + (dir / "in.graph").string(), dir / "out", dir / "err");
    CHECK(rc == 0);
    auto report = lines_of(slurp(dir / "err"));
    REQUIRE(report.size() == 2);
    auto row = tab_fields(report[1]);
    CHECK(row[1] == "5"); // 3 nodes plus synthetic endpoints
    CHECK(row[2] == "5"); // wait: 2 data arcs + 2 source arcs + 1 sink arc
}

TEST_CASE("ilp subcommand writes models and reports objectives") {
    fs::path dir = fresh_dir();
    write_file(dir / "in.graph", kPath35);
    fs::path models = dir / "models";
    int rc = run_cli("ilp --solve-tiny --out " + models.string() + " " + (dir / "in.graph").string(),
                     dir / "out", dir / "err");
    CHECK(rc == 0);

    auto report = lines_of(slurp(dir / "out"));
    REQUIRE(report.size() == 2);
    CHECK(report[0] ==
          "graph\tn\tm\twidth\tprep_s\tsequences\ttotal_len\tfixed_pct\tobj_free\tobj_fixed");
    auto row = tab_fields(report[1]);
    REQUIRE(row.size() == 10);
    CHECK(row[0] == "pathg");
    CHECK(row[1] == "3");
    CHECK(row[2] == "2");
    CHECK(row[3] == "1");
    CHECK(row[5] == "1");
    CHECK(row[6] == "2");
    CHECK(row[7] == "100.00");
    CHECK(row[8] == "1");
    CHECK(row[9] == "1");

    std::string lp = slurp(models / "pathg.lp");
    CHECK(lp.find("Minimize") != std::string::npos);
    CHECK(lp.find(" x_0_1 = 1\n") != std::string::npos);
    CHECK(lp.find(" x_1_1 = 1\n") != std::string::npos);
}

TEST_CASE("ilp exports least squares MPS on request") {
    fs::path dir = fresh_dir();
    write_file(dir / "in.graph", kPath35);
    fs::path models = dir / "models";
    int rc = run_cli("ilp --problem lsq --export mps --safety none --out " + models.string() + " " +
                         (dir / "in.graph").string(),
                     dir / "out", dir / "err");
    CHECK(rc == 0);
    std::string mps = slurp(models / "pathg.mps");
    CHECK(mps.rfind("NAME", 0) == 0);
    CHECK(mps.find("QUADOBJ\n") != std::string::npos);
    CHECK(mps.find(" FX ") == std::string::npos); // no fixing requested
    CHECK(mps.rfind("ENDATA\n") == mps.size() - 7);

    auto row = tab_fields(lines_of(slurp(dir / "out"))[1]);
    CHECK(row[7] == "0.00"); // nothing fixed
}

TEST_CASE("ilp respects the path enumeration budget") {
    fs::path dir = fresh_dir();
    write_file(dir / "in.graph", kDiamond);
    fs::path models = dir / "models";
    int rc = run_cli("ilp --solve-tiny --out " + models.string() + " " + (dir / "in.graph").string(),
                     dir / "out", dir / "err", "SAFESEQ_PATH_LIMIT=1");
    CHECK(rc == 0);
    auto row = tab_fields(lines_of(slurp(dir / "out"))[1]);
    CHECK(row[8] == "skipped");
    CHECK(row[9] == "skipped");
    CHECK(slurp(dir / "err").find("solve-tiny skipped") != std::string::npos);
    // the model itself is still written
    CHECK(fs::exists(models / "dia.lp"));
}

TEST_CASE("content outputs are byte stable across runs and jobs") {
    fs::path dir = fresh_dir();
    write_file(dir / "in.graph", std::string(kDiamond) + kPath35 + "# third\n4\n0 1 2\n0 2 2\n1 3 2\n2 3 2\n");

    auto safety_run = [&](const std::string& tag, const std::string& jobs) {
        run_cli("safety --jobs " + jobs + " --out " + (dir / ("seq_" + tag)).string() + " --report " +
                    (dir / ("rep_" + tag)).string() + " " + (dir / "in.graph").string(),
                dir / "devnull", dir / "err");
        return slurp(dir / ("seq_" + tag));
    };
    std::string first = safety_run("a", "1");
    std::string second = safety_run("b", "1");
    std::string third = safety_run("c", "4");
    CHECK(first == second);
    CHECK(first == third);

    auto ilp_run = [&](const std::string& tag, const std::string& jobs) {
        fs::path models = dir / ("models_" + tag);
        run_cli("ilp --jobs " + jobs + " --out " + models.string() + " " + (dir / "in.graph").string(),
                dir / ("ilprep_" + tag), dir / "err");
        return slurp(models / "dia.lp") + slurp(models / "pathg.lp") + slurp(models / "third.lp");
    };
    std::string m1 = ilp_run("a", "1");
    std::string m2 = ilp_run("b", "4");
    CHECK(m1 == m2);

    // reports agree outside the timing column
    auto strip_prep = [](const std::string& text) {
        std::string out;
        for (const auto& line : lines_of(text)) {
            auto fields = tab_fields(line);
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (i == 4) continue;
                out += fields[i];
                out += '\t';
            }
            out += '\n';
        }
        return out;
    };
    CHECK(strip_prep(slurp(dir / "ilprep_a")) == strip_prep(slurp(dir / "ilprep_b")));
}

TEST_CASE("stats aggregates report rows into width buckets") {
    fs::path dir = fresh_dir();
    write_file(dir / "in.graph", std::string(kDiamond) + kPath35);
    run_cli("safety --report " + (dir / "rep").string() + " " + (dir / "in.graph").string(),
            dir / "devnull", dir / "err");

    SUBCASE("default buckets") {
        int rc = run_cli("stats " + (dir / "rep").string(), dir / "out", dir / "err");
        CHECK(rc == 0);
        auto out = lines_of(slurp(dir / "out"));
        REQUIRE(out.size() == 2); // header plus the single non-empty bucket
        CHECK(out[0] == "width\tgraphs\tavg_m\tmax_m\tavg_prep_s\tavg_fixed_pct");
        auto row = tab_fields(out[1]);
        CHECK(row[0] == "1-3");
        CHECK(row[1] == "2");
        CHECK(row[2] == "3.0"); // arcs 4 and 2 average to 3
        CHECK(row[3] == "4");
    }

    SUBCASE("custom buckets split the two graphs") {
        int rc = run_cli("stats --buckets 1,2+ " + (dir / "rep").string(), dir / "out", dir / "err");
        CHECK(rc == 0);
        auto out = lines_of(slurp(dir / "out"));
        REQUIRE(out.size() == 3);
        CHECK(tab_fields(out[1])[0] == "1");
        CHECK(tab_fields(out[1])[1] == "1");
        CHECK(tab_fields(out[2])[0] == "2+");
        CHECK(tab_fields(out[2])[1] == "1");
    }

    SUBCASE("markdown rendering") {
        int rc = run_cli("stats --markdown " + (dir / "rep").string(), dir / "out", dir / "err");
        CHECK(rc == 0);
        std::string out = slurp(dir / "out");
        CHECK(out.find("| width | graphs |") == 0);
        CHECK(out.find("| 1-3 | 2 |") != std::string::npos);
    }

    SUBCASE("bad bucket specs are rejected") {
        CHECK(run_cli("stats --buckets nope " + (dir / "rep").string(), dir / "out", dir / "err") == 1);
    }
}
