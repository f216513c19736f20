// End-to-end checks of the command line tool: exit-code taxonomy, file
// outputs, and byte-identical reruns. Runs the real binary (path injected by
// the build) in a scratch directory.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "ok: " << what << "\n";
    } else {
        std::cout << "FAIL: " << what << "\n";
        ++failures;
    }
}

int run(const std::string& args, std::string* output = nullptr) {
    std::string cmd = std::string(VDCK_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    std::string out;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int rc = pclose(pipe);
    if (output) *output = out;
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main() {
    fs::path dir = fs::temp_directory_path() / "vdck_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string out = " --out " + dir.string();

    // exit-code taxonomy
    expect(run("gen --theta paperfolding --p 3 --N 27" + out) == 0, "gen exits 0");
    expect(run("gen --p 4 --N 3" + out) == 2, "non-prime p exits 2");
    expect(run("lowerbound --m 100 --D 3" + out) == 2, "bad divisibility exits 2");
    expect(run("nonsense") == 2, "unknown subcommand exits 2");
    expect(run("verify admissible --m 12 --d 6 --mode exhaustive" + out) == 3,
           "budget overflow exits 3");
    // rational theta has no deficiency: scan collapses, reported as exit 4
    expect(run("verify deficiency --theta rational:1,/,X+2 --r-max 8" + out) == 4,
           "rational collapse exits 4");

    // gen: N points, column 1 is the radical inverse
    std::string csv = slurp(dir / "points.csv");
    {
        std::istringstream is(csv);
        std::string line;
        std::getline(is, line);
        expect(line == "n,x1,x2", "points.csv header");
        size_t rows = 0;
        bool first_coord_ok = true;
        while (std::getline(is, line)) {
            if (rows == 3) first_coord_ok = line.rfind("3,1/9,", 0) == 0; // phi_3(3) = 1/9
            ++rows;
        }
        expect(rows == 27, "gen wrote 27 rows");
        expect(first_coord_ok, "column x1 equals the base-3 radical inverse");
    }

    // gen --N 0: header only, exit 0
    expect(run("gen --N 0" + out) == 0, "gen --N 0 exits 0");
    expect(slurp(dir / "points.csv") == "n,x1,x2\n", "gen --N 0 writes only the header");

    // verify hankel on the 1/(X-1) fixture: regular sizes {1}
    std::string hout;
    expect(run("verify hankel --theta rational:1,/,X+2 --p 3" + out, &hout) == 0,
           "verify hankel passes");
    expect(hout.find("regular_sizes: 1") != std::string::npos, "regular sizes reported as {1}");

    // verify tvalue on a small range
    std::string tout;
    expect(run("verify tvalue --m-max 10 --t 3 --r-max 16" + out, &tout) == 0,
           "verify tvalue passes");
    expect(tout.find("m=10 ok") != std::string::npos, "per-m table present");

    // verify admissible at m = 4
    expect(run("verify admissible --m 4 --d 6 --r-max 16" + out) == 0, "verify admissible passes");

    // json format mirrors the report
    std::string jout;
    expect(run("verify hankel --theta rational:1,/,X+2 --format json" + out, &jout) == 0,
           "json format runs");
    expect(jout.find("\"result\": \"PASS\"") != std::string::npos, "json carries the result");
    expect(jout.find("\"config.p\": \"3\"") != std::string::npos, "json embeds the config");

    // lowerbound pipeline at m = 96 with the assumed deficiency
    expect(run("lowerbound --m 96 --D 3 --theta paperfolding" + out) == 0, "lowerbound m=96");
    std::string rep = slurp(dir / "lowerbound_m96.report.txt");
    expect(rep.find("deficit_negative: true") != std::string::npos, "deficit is negative");
    expect(rep.find("triples_at_min_order: 1") != std::string::npos, "triples_at_min_order = 1");
    expect(slurp(dir / "lowerbound_m96_intervals.csv").rfind("j1,j2,j3", 0) == 0,
           "interval CSV written");

    // growth: k rows plus a fit summary
    expect(run("growth --k-max 3" + out) == 0, "growth runs");
    {
        std::istringstream is(slurp(dir / "growth.csv"));
        std::string line;
        size_t rows = 0;
        while (std::getline(is, line)) ++rows;
        expect(rows == 4, "growth.csv has header + 3 rows");
        expect(slurp(dir / "growth_fit.txt").find("fit_log2N_slope") != std::string::npos,
               "fit summary written");
    }

    // deterministic reruns: byte-identical outputs
    expect(run("gen --theta paperfolding --N 50 --digits" + out) == 0, "gen with digits");
    std::string first = slurp(dir / "points.csv");
    expect(run("gen --theta paperfolding --N 50 --digits" + out) == 0, "gen rerun");
    expect(first == slurp(dir / "points.csv"), "rerun is byte-identical");
    expect(first.find(";") != std::string::npos, "digit columns present");

    // theta file round-trip through the text format
    {
        std::ofstream f(dir / "theta.txt");
        f << "3 1";
        for (int i = 1; i <= 64; ++i) f << " " << (i % 2);
        f.close();
        expect(run("verify hankel --theta file:" + (dir / "theta.txt").string() + " --m-max 5" +
                   out) == 0,
               "theta file accepted");
    }

    // missing output directory is created
    fs::remove_all(dir / "sub");
    expect(run("growth --k-max 1 --out " + (dir / "sub" / "deep").string()) == 0,
           "output directory created on demand");
    expect(fs::exists(dir / "sub" / "deep" / "growth.csv"), "growth.csv in new directory");

    std::cout << (failures == 0 ? "ALL CLI CHECKS PASSED\n" : "CLI CHECKS FAILED\n");
    return failures == 0 ? 0 : 1;
}
