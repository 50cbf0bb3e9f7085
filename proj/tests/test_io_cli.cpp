#include <doctest.h>

#include <filesystem>
#include <json.hpp>
#include <random>
#include <sstream>

#include "aniso/cli.hpp"
#include "aniso/errors.hpp"
#include "aniso/io.hpp"
#include "oracles.hpp"

using namespace aniso;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("aniso_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "aniso");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("series CSV roundtrip") {
    std::mt19937_64 rng(1);
    const auto f = oracle::random_series(rng, 3, 20, 9);
    const auto g = series_from_csv(series_to_csv(f));
    CHECK(g.flat_indices() == f.flat_indices());
    CHECK(g.coeffs() == f.coeffs());
    CHECK(series_to_csv(f).rfind("k1,k2,k3,re,im\n", 0) == 0);
    CHECK_THROWS_AS(series_from_csv("k1,re,im\n1,2\n"), ParseError);
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("sample CSV") {
    const auto p = Pattern::create(IntMatrix{{8, 3}, {0, 8}});
    std::mt19937_64 rng(2);
    SampleVector s{p, {}};
    std::normal_distribution<double> g;
    for (int i = 0; i < 64; ++i) s.values.push_back({g(rng), g(rng)});
    const auto text = samples_to_csv(s);
    CHECK(count_lines(text) == 65);
    const auto back = samples_from_csv(text, p);
    CHECK(back.values == s.values);

    // Rows in a different order and y outside the cell (reduced mod 1).
    std::istringstream is(text);
    std::string header, line;
    std::getline(is, header);
    std::vector<std::string> rows;
    while (std::getline(is, line)) rows.push_back(line);
    std::reverse(rows.begin(), rows.end());
    std::string shuffled = header + "\n";
    for (const auto& r : rows) shuffled += r + "\n";
    CHECK(samples_from_csv(shuffled, p).values == s.values);

    const std::string dup = header + "\n" + rows[0] + "\n" + rows[0] + "\n";
    CHECK_THROWS(samples_from_csv(dup, p));
    CHECK_THROWS_AS(samples_from_csv(header + "\n1/3,0,1,0\n", p), NotAMember);
}

TEST_CASE("config parsing") {
    const auto c = cli::parse_converge_config(
        "# study\nmatrix = 2 1; 0 2\nkernel = 2; 2,2,2\nscales = 0,1\nq = inf\nmode = relaxed\nradius = 20\ncsv = out.csv\n",
        "/tmp/base");
    CHECK(c.spec.base == IntMatrix{{2, 1}, {0, 2}});
    CHECK(c.spec.scales == std::vector<int>{0, 1});
    CHECK(std::isinf(c.spec.q));
    CHECK(c.spec.mode == SFMode::Relaxed);
    CHECK(c.spec.window.radius == 20);
    CHECK(c.csv_path == "/tmp/base/out.csv");
    CHECK_THROWS_AS(cli::parse_converge_config("kernel = dirichlet\n"), ParseError);
    CHECK_THROWS_AS(cli::parse_converge_config("matrix = 2 0; 0 2\nfoo = 1\n"), ParseError);
    CHECK(cli::parse_q("infinity") == kInf);
    CHECK(cli::parse_q("3") == 3.0);
    CHECK_THROWS_AS(cli::parse_q("0.5"), ParseError);
}

TEST_CASE("command line") {
    TempDir tmp;
    const auto m = tmp.file("m.txt");
    write_text_file(m, "2\n8 3\n0 8\n");

    auto pat = run({"pattern", "-m", m});
    CHECK(pat.code == cli::kExitOk);
    CHECK(count_lines(pat.out) == 65);
    CHECK(pat.out.rfind("y1,y2\n", 0) == 0);
    CHECK(count_lines(run({"gset", "-m", m}).out) == 65);

    // Samples file from the pattern output.
    std::istringstream is(pat.out);
    std::string line, samples = "y1,y2,re,im\n";
    std::getline(is, line);
    int i = 0;
    while (std::getline(is, line)) samples += line + "," + std::to_string(0.25 * (i++ % 5)) + ",-1\n";
    const auto s = tmp.file("s.csv");
    write_text_file(s, samples);

    CHECK(run({"dft", "-m", m, "-s", s}).code == cli::kExitOk);
    const auto series = tmp.file("series.csv");
    const auto ip = run({"interpolate", "-m", m, "-s", s, "-o", series});
    CHECK(ip.code == cli::kExitOk);
    CHECK(fs::exists(series));

    const auto sf = run({"sfcheck", "-m", m, "--kernel", "dirichlet"});
    CHECK(sf.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(sf.out);
    CHECK(j["pass"] == true);
    CHECK(j["gamma_sf"] == 0.0);
    for (const char* key : {"order", "alpha", "q", "mode", "gamma_ip", "witness"}) CHECK(j.contains(key));

    const auto bad = run({"sfcheck", "-m", m, "--radius", "16"});
    CHECK(bad.code == cli::kExitFailed);  // default tail_eps is not reachable at R = 16
    CHECK(bad.err.find("TailTooLarge") != std::string::npos);

    CHECK(run({"pattern"}).code == cli::kExitUsage);
    CHECK(run({"pattern", "-m", tmp.file("missing.txt")}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    const auto unknown = run({"pattern", "-m", m, "--bogus"});
    CHECK(unknown.code == cli::kExitUsage);
    CHECK(unknown.err.find("--bogus") != std::string::npos);
    write_text_file(tmp.file("sing.txt"), "2\n2 4\n1 2\n");
    const auto sing = run({"pattern", "-m", tmp.file("sing.txt")});
    CHECK(sing.code == cli::kExitUsage);
    CHECK(sing.err.find("SingularMatrix") != std::string::npos);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("converge subcommand") {
    TempDir tmp;
    const auto cfg = tmp.file("c.cfg");
    write_text_file(cfg, "matrix = 2 1; 0 2\nkernel = 2; 2,2,2\nscales = 0,1\nradius = 16\ntail_eps = 1e-6\n"
                         "profile_radius = 12\ncsv = out.csv\nsvg = out.svg\n");
    const auto r = run({"converge", "-c", cfg});
    CHECK(r.code == cli::kExitOk);
    const auto csv = read_text_file(tmp.file("out.csv"));
    CHECK(count_lines(csv) == 3);
    CHECK(fs::exists(tmp.file("out.svg")));
    run({"converge", "-c", cfg, "--csv", tmp.file("again.csv")});
    CHECK(read_text_file(tmp.file("again.csv")) == csv);
}
