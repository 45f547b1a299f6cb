#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "wigbound/cli.hpp"
#include "wigbound/error.hpp"
#include "wigbound/format.hpp"

using namespace wigbound;
namespace fs = std::filesystem;

namespace {

const std::string kData = WIGBOUND_TEST_DATA;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("wigbound-test-" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(file(name)) << text;
        return file(name);
    }

private:
    fs::path path_;
};

std::vector<std::vector<std::string>> rows(const std::string& tsv) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(tsv);
    std::string line;
    while (std::getline(in, line)) out.push_back(split(line, '\t'));
    return out;
}

double wigner_at(const WignerGrid& w, double q, double p) {
    for (std::size_t i = 0; i < w.qs.size(); ++i)
        for (std::size_t j = 0; j < w.ps.size(); ++j)
            if (std::abs(w.qs[i] - q) < 1e-9 && std::abs(w.ps[j] - p) < 1e-9) return w.at(i, j);
    FAIL("grid point not found");
    return 0.0;
}

WignerGrid read_grid(const std::string& path) {
    std::ifstream in(path);
    return read_wigner_csv(in);
}

} // namespace

TEST_CASE("bounds for a disk and an ellipse of the same area") {
    const Run d = run({"bounds", kData + "/disk_r1.json"});
    CHECK(d.code == 0);
    CHECK(d.out.rfind("lambda_min=-0.103638324 lambda_max=0.632120559 method=exact\n", 0) == 0);
    CHECK(d.out.find("n_min=1 n_max=0") != std::string::npos);

    const Run e = run({"bounds", kData + "/ellipse_area_pi.json"});
    CHECK(e.code == 0);
    CHECK(e.out.substr(0, e.out.find('\n')) == d.out.substr(0, d.out.find('\n')));
    CHECK(e.out.find("equivalent_disk_radius=1") != std::string::npos);
}

TEST_CASE("bounds for a tent region go through the numeric path") {
    const Run t = run({"bounds", kData + "/tent.json"});
    CHECK(t.code == 0);
    double lmin = 0.0, lmax = 0.0;
    std::istringstream in(t.out);
    std::string tok;
    while (in >> tok) {
        if (tok.rfind("lambda_min=", 0) == 0) lmin = parse_double(tok.substr(11));
        if (tok.rfind("lambda_max=", 0) == 0) lmax = parse_double(tok.substr(11));
    }
    CHECK(t.out.find("method=nystrom") != std::string::npos);
    CHECK(t.out.find("residual=") != std::string::npos);
    const double bound = 1.5 / std::numbers::pi;
    CHECK(lmin >= -bound);
    CHECK(lmax <= bound);
    CHECK(lmin < lmax);

    CHECK(run({"bounds", kData + "/tent.json", "--exact"}).code == 2);
    CHECK(run({"bounds", kData + "/disk_r1.json", "--exact", "--numeric"}).code == 2);
}

TEST_CASE("bounds rejects malformed regions") {
    TempDir tmp;
    CHECK(run({"bounds", tmp.write("bad.json", R"({"type":"disk","radius":-1,"center":[0,0]})")}).code == 2);
    CHECK(run({"bounds", tmp.write("junk.json", "not json")}).code == 2);
    const Run missing = run({"bounds", tmp.file("absent.json")});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("error:") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("numeric bounds warn through standard error") {
    TempDir tmp;
    const std::string path = tmp.write("d.json", R"({"type":"disk","center":[0,0],"radius":1})");
    const Run r = run({"bounds", path, "--numeric", "--window", "0.5", "--grid-count", "41"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning:") != std::string::npos);
}

TEST_CASE("curves") {
    const Run r = run({"curves"});
    REQUIRE(r.code == 0);
    const auto table = rows(r.out);
    REQUIRE(table.size() == 302);
    CHECK(table[0] == std::vector<std::string>{"a", "lambda_0", "lambda_1", "lambda_2", "lambda_3", "lambda_min",
                                               "lambda_max", "n_min"});
    for (std::size_t k = 1; k < 7; ++k) CHECK(parse_double(table[1][k]) == 0.0);

    const auto& at1 = table[101];
    CHECK(at1[0] == "1");
    CHECK(at1[2] == at1[3]);
    CHECK(std::abs(parse_double(at1[2]) - (1.0 - 3.0 * std::exp(-1.0))) < 1e-9);

    // same code path as the library: identical text at every sampled radius
    for (std::size_t row = 1; row < table.size(); row += 37) {
        const double a = parse_double(table[row][0]);
        for (int n = 0; n <= 3; ++n) CHECK(table[row][1 + n] == fmt9(disk_eigenvalue(n, a)));
        CHECK(table[row][5] == fmt9(disk_envelope(a).lambda_min));
        CHECK(table[row][6] == table[row][1]);
    }
}

TEST_CASE("curves lambda_min is continuous through the first crossing") {
    const Run r = run({"curves", "--a-min", "0.9999995", "--a-max", "1.0000005", "--steps", "3"});
    REQUIRE(r.code == 0);
    const auto table = rows(r.out);
    REQUIRE(table.size() == 4);
    CHECK(table[1][7] == "1");
    CHECK(table[3][7] == "2");
    for (std::size_t k = 1; k + 1 < table.size(); ++k)
        CHECK(std::abs(parse_double(table[k][5]) - parse_double(table[k + 1][5])) < 1e-6);
}

TEST_CASE("curves rejects a bad range") {
    CHECK(run({"curves", "--a-min", "2", "--a-max", "1"}).code == 2);
    CHECK(run({"curves", "--a-min", "-1"}).code == 2);
    CHECK(run({"curves", "--steps", "1"}).code == 2);
}

TEST_CASE("wigner dumps") {
    TempDir tmp;
    REQUIRE(run({"wigner", "oscillator:0", "--out", tmp.file("g0.csv")}).code == 0);
    const WignerGrid g0 = read_grid(tmp.file("g0.csv"));
    CHECK(g0.qs.size() == 161);
    CHECK(std::abs(wigner_at(g0, 0.0, 0.0) - 1.0 / std::numbers::pi) < 1e-5);

    REQUIRE(run({"wigner", "mix:0.5 oscillator:0 + 0.5 oscillator:1", "-o", tmp.file("mix.csv")}).code == 0);
    CHECK(std::abs(wigner_at(read_grid(tmp.file("mix.csv")), 0.0, 0.0)) < 1e-5);
    REQUIRE(run({"wigner", "mix:0.5*oscillator:0+0.5*oscillator:1", "-o", tmp.file("mix2.csv")}).code == 0);
    CHECK(std::abs(wigner_at(read_grid(tmp.file("mix2.csv")), 0.0, 0.0)) < 1e-5);

    // coherent states far off centre widen the sampling grid on their own
    const Run c = run({"wigner", "coherent:3,1", "--qmin", "1", "--qmax", "5", "--pmin", "-1", "--pmax", "3"});
    REQUIRE(c.code == 0);
    std::istringstream cin(c.out);
    CHECK(std::abs(wigner_at(read_wigner_csv(cin), 3.0, 1.0) - 1.0 / std::numbers::pi) < 1e-5);

    // dump, re-ingest, dump again: identical text
    const Run first = run({"wigner", "oscillator:3", "--dq", "0.2", "--dp", "0.25"});
    std::istringstream in(first.out);
    std::ostringstream again;
    write_wigner_csv(again, read_wigner_csv(in));
    CHECK(again.str() == first.out);
}

TEST_CASE("wigner from a csv state") {
    TempDir tmp;
    std::ofstream state(tmp.file("psi.csv"));
    write_state_csv(state, oscillator_state(2));
    state.close();
    const Run r = run({"wigner", "csv:" + tmp.file("psi.csv"), "--qmin", "-1", "--qmax", "1", "--pmin", "-1",
                       "--pmax", "1", "--dq", "0.5", "--dp", "0.5"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    CHECK(std::abs(wigner_at(read_wigner_csv(in), 0.0, 0.0) - 1.0 / std::numbers::pi) < 1e-5);
}

TEST_CASE("wigner rejects bad specs") {
    CHECK(run({"wigner", "oscillator:-1"}).code == 2);
    CHECK(run({"wigner", "oscillator:1.5"}).code == 2);
    CHECK(run({"wigner", "squeezed:1"}).code == 2);
    CHECK(run({"wigner", "coherent:1"}).code == 2);
    CHECK(run({"wigner", "mix:0.5 oscillator:0 + 0.6 oscillator:1"}).code == 2);
    CHECK(run({"wigner", "mix:oscillator:0"}).code == 2);
    CHECK(run({"wigner", "csv:/nonexistent/state.csv"}).code == 2);
}

TEST_CASE("state spec parsing") {
    const Ensemble e = parse_state_spec("mix: 0.25*oscillator:2 + 0.75 coherent:1,-1");
    REQUIRE(e.size() == 2);
    CHECK(e.weights()[0] == 0.25);
    CHECK(e.members()[0].x0 == e.members()[1].x0);
    CHECK(e.members()[1].x_last() >= 9.0 - 1e-9);
    CHECK_THROWS_AS(parse_state_spec("oscillator"), Error);
}

TEST_CASE("check against a disk") {
    TempDir tmp;
    const std::string disk = kData + "/disk_r1.json";
    REQUIRE(run({"wigner", "oscillator:0", "-o", tmp.file("g0.csv")}).code == 0);
    const Run r0 = run({"check", tmp.file("g0.csv"), disk});
    CHECK(r0.code == 0);
    const auto j0 = nlohmann::json::parse(r0.out);
    CHECK(j0["verdict"] == "within");
    CHECK(std::abs(j0["q_value"].get<double>() - 0.632121) < 2.0 * 0.05 * 0.05);
    CHECK(j0["margin"].get<double>() == doctest::Approx(2.0 * 0.05 * 0.05));
    CHECK(j0["method"] == "exact");
    CHECK(j0["area_bound"].get<double>() == doctest::Approx(1.0));

    REQUIRE(run({"wigner", "oscillator:1", "-o", tmp.file("g1.csv")}).code == 0);
    const Run r1 = run({"check", tmp.file("g1.csv"), disk});
    CHECK(r1.code == 0);
    CHECK(std::abs(nlohmann::json::parse(r1.out)["q_value"].get<double>() - (-0.103638)) < 2.0 * 0.05 * 0.05);

    // scaled by 1.3 the ground state exceeds lambda_max
    WignerGrid w = read_grid(tmp.file("g0.csv"));
    for (double& v : w.w) v *= 1.3;
    std::ofstream(tmp.file("scaled.csv")) << [&] {
        std::ostringstream s;
        write_wigner_csv(s, w);
        return s.str();
    }();
    const Run rs = run({"check", tmp.file("scaled.csv"), disk});
    CHECK(rs.code == 1);
    CHECK(nlohmann::json::parse(rs.out)["verdict"] == "above_max");
    // a generous noise margin absorbs it
    CHECK(run({"check", tmp.file("scaled.csv"), disk, "--margin", "0.3"}).code == 0);

    // scaled n = 1 state falls below lambda_min
    WignerGrid w1 = read_grid(tmp.file("g1.csv"));
    for (double& v : w1.w) v *= 1.3;
    std::ofstream out1(tmp.file("scaled1.csv"));
    write_wigner_csv(out1, w1);
    out1.close();
    const Run rs1 = run({"check", tmp.file("scaled1.csv"), disk});
    CHECK(rs1.code == 1);
    CHECK(nlohmann::json::parse(rs1.out)["verdict"] == "below_min");
}

TEST_CASE("check errors") {
    TempDir tmp;
    REQUIRE(run({"wigner", "oscillator:0", "--qmin", "-1", "--qmax", "1", "--pmin", "-1", "--pmax", "1", "-o",
                 tmp.file("small.csv")})
                .code == 0);
    const Run r = run({"check", tmp.file("small.csv"), tmp.write("big.json", R"({"type":"disk","center":[0,0],"radius":3})")});
    CHECK(r.code == 2);
    CHECK(r.err.find("uncovered region") != std::string::npos);
    CHECK(run({"check", tmp.file("small.csv"), kData + "/disk_r1.json", "--margin", "-1"}).code == 2);
    CHECK(run({"check", tmp.write("bad.csv", "q,p,w\n0,0,1\n"), kData + "/disk_r1.json"}).code == 2);
}

TEST_CASE("check report json") {
    CheckReport r;
    r.q_value = 0.123456789123;
    r.verdict = Verdict::below_min;
    const nlohmann::json j = to_json(r);
    CHECK(j["q_value"].get<double>() == 0.123456789);
    CHECK(j["verdict"] == "below_min");
    CHECK(j.contains("margin"));
    CHECK(j.contains("area_bound"));
}
