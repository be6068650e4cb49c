#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include <json.hpp>

#include "nnls/error.hpp"
#include "nnls/io.hpp"

using namespace nnls;
namespace io = nnls::io;

namespace {

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Domain;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("number formatting round-trips")
{
    for (double v : {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 0.0})
        CHECK(io::to_double(io::fmt(v)) == v);
    CHECK(io::fmt(1.5) == "1.5");
    CHECK(kind_of([] { io::to_double("1.5x"); }) == ErrorKind::Config);
    CHECK(kind_of([] { io::to_double(""); }) == ErrorKind::Config);
}

TEST_CASE("csv parsing")
{
    const io::CsvTable t = io::parse_csv("# comment\nx, re_q ,im_q\r\n1,2,3\n\n4,5,6\n");
    REQUIRE(t.header.size() == 3);
    CHECK(t.header[1] == "re_q");
    CHECK(t.rows.size() == 2);
    CHECK(t.column("im_q") == 2);
    CHECK(t.column("abs_q") == -1);
    CHECK(kind_of([] { io::parse_csv("a,b\n1\n"); }) == ErrorKind::Config);
    CHECK(kind_of([] { io::parse_csv(""); }) == ErrorKind::Config);
}

TEST_CASE("sample files")
{
    const auto dir = std::filesystem::temp_directory_path() / "nnls_io_test";
    std::filesystem::create_directories(dir);
    const std::string good = (dir / "good.csv").string();
    io::write_text(good, "x,re_q,im_q\n-1,-1,0\n0,0,0.5\n1,1,0\n");
    const io::Samples s = io::read_samples(good);
    REQUIRE(s.x.size() == 3);
    CHECK(s.q[1] == cplx(0.0, 0.5));
    const std::string bad = (dir / "bad.csv").string();
    io::write_text(bad, "x,q\n1,2\n");
    CHECK(kind_of([&] { io::read_samples(bad); }) == ErrorKind::Config);
    CHECK(kind_of([&] { io::read_samples((dir / "missing.csv").string()); }) == ErrorKind::Io);
    CHECK(kind_of([&] { io::write_text((dir / "no/such/dir/f.txt").string(), "x"); }) == ErrorKind::Io);
}

TEST_CASE("simulation config")
{
    const io::SimRunConfig c = io::parse_sim_config(R"({"A": 2, "L": 30, "N": 600, "dt": 1e-4,
        "t_end": 1, "record_times": [0.5, 1],
        "initial": {"kind": "soliton", "params": {"phi0": 0.3}}})");
    CHECK(c.A == 2.0);
    CHECK(c.N == 600);
    CHECK(c.record_times.size() == 2);
    CHECK(c.initial.kind == "soliton");
    CHECK(c.initial.phi0 == 0.3);

    const io::SimRunConfig d = io::parse_sim_config(R"({"L": 10, "N": 100, "dt": 1e-3, "t_end": 2})");
    CHECK(d.A == 1.0);
    CHECK(d.initial.kind == "step");
    REQUIRE(d.record_times.size() == 1);
    CHECK(d.record_times[0] == 2.0);

    CHECK(kind_of([] { io::parse_sim_config("{"); }) == ErrorKind::Config);
    CHECK(kind_of([] { io::parse_sim_config(R"({"L": 10})"); }) == ErrorKind::Config);
    CHECK(kind_of([] { io::parse_sim_config(R"({"L": "x", "N": 10, "dt": 1, "t_end": 1})"); }) ==
          ErrorKind::Config);
    CHECK(kind_of([] {
              io::parse_sim_config(R"({"L": 10, "N": 10, "dt": 1, "t_end": 1, "initial": {"kind": "wave"}})");
          }) == ErrorKind::Config);
    CHECK(kind_of([] {
              io::parse_sim_config(R"({"L": 10, "N": 10, "dt": 1, "t_end": 1, "initial": {"kind": "csv"}})");
          }) == ErrorKind::Config);
}

TEST_CASE("snapshot export")
{
    const sim::Grid g(1.0, 4);
    sim::Trajectory tr;
    tr.snapshots.push_back({0.5, {cplx(-1), cplx(-0.5, 0.1), cplx(0), cplx(0.5), cplx(1)}});
    const std::string csv = io::snapshots_csv(tr, g);
    const io::CsvTable t = io::parse_csv(csv);
    CHECK(t.header == std::vector<std::string>{"t", "x", "re_q", "im_q", "abs_q"});
    REQUIRE(t.rows.size() == 5);
    CHECK(io::to_double(t.rows[1][1]) == -0.5);
    CHECK(io::to_double(t.rows[1][3]) == 0.1);
    CHECK(io::to_double(t.rows[1][4]) == std::abs(cplx(-0.5, 0.1)));
}

TEST_CASE("manifest")
{
    setenv("SOURCE_DATE_EPOCH", "86400", 1);
    const std::string m1 = io::manifest_json("asym", "", "out");
    const std::string m2 = io::manifest_json("asym", "", "out");
    unsetenv("SOURCE_DATE_EPOCH");
    CHECK(m1 == m2);
    const auto j = nlohmann::json::parse(m1);
    CHECK(j.at("timestamp") == "1970-01-02T00:00:00Z");
    CHECK(j.at("deterministic") == true);
    CHECK(j.at("command") == "asym");
}

}
