#include "nnls/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nnls/error.hpp"

namespace nnls::io {

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::Io, "cannot write " + path);
    out << content;
    if (!out)
        throw Error(ErrorKind::Io, "write failed for " + path);
}

int CsvTable::column(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return static_cast<int>(i);
    return -1;
}

namespace {

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    for (auto& s : cells) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    }
    return cells;
}

} // namespace

CsvTable parse_csv(const std::string& text)
{
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r" || line[0] == '#')
            continue;
        auto cells = split_line(line);
        if (first) {
            t.header = std::move(cells);
            first = false;
            continue;
        }
        if (cells.size() != t.header.size())
            throw Error(ErrorKind::Config, "CSV row has " + std::to_string(cells.size()) +
                                               " cells, header has " + std::to_string(t.header.size()));
        t.rows.push_back(std::move(cells));
    }
    if (first)
        throw Error(ErrorKind::Config, "CSV input has no header row");
    return t;
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_text(path)); }

double to_double(const std::string& cell)
{
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size() || (errno == ERANGE && std::abs(v) > 1.0))
        throw Error(ErrorKind::Config, "not a number: '" + cell + "'");
    return v;
}

Samples read_samples(const std::string& path)
{
    const CsvTable t = read_csv(path);
    const int cx = t.column("x"), cr = t.column("re_q"), ci = t.column("im_q");
    if (cx < 0 || cr < 0 || ci < 0)
        throw Error(ErrorKind::Config, "initial-data CSV needs columns x, re_q, im_q");
    Samples s;
    for (const auto& r : t.rows) {
        s.x.push_back(to_double(r[cx]));
        s.q.emplace_back(to_double(r[cr]), to_double(r[ci]));
    }
    return s;
}

SimRunConfig parse_sim_config(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
    }
    SimRunConfig c;
    try {
        c.A = j.value("A", 1.0);
        c.L = j.at("L").get<double>();
        c.N = j.at("N").get<int>();
        c.dt = j.at("dt").get<double>();
        c.t_end = j.at("t_end").get<double>();
        c.record_times = j.value("record_times", std::vector<double>{});
        if (j.contains("initial")) {
            const auto& in = j.at("initial");
            c.initial.kind = in.value("kind", std::string("step"));
            const nlohmann::json params = in.value("params", nlohmann::json::object());
            c.initial.R = params.value("R", 0.0);
            c.initial.phi0 = params.value("phi0", 0.0);
            c.initial.mollifier = params.value("mollifier", 0.0);
            c.initial.path = params.value("path", std::string());
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Config, std::string("config field missing or mistyped: ") + e.what());
    }
    if (c.initial.kind != "step" && c.initial.kind != "soliton" && c.initial.kind != "csv")
        throw Error(ErrorKind::Config, "initial.kind must be step, soliton or csv");
    if (c.initial.kind == "csv" && c.initial.path.empty())
        throw Error(ErrorKind::Config, "initial.params.path is required for csv data");
    if (c.record_times.empty())
        c.record_times = {c.t_end};
    return c;
}

std::string snapshots_csv(const sim::Trajectory& tr, const sim::Grid& g)
{
    std::string out = "t,x,re_q,im_q,abs_q\n";
    for (const auto& f : tr.snapshots)
        for (int m = 0; m <= g.N(); ++m) {
            const cplx v = f.q[m];
            out += fmt(f.t) + ',' + fmt(g.x(m)) + ',' + fmt(v.real()) + ',' + fmt(v.imag()) + ',' +
                   fmt(std::abs(v)) + '\n';
        }
    return out;
}

std::string manifest_json(const std::string& command, const std::string& config_path,
                          const std::string& out_dir)
{
    std::time_t now = std::time(nullptr);
    if (const char* e = std::getenv("SOURCE_DATE_EPOCH"))
        now = static_cast<std::time_t>(std::strtoll(e, nullptr, 10));
    char ts[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", &tm);
    nlohmann::json j;
    j["command"] = command;
    j["config_path"] = config_path;
    j["out_dir"] = out_dir;
    j["deterministic"] = true;
    j["tool_version"] = "1.0.0";
    j["timestamp"] = ts;
    return j.dump(2) + "\n";
}

} // namespace nnls::io
