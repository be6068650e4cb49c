#pragma once

#include <string>
#include <vector>

#include "nnls/sim.hpp"
#include "nnls/types.hpp"

namespace nnls::io {

/// Shortest round-trip decimal form ("%.17g").
std::string fmt(double v);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

/// Header plus string cells; numeric columns parse with to_double.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int column(const std::string& name) const; ///< -1 when absent
};
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);
double to_double(const std::string& cell);

/// Initial data table with columns x, re_q, im_q.
struct Samples {
    std::vector<double> x;
    std::vector<cplx> q;
};
Samples read_samples(const std::string& path);

struct InitialSpec {
    std::string kind = "step"; ///< step | soliton | csv
    double R = 0.0;
    double phi0 = 0.0;
    double mollifier = 0.0;
    std::string path;
};

/// {A, L, N, dt, t_end, record_times, initial: {kind, params}}.
struct SimRunConfig {
    double A = 1.0;
    double L = 0.0;
    int N = 0;
    double dt = 0.0;
    double t_end = 0.0;
    std::vector<double> record_times;
    InitialSpec initial;
};
SimRunConfig parse_sim_config(const std::string& json_text);

/// Columns t, x, re_q, im_q, abs_q.
std::string snapshots_csv(const sim::Trajectory& tr, const sim::Grid& g);

/// Manifest of one CLI invocation. The timestamp honours SOURCE_DATE_EPOCH.
std::string manifest_json(const std::string& command, const std::string& config_path,
                          const std::string& out_dir);

} // namespace nnls::io
