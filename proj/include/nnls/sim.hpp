#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nnls/spectral.hpp"
#include "nnls/types.hpp"

/// Method-of-lines solver for i q_t + q_xx + 2 q^2(x) conj(q(-x)) = 0 with
/// Dirichlet data +-A e^{-2iA^2 t} at x = +-L.
namespace nnls::sim {

/// Uniform grid x_m = -L + m dx, m = 0..N, with N even so that x = 0 is a
/// node and m -> N - m realizes x -> -x.
class Grid {
public:
    Grid(double L, int N);
    double L() const { return L_; }
    int N() const { return N_; }
    double dx() const { return 2.0 * L_ / N_; }
    double x(int m) const { return -L_ + m * dx(); }
    std::size_t size() const { return static_cast<std::size_t>(N_) + 1; }
    /// Index of the node nearest to x (clamped).
    int index_of(double x) const;

private:
    double L_;
    int N_;
};

struct Field {
    double t = 0.0;
    std::vector<cplx> q;
};

struct SimConfig {
    double dt = 0.0;
    double t_end = 0.0;
    std::vector<double> record_times;
    double cfl_coeff = 0.2;
    double blowup_factor = 50.0;
};

/// Samples data.sampler on the grid; a warning is appended when some cell
/// jump exceeds A/2.
Field init_field(const spectral::InitialData& data, const Grid& g, Amplitude A,
                 std::vector<std::string>* warnings = nullptr);
/// Pure step: -A left of R, +A right of R, 0 at x = R. A positive mollifier
/// width replaces the jump by A tanh((x - R)/width).
Field init_step(const spectral::StepProfile& p, const Grid& g, double mollifier_width = 0.0,
                std::vector<std::string>* warnings = nullptr);
Field init_soliton(Amplitude A, double phi0, const Grid& g);

/// Throws CflViolation unless |dt| <= cfl_coeff dx^2.
void check_cfl(double dt, const Grid& g, double cfl_coeff = 0.2);

/// One classical RK4 step of size dt (zero or negative allowed). Boundary
/// nodes are reset to +-A e^{-2iA^2 (t + dt)}.
Field step(const Field& f, const Grid& g, double dt, Amplitude A);

struct Trajectory {
    std::vector<Field> snapshots; ///< one per record time, in order
};

/// Steps from f.t to cfg.t_end with dt (shortened to land on each record
/// time). Throws BlowupDetected when max |q| exceeds blowup_factor * A.
Trajectory evolve(Field f, const Grid& g, const SimConfig& cfg, Amplitude A);

/// Window of comparison, either in x or in xi = x/(4t).
struct Window {
    enum class Kind { X, Xi } kind = Kind::X;
    double lo = 0.0, hi = 0.0;
};

struct ErrorRow {
    double t;
    double sup_err;
    double l2_err;
    int points;
};

struct ErrorTable {
    std::vector<ErrorRow> rows;
    std::optional<double> fitted_exponent; ///< slope of log sup_err against log t
    std::optional<double> fitted_rate;     ///< -slope of log sup_err against t
};

/// Differences between the snapshots and predictor(x, t) over the window.
/// Predictor errors (for instance RegionMismatch) propagate.
ErrorTable compare(const Trajectory& tr, const Grid& g,
                   const std::function<cplx(double, double)>& predictor, const Window& w);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace nnls::sim
