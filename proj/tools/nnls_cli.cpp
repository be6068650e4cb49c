#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nnls/asymptotics.hpp"
#include "nnls/error.hpp"
#include "nnls/io.hpp"
#include "nnls/sim.hpp"
#include "nnls/spectral.hpp"

namespace fs = std::filesystem;
using namespace nnls;

namespace {

struct SourceArgs {
    double A = 1.0;
    std::optional<double> step_R;
    bool soliton = false;
    double phi0 = 0.0;
    std::string input_csv;
    double tail_tol = 1e-10;
};

void add_source_flags(CLI::App* app, SourceArgs& s)
{
    app->add_option("--A", s.A, "background amplitude A > 0");
    app->add_option("--step-R", s.step_R, "pure step with jump at x = R");
    app->add_flag("--soliton", s.soliton, "one-soliton initial data");
    app->add_option("--phi0", s.phi0, "soliton phase");
    app->add_option("--input-csv", s.input_csv, "initial data table (x, re_q, im_q)");
    app->add_option("--tail-tol", s.tail_tol, "tail tolerance for tabulated data");
}

/// Comma list "a,b,c" or sweep "lo:hi:n".
std::vector<double> parse_values(const std::string& spec)
{
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        std::string p;
        while (std::getline(ss, p, ':'))
            parts.push_back(p);
        if (parts.size() != 3)
            throw Error(ErrorKind::Config, "sweep must read lo:hi:n, got '" + spec + "'");
        const double lo = io::to_double(parts[0]), hi = io::to_double(parts[1]);
        const double n = io::to_double(parts[2]);
        if (!(n >= 1) || n != std::floor(n))
            throw Error(ErrorKind::Config, "sweep count must be a positive integer");
        const int m = static_cast<int>(n);
        for (int i = 0; i < m; ++i)
            out.push_back(m == 1 ? lo : lo + (hi - lo) * i / (m - 1));
        return out;
    }
    std::stringstream ss(spec);
    std::string p;
    while (std::getline(ss, p, ','))
        if (!p.empty())
            out.push_back(io::to_double(p));
    if (out.empty())
        throw Error(ErrorKind::Config, "empty value list");
    return out;
}

spectral::SpectralData make_spectral(const SourceArgs& s, const std::vector<double>& k_samples)
{
    const Amplitude A(s.A);
    const int chosen = (s.step_R ? 1 : 0) + (s.soliton ? 1 : 0) + (s.input_csv.empty() ? 0 : 1);
    if (chosen > 1)
        throw Error(ErrorKind::Config, "choose one of --step-R, --soliton, --input-csv");
    if (s.soliton)
        return spectral::soliton_spectral(A, s.phi0);
    if (!s.input_csv.empty()) {
        const io::Samples smp = io::read_samples(s.input_csv);
        std::vector<cplx> ks;
        for (double k : k_samples)
            if (std::abs(k) > 1.01 * double(A))
                ks.emplace_back(k);
        return spectral::jost_spectral(spectral::from_table(smp.x, smp.q, A, s.tail_tol), A, ks);
    }
    return spectral::step_spectral({A, s.step_R.value_or(0.0)});
}

void ensure_dir(const std::string& d)
{
    std::error_code ec;
    fs::create_directories(d, ec);
    if (ec)
        throw Error(ErrorKind::Io, "cannot create output directory " + d);
}

std::string path_in(const std::string& dir, const std::string& name)
{
    return (fs::path(dir) / name).string();
}

std::string cell(const std::optional<cplx>& v, bool imag)
{
    if (!v)
        return "nan";
    return io::fmt(imag ? v->imag() : v->real());
}

template <class F>
std::optional<cplx> attempt(F&& f)
{
    try {
        return f();
    } catch (const Error&) {
        return std::nullopt;
    }
}

void cmd_spectral(const SourceArgs& src, const std::string& kgrid, const std::string& out)
{
    const double A = Amplitude(src.A);
    const std::vector<double> ks = parse_values(kgrid.empty() ? io::fmt(-10 * A) + ":" + io::fmt(10 * A) + ":400" : kgrid);
    const spectral::SpectralData sd = make_spectral(src, ks);
    ensure_dir(out);
    std::string csv = "k,side,re_a1,im_a1,re_a2,im_a2,re_b,im_b,re_r1,im_r1,re_r2,im_r2\n";
    for (double k : ks) {
        if (std::abs(std::abs(k) - A) <= 1e-12 * A)
            continue; // branch points
        const bool on_cut = std::abs(k) < A;
        const std::vector<CutSide> sides =
            on_cut ? std::vector<CutSide>{CutSide::Above, CutSide::Below} : std::vector<CutSide>{CutSide::Off};
        for (CutSide side : sides) {
            const auto a1 = attempt([&] { return sd.a1(k, side); });
            const auto a2 = attempt([&] { return sd.a2(k, side); });
            const auto b = attempt([&] { return sd.b(k, side); });
            const auto r1 = attempt([&] { return spectral::reflection(sd, k, side).r1; });
            const auto r2 = attempt([&] { return spectral::reflection(sd, k, side).r2; });
            csv += io::fmt(k) + ',' + to_string(side);
            for (const auto& v : {a1, a2, b, r1, r2})
                csv += ',' + cell(v, false) + ',' + cell(v, true);
            csv += '\n';
        }
    }
    io::write_text(path_in(out, "spectral_data.csv"), csv);
    io::write_text(path_in(out, "assumptions_report.json"),
                   spectral::check_assumptions(sd).to_json() + "\n");
}

void cmd_asym(const SourceArgs& src, const std::string& xi_spec, const std::string& x_spec,
              const std::string& t_spec, double tol, const std::string& out)
{
    if (t_spec.empty())
        throw Error(ErrorKind::Config, "--t is required");
    if (xi_spec.empty() == x_spec.empty())
        throw Error(ErrorKind::Config, "give exactly one of --xi (rays) or --x (transition stations)");
    const std::vector<double> ts = parse_values(t_spec);
    for (double t : ts)
        if (!(t > 0))
            throw Error(ErrorKind::Config, "times must be positive");
    const spectral::SpectralData sd = make_spectral(src, {});
    const asym::AsymptoticModel model(sd, tol);
    const double A = sd.A;
    std::string csv = "x,t,xi,re_q,im_q,abs_q,region,error_exponent\n";
    auto row = [&](double x, double t, double xi, cplx q, const std::string& region,
                   std::optional<double> ee) {
        csv += io::fmt(x) + ',' + io::fmt(t) + ',' + io::fmt(xi) + ',' + io::fmt(q.real()) + ',' +
               io::fmt(q.imag()) + ',' + io::fmt(std::abs(q)) + ',' + region + ',' +
               (ee ? io::fmt(*ee) : std::string("exponential")) + '\n';
    };
    if (!xi_spec.empty()) {
        for (double xi : parse_values(xi_spec)) {
            const phase::RegionTag r = phase::classify({xi, Amplitude(A)});
            if (r == phase::RegionTag::Boundary)
                throw Error(ErrorKind::RegionMismatch,
                            "xi = " + io::fmt(xi) + " is a region boundary (0 or +-A/2); no main term is defined there");
            const asym::AsymptoticParams& p = model.params(xi);
            for (double t : ts)
                row(4.0 * t * xi, t, xi, model.by_direction(4.0 * t * xi, t), phase::to_string(r),
                    p.error_exponent);
        }
    } else {
        for (double x : parse_values(x_spec))
            for (double t : ts)
                row(x, t, x / (4.0 * t), model.transition(x, t), "transition_axis", std::nullopt);
    }
    ensure_dir(out);
    io::write_text(path_in(out, "asym.csv"), csv);
}

struct RunSetup {
    io::SimRunConfig cfg;
    sim::Grid grid;
    sim::Field field;
    std::vector<std::string> warnings;
};

RunSetup setup_run(const std::string& config_path)
{
    if (config_path.empty())
        throw Error(ErrorKind::Config, "--config is required");
    io::SimRunConfig cfg = io::parse_sim_config(io::read_text(config_path));
    const Amplitude A(cfg.A);
    sim::Grid g(cfg.L, cfg.N);
    std::vector<std::string> warnings;
    sim::Field f;
    if (cfg.initial.kind == "step") {
        f = sim::init_step({A, cfg.initial.R}, g, cfg.initial.mollifier, &warnings);
    } else if (cfg.initial.kind == "soliton") {
        f = sim::init_soliton(A, cfg.initial.phi0, g);
    } else {
        fs::path p(cfg.initial.path);
        if (p.is_relative())
            p = fs::path(config_path).parent_path() / p;
        const io::Samples s = io::read_samples(p.string());
        f = sim::init_field(spectral::from_table(s.x, s.q, A), g, A, &warnings);
    }
    return {cfg, g, f, warnings};
}

sim::Trajectory run(const RunSetup& r)
{
    sim::SimConfig sc;
    sc.dt = r.cfg.dt;
    sc.t_end = r.cfg.t_end;
    sc.record_times = r.cfg.record_times;
    for (const auto& w : r.warnings)
        std::cerr << "warning: " << w << '\n';
    return sim::evolve(r.field, r.grid, sc, Amplitude(r.cfg.A));
}

void cmd_simulate(const std::string& config, const std::string& out)
{
    const RunSetup r = setup_run(config);
    const sim::Trajectory tr = run(r);
    ensure_dir(out);
    io::write_text(path_in(out, "snapshots.csv"), io::snapshots_csv(tr, r.grid));
}

void cmd_compare(const std::string& config, const std::string& predictor, const std::string& wx,
                 const std::string& wxi, double tol, const std::string& out)
{
    const RunSetup r = setup_run(config);
    const double A = r.cfg.A;
    sim::Window w;
    if (wx.empty() == wxi.empty())
        throw Error(ErrorKind::Config, "give exactly one of --window-x or --window-xi (lo:hi)");
    {
        const std::string& spec = wx.empty() ? wxi : wx;
        const auto c = spec.find(':');
        if (c == std::string::npos)
            throw Error(ErrorKind::Config, "window must read lo:hi");
        w.lo = io::to_double(spec.substr(0, c));
        w.hi = io::to_double(spec.substr(c + 1));
        w.kind = wx.empty() ? sim::Window::Kind::Xi : sim::Window::Kind::X;
    }
    // spectral data of the configured initial condition
    std::optional<spectral::SpectralData> sd;
    if (r.cfg.initial.kind == "step")
        sd = spectral::step_spectral({Amplitude(A), r.cfg.initial.R});
    else if (r.cfg.initial.kind == "soliton")
        sd = spectral::soliton_spectral(Amplitude(A), r.cfg.initial.phi0);
    else
        throw Error(ErrorKind::Config, "compare supports step and soliton initial data");
    const asym::AsymptoticModel model(*sd, tol);

    // check the predictor region against the window before the (long) run
    std::function<cplx(double, double)> pred;
    const double phi0 = r.cfg.initial.phi0;
    using phase::RegionTag;
    auto region_at = [&](double x, double t) { return phase::classify({x / (4.0 * t), Amplitude(A)}); };
    if (predictor == "soliton") {
        if (r.cfg.initial.kind != "soliton")
            throw Error(ErrorKind::RegionMismatch, "the soliton predictor needs soliton initial data");
        pred = [A, phi0](double x, double t) { return asym::q_soliton(Amplitude(A), phi0, x, t); };
    } else if (predictor == "central" || predictor == "modulated") {
        const bool want_mod = predictor == "modulated";
        pred = [&model, want_mod, region_at](double x, double t) {
            const RegionTag rt = region_at(x, t);
            const bool mod = rt == RegionTag::ModulatedPlus || rt == RegionTag::ModulatedMinus;
            const bool cen = rt == RegionTag::CentralPlus || rt == RegionTag::CentralMinus;
            if ((want_mod && !mod) || (!want_mod && !cen))
                throw Error(ErrorKind::RegionMismatch, "window leaves the predictor's region at x = " +
                                                           io::fmt(x) + ", t = " + io::fmt(t));
            return model.by_direction(x, t);
        };
    } else if (predictor == "transition") {
        pred = [&model](double x, double t) { return model.transition(x, t); };
    } else if (predictor == "auto") {
        pred = [&model](double x, double t) { return model.by_direction(x, t); };
    } else {
        throw Error(ErrorKind::Config, "unknown predictor '" + predictor + "'");
    }
    // dry run on the requested record times
    for (double t : r.cfg.record_times) {
        if (!(t > 0))
            continue;
        const double lo = w.kind == sim::Window::Kind::Xi ? 4 * t * w.lo : w.lo;
        const double hi = w.kind == sim::Window::Kind::Xi ? 4 * t * w.hi : w.hi;
        for (double x : {lo, 0.5 * (lo + hi), hi})
            if (x != 0.0)
                pred(x, t);
    }
    const sim::Trajectory tr = run(r);
    const sim::ErrorTable et = sim::compare(tr, r.grid, pred, w);
    std::string csv = "t,sup_err,l2_err,fitted_exponent\n";
    for (const auto& row : et.rows)
        csv += io::fmt(row.t) + ',' + io::fmt(row.sup_err) + ',' + io::fmt(row.l2_err) + ',' +
               (et.fitted_exponent ? io::fmt(*et.fitted_exponent) : std::string("nan")) + '\n';
    ensure_dir(out);
    io::write_text(path_in(out, "error_table.csv"), csv);
}

std::string gnuplot_script(const std::string& command)
{
    if (command == "spectral")
        return "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'k'\n"
               "plot 'spectral_data.csv' using 1:3 with lines title 'Re a1', '' using 1:4 with lines title 'Im a1'\n";
    if (command == "asym")
        return "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'x'\n"
               "plot 'asym.csv' using 1:6 with linespoints title '|q| main term'\n";
    if (command == "simulate")
        return "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'x'\n"
               "plot 'snapshots.csv' using 2:5 with lines title '|q|'\n";
    return "set datafile separator ','\nset key autotitle columnhead\nset logscale xy\nset xlabel 't'\n"
           "plot 'error_table.csv' using 1:2 with linespoints title 'sup error'\n";
}

void emit_error(const std::string& kind, const std::string& message, std::optional<double> t = {})
{
    nlohmann::json j{{"kind", kind}, {"message", message}};
    if (t)
        j["t"] = *t;
    std::cerr << j.dump() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"nnls: long-time asymptotics of the nonlocal NLS equation with step-like data"};
    app.require_subcommand(1);
    SourceArgs src;
    std::string out_dir = ".";
    std::string config;
    double tol = 1e-9;
    bool gnuplot = false;
    std::string kgrid, xi, x, t, predictor = "auto", window_x, window_xi;

    auto* sp = app.add_subcommand("spectral", "spectral functions and assumptions report");
    add_source_flags(sp, src);
    sp->add_option("--k-grid", kgrid, "real k samples lo:hi:n");
    auto* as = app.add_subcommand("asym", "asymptotic main terms along rays or at stations");
    add_source_flags(as, src);
    as->add_option("--xi", xi, "directions x/(4t): list a,b or sweep lo:hi:n");
    as->add_option("--x", x, "transition stations: list or sweep");
    as->add_option("--t", t, "times: list or sweep");
    auto* si = app.add_subcommand("simulate", "direct simulation from a JSON config");
    auto* co = app.add_subcommand("compare", "simulation against an asymptotic predictor");
    co->add_option("--predictor", predictor, "auto | central | modulated | transition | soliton");
    co->add_option("--window-x", window_x, "x window lo:hi");
    co->add_option("--window-xi", window_xi, "xi window lo:hi");
    for (auto* c : {sp, as, si, co}) {
        c->add_option("--out-dir", out_dir, "output directory");
        c->add_option("--config", config, "JSON run configuration");
        c->add_option("--tol", tol, "quadrature tolerance");
        c->add_flag("--gnuplot-script", gnuplot, "also write plot.gp");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("config", e.what());
        return 2;
    }

    std::string command;
    try {
        if (sp->parsed()) {
            command = "spectral";
            cmd_spectral(src, kgrid, out_dir);
        } else if (as->parsed()) {
            command = "asym";
            cmd_asym(src, xi, x, t, tol, out_dir);
        } else if (si->parsed()) {
            command = "simulate";
            cmd_simulate(config, out_dir);
        } else {
            command = "compare";
            cmd_compare(config, predictor, window_x, window_xi, tol, out_dir);
        }
        if (gnuplot)
            io::write_text(path_in(out_dir, "plot.gp"), gnuplot_script(command));
        io::write_text(path_in(out_dir, "manifest.json"), io::manifest_json(command, config, out_dir));
    } catch (const BlowupDetected& e) {
        emit_error(to_string(e.kind()), e.what(), e.time());
        return exit_code(e.kind());
    } catch (const Error& e) {
        emit_error(to_string(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 3;
    }
    return 0;
}
