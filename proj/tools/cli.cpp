#include "cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "allee/bifurcation.hpp"
#include "allee/errors.hpp"
#include "allee/io.hpp"
#include "allee/sweep.hpp"

namespace allee::cli {

namespace {

struct Options {
    double q = 1, h = 0.12, s = 1, m = 0.1;
    std::string format;
    std::string out_path;

    // hopf
    std::string branch = "E8";
    bool simulate = false;
    double offset = 0.02;
    // bt
    double eta1 = 0, eta2 = 0;
    int census_grid = 0;
    // portrait
    std::string window = "0.05:1:0:1";
    std::string portrait_grid = "10x10";
    double horizon = 100;
    std::string direction = "forward";
    // sweep
    std::vector<std::string> axes;
};

ModelParams params(const Options& o) {
    ModelParams p{o.q, o.h, o.s, o.m};
    p.validate();
    return p;
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (f == a) return;
    throw DomainError("format '" + f + "' is not available for this command");
}

std::vector<double> split_numbers(const std::string& text, char sep, std::size_t expected, const char* what) {
    std::vector<double> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= text.size(); ++k)
        if (k == text.size() || text[k] == sep) {
            out.push_back(io::parse_number(std::string_view(text).substr(start, k - start)));
            start = k + 1;
        }
    if (out.size() != expected) throw DomainError(std::string("malformed ") + what + " '" + text + "'");
    return out;
}

std::string run_equilibria(const Options& o) {
    const ModelParams p = params(o);
    const auto rows = io::classify_all(p);
    require_format(o.format, {"csv", "json"});
    if (o.format == "csv") return io::to_csv(io::equilibria_table(rows));
    return io::dump({{"params", io::to_json(p)}, {"equilibria", io::to_json(rows)}});
}

std::string run_thresholds(const Options& o) {
    const ModelParams p = params(o);
    const Thresholds t = thresholds(p);
    require_format(o.format, {"csv", "json"});
    if (o.format == "csv") return io::to_csv(io::thresholds_table(t));
    return io::dump({{"params", io::to_json(p)}, {"thresholds", io::to_json(t)}});
}

std::string run_saddle_node(const Options& o) {
    const ModelParams p = params(o);
    require_format(o.format, {"csv", "json"});
    const SaddleNodeReport r = saddle_node_check(p);
    if (o.format == "csv") return io::to_csv(io::saddle_node_table(r));
    return io::dump({{"params", io::to_json(p)}, {"saddle_node", io::to_json(r)}});
}

std::string run_hopf(const Options& o) {
    ModelParams p = params(o);
    require_format(o.format, {"csv", "json"});
    const Label which = parse_label(o.branch);
    const HopfCritical crit = hopf_critical(p, which);
    p.s = crit.s_critical;
    const auto e = find_label(all_equilibria(p), which);
    if (!e) throw DegenerateError("weak center vanished at the critical s");
    HopfReport r = first_lyapunov(p, *e);
    if (o.simulate) {
        if (!(o.offset > 0)) throw DomainError("offset must be positive");
        r.evidence = hopf_evidence(p, *e, crit.s_critical, crit.dtrace_ds, r.terms.sigma, o.offset);
    }
    if (o.format == "csv") return io::to_csv(io::hopf_table(r));
    return io::dump(io::to_json(r));
}

std::string run_bt(const Options& o) {
    require_format(o.format, {"csv", "json", "svg"});
    if (o.census_grid < 0) throw DomainError("grid must be non-negative");
    if (o.format == "svg" && o.census_grid == 0) throw DomainError("svg output needs a census (--grid N)");
    // Only q and m matter: h and s sit at the organizing centre plus eta.
    const BTReport r = bt_unfold(o.q, o.m, o.eta1, o.eta2);
    std::vector<double> g;
    std::vector<CensusCell> cells;
    if (o.census_grid > 0) {
        g = linspace(-1e-3, 1e-3, o.census_grid);
        cells = bt_phase_census(o.q, o.m, g, g);
    }
    if (o.format == "svg") return io::census_svg(g, g, cells);
    if (o.format == "csv") return io::to_csv(o.census_grid > 0 ? io::census_table(cells) : io::bt_table(r));
    io::Json j{{"report", io::to_json(r)}, {"self_check", io::to_json(bt_chain_self_check(o.q, o.m, o.eta1, o.eta2))}};
    if (o.census_grid > 0) j["census"] = io::to_json(cells);
    return io::dump(j);
}

std::string run_portrait(const Options& o) {
    const ModelParams p = params(o);
    require_format(o.format, {"csv", "json", "svg"});
    const auto w = split_numbers(o.window, ':', 4, "window");
    const auto g = split_numbers(o.portrait_grid, 'x', 2, "grid");
    PortraitSpec spec{w[0], w[1], w[2], w[3], static_cast<int>(g[0]), static_cast<int>(g[1]), o.horizon,
                      Direction::Forward};
    if (g[0] != static_cast<int>(g[0]) || g[1] != static_cast<int>(g[1])) throw DomainError("grid must be RxC integers");
    if (o.direction == "forward")
        spec.direction = Direction::Forward;
    else if (o.direction == "backward")
        spec.direction = Direction::Backward;
    else if (o.direction == "both")
        spec.direction = Direction::Both;
    else
        throw DomainError("direction must be forward, backward or both");
    spec.validate();
    const auto runs = portrait(p, spec);
    if (o.format == "svg") return io::portrait_svg(spec, runs);
    if (o.format == "csv") return io::to_csv(io::portrait_table(runs));
    return io::dump({{"params", io::to_json(p)}, {"trajectories", io::to_json(runs)}});
}

std::string run_sweep(const Options& o) {
    const ModelParams p = params(o);
    require_format(o.format, {"csv", "json", "svg"});
    if (o.axes.empty() || o.axes.size() > 2) throw DomainError("sweep takes one or two --axis specs");
    std::vector<SweepAxis> axes;
    for (const std::string& a : o.axes) axes.push_back(parse_axis(a));
    const auto rows = sweep(p, axes);
    if (o.format == "svg") return io::sweep_svg(axes, rows);
    if (o.format == "csv") return io::to_csv(io::sweep_table(axes, rows));
    return io::dump(io::to_json(axes, rows));
}

void add_params(CLI::App* cmd, Options& o) {
    cmd->add_option("--q", o.q, "predation rate (dimensionless)")->capture_default_str();
    cmd->add_option("--h", o.h, "harvest rate")->capture_default_str();
    cmd->add_option("--s", o.s, "predator growth rate")->capture_default_str();
    cmd->add_option("--m", o.m, "predator Allee threshold")->capture_default_str();
    cmd->add_option("--format", o.format, "csv | json | svg");
    cmd->add_option("--out", o.out_path, "write to PATH instead of standard output");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Harvested Leslie-Gower predator-prey model with a predator Allee effect"};
    app.require_subcommand(1);
    // -h would collide with the harvest option --h.
    app.set_help_flag("--help", "print this help message and exit");
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    auto* eq = app.add_subcommand("equilibria", "list and classify all equilibria");
    auto* th = app.add_subcommand("thresholds", "case-analysis thresholds");
    auto* sn = app.add_subcommand("saddle-node", "transversality of the boundary fold at h = 1/4");
    auto* hp = app.add_subcommand("hopf", "critical s, first Lyapunov coefficient, optional simulation");
    auto* bt = app.add_subcommand("bt", "Bogdanov-Takens unfolding report and census");
    auto* pt = app.add_subcommand("portrait", "phase portrait from a grid of seeds");
    auto* sw = app.add_subcommand("sweep", "1-D or 2-D scan of equilibrium counts and kinds");
    for (auto* c : {eq, th, sn, hp, bt, pt, sw}) add_params(c, o);

    hp->add_option("--branch", o.branch, "E8 or E9")->capture_default_str();
    hp->add_flag("--simulate", o.simulate, "search for limit cycles at s_c -/+ offset");
    hp->add_option("--offset", o.offset, "parameter offset for the simulation")->capture_default_str();
    bt->add_option("--eta1", o.eta1, "harvest perturbation")->capture_default_str();
    bt->add_option("--eta2", o.eta2, "growth-rate perturbation")->capture_default_str();
    bt->add_option("--grid", o.census_grid, "census grid size N (N x N over [-1e-3, 1e-3]^2)");
    pt->add_option("--window", o.window, "x0:x1:y0:y1")->capture_default_str();
    pt->add_option("--grid", o.portrait_grid, "RxC seed grid")->capture_default_str();
    pt->add_option("--horizon", o.horizon, "integration horizon")->capture_default_str();
    pt->add_option("--direction", o.direction, "forward | backward | both")->capture_default_str();
    sw->add_option("--axis", o.axes, "param:lo:hi:steps (repeat for a 2-D sweep)")->allow_extra_args(false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    // A missing --h for saddle-node means the fold itself.
    if (sn->parsed() && sn->count("--h") == 0) o.h = 0.25;

    try {
        std::string text;
        if (eq->parsed()) {
            if (o.format.empty()) o.format = "csv";
            text = run_equilibria(o);
        } else if (th->parsed()) {
            if (o.format.empty()) o.format = "csv";
            text = run_thresholds(o);
        } else if (sn->parsed()) {
            if (o.format.empty()) o.format = "csv";
            text = run_saddle_node(o);
        } else if (hp->parsed()) {
            if (o.format.empty()) o.format = "json";
            text = run_hopf(o);
        } else if (bt->parsed()) {
            if (o.format.empty()) o.format = "json";
            text = run_bt(o);
        } else if (pt->parsed()) {
            if (o.format.empty()) o.format = "svg";
            text = run_portrait(o);
        } else {
            if (o.format.empty()) o.format = "csv";
            text = run_sweep(o);
        }
        if (o.out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(o.out_path, std::ios::binary);
            if (!f) throw DomainError("cannot open '" + o.out_path + "' for writing");
            f << text;
        }
        return 0;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateError& e) {
        err << "degenerate: " << e.what() << "\n";
        return 3;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const EscapeError& e) {
        err << "escape: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace allee::cli
