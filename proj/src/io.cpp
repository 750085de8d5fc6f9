#include "allee/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "allee/errors.hpp"

namespace allee::io {

std::string number(double v) { return fmt::format("{}", v); }

double parse_number(std::string_view t) {
    double v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw DomainError("not a number: '" + std::string(t) + "'");
    return v;
}

namespace {

int parse_int(std::string_view t) {
    long long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw DomainError("not an integer: '" + std::string(t) + "'");
    return static_cast<int>(v);
}

std::string optional_number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json state_json(State z) { return Json{{"x", z.x}, {"y", z.y}}; }
State state_from(const Json& j) { return {j.at("x").get<double>(), j.at("y").get<double>()}; }

Json complex_json(std::complex<double> c) { return Json::array({c.real(), c.imag()}); }

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DomainError("missing CSV column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
}

std::string to_csv(const CsvTable& t) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out += ',';
            out += cells[k];
        }
        out += '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return out;
}

CsvTable parse_csv(std::string_view text) {
    CsvTable t;
    bool first = true;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (std::size_t k = 0; k <= line.size(); ++k)
            if (k == line.size() || line[k] == ',') {
                cells.emplace_back(line.substr(start, k - start));
                start = k + 1;
            }
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != t.header.size()) throw DomainError("ragged CSV row");
            t.rows.push_back(std::move(cells));
        }
    }
    if (first) throw DomainError("empty CSV document");
    return t;
}

// ---------------------------------------------------------------- tables

std::vector<ClassifiedEquilibrium> classify_all(const ModelParams& p) {
    std::vector<ClassifiedEquilibrium> out;
    for (const Equilibrium& e : all_equilibria(p)) out.push_back({e, classify(p, e)});
    return out;
}

CsvTable equilibria_table(const std::vector<ClassifiedEquilibrium>& rows) {
    CsvTable t{{"label", "branch", "x", "y", "multiplicity", "kind", "trace", "det", "lambda1_re", "lambda1_im",
                "lambda2_re", "lambda2_im", "evidence", "borderline"},
               {}};
    for (const auto& [e, c] : rows) {
        std::string evidence;
        auto add = [&](const char* name, const std::optional<double>& v) {
            if (!v) return;
            if (!evidence.empty()) evidence += ';';
            evidence += std::string(name) + "=" + number(*v);
        };
        add("c20", c.evidence.c20);
        add("g20", c.evidence.g20);
        add("g11", c.evidence.g11);
        t.rows.push_back({e.name(), std::string(branch_name(e.branch)), number(e.point.x), number(e.point.y),
                          std::to_string(e.multiplicity), std::string(kind_code(c.kind)), number(c.eigen.trace),
                          number(c.eigen.det), number(c.eigen.lambda1.real()), number(c.eigen.lambda1.imag()),
                          number(c.eigen.lambda2.real()), number(c.eigen.lambda2.imag()), evidence,
                          c.borderline ? "1" : "0"});
    }
    return t;
}

CsvTable thresholds_table(const Thresholds& th) {
    return {{"name", "value"},
            {{"A", number(th.A)},
             {"delta1", number(th.delta1)},
             {"B", optional_number(th.B)},
             {"C", number(th.C)},
             {"delta2", number(th.delta2)},
             {"D", optional_number(th.D)},
             {"h1", number(th.h1)},
             {"h2", number(th.h2)},
             {"h3", number(th.h3)},
             {"s1", optional_number(th.s1)},
             {"s2", optional_number(th.s2)},
             {"s3", optional_number(th.s3)}}};
}

CsvTable saddle_node_table(const SaddleNodeReport& r) {
    return {{"name", "value"},
            {{"h_critical", number(r.h_critical)},
             {"x", number(r.point.x)},
             {"y", number(r.point.y)},
             {"v1", number(r.v[0])},
             {"v2", number(r.v[1])},
             {"w1", number(r.w[0])},
             {"w2", number(r.w[1])},
             {"t1", number(r.t1)},
             {"t2", number(r.t2)},
             {"jv_residual", number(r.jv_residual)},
             {"jtw_residual", number(r.jtw_residual)}}};
}

CsvTable hopf_table(const HopfReport& r) {
    CsvTable t{{"name", "value"},
               {{"label", std::string(label_name(r.critical.label))},
                {"x", number(r.critical.point.x)},
                {"y", number(r.critical.point.y)},
                {"s_critical", number(r.critical.s_critical)},
                {"dtrace_ds", number(r.critical.dtrace_ds)},
                {"det", number(r.critical.det)},
                {"M", number(r.terms.M)},
                {"sigma", number(r.terms.sigma)},
                {"sigma_b02", number(r.terms.sigma_b02)},
                {"sigma_alt", number(r.terms.sigma_alt)},
                {"direction", std::string(hopf_direction_name(r.direction))}}};
    if (r.evidence) t.rows.push_back({"consistent", r.evidence->consistent ? "1" : "0"});
    return t;
}

CsvTable bt_table(const BTReport& r) {
    CsvTable t{{"stage", "name", "value"}, {}};
    for (const ChainStage& s : r.stages)
        for (const NamedValue& c : s.coefficients) t.rows.push_back({s.name, c.name, number(c.value)});
    t.rows.push_back({"unfolding", "l00", number(r.l00)});
    t.rows.push_back({"unfolding", "l01", number(r.l01)});
    t.rows.push_back({"unfolding", "j_unfold", number(r.j_unfold)});
    return t;
}

CsvTable census_table(const std::vector<CensusCell>& cells) {
    CsvTable t{{"eta1", "eta2", "equilibrium_count", "cycle_found", "regime"}, {}};
    for (const CensusCell& c : cells)
        t.rows.push_back({number(c.eta1), number(c.eta2), std::to_string(c.equilibrium_count), c.cycle_found ? "1" : "0",
                          std::string(regime_name(c.regime))});
    return t;
}

CsvTable trajectory_table(const Trajectory& tr) {
    CsvTable t{{"t", "x", "y"}, {}};
    for (const Sample& s : tr.samples) t.rows.push_back({number(s.t), number(s.z.x), number(s.z.y)});
    return t;
}

CsvTable portrait_table(const std::vector<PortraitTrajectory>& runs) {
    CsvTable t{{"seed", "direction", "t", "x", "y"}, {}};
    for (const PortraitTrajectory& r : runs)
        for (const Sample& s : r.trajectory.samples)
            t.rows.push_back({std::to_string(r.seed), std::to_string(r.direction), number(s.t), number(s.z.x),
                              number(s.z.y)});
    return t;
}

CsvTable sweep_table(const std::vector<SweepAxis>& axes, const std::vector<SweepRow>& rows) {
    (void)axes;
    CsvTable t{{"q", "h", "s", "m", "boundary", "allee_line", "diagonal", "total", "kinds", "error"}, {}};
    for (const SweepRow& r : rows)
        t.rows.push_back({number(r.params.q), number(r.params.h), number(r.params.s), number(r.params.m),
                          std::to_string(r.branch_counts[0]), std::to_string(r.branch_counts[1]),
                          std::to_string(r.branch_counts[2]), std::to_string(r.total), r.kinds, r.error});
    return t;
}

std::vector<CensusCell> read_census(const CsvTable& t) {
    const std::size_t e1 = t.column("eta1"), e2 = t.column("eta2"), n = t.column("equilibrium_count"),
                      cy = t.column("cycle_found"), rg = t.column("regime");
    std::vector<CensusCell> out;
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        const auto& r = t.rows[k];
        CensusCell c;
        c.index = k;
        c.eta1 = parse_number(r[e1]);
        c.eta2 = parse_number(r[e2]);
        c.equilibrium_count = parse_int(r[n]);
        c.cycle_found = parse_int(r[cy]) != 0;
        c.regime = parse_regime(r[rg]);
        out.push_back(c);
    }
    return out;
}

Trajectory read_trajectory(const CsvTable& t) {
    const std::size_t ct = t.column("t"), cx = t.column("x"), cy = t.column("y");
    Trajectory tr;
    for (const auto& r : t.rows) tr.samples.push_back({parse_number(r[ct]), {parse_number(r[cx]), parse_number(r[cy])}});
    if (!tr.samples.empty()) {
        tr.final_time = tr.samples.back().t;
        tr.final_state = tr.samples.back().z;
    }
    return tr;
}

// ------------------------------------------------------------------ JSON

Json to_json(const ModelParams& p) { return Json{{"q", p.q}, {"h", p.h}, {"s", p.s}, {"m", p.m}}; }

ModelParams params_from_json(const Json& j) {
    ModelParams p{j.at("q").get<double>(), j.at("h").get<double>(), j.at("s").get<double>(), j.at("m").get<double>()};
    p.validate();
    return p;
}

Json to_json(const std::vector<ClassifiedEquilibrium>& rows) {
    Json arr = Json::array();
    for (const auto& [e, c] : rows) {
        Json aliases = Json::array();
        for (const Alias& a : e.aliases)
            aliases.push_back({{"label", label_name(a.label)}, {"branch", branch_name(a.branch)}});
        Json evidence = Json::object();
        if (c.evidence.c20) evidence["c20"] = *c.evidence.c20;
        if (c.evidence.g20) evidence["g20"] = *c.evidence.g20;
        if (c.evidence.g11) evidence["g11"] = *c.evidence.g11;
        Json row{{"label", label_name(e.label)},
                 {"name", e.name()},
                 {"branch", branch_name(e.branch)},
                 {"x", e.point.x},
                 {"y", e.point.y},
                 {"multiplicity", e.multiplicity},
                 {"aliases", aliases},
                 {"kind", kind_code(c.kind)},
                 {"trace", c.eigen.trace},
                 {"det", c.eigen.det},
                 {"discriminant", c.eigen.discriminant},
                 {"lambda1", complex_json(c.eigen.lambda1)},
                 {"lambda2", complex_json(c.eigen.lambda2)},
                 {"borderline", c.borderline},
                 {"evidence", evidence}};
        if (!c.reason.empty()) row["reason"] = c.reason;
        arr.push_back(std::move(row));
    }
    return arr;
}

Json to_json(const Thresholds& t) {
    return Json{{"A", t.A},           {"delta1", t.delta1}, {"B", optional_json(t.B)},   {"C", t.C},
                {"delta2", t.delta2}, {"D", optional_json(t.D)}, {"h1", t.h1},           {"h2", t.h2},
                {"h3", t.h3},         {"s1", optional_json(t.s1)}, {"s2", optional_json(t.s2)},
                {"s3", optional_json(t.s3)}};
}

Json to_json(const SaddleNodeReport& r) {
    return Json{{"h_critical", r.h_critical}, {"point", state_json(r.point)}, {"v", r.v},
                {"w", r.w},                   {"f_h", r.f_h},                 {"d2f_vv", r.d2f_vv},
                {"t1", r.t1},                 {"t2", r.t2},                   {"jv_residual", r.jv_residual},
                {"jtw_residual", r.jtw_residual}};
}

namespace {

Json side_json(const HopfSide& side) {
    if (const auto* c = std::get_if<LimitCycleEvidence>(&side))
        return Json{{"kind", "cycle"},
                    {"s_used", c->s_used},
                    {"section", {{"x0", c->section.x0}, {"y0", c->section.y0}, {"direction", c->section.direction}}},
                    {"fixed_point", c->fixed_point},
                    {"amplitude", c->amplitude},
                    {"period", c->period},
                    {"residual", c->residual},
                    {"multiplier", c->multiplier},
                    {"stability", cycle_stability_name(c->stability)},
                    {"iterations", c->iterations},
                    {"search_direction", c->search_direction}};
    const auto& n = std::get<NoCycle>(side);
    return Json{{"kind", "none"}, {"s_used", n.s_used}, {"reason", n.reason}, {"iterations", n.iterations}};
}

HopfSide side_from(const Json& j) {
    if (j.at("kind") == "cycle") {
        LimitCycleEvidence c;
        c.s_used = j.at("s_used");
        const Json& s = j.at("section");
        c.section = {s.at("x0").get<double>(), s.at("y0").get<double>(), s.at("direction").get<int>()};
        c.fixed_point = j.at("fixed_point");
        c.amplitude = j.at("amplitude");
        c.period = j.at("period");
        c.residual = j.at("residual");
        c.multiplier = j.at("multiplier");
        c.stability = parse_cycle_stability(j.at("stability").get<std::string>());
        c.iterations = j.at("iterations");
        c.search_direction = j.at("search_direction");
        return c;
    }
    NoCycle n;
    n.s_used = j.at("s_used");
    n.reason = j.at("reason");
    n.iterations = j.at("iterations");
    return n;
}

}  // namespace

Json to_json(const HopfReport& r) {
    Json j{{"params", to_json(r.params)},
           {"critical",
            {{"label", label_name(r.critical.label)},
             {"point", state_json(r.critical.point)},
             {"s_critical", r.critical.s_critical},
             {"dtrace_ds", r.critical.dtrace_ds},
             {"det", r.critical.det}}},
           {"terms",
            {{"M", r.terms.M},
             {"phi", r.terms.phi},
             {"phi_alt", r.terms.phi_alt},
             {"sigma", r.terms.sigma},
             {"sigma_b02", r.terms.sigma_b02},
             {"sigma_alt", r.terms.sigma_alt}}},
           {"direction", hopf_direction_name(r.direction)},
           {"evidence", nullptr}};
    if (r.evidence)
        j["evidence"] = {{"offset", r.evidence->offset},
                         {"minus", side_json(r.evidence->minus)},
                         {"plus", side_json(r.evidence->plus)},
                         {"consistent", r.evidence->consistent}};
    return j;
}

HopfReport hopf_from_json(const Json& j) {
    HopfReport r;
    r.params = params_from_json(j.at("params"));
    const Json& c = j.at("critical");
    r.critical.label = parse_label(c.at("label").get<std::string>());
    r.critical.point = state_from(c.at("point"));
    r.critical.s_critical = c.at("s_critical");
    r.critical.dtrace_ds = c.at("dtrace_ds");
    r.critical.det = c.at("det");
    const Json& t = j.at("terms");
    r.terms.M = t.at("M");
    r.terms.phi = t.at("phi").get<std::array<double, 8>>();
    r.terms.phi_alt = t.at("phi_alt").get<std::array<double, 8>>();
    r.terms.sigma = t.at("sigma");
    r.terms.sigma_b02 = t.at("sigma_b02");
    r.terms.sigma_alt = t.at("sigma_alt");
    r.direction = parse_hopf_direction(j.at("direction").get<std::string>());
    if (!j.at("evidence").is_null()) {
        const Json& e = j.at("evidence");
        r.evidence = HopfEvidence{e.at("offset").get<double>(), side_from(e.at("minus")), side_from(e.at("plus")),
                                  e.at("consistent").get<bool>()};
    }
    return r;
}

Json to_json(const BTReport& r) {
    Json stages = Json::array();
    for (const ChainStage& s : r.stages) {
        Json coeffs = Json::object();
        for (const NamedValue& c : s.coefficients) coeffs[c.name] = c.value;
        stages.push_back({{"name", s.name}, {"coefficients", coeffs}});
    }
    return Json{{"q", r.q},
                {"m", r.m},
                {"h3", r.h3},
                {"s1", r.s1},
                {"center", state_json(r.center)},
                {"eta1", r.eta1},
                {"eta2", r.eta2},
                {"stages", stages},
                {"l00", r.l00},
                {"l01", r.l01},
                {"f20_sign", r.f20_sign},
                {"jacobian", r.jacobian},
                {"j_unfold", r.j_unfold}};
}

BTReport bt_from_json(const Json& j) {
    BTReport r;
    r.q = j.at("q");
    r.m = j.at("m");
    r.h3 = j.at("h3");
    r.s1 = j.at("s1");
    r.center = state_from(j.at("center"));
    r.eta1 = j.at("eta1");
    r.eta2 = j.at("eta2");
    for (const Json& s : j.at("stages")) {
        ChainStage st{s.at("name").get<std::string>(), {}};
        for (const auto& [k, v] : s.at("coefficients").items()) st.coefficients.push_back({k, v.get<double>()});
        r.stages.push_back(std::move(st));
    }
    r.l00 = j.at("l00");
    r.l01 = j.at("l01");
    r.f20_sign = j.at("f20_sign");
    r.jacobian = j.at("jacobian").get<std::array<double, 4>>();
    r.j_unfold = j.at("j_unfold");
    return r;
}

Json to_json(const std::vector<StageCheck>& checks) {
    Json arr = Json::array();
    for (const StageCheck& c : checks)
        arr.push_back({{"name", c.name}, {"residual", c.residual}, {"closed_form_gap", c.closed_form_gap}});
    return arr;
}

Json to_json(const std::vector<CensusCell>& cells) {
    Json arr = Json::array();
    for (const CensusCell& c : cells)
        arr.push_back({{"index", c.index},
                       {"eta1", c.eta1},
                       {"eta2", c.eta2},
                       {"equilibrium_count", c.equilibrium_count},
                       {"cycle_found", c.cycle_found},
                       {"regime", regime_name(c.regime)}});
    return arr;
}

Json to_json(const std::vector<PortraitTrajectory>& runs) {
    Json arr = Json::array();
    for (const PortraitTrajectory& r : runs) {
        Json samples = Json::array();
        for (const Sample& s : r.trajectory.samples) samples.push_back(Json::array({s.t, s.z.x, s.z.y}));
        arr.push_back({{"seed", r.seed},
                       {"seed_point", state_json(r.seed_point)},
                       {"direction", r.direction},
                       {"reason", termination_name(r.trajectory.reason)},
                       {"final_time", r.trajectory.final_time},
                       {"final_state", state_json(r.trajectory.final_state)},
                       {"samples", samples}});
    }
    return arr;
}

Json to_json(const std::vector<SweepAxis>& axes, const std::vector<SweepRow>& rows) {
    Json ax = Json::array();
    for (const SweepAxis& a : axes)
        ax.push_back({{"param", std::string(1, a.param)}, {"lo", a.lo}, {"hi", a.hi}, {"steps", a.steps}});
    Json arr = Json::array();
    for (const SweepRow& r : rows) {
        Json row{{"params", to_json(r.params)},
                 {"boundary", r.branch_counts[0]},
                 {"allee_line", r.branch_counts[1]},
                 {"diagonal", r.branch_counts[2]},
                 {"total", r.total},
                 {"kinds", r.kinds}};
        if (!r.error.empty()) row["error"] = r.error;
        arr.push_back(std::move(row));
    }
    return Json{{"axes", ax}, {"rows", arr}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ------------------------------------------------------------------- SVG

namespace {

constexpr double kWidth = 600, kHeight = 600, kMargin = 40;

struct Frame {
    double x0, x1, y0, y1;
    double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
    double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

std::string header() {
    return fmt::format(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
        "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
        kWidth, kHeight);
}

std::string axes(const Frame& f) {
    std::string out = fmt::format(
        "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\"><rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" "
        "height=\"{:.2f}\"/></g>\n",
        kMargin, kMargin, kWidth - 2 * kMargin, kHeight - 2 * kMargin);
    out += "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"black\">\n";
    for (int k = 0; k <= 4; ++k) {
        const double x = f.x0 + (f.x1 - f.x0) * k / 4, y = f.y0 + (f.y1 - f.y0) * k / 4;
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:.4g}</text>\n", f.px(x),
                           kHeight - kMargin + 14, x);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.4g}</text>\n", kMargin - 4,
                           f.py(y) + 3, y);
    }
    out += "</g>\n";
    return out;
}

const char* regime_colour(Regime r) {
    switch (r) {
    case Regime::NoEquilibrium: return "#dddddd";
    case Regime::Single: return "#999999";
    case Regime::SaddleStable: return "#4c72b0";
    case Regime::SaddleUnstable: return "#dd8452";
    case Regime::SaddleWeak: return "#8172b3";
    case Regime::Cycle: return "#c44e52";
    case Regime::Escape: return "#000000";
    case Regime::Other: return "#55a868";
    }
    return "black";
}

const char* count_colour(int n) {
    static const char* const palette[] = {"#f7fbff", "#c6dbef", "#6baed6", "#2171b5", "#08306b"};
    return palette[std::clamp(n, 0, 4)];
}

}  // namespace

std::string portrait_svg(const PortraitSpec& spec, const std::vector<PortraitTrajectory>& runs) {
    const Frame f{spec.x_lo, spec.x_hi, spec.y_lo, spec.y_hi};
    std::string out = header() + axes(f);
    out += "<g fill=\"none\" stroke-width=\"1\">\n";
    for (const PortraitTrajectory& r : runs) {
        out += fmt::format("<polyline stroke=\"{}\" points=\"", r.direction > 0 ? "#1f77b4" : "#d62728");
        bool first = true;
        for (const Sample& s : r.trajectory.samples) {
            const double x = std::clamp(s.z.x, f.x0, f.x1), y = std::clamp(s.z.y, f.y0, f.y1);
            out += fmt::format("{}{:.2f},{:.2f}", first ? "" : " ", f.px(x), f.py(y));
            first = false;
        }
        out += "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::string census_svg(const std::vector<double>& eta1, const std::vector<double>& eta2,
                       const std::vector<CensusCell>& cells) {
    const double dx = eta1.size() > 1 ? eta1[1] - eta1[0] : 1e-4, dy = eta2.size() > 1 ? eta2[1] - eta2[0] : 1e-4;
    const Frame f{eta1.front() - dx / 2, eta1.back() + dx / 2, eta2.front() - dy / 2, eta2.back() + dy / 2};
    std::string out = header() + axes(f);
    out += "<g stroke=\"none\">\n";
    for (const CensusCell& c : cells) {
        const double x = f.px(c.eta1 - dx / 2), y = f.py(c.eta2 + dy / 2);
        out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n", x, y,
                           f.px(c.eta1 + dx / 2) - x, f.py(c.eta2 - dy / 2) - y, regime_colour(c.regime));
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::string sweep_svg(const std::vector<SweepAxis>& axes_spec, const std::vector<SweepRow>& rows) {
    const SweepAxis& a = axes_spec.at(0);
    const SweepAxis b = axes_spec.size() > 1 ? axes_spec[1] : SweepAxis{'-', 0, 1, 1};
    const double dx = a.steps > 1 ? (a.hi - a.lo) / (a.steps - 1) : 1;
    const double dy = b.steps > 1 ? (b.hi - b.lo) / (b.steps - 1) : 1;
    const Frame f{a.lo - dx / 2, a.hi + dx / 2, b.lo - dy / 2, b.hi + dy / 2};
    std::string out = header() + axes(f);
    out += "<g stroke=\"none\">\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const int i = static_cast<int>(k / b.steps), j = static_cast<int>(k % b.steps);
        const double cx = a.lo + i * dx, cy = b.lo + j * dy;
        const double x = f.px(cx - dx / 2), y = f.py(cy + dy / 2);
        out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n", x, y,
                           f.px(cx + dx / 2) - x, f.py(cy - dy / 2) - y, count_colour(rows[k].total));
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace allee::io
