// qsz: exact doubling-measure, Zygmund-function, and quasisymmetric-graph
// audits on the 4-adic grid, with a Herglotz-based half-plane extension.

#include "qsz/graphkit.hpp"
#include "qsz/halfplane.hpp"
#include "qsz/measure.hpp"
#include "qsz/report.hpp"
#include "qsz/variation.hpp"
#include "qsz/zygmund.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace qsz;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AssertFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Gamma parse_gamma(const std::string& s) {
    long long p = 0, q = 1;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            p = std::stoll(s);
        } else {
            p = std::stoll(s.substr(0, slash));
            q = std::stoll(s.substr(slash + 1));
        }
        return Gamma(p, q);
    } catch (const std::exception&) {
        throw ConfigError("--gamma: expected a rational p/q with 0 <= p/q < 1, got '" + s + "'");
    }
}

BigRat parse_rational(const std::string& flag, const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return BigRat(BigInt(s));
        return BigRat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ConfigError(flag + ": expected a rational p/q, got '" + s + "'");
    }
}

QuadicRational parse_quadic(const std::string& flag, const std::string& s) {
    auto r = QuadicRational::from_fraction(parse_rational(flag, s));
    if (!r)
        throw ConfigError(flag + ": '" + s +
                          "' is not a 4-adic rational (denominator must be a power of two)");
    return *r;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<double> parse_doubles(const std::string& flag, const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError(flag + ": bad number '" + item + "'");
        }
    }
    return out;
}

void emit(const CsvTable& table, const std::string& out_path) {
    if (out_path.empty())
        std::fputs(table.to_string().c_str(), stdout);
    else
        table.write(out_path);
}

void require_audit(bool ok, bool assert_mode, const std::string& what) {
    if (ok) return;
    if (assert_mode) throw AssertFailure(what);
    std::cout << "audit violation (not fatal without --assert): " << what << "\n";
}

std::string interval_str(const QuadicRational& lo, const QuadicRational& hi) {
    return "[" + lo.str() + "," + hi.str() + ")";
}

struct CommonOpts {
    std::string gamma = "1/2";
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 1;
    bool assert_mode = false;
    bool slow = false;
};

int run_measure_audit(const CommonOpts& c, int depth, const std::string& wlo,
                      const std::string& whi) {
    RieszMeasure meas{parse_gamma(c.gamma)};
    QuadicRational lo = parse_quadic("--window-lo", wlo), hi = parse_quadic("--window-hi", whi);
    CsvTable t;
    t.header = {"depth", "delta_hat", "witness_I", "witness_J"};
    std::vector<SvgSeries> series{{"delta_hat", {}}};
    BigRat prev = -1;
    bool monotone = true;
    for (int d = 1; d <= depth; ++d) {
        auto audit = doubling_audit(meas, d, lo, hi);
        t.rows.push_back({std::to_string(d), rat_str(audit.delta_hat),
                          interval_str(audit.i_lo, audit.i_hi),
                          interval_str(audit.j_lo, audit.j_hi)});
        series[0].points.push_back({double(d), to_double(audit.delta_hat)});
        if (audit.delta_hat < prev) monotone = false;
        prev = audit.delta_hat;
        std::cout << "depth " << d << ": delta_hat = " << rat_str(audit.delta_hat) << " = "
                  << to_double(audit.delta_hat) << "\n";
    }
    if (c.format == "svg")
        write_file(c.out, svg_plot(series, "doubling ratio audit, gamma = " + c.gamma, "depth",
                                   "delta_hat"));
    else
        emit(t, c.out);
    require_audit(monotone, c.assert_mode, "delta_hat must be nondecreasing in depth");
    return 0;
}

int run_growth_check(const CommonOpts& c, double gamma_prime, int depth, int tmax_pow) {
    RieszMeasure meas{parse_gamma(c.gamma)};
    std::vector<QuadicRational> grid;
    for (long long j = 1; j <= (4LL << (2 * depth)); ++j) grid.emplace_back(j, depth);
    for (int k = 2; k <= tmax_pow; ++k) grid.emplace_back(1LL << (2 * k), 0);
    auto rep = growth_envelope_check(meas, gamma_prime, grid);
    CsvTable t;
    t.header = {"t", "mu_hat", "lower", "upper", "slack"};
    std::vector<SvgSeries> series{{"mu_hat", {}}, {"lower", {}}, {"upper", {}}};
    for (const auto& row : rep.rows) {
        t.rows.push_back({row.t.str(), fmt_double(row.mu_hat), fmt_double(row.lower),
                          fmt_double(row.upper), fmt_double(row.slack)});
        double lx = std::log(row.t.to_double()) / std::log(4.0);
        series[0].points.push_back({lx, row.mu_hat});
        series[1].points.push_back({lx, row.lower});
        series[2].points.push_back({lx, row.upper});
    }
    std::cout << "min slack = " << rep.min_slack;
    if (rep.worst_t) std::cout << " at t = " << rep.worst_t->str();
    std::cout << (rep.ok ? " (envelope holds)" : " (envelope VIOLATED)") << "\n";
    if (c.format == "svg")
        write_file(c.out, svg_plot(series, "growth envelope, gamma = " + c.gamma, "log4 t",
                                   "normalized mass"));
    else
        emit(t, c.out);
    require_audit(rep.ok, c.assert_mode, "growth envelope violated");
    return 0;
}

int run_g_eval(const CommonOpts& c, const std::string& points, int grid_depth,
               const std::string& enclose, int tail_depth) {
    ZygmundG zg(parse_gamma(c.gamma), tail_depth);
    CsvTable t;
    std::vector<SvgSeries> series{{"g", {}}};
    if (!enclose.empty()) {
        double x = 0;
        try {
            x = std::stod(enclose);
        } catch (const std::exception&) {
            throw ConfigError("--enclose: bad number '" + enclose + "'");
        }
        auto e = zg.eval_enclosure(x);
        t.header = {"x", "lo", "mid", "hi", "width"};
        t.rows.push_back({fmt_double(x), fmt_double(to_double(e.lo)),
                          fmt_double(to_double(e.mid())), fmt_double(to_double(e.hi)),
                          fmt_double(to_double(e.width()))});
        std::cout << "g(" << x << ") in [" << to_double(e.lo) << ", " << to_double(e.hi) << "]\n";
        if (c.format == "svg") throw ConfigError("--format svg needs a grid, not --enclose");
        emit(t, c.out);
        return 0;
    }
    t.header = {"x", "g"};
    if (!points.empty()) {
        for (const auto& s : split_list(points)) {
            QuadicRational x = parse_quadic("--points", s);
            BigRat v = zg.eval(x);
            t.rows.push_back({x.str(), rat_str(v)});
            series[0].points.push_back({x.to_double(), to_double(v)});
        }
    } else {
        for (long long j = 0; j <= (1LL << (2 * grid_depth)); ++j) {
            QuadicRational x(j, grid_depth);
            BigRat v = zg.eval(x);
            t.rows.push_back({x.str(), rat_str(v)});
            series[0].points.push_back({x.to_double(), to_double(v)});
        }
    }
    if (c.format == "svg")
        write_file(c.out,
                   svg_plot(series, "g on the 4-adic grid, gamma = " + c.gamma, "x", "g(x)"));
    else
        emit(t, c.out);
    return 0;
}

int run_seminorm(const CommonOpts& c, std::size_t budget, int exhaustive_depth, int random_level) {
    Gamma g = parse_gamma(c.gamma);
    ZygmundG zg(g);
    RieszMeasure meas{g};
    auto g_fn = [&](const QuadicRational& x) { return zg.eval(x); };
    auto samples = make_seminorm_samples(exhaustive_depth, budget, c.seed, random_level);
    std::vector<SecondDiffSample> tenth(samples.begin(), samples.begin() + samples.size() / 10);
    auto small = second_difference_ratio(g_fn, meas, tenth);
    auto full = second_difference_ratio(g_fn, meas, samples);
    CsvTable t;
    t.header = {"samples", "sup_ratio", "witness_x", "witness_h"};
    t.rows.push_back({std::to_string(tenth.size()), rat_str(small.sup_ratio),
                      small.witness_x.str(), small.witness_h.str()});
    t.rows.push_back({std::to_string(samples.size()), rat_str(full.sup_ratio),
                      full.witness_x.str(), full.witness_h.str()});
    std::cout << "sup ratio at " << tenth.size() << " samples: " << to_double(small.sup_ratio)
              << "; at " << samples.size() << ": " << to_double(full.sup_ratio) << "\n";
    if (c.format == "svg") throw ConfigError("seminorm has no svg output");
    emit(t, c.out);
    require_audit(full.sup_ratio <= BigRat(3, 2) * small.sup_ratio, c.assert_mode,
                  "seminorm estimate unstable: full budget > 1.5x tenth budget");
    return 0;
}

int run_variation(const CommonOpts& c, const std::string& q_list, int m_max) {
    Gamma g = parse_gamma(c.gamma);
    std::vector<double> qs = parse_doubles("--q", q_list);
    ZygmundG zg(g);
    auto rows = quadic_variation_series(zg, qs, m_max, c.slow);
    CsvTable t;
    t.header = {"m", "S_m", "maxint_m"};
    for (double q : qs) t.header.push_back("V_m[q=" + fmt_double(q) + "]");
    std::vector<SvgSeries> series;
    for (double q : qs) series.push_back({"q=" + fmt_double(q), {}});
    bool chain_ok = true;
    for (const auto& row : rows) {
        BigRat maxint = max_weight_integral(g, row.m, c.slow);
        std::vector<std::string> cells{std::to_string(row.m), rat_str(row.S), rat_str(maxint)};
        for (std::size_t i = 0; i < qs.size(); ++i) {
            cells.push_back(fmt_double(row.V[i]));
            series[i].points.push_back({double(row.m), row.V[i]});
        }
        t.rows.push_back(std::move(cells));
        if (row.S < maxint / 4) chain_ok = false;
        std::cout << "m=" << row.m << " S=" << to_double(row.S) << " maxint=" << to_double(maxint)
                  << "\n";
    }
    if (c.format == "svg")
        write_file(c.out,
                   svg_plot(series, "gauge variation sums, gamma = " + c.gamma, "m", "V_m"));
    else
        emit(t, c.out);
    require_audit(chain_ok, c.assert_mode, "S_m >= maxint_m / 4 failed");
    return 0;
}

int run_maxint(const CommonOpts& c, int m_max) {
    Gamma g = parse_gamma(c.gamma);
    CsvTable t;
    t.header = {"m", "integral"};
    std::vector<SvgSeries> series{{"integral", {}}};
    BigRat prev = 0;
    bool increasing = true;
    for (int m = 1; m <= m_max; ++m) {
        BigRat v = max_weight_integral(g, m, c.slow);
        t.rows.push_back({std::to_string(m), rat_str(v)});
        series[0].points.push_back({double(m), to_double(v)});
        if (!(v > prev)) increasing = false;
        prev = v;
    }
    if (c.format == "svg")
        write_file(c.out, svg_plot(series, "running-max weight integrals, gamma = " + c.gamma, "m",
                                   "integral"));
    else
        emit(t, c.out);
    require_audit(increasing || g.is_zero(), c.assert_mode,
                  "integral of the running max must increase strictly");
    return 0;
}

int run_graph_audit(const CommonOpts& c, const std::string& vscale, int depth, std::size_t budget,
                    const std::string& wlo, const std::string& whi) {
    Gamma g = parse_gamma(c.gamma);
    BigRat sv = parse_rational("--vscale", vscale);
    GraphCurve curve =
        build_graph(RieszMeasure{g}, ZygmundG(g), sv, depth, parse_quadic("--window-lo", wlo),
                    parse_quadic("--window-hi", whi));
    auto w = weak_qs_constant(curve, budget, c.seed);
    auto e = eta_modulus(curve, 4, budget, c.seed);
    auto a = ahlfors_constant(curve, budget / 16 + 64, c.seed);
    auto f = affine_deviation_audit(curve, budget / 16 + 64, c.seed);
    CsvTable t;
    t.header = {"metric", "value"};
    t.rows.push_back({"H_hat", fmt_double(w.H_hat)});
    t.rows.push_back({"s_hat", fmt_double(e.s_hat)});
    t.rows.push_back({"K_hat", fmt_double(a.K_hat)});
    t.rows.push_back({"K_affine", fmt_double(f.K_total)});
    t.rows.push_back({"K_affine_u", fmt_double(f.K_u)});
    t.rows.push_back({"K_affine_v", fmt_double(f.K_v)});
    t.rows.push_back({"triples", std::to_string(w.triples)});
    t.rows.push_back({"eta_raw_violations", std::to_string(e.raw_violations)});
    std::cout << "H_hat = " << w.H_hat << ", s_hat = " << e.s_hat << ", K_hat = " << a.K_hat
              << ", K_affine = " << f.K_total << "\n";
    if (c.format == "svg") {
        std::vector<SvgSeries> series{{"eta_monotone", {}}, {"t", {}}};
        for (const auto& bin : e.bins) {
            double lx = std::log(bin.t_hi) / std::log(4.0);
            series[0].points.push_back({lx, bin.eta_monotone});
            series[1].points.push_back({lx, bin.t_hi});
        }
        write_file(c.out, svg_plot(series,
                                   "empirical modulus, gamma = " + c.gamma + " vscale = " + vscale,
                                   "log4 t", "eta(t)"));
    } else {
        emit(t, c.out);
    }
    require_audit(w.H_hat >= 1 && a.K_hat >= 1, c.assert_mode,
                  "H_hat and K_hat must be at least 1");
    return 0;
}

int run_halfplane_audit(const CommonOpts& c, int depth, const std::string& xspec,
                        const std::string& ylist) {
    Gamma g = parse_gamma(c.gamma);
    HerglotzMap h(RieszMeasure{g}, depth);
    auto xs = parse_doubles("--x", xspec);
    if (xs.size() != 3 || xs[0] >= xs[1] || xs[2] <= 0)
        throw ConfigError("--x: expected 'min,max,step' with min < max, step > 0");
    auto ys = parse_doubles("--y", ylist);
    for (double y : ys)
        if (y <= 0) throw ConfigError("--y: heights must be positive");
    CsvTable t;
    t.header = {"x", "y", "re_fprime", "abs_fsecond", "kernel_ratio", "reduced_ratio",
                "tail_bound"};
    std::vector<SvgSeries> series;
    double worst_reduced = 0;
    bool positive = true;
    for (double y : ys) {
        series.push_back({"y=" + fmt_double(y), {}});
        for (double x = xs[0]; x <= xs[1] + 1e-12; x += xs[2]) {
            Complex z(x, y);
            auto kr = h.kernel_ratio(z);
            double re = h.re_f_prime(z);
            double f2 = std::abs(h.f_second(z));
            double red = 2 * kr.ratio;
            worst_reduced = std::max(worst_reduced, red);
            positive = positive && re > 0;
            t.rows.push_back({fmt_double(x), fmt_double(y), fmt_double(re), fmt_double(f2),
                              fmt_double(kr.ratio), fmt_double(red), fmt_double(kr.tail_bound)});
            series.back().points.push_back({x, red});
        }
    }
    std::cout << "max reduced ratio over the grid: " << worst_reduced << "\n";
    if (c.format == "svg")
        write_file(c.out, svg_plot(series, "reduced-dilatation audit, gamma = " + c.gamma, "x",
                                   "2 Im z |f''| / Re f'"));
    else
        emit(t, c.out);
    require_audit(positive, c.assert_mode, "Re f' must be positive on the grid");
    require_audit(worst_reduced < 1, c.assert_mode, "reduced ratio reached 1 on the grid");
    return 0;
}

int run_trace_check(const CommonOpts& c, int depth, const std::string& a_str,
                    const std::string& b_str, double tol) {
    Gamma g = parse_gamma(c.gamma);
    HerglotzMap h(RieszMeasure{g}, depth);
    QuadicRational a = parse_quadic("--a", a_str), b = parse_quadic("--b", b_str);
    auto r = h.trace_consistency(a, b);
    CsvTable t;
    t.header = {"a", "b", "re_F_diff", "mu", "residual", "height", "tolerance"};
    t.rows.push_back({a.str(), b.str(), fmt_double(r.lhs), rat_str(r.mu), fmt_double(r.residual),
                      fmt_double(r.height), fmt_double(tol)});
    std::cout << "Re(F(b)-F(a)) = " << r.lhs << " vs mu = " << to_double(r.mu)
              << ", residual = " << r.residual << "\n";
    if (c.format == "svg") throw ConfigError("trace-check has no svg output");
    emit(t, c.out);
    require_audit(r.residual < tol, c.assert_mode, "trace residual exceeded tolerance");
    return 0;
}

int run_lipschitz_check(const CommonOpts& c, const std::string& L_str, const std::string& slopes) {
    BigRat L = parse_rational("--L", L_str);
    std::vector<BigRat> ss;
    for (const auto& s : split_list(slopes)) ss.push_back(parse_rational("--slopes", s));
    auto rep = lipschitz_delta_check(L, ss);
    CsvTable t;
    t.header = {"L", "slope", "re_fz", "fzbar_sq", "abs_fzbar", "ratio", "k"};
    for (const auto& row : rep.rows)
        t.rows.push_back({rat_str(rep.L), rat_str(row.slope), rat_str(rep.re_fz),
                          rat_str(row.fzbar_sq), fmt_double(row.abs_fzbar), fmt_double(row.ratio),
                          fmt_double(rep.k)});
    std::cout << "Re f_z = " << rat_str(rep.re_fz) << ", k(L) = " << rep.k
              << ", max ratio = " << rep.max_ratio << "\n";
    if (c.format == "svg") throw ConfigError("lipschitz-check has no svg output");
    emit(t, c.out);
    require_audit(rep.ok, c.assert_mode, "Wirtinger ratio exceeded k(L) or k(L) >= 1");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qsz: exact audits for a 4-adic doubling measure, its Zygmund-type function,\n"
                 "the induced plane graph, and the Herglotz half-plane extension"};
    app.require_subcommand(1);

    CommonOpts c;
    auto add_common = [&](CLI::App* sub, bool with_seed = true) {
        sub->add_option("--gamma", c.gamma, "measure parameter p/q in [0,1)")
            ->capture_default_str();
        sub->add_option("--out", c.out, "output path (stdout when omitted)");
        sub->add_option("--format", c.format, "csv or svg")
            ->check(CLI::IsMember({"csv", "svg"}))
            ->capture_default_str();
        if (with_seed) sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
        sub->add_flag("--assert", c.assert_mode, "exit 1 when an audited inequality fails");
        sub->add_flag("--slow", c.slow, "lift the resource guards to their hard caps");
    };

    auto* ma = app.add_subcommand(
        "measure-audit", "max mu(I)/mu(J) over adjacent equal-length grid intervals, per depth");
    int ma_depth = 4;
    std::string ma_lo = "-1", ma_hi = "2";
    add_common(ma, false);
    ma->add_option("--depth", ma_depth, "finest grid depth")->capture_default_str();
    ma->add_option("--window-lo", ma_lo, "window left endpoint (4-adic)")->capture_default_str();
    ma->add_option("--window-hi", ma_hi, "window right endpoint (4-adic)")->capture_default_str();

    auto* gc = app.add_subcommand("growth-check",
                                  "mass of [-t,t] against the doubling growth/decay envelope");
    double gc_gp = 0.9;
    int gc_depth = 4, gc_tmax = 5;
    add_common(gc, false);
    gc->add_option("--gamma-prime", gc_gp, "envelope exponent in (0,1)")->capture_default_str();
    gc->add_option("--depth", gc_depth, "t-grid depth")->capture_default_str();
    gc->add_option("--tmax-pow", gc_tmax, "largest power 4^k in the t grid")->capture_default_str();

    auto* ge = app.add_subcommand("g-eval",
                                  "exact values of g on 4-adic points, or a rigorous enclosure");
    std::string ge_points, ge_enclose;
    int ge_grid = 3, ge_tail = 6;
    add_common(ge, false);
    ge->add_option("--points", ge_points, "comma-separated 4-adic rationals");
    ge->add_option("--grid-depth", ge_grid, "evaluate on the full level-d grid of [0,1]")
        ->capture_default_str();
    ge->add_option("--enclose", ge_enclose, "real x: return the tail enclosure instead");
    ge->add_option("--tail-depth", ge_tail, "partial-sum depth for enclosures")
        ->capture_default_str();

    auto* sn = app.add_subcommand(
        "seminorm", "sup |g(x+h)-2g(x)+g(x-h)| / mu([x-h,x+h]) over mixed samples");
    std::size_t sn_budget = 100000;
    int sn_exh = 6, sn_lvl = 8;
    add_common(sn);
    sn->add_option("--budget", sn_budget, "total sample count")->capture_default_str();
    sn->add_option("--exhaustive-depth", sn_exh, "exhaustive grid depth")->capture_default_str();
    sn->add_option("--random-level", sn_lvl, "grid level of the random samples")
        ->capture_default_str();

    auto* va = app.add_subcommand("variation",
                                  "exact increment sums and gauge sums over level-2m partitions");
    std::string va_q = "0.5,1.5";
    int va_mmax = 4;
    add_common(va, false);
    va->add_option("--q", va_q, "comma-separated gauge exponents")->capture_default_str();
    va->add_option("--mmax", va_mmax, "deepest partition half-level m")->capture_default_str();

    auto* mi =
        app.add_subcommand("maxint", "exact integral of the running maximum of the weights");
    int mi_mmax = 6;
    add_common(mi, false);
    mi->add_option("--mmax", mi_mmax, "deepest m")->capture_default_str();

    auto* ga = app.add_subcommand(
        "graph-audit",
        "triple-distance, modulus, diameter, and affine-deviation audits of the graph");
    std::string ga_vscale = "1", ga_lo = "-1", ga_hi = "2";
    int ga_depth = 4;
    std::size_t ga_budget = 100000;
    add_common(ga);
    ga->add_option("--vscale", ga_vscale, "vertical scale (rational)")->capture_default_str();
    ga->add_option("--depth", ga_depth, "sample grid level (<= 6)")->capture_default_str();
    ga->add_option("--budget", ga_budget, "triple budget")->capture_default_str();
    ga->add_option("--window-lo", ga_lo, "window left endpoint")->capture_default_str();
    ga->add_option("--window-hi", ga_hi, "window right endpoint")->capture_default_str();

    auto* hp = app.add_subcommand(
        "halfplane-audit", "Re f' positivity and the reduced ratio 2 Im z |f''| / Re f' on a grid");
    int hp_depth = 3;
    std::string hp_x = "-2,2,0.125", hp_y = "0.015625,0.0625,0.25,1,4";
    add_common(hp, false);
    hp->add_option("--depth", hp_depth, "density depth (window 4^depth)")->capture_default_str();
    hp->add_option("--x", hp_x, "grid min,max,step")->capture_default_str();
    hp->add_option("--y", hp_y, "comma-separated heights")->capture_default_str();

    auto* tc = app.add_subcommand(
        "trace-check", "Re(F(b)-F(a)) near the boundary against the exact mass of [a,b]");
    int tc_depth = 3;
    std::string tc_a = "0", tc_b = "1/4";
    double tc_tol = 1e-2;
    add_common(tc, false);
    tc->add_option("--depth", tc_depth, "density depth")->capture_default_str();
    tc->add_option("--a", tc_a, "left endpoint (4-adic)")->capture_default_str();
    tc->add_option("--b", tc_b, "right endpoint (4-adic)")->capture_default_str();
    tc->add_option("--tol", tc_tol, "residual tolerance")->capture_default_str();

    auto* lc = app.add_subcommand(
        "lipschitz-check", "Wirtinger ratio of the shear map built from a Lipschitz slope bound");
    std::string lc_L = "2", lc_slopes = "2,-2,0";
    add_common(lc, false);
    lc->add_option("--L", lc_L, "Lipschitz bound (rational)")->capture_default_str();
    lc->add_option("--slopes", lc_slopes, "comma-separated slope samples")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (ma->parsed()) return run_measure_audit(c, ma_depth, ma_lo, ma_hi);
        if (gc->parsed()) return run_growth_check(c, gc_gp, gc_depth, gc_tmax);
        if (ge->parsed()) return run_g_eval(c, ge_points, ge_grid, ge_enclose, ge_tail);
        if (sn->parsed()) return run_seminorm(c, sn_budget, sn_exh, sn_lvl);
        if (va->parsed()) return run_variation(c, va_q, va_mmax);
        if (mi->parsed()) return run_maxint(c, mi_mmax);
        if (ga->parsed()) return run_graph_audit(c, ga_vscale, ga_depth, ga_budget, ga_lo, ga_hi);
        if (hp->parsed()) return run_halfplane_audit(c, hp_depth, hp_x, hp_y);
        if (tc->parsed()) return run_trace_check(c, tc_depth, tc_a, tc_b, tc_tol);
        if (lc->parsed()) return run_lipschitz_check(c, lc_L, lc_slopes);
    } catch (const AssertFailure& e) {
        std::cerr << "audit failed: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
