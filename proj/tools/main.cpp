// Command-line front end: separator construction, the approximation loop,
// verification sweeps and plot-ready CSV export.
//
// Exit codes: 0 success, 2 validation or parse error, 1 internal contract
// failure, 3 non-convergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <squashnet/activation.hpp>
#include <squashnet/approximator.hpp>
#include <squashnet/domain.hpp>
#include <squashnet/network.hpp>
#include <squashnet/separation.hpp>

namespace {

using namespace squashnet;

constexpr int kExitOk = 0;
constexpr int kExitContractFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument{""};
        }
        return v;
    } catch (const std::exception&) {
        throw InvalidInputError("cannot parse " + what + ": '" + text + "'");
    }
}

Point parse_point(const std::string& spec) {
    Point p;
    for (const std::string& field : split(spec, ',')) {
        p.push_back(parse_number(field, "coordinate"));
    }
    return p;
}

/// Domain spec: lo,hi,res per axis, axes separated by ';'.
GridDomain parse_domain(const std::string& spec) {
    Point lower, upper;
    std::vector<int> res;
    for (const std::string& group : split(spec, ';')) {
        auto fields = split(group, ',');
        if (fields.size() != 3) {
            throw InvalidInputError("domain spec: each axis needs lo,hi,res — got '" + group +
                                    "'");
        }
        lower.push_back(parse_number(fields[0], "domain lower bound"));
        upper.push_back(parse_number(fields[1], "domain upper bound"));
        double r = parse_number(fields[2], "domain resolution");
        if (r != std::floor(r) || r < 2 || r > 1e9) {
            throw InvalidInputError("domain spec: resolution must be an integer >= 2");
        }
        res.push_back(static_cast<int>(r));
    }
    return GridDomain(std::move(lower), std::move(upper), std::move(res));
}

/// Sigma spec: logistic | tanh | ramp:lo,hi | table:path.
SquashingFunction parse_sigma(const std::string& spec) {
    if (spec == "logistic") {
        return SquashingFunction::logistic();
    }
    if (spec == "tanh") {
        return SquashingFunction::tanh_rescaled();
    }
    if (spec.rfind("ramp:", 0) == 0) {
        auto fields = split(spec.substr(5), ',');
        if (fields.size() != 2) {
            throw InvalidInputError("sigma spec: ramp needs 'ramp:lo,hi'");
        }
        return SquashingFunction::ramp(parse_number(fields[0], "ramp lo"),
                                       parse_number(fields[1], "ramp hi"));
    }
    if (spec.rfind("table:", 0) == 0) {
        return SquashingFunction::from_table_csv(spec.substr(6));
    }
    throw InvalidInputError("sigma spec: expected logistic | tanh | ramp:lo,hi | table:path, got '" +
                            spec + "'");
}

/// Target spec: constant:v | proj:axis | sin2pix | sinprod:sin@f,cos@f,... |
/// gauss:c1,..,cn:width | maxcoord | csv:path.
TargetFunction parse_target(const std::string& spec) {
    if (spec == "sin2pix") {
        return TargetFunction::sinusoid_product({SinusoidMode{false, 1.0}});
    }
    if (spec == "maxcoord") {
        return TargetFunction::max_of_coordinates();
    }
    if (spec.rfind("constant:", 0) == 0) {
        return TargetFunction::constant(parse_number(spec.substr(9), "constant target value"));
    }
    if (spec.rfind("proj:", 0) == 0) {
        double axis = parse_number(spec.substr(5), "projection axis");
        if (axis != std::floor(axis) || axis < 0) {
            throw InvalidInputError("target spec: projection axis must be a non-negative integer");
        }
        return TargetFunction::projection(static_cast<int>(axis));
    }
    if (spec.rfind("sinprod:", 0) == 0) {
        std::vector<SinusoidMode> modes;
        for (const std::string& field : split(spec.substr(8), ',')) {
            auto parts = split(field, '@');
            if (parts.size() != 2 || (parts[0] != "sin" && parts[0] != "cos")) {
                throw InvalidInputError(
                    "target spec: sinprod modes are sin@FREQ or cos@FREQ, got '" + field + "'");
            }
            modes.push_back(SinusoidMode{parts[0] == "cos",
                                         parse_number(parts[1], "sinusoid frequency")});
        }
        return TargetFunction::sinusoid_product(std::move(modes));
    }
    if (spec.rfind("gauss:", 0) == 0) {
        auto parts = split(spec.substr(6), ':');
        if (parts.size() != 2) {
            throw InvalidInputError("target spec: gauss needs 'gauss:c1,..,cn:width'");
        }
        return TargetFunction::gaussian_bump(parse_point(parts[0]),
                                             parse_number(parts[1], "gaussian width"));
    }
    if (spec.rfind("csv:", 0) == 0) {
        return load_target_csv(spec.substr(4));
    }
    throw InvalidInputError("target spec: unknown target '" + spec + "'");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidInputError("cannot open file for writing: " + path);
    }
    out << text;
    if (!out) {
        throw InvalidInputError("failed writing file: " + path);
    }
}

std::string coordinate_header(int dim) {
    std::string header;
    for (int i = 0; i < dim; ++i) {
        header += "x" + std::to_string(i) + ",";
    }
    return header;
}

// ---------------------------------------------------------------------------
// separate-points
// ---------------------------------------------------------------------------

struct SeparatePointsArgs {
    double x0 = 0.0;
    double x1 = 0.0;
    double eps = 0.0;
    std::string sigma = "logistic";
    bool check_sides = false;
    std::string probe_csv;
    double probe_lo = std::numeric_limits<double>::quiet_NaN();
    double probe_hi = std::numeric_limits<double>::quiet_NaN();
    int probe_count = 201;
};

int run_separate_points(const SeparatePointsArgs& args) {
    SquashingFunction sigma = parse_sigma(args.sigma);
    ScalarGate gate = separate_scalar_points(sigma, args.x0, args.x1, args.eps);
    const double v0 = sigma.value(gate.s + gate.t * args.x0);
    const double v1 = sigma.value(gate.s + gate.t * args.x1);
    std::cout << "s = " << fmt_full(gate.s) << "\n";
    std::cout << "t = " << fmt_full(gate.t) << "\n";
    std::cout << "sigma(s + t*x0) = " << fmt(v0) << "\n";
    std::cout << "sigma(s + t*x1) = " << fmt(v1) << "\n";

    if (args.check_sides) {
        if (!(args.eps < 0.5)) {
            std::cerr << "warning: monotone side conditions need eps < 1/2; skipping side check\n";
        } else if (!(args.x0 < args.x1)) {
            std::cerr << "warning: monotone side conditions apply when x0 < x1; skipping side "
                         "check\n";
        } else {
            const double span = std::max(1.0, args.x1 - args.x0);
            bool ok = true;
            for (int i = 0; i < 50 && ok; ++i) {
                double below = args.x0 - span * i / 49.0;
                double above = args.x1 + span * i / 49.0;
                ok = sigma.value(gate.s + gate.t * below) < args.eps &&
                     sigma.value(gate.s + gate.t * above) > 1.0 - args.eps;
            }
            std::cout << "side conditions at 50 probes per side: " << (ok ? "hold" : "VIOLATED")
                      << "\n";
            if (!ok) {
                throw ConstructionError("separate-points: side conditions violated");
            }
        }
    }

    if (!args.probe_csv.empty()) {
        double lo = args.probe_lo;
        double hi = args.probe_hi;
        if (std::isnan(lo) || std::isnan(hi)) {
            const double width = std::max(1.0, std::abs(args.x1 - args.x0));
            lo = std::min(args.x0, args.x1) - width;
            hi = std::max(args.x0, args.x1) + width;
        }
        if (!(lo < hi) || args.probe_count < 2) {
            throw InvalidInputError("separate-points: probe range needs lo < hi and count >= 2");
        }
        std::string csv = "x,sigma\n";
        for (int i = 0; i < args.probe_count; ++i) {
            double x = lo + (hi - lo) * i / (args.probe_count - 1);
            csv += fmt_full(x) + "," + fmt_full(sigma.value(gate.s + gate.t * x)) + "\n";
        }
        write_text_file(args.probe_csv, csv);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// separate-point-set / separate-sets
// ---------------------------------------------------------------------------

struct SeparatePointSetArgs {
    std::string x0;
    std::string set_path;
    double eps = 0.0;
    std::string domain;
    std::string sigma = "logistic";
    std::string out;
};

int run_separate_point_set(const SeparatePointSetArgs& args) {
    GridDomain domain = parse_domain(args.domain);
    SquashingFunction sigma = parse_sigma(args.sigma);
    Point x0 = parse_point(args.x0);
    PointSet b_set = load_set_csv(args.set_path, domain);
    LayeredNetwork g = separate_point_from_set(x0, b_set, args.eps, sigma);

    double min_b = 1.0 / 0.0;
    for (const Point& p : b_set.points()) {
        min_b = std::min(min_b, g.evaluate(p));
    }
    NetworkStats st = stats(g);
    std::cout << "g(x0) = " << fmt(g.evaluate(x0)) << "\n";
    std::cout << "min over set of g = " << fmt(min_b) << "\n";
    std::cout << "cover size = " << st.widths.front() << "\n";
    if (!args.out.empty()) {
        g.save(args.out);
        std::cout << "network written to " << args.out << "\n";
    }
    return kExitOk;
}

struct SeparateSetsArgs {
    std::string set_a;
    std::string set_b;
    double eps = 0.0;
    std::string domain;
    std::string sigma = "logistic";
    std::string out;
};

int run_separate_sets(const SeparateSetsArgs& args) {
    GridDomain domain = parse_domain(args.domain);
    SquashingFunction sigma = parse_sigma(args.sigma);
    PointSet a_set = load_set_csv(args.set_a, domain);
    PointSet b_set = load_set_csv(args.set_b, domain);
    LayeredNetwork h = separate_sets_squashed(a_set, b_set, args.eps, sigma);

    double min_a = 1.0 / 0.0;
    double max_b = -1.0 / 0.0;
    for (const Point& p : a_set.points()) {
        min_a = std::min(min_a, h.evaluate(p));
    }
    for (const Point& p : b_set.points()) {
        max_b = std::max(max_b, h.evaluate(p));
    }
    if (a_set.empty()) {
        std::cout << "A empty: constant separator\n";
    } else {
        std::cout << "min over A of H = " << fmt(min_a) << "\n";
    }
    if (b_set.empty()) {
        std::cout << "B empty: constant separator\n";
    } else {
        std::cout << "max over B of H = " << fmt(max_b) << "\n";
    }
    if (!args.out.empty()) {
        h.save(args.out);
        std::cout << "network written to " << args.out << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// approximate
// ---------------------------------------------------------------------------

struct ApproximateArgs {
    std::string target;
    std::string domain;
    double eps = 0.0;
    double beta = 0.8;
    int max_iterations = 200;
    std::string sigma = "logistic";
    std::string out;
    std::string trace;
};

int run_approximate(const ApproximateArgs& args) {
    GridDomain domain = parse_domain(args.domain);
    SquashingFunction sigma = parse_sigma(args.sigma);
    TargetFunction target = parse_target(args.target);
    try {
        ApproximationResult result =
            approximate(target, domain, args.eps, sigma, args.beta, args.max_iterations);
        const double final_error = result.trace.iterations.empty()
                                       ? sup_error(result.network, target, domain)
                                       : result.trace.iterations.back().error_after;
        std::cout << "iterations = " << result.trace.iterations.size() << "\n";
        std::cout << "final grid sup error = " << fmt(final_error) << "\n";
        std::cout << "parameters = " << stats(result.network).parameter_count << "\n";
        if (!args.out.empty()) {
            result.network.save(args.out);
            std::cout << "network written to " << args.out << "\n";
        }
        if (!args.trace.empty()) {
            write_text_file(args.trace, trace_to_csv(result.trace));
            std::cout << "trace written to " << args.trace << "\n";
        }
        return kExitOk;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!args.out.empty()) {
            e.partial_network().save(args.out);
            std::cerr << "partial network written to " << args.out << "\n";
        }
        if (!args.trace.empty()) {
            write_text_file(args.trace, trace_to_csv(e.partial_trace()));
            std::cerr << "partial trace written to " << args.trace << "\n";
        }
        return kExitNoConvergence;
    }
}

// ---------------------------------------------------------------------------
// verify / export
// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string net;
    std::string target;
    std::string domain;
    int multiplier = 1;
    std::string heatmap;
};

int run_verify(const VerifyArgs& args) {
    if (args.multiplier < 1) {
        throw InvalidInputError("verify: --verify-multiplier must be >= 1");
    }
    GridDomain domain = parse_domain(args.domain);
    TargetFunction target = parse_target(args.target);
    LayeredNetwork net = LayeredNetwork::load(args.net);

    GridDomain eval_domain = domain;
    if (args.multiplier > 1) {
        if (target.is_tabulated()) {
            throw InvalidInputError(
                "verify: tabulated targets have no off-grid values; --verify-multiplier must be "
                "1");
        }
        std::vector<int> res;
        for (int r : domain.resolution()) {
            res.push_back((r - 1) * args.multiplier + 1);
        }
        eval_domain = GridDomain(domain.lower(), domain.upper(), res);
    }

    SupErrorDetail detail = sup_error_detail(net, target, eval_domain);
    Point argmax = eval_domain.point_at(detail.argmax_index);
    std::string where;
    for (std::size_t i = 0; i < argmax.size(); ++i) {
        where += (i ? "," : "") + fmt(argmax[i]);
    }
    if (args.multiplier > 1) {
        std::cout << "sup error on " << args.multiplier
                  << "x finer grid (no guarantee) = " << fmt(detail.value) << " at (" << where
                  << ")\n";
    } else {
        std::cout << "sup error = " << fmt(detail.value) << " at (" << where << ")\n";
    }

    if (!args.heatmap.empty()) {
        const std::vector<double> target_values = sample_target(target, eval_domain);
        std::string csv = coordinate_header(eval_domain.dim()) + "network,target,abs_error\n";
        Point p;
        for (long long i = 0; i < eval_domain.point_count(); ++i) {
            eval_domain.point_at(i, p);
            const double v = net.evaluate(p);
            const double t = target_values[static_cast<std::size_t>(i)];
            for (double c : p) {
                csv += fmt_full(c) + ",";
            }
            csv += fmt_full(v) + "," + fmt_full(t) + "," + fmt_full(std::abs(v - t)) + "\n";
        }
        write_text_file(args.heatmap, csv);
        std::cout << "heatmap written to " << args.heatmap << "\n";
    }
    return kExitOk;
}

struct ExportArgs {
    std::string net;
    std::string domain;
    std::string out;
};

int run_export(const ExportArgs& args) {
    GridDomain domain = parse_domain(args.domain);
    LayeredNetwork net = LayeredNetwork::load(args.net);
    if (net.input_dim() != domain.dim()) {
        throw InvalidInputError("export: network and grid dimensions differ");
    }
    std::string csv = coordinate_header(domain.dim()) + "value\n";
    Point p;
    for (long long i = 0; i < domain.point_count(); ++i) {
        domain.point_at(i, p);
        for (double c : p) {
            csv += fmt_full(c) + ",";
        }
        csv += fmt_full(net.evaluate(p)) + "\n";
    }
    write_text_file(args.out, csv);
    std::cout << "values written to " << args.out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constructive separators and sup-norm approximation with 0-1 squashing networks"};
    app.require_subcommand(1);

    long long seed = 0;  // reserved, currently unused

    SeparatePointsArgs sp;
    CLI::App* cmd_sp = app.add_subcommand("separate-points",
                                          "Build a scalar gate pushing two reals to opposite "
                                          "ends of (0, 1)");
    cmd_sp->add_option("--x0", sp.x0, "First anchor")->required();
    cmd_sp->add_option("--x1", sp.x1, "Second anchor")->required();
    cmd_sp->add_option("--eps", sp.eps, "Separation tolerance in (0, 1)")->required();
    cmd_sp->add_option("--sigma", sp.sigma, "logistic | tanh | ramp:lo,hi | table:path");
    cmd_sp->add_flag("--check-sides", sp.check_sides,
                     "Probe the monotone side conditions (needs x0 < x1 and eps < 1/2)");
    cmd_sp->add_option("--probe-csv", sp.probe_csv, "Write sigma(s + t x) samples to this CSV");
    CLI::Option* plo = cmd_sp->add_option("--probe-lo", sp.probe_lo, "Probe range start");
    cmd_sp->add_option("--probe-hi", sp.probe_hi, "Probe range end")->needs(plo);
    cmd_sp->add_option("--probe-count", sp.probe_count, "Probe sample count");
    cmd_sp->add_option("--seed", seed, "Reserved, currently unused");

    SeparatePointSetArgs sps;
    CLI::App* cmd_sps = app.add_subcommand(
        "separate-point-set", "Build a one-hidden-layer separator of a point from a point set");
    cmd_sps->add_option("--x0", sps.x0, "Point coordinates, comma-separated")->required();
    cmd_sps->add_option("--set", sps.set_path, "Point set CSV")->required();
    cmd_sps->add_option("--eps", sps.eps, "Separation tolerance in (0, 1/3)")->required();
    cmd_sps->add_option("--domain", sps.domain, "Grid spec lo,hi,res[;lo,hi,res...]")->required();
    cmd_sps->add_option("--sigma", sps.sigma, "logistic | tanh | ramp:lo,hi | table:path");
    cmd_sps->add_option("--out", sps.out, "Write the network JSON here");
    cmd_sps->add_option("--seed", seed, "Reserved, currently unused");

    SeparateSetsArgs ss;
    CLI::App* cmd_ss = app.add_subcommand(
        "separate-sets", "Build a squashed separator of two disjoint point sets");
    cmd_ss->add_option("--set-a", ss.set_a, "High-side point set CSV")->required();
    cmd_ss->add_option("--set-b", ss.set_b, "Low-side point set CSV")->required();
    cmd_ss->add_option("--eps", ss.eps, "Separation tolerance in (0, 1/3)")->required();
    cmd_ss->add_option("--domain", ss.domain, "Grid spec lo,hi,res[;lo,hi,res...]")->required();
    cmd_ss->add_option("--sigma", ss.sigma, "logistic | tanh | ramp:lo,hi | table:path");
    cmd_ss->add_option("--out", ss.out, "Write the network JSON here");
    cmd_ss->add_option("--seed", seed, "Reserved, currently unused");

    ApproximateArgs ap;
    CLI::App* cmd_ap = app.add_subcommand(
        "approximate", "Iteratively build a three-hidden-layer network with grid sup error "
                       "below eps");
    cmd_ap->add_option("--target", ap.target,
                       "constant:v | proj:axis | sin2pix | sinprod:sin@f,cos@f,... | "
                       "gauss:c1,..,cn:w | maxcoord | csv:path")
        ->required();
    cmd_ap->add_option("--domain", ap.domain, "Grid spec lo,hi,res[;lo,hi,res...]")->required();
    cmd_ap->add_option("--eps", ap.eps, "Requested sup-norm accuracy")->required();
    cmd_ap->add_option("--beta", ap.beta, "Contraction factor in (3/4, 1)");
    cmd_ap->add_option("--max-iterations", ap.max_iterations, "Iteration budget");
    cmd_ap->add_option("--sigma", ap.sigma, "logistic | tanh | ramp:lo,hi | table:path");
    cmd_ap->add_option("--out", ap.out, "Write the network JSON here");
    cmd_ap->add_option("--trace", ap.trace, "Write the per-iteration trace CSV here");
    cmd_ap->add_option("--seed", seed, "Reserved, currently unused");

    VerifyArgs vf;
    CLI::App* cmd_vf = app.add_subcommand(
        "verify", "Report the sup error of a stored network against a target");
    cmd_vf->add_option("--net", vf.net, "Network JSON file")->required();
    cmd_vf->add_option("--target", vf.target, "Target spec (see approximate)")->required();
    cmd_vf->add_option("--domain", vf.domain, "Grid spec lo,hi,res[;lo,hi,res...]")->required();
    cmd_vf->add_option("--verify-multiplier", vf.multiplier,
                       "Refine each axis this many times; results carry no guarantee");
    cmd_vf->add_option("--heatmap", vf.heatmap, "Write per-point CSV here");
    cmd_vf->add_option("--seed", seed, "Reserved, currently unused");

    ExportArgs ex;
    CLI::App* cmd_ex = app.add_subcommand("export", "Evaluate a stored network over a grid to CSV");
    cmd_ex->add_option("--net", ex.net, "Network JSON file")->required();
    cmd_ex->add_option("--domain", ex.domain, "Grid spec lo,hi,res[;lo,hi,res...]")->required();
    cmd_ex->add_option("--out", ex.out, "Output CSV path")->required();
    cmd_ex->add_option("--seed", seed, "Reserved, currently unused");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (cmd_sp->parsed()) return run_separate_points(sp);
        if (cmd_sps->parsed()) return run_separate_point_set(sps);
        if (cmd_ss->parsed()) return run_separate_sets(ss);
        if (cmd_ap->parsed()) return run_approximate(ap);
        if (cmd_vf->parsed()) return run_verify(vf);
        if (cmd_ex->parsed()) return run_export(ex);
        std::cerr << "error: no subcommand\n";
        return kExitValidation;
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ConstructionError& e) {
        std::cerr << "internal contract failure: " << e.what() << "\n";
        return kExitContractFailure;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitContractFailure;
    }
}
