#include "aniso/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "aniso/errors.hpp"
#include "aniso/io.hpp"
#include "aniso/simd/kernels.hpp"

namespace aniso::cli {

namespace {

using nlohmann::json;

std::string trim(std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r\n"));
    s.erase(s.find_last_not_of(" \t\r\n") + 1);
    return s;
}

IntMatrix inline_matrix(const std::string& text) {
    std::vector<std::vector<Int>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::replace(row.begin(), row.end(), ',', ' ');
        std::istringstream is(row);
        std::vector<Int> r;
        Int v = 0;
        while (is >> v) r.push_back(v);
        if (!is.eof()) throw ParseError("matrix: non-integer entry in '" + row + "'");
        rows.push_back(std::move(r));
    }
    const int d = static_cast<int>(rows.size());
    std::vector<Int> flat;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != d) throw ParseError("matrix: rows must have " + std::to_string(d) + " entries");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    if (d == 0) throw ParseError("matrix: empty");
    return IntMatrix(d, std::move(flat));
}

std::string resolve(const std::string& path, const std::string& base) {
    const std::filesystem::path p(path);
    return p.is_absolute() ? path : (std::filesystem::path(base) / p).string();
}

json witness_json(const std::optional<SFWitness>& w) {
    if (!w) return nullptr;
    return {{"h", w->h}, {"z", w->z}, {"ratio", w->ratio}, {"reason", w->reason}};
}

json q_json(double q) { return std::isinf(q) ? json("inf") : json(q); }

PatternPtr load_pattern(const std::string& path) { return Pattern::create(parse_matrix(read_text_file(path))); }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty())
        out << text;
    else
        write_text_file(path, text);
}

struct Options {
    std::string matrix, samples, kernel = "2; 2,2,2", out, coeffs, config, csv, svg, q = "2", mode = "strict";
    double alpha = 0.0, tail_eps = 1e-8;
    std::string tail_q = "inf";
    double order = 0.0;
    int radius = 32, zmax = 0, levels = 0;
    bool allow_incorrect = false;
};

PeriodizationWindow window_of(const Options& o) { return {o.radius, o.tail_eps, parse_q(o.tail_q)}; }

int cmd_pattern(const Options& o, std::ostream& out) {
    const PatternPtr p = load_pattern(o.matrix);
    std::string text;
    for (int i = 1; i <= p->dim(); ++i) text += (i > 1 ? ",y" : "y") + std::to_string(i);
    text += "\n";
    for (const auto& pt : p->points()) {
        const auto ys = p->matrix().coordinates(pt.g);
        for (std::size_t i = 0; i < ys.size(); ++i) text += (i ? "," : "") + ys[i].to_string();
        text += "\n";
    }
    emit(text, o.out, out);
    return kExitOk;
}

int cmd_gset(const Options& o, std::ostream& out) {
    const PatternPtr p = load_pattern(o.matrix);
    std::string text;
    for (int i = 1; i <= p->dim(); ++i) text += (i > 1 ? ",k" : "k") + std::to_string(i);
    text += "\n";
    for (const auto& h : p->freqs()) {
        for (std::size_t i = 0; i < h.size(); ++i) text += (i ? "," : "") + std::to_string(h[i]);
        text += "\n";
    }
    emit(text, o.out, out);
    return kExitOk;
}

int cmd_dft(const Options& o, std::ostream& out, std::ostream& err) {
    const PatternPtr p = load_pattern(o.matrix);
    const SampleVector s = samples_from_csv(read_text_file(o.samples), p);
    const CoeffVector c = dft_forward(s);
    const SampleVector back = dft_inverse(c);
    double scale = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        scale = std::max(scale, std::abs(s.values[i]));
        worst = std::max(worst, std::abs(back.values[i] - s.values[i]));
    }
    if (!o.coeffs.empty()) write_text_file(o.coeffs, coeffs_to_csv(c));
    emit(samples_to_csv(back), o.out, out);
    err << "m = " << p->m() << ", roundtrip max error " << worst << "\n";
    return worst <= 1e-12 * std::max(scale, 1.0) ? kExitOk : kExitFailed;
}

int cmd_interpolate(const Options& o, std::ostream& out, std::ostream& err) {
    const PatternPtr p = load_pattern(o.matrix);
    const SampleVector s = samples_from_csv(read_text_file(o.samples), p);
    const KernelSpec kernel = KernelSpec::parse(o.kernel);
    const BuiltInterpolant built = build_interpolant(kernel, p, window_of(o), o.allow_incorrect);
    const FourierSeries lf = interpolation_operator(s, built.ifun);
    const SampleVector back = sample_at_nodes(lf, p);
    double residual = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) residual = std::max(residual, std::abs(back.values[i] - s.values[i]));
    emit(series_to_csv(lf), o.out, out);
    err << "kernel " << kernel.to_string() << ", m = " << p->m() << ", modes " << lf.size()
        << ", node residual " << residual << ", periodization tail " << built.tail_bound << "\n";
    for (const auto& h : built.ifun.incorrect_modes) {
        err << "incorrect interpolation on class (";
        for (std::size_t i = 0; i < h.size(); ++i) err << (i ? "," : "") << h[i];
        err << ")\n";
    }
    return residual <= 1e-6 ? kExitOk : kExitFailed;
}

int cmd_sfcheck(const Options& o, std::ostream& out) {
    const KernelSpec kernel = KernelSpec::parse(o.kernel);
    const PeriodizationWindow win = window_of(o);
    const int zmax = o.zmax > 0 ? o.zmax : o.radius;
    SFParams params;
    params.alpha = o.alpha;
    params.q = parse_q(o.q);
    params.mode = o.mode == "relaxed" ? SFMode::Relaxed : SFMode::Strict;
    if (o.order > 0.0)
        params.s = o.order;
    else if (kernel.is_dirichlet())
        params.s = 1.0;
    else
        params.s = sf_order(std::get<BoxSplineSpec>(kernel.kind)) - o.alpha;

    const IntMatrix raw = parse_matrix(read_text_file(o.matrix));
    auto build = [&](const PatternPtr& p) { return build_interpolant(kernel, p, win, o.allow_incorrect).ifun; };

    json j;
    j["order"] = params.s;
    j["alpha"] = params.alpha;
    j["q"] = q_json(params.q);
    j["mode"] = o.mode;
    j["kernel"] = kernel.to_string();
    bool pass = false;
    if (o.levels >= 2) {
        const SFOrderReport rep = verify_sfc_order(build, raw, o.levels, params, zmax);
        const PatternPtr finest = Pattern::create(raw.scaled(Int{1} << (o.levels - 1)));
        j["gamma_sf"] = rep.levels.back().gamma_sf;
        j["gamma_ip"] = gamma_ip(build(finest), params.alpha, params.q, zmax).value;
        j["growth"] = rep.growth;
        j["allowed_growth"] = rep.allowed;
        json lv = json::array();
        for (const auto& l : rep.levels)
            lv.push_back({{"j", l.j}, {"m", l.m}, {"norm2", l.norm2}, {"gamma_sf", l.gamma_sf}, {"pass", l.single_pass}});
        j["levels"] = lv;
        j["witness"] = witness_json(rep.witness);
        pass = rep.pass;
    } else {
        const PatternPtr p = Pattern::create(raw);
        const FundamentalInterpolant ifun = build(p);
        const SFReport rep = verify_sfc(ifun, params, zmax);
        j["gamma_sf"] = rep.gamma_sf;
        j["gamma_ip"] = gamma_ip(ifun, params.alpha, params.q, zmax).value;
        j["last_shell_fraction"] = rep.last_shell_fraction;
        j["witness"] = witness_json(rep.witness);
        pass = rep.pass;
    }
    j["pass"] = pass;
    emit(j.dump(2) + "\n", o.out, out);
    return pass ? kExitOk : kExitFailed;
}

int cmd_converge(const Options& o, std::ostream& out, std::ostream& err) {
    const std::string base = std::filesystem::path(o.config).parent_path().string();
    ConvergeConfig cfg = parse_converge_config(read_text_file(o.config), base.empty() ? "." : base);
    if (!o.csv.empty()) cfg.csv_path = o.csv;
    if (!o.svg.empty()) cfg.svg_path = o.svg;
    const BoundReport rep = convergence_study(cfg.spec);
    const std::string csv = bound_report_csv(rep);
    if (cfg.csv_path.empty())
        out << csv;
    else
        write_text_file(cfg.csv_path, csv);
    if (!cfg.svg_path.empty()) write_text_file(cfg.svg_path, bound_report_svg(rep));
    double worst_residual = 0.0;
    for (const auto& r : rep.rows) worst_residual = std::max(worst_residual, r.node_residual);
    err << "rho = " << rep.rho << ", fitted rate " << rep.fitted_rate << " (residual " << rep.fit_residual
        << "), max node residual " << worst_residual << ", verdict " << (rep.verdict ? "pass" : "fail") << "\n";
    return rep.verdict ? kExitOk : kExitFailed;
}

} // namespace

double parse_q(const std::string& text) {
    const std::string t = trim(text);
    if (t == "inf" || t == "infinity") return kInf;
    double q = 0.0;
    try {
        std::size_t used = 0;
        q = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
        throw ParseError("q must be a number >= 1 or 'inf', got '" + text + "'");
    }
    if (!(q >= 1.0)) throw ParseError("q must be >= 1");
    return q;
}

ConvergeConfig parse_converge_config(const std::string& text, const std::string& base_dir) {
    ConvergeConfig cfg;
    ExperimentSpec& s = cfg.spec;
    s.kernel = KernelSpec::parse("2; 2,2,2");
    bool have_matrix = false;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto num = [&](const std::string& v) {
        try {
            std::size_t used = 0;
            const double x = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ParseError("config line " + std::to_string(lineno) + ": bad number '" + v + "'");
        }
    };
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "matrix") {
            s.base = inline_matrix(val);
            have_matrix = true;
        } else if (key == "matrix_file") {
            s.base = parse_matrix(read_text_file(resolve(val, base_dir)));
            have_matrix = true;
        } else if (key == "kernel") {
            s.kernel = KernelSpec::parse(val);
        } else if (key == "scales") {
            s.scales.clear();
            std::stringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ',')) s.scales.push_back(static_cast<int>(num(trim(item))));
        } else if (key == "alpha") {
            s.alpha = num(val);
        } else if (key == "mu") {
            s.mu = num(val);
        } else if (key == "q") {
            s.q = parse_q(val);
        } else if (key == "order") {
            s.order = num(val);
        } else if (key == "mode") {
            if (val != "strict" && val != "relaxed") throw ParseError("mode must be strict or relaxed");
            s.mode = val == "relaxed" ? SFMode::Relaxed : SFMode::Strict;
        } else if (key == "radius") {
            s.window.radius = static_cast<int>(num(val));
        } else if (key == "tail_eps") {
            s.window.tail_eps = num(val);
        } else if (key == "tail_q") {
            s.window.tail_q = parse_q(val);
        } else if (key == "profile_decay") {
            s.profile_decay = num(val);
        } else if (key == "profile_radius") {
            s.profile_radius = static_cast<int>(num(val));
        } else if (key == "csv") {
            cfg.csv_path = resolve(val, base_dir);
        } else if (key == "svg") {
            cfg.svg_path = resolve(val, base_dir);
        } else {
            throw ParseError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (!have_matrix) throw ParseError("config needs 'matrix' or 'matrix_file'");
    return cfg;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Periodic interpolation on lattice patterns of the torus"};
    app.require_subcommand(1);
    Options o;

    auto add_matrix = [&](CLI::App* c) {
        c->add_option("-m,--matrix", o.matrix, "Matrix file: d, then d rows of d integers")
            ->required()
            ->check(CLI::ExistingFile);
    };
    auto add_window = [&](CLI::App* c) {
        c->add_option("--kernel", o.kernel, "'dirichlet' or box spline 'd; p1,p2,...'")->capture_default_str();
        c->add_option("--radius", o.radius, "Periodization radius R")->capture_default_str()->check(CLI::PositiveNumber);
        c->add_option("--tail-eps", o.tail_eps, "Largest accepted periodization tail")->capture_default_str();
        c->add_option("--tail-q", o.tail_q, "Norm for the periodization tail (number or inf)")->capture_default_str();
        c->add_flag("--allow-incorrect", o.allow_incorrect, "Use incorrect interpolation on vanishing classes");
    };

    auto* pattern = app.add_subcommand("pattern", "Print P_S(M) as exact fractions");
    add_matrix(pattern);
    pattern->add_option("-o,--out", o.out, "Output file (default stdout)");

    auto* gset = app.add_subcommand("gset", "Print the generating set G_S(M^T)");
    add_matrix(gset);
    gset->add_option("-o,--out", o.out, "Output file (default stdout)");

    auto* dft = app.add_subcommand("dft", "Forward and inverse pattern DFT of a sample CSV");
    add_matrix(dft);
    dft->add_option("-s,--samples", o.samples, "Sample CSV y1,...,yd,re,im")->required()->check(CLI::ExistingFile);
    dft->add_option("--coeffs", o.coeffs, "Write the forward transform here");
    dft->add_option("-o,--out", o.out, "Round-tripped samples (default stdout)");

    auto* interp = app.add_subcommand("interpolate", "Interpolate samples with a kernel; writes the series CSV");
    add_matrix(interp);
    interp->add_option("-s,--samples", o.samples, "Sample CSV y1,...,yd,re,im")->required()->check(CLI::ExistingFile);
    add_window(interp);
    interp->add_option("-o,--out", o.out, "Series CSV (default stdout)");

    auto* sf = app.add_subcommand("sfcheck", "Verify the Strang-Fix conditions; JSON report");
    add_matrix(sf);
    add_window(sf);
    sf->add_option("--order", o.order, "Claimed order (default: box-spline order minus alpha)");
    sf->add_option("--alpha", o.alpha, "alpha >= 0")->capture_default_str()->check(CLI::NonNegativeNumber);
    sf->add_option("--q", o.q, "q >= 1 or inf")->capture_default_str();
    sf->add_option("--mode", o.mode, "strict or relaxed")->capture_default_str()->check(CLI::IsMember({"strict", "relaxed"}));
    sf->add_option("--zmax", o.zmax, "Shells checked (default: radius)");
    sf->add_option("--levels", o.levels, "Check over 2^j M, j < levels (>= 2 enables the order check)");
    sf->add_option("-o,--out", o.out, "Report file (default stdout)");

    auto* conv = app.add_subcommand("converge", "Run a convergence study from a config file");
    conv->add_option("-c,--config", o.config, "Config file (key = value)")->required()->check(CLI::ExistingFile);
    conv->add_option("--csv", o.csv, "CSV output (overrides config)");
    conv->add_option("--svg", o.svg, "SVG output (overrides config)");

    app.footer("Environment: ANISO_THREADS caps worker threads, ANISO_SIMD=scalar|avx2|neon picks kernels.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*pattern) return cmd_pattern(o, out);
        if (*gset) return cmd_gset(o, out);
        if (*dft) return cmd_dft(o, out, err);
        if (*interp) return cmd_interpolate(o, out, err);
        if (*sf) return cmd_sfcheck(o, out);
        if (*conv) return cmd_converge(o, out, err);
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const SingularMatrix& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        // Numerical failures (NonExistent, TailTooLarge, ...) are verification outcomes.
        err << e.what() << "\n";
        return kExitFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace aniso::cli
