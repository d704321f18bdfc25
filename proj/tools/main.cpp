// trendlab CLI: weights / spectrum / bound / smooth / design.
//
// All numeric output uses fixed "%.12g" formatting (delta summaries to 4
// decimals), so identical configurations produce byte-identical files.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trendlab/algebra.hpp"
#include "trendlab/design.hpp"
#include "trendlab/errors.hpp"
#include "trendlab/filters.hpp"
#include "trendlab/smoother.hpp"
#include "trendlab/spectral.hpp"

using namespace trendlab;

namespace {

std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // never print -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

struct RunConfig {
    std::string filter = "henderson";
    int h = 6;
    int p = 3;
    int n = 0;
    std::string boundary = "reflecting";
    double noise_ratio = musgrave_noise_ratio();
    int lpr_degree = -1;  // <0: default to the interior degree
    std::string algebra = "tau11";
    std::string cutoff;  // auto | k=<int> | xi=<real> | period=<real>
    std::string replace_scope = "all";
    std::string input;
    std::string output = "-";

    KernelKind kernel_kind() const {
        if (filter == "henderson") return KernelKind::henderson;
        if (filter == "uniform") return KernelKind::uniform;
        throw ConfigError("unknown --filter value: " + filter);
    }

    LocalPolySpec poly_spec() const {
        if (h < 0) throw ConfigError("--h must be >= 0");
        if (p < 0) throw ConfigError("--p must be >= 0");
        if (p > 2 * h)
            throw ConfigError("p <= 2h violated (p=" + std::to_string(p) + ", h=" + std::to_string(h) + ")");
        return LocalPolySpec{h, p, KernelSpec{kernel_kind(), h}};
    }

    BoundaryPolicy policy() const {
        BoundaryPolicy pol;
        if (boundary == "reflecting")
            pol.kind = BoundaryKind::reflecting;
        else if (boundary == "lpr") {
            pol.kind = BoundaryKind::lpr;
            pol.lpr = poly_spec();
            if (lpr_degree >= 0) pol.lpr_degree = lpr_degree;
        } else if (boundary == "lc")
            pol.kind = BoundaryKind::lc;
        else if (boundary == "ql")
            pol.kind = BoundaryKind::ql;
        else if (boundary == "cq")
            pol.kind = BoundaryKind::cq;
        else
            throw ConfigError("unknown --boundary value: " + boundary);
        pol.noise_ratio = noise_ratio;
        if (replace_scope == "all")
            pol.scope = ReplaceScope::all_boundary_rows;
        else if (replace_scope == "realtime")
            pol.scope = ReplaceScope::realtime_row_only;
        else
            throw ConfigError("unknown --replace-scope value: " + replace_scope);
        return pol;
    }

    AlgebraKind algebra_kind() const {
        if (algebra == "tau11") return AlgebraKind::tau11;
        if (algebra == "circulant") return AlgebraKind::circulant;
        throw ConfigError("unknown --algebra value: " + algebra);
    }

    int require_n() const {
        if (n <= 0) throw ConfigError("--n is required and must be positive");
        if (n <= 2 * h)
            throw ConfigError("n > 2h violated (n=" + std::to_string(n) + ", h=" + std::to_string(h) + ")");
        return n;
    }
};

template <typename T>
T parse_tail(const std::string& whole, size_t prefix_len, const char* what) {
    const std::string tail = whole.substr(prefix_len);
    size_t pos = 0;
    T value{};
    try {
        if constexpr (std::is_same_v<T, int>)
            value = std::stoi(tail, &pos);
        else
            value = std::stod(tail, &pos);
    } catch (const std::exception&) {
        throw ConfigError(std::string("bad --cutoff ") + what + " value: " + whole);
    }
    if (pos != tail.size()) throw ConfigError(std::string("bad --cutoff ") + what + " value: " + whole);
    return value;
}

CutoffDesign make_cutoff(const RunConfig& cfg, const std::vector<double>& xi) {
    const std::string& c = cfg.cutoff;
    const int n = static_cast<int>(xi.size());
    if (c == "auto") return select_cutoff(xi);
    if (c.rfind("k=", 0) == 0) return select_cutoff_k(xi, parse_tail<int>(c, 2, "k"));
    if (c.rfind("xi=", 0) == 0) return select_cutoff_threshold(xi, parse_tail<double>(c, 3, "xi"));
    if (c.rfind("period=", 0) == 0) {
        const int k = cutoff_from_period(n, parse_tail<double>(c, 7, "period"));
        return select_cutoff_k(xi, std::max(1, std::min(k, n)));
    }
    throw ConfigError("--cutoff must be auto, k=<int>, xi=<real> or period=<real> (got '" + c + "')");
}

class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw ConfigError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

  private:
    std::ofstream file_;
};

TimeSeries read_series_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path + ": empty file, expected a 't,value' header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,value")
        throw ConfigError(path + ": line 1: expected header 't,value', got '" + line + "'");
    TimeSeries ts;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError(path + ": line " + std::to_string(lineno) + ": expected 't,value'");
        const std::string label = line.substr(0, comma);
        const std::string valstr = line.substr(comma + 1);
        char* end = nullptr;
        const double v = std::strtod(valstr.c_str(), &end);
        if (end == valstr.c_str() || *end != '\0' || !std::isfinite(v))
            throw ConfigError(path + ": line " + std::to_string(lineno) + ": unparseable value '" +
                              valstr + "'");
        ts.timestamps.push_back(label);
        ts.values.push_back(v);
    }
    return ts;
}

int cmd_weights(const RunConfig& cfg) {
    const SymmetricFilter sym = symmetric_filter(cfg.poly_spec());
    const BoundaryPolicy pol = cfg.policy();

    Sink sink(cfg.output);
    std::ostream& out = sink.stream();
    out << "filter";
    for (int o = -cfg.h; o <= cfg.h; ++o) out << "," << o;
    out << "\n";
    out << "symmetric";
    for (int o = -cfg.h; o <= cfg.h; ++o) out << "," << fmt(sym.at(o));
    out << "\n";
    if (cfg.h > 0) {
        for (int q = 0; q <= cfg.h; ++q) {
            const AsymmetricFilter f = boundary_filter(sym, pol, q);
            out << "q=" << q;
            for (int o = -cfg.h; o <= cfg.h; ++o) out << "," << (o <= q ? fmt(f.at(o)) : "");
            out << "\n";
        }
    }
    return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
    const int n = cfg.require_n();
    const SymmetricFilter sym = symmetric_filter(cfg.poly_spec());
    const bool tau = cfg.algebra_kind() == AlgebraKind::tau11;
    const std::vector<double> eig = tau ? tau_eigenvalues(sym, n) : circulant_eigenvalues(sym, n);

    Sink sink(cfg.output);
    std::ostream& out = sink.stream();
    out << "index,node,eigenvalue,gain\n";
    for (int i = 0; i < n; ++i) {
        const double node = tau ? std::numbers::pi * i / n : 2.0 * std::numbers::pi * i / n;
        out << (i + 1) << "," << fmt(node) << "," << fmt(eig[static_cast<size_t>(i)]) << ","
            << fmt(std::fabs(transfer_function_value(sym, node))) << "\n";
    }
    return 0;
}

int cmd_bound(const RunConfig& cfg, const std::string& report_path) {
    const int n = cfg.require_n();
    const SymmetricFilter sym = symmetric_filter(cfg.poly_spec());
    const SmootherMatrix s = build_smoother(sym, cfg.policy(), n);
    const AlgebraKind kind = cfg.algebra_kind();

    const Matrix ref = kind == AlgebraKind::circulant ? circulant_matrix(sym, n) : tau_matrix(sym, n);
    const double delta = spectral_norm(matsub(s.entries, ref));

    Sink sink(cfg.output);
    std::ostream& out = sink.stream();
    out << "algebra: " << cfg.algebra << "\n";
    out << "boundary: " << cfg.boundary << "\n";
    out << "replace_scope: " << cfg.replace_scope << "\n";
    out << "h: " << cfg.h << "\n";
    out << "p: " << cfg.p << "\n";
    out << "n: " << n << "\n";
    out << "delta: " << fmt4(delta) << "\n";

    if (!report_path.empty()) {
        const PerturbationReport rep = perturbation_report(s, kind);
        Sink rsink(report_path);
        std::ostream& r = rsink.stream();
        r << "index,lambda_re,lambda_im,nearest_reference,distance,within_delta\n";
        for (size_t k = 0; k < rep.smoother_values.size(); ++k) {
            r << (k + 1) << "," << fmt(rep.smoother_values[k].real()) << ","
              << fmt(rep.smoother_values[k].imag()) << ","
              << fmt(rep.reference_values[static_cast<size_t>(rep.nearest_index[k])]) << ","
              << fmt(rep.match_distance[k]) << ","
              << (rep.match_distance[k] <= rep.delta + 1e-8 ? 1 : 0) << "\n";
        }
    }
    return 0;
}

int cmd_smooth(const RunConfig& cfg) {
    const TimeSeries ts = read_series_csv(cfg.input);
    const int n = ts.length();
    if (n <= 2 * cfg.h)
        throw ConfigError("series too short: n=" + std::to_string(n) +
                          " needs n > 2h=" + std::to_string(2 * cfg.h));
    const SymmetricFilter sym = symmetric_filter(cfg.poly_spec());
    const BoundaryPolicy pol = cfg.policy();
    const SmootherMatrix s = build_smoother(sym, pol, n);
    const TimeSeries trend = apply(s, ts);

    std::optional<std::vector<double>> trend_k;
    if (!cfg.cutoff.empty()) {
        const TauOperator op = tau_operator(sym, n);
        const CutoffDesign d = make_cutoff(cfg, tau_eigenvalues(sym, n));
        const DesignedSmoother ds = designed_smoother(op, d, pol);
        trend_k = matvec(ds.final_entries, ts.values);
    }

    Sink sink(cfg.output);
    std::ostream& out = sink.stream();
    out << (trend_k ? "t,value,trend,trend_k\n" : "t,value,trend\n");
    for (int i = 0; i < n; ++i) {
        out << ts.timestamps[static_cast<size_t>(i)] << "," << fmt(ts.values[static_cast<size_t>(i)])
            << "," << fmt(trend.values[static_cast<size_t>(i)]);
        if (trend_k) out << "," << fmt((*trend_k)[static_cast<size_t>(i)]);
        out << "\n";
    }
    return 0;
}

int cmd_design(const RunConfig& cfg, const std::string& diagnostics_path) {
    const int n = cfg.require_n();
    const SymmetricFilter sym = symmetric_filter(cfg.poly_spec());
    const BoundaryPolicy pol = cfg.policy();
    const TauOperator op = tau_operator(sym, n);
    const std::vector<double> xi = tau_eigenvalues(sym, n);

    const CutoffDesign d_auto = select_cutoff(xi);
    const CutoffDesign d =
        (cfg.cutoff.empty() || cfg.cutoff == "auto") ? d_auto : make_cutoff(cfg, xi);
    const DesignedSmoother ds = designed_smoother(op, d, pol);
    const SmootherMatrix s = build_smoother(sym, pol, n);
    const VarianceReport var = variance_diagnostics(s, ds);

    std::cout << "k: " << d.k << "\n";
    std::cout << "xi_k: " << fmt(d.threshold) << "\n";
    std::cout << "k_auto: " << d_auto.k << "\n";
    std::cout << "bias_discrepancy: " << fmt(bias_discrepancy(xi, d)) << "\n";

    Sink sink(cfg.output);
    std::ostream& out = sink.stream();
    out << "row";
    for (int j = 1; j <= n; ++j) out << "," << j;
    out << "\n";
    for (int t = 0; t < n; ++t) {
        out << (t + 1);
        for (int j = 0; j < n; ++j) out << "," << fmt(ds.final_entries(t, j));
        out << "\n";
    }

    if (!diagnostics_path.empty()) {
        Sink dsink(diagnostics_path);
        std::ostream& dg = dsink.stream();
        dg << "t,variance_factor,variance_factor_k,interior_term\n";
        for (int t = 0; t < n; ++t)
            dg << (t + 1) << "," << fmt(var.factor[static_cast<size_t>(t)]) << ","
               << fmt(var.factor_k[static_cast<size_t>(t)]) << ","
               << fmt(var.interior_term[static_cast<size_t>(t)]) << "\n";
    }
    return 0;
}

void add_filter_flags(CLI::App* app, RunConfig& cfg) {
    app->set_help_flag("--help", "print help");  // frees -h / --h for the bandwidth
    app->add_option("--filter", cfg.filter, "kernel: henderson|uniform");
    app->add_option("--h", cfg.h, "bandwidth (half window width)");
    app->add_option("--p", cfg.p, "local polynomial degree");
}

void add_boundary_flags(CLI::App* app, RunConfig& cfg) {
    app->add_option("--boundary", cfg.boundary, "boundary filters: lpr|lc|ql|cq|reflecting");
    app->add_option("--noise-ratio", cfg.noise_ratio,
                    "delta^2/sigma^2 for lc/ql/cq (default 4/(3.5^2 pi))");
    app->add_option("--lpr-degree", cfg.lpr_degree, "boundary fit degree for lpr (default: interior p)");
    app->add_option("--replace-scope", cfg.replace_scope, "replace realtime|all boundary rows");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local polynomial trend filters: smoother matrices, algebra spectra, "
                 "perturbation bounds, eigenvalue-cutoff design"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    RunConfig cfg;
    std::string report_path;
    std::string diagnostics_path;

    CLI::App* weights = app.add_subcommand("weights", "emit symmetric and boundary filter weights as CSV");
    add_filter_flags(weights, cfg);
    add_boundary_flags(weights, cfg);
    weights->add_option("--output", cfg.output, "output path (- for stdout)");

    CLI::App* spectrum = app.add_subcommand("spectrum", "emit analytic algebra eigenvalues as CSV");
    add_filter_flags(spectrum, cfg);
    spectrum->add_option("--n", cfg.n, "matrix dimension")->required();
    spectrum->add_option("--algebra", cfg.algebra, "tau11|circulant");
    spectrum->add_option("--output", cfg.output, "output path (- for stdout)");

    CLI::App* bound = app.add_subcommand("bound", "perturbation radius of a boundary policy");
    add_filter_flags(bound, cfg);
    add_boundary_flags(bound, cfg);
    bound->add_option("--n", cfg.n, "matrix dimension")->required();
    bound->add_option("--algebra", cfg.algebra, "tau11|circulant");
    bound->add_option("--output", cfg.output, "output path (- for stdout)");
    bound->add_option("--report", report_path, "per-eigenvalue containment report CSV");

    CLI::App* smooth = app.add_subcommand("smooth", "filter a t,value CSV series");
    add_filter_flags(smooth, cfg);
    add_boundary_flags(smooth, cfg);
    smooth->add_option("--input", cfg.input, "input CSV with header t,value")->required();
    smooth->add_option("--cutoff", cfg.cutoff, "auto | k=<int> | xi=<real> | period=<real>");
    smooth->add_option("--output", cfg.output, "output path (- for stdout)");

    CLI::App* design = app.add_subcommand("design", "eigenvalue-cutoff smoother redesign");
    add_filter_flags(design, cfg);
    add_boundary_flags(design, cfg);
    design->add_option("--n", cfg.n, "matrix dimension")->required();
    design->add_option("--cutoff", cfg.cutoff, "auto | k=<int> | xi=<real> | period=<real>");
    design->add_option("--output", cfg.output, "designed matrix CSV path (- for stdout)");
    design->add_option("--diagnostics", diagnostics_path, "per-t variance diagnostics CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // normalise CLI11's varied parse-error codes onto the usage-error code
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    // the redesign follows the empirical setup and replaces only the
    // realtime row unless a scope was given explicitly
    if (*design && design->get_option("--replace-scope")->count() == 0) cfg.replace_scope = "realtime";

    try {
        if (*weights) return cmd_weights(cfg);
        if (*spectrum) return cmd_spectrum(cfg);
        if (*bound) return cmd_bound(cfg, report_path);
        if (*smooth) return cmd_smooth(cfg);
        if (*design) return cmd_design(cfg, diagnostics_path);
    } catch (const ConfigError& e) {
        std::cerr << "trendlab: error: config: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "trendlab: error: numeric: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
