#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "hyplatt/almost_periodic.hpp"
#include "hyplatt/error_lab.hpp"
#include "hyplatt/errors.hpp"
#include "hyplatt/lattice_count.hpp"
#include "hyplatt/specfun.hpp"
#include "hyplatt/spectral.hpp"

namespace hyplatt {

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 15);
    if (ec != std::errc()) throw numeric_error("number formatting failed");
    return std::string(buf, p);
}

std::string fmt(long long v) {
    return std::to_string(v);
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    void row(std::vector<std::string> r) { rows.push_back(std::move(r)); }
};

bool looks_numeric(const std::string& s) {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

void emit_csv(const Table& t, std::ostream& os) {
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
    for (const auto& r : t.rows)
        for (size_t i = 0; i < r.size(); ++i)
            os << r[i] << (i + 1 < r.size() ? "," : "\n");
}

void emit_json(const Table& t, std::ostream& os) {
    os << "{\"columns\":[";
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << '"' << t.columns[i] << '"' << (i + 1 < t.columns.size() ? "," : "");
    os << "],\"rows\":[";
    for (size_t r = 0; r < t.rows.size(); ++r) {
        os << '[';
        for (size_t i = 0; i < t.rows[r].size(); ++i) {
            const std::string& cell = t.rows[r][i];
            if (looks_numeric(cell)) os << cell;
            else os << '"' << cell << '"';
            os << (i + 1 < t.rows[r].size() ? "," : "");
        }
        os << ']' << (r + 1 < t.rows.size() ? "," : "");
    }
    os << "]}\n";
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size())
            throw validation_error("cannot parse number \"" + tok + "\"");
        out.push_back(v);
    }
    if (out.empty()) throw validation_error("empty number list");
    return out;
}

// "geometric:RATIO" or "linear:STEP", from xmin to xmax inclusive.
std::vector<double> make_grid(const std::string& spec, double xmin, double xmax) {
    if (!(xmax >= xmin)) throw validation_error("xmax below the grid start");
    std::vector<double> g;
    auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const double param =
        colon == std::string::npos ? 0.0 : std::strtod(spec.c_str() + colon + 1, nullptr);
    if (kind == "geometric") {
        if (!(param > 1.0)) throw validation_error("geometric grid needs ratio > 1");
        for (double x = xmin; x < xmax * (1.0 - 1e-12); x *= param) g.push_back(x);
    } else if (kind == "linear") {
        if (!(param > 0.0)) throw validation_error("linear grid needs step > 0");
        for (long long k = 0;; ++k) {
            const double x = xmin + static_cast<double>(k) * param;
            if (x >= xmax * (1.0 - 1e-12)) break;
            g.push_back(x);
        }
    } else {
        throw validation_error("grid must be geometric:RATIO or linear:STEP");
    }
    g.push_back(xmax);
    return g;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<std::pair<double, double>> read_pair_csv(std::istream& in, const std::string& origin) {
    std::vector<std::pair<double, double>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw validation_error(origin + ":" + std::to_string(lineno) + ": expected two columns");
        const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        if (!looks_numeric(a)) {
            if (lineno == 1) continue; // header
            throw validation_error(origin + ":" + std::to_string(lineno) + ": bad number");
        }
        if (!looks_numeric(b))
            throw validation_error(origin + ":" + std::to_string(lineno) + ": bad number");
        out.emplace_back(std::strtod(a.c_str(), nullptr), std::strtod(b.c_str(), nullptr));
    }
    return out;
}

struct CommonOut {
    std::string out_path;
    std::string manifest_path;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOut& co) {
    cmd->add_option("--out", co.out_path, "write table to this file instead of stdout");
    cmd->add_option("--manifest", co.manifest_path, "write the run manifest here instead of stderr");
    cmd->add_option("--format", co.format, "csv (default) or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    CLI::App app{"hyperbolic lattice-point counting and spectral error-term lab"};
    app.require_subcommand(1);

    CommonOut co;
    Table table;
    std::vector<std::string> extra_manifest;

    // ---- count ----
    struct {
        std::string group = "psl2z", z = "0,1", w = "0,1", grid = "linear:1";
        double xmax = 0;
    } cnt;
    {
        auto* c = app.add_subcommand("count", "orbit counting N(X;z,w)");
        c->add_option("--group", cnt.group, "psl2z | gamma0:N | gammaN:N");
        c->add_option("--z", cnt.z, "point x,y");
        c->add_option("--w", cnt.w, "point x,y");
        c->add_option("--xmax", cnt.xmax, "largest X")->required();
        c->add_option("--grid", cnt.grid, "geometric:RATIO | linear:STEP (default linear:1)");
        add_common(c, co);
        c->callback([&] {
            auto grid = make_grid(cnt.grid, 2.0, cnt.xmax);
            auto curve = count_curve(GroupModel::parse(cnt.group), parse_point(cnt.z),
                                     parse_point(cnt.w), grid);
            table.columns = {"X", "N"};
            for (auto& [x, n] : curve) table.row({fmt(x), fmt(n)});
        });
    }

    // ---- error ----
    struct {
        std::string group = "psl2z", z = "0,1", w = "0,1", grid = "linear:1", registry;
        double xmax = 0;
    } ec;
    {
        auto* c = app.add_subcommand("error", "error terms E and e along an X grid");
        c->add_option("--group", ec.group, "psl2z | gamma0:N | gammaN:N");
        c->add_option("--z", ec.z, "point x,y");
        c->add_option("--w", ec.w, "point x,y");
        c->add_option("--xmax", ec.xmax, "largest X")->required();
        c->add_option("--grid", ec.grid, "geometric:RATIO | linear:STEP");
        c->add_option("--registry", ec.registry, "Maass registry file");
        add_common(c, co);
        c->callback([&] {
            auto reg = ec.registry.empty() ? SpectralRegistry::modular_base()
                                           : load_registry(ec.registry);
            auto grid = make_grid(ec.grid, 2.0, ec.xmax);
            auto curve = build_error_curve(reg, GroupModel::parse(ec.group), parse_point(ec.z),
                                           parse_point(ec.w), grid);
            table.columns = {"X", "N", "main", "E", "e", "e_over_sqrtX"};
            for (const auto& s : curve.samples)
                table.row({fmt(s.X), fmt(s.N), fmt(s.mainterm), fmt(s.E), fmt(s.e),
                           fmt(s.e / std::sqrt(s.X))});
        });
    }

    // ---- average ----
    struct {
        std::string group = "psl2z", z = "0,1", w = "0,1", grid = "linear:1", registry;
        double xmax = 0;
    } av;
    {
        auto* c = app.add_subcommand("average", "integrated mean M(X;z,w)");
        c->add_option("--group", av.group, "psl2z | gamma0:N | gammaN:N");
        c->add_option("--z", av.z, "point x,y");
        c->add_option("--w", av.w, "point x,y");
        c->add_option("--xmax", av.xmax, "largest X")->required();
        c->add_option("--grid", av.grid, "geometric:RATIO | linear:STEP");
        c->add_option("--registry", av.registry, "Maass registry file");
        add_common(c, co);
        c->callback([&] {
            auto reg = av.registry.empty() ? SpectralRegistry::modular_base()
                                           : load_registry(av.registry);
            auto grid = make_grid(av.grid, 2.0, av.xmax);
            std::erase_if(grid, [](double x) { return x <= 2.0; });
            if (grid.empty()) throw validation_error("average needs grid points above X = 2");
            auto profile = enumerate_orbit(GroupModel::parse(av.group), parse_point(av.z),
                                           parse_point(av.w), av.xmax);
            table.columns = {"X", "M"};
            for (auto& [x, m] : m_average_curve(reg, profile, grid))
                table.row({fmt(x), fmt(m)});
        });
    }

    // ---- pr-mean ----
    struct {
        std::string group = "psl2z", z = "0,1", T, registry;
    } pr;
    {
        auto* c = app.add_subcommand("pr-mean", "radial mean of e(2 cosh r) e^{-r/2}");
        c->add_option("--group", pr.group, "psl2z | gamma0:N | gammaN:N");
        c->add_option("--z", pr.z, "point x,y");
        c->add_option("--T", pr.T, "upper radius, or comma list")->required();
        c->add_option("--registry", pr.registry, "Maass registry file");
        add_common(c, co);
        c->callback([&] {
            auto reg = pr.registry.empty() ? SpectralRegistry::modular_base()
                                           : load_registry(pr.registry);
            auto ts = parse_list(pr.T);
            double tmax = 0;
            for (double t : ts) tmax = std::max(tmax, t);
            const Point z = parse_point(pr.z);
            auto profile = enumerate_orbit(GroupModel::parse(pr.group), z, z,
                                           2.0 * std::cosh(tmax));
            table.columns = {"T", "pr_mean"};
            for (double t : ts) table.row({fmt(t), fmt(pr_mean(reg, profile, t))});
        });
    }

    // ---- spectral-m ----
    struct {
        std::string z = "0,1", w = "0,1", registry;
        double R = 0, A = 0;
    } sm;
    {
        auto* c = app.add_subcommand("spectral-m", "truncated spectral model of M(e^R)");
        c->add_option("--z", sm.z, "point x,y");
        c->add_option("--w", sm.w, "point x,y");
        c->add_option("--R", sm.R, "log scale R")->required();
        c->add_option("--A", sm.A, "spectral truncation")->required();
        c->add_option("--registry", sm.registry, "Maass registry file")->required();
        add_common(c, co);
        c->callback([&] {
            auto reg = load_registry(sm.registry);
            auto est = spectral_m_estimate(reg, parse_point(sm.z), parse_point(sm.w), sm.R, sm.A);
            table.columns = {"R", "A", "estimate", "continuous", "tail_bound"};
            table.row({fmt(sm.R), fmt(sm.A), fmt(est.estimate), fmt(est.continuous),
                       fmt(est.tail_bound)});
        });
    }

    // ---- transform ----
    struct {
        double x = 0, t = 0;
    } tr;
    {
        auto* c = app.add_subcommand("transform", "ball-indicator spectral transform h_X(t)");
        c->add_option("--x", tr.x, "X = 2 cosh r > 2")->required();
        c->add_option("--t", tr.t, "spectral parameter")->required();
        add_common(c, co);
        c->callback([&] {
            const double hq = h_quadrature(tr.x, tr.t);
            const double ha = h_asymptotic(tr.x, tr.t);
            table.columns = {"X", "t", "h_quad", "h_asym", "diff"};
            table.row({fmt(tr.x), fmt(tr.t), fmt(hq), fmt(ha), fmt(hq - ha)});
        });
    }

    // ---- signs ----
    struct {
        double tmax = 0, step = 0;
        bool threshold = false;
    } sg;
    {
        auto* c = app.add_subcommand("signs", "Gamma-ratio sign table");
        c->add_option("--tmax", sg.tmax, "largest t")->required();
        c->add_option("--step", sg.step, "grid step")->required();
        c->add_flag("--threshold", sg.threshold, "also locate the c-product sign threshold");
        add_common(c, co);
        c->callback([&] {
            if (!(sg.step > 0.0) || !(sg.tmax >= sg.step))
                throw validation_error("signs needs 0 < step <= tmax");
            table.columns = {"t", "sign_a", "sign_b", "product_c"};
            for (long long k = 1;; ++k) {
                const double t = static_cast<double>(k) * sg.step;
                if (t > sg.tmax * (1.0 + 1e-12)) break;
                table.row({fmt(t), fmt(sign_a(t)), fmt(sign_b(t)), fmt(sign_c_product(t))});
            }
            if (sg.threshold) {
                const double c = sign_c_threshold();
                extra_manifest.push_back("threshold_c=" + fmt(c));
                extra_manifest.push_back("threshold_a=" + fmt(0.25 + c * c));
            }
        });
    }

    // ---- maass-load ----
    struct {
        std::string file, eval;
    } ml;
    {
        auto* c = app.add_subcommand("maass-load", "parse a Maass registry file");
        c->add_option("--file", ml.file, "registry path")->required();
        c->add_option("--eval", ml.eval, "optional point x,y to evaluate each form at");
        add_common(c, co);
        c->callback([&] {
            auto reg = load_registry(ml.file);
            const bool ev = !ml.eval.empty();
            table.columns = {"t", "parity", "n_coeffs"};
            if (ev) table.columns.push_back("value");
            for (const auto& f : reg.cusp_forms) {
                std::vector<std::string> r{fmt(f.t),
                                           f.parity == Parity::even ? "even" : "odd",
                                           fmt(static_cast<long long>(f.coeffs.size()))};
                if (ev) r.push_back(fmt(eval_maass(f, parse_point(ml.eval))));
                table.row(std::move(r));
            }
        });
    }

    // ---- eisenstein ----
    struct {
        std::string z = "0,1";
        double t = 0;
    } ei;
    {
        auto* c = app.add_subcommand("eisenstein", "E(z, 1/2 + it) on the critical line");
        c->add_option("--z", ei.z, "point x,y with y >= 0.5");
        c->add_option("--t", ei.t, "spectral parameter")->required();
        add_common(c, co);
        c->callback([&] {
            const auto E = eval_eisenstein(parse_point(ei.z), ei.t);
            const auto phi = scattering_phi(ei.t);
            table.columns = {"t", "E_re", "E_im", "E_abs", "phi_abs"};
            table.row({fmt(ei.t), fmt(E.real()), fmt(E.imag()), fmt(std::abs(E)),
                       fmt(std::abs(phi))});
        });
    }

    // ---- weyl ----
    struct {
        std::string file, z = "0,1";
        double T = 0;
    } wy;
    {
        auto* c = app.add_subcommand("weyl", "local Weyl-law mass below T");
        c->add_option("--file", wy.file, "registry path")->required();
        c->add_option("--z", wy.z, "point x,y");
        c->add_option("--T", wy.T, "spectral cutoff")->required();
        add_common(c, co);
        c->callback([&] {
            auto reg = load_registry(wy.file);
            auto wsum = weyl_sum(reg, parse_point(wy.z), wy.T);
            table.columns = {"T", "discrete", "continuous", "total_over_T2"};
            table.row({fmt(wy.T), fmt(wsum.discrete), fmt(wsum.continuous),
                       fmt(wsum.total_over_t2)});
        });
    }

    // ---- dirichlet ----
    struct {
        std::string r;
        double M = 0, T = 0;
    } di;
    {
        auto* c = app.add_subcommand("dirichlet", "simultaneous near-return time search");
        c->add_option("--r", di.r, "comma list of positive frequencies")->required();
        c->add_option("--M", di.M, "lower bound for R")->required();
        c->add_option("--T", di.T, "recurrence quality > 1")->required();
        add_common(c, co);
        c->callback([&] {
            auto rs = parse_list(di.r);
            const double R = dirichlet_search(rs, di.M, di.T);
            double defect = 0.0;
            for (double r : rs)
                defect = std::max(defect, 2.0 * std::abs(std::sin(0.5 * r * R)));
            table.columns = {"R", "max_defect", "bound", "range_cap"};
            table.row({fmt(R), fmt(defect), fmt(1.0 / di.T),
                       fmt(di.M * std::pow(di.T, static_cast<double>(rs.size())))});
        });
    }

    // ---- mollify ----
    struct {
        std::string in;
        double eps = 0;
    } mo;
    {
        auto* c = app.add_subcommand("mollify", "convolve (R,value) samples with psi_eps");
        c->add_option("--eps", mo.eps, "kernel width")->required();
        c->add_option("--in", mo.in, "input CSV of R,value (\"-\" for stdin)")->required();
        add_common(c, co);
        c->callback([&] {
            std::vector<std::pair<double, double>> samples;
            if (mo.in == "-") {
                samples = read_pair_csv(std::cin, "<stdin>");
            } else {
                std::ifstream in(mo.in);
                if (!in) throw validation_error("cannot open " + mo.in);
                samples = read_pair_csv(in, mo.in);
            }
            table.columns = {"R", "value"};
            for (auto& [r, v] : mollify_error(samples, mo.eps)) table.row({fmt(r), fmt(v)});
        });
    }

    // ---- omega-scan ----
    struct {
        std::string group = "psl2z", z = "0,1", w = "0,1", window, registry;
        double eps = 0;
    } os_;
    {
        auto* c = app.add_subcommand("omega-scan",
                                     "normalized error e(e^R)/e^{R/2}, raw and mollified");
        c->add_option("--group", os_.group, "psl2z | gamma0:N | gammaN:N");
        c->add_option("--z", os_.z, "point x,y");
        c->add_option("--w", os_.w, "point x,y");
        c->add_option("--window", os_.window, "R1:R2")->required();
        c->add_option("--eps", os_.eps, "mollifier width")->required();
        c->add_option("--registry", os_.registry, "Maass registry file");
        add_common(c, co);
        c->callback([&] {
            auto colon = os_.window.find(':');
            if (colon == std::string::npos)
                throw validation_error("window must be R1:R2");
            const double R1 = std::strtod(os_.window.c_str(), nullptr);
            const double R2 = std::strtod(os_.window.c_str() + colon + 1, nullptr);
            auto reg = os_.registry.empty() ? SpectralRegistry::modular_base()
                                            : load_registry(os_.registry);
            Mollifier moll(os_.eps);
            const double xmax = std::exp(R2 + os_.eps) * (1.0 + 1e-9);
            auto curve = build_error_curve(reg, GroupModel::parse(os_.group),
                                           parse_point(os_.z), parse_point(os_.w), {xmax});
            auto rep = omega_witness_scan(reg, curve, moll, R1, R2);
            table.columns = {"R", "e_hat", "e_hat_mollified"};
            const size_t n = std::min(rep.raw.size(), rep.mollified.size());
            for (size_t i = 0; i < n; ++i)
                table.row({fmt(rep.raw[i].first), fmt(rep.raw[i].second),
                           fmt(rep.mollified[i].second)});
            auto stats = [&](const char* tag, const ScanStats& st) {
                extra_manifest.push_back(std::string(tag) + "_inf=" + fmt(st.inf) + " at=" +
                                         fmt(st.inf_at));
                extra_manifest.push_back(std::string(tag) + "_sup=" + fmt(st.sup) + " at=" +
                                         fmt(st.sup_at));
                extra_manifest.push_back(std::string(tag) + "_negatives=" + fmt(st.negatives) +
                                         " positives=" + fmt(st.positives));
            };
            stats("raw", rep.raw_stats);
            stats("mollified", rep.mollified_stats);
        });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        err << app.help();
        return 2;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const numeric_error& e) {
        err << "numeric error: " << e.what() << "\n";
        return 4;
    }

    std::ostringstream body;
    if (co.format == "json") emit_json(table, body);
    else emit_csv(table, body);
    const std::string text = body.str();

    if (co.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(co.out_path);
        if (!f) {
            err << "error: cannot write " << co.out_path << "\n";
            return 3;
        }
        f << text;
    }

    const auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    std::ostringstream man;
    man << "# tool=hyplatt version=" << kVersion << "\n# argv:";
    for (const auto& a : args) man << ' ' << a;
    man << "\n";
    for (const auto& line : extra_manifest) man << "# " << line << "\n";
    {
        char digest[32];
        std::snprintf(digest, sizeof(digest), "%016llx",
                      static_cast<unsigned long long>(fnv1a(text)));
        man << "# rows=" << table.rows.size() << " output_fnv1a=" << digest
            << " wall_ms=" << wall << "\n";
    }
    if (co.manifest_path.empty()) {
        err << man.str();
    } else {
        std::ofstream f(co.manifest_path);
        if (!f) {
            err << "error: cannot write " << co.manifest_path << "\n";
            return 3;
        }
        f << man.str();
    }
    return 0;
}

} // namespace hyplatt
