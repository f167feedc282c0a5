// Command-line driver: lower bounds, exponents, curves, code construction and
// verification, the Euclidean comparison, and parameter sweeps.
//
// Exit codes: 0 ok, 2 domain/usage error, 3 enumeration cap exceeded,
// 4 certification failure.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpgv/asymptotics.hpp"
#include "lpgv/constructor.hpp"
#include "lpgv/exactbounds.hpp"
#include "lpgv/report_io.hpp"
#include "lpgv/shellsys.hpp"

namespace {

using namespace lpgv;

struct OutputOptions {
    std::string format = "text";
    std::string path;  // empty: stdout
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", out.path, "Write output to this path instead of stdout");
}

void emit(const OutputOptions& out, const std::string& content) {
    if (out.path.empty())
        std::cout << content;
    else
        atomic_write(out.path, content);
}

std::string render(const BoundReport& report, const std::string& format) {
    if (format == "json") return to_json(report);
    if (format == "csv") return bound_report_csv(report);
    return to_text(report);
}

// "--m" accepts an integer or the literal "n"
int parse_weight(const std::string& spec, int n) {
    if (spec == "n") return n;
    try {
        std::size_t used = 0;
        long long v = std::stoll(spec, &used);
        if (used != spec.size()) throw std::invalid_argument(spec);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw std::domain_error("--m expects an integer or the literal 'n', got '" + spec + "'");
    }
}

// parses "lo:hi:step" (step optional, default 1)
struct Range {
    double lo = 0.0, hi = 0.0, step = 1.0;
};

Range parse_range(const std::string& spec) {
    Range r;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> r.lo >> c1 >> r.hi) || c1 != ':')
        throw std::domain_error("malformed range '" + spec + "', expected lo:hi[:step]");
    if (in >> c2) {
        if (c2 != ':' || !(in >> r.step) || r.step <= 0.0)
            throw std::domain_error("malformed range '" + spec + "', expected lo:hi[:step]");
    }
    std::string rest;
    if (in >> rest) throw std::domain_error("malformed range '" + spec + "'");
    if (r.hi < r.lo) throw std::domain_error("malformed range '" + spec + "': hi < lo");
    return r;
}

std::vector<double> range_points(const Range& r) {
    std::size_t count = static_cast<std::size_t>(std::floor((r.hi - r.lo) / r.step + 1e-9)) + 1;
    std::vector<double> pts(count);
    for (std::size_t k = 0; k < count; ++k) pts[k] = r.lo + static_cast<double>(k) * r.step;
    return pts;
}

// deterministic parallel map: results land in index order regardless of schedule
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned workers = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = static_cast<std::size_t>(w) * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo < hi)
            pool.emplace_back([&fn, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            });
    }
    for (auto& th : pool) th.join();
}

int cmd_bound(double p, int n, const std::string& m_spec, const std::string& m_window,
              bool large_p, bool jv, unsigned threads, const OutputOptions& out) {
    BoundReport report;
    if (large_p) {
        if (!m_spec.empty() && parse_weight(m_spec, n) != n)
            throw std::domain_error("--large-p fixes m = n; drop --m or pass --m n");
        report = large_p_bound(p, n, jv);
    } else {
        if (jv) throw std::domain_error("--jv applies only together with --large-p");
        if (!m_window.empty()) {
            if (!m_spec.empty()) throw std::domain_error("--m and --m-window are exclusive");
            int lo = 0, hi = 0;
            char sep = 0;
            std::istringstream win(m_window);
            if (!(win >> lo >> sep >> hi) || sep != ':')
                throw std::domain_error("malformed --m-window, expected lo:hi");
            report = best_bound_window(p, n, lo, hi, threads);
        } else if (m_spec.empty()) {
            report = best_bound(p, n, threads);
        } else {
            report = total_bound(p, n, parse_weight(m_spec, n));
        }
    }
    emit(out, render(report, out.format));
    return 0;
}

int cmd_exponent(double p, bool large_p, const OutputOptions& out) {
    if (large_p) {
        std::vector<double> chain = large_p_exponent_chain(p);
        std::string content;
        if (out.format == "json") {
            nlohmann::json j;
            j["type"] = "large_p_exponents";
            j["p"] = p;
            j["exponents"] = chain;
            content = j.dump(2) + "\n";
        } else if (out.format == "csv") {
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < chain.size(); ++i)
                rows.push_back({format_real(p), std::to_string(i + 1), format_real(chain[i])});
            content = sweep_csv({"p", "term", "exponent"}, rows);
        } else {
            std::ostringstream text;
            text << "large-p exponents, p = " << format_real(p) << "\n";
            text << "leading term 1 - H(2^-p), deeper shells from the entropy min-max\n";
            text << "exponents:";
            for (double e : chain) {
                char buf[32];
                std::snprintf(buf, sizeof buf, " %.4f", e);
                text << buf;
            }
            text << "\n";
            content = text.str();
        }
        emit(out, content);
        return 0;
    }

    ExponentResult result = best_exponent(p);
    std::string content;
    if (out.format == "json") {
        if (p > 1.0 && p <= 2.0) {
            nlohmann::json j = nlohmann::json::parse(to_json(result));
            double ee = euclidean_exponent(p);
            j["euclidean_exponent"] = ee;
            j["better"] = ee > result.g_value ? "euclidean" : "gv";
            content = j.dump(2) + "\n";
        } else {
            content = to_json(result);
        }
    } else if (out.format == "csv") {
        content = exponent_result_csv(result);
    } else {
        content = to_text(result);
        if (p > 1.0 && p <= 2.0) {
            double ee = euclidean_exponent(p);
            std::ostringstream extra;
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f", ee);
            extra << "euclidean comparison exponent = " << buf << "  ("
                  << (ee > result.g_value ? "euclidean side wins" : "multi-shell GV side wins")
                  << ")\n";
            content += extra.str();
        }
    }
    emit(out, content);
    return 0;
}

int cmd_curve(double p, double step, const OutputOptions& out) {
    if (!(step > 0.0 && step < 1.0)) throw std::domain_error("--step must lie in (0, 1)");
    std::vector<double> grid;
    for (std::size_t k = 1; static_cast<double>(k) * step < 1.0 - 1e-12; ++k)
        grid.push_back(static_cast<double>(k) * step);
    emit(out, curve_csv(curve(p, grid)));
    return 0;
}

int cmd_construct(double p, int n, const std::string& m_spec, std::uint64_t cap,
                  const OutputOptions& out) {
    int m = parse_weight(m_spec, n);
    ShellSystem sys = build_shell_system(p, n, m);
    CodeCertificate cert = build_certificate(sys, cap);
    std::ostringstream summary;
    summary << "constructed " << cert.points.size() << " points (guarantee "
            << to_decimal(cert.guarantee) << ") across " << cert.sys.r() << " shell(s); sizes:";
    for (std::uint64_t s : cert.sizes_per_shell) summary << " " << s;
    summary << "\ncertified min d_p^p >= " << format_real(cert.min_dist_p_pow) << " (required "
            << m << ")\n";
    if (out.path.empty()) {
        std::cout << certificate_to_string(cert);
        std::cerr << summary.str();
    } else {
        atomic_write(out.path, certificate_to_string(cert));
        std::cout << summary.str() << "certificate written to " << out.path << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::domain_error("cannot read certificate file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CodeCertificate cert = certificate_from_string(buffer.str());
    const ShellSystem& sys = cert.sys;

    std::uint64_t total = 0;
    for (std::uint64_t s : cert.sizes_per_shell) total += s;
    if (total != cert.points.size())
        throw certification_error("per-shell sizes disagree with the point list");

    const double floor_value = static_cast<double>(sys.m) * (1.0 - 1e-9);
    double min_lower = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < cert.points.size(); ++a) {
        for (std::size_t b = a + 1; b < cert.points.size(); ++b) {
            const ShellPoint& u = cert.points[a];
            const ShellPoint& v = cert.points[b];
            double lower;
            if (u.shell == v.shell) {
                const std::int64_t mi = sys.levels[static_cast<std::size_t>(u.shell)];
                SameShellDistance d = same_shell_dist_p_pow(u, v, sys);
                if (2 * d.moved < mi &&
                    sys.pnorm.scaled_less(static_cast<std::uint64_t>(d.flipped), mi - 2 * d.moved))
                    throw certification_error("same-shell pair below the distance floor");
                lower = d.value.lo;
            } else {
                lower = cross_shell_dist_p_pow(u, v, sys).lo;
                if (lower < floor_value)
                    throw certification_error("cross-shell pair below the certified distance floor");
            }
            min_lower = std::min(min_lower, lower);
        }
    }
    if (cert.points.size() >= 2 && cert.min_dist_p_pow > min_lower + 1e-12)
        throw certification_error("stated minimum distance exceeds what the points certify");
    BigCount guarantee = total_bound(sys).total;
    if (guarantee != cert.guarantee)
        throw certification_error("stated guarantee disagrees with the recomputed GV bound");
    if (BigCount(static_cast<unsigned long>(cert.points.size())) < guarantee)
        throw certification_error("certificate holds fewer points than its GV guarantee");
    std::cout << "certificate ok: " << cert.points.size() << " points, guarantee "
              << to_decimal(guarantee) << ", min d_p^p >= " << format_real(min_lower) << "\n";
    return 0;
}

int cmd_compare(double p, int n, bool have_n, const std::vector<double>& bracket,
                const OutputOptions& out) {
    if (out.format == "csv") throw std::domain_error("compare has no CSV form; use text or json");
    double ee = euclidean_exponent(p);  // validates 1 < p <= 2
    ExponentResult gv = best_exponent(p);
    if (out.format == "json") {
        nlohmann::json j;
        j["type"] = "comparison";
        j["p"] = p;
        j["euclidean_exponent"] = ee;
        j["g_value"] = gv.g_value;
        j["sigma_star"] = gv.sigma_star;
        j["winner"] = ee > gv.g_value ? "euclidean" : "gv";
        if (!bracket.empty()) j["crossover"] = exponent_crossover(bracket[0], bracket[1]);
        if (have_n) j["finite_n"] = nlohmann::json::parse(to_json(euclidean_comparison(p, n)));
        emit(out, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream text;
    char b1[32], b2[32];
    std::snprintf(b1, sizeof b1, "%.4f", ee);
    std::snprintf(b2, sizeof b2, "%.4f", gv.g_value);
    text << "p = " << format_real(p) << "\n";
    text << "euclidean comparison exponent = " << b1 << "\n";
    text << "multi-shell GV exponent g*    = " << b2 << " (sigma* = " << format_real(gv.sigma_star)
         << ")\n";
    text << "winner: " << (ee > gv.g_value ? "euclidean comparison" : "multi-shell GV") << "\n";
    if (!bracket.empty()) {
        double root = exponent_crossover(bracket[0], bracket[1]);
        text << "crossover in [" << format_real(bracket[0]) << ", " << format_real(bracket[1])
             << "]: p* = " << format_real(root) << "\n";
    }
    if (have_n) text << "\n" << to_text(euclidean_comparison(p, n));
    emit(out, text.str());
    return 0;
}

int cmd_sweep(const std::string& p_range, const std::string& n_range, double p_fixed,
              const std::string& quantity, unsigned threads, const OutputOptions& out) {
    if (p_range.empty() == n_range.empty())
        throw std::domain_error("sweep needs exactly one of --p-range / --n-range");

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header;
    if (!p_range.empty()) {
        std::vector<double> pts = range_points(parse_range(p_range));
        if (!pts.empty() && pts.front() < 1.0) throw std::domain_error("sweep: p values must be >= 1");
        rows.resize(pts.size());
        if (quantity == "gstar" || quantity == "sigmastar") {
            header = {"p", quantity};
            parallel_for(pts.size(), threads, [&](std::size_t i) {
                ExponentResult r = best_exponent(pts[i]);
                rows[i] = {format_real(pts[i]),
                           format_real(quantity == "gstar" ? r.g_value : r.sigma_star)};
            });
        } else if (quantity == "leading") {
            header = {"p", "leading"};
            parallel_for(pts.size(), threads, [&](std::size_t i) {
                rows[i] = {format_real(pts[i]), format_real(large_p_exponent_chain(pts[i])[0])};
            });
        } else if (quantity == "euclid") {
            for (double p : pts)
                if (!(p > 1.0 && p <= 2.0))
                    throw std::domain_error("--quantity euclid requires every p in (1, 2]");
            header = {"p", "euclid_exponent"};
            parallel_for(pts.size(), threads, [&](std::size_t i) {
                rows[i] = {format_real(pts[i]), format_real(euclidean_exponent(pts[i]))};
            });
        } else {
            throw std::domain_error("unknown sweep quantity for a p-range: " + quantity);
        }
    } else {
        if (quantity != "best")
            throw std::domain_error("unknown sweep quantity for an n-range: " + quantity);
        Range r = parse_range(n_range);
        std::vector<double> pts = range_points(r);
        header = {"p", "n", "m_star", "total", "total_log2"};
        rows.resize(pts.size());
        parallel_for(pts.size(), threads, [&](std::size_t i) {
            int n = static_cast<int>(std::llround(pts[i]));
            BoundReport rep = best_bound(p_fixed, n);
            rows[i] = {format_real(p_fixed), std::to_string(n), std::to_string(rep.m_star),
                       to_decimal(rep.total), format_real(log2_approx(rep.total))};
        });
    }
    emit(out, sweep_csv(header, rows));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gilbert-Varshamov lower bounds for kissing numbers of lp-spheres"};
    app.require_subcommand(1);

    // bound
    auto* bound = app.add_subcommand("bound", "Exact multi-shell lower bound for A_p(n, 1/2)");
    double b_p = 0.0;
    int b_n = 0;
    std::string b_m;
    bool b_large = false, b_jv = false;
    unsigned b_threads = 1;
    OutputOptions b_out;
    bound->add_option("--p", b_p, "Norm exponent p >= 1")->required();
    bound->add_option("--n", b_n, "Ambient dimension")->required();
    bound->add_option("--m", b_m, "lp-weight m (integer or the literal 'n'); omit to sweep m in [1, n]");
    std::string b_window;
    bound->add_option("--m-window", b_window, "Restrict the m-sweep to lo:hi (required past n = 2000)");
    bound->add_flag("--large-p", b_large, "Fix m = n and use the Hamming-reduction first shell");
    bound->add_flag("--jv", b_jv, "Apply the Jiang-Vardy log factor (c = 1, up to a constant)");
    bound->add_option("--threads", b_threads, "Worker threads for the m-sweep");
    add_output_options(bound, b_out);

    // exponent
    auto* exponent = app.add_subcommand("exponent", "Asymptotic exponents (bits per dimension)");
    double e_p = 0.0;
    bool e_large = false;
    OutputOptions e_out;
    exponent->add_option("--p", e_p, "Norm exponent p >= 1")->required();
    exponent->add_flag("--large-p", e_large, "Large-p chain: leading 1 - H(2^-p) plus deeper shells");
    add_output_options(exponent, e_out);

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "CSV samples of the per-shell exponent g_p(sigma)");
    double c_p = 0.0, c_step = 1e-3;
    OutputOptions c_out;
    curve_cmd->add_option("--p", c_p, "Norm exponent p >= 1")->required();
    curve_cmd->add_option("--step", c_step, "Grid step in sigma")->capture_default_str();
    curve_cmd->add_option("--out", c_out.path, "Write CSV to this path instead of stdout");

    // construct
    auto* construct = app.add_subcommand("construct", "Build and certify a greedy code");
    double k_p = 0.0;
    int k_n = 0;
    std::string k_m;
    std::uint64_t k_cap = kDefaultEnumerationCap;
    OutputOptions k_out;
    construct->add_option("--p", k_p, "Norm exponent p >= 1")->required();
    construct->add_option("--n", k_n, "Ambient dimension (n <= 64)")->required();
    construct->add_option("--m", k_m, "lp-weight m (integer or the literal 'n')")->required();
    construct->add_option("--cap", k_cap, "Enumeration cap per shell")->capture_default_str();
    construct->add_option("--out", k_out.path, "Certificate path (default: certificate to stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "Re-verify a certificate file");
    std::string v_path;
    verify->add_option("certificate", v_path, "Certificate file to verify")->required();

    // compare
    auto* compare = app.add_subcommand("compare", "Euclidean comparison vs the multi-shell exponent");
    double q_p = 0.0;
    int q_n = 0;
    std::vector<double> q_bracket;
    OutputOptions q_out;
    compare->add_option("--p", q_p, "Norm exponent, 1 < p <= 2")->required();
    auto* q_n_opt = compare->add_option("--n", q_n, "Also evaluate the finite-n comparison bound");
    compare->add_option("--crossover", q_bracket, "Bisection bracket p_lo p_hi")->expected(2);
    add_output_options(compare, q_out);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Batch table over p or n");
    std::string s_prange, s_nrange, s_quantity = "gstar";
    double s_p = 2.0;
    unsigned s_threads = 1;
    OutputOptions s_out;
    sweep->add_option("--p-range", s_prange, "p range lo:hi:step");
    sweep->add_option("--n-range", s_nrange, "n range lo:hi[:step] (fixed p via --p)");
    sweep->add_option("--p", s_p, "Fixed p for an n-range sweep")->capture_default_str();
    sweep->add_option("--quantity", s_quantity,
                      "gstar | sigmastar | leading | euclid (p-range), best (n-range)")
        ->capture_default_str();
    sweep->add_option("--threads", s_threads, "Worker threads")->capture_default_str();
    add_output_options(sweep, s_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bound->parsed())
            return cmd_bound(b_p, b_n, b_m, b_window, b_large, b_jv, b_threads, b_out);
        if (exponent->parsed()) return cmd_exponent(e_p, e_large, e_out);
        if (curve_cmd->parsed()) return cmd_curve(c_p, c_step, c_out);
        if (construct->parsed()) return cmd_construct(k_p, k_n, k_m, k_cap, k_out);
        if (verify->parsed()) return cmd_verify(v_path);
        if (compare->parsed()) return cmd_compare(q_p, q_n, !q_n_opt->empty(), q_bracket, q_out);
        if (sweep->parsed()) return cmd_sweep(s_prange, s_nrange, s_p, s_quantity, s_threads, s_out);
    } catch (const enumeration_cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const certification_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
