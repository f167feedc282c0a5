#include "lpgv/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lpgv {

namespace {

using nlohmann::json;

const char* method_name(BoundMethod m) {
    switch (m) {
        case BoundMethod::multi_shell: return "multi_shell";
        case BoundMethod::hamming_large_p: return "hamming_large_p";
    }
    return "multi_shell";
}

BoundMethod method_from_name(const std::string& s) {
    if (s == "multi_shell") return BoundMethod::multi_shell;
    if (s == "hamming_large_p") return BoundMethod::hamming_large_p;
    throw std::invalid_argument("unknown bound method: " + s);
}

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string full17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// --- JSON -----------------------------------------------------------------

std::string to_json(const BoundReport& report) {
    json j;
    j["type"] = "bound_report";
    j["p"] = report.p;
    j["n"] = report.n;
    j["m_star"] = report.m_star;
    j["method"] = method_name(report.method);
    j["jv_factor"] = report.jv_factor;
    json shells = json::array();
    for (std::size_t i = 0; i < report.per_shell.size(); ++i) {
        const ShellTerm& t = report.per_shell[i];
        shells.push_back({{"shell", i + 1},
                          {"m_i", t.m_i},
                          {"shell_size", to_decimal(t.shell_size)},
                          {"ball_size", to_decimal(t.ball_size)},
                          {"gv_term", to_decimal(t.gv_term)}});
    }
    j["per_shell"] = std::move(shells);
    j["total"] = to_decimal(report.total);
    j["total_log2"] = report.total > 0 ? log2_approx(report.total) : 0.0;
    return j.dump(2) + "\n";
}

BoundReport bound_report_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.value("type", "") != "bound_report")
        throw std::invalid_argument("not a bound_report document");
    BoundReport report;
    report.p = j.at("p").get<double>();
    report.n = j.at("n").get<int>();
    report.m_star = j.at("m_star").get<int>();
    report.method = method_from_name(j.at("method").get<std::string>());
    report.jv_factor = j.at("jv_factor").get<bool>();
    for (const auto& s : j.at("per_shell")) {
        ShellTerm t;
        t.m_i = s.at("m_i").get<std::int64_t>();
        t.shell_size = from_decimal(s.at("shell_size").get<std::string>());
        t.ball_size = from_decimal(s.at("ball_size").get<std::string>());
        t.gv_term = from_decimal(s.at("gv_term").get<std::string>());
        report.per_shell.push_back(std::move(t));
    }
    report.total = from_decimal(j.at("total").get<std::string>());
    return report;
}

std::string to_json(const ExponentResult& result) {
    json j;
    j["type"] = "exponent_result";
    j["p"] = result.p;
    j["sigma_star"] = result.sigma_star;
    j["y_star"] = result.y_star;
    j["g_value"] = result.g_value;
    j["chain_start"] = result.chain_start;
    j["shell_exponents"] = result.shell_exponents;
    return j.dump(2) + "\n";
}

ExponentResult exponent_result_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.value("type", "") != "exponent_result")
        throw std::invalid_argument("not an exponent_result document");
    ExponentResult r;
    r.p = j.at("p").get<double>();
    r.sigma_star = j.at("sigma_star").get<double>();
    r.y_star = j.at("y_star").get<double>();
    r.g_value = j.at("g_value").get<double>();
    r.chain_start = j.at("chain_start").get<double>();
    r.shell_exponents = j.at("shell_exponents").get<std::vector<double>>();
    return r;
}

std::string to_json(const ComparisonBound& bound) {
    json j;
    j["type"] = "comparison_bound";
    j["p"] = bound.p;
    j["n"] = bound.n;
    j["theta"] = bound.theta;
    j["value_log2"] = bound.value_log2;
    j["value"] = bound.value;
    j["asymptotic_factor_taken_as_one"] = true;
    return j.dump(2) + "\n";
}

ComparisonBound comparison_bound_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.value("type", "") != "comparison_bound")
        throw std::invalid_argument("not a comparison_bound document");
    ComparisonBound b;
    b.p = j.at("p").get<double>();
    b.n = j.at("n").get<int>();
    b.theta = j.at("theta").get<double>();
    b.value_log2 = j.at("value_log2").get<double>();
    // JSON has no infinity literal; an overflowed value serializes as null
    b.value = j.at("value").is_null() ? std::numeric_limits<double>::infinity()
                                      : j.at("value").get<double>();
    return b;
}

// --- text -------------------------------------------------------------------

std::string to_text(const BoundReport& report) {
    std::ostringstream out;
    out << "lower bound for A_p(n, 1/2)\n";
    out << "p = " << format_real(report.p) << ", n = " << report.n << "\n";
    out << "method = " << method_name(report.method);
    if (report.jv_factor) out << " (first shell carries the Jiang-Vardy log factor, up to an unspecified constant)";
    out << "\n";
    out << "m = " << report.m_star << "\n";
    out << "shell  m_i  |J_i|  B_i  term\n";
    for (std::size_t i = 0; i < report.per_shell.size(); ++i) {
        const ShellTerm& t = report.per_shell[i];
        out << (i + 1) << "  " << t.m_i << "  " << to_decimal(t.shell_size) << "  "
            << to_decimal(t.ball_size) << "  " << to_decimal(t.gv_term) << "\n";
    }
    out << "total = " << to_decimal(report.total);
    if (report.total > 0) out << "  (log2 = " << fixed4(log2_approx(report.total)) << ")";
    out << "\n";
    return out.str();
}

std::string to_text(const ExponentResult& result) {
    std::ostringstream out;
    out << "asymptotic exponents, p = " << format_real(result.p) << "\n";
    out << "sigma* = " << fixed4(result.sigma_star) << "\n";
    out << "y*     = " << fixed4(result.y_star) << "\n";
    out << "g*     = " << fixed4(result.g_value) << "  (bits per dimension)\n";
    out << "shell chain from sigma = " << fixed4(result.chain_start) << ":";
    for (double e : result.shell_exponents) out << " " << fixed4(e);
    out << "\n";
    return out.str();
}

std::string to_text(const ComparisonBound& bound) {
    std::ostringstream out;
    out << "Euclidean comparison bound, p = " << format_real(bound.p)
        << ", n = " << bound.n << "\n";
    out << "theta = " << fixed4(bound.theta) << " rad  (sin(theta/2) = 2^(-p/2))\n";
    out << "log2(bound) = " << format_real(bound.value_log2)
        << "   [(1+o(1)) taken as 1]\n";
    out << "bound = " << format_real(bound.value) << "\n";
    return out.str();
}

// --- CSV --------------------------------------------------------------------

std::string curve_csv(const std::vector<CurveSample>& samples) {
    std::string out = "sigma,g\n";
    for (const CurveSample& s : samples)
        out += format_real(s.sigma) + "," + format_real(s.g) + "\n";
    return out;
}

std::string bound_report_csv(const BoundReport& report) {
    std::string out = "p,n,m,method,shell,m_i,shell_size,ball_size,gv_term,total\n";
    for (std::size_t i = 0; i < report.per_shell.size(); ++i) {
        const ShellTerm& t = report.per_shell[i];
        out += format_real(report.p) + "," + std::to_string(report.n) + "," +
               std::to_string(report.m_star) + "," + method_name(report.method) + "," +
               std::to_string(i + 1) + "," + std::to_string(t.m_i) + "," +
               to_decimal(t.shell_size) + "," + to_decimal(t.ball_size) + "," +
               to_decimal(t.gv_term) + "," + to_decimal(report.total) + "\n";
    }
    return out;
}

std::string exponent_result_csv(const ExponentResult& result) {
    std::string out = "p,sigma_star,y_star,g_value,chain_start,shell,exponent\n";
    for (std::size_t i = 0; i < result.shell_exponents.size(); ++i) {
        out += format_real(result.p) + "," + format_real(result.sigma_star) + "," +
               format_real(result.y_star) + "," + format_real(result.g_value) + "," +
               format_real(result.chain_start) + "," + std::to_string(i + 1) + "," +
               format_real(result.shell_exponents[i]) + "\n";
    }
    return out;
}

std::string sweep_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i)
        out += (i ? "," : "") + header[i];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + row[i];
        out += "\n";
    }
    return out;
}

// --- certificate file ---------------------------------------------------------

std::string certificate_to_string(const CodeCertificate& cert) {
    std::ostringstream out;
    out << "lpgv-certificate 1\n";
    out << "p " << full17(cert.sys.pnorm.p()) << " n " << cert.sys.n << " m " << cert.sys.m
        << "\n";
    out << "levels";
    for (std::int64_t mi : cert.sys.levels) out << " " << mi;
    out << "\n";
    out << "sizes";
    for (std::uint64_t s : cert.sizes_per_shell) out << " " << s;
    out << "\n";
    out << "guarantee " << to_decimal(cert.guarantee) << "\n";
    out << "min_dist_p_pow " << full17(cert.min_dist_p_pow) << "\n";
    out << "points " << cert.points.size() << "\n";
    for (const ShellPoint& pt : cert.points) {
        out << (pt.shell + 1) << " ";
        bool first = true;
        for (int k = 0; k < cert.sys.n; ++k) {
            if (pt.support & (std::uint64_t(1) << k)) {
                if (!first) out << ",";
                out << (k + 1);
                first = false;
            }
        }
        out << " ";
        for (int k = 0; k < cert.sys.n; ++k) {
            if (pt.support & (std::uint64_t(1) << k))
                out << ((pt.neg >> k) & 1 ? '-' : '+');
        }
        out << "\n";
    }
    return out.str();
}

CodeCertificate certificate_from_string(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    int version = 0;
    if (!(in >> tag >> version) || tag != "lpgv-certificate" || version != 1)
        throw std::invalid_argument("not a version-1 lpgv certificate");
    double p = 0.0;
    int n = 0, m = 0;
    std::string key;
    if (!(in >> key >> p) || key != "p") throw std::invalid_argument("certificate: missing p");
    if (!(in >> key >> n) || key != "n") throw std::invalid_argument("certificate: missing n");
    if (!(in >> key >> m) || key != "m") throw std::invalid_argument("certificate: missing m");

    CodeCertificate cert{build_shell_system(p, n, m), {}, {}, 0.0, 0};

    if (!(in >> key) || key != "levels") throw std::invalid_argument("certificate: missing levels");
    for (std::size_t i = 0; i < cert.sys.r(); ++i) {
        std::int64_t mi;
        if (!(in >> mi) || mi != cert.sys.levels[i])
            throw std::invalid_argument("certificate: levels disagree with the recursion");
    }
    if (!(in >> key) || key != "sizes") throw std::invalid_argument("certificate: missing sizes");
    for (std::size_t i = 0; i < cert.sys.r(); ++i) {
        std::uint64_t s;
        if (!(in >> s)) throw std::invalid_argument("certificate: bad sizes line");
        cert.sizes_per_shell.push_back(s);
    }
    std::string guarantee_str;
    if (!(in >> key >> guarantee_str) || key != "guarantee")
        throw std::invalid_argument("certificate: missing guarantee");
    cert.guarantee = from_decimal(guarantee_str);
    if (!(in >> key >> cert.min_dist_p_pow) || key != "min_dist_p_pow")
        throw std::invalid_argument("certificate: missing min_dist_p_pow");
    std::size_t count = 0;
    if (!(in >> key >> count) || key != "points")
        throw std::invalid_argument("certificate: missing point count");

    for (std::size_t i = 0; i < count; ++i) {
        int shell1 = 0;
        std::string indices, signs;
        if (!(in >> shell1 >> indices >> signs))
            throw std::invalid_argument("certificate: truncated point list");
        if (shell1 < 1 || static_cast<std::size_t>(shell1) > cert.sys.r())
            throw std::invalid_argument("certificate: shell index out of range");
        ShellPoint pt;
        pt.shell = shell1 - 1;
        std::istringstream idx(indices);
        std::string tok;
        std::size_t sign_pos = 0;
        while (std::getline(idx, tok, ',')) {
            int coord = std::stoi(tok);
            if (coord < 1 || coord > n)
                throw std::invalid_argument("certificate: coordinate index out of range");
            std::uint64_t bit = std::uint64_t(1) << (coord - 1);
            if (pt.support & bit)
                throw std::invalid_argument("certificate: repeated coordinate index");
            pt.support |= bit;
            if (sign_pos >= signs.size())
                throw std::invalid_argument("certificate: sign string too short");
            if (signs[sign_pos] == '-')
                pt.neg |= bit;
            else if (signs[sign_pos] != '+')
                throw std::invalid_argument("certificate: bad sign character");
            ++sign_pos;
        }
        if (sign_pos != signs.size())
            throw std::invalid_argument("certificate: sign string too long");
        if (std::popcount(pt.support) != cert.sys.levels[static_cast<std::size_t>(pt.shell)])
            throw std::invalid_argument("certificate: support size disagrees with the shell level");
        cert.points.push_back(pt);
    }
    return cert;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output path: " + path);
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + path);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move output into place: " + path);
    }
}

}  // namespace lpgv
