#include "madp/io/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "madp/errors.hpp"

namespace madp::io {

namespace {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::optional<double> parse_optional(const std::string& field) {
    if (field.empty()) return std::nullopt;
    return std::stod(field);
}

} // namespace

std::string convergence_csv_text(const std::vector<ConvergenceRow>& rows, bool with_algorithm) {
    std::string out;
    out += with_algorithm ? "algorithm,iteration,elapsed_s,pct_optimal,supnorm\n"
                          : "iteration,elapsed_s,pct_optimal,supnorm\n";
    for (const ConvergenceRow& r : rows) {
        if (with_algorithm) {
            out += r.algorithm.value_or("");
            out += ',';
        }
        out += std::to_string(r.iteration);
        out += ',';
        out += format_double(r.elapsed_s);
        out += ',';
        if (r.pct_optimal) out += format_double(*r.pct_optimal);
        out += ',';
        if (r.supnorm) out += format_double(*r.supnorm);
        out += '\n';
    }
    return out;
}

void write_convergence_csv(const std::filesystem::path& path,
                           const std::vector<ConvergenceRow>& rows, bool with_algorithm) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw UsageError("cannot open " + path.string() + " for writing");
    out << convergence_csv_text(rows, with_algorithm);
    if (!out) throw UsageError("write failed for " + path.string());
}

std::vector<ConvergenceRow> read_convergence_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw UsageError(path.string() + ": empty CSV");
    const bool with_algorithm = line.rfind("algorithm,", 0) == 0;
    const std::string expected = with_algorithm
                                     ? "algorithm,iteration,elapsed_s,pct_optimal,supnorm"
                                     : "iteration,elapsed_s,pct_optimal,supnorm";
    if (line != expected) throw UsageError(path.string() + ": unexpected CSV header");
    std::vector<ConvergenceRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line, ',');
        const std::size_t base = with_algorithm ? 1 : 0;
        if (f.size() != base + 4) throw UsageError(path.string() + ": malformed CSV row");
        ConvergenceRow r;
        if (with_algorithm) r.algorithm = f[0];
        r.iteration = std::stoll(f[base]);
        r.elapsed_s = std::stod(f[base + 1]);
        r.pct_optimal = parse_optional(f[base + 2]);
        r.supnorm = parse_optional(f[base + 3]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string drop_csv_column(const std::string& text, const std::string& name) {
    std::stringstream in(text);
    std::string line, out;
    std::size_t drop = static_cast<std::size_t>(-1);
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> f = split(line, ',');
        if (first) {
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (f[i] == name) drop = i;
            }
            first = false;
        }
        std::string joined;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i == drop) continue;
            if (!joined.empty()) joined += ',';
            joined += f[i];
        }
        out += joined;
        out += '\n';
    }
    return out;
}

} // namespace madp::io
