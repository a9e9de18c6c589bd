#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace madp::io {

/// One convergence-curve checkpoint. Optional fields serialize as empty
/// cells. `algorithm` is set only for combined comparison files.
struct ConvergenceRow {
    std::optional<std::string> algorithm;
    std::int64_t iteration = 0;
    double elapsed_s = 0.0;
    std::optional<double> pct_optimal;
    std::optional<double> supnorm;
};

/// Header `iteration,elapsed_s,pct_optimal,supnorm`, with a leading
/// `algorithm` column when with_algorithm is set. Numbers print with
/// round-trip precision, so parse(emit(x)) == x.
std::string convergence_csv_text(const std::vector<ConvergenceRow>& rows, bool with_algorithm);
void write_convergence_csv(const std::filesystem::path& path,
                           const std::vector<ConvergenceRow>& rows, bool with_algorithm);
std::vector<ConvergenceRow> read_convergence_csv(const std::filesystem::path& path);

/// CSV text with the named column deleted (header and body). Comparisons
/// between reruns ignore the elapsed-time column this way.
std::string drop_csv_column(const std::string& text, const std::string& name);

} // namespace madp::io
