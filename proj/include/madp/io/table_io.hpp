#pragma once

#include <filesystem>
#include <string>

#include "madp/value_table.hpp"

namespace madp::io {

/// Persisted value tables: fixed header (format tag, instance label, seed,
/// horizon, per-dimension bounds) followed by the flat payload as
/// little-endian IEEE-754 doubles in flat index order. Reloads bitwise.
struct LoadedTable {
    ValueTable table;
    std::string label;
    std::uint64_t seed = 0;
};

void save_value_table(const std::filesystem::path& path, const ValueTable& table,
                      const std::string& label, std::uint64_t seed);

LoadedTable load_value_table(const std::filesystem::path& path);

} // namespace madp::io
