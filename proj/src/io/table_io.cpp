#include "madp/io/table_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "madp/errors.hpp"

namespace madp::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "table files are little-endian; serialization assumes a little-endian host");

constexpr char kMagic[4] = {'M', 'V', 'T', '1'};

template <class T>
void write_pod(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T read_pod(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw UsageError("value-table file truncated");
    return value;
}

} // namespace

void save_value_table(const std::filesystem::path& path, const ValueTable& table,
                      const std::string& label, std::uint64_t seed) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot open " + path.string() + " for writing");
    out.write(kMagic, sizeof(kMagic));
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(label.size()));
    out.write(label.data(), static_cast<std::streamsize>(label.size()));
    write_pod<std::uint64_t>(out, seed);
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(table.horizon()));
    const StateSpace& space = table.space();
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(space.dims()));
    for (int k = 0; k < space.dims(); ++k) {
        write_pod<std::int32_t>(out, space.lo(k));
        write_pod<std::int32_t>(out, space.hi(k));
    }
    write_pod<std::uint64_t>(out, static_cast<std::uint64_t>(table.size()));
    out.write(reinterpret_cast<const char*>(table.data().data()),
              static_cast<std::streamsize>(sizeof(double) * table.data().size()));
    if (!out) throw UsageError("write failed for " + path.string());
}

LoadedTable load_value_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path.string());
    char magic[4];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw UsageError(path.string() + " is not a value-table file");
    }
    const auto label_len = read_pod<std::uint32_t>(in);
    std::string label(label_len, '\0');
    in.read(label.data(), label_len);
    if (!in) throw UsageError("value-table file truncated");
    const auto seed = read_pod<std::uint64_t>(in);
    const auto horizon = read_pod<std::uint32_t>(in);
    const auto dims = read_pod<std::uint32_t>(in);
    if (dims == 0 || dims > static_cast<std::uint32_t>(kMaxDims)) {
        throw UsageError("value-table file has unsupported dimensionality");
    }
    std::vector<int> lo(dims), hi(dims);
    for (std::uint32_t k = 0; k < dims; ++k) {
        lo[k] = read_pod<std::int32_t>(in);
        hi[k] = read_pod<std::int32_t>(in);
    }
    StateSpace space(std::move(lo), std::move(hi));
    const auto count = read_pod<std::uint64_t>(in);
    ValueTable table(static_cast<int>(horizon), space);
    if (count != static_cast<std::uint64_t>(table.size())) {
        throw UsageError("value-table payload size does not match its header");
    }
    in.read(reinterpret_cast<char*>(table.data().data()),
            static_cast<std::streamsize>(sizeof(double) * table.data().size()));
    if (!in) throw UsageError("value-table file truncated");
    return {std::move(table), std::move(label), seed};
}

} // namespace madp::io
