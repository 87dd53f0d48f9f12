#include "writers.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <zlib.h>

namespace mwcli {

namespace {

constexpr char kSchemaTag[] = "magnon-walk v1";

// 16 anchor colors, dark violet to yellow, expanded to 256 by interpolation
constexpr unsigned char kColormapAnchors[16][3] = {
    {68, 1, 84},    {72, 26, 108},  {71, 47, 125},  {65, 68, 135},
    {57, 86, 140},  {49, 104, 142}, {42, 120, 142}, {35, 136, 142},
    {31, 152, 139}, {34, 168, 132}, {53, 183, 121}, {84, 197, 104},
    {122, 209, 81}, {165, 219, 54}, {210, 226, 27}, {253, 231, 37},
};

const unsigned char* colormap256() {
    static unsigned char table[256][3];
    static bool built = [] {
        for (int i = 0; i < 256; ++i) {
            double t = i / 255.0 * 15.0;
            int a = static_cast<int>(t);
            int b = a < 15 ? a + 1 : 15;
            double f = t - a;
            for (int c = 0; c < 3; ++c)
                table[i][c] = static_cast<unsigned char>(
                    kColormapAnchors[a][c] + f * (kColormapAnchors[b][c] - kColormapAnchors[a][c]) +
                    0.5);
        }
        return true;
    }();
    (void)built;
    return &table[0][0];
}

}  // namespace

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string write_table(const std::filesystem::path& dir, const std::string& basename,
                        const Table& table, Format format) {
    std::string name = basename + (format == Format::csv ? ".csv" : ".json");
    std::filesystem::path path = dir / name;
    if (format == Format::csv) {
        std::string out;
        out += "# ";
        out += kSchemaTag;
        out += "\n";
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i) out += ',';
            out += table.columns[i];
        }
        out += '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += format_value(row[i]);
            }
            out += '\n';
        }
        write_text_file(path, out);
    } else {
        nlohmann::json j;
        j["schema"] = kSchemaTag;
        j["columns"] = table.columns;
        j["rows"] = table.rows;
        write_text_file(path, j.dump(2) + "\n");
    }
    return name;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::uint32_t file_crc32(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for checksum: " + path.string());
    uLong crc = ::crc32(0L, Z_NULL, 0);
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
        crc = ::crc32(crc, reinterpret_cast<const Bytef*>(buf), static_cast<uInt>(in.gcount()));
    return static_cast<std::uint32_t>(crc);
}

std::string crc32_hex(std::uint32_t crc) {
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%08x", crc);
    return buf;
}

Manifest::Manifest(std::filesystem::path dir, std::string command) : dir_(std::move(dir)) {
    root_["schema"] = kSchemaTag;
    root_["command"] = std::move(command);
    root_["files"] = nlohmann::json::array();
}

void Manifest::add_file(const std::string& name) {
    nlohmann::json entry;
    entry["path"] = name;
    entry["crc32"] = crc32_hex(file_crc32(dir_ / name));
    root_["files"].push_back(entry);
}

void Manifest::flush() { write_text_file(dir_ / "manifest.json", root_.dump(2) + "\n"); }

void write_ppm(const std::filesystem::path& path, int nx, int ny, const double* values,
               double norm_max) {
    const unsigned char* cmap = colormap256();
    std::string out = "P6\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(nx) * ny * 3);
    const double scale = norm_max > 0.0 ? 1.0 / norm_max : 0.0;
    for (int n = 0; n < ny; ++n) {
        for (int m = 0; m < nx; ++m) {
            double v = values[static_cast<std::size_t>(n) * nx + m] * scale;
            if (v < 0.0) v = 0.0;
            if (v > 1.0) v = 1.0;
            int idx = static_cast<int>(v * 255.0 + 0.5);
            out.push_back(static_cast<char>(cmap[idx * 3 + 0]));
            out.push_back(static_cast<char>(cmap[idx * 3 + 1]));
            out.push_back(static_cast<char>(cmap[idx * 3 + 2]));
        }
    }
    write_text_file(path, out);
}

}  // namespace mwcli
