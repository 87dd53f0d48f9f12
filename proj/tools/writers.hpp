#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace mwcli {

// fixed 12-significant-digit formatting keeps reruns byte-identical
std::string format_value(double v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

enum class Format { csv, json };

// Returns the file name actually written (extension depends on format).
std::string write_table(const std::filesystem::path& dir, const std::string& basename,
                        const Table& table, Format format);

void write_text_file(const std::filesystem::path& path, const std::string& text);

std::uint32_t file_crc32(const std::filesystem::path& path);
std::string crc32_hex(std::uint32_t crc);

// Accumulates per-file checksums and flushes manifest.json.
class Manifest {
public:
    Manifest(std::filesystem::path dir, std::string command);

    void add_file(const std::string& name);
    nlohmann::json& root() { return root_; }
    void flush();

private:
    std::filesystem::path dir_;
    nlohmann::json root_;
};

// lattice frame -> binary P6 pixmap through a 256-entry colormap
void write_ppm(const std::filesystem::path& path, int nx, int ny, const double* values,
               double norm_max);

}  // namespace mwcli
