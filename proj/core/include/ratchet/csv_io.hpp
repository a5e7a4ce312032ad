#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ratchet/classical.hpp"
#include "ratchet/observables.hpp"
#include "ratchet/quasienergy.hpp"

namespace ratchet {

/// One emitted data file; `file` is relative to the output directory.
struct OutputRecord {
    std::string file;
    std::string sha256;
    std::uintmax_t bytes = 0;
};

std::string sha256_hex(std::string_view data);
std::string file_sha256(const std::filesystem::path& path);

// CSV writers. Floating point uses 17 significant digits, so files are
// byte-identical for identical inputs on one platform.

/// t,p_mean,p2_mean,otoc_var,otoc_trans_re,otoc_trans_im,autocorr_re,autocorr_im
OutputRecord emit_series(const TimeSeries& series, const std::filesystem::path& dir,
                         const std::string& file);
/// n,p,prob
OutputRecord emit_distribution(std::span<const MomentumBin> bins, const std::filesystem::path& dir,
                               const std::string& file);
/// epsilon,density
OutputRecord emit_spectrum(const QuasienergyDistribution& dist, const std::filesystem::path& dir,
                           const std::string& file);
/// theta,p
OutputRecord emit_portrait(std::span<const PhasePoint> points, const std::filesystem::path& dir,
                           const std::string& file);

/// A small table of pre-formatted cells with a header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
};
OutputRecord emit_table(const CsvTable& table, const std::filesystem::path& dir,
                        const std::string& file);

/// Writes `content` to dir/file and returns its record.
OutputRecord write_output(const std::filesystem::path& dir, const std::string& file,
                          const std::string& content);

/// Parses a CSV produced by the writers above (header skipped) into columns
/// of doubles; non-numeric cells read as NaN.
std::vector<std::vector<double>> read_csv_columns(const std::filesystem::path& path);

}  // namespace ratchet
