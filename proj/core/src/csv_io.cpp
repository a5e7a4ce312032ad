#include "ratchet/csv_io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "ratchet/config.hpp"

namespace ratchet {

namespace {

std::string to_hex(const unsigned char* bytes, unsigned len) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(digits[bytes[i] >> 4]);
        out.push_back(digits[bytes[i] & 0xF]);
    }
    return out;
}

struct DigestContext {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx{EVP_MD_CTX_new(), &EVP_MD_CTX_free};

    DigestContext() {
        if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
            throw std::runtime_error("sha256 initialization failed");
        }
    }
    void update(const void* data, std::size_t len) {
        if (EVP_DigestUpdate(ctx.get(), data, len) != 1) throw std::runtime_error("sha256 update failed");
    }
    std::string finish() {
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned len = 0;
        if (EVP_DigestFinal_ex(ctx.get(), md, &len) != 1) throw std::runtime_error("sha256 final failed");
        return to_hex(md, len);
    }
};

std::string fmt(double v) { return format_double(v); }

}  // namespace

std::string sha256_hex(std::string_view data) {
    DigestContext d;
    d.update(data.data(), data.size());
    return d.finish();
}

std::string file_sha256(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    DigestContext d;
    char buf[1 << 15];
    while (in) {
        in.read(buf, sizeof buf);
        d.update(buf, static_cast<std::size_t>(in.gcount()));
    }
    return d.finish();
}

OutputRecord write_output(const std::filesystem::path& dir, const std::string& file,
                          const std::string& content) {
    std::filesystem::create_directories(dir);
    const auto path = dir / file;
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + path.string());
    }
    return {file, sha256_hex(content), content.size()};
}

OutputRecord emit_series(const TimeSeries& s, const std::filesystem::path& dir, const std::string& file) {
    std::string out = "t,p_mean,p2_mean,otoc_var,otoc_trans_re,otoc_trans_im,autocorr_re,autocorr_im\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += std::to_string(s.time[i]);
        for (double v : {s.p_mean[i], s.p2_mean[i], s.otoc_var[i], s.otoc_trans[i].real(),
                         s.otoc_trans[i].imag(), s.autocorr[i].real(), s.autocorr[i].imag()}) {
            out += ',';
            out += fmt(v);
        }
        out += '\n';
    }
    return write_output(dir, file, out);
}

OutputRecord emit_distribution(std::span<const MomentumBin> bins, const std::filesystem::path& dir,
                               const std::string& file) {
    std::string out = "n,p,prob\n";
    for (const auto& b : bins) {
        out += std::to_string(b.index) + ',' + fmt(b.momentum) + ',' + fmt(b.probability) + '\n';
    }
    return write_output(dir, file, out);
}

OutputRecord emit_spectrum(const QuasienergyDistribution& dist, const std::filesystem::path& dir,
                           const std::string& file) {
    std::string out = "epsilon,density\n";
    for (std::size_t k = 0; k < dist.density.size(); ++k) {
        out += fmt(dist.epsilon[k]) + ',' + fmt(dist.density[k]) + '\n';
    }
    return write_output(dir, file, out);
}

OutputRecord emit_portrait(std::span<const PhasePoint> points, const std::filesystem::path& dir,
                           const std::string& file) {
    std::string out = "theta,p\n";
    for (const auto& pt : points) out += fmt(pt.theta) + ',' + fmt(pt.p) + '\n';
    return write_output(dir, file, out);
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) throw std::invalid_argument("csv row width mismatch");
    rows.push_back(std::move(row));
}

OutputRecord emit_table(const CsvTable& table, const std::filesystem::path& dir, const std::string& file) {
    const auto join = [](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        return line + '\n';
    };
    std::string out = join(table.header);
    for (const auto& row : table.rows) out += join(row);
    return write_output(dir, file, out);
}

std::vector<std::vector<double>> read_csv_columns(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::vector<double>> cols;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ss, cell, ',')) {
            if (cols.size() <= c) cols.emplace_back();
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            cols[c++].push_back(end != cell.c_str() && *end == '\0' ? v : std::nan(""));
        }
    }
    return cols;
}

}  // namespace ratchet
