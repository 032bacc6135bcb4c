#include "noisebench/imgio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <utility>

#include "noisebench/errors.hpp"

namespace noisebench {

namespace {

bool is_pgm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class HeaderScanner {
public:
    explicit HeaderScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::string next_token(const char* field) {
        skip_separators();
        if (pos_ >= bytes_.size())
            throw parse_error(std::string("missing ") + field + " in PGM header");
        std::string token;
        while (pos_ < bytes_.size() && !is_pgm_space(bytes_[pos_]) && bytes_[pos_] != '#')
            token.push_back(static_cast<char>(bytes_[pos_++]));
        return token;
    }

    int next_int(const char* field, int min_value, int max_value) {
        const std::string token = next_token(field);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            throw parse_error(std::string(field) + " is not numeric: \"" + token + "\"");
        if (value < min_value || value > max_value)
            throw parse_error(std::string(field) + " must be in [" + std::to_string(min_value) + "," +
                              std::to_string(max_value) + "], got " + std::to_string(value));
        return value;
    }

    // The header ends with exactly one whitespace byte before the payload.
    void consume_payload_separator() {
        if (pos_ >= bytes_.size() || !is_pgm_space(bytes_[pos_]))
            throw parse_error("missing whitespace between maxval and pixel payload");
        ++pos_;
    }

    std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

private:
    void skip_separators() {
        while (pos_ < bytes_.size()) {
            if (is_pgm_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void append_cells(std::string& out, const BenchRow& row) {
    for (double cell : row.psnr_db) {
        out += ',';
        out += format_psnr_db(cell);
    }
}

void check_report(const BenchReport& report) {
    if (report.rows.size() != kNoiseOrder.size())
        throw parameter_error("report must hold exactly " + std::to_string(kNoiseOrder.size()) + " rows, got " +
                              std::to_string(report.rows.size()));
    for (std::size_t i = 0; i < kNoiseOrder.size(); ++i)
        if (report.rows[i].noise != kNoiseOrder[i])
            throw parameter_error("report row " + std::to_string(i) + " must be " +
                                  std::string(noise_name(kNoiseOrder[i])) + ", got " +
                                  std::string(noise_name(report.rows[i].noise)));
}

} // namespace

ImageGrid read_pgm(std::span<const std::uint8_t> bytes) {
    HeaderScanner scan(bytes);
    const std::string magic = scan.next_token("magic");
    if (magic != "P5")
        throw parse_error("unsupported magic \"" + magic + "\" (expected binary PGM \"P5\")");
    const int width = scan.next_int("width", 1, 1 << 20);
    const int height = scan.next_int("height", 1, 1 << 20);
    const int maxval = scan.next_int("maxval", 1, 255);
    scan.consume_payload_separator();

    const std::span<const std::uint8_t> payload = scan.rest();
    const std::size_t expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (payload.size() < expected)
        throw parse_error("pixel payload truncated: expected " + std::to_string(expected) + " bytes, found " +
                          std::to_string(payload.size()));
    (void)maxval; // intensities are kept as raw byte values 0..maxval
    std::vector<double> pixels;
    pixels.reserve(expected);
    for (std::size_t i = 0; i < expected; ++i)
        pixels.push_back(static_cast<double>(payload[i]));
    return ImageGrid(width, height, std::move(pixels));
}

std::vector<std::uint8_t> write_pgm(const ImageGrid& img) {
    const std::string header =
        "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + img.pixel_count());
    out.insert(out.end(), header.begin(), header.end());
    for (double v : img.pixels())
        out.push_back(static_cast<std::uint8_t>(round_to_byte(v)));
    return out;
}

ImageGrid load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open " + path.string() + " for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw io_error("failed reading " + path.string());
    return read_pgm(bytes);
}

void save_pgm(const std::filesystem::path& path, const ImageGrid& img) {
    const std::vector<std::uint8_t> bytes = write_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw io_error("failed writing " + path.string());
}

void save_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw io_error("failed writing " + path.string());
}

std::string format_psnr_db(double db) {
    if (std::isinf(db))
        return db > 0.0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, db, std::chars_format::fixed, 4);
    if (ec != std::errc{})
        throw numeric_error("cannot format PSNR value");
    return std::string(buf, ptr);
}

std::string write_report_csv(const BenchReport& report) {
    check_report(report);
    std::string out = "noise,median,mean,wiener,gaussian,lowpass,highpass,bilateral,laplacian,best\n";
    for (const BenchRow& row : report.rows) {
        out += noise_name(row.noise);
        append_cells(out, row);
        out += ',';
        out += filter_name(row.best);
        out += '\n';
    }
    return out;
}

std::string write_report_markdown(const BenchReport& report) {
    check_report(report);
    std::string out = "# noisebench report\n\n";
    out += "- image: " + report.image_id + "\n";
    out += "- seed: " + std::to_string(report.seed) + "\n";
    out += std::string("- clip: ") + (report.clip_mode ? "on" : "off") + "\n";
    out += "- version: " + report.tool_version + "\n\n";
    out += "| noise | median | mean | wiener | gaussian | lowpass | highpass | bilateral | laplacian | best |\n";
    out += "| --- | --- | --- | --- | --- | --- | --- | --- | --- | --- |\n";
    for (const BenchRow& row : report.rows) {
        out += "| ";
        out += noise_name(row.noise);
        for (double cell : row.psnr_db) {
            out += " | ";
            out += format_psnr_db(cell);
        }
        out += " | ";
        out += filter_name(row.best);
        out += " |\n";
    }
    return out;
}

std::string write_histogram_csv(const Histogram& h) {
    std::string out;
    out.reserve(256 * 8);
    for (std::size_t bin = 0; bin < h.bins.size(); ++bin) {
        out += std::to_string(bin);
        out += ',';
        out += std::to_string(h.bins[bin]);
        out += '\n';
    }
    return out;
}

} // namespace noisebench
