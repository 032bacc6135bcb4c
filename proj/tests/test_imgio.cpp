#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "noisebench/errors.hpp"
#include "noisebench/imgio.hpp"
#include "noisebench/rng.hpp"
#include "noisebench/version.hpp"

using namespace noisebench;

namespace {

std::vector<std::uint8_t> bytes_of(std::string_view text) {
    return std::vector<std::uint8_t>(text.begin(), text.end());
}

std::vector<std::uint8_t> concat(std::string_view header, std::initializer_list<int> pixels) {
    std::vector<std::uint8_t> out(header.begin(), header.end());
    for (int p : pixels)
        out.push_back(static_cast<std::uint8_t>(p));
    return out;
}

BenchReport sample_report() {
    BenchReport report;
    report.image_id = "synthetic";
    report.seed = 42;
    report.clip_mode = true;
    report.tool_version = kToolVersion;
    for (NoiseKind kind : kNoiseOrder) {
        BenchRow row;
        row.noise = kind;
        row.params = "defaults";
        for (std::size_t i = 0; i < row.psnr_db.size(); ++i)
            row.psnr_db[i] = 10.0 + double(i);
        row.best = FilterKind::laplacian; // highest cell above
        report.rows.push_back(row);
    }
    return report;
}

} // namespace

TEST_CASE("read_pgm decodes a minimal valid image") {
    const auto data = concat("P5 2 2 255 ", {0, 128, 255, 7});
    const ImageGrid img = read_pgm(data);
    CHECK(img.width() == 2);
    CHECK(img.height() == 2);
    CHECK(img.at(0, 0) == 0.0);
    CHECK(img.at(1, 0) == 128.0);
    CHECK(img.at(0, 1) == 255.0);
    CHECK(img.at(1, 1) == 7.0);
}

TEST_CASE("read_pgm accepts comments and arbitrary whitespace in the header") {
    const auto data = concat("P5\n# a comment line\n 2\t1 # trailing\n255\n", {10, 20});
    const ImageGrid img = read_pgm(data);
    CHECK(img.width() == 2);
    CHECK(img.height() == 1);
    CHECK(img.at(0, 0) == 10.0);
    CHECK(img.at(1, 0) == 20.0);
}

TEST_CASE("read_pgm rejects malformed inputs with field-specific messages") {
    CHECK_THROWS_WITH_AS(read_pgm(concat("P2 2 2 255 ", {0, 0, 0, 0})),
                         doctest::Contains("magic"), parse_error);
    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P5 abc 2 255 ")), doctest::Contains("width"),
                         parse_error);
    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P5 2 -3 255 ")), doctest::Contains("height"),
                         parse_error);
    CHECK_THROWS_WITH_AS(read_pgm(concat("P5 2 2 70000 ", {0, 0, 0, 0})),
                         doctest::Contains("maxval"), parse_error);
    CHECK_THROWS_WITH_AS(read_pgm(concat("P5 2 2 255 ", {0, 0, 0})),
                         doctest::Contains("payload"), parse_error);
    CHECK_THROWS_AS(read_pgm(bytes_of("")), parse_error);
    CHECK_THROWS_AS(read_pgm(bytes_of("P5 2")), parse_error);
}

TEST_CASE("write_pgm emits the canonical header and quantized pixels") {
    ImageGrid img(3, 1, std::vector<double>{-2.0, 127.5, 300.0});
    const auto data = write_pgm(img);
    const std::string header = "P5\n3 1\n255\n";
    REQUIRE(data.size() == header.size() + 3);
    CHECK(std::string(data.begin(), data.begin() + header.size()) == header);
    CHECK(data[header.size() + 0] == 0);
    CHECK(data[header.size() + 1] == 128); // half away from zero
    CHECK(data[header.size() + 2] == 255);
}

TEST_CASE("pgm write-read roundtrip equals clip-and-round; rewrite is byte-stable") {
    Rng rng(61);
    ImageGrid img(9, 7);
    for (auto& v : img.pixels())
        v = -40.0 + 340.0 * rng.uniform01();
    const auto first = write_pgm(img);
    const ImageGrid decoded = read_pgm(first);
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        CHECK(decoded.pixels()[i] == double(round_to_byte(img.pixels()[i])));
    const auto second = write_pgm(decoded);
    CHECK(first == second);
}

TEST_CASE("file wrappers round-trip and raise io_error on bad paths") {
    const auto dir = std::filesystem::temp_directory_path() / "noisebench_imgio_test";
    std::filesystem::create_directories(dir);
    ImageGrid img(4, 3, 99.0);
    const auto path = dir / "img.pgm";
    save_pgm(path, img);
    const ImageGrid back = load_pgm(path);
    CHECK(back.width() == 4);
    CHECK(back.height() == 3);
    CHECK(back.at(0, 0) == 99.0);

    CHECK_THROWS_AS(load_pgm(dir / "missing.pgm"), io_error);
    CHECK_THROWS_AS(save_pgm(dir / "no_such_dir" / "img.pgm", img), io_error);
    CHECK_THROWS_AS(save_text(dir / "no_such_dir" / "r.csv", "x"), io_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("psnr cells format with four decimals and named infinity") {
    CHECK(format_psnr_db(26.152639999) == "26.1526");
    CHECK(format_psnr_db(26.15267) == "26.1527");
    CHECK(format_psnr_db(0.0) == "0.0000");
    CHECK(format_psnr_db(-3.25) == "-3.2500");
    CHECK(format_psnr_db(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("csv report has the canonical header, row order, and cells") {
    const std::string csv = write_report_csv(sample_report());
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "noise,median,mean,wiener,gaussian,lowpass,highpass,bilateral,laplacian,best");
    int rows = 0;
    const char* expected[] = {"gaussian", "salt_pepper", "speckle",     "poisson",
                              "periodic", "erlang",      "exponential", "rayleigh"};
    while (std::getline(lines, line)) {
        REQUIRE(rows < 8);
        CHECK(line.rfind(std::string(expected[rows]) + ",", 0) == 0);
        CHECK(line.find("10.0000") != std::string::npos);
        CHECK(line.substr(line.size() - 9) == "laplacian");
        ++rows;
    }
    CHECK(rows == 8);
    CHECK(csv.find("\r") == std::string::npos); // LF endings only
}

TEST_CASE("csv argmax reporting prefers the leftmost column on ties") {
    BenchReport report = sample_report();
    for (auto& row : report.rows) {
        row.psnr_db.fill(1.0);
        row.best = FilterKind::median;
    }
    const std::string csv = write_report_csv(report);
    CHECK(csv.find(",median\n") != std::string::npos);
}

TEST_CASE("report writers reject malformed reports") {
    BenchReport missing = sample_report();
    missing.rows.pop_back();
    CHECK_THROWS_AS(write_report_csv(missing), parameter_error);

    BenchReport shuffled = sample_report();
    std::swap(shuffled.rows[0], shuffled.rows[1]);
    CHECK_THROWS_AS(write_report_csv(shuffled), parameter_error);
    CHECK_THROWS_AS(write_report_markdown(shuffled), parameter_error);
}

TEST_CASE("markdown report carries the same cells plus metadata") {
    const std::string md = write_report_markdown(sample_report());
    CHECK(md.find("| noise") != std::string::npos);
    CHECK(md.find("| gaussian") != std::string::npos);
    CHECK(md.find("17.0000") != std::string::npos);
    CHECK(md.find("seed") != std::string::npos);
    CHECK(md.find("42") != std::string::npos);
    CHECK(md.find(kToolVersion) != std::string::npos);
}

TEST_CASE("histogram csv lists all 256 bins in ascending order") {
    Histogram h;
    h.bins[0] = 3;
    h.bins[255] = 1;
    h.total = 4;
    const std::string csv = write_histogram_csv(h);
    std::istringstream lines(csv);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        if (count == 0)
            CHECK(line == "0,3");
        else if (count == 255)
            CHECK(line == "255,1");
        else
            CHECK(line == std::to_string(count) + ",0");
        ++count;
    }
    CHECK(count == 256);
}
