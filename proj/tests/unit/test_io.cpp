#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ramlab/cubicfields.hpp"
#include "ramlab/errors.hpp"
#include "ramlab/io.hpp"
#include "ramlab/quadfields.hpp"

using namespace ramlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ramlab_io_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("histogram csv") {
    Histogram h;
    h.add(2, 5);
    h.add(1, 1234567);
    std::ostringstream out;
    write_histogram_csv(out, h);
    CHECK(out.str() == "omega,count\n1,1234567\n2,5\n");
    std::ostringstream fig;
    write_figure_csv(fig, h);
    CHECK(fig.str() == "omega,count,millions\n1,1234567,1.234567\n2,5,0.000005\n");
  }

  TEST_CASE("svg embeds the data table") {
    Histogram h;
    h.add(1, 10);
    h.add(2, 30);
    const std::string svg = bar_chart_svg(h, "demo");
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("omega,count,millions\n1,10,0.000010\n2,30,0.000030\n") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
  }

  TEST_CASE("record files round trip") {
    const fs::path dir = scratch_dir("records");
    const auto quad = fundamental_discriminants(5000);
    const auto cubic = cubic_fields(5000);
    for (RecordFormat format : {RecordFormat::kCsv, RecordFormat::kBinary}) {
      for (RecordKind kind : {RecordKind::kQuadratic, RecordKind::kCubic}) {
        const auto& records = kind == RecordKind::kQuadratic ? quad : cubic;
        const fs::path path = dir / (std::string(to_string(kind)) + (format == RecordFormat::kCsv ? ".csv" : ".bin"));
        RecordWriter writer(path, kind, format);
        const std::size_t half = records.size() / 2;
        writer.write(std::span(records).first(half));
        writer.write(std::span(records).subspan(half));
        writer.close();
        CHECK(writer.written() == records.size());
        CHECK(detect_record_kind(path) == kind);
        RecordFileInfo info;
        const auto back = load_records(path, &info);
        CHECK(info.kind == kind);
        CHECK(info.format == format);
        CHECK(info.count == records.size());
        CHECK(back == records);
      }
    }
    const std::string bin = slurp(dir / "cubic.bin");
    CHECK(bin.substr(0, 8) == "RAMLABC1");
    CHECK(bin.size() == 8 + 8 * cubic.size());
    // little endian, negative first record sign-extends
    const auto first = static_cast<std::uint64_t>(cubic.front().discriminant);
    const unsigned char* bytes = reinterpret_cast<const unsigned char*>(bin.data()) + 8;
    for (int i = 0; i < 8; ++i) CHECK(bytes[i] == ((first >> (8 * i)) & 0xFF));
    CHECK(slurp(dir / "quadratic.bin").substr(0, 8) == "RAMLABQ1");
    CHECK(slurp(dir / "cubic.csv").rfind("disc,omega,cyclic\n", 0) == 0);
    CHECK(slurp(dir / "cubic.csv").find("\n-23,1,0\n") != std::string::npos);
    CHECK(slurp(dir / "quadratic.csv").rfind("disc,omega\n-3,1\n-4,1\n5,1\n", 0) == 0);
    fs::remove_all(dir);
  }

  TEST_CASE("bad record files") {
    const fs::path dir = scratch_dir("bad");
    std::ofstream(dir / "junk.csv") << "a,b\n1,2\n";
    CHECK_THROWS_AS(load_records(dir / "junk.csv"), IoError);
    std::ofstream(dir / "short.csv") << "disc,omega\n5\n";
    CHECK_THROWS_AS(load_records(dir / "short.csv"), IoError);
    std::ofstream(dir / "word.csv") << "disc,omega\nfive,1\n";
    CHECK_THROWS_AS(load_records(dir / "word.csv"), IoError);
    {
      std::ofstream out(dir / "cut.bin", std::ios::binary);
      out << "RAMLABQ1" << "abc";
    }
    CHECK_THROWS_AS(load_records(dir / "cut.bin"), IoError);
    CHECK_THROWS_AS(load_records(dir / "missing.csv"), IoError);
    CHECK_THROWS_AS(RecordWriter(dir / "no" / "such" / "dir.csv", RecordKind::kCubic, RecordFormat::kCsv), IoError);
    fs::remove_all(dir);
  }

  TEST_CASE("json field names") {
    const BernoulliFamily fam(FamilySpec::of(2), 3);
    const Json report = to_json(exact_moments(fam, 3));
    for (const char* key : {"source", "X", "Z", "k", "raw", "central", "standardized"}) CHECK(report.contains(key));
    CHECK(report["source"] == "model-exact");
    CHECK(report["X"].is_null());
    CHECK(report["k"] == 3);
    CHECK(report["raw"].size() == 3);
    CHECK(report["raw"][0].get<double>() == doctest::Approx(7.0 / 12));
    const Json s = to_json(standardized_moments(fam, 1e6, 2));
    CHECK(s["X"] == 1e6);
    CHECK(s["standardized"].size() == 2);
    const Json dist = to_json(exact_distribution(fam, 4));
    CHECK(dist["mass"].size() == 5);
    CHECK(dist["tail_mass"] == 0.0);
    CHECK(dist["mass"][2].get<double>() == doctest::Approx(1.0 / 12));
  }
}
