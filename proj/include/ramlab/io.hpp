#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramlab/histogram.hpp"
#include "ramlab/model.hpp"
#include "ramlab/stats.hpp"

namespace ramlab {

using Json = nlohmann::ordered_json;

enum class RecordKind { kQuadratic, kCubic };
enum class RecordFormat { kCsv, kBinary };

/// "omega,count" rows sorted by omega.
void write_histogram_csv(std::ostream& out, const Histogram& h);
/// Bar-chart data: "omega,count,millions" with counts / 10^6 to six places.
void write_figure_csv(std::ostream& out, const Histogram& h);
/// "z,empirical,gaussian" rows.
void write_ecdf_csv(std::ostream& out, std::span<const EcdfPoint> points);

/// Static SVG bar chart of counts in millions; the CSV data table is embedded
/// in a <desc> element.
std::string bar_chart_svg(const Histogram& h, const std::string& title);

/// Writes a record stream either as CSV ("disc,omega" or "disc,omega,cyclic")
/// or as an 8-byte magic ("RAMLABQ1" / "RAMLABC1") followed by little-endian
/// signed 64-bit discriminants.
class RecordWriter {
 public:
  RecordWriter(const std::filesystem::path& path, RecordKind kind, RecordFormat format);

  void write(std::span<const FieldRecord> records);
  /// Flushes and closes; throws IoError if anything failed.
  void close();
  std::uint64_t written() const noexcept { return written_; }

 private:
  std::filesystem::path path_;
  RecordKind kind_;
  RecordFormat format_;
  std::ofstream out_;
  std::uint64_t written_ = 0;
};

struct RecordFileInfo {
  RecordKind kind = RecordKind::kQuadratic;
  RecordFormat format = RecordFormat::kCsv;
  std::uint64_t count = 0;
  std::uint64_t max_abs_discriminant = 0;
};

using RecordBatchSink = std::function<void(std::span<const FieldRecord>)>;

/// Streams a record file written by RecordWriter in batches. The format is
/// detected from the magic bytes or the CSV header; omega and the cyclic flag
/// are recomputed for binary input.
RecordFileInfo read_records(const std::filesystem::path& path, const RecordBatchSink& sink);

/// Reads only the magic bytes or CSV header.
RecordKind detect_record_kind(const std::filesystem::path& path);

std::vector<FieldRecord> load_records(const std::filesystem::path& path, RecordFileInfo* info = nullptr);

const char* to_string(RecordKind kind);

/// Fields source, X, Z, k, raw, central, standardized; the arrays run over
/// k = 1..k_max and X / standardized are null when no normalizer applies.
Json to_json(const MomentReport& report);
/// Fields cap, mass, tail_mass.
Json to_json(const ModelDistribution& dist);
Json to_json(const Histogram& h);

/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& value);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace ramlab
