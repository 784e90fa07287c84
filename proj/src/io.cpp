#include "ramlab/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <sstream>

#include "ramlab/cubicfields.hpp"
#include "ramlab/errors.hpp"

namespace ramlab {

namespace {

constexpr std::array<char, 8> kQuadMagic{'R', 'A', 'M', 'L', 'A', 'B', 'Q', '1'};
constexpr std::array<char, 8> kCubicMagic{'R', 'A', 'M', 'L', 'A', 'B', 'C', '1'};
constexpr std::size_t kBatch = 1 << 16;

std::string fixed(double value, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, value);
  return buf;
}

std::string general(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r = (r << 8) | ((v >> (8 * i)) & 0xff);
    return r;
  }
  return v;
}

std::vector<double> as_doubles(const std::vector<long double>& v, bool skip_zero) {
  std::vector<double> out;
  for (std::size_t i = skip_zero ? 1 : 0; i < v.size(); ++i) out.push_back(static_cast<double>(v[i]));
  return out;
}

std::int64_t parse_int(const std::string& text, const std::filesystem::path& path, std::uint64_t line) {
  std::int64_t value = 0;
  std::size_t used = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": bad integer '" + text + "'");
  }
  return value;
}

}  // namespace

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "omega,count\n";
  for (const auto& [w, count] : h.bins) out << w << ',' << count << '\n';
}

void write_figure_csv(std::ostream& out, const Histogram& h) {
  out << "omega,count,millions\n";
  for (const auto& [w, count] : h.bins) out << w << ',' << count << ',' << fixed(count / 1e6, 6) << '\n';
}

void write_ecdf_csv(std::ostream& out, std::span<const EcdfPoint> points) {
  out << "z,empirical,gaussian\n";
  for (const auto& p : points) out << general(p.z) << ',' << general(p.empirical) << ',' << general(p.gaussian) << '\n';
}

std::string bar_chart_svg(const Histogram& h, const std::string& title) {
  constexpr int kWidth = 640, kHeight = 400, kLeft = 60, kBottom = 50, kTop = 40;
  std::uint64_t peak = 1;
  for (const auto& [w, count] : h.bins) peak = std::max(peak, count);
  const double plot_h = kHeight - kBottom - kTop;
  const std::size_t bars = std::max<std::size_t>(h.bins.size(), 1);
  const double slot = (kWidth - kLeft - 20) / static_cast<double>(bars);

  std::ostringstream data;
  write_figure_csv(data, h);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  svg << "<desc>\n" << data.str() << "</desc>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - 10 << "\" y2=\""
      << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  std::size_t i = 0;
  for (const auto& [w, count] : h.bins) {
    const double bh = plot_h * static_cast<double>(count) / static_cast<double>(peak);
    const double x = kLeft + slot * i + slot * 0.1;
    const double y = kHeight - kBottom - bh;
    svg << "<rect x=\"" << fixed(x, 2) << "\" y=\"" << fixed(y, 2) << "\" width=\"" << fixed(slot * 0.8, 2)
        << "\" height=\"" << fixed(bh, 2) << "\" fill=\"steelblue\"/>\n";
    svg << "<text x=\"" << fixed(x + slot * 0.4, 2) << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" font-size=\"12\">" << w << "</text>\n";
    svg << "<text x=\"" << fixed(x + slot * 0.4, 2) << "\" y=\"" << fixed(y - 4, 2)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << fixed(count / 1e6, 6) << "</text>\n";
    ++i;
  }
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">number of prime factors</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

RecordWriter::RecordWriter(const std::filesystem::path& path, RecordKind kind, RecordFormat format)
    : path_(path), kind_(kind), format_(format) {
  const auto mode = format == RecordFormat::kBinary ? std::ios::binary | std::ios::trunc : std::ios::trunc;
  out_.open(path, std::ios::out | mode);
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  if (format_ == RecordFormat::kBinary) {
    const auto& magic = kind_ == RecordKind::kQuadratic ? kQuadMagic : kCubicMagic;
    out_.write(magic.data(), magic.size());
  } else {
    out_ << (kind_ == RecordKind::kQuadratic ? "disc,omega\n" : "disc,omega,cyclic\n");
  }
}

void RecordWriter::write(std::span<const FieldRecord> records) {
  if (format_ == RecordFormat::kBinary) {
    std::vector<std::uint64_t> words(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      words[i] = to_little_endian(static_cast<std::uint64_t>(records[i].discriminant));
    }
    out_.write(reinterpret_cast<const char*>(words.data()), static_cast<std::streamsize>(words.size() * 8));
  } else {
    std::string buf;
    buf.reserve(records.size() * 16);
    for (const auto& r : records) {
      buf += std::to_string(r.discriminant);
      buf += ',';
      buf += std::to_string(r.omega);
      if (kind_ == RecordKind::kCubic) buf += r.is_cyclic ? ",1" : ",0";
      buf += '\n';
    }
    out_ << buf;
  }
  written_ += records.size();
  if (!out_) throw IoError("write failed on " + path_.string());
}

void RecordWriter::close() {
  out_.close();
  if (out_.fail()) throw IoError("closing " + path_.string() + " failed");
}

const char* to_string(RecordKind kind) { return kind == RecordKind::kQuadratic ? "quadratic" : "cubic"; }

RecordFileInfo read_records(const std::filesystem::path& path, const RecordBatchSink& sink) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  RecordFileInfo info;
  std::array<char, 8> head{};
  in.read(head.data(), head.size());
  const bool is_quad_bin = in.gcount() == 8 && head == kQuadMagic;
  const bool is_cubic_bin = in.gcount() == 8 && head == kCubicMagic;
  std::vector<FieldRecord> batch;
  batch.reserve(kBatch);
  auto flush = [&] {
    if (batch.empty()) return;
    sink(batch);
    batch.clear();
  };
  auto note = [&](const FieldRecord& r) {
    const std::uint64_t m = static_cast<std::uint64_t>(r.discriminant < 0 ? -r.discriminant : r.discriminant);
    info.max_abs_discriminant = std::max(info.max_abs_discriminant, m);
    ++info.count;
    batch.push_back(r);
    if (batch.size() == kBatch) flush();
  };

  if (is_quad_bin || is_cubic_bin) {
    info.format = RecordFormat::kBinary;
    info.kind = is_quad_bin ? RecordKind::kQuadratic : RecordKind::kCubic;
    const TruncatedOmega omega(~0ULL);
    std::vector<std::uint64_t> words(kBatch);
    while (in) {
      in.read(reinterpret_cast<char*>(words.data()), static_cast<std::streamsize>(words.size() * 8));
      const auto got = static_cast<std::size_t>(in.gcount());
      if (got % 8 != 0) throw IoError(path.string() + ": truncated binary record");
      for (std::size_t i = 0; i < got / 8; ++i) {
        FieldRecord r;
        r.discriminant = static_cast<std::int64_t>(to_little_endian(words[i]));
        if (r.discriminant == 0) throw IoError(path.string() + ": zero discriminant");
        r.omega = static_cast<std::uint8_t>(omega(r.discriminant));
        r.is_cyclic = info.kind == RecordKind::kQuadratic || is_perfect_square(r.discriminant);
        note(r);
      }
    }
    flush();
    return info;
  }

  in.clear();
  in.seekg(0);
  info.format = RecordFormat::kCsv;
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line == "disc,omega") {
    info.kind = RecordKind::kQuadratic;
  } else if (line == "disc,omega,cyclic") {
    info.kind = RecordKind::kCubic;
  } else {
    throw IoError(path.string() + ": not a record file (unknown header '" + line + "')");
  }
  const std::size_t fields = info.kind == RecordKind::kQuadratic ? 2 : 3;
  std::uint64_t lineno = 1;
  std::vector<std::string> parts;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    parts.clear();
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      parts.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (parts.size() != fields) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected " + std::to_string(fields) +
                    " fields");
    }
    FieldRecord r;
    r.discriminant = parse_int(parts[0], path, lineno);
    const auto w = parse_int(parts[1], path, lineno);
    if (w < 0 || w > 255) throw IoError(path.string() + ":" + std::to_string(lineno) + ": omega out of range");
    r.omega = static_cast<std::uint8_t>(w);
    if (fields == 3) r.is_cyclic = parse_int(parts[2], path, lineno) != 0;
    note(r);
  }
  flush();
  return info;
}

RecordKind detect_record_kind(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.size() >= 8 && std::equal(kQuadMagic.begin(), kQuadMagic.end(), line.begin())) {
    return RecordKind::kQuadratic;
  }
  if (line.size() >= 8 && std::equal(kCubicMagic.begin(), kCubicMagic.end(), line.begin())) return RecordKind::kCubic;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line == "disc,omega") return RecordKind::kQuadratic;
  if (line == "disc,omega,cyclic") return RecordKind::kCubic;
  throw IoError(path.string() + ": not a record file");
}

std::vector<FieldRecord> load_records(const std::filesystem::path& path, RecordFileInfo* info) {
  std::vector<FieldRecord> out;
  const auto found = read_records(path, [&](std::span<const FieldRecord> batch) {
    out.insert(out.end(), batch.begin(), batch.end());
  });
  if (info != nullptr) *info = found;
  return out;
}

Json to_json(const MomentReport& report) {
  Json j;
  j["source"] = to_string(report.source);
  j["X"] = report.X > 0 ? Json(report.X) : Json(nullptr);
  j["Z"] = report.Z;
  j["k"] = report.k_max;
  j["raw"] = as_doubles(report.raw, true);
  j["central"] = as_doubles(report.central, true);
  j["standardized"] = report.standardized.empty() ? Json(nullptr) : Json(as_doubles(report.standardized, true));
  return j;
}

Json to_json(const ModelDistribution& dist) {
  Json j;
  j["cap"] = dist.cap;
  j["mass"] = as_doubles(dist.mass, false);
  j["tail_mass"] = static_cast<double>(dist.tail_mass);
  return j;
}

Json to_json(const Histogram& h) {
  Json bins = Json::object();
  for (const auto& [w, count] : h.bins) bins[std::to_string(w)] = count;
  Json j;
  j["label"] = h.label;
  j["total"] = h.total;
  j["bins"] = bins;
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (out.fail()) throw IoError("writing " + path.string() + " failed");
}

void write_json(const std::filesystem::path& path, const Json& value) { write_text(path, value.dump(2) + "\n"); }

}  // namespace ramlab
