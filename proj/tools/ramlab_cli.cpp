#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "manifest.hpp"
#include "ramlab/cubicfields.hpp"
#include "ramlab/densities.hpp"
#include "ramlab/errors.hpp"
#include "ramlab/intsieve.hpp"
#include "ramlab/io.hpp"
#include "ramlab/model.hpp"
#include "ramlab/quadfields.hpp"
#include "ramlab/stats.hpp"

namespace fs = std::filesystem;
using namespace ramlab;

namespace {

constexpr std::uint64_t kMaxX = 1'000'000'000;

enum Exit { kOk = 0, kConfig = 2, kDomain = 3, kIo = 4, kInvariant = 5, kOther = 1 };

struct Common {
  int workers = omp_get_max_threads();
  std::string out_dir;
  std::vector<std::string> formats{"csv", "json", "svg"};
  bool quiet = false;

  bool wants(const std::string& format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
  }
};

class Run {
 public:
  Run(const Common& common, std::string command, Json config)
      : common_(common), dir_(common.out_dir), manifest_(std::move(command), std::move(config)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw IoError("cannot create output directory " + dir_.string());
  }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void text(const std::string& name, const std::string& body) {
    write_text(path(name), body);
    add(name);
  }
  void json(const std::string& name, const Json& value) {
    write_json(path(name), value);
    add(name);
  }
  void add(const std::string& name) {
    manifest_.add_output(path(name));
    if (!common_.quiet) std::cout << "wrote " << path(name).string() << '\n';
  }

  void finish(const std::string& stem) {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    manifest_.write(path(stem + ".manifest.json"), wall);
  }

 private:
  const Common& common_;
  fs::path dir_;
  cli::Manifest manifest_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void check_x(std::uint64_t X) {
  if (X > kMaxX) throw ConfigError("--x must be at most 10^9");
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream out;
  write_histogram_csv(out, h);
  return out.str();
}

Json base_config(const Common& c) {
  return {{"workers", c.workers}, {"formats", c.formats}};
}

void print_histogram(const Common& c, const Histogram& h) {
  if (c.quiet) return;
  for (const auto& [w, count] : h.bins) std::cout << w << '\t' << count << '\n';
  std::cout << "total\t" << h.total << '\n';
}

std::optional<RecordFormat> record_format(const std::string& name) {
  if (name == "csv") return RecordFormat::kCsv;
  if (name == "bin") return RecordFormat::kBinary;
  return std::nullopt;
}

// sieve-integers

struct SieveArgs {
  std::uint64_t x = 0;
  std::uint64_t segment = 1u << 20;
};

void sieve_integers(const Common& c, const SieveArgs& a) {
  check_x(a.x);
  Json config = base_config(c);
  config["x"] = a.x;
  config["segment"] = a.segment;
  Run run(c, "sieve-integers", config);
  const Histogram h = omega_histogram(a.x, a.segment, c.workers);
  const std::string stem = "integers_x" + std::to_string(a.x);
  if (c.wants("csv")) run.text(stem + ".csv", histogram_csv(h));
  if (c.wants("json")) run.json(stem + ".json", to_json(h));
  print_histogram(c, h);
  run.finish(stem);
}

// enum-quadratic / enum-cubic

struct EnumArgs {
  std::uint64_t x = 0;
  std::string only = "all";
  std::string records = "csv";
};

void enum_quadratic(const Common& c, const EnumArgs& a) {
  check_x(a.x);
  Json config = base_config(c);
  config["x"] = a.x;
  config["records"] = a.records;
  Run run(c, "enum-quadratic", config);
  const std::string stem = "quadratic_x" + std::to_string(a.x);
  const auto format = record_format(a.records);
  std::optional<RecordWriter> writer;
  std::string records_name;
  if (format) {
    records_name = stem + (*format == RecordFormat::kBinary ? ".bin" : ".csv");
    writer.emplace(run.path(records_name), RecordKind::kQuadratic, *format);
  }
  Histogram h;
  h.label = "quadratic fields, |D| <= " + std::to_string(a.x);
  if (a.x >= 3) {
    enumerate_fundamental_discriminants(
        a.x,
        [&](std::span<const FieldRecord> batch) {
          for (const auto& r : batch) h.add(r.omega);
          if (writer) writer->write(batch);
        },
        c.workers);
  }
  if (writer) {
    writer->close();
    run.add(records_name);
  }
  if (c.wants("csv")) run.text(stem + "_omega.csv", histogram_csv(h));
  if (c.wants("json")) run.json(stem + "_omega.json", to_json(h));
  print_histogram(c, h);
  run.finish(stem);
}

void enum_cubic(const Common& c, const EnumArgs& a) {
  check_x(a.x);
  GaloisFilter only = GaloisFilter::kAll;
  if (a.only == "s3") {
    only = GaloisFilter::kS3;
  } else if (a.only == "cyclic") {
    only = GaloisFilter::kCyclic;
  }
  Json config = base_config(c);
  config["x"] = a.x;
  config["only"] = a.only;
  config["records"] = a.records;
  Run run(c, "enum-cubic", config);
  const std::string stem = "cubic_x" + std::to_string(a.x) + (a.only == "all" ? "" : "_" + a.only);
  const auto format = record_format(a.records);
  std::optional<RecordWriter> writer;
  std::string records_name;
  if (format) {
    records_name = stem + (*format == RecordFormat::kBinary ? ".bin" : ".csv");
    writer.emplace(run.path(records_name), RecordKind::kCubic, *format);
  }
  Histogram h;
  h.label = "cubic fields, |D| <= " + std::to_string(a.x);
  if (a.x >= 23) {
    CubicOptions options;
    options.only = only;
    options.workers = c.workers;
    if (!c.quiet) options.progress = [](std::uint64_t forms) { std::cerr << "reduced forms: " << forms << '\n'; };
    const RecordSink sink = [&](std::span<const FieldRecord> batch) {
      if (writer) writer->write(batch);
    };
    h = enumerate_cubic_fields(a.x, sink, options).histogram;
    h.label = "cubic fields, |D| <= " + std::to_string(a.x);
  }
  if (writer) {
    writer->close();
    run.add(records_name);
  }
  if (c.wants("csv")) run.text(stem + "_omega.csv", histogram_csv(h));
  if (c.wants("json")) run.json(stem + "_omega.json", to_json(h));
  print_histogram(c, h);
  run.finish(stem);
}

// model-moments / model-sample

struct ModelArgs {
  int d = 3;
  std::uint64_t z = 0;
  bool paper_z = false;
  int k = 4;
  double x = 0;
  std::uint64_t cap = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

std::uint64_t model_cutoff(const ModelArgs& a) {
  if (a.paper_z) {
    if (a.x <= 0) throw ConfigError("--paper-z needs --x");
    return paper_cutoff(FamilySpec::of(a.d), a.x, a.k);
  }
  if (a.z == 0) throw ConfigError("one of --z or --paper-z is required");
  return a.z;
}

void model_moments(const Common& c, const ModelArgs& a) {
  const std::uint64_t Z = model_cutoff(a);
  Json config = base_config(c);
  config["d"] = a.d;
  config["z"] = Z;
  config["k"] = a.k;
  config["x"] = a.x > 0 ? Json(a.x) : Json(nullptr);
  config["cap"] = a.cap;
  Run run(c, "model-moments", config);
  const BernoulliFamily family(FamilySpec::of(a.d), Z);
  const MomentReport report = a.x > 0 ? standardized_moments(family, a.x, a.k) : exact_moments(family, a.k);
  Json j = to_json(report);
  j["d"] = a.d;
  j["primes"] = family.size();
  if (a.cap > 0) j["distribution"] = to_json(exact_distribution(family, a.cap));
  const std::string stem = "model_d" + std::to_string(a.d) + "_z" + std::to_string(Z) + "_k" + std::to_string(a.k);
  run.json(stem + ".json", j);
  if (!c.quiet) {
    for (int k = 1; k <= a.k; ++k) {
      std::cout << "k=" << k << "\traw " << static_cast<double>(report.raw[k]) << "\tcentral "
                << static_cast<double>(report.central[k]) << '\n';
    }
  }
  run.finish(stem);
}

void model_sample(const Common& c, const ModelArgs& a) {
  const std::uint64_t Z = model_cutoff(a);
  Json config = base_config(c);
  config["d"] = a.d;
  config["z"] = Z;
  config["n"] = a.n;
  config["seed"] = a.seed;
  config["k"] = a.k;
  config["x"] = a.x > 0 ? Json(a.x) : Json(nullptr);
  Run run(c, "model-sample", config);
  const BernoulliFamily family(FamilySpec::of(a.d), Z);
  Histogram h = sample(family, a.n, a.seed, c.workers);
  h.label = "R_" + std::to_string(a.d) + "(" + std::to_string(Z) + ") samples";
  MomentReport report;
  report.source = MomentSource::kModelSampled;
  report.Z = Z;
  report.k_max = a.k;
  if (a.k < 1 || a.k > 12) throw DomainError("--k must be in 1..12");
  report.raw.resize(static_cast<std::size_t>(a.k) + 1);
  report.central.resize(report.raw.size());
  for (int k = 0; k <= a.k; ++k) report.raw[k] = raw_moment(h, k);
  for (int k = 0; k <= a.k; ++k) report.central[k] = central_from_raw(report.raw, report.raw[1], k);
  if (a.x > 0) {
    report.X = a.x;
    const long double mu = loglog_mean(a.x);
    report.standardized.resize(report.raw.size());
    for (int k = 0; k <= a.k; ++k) report.standardized[k] = central_moment(h, k, a.x) / std::pow(mu, k / 2.0L);
  }
  const std::string stem = "sample_d" + std::to_string(a.d) + "_z" + std::to_string(Z) + "_n" +
                           std::to_string(a.n) + "_seed" + std::to_string(a.seed);
  if (c.wants("csv")) run.text(stem + ".csv", histogram_csv(h));
  if (c.wants("json")) {
    Json j = to_json(report);
    j["d"] = a.d;
    j["n"] = a.n;
    j["seed"] = a.seed;
    j["exact_mean"] = static_cast<double>(exact_moments(family, 1).raw[1]);
    run.json(stem + ".json", j);
  }
  print_histogram(c, h);
  run.finish(stem);
}

// analyze

struct AnalyzeArgs {
  std::string input;
  double x = 0;
  std::uint64_t z = 0;
  bool paper_z = false;
  int k = 4;
  std::vector<std::uint64_t> q{2, 3, 5, 7, 6, 30};
};

void analyze(const Common& c, const AnalyzeArgs& a) {
  if (a.x > static_cast<double>(kMaxX)) throw ConfigError("--x must be at most 10^9");
  if (a.k < 1 || a.k > 12) throw DomainError("--k must be in 1..12");
  const long double mu = loglog_mean(a.x);
  for (std::uint64_t q : a.q) squarefree_prime_divisors(q);

  Histogram full;
  std::vector<std::uint64_t> hits(a.q.size(), 0);
  std::vector<FastDivisor> qdiv;
  for (std::uint64_t q : a.q) qdiv.emplace_back(q);

  const int degree = detect_record_kind(a.input) == RecordKind::kQuadratic ? 2 : 3;
  const bool truncate = a.z > 0 || a.paper_z;
  const std::uint64_t Z = a.paper_z ? paper_cutoff(FamilySpec::of(degree), a.x, a.k) : a.z;
  std::optional<TruncatedOmega> trunc;
  if (truncate) trunc.emplace(Z);
  Histogram truncated;
  const RecordFileInfo info = read_records(a.input, [&](std::span<const FieldRecord> batch) {
    for (const auto& r : batch) {
      full.add(r.omega);
      const std::uint64_t m = static_cast<std::uint64_t>(r.discriminant < 0 ? -r.discriminant : r.discriminant);
      for (std::size_t i = 0; i < qdiv.size(); ++i) hits[i] += qdiv[i].divides(m) ? 1 : 0;
      if (trunc) truncated.add((*trunc)(r.discriminant));
    }
  });
  if (full.empty()) throw DomainError("input holds no records");
  full.label = std::string(to_string(info.kind)) + " fields from " + fs::path(a.input).filename().string();

  Json config = base_config(c);
  config["input"] = fs::path(a.input).filename().string();
  config["input_sha256"] = cli::sha256_file(a.input);
  config["x"] = a.x;
  config["z"] = truncate ? Json(Z) : Json(nullptr);
  config["paper_z"] = a.paper_z;
  config["k"] = a.k;
  config["q"] = a.q;
  Run run(c, "analyze", config);

  const FamilySpec spec = FamilySpec::of(degree);
  Json j;
  j["input"] = config["input"];
  j["kind"] = to_string(info.kind);
  j["degree"] = degree;
  j["count"] = full.total;
  j["X"] = a.x;
  j["mu"] = static_cast<double>(mu);
  j["c_estimate"] = {{"value", static_cast<double>(full.total) / a.x},
                     {"note", "empirical N_d(X)/X, an estimate only"}};
  j["moments"] = to_json(field_moments(full, a.x, 0, a.k));
  Json gaussian = Json::array();
  for (int k = 1; k <= a.k; ++k) gaussian.push_back(gaussian_moment(static_cast<unsigned>(k)).convert_to<double>());
  j["gaussian"] = gaussian;

  const StandardizedSample standardized = StandardizedSample::from(full, a.x);
  j["ks"] = {{"value", ks_distance(standardized, KsConvention::kAtoms)},
             {"convention", to_string(KsConvention::kAtoms)},
             {"half_integer_value", ks_distance(standardized, KsConvention::kHalfInteger)},
             {"partitions", 1}};

  Json table = Json::array();
  for (std::size_t i = 0; i < a.q.size(); ++i) {
    const double ratio = static_cast<double>(hits[i]) / static_cast<double>(full.total);
    const double rho = density(spec, a.q[i]).convert_to<double>();
    table.push_back({{"q", a.q[i]}, {"count", hits[i]}, {"ratio", ratio}, {"rho", rho}, {"difference", ratio - rho}});
  }
  j["divisibility"] = table;

  if (truncate) {
    Json t;
    t["Z"] = Z;
    std::vector<long double> raw(static_cast<std::size_t>(a.k) + 1);
    std::vector<double> fields_raw, model_raw, direct, expanded, gap;
    std::optional<MomentReport> model;
    if (Z >= 2) model = exact_moments(BernoulliFamily(spec, Z), a.k);
    double worst = 0;
    for (int k = 0; k <= a.k; ++k) raw[k] = raw_moment(truncated, k);
    for (int k = 1; k <= a.k; ++k) {
      fields_raw.push_back(static_cast<double>(raw[k]));
      model_raw.push_back(model ? static_cast<double>(model->raw[k]) : 0.0);
      const long double lhs = central_moment(truncated, k, a.x);
      const long double rhs = central_from_raw(raw, mu, k);
      direct.push_back(static_cast<double>(lhs));
      expanded.push_back(static_cast<double>(rhs));
      worst = std::max(worst, static_cast<double>(std::fabs(lhs - rhs)));
      gap.push_back(static_cast<double>(central_moment(full, k, a.x) - lhs));
    }
    t["fields_raw"] = fields_raw;
    t["model_raw"] = model_raw;
    t["central_direct"] = direct;
    t["central_expanded"] = expanded;
    t["identity_max_abs_difference"] = worst;
    t["full_minus_truncated_central"] = gap;
    j["truncated"] = t;
  }

  const std::string stem = "analysis_" + fs::path(a.input).stem().string() + "_k" + std::to_string(a.k) +
                           (truncate ? "_z" + std::to_string(Z) : "");
  if (c.wants("json")) run.json(stem + ".json", j);
  if (c.wants("csv")) {
    run.text(stem + "_omega.csv", histogram_csv(full));
    std::ostringstream ecdf;
    write_ecdf_csv(ecdf, standardized_ecdf(standardized));
    run.text(stem + "_ecdf.csv", ecdf.str());
  }
  if (!c.quiet) {
    std::cout << "records " << full.total << "\tks " << j["ks"]["value"].get<double>() << '\n';
  }
  run.finish(stem);
}

// figure

struct FigureArgs {
  std::string which;
  std::uint64_t x = 0;
};

void figure(const Common& c, const FigureArgs& a) {
  check_x(a.x);
  Json config = base_config(c);
  config["which"] = a.which;
  config["x"] = a.x;
  Run run(c, "figure", config);
  Histogram h;
  std::string title;
  if (a.which == "integers") {
    h = omega_histogram(a.x, 1u << 20, c.workers);
    title = "Integers n &lt;= " + std::to_string(a.x) + " (millions)";
  } else {
    if (a.x >= 23) {
      CubicOptions options;
      options.workers = c.workers;
      if (!c.quiet) options.progress = [](std::uint64_t forms) { std::cerr << "reduced forms: " << forms << '\n'; };
      h = enumerate_cubic_fields(a.x, nullptr, options).histogram;
    }
    title = "Cubic fields |D| &lt;= " + std::to_string(a.x) + " (millions)";
  }
  const std::string stem = "figure_" + a.which + "_x" + std::to_string(a.x);
  std::ostringstream csv;
  write_figure_csv(csv, h);
  run.text(stem + ".csv", csv.str());
  if (c.wants("svg")) run.text(stem + ".svg", bar_chart_svg(h, title));
  print_histogram(c, h);
  run.finish(stem);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramified prime statistics for quadratic and cubic fields"};
  app.fallthrough();
  app.require_subcommand(1);
  Common common;
  if (const char* env = std::getenv("RAMLAB_OUT"); env != nullptr && *env != '\0') {
    common.out_dir = env;
  } else {
    common.out_dir = ".";
  }
  app.add_option("--workers,-j", common.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out,-o", common.out_dir, "output directory (default $RAMLAB_OUT or .)");
  app.add_option("--format", common.formats, "output formats")
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->delimiter(',');
  app.add_flag("--quiet,-q", common.quiet, "no progress or summaries");

  SieveArgs sieve;
  auto* s_int = app.add_subcommand("sieve-integers", "omega(n) histogram for 2 <= n <= X");
  s_int->add_option("--x", sieve.x, "upper bound X")->required();
  s_int->add_option("--segment", sieve.segment, "sieve segment length")->capture_default_str();

  EnumArgs quad;
  auto* s_quad = app.add_subcommand("enum-quadratic", "quadratic fields with |D| <= X");
  s_quad->add_option("--x", quad.x, "upper bound X")->required();
  s_quad->add_option("--records", quad.records, "record output")
      ->check(CLI::IsMember({"csv", "bin", "none"}))
      ->capture_default_str();

  EnumArgs cubic;
  auto* s_cubic = app.add_subcommand("enum-cubic", "cubic fields with |D| <= X");
  s_cubic->add_option("--x", cubic.x, "upper bound X")->required();
  s_cubic->add_option("--only", cubic.only, "Galois restriction")
      ->check(CLI::IsMember({"all", "s3", "cyclic"}))
      ->capture_default_str();
  s_cubic->add_option("--records", cubic.records, "record output")
      ->check(CLI::IsMember({"csv", "bin", "none"}))
      ->capture_default_str();

  ModelArgs mm;
  auto* s_mm = app.add_subcommand("model-moments", "exact moments of R_d(Z)");
  s_mm->add_option("--d", mm.d, "degree")->check(CLI::Range(2, 5))->required();
  auto* mm_z = s_mm->add_option("--z", mm.z, "cutoff Z");
  auto* mm_pz = s_mm->add_flag("--paper-z", mm.paper_z, "use Z = X^(alpha/(2k(beta+1)))");
  mm_z->excludes(mm_pz);
  s_mm->add_option("--k", mm.k, "largest moment order")->check(CLI::Range(1, 12))->required();
  s_mm->add_option("--x", mm.x, "normalizer X for standardized moments");
  s_mm->add_option("--cap", mm.cap, "also emit the distribution up to this count");

  ModelArgs ms;
  auto* s_ms = app.add_subcommand("model-sample", "Monte Carlo draws of R_d(Z)");
  s_ms->add_option("--d", ms.d, "degree")->check(CLI::Range(2, 5))->required();
  auto* ms_z = s_ms->add_option("--z", ms.z, "cutoff Z");
  auto* ms_pz = s_ms->add_flag("--paper-z", ms.paper_z, "use Z = X^(alpha/(2k(beta+1)))");
  ms_z->excludes(ms_pz);
  s_ms->add_option("--n", ms.n, "number of draws")->required();
  s_ms->add_option("--seed", ms.seed, "64-bit seed")->required();
  s_ms->add_option("--k", ms.k, "largest moment order")->check(CLI::Range(1, 12))->capture_default_str();
  s_ms->add_option("--x", ms.x, "normalizer X for standardized moments");

  AnalyzeArgs an;
  auto* s_an = app.add_subcommand("analyze", "moment, KS and divisibility statistics of a record file");
  s_an->add_option("--input", an.input, "record file (csv or bin)")->required();
  s_an->add_option("--x", an.x, "normalizer X, usually the enumeration bound")->required();
  auto* an_z = s_an->add_option("--z", an.z, "truncation cutoff Z");
  auto* an_pz = s_an->add_flag("--paper-z", an.paper_z, "use Z = X^(alpha/(2k(beta+1)))");
  an_z->excludes(an_pz);
  s_an->add_option("--k", an.k, "largest moment order")->check(CLI::Range(1, 12))->required();
  s_an->add_option("--q", an.q, "squarefree moduli for the divisibility table")->delimiter(',');

  FigureArgs fig;
  auto* s_fig = app.add_subcommand("figure", "bar-chart data and SVG");
  s_fig->add_option("--which", fig.which, "integers or cubic")
      ->check(CLI::IsMember({"integers", "cubic"}))
      ->required();
  s_fig->add_option("--x", fig.x, "upper bound X")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*s_int) sieve_integers(common, sieve);
    if (*s_quad) enum_quadratic(common, quad);
    if (*s_cubic) enum_cubic(common, cubic);
    if (*s_mm) model_moments(common, mm);
    if (*s_ms) model_sample(common, ms);
    if (*s_an) analyze(common, an);
    if (*s_fig) figure(common, fig);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOk;
}
