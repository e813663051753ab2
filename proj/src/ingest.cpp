#include "hypercomm/ingest.hpp"

#include "hypercomm/csv.hpp"
#include "hypercomm/error.hpp"

#include <regex>

namespace hypercomm {

namespace {
constexpr double kDegenerateNorm = 1e-12;
}

bool parse_subject_run(const std::string& stem, std::string& subject, std::string& run) {
  static const std::regex pattern(R"(^sub-([^_]+)_run-([^_]+)$)");
  std::smatch m;
  if (!std::regex_match(stem, m, pattern)) return false;
  subject = m[1];
  run = m[2];
  return true;
}

TableFormat format_from_extension(const std::filesystem::path& path) {
  return path.extension() == ".tsv" ? TableFormat::Tsv : TableFormat::Csv;
}

TimeSeriesMatrix load_time_series(const std::filesystem::path& path, TableFormat format, bool transpose) {
  auto table = read_numeric_csv(path, format == TableFormat::Csv ? Delimiter::Comma : Delimiter::Tab);
  TimeSeriesMatrix ts;
  if (transpose)
    ts.data = table.values.transpose();
  else
    ts.data = std::move(table.values);
  if (ts.data.rows() < 2 || ts.data.cols() < 2)
    fail(ErrorCode::InvalidArgument, path.string() + ": need at least 2 ROIs and 2 time points, got " +
                                         std::to_string(ts.data.rows()) + "x" + std::to_string(ts.data.cols()));
  const auto stem = path.stem().string();
  if (!parse_subject_run(stem, ts.subject_id, ts.run_id)) {
    ts.subject_id = stem;
    ts.run_id.clear();
  }
  return ts;
}

Matrix normalize_rows(const Matrix& data) {
  Matrix out(data.rows(), data.cols());
  for (Index i = 0; i < data.rows(); ++i) {
    const double mean = data.row(i).mean();
    out.row(i) = data.row(i).array() - mean;
    const double norm = out.row(i).norm();
    if (!(norm > kDegenerateNorm)) throw DegenerateRowError(static_cast<std::size_t>(i));
    out.row(i) /= norm;
  }
  return out;
}

TimeSeriesMatrix normalize_rows(const TimeSeriesMatrix& series) {
  TimeSeriesMatrix out;
  out.data = normalize_rows(series.data);
  out.subject_id = series.subject_id;
  out.run_id = series.run_id;
  return out;
}

}  // namespace hypercomm
