#pragma once

#include "hypercomm/types.hpp"

#include <filesystem>
#include <string>

namespace hypercomm {

enum class TableFormat { Csv, Tsv };

// Rows are ROIs (variables), columns are time points.
struct TimeSeriesMatrix {
  Matrix data;
  std::string subject_id;
  std::string run_id;

  Index n_rois() const { return data.rows(); }
  Index n_timepoints() const { return data.cols(); }
};

// Loads a raw (unnormalized) N x P matrix. With `transpose`, the file is read
// as time points x ROIs. Subject and run ids come from a "sub-<s>_run-<r>"
// file stem when present, otherwise the stem is used as the subject id.
TimeSeriesMatrix load_time_series(const std::filesystem::path& path, TableFormat format, bool transpose = false);

// Guesses the format from the extension (".tsv" -> Tsv, otherwise Csv).
TableFormat format_from_extension(const std::filesystem::path& path);

// Splits a "sub-<s>_run-<r>" stem. Returns false when the stem does not match.
bool parse_subject_run(const std::string& stem, std::string& subject, std::string& run);

// Demeans each row and scales it to unit Euclidean norm.
// Throws DegenerateRowError for a row whose demeaned norm is <= 1e-12.
TimeSeriesMatrix normalize_rows(const TimeSeriesMatrix& series);
Matrix normalize_rows(const Matrix& data);

}  // namespace hypercomm
