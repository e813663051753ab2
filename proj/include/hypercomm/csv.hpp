#pragma once

#include "hypercomm/types.hpp"

#include <filesystem>
#include <string>

namespace hypercomm {

enum class Delimiter { Comma, Tab };

struct CsvTable {
  Matrix values;
  bool had_header = false;
};

// Parses a dense numeric table. A first row containing any cell that is not a
// number is treated as a header and skipped. Every remaining cell must parse
// as a finite real; rows must all have the same width.
CsvTable read_numeric_csv(const std::filesystem::path& path, Delimiter delim);
CsvTable parse_numeric_csv(const std::string& text, Delimiter delim);

// Writes "# rows=R cols=C" followed by row-major values at round-trip precision.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
void write_matrix_csv(const std::filesystem::path& path, const BinaryMatrix& m);
std::string format_matrix_csv(const Matrix& m);

Matrix read_matrix_csv(const std::filesystem::path& path);

std::string format_double(double v);

// Writes text atomically enough for our purposes: tmp file then rename.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace hypercomm
