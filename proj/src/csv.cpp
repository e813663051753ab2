#include "hypercomm/csv.hpp"

#include "hypercomm/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace hypercomm {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r' || s.front() == '\t' || s.front() == '"'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t' || s.back() == '"'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return cells;
}

// Accepts anything from_chars accepts, including nan/inf (rejected later as non-finite).
bool parse_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace

CsvTable parse_numeric_csv(const std::string& text, Delimiter delim) {
  const char sep = delim == Delimiter::Comma ? ',' : '\t';
  std::vector<std::vector<double>> rows;
  CsvTable table;
  std::size_t width = 0;
  std::size_t line_no = 0;
  std::size_t data_row = 0;
  std::istringstream in(text);
  std::string line;
  bool first_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, sep);
    if (first_line) {
      first_line = false;
      double dummy = 0.0;
      bool header = false;
      for (auto c : cells) {
        if (!parse_number(c, dummy)) {
          header = true;
          break;
        }
      }
      if (header) {
        table.had_header = true;
        continue;
      }
    }
    if (rows.empty()) {
      width = cells.size();
    } else if (cells.size() != width) {
      fail(ErrorCode::RaggedRows, "line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                                      " cells, expected " + std::to_string(width));
    }
    std::vector<double> row(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      double v = 0.0;
      if (!parse_number(cells[j], v) || !std::isfinite(v))
        throw NonNumericCellError(data_row, j, std::string(cells[j]));
      row[j] = v;
    }
    rows.push_back(std::move(row));
    ++data_row;
  }
  table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) table.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return table;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::FileNotFound, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
    out << text;
    if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

CsvTable read_numeric_csv(const std::filesystem::path& path, Delimiter delim) {
  if (!std::filesystem::exists(path)) fail(ErrorCode::FileNotFound, "no such file: " + path.string());
  return parse_numeric_csv(read_text_file(path), delim);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_matrix_csv(const Matrix& m) {
  std::string out = "# rows=" + std::to_string(m.rows()) + " cols=" + std::to_string(m.cols()) + "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) { write_text_file(path, format_matrix_csv(m)); }

void write_matrix_csv(const std::filesystem::path& path, const BinaryMatrix& m) {
  write_matrix_csv(path, Matrix(m.cast<double>()));
}

Matrix read_matrix_csv(const std::filesystem::path& path) { return read_numeric_csv(path, Delimiter::Comma).values; }

}  // namespace hypercomm
