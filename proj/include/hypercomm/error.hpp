#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypercomm {

// Stable codes shared with the C API; values must match hc_status.
enum class ErrorCode : int {
  InvalidArgument = 1,
  FileNotFound = 2,
  RaggedRows = 3,
  NonNumericCell = 4,
  DegenerateRow = 5,
  InvalidOrder = 6,
  DimensionMismatch = 7,
  EmptyCommunity = 8,
  Range = 9,
  IsolatedVertex = 10,
  NoConnectedOrder = 11,
  DisconnectedLineGraph = 12,
  EigenFailure = 13,
  Io = 14,
  Internal = 15,
};

const char* error_code_name(ErrorCode code) noexcept;

// True for failures caused by bad input (files, arguments) rather than by the numerics.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NonNumericCellError : public Error {
 public:
  NonNumericCellError(std::size_t row, std::size_t col, const std::string& cell);
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class DegenerateRowError : public Error {
 public:
  explicit DegenerateRowError(std::size_t row);
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class IsolatedVertexError : public Error {
 public:
  explicit IsolatedVertexError(std::size_t vertex);
  std::size_t vertex() const noexcept { return vertex_; }

 private:
  std::size_t vertex_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace hypercomm
