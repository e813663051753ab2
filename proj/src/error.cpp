#include "hypercomm/error.hpp"

namespace hypercomm {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::DegenerateRow: return "DegenerateRow";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyCommunity: return "EmptyCommunity";
    case ErrorCode::Range: return "RangeError";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::NoConnectedOrder: return "NoConnectedOrder";
    case ErrorCode::DisconnectedLineGraph: return "DisconnectedLineGraph";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Internal: return "InternalError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IsolatedVertex:
    case ErrorCode::NoConnectedOrder:
    case ErrorCode::DisconnectedLineGraph:
    case ErrorCode::EigenFailure:
    case ErrorCode::Internal:
      return false;
    default:
      return true;
  }
}

NonNumericCellError::NonNumericCellError(std::size_t row, std::size_t col, const std::string& cell)
    : Error(ErrorCode::NonNumericCell, "non-numeric or non-finite cell '" + cell + "' at row " +
                                           std::to_string(row) + ", column " + std::to_string(col)),
      row_(row),
      col_(col) {}

DegenerateRowError::DegenerateRowError(std::size_t row)
    : Error(ErrorCode::DegenerateRow, "row " + std::to_string(row) + " is constant and cannot be normalized"),
      row_(row) {}

IsolatedVertexError::IsolatedVertexError(std::size_t vertex)
    : Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(vertex) + " has zero degree"),
      vertex_(vertex) {}

}  // namespace hypercomm
