#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvcs {

enum class ErrorCode {
  MissingFile,
  MalformedManifest,
  MalformedData,
  RowCountMismatch,
  NonFiniteValue,
  InvalidLabels,
  InvalidConfig,
  EmptyDataset,
  BracketFailure,
  KTooLarge,
  ShapeMismatch,
  SingleView,
  MTooLarge,
  DerangementImpossible,
  MissingLabels,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every library failure is an Error; what() reads "<Code>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace mvcs
