#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pblock {

enum class ErrorCode {
  Config,
  Schema,
  Ingestion,
  Truth,
  Vocabulary,
  Signature,
  Densification,
  Resolution,
  Banding,
  Metric,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Exception raised by every module. The message is prefixed with the
/// module tag, e.g. "[doph] signature error: empty set".
class Error : public std::runtime_error {
 public:
  Error(std::string_view module, ErrorCode code, const std::string& what);

  const std::string& module() const { return module_; }
  ErrorCode code() const { return code_; }

  /// Config problems map to exit code 1, everything else is a data error (2).
  bool is_config_error() const { return code_ == ErrorCode::Config; }
  int exit_code() const { return is_config_error() ? 1 : 2; }

 private:
  std::string module_;
  ErrorCode code_;
};

// Non-fatal diagnostics (degenerate similarity inputs, skipped records).
// Defaults to stderr; tests and the CLI may replace the sink.
using WarningSink = std::function<void(std::string_view)>;
void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

}  // namespace pblock
