#include "pblock/error.hpp"

#include <iostream>
#include <mutex>

namespace pblock {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config: return "config error";
    case ErrorCode::Schema: return "schema error";
    case ErrorCode::Ingestion: return "ingestion error";
    case ErrorCode::Truth: return "truth error";
    case ErrorCode::Vocabulary: return "vocabulary error";
    case ErrorCode::Signature: return "signature error";
    case ErrorCode::Densification: return "densification error";
    case ErrorCode::Resolution: return "resolution error";
    case ErrorCode::Banding: return "banding error";
    case ErrorCode::Metric: return "metric error";
    case ErrorCode::Io: return "io error";
  }
  return "error";
}

Error::Error(std::string_view module, ErrorCode code, const std::string& what)
    : std::runtime_error("[" + std::string(module) + "] " + std::string(to_string(code)) + ": " +
                         what),
      module_(module),
      code_(code) {}

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& sink() {
  static WarningSink s = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
  return s;
}

}  // namespace

void set_warning_sink(WarningSink s) {
  std::lock_guard lock(sink_mutex());
  sink() = s ? std::move(s) : [](std::string_view) {};
}

void warn(std::string_view message) {
  std::lock_guard lock(sink_mutex());
  sink()(message);
}

}  // namespace pblock
