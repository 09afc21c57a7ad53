#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flatspec {

enum class ErrorCode {
  UnsupportedForPresentation,
  InvalidPresentation,
  EmptyProduct,
  InvalidElement,
  SpectrumTooLarge,
  NotFlat,
  NotGenStable,
  NotZariskiClosed,
  InvalidChain,
  HypothesisViolated,
  ParseError,
  NotPrime,
  NotPrimePower,
  NotIrreducible,
  Overflow,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedForPresentation: return "UnsupportedForPresentation";
    case ErrorCode::InvalidPresentation: return "InvalidPresentation";
    case ErrorCode::EmptyProduct: return "EmptyProduct";
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::SpectrumTooLarge: return "SpectrumTooLarge";
    case ErrorCode::NotFlat: return "NotFlat";
    case ErrorCode::NotGenStable: return "NotGenStable";
    case ErrorCode::NotZariskiClosed: return "NotZariskiClosed";
    case ErrorCode::InvalidChain: return "InvalidChain";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code), detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Raised by the DSL and corpus readers. `position` is a 0-based offset into
/// the parsed text (or a line number for corpus files, see `entry`).
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& message,
             std::ptrdiff_t entry = -1)
      : Error(ErrorCode::ParseError, decorate(position, expected, message, entry)),
        position_(position),
        expected_(std::move(expected)),
        entry_(entry) {}

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  std::ptrdiff_t entry() const noexcept { return entry_; }

 private:
  static std::string decorate(std::size_t position, const std::vector<std::string>& expected,
                              const std::string& message, std::ptrdiff_t entry) {
    std::string text;
    if (entry >= 0) text += "entry " + std::to_string(entry) + ", ";
    text += "position " + std::to_string(position) + ": " + message;
    if (!expected.empty()) {
      text += " (expected one of:";
      for (const auto& token : expected) text += " '" + token + "'";
      text += ")";
    }
    return text;
  }

  std::size_t position_;
  std::vector<std::string> expected_;
  std::ptrdiff_t entry_;
};

}  // namespace flatspec
