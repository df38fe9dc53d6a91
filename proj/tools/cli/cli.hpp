#pragma once

#include "qfmod/errors.hpp"
#include "qfmod/matrix.hpp"
#include "qfmod/modring.hpp"
#include "qfmod/sampling.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qfmod::cli {

/// Malformed input. The message names the offending field or position.
class ParseError : public Error {
 public:
  using Error::Error;
};

class AsymmetricMatrix : public ParseError {
 public:
  using ParseError::ParseError;
};

class NotPrime : public ParseError {
 public:
  using ParseError::ParseError;
};

enum ExitCode : int {
  kOk = 0,
  kNoSolution = 1,
  kFail = 2,
  kInputError = 3,
  kCheckMismatch = 4,
};

struct Instance {
  QuadraticForm q;
  std::vector<PrimePower> factors;
  Integer t;
  /// True when the input used "factors" rather than "p" and "k".
  bool composite = false;

  Integer modulus() const;
};

enum class Format { Json, Text };

struct Options {
  std::string command;
  std::string input = "-";
  Format format = Format::Json;
  RepKind kind = RepKind::Any;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> trials;
  std::uint64_t budget = std::uint64_t{1} << 24;
};

Instance parse_instance(const std::string& text);
/// Compact JSON that parse_instance reads back to an equal instance.
std::string format_instance(const Instance& inst);
/// Reads a file, or stdin for "-".
Instance load_instance(const std::string& path, std::istream& stdin_stream);

/// Runs one command and returns its exit code. Reports go to out,
/// diagnostics to err.
int run(const Options& opts, const Instance& inst, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qfmod::cli
