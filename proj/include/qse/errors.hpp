#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qse {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside the toolbox or target-family bounds.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Mismatched truncations or genome layouts.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// The working truncation cannot hold enough of the state's norm.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double captured_norm)
      : Error(what), captured_norm_(captured_norm) {}
  double captured_norm() const { return captured_norm_; }

 private:
  double captured_norm_;
};

// Heralding outcome probability fell below the configured floor.
class HeraldImprobableError : public Error {
 public:
  HeraldImprobableError(const std::string& what, double probability)
      : Error(what), probability_(probability) {}
  double probability() const { return probability_; }

 private:
  double probability_;
};

class TrainingDivergedError : public Error {
 public:
  TrainingDivergedError(const std::string& what, long step) : Error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t offset)
      : Error(what + " (line " + std::to_string(line) + ", offset " + std::to_string(offset) + ")"),
        line_(line),
        offset_(offset) {}
  std::size_t line() const { return line_; }
  std::size_t offset() const { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qse
