#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mxaudit
{

/// \brief A name failed canonicalization (empty label, over-length, bad character).
class MalformedName : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// \brief A fixture file could not be parsed. Carries the file and line.
class FixtureParseError : public std::runtime_error
{
public:
  FixtureParseError(std::string file, std::size_t line, const std::string& what)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
      file_(std::move(file)), line_(line)
  {
  }

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

private:
  std::string file_;
  std::size_t line_;
};

/// \brief The query transport is down entirely (not a per-record failure).
class BackendUnavailable : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// \brief A statistic is undefined for the given input (constant vector, all ties).
class DegenerateInput : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

class EmptyCorpus : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// \brief Input list parse failure. Carries the file and line.
class ParseError : public std::runtime_error
{
public:
  ParseError(std::string file, std::size_t line, const std::string& what)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
      file_(std::move(file)), line_(line)
  {
  }

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

private:
  std::string file_;
  std::size_t line_;
};

} // namespace mxaudit
