#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qkd {

// Base class for all simulator errors. `category()` is the stable one-word
// prefix the CLI prints for machine-parsable diagnostics.
class error : public std::runtime_error {
 public:
  error(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

// A value outside an operation's domain (bad angle, draw out of [0,1), ...).
class domain_error : public error {
 public:
  explicit domain_error(const std::string& m) : error("domain-error", m) {}
};

// An invalid session or sweep configuration; the message names the field.
class config_error : public error {
 public:
  explicit config_error(const std::string& m) : error("config-error", m) {}
};

// Malformed textual input (replay CSV, config file).
class parse_error : public error {
 public:
  explicit parse_error(const std::string& m) : error("parse-error", m) {}
};

// A statistic was requested from data that cannot support it.
class insufficient_data_error : public error {
 public:
  explicit insufficient_data_error(const std::string& m)
      : error("data-error", m) {}
};

// Bad command-line usage (unknown flag, inapplicable field).
class usage_error : public error {
 public:
  explicit usage_error(const std::string& m) : error("usage-error", m) {}
};

// Filesystem failures at the CLI boundary.
class io_error : public error {
 public:
  explicit io_error(const std::string& m) : error("io-error", m) {}
};

}  // namespace qkd
